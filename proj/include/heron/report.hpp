#pragma once

// JSON and text renderings. Integers that may exceed 64 bits are decimal strings.

#include <sstream>

#include <json.hpp>

#include "heron/fixtures.hpp"
#include "heron/pointsearch.hpp"

namespace heron {

using nlohmann::ordered_json;

inline ordered_json class_json(const SquareClass& c) {
  BigInt v = c.value();
  if (abs(v) <= BigInt(INT64_MAX)) return v.convert_to<int64_t>();
  return v.str();
}

inline ordered_json pair_json(const DescentPair& p) { return ordered_json::array({class_json(p.b1), class_json(p.b2)}); }

inline ordered_json pairs_json(const std::vector<DescentPair>& ps) {
  ordered_json a = ordered_json::array();
  for (auto& p : ps) a.push_back(pair_json(p));
  return a;
}

inline ordered_json curve_json(const HeronCurve& c) {
  return {{"n", c.n}, {"m", c.m}, {"q", c.q}, {"primes", c.primes}, {"discriminant", c.discriminant.str()}};
}

inline std::string rat_str(const BigRational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline ordered_json verdict_json(const LocalVerdict& v) {
  ordered_json j;
  j["place"] = v.place.real ? "inf" : v.place.l == 0 ? "other" : std::to_string(v.place.l);
  j["status"] = status_name(v.status);
  if (v.point) {
    ordered_json pt = ordered_json::array();
    for (auto& x : v.point->point) pt.push_back(x.str());
    j["point"] = pt;
    j["mod"] = std::to_string(v.point->l) + "^" + std::to_string(v.point->k);
    j["minor_val"] = v.point->minor_val;
    j["origin"] = v.point->origin;
  }
  if (v.real) {
    ordered_json sq = ordered_json::array();
    for (auto& x : v.real->squares) sq.push_back(rat_str(x));
    j["point_squares"] = sq;
  }
  if (v.refutation) {
    const auto& r = *v.refutation;
    j["criterion"] = r.criterion;
    ordered_json syms = ordered_json::array();
    for (auto& s : r.symbols) {
      ordered_json e;
      if (!s.chart.empty()) {
        e["chart"] = s.chart;
        e["center"] = s.center.str();
        e["radius"] = s.radius;
      }
      e["form"] = s.which;
      e["value"] = s.value.str();
      if (s.valuation != kInfVal) e["valuation"] = s.valuation;
      e["symbol"] = s.symbol;
      syms.push_back(e);
    }
    j["symbols"] = syms;
    if (r.criterion != "sign") {
      j["depth"] = r.depth;
      j["balls"] = r.balls;
      j["leaves"] = r.leaves;
    }
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

inline ordered_json pair_verdict_json(const PairVerdict& pv) {
  ordered_json places = ordered_json::array();
  for (auto& v : pv.verdicts) places.push_back(verdict_json(v));
  return {{"pair", pair_json(pv.pair)}, {"status", status_name(pv.status)}, {"places", places}};
}

inline ordered_json selmer_json(const SelmerGroup& g, const Comparison& cmp) {
  ordered_json theorem = {{"applicable", cmp.applicable}};
  theorem["agrees"] = cmp.applicable ? ordered_json(cmp.agrees) : ordered_json(nullptr);
  if (cmp.applicable && !cmp.agrees) {
    theorem["missing"] = pairs_json(cmp.missing);
    theorem["extra"] = pairs_json(cmp.extra);
  }
  return {{"members", pairs_json(g.members)},
          {"dimension", g.dimension},
          {"quotient_generators", pairs_json(g.quotient_generators)},
          {"rank_upper_bound", g.rank_upper_bound},
          {"theorem", theorem}};
}

inline ordered_json point_json(const CurvePoint& p) {
  if (p.is_infinity()) return {{"x", nullptr}, {"y", nullptr}};
  return {{"x", {numerator(*p.x).str(), denominator(*p.x).str()}},
          {"y", {numerator(*p.y).str(), denominator(*p.y).str()}}};
}

inline std::string point_str(const CurvePoint& p) {
  if (p.is_infinity()) return "O";
  return "(" + rat_str(*p.x) + ", " + rat_str(*p.y) + ")";
}

inline std::string pairs_str(const std::vector<DescentPair>& ps) {
  std::string s = "<";
  for (size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + ps[i].str();
  return s + ">";
}

inline std::string verdict_str(const LocalVerdict& v) {
  std::string s = v.place.real ? "inf" : v.place.l == 0 ? "other" : std::to_string(v.place.l);
  s += " ";
  s += status_name(v.status);
  if (v.point) {
    s += " point (";
    for (int i = 0; i < 4; ++i) s += (i ? "," : "") + v.point->point[i].str();
    s += ") mod " + std::to_string(v.point->l) + "^" + std::to_string(v.point->k) +
         " minor_val " + std::to_string(v.point->minor_val);
  }
  if (v.refutation) s += " by " + v.refutation->criterion;
  if (!v.note.empty()) s += " (" + v.note + ")";
  return s;
}

}  // namespace heron
