#pragma once

// Published Selmer tables, loaded from a versioned JSON file.

#include <fstream>
#include <variant>

#include <json.hpp>

#include "heron/selmer.hpp"

namespace heron {

struct TableRow {
  int table = 0;
  int parity = 0;  // m mod 2
  std::vector<int> m_values;
  uint64_t n = 0;
  std::vector<uint64_t> factors;
  uint64_t q = 0;
  std::vector<std::pair<int64_t, int64_t>> generators;
  std::string asterisk;  // "", "group", or the index of the marked generator

  std::string id() const { return "T" + std::to_string(table) + ":" + std::to_string(n); }
};

inline std::vector<TableRow> load_tables(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::FixtureFormat, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::FixtureFormat, e.what());
  }
  if (j.value("version", 0) != 1) throw Error(Errc::FixtureFormat, "unsupported fixture version");
  std::vector<TableRow> rows;
  try {
    for (auto& t : j.at("tables")) {
      for (auto& r : t.at("rows")) {
        TableRow row;
        row.table = t.at("id");
        row.parity = t.at("parity") == "odd" ? 1 : 0;
        row.m_values = t.at("m_values").get<std::vector<int>>();
        row.n = r.at("n");
        row.factors = r.at("factors").get<std::vector<uint64_t>>();
        row.q = r.at("q");
        for (auto& g : r.at("generators")) row.generators.emplace_back(g.at(0), g.at(1));
        auto& a = r.at("asterisk");
        if (a.is_string()) row.asterisk = a.get<std::string>();
        else if (a.is_number()) row.asterisk = std::to_string(a.get<int>());
        rows.push_back(row);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::FixtureFormat, path + ": " + e.what());
  }
  return rows;
}

inline std::string default_tables_path() {
#ifdef HERON_DEFAULT_TABLES
  return HERON_DEFAULT_TABLES;
#else
  return "data/tables_v1.json";
#endif
}

/// A recorded point-search result: a point and its descent image.
struct PointRecord {
  uint64_t n = 0;
  int m = 0;
  CurvePoint point;
  std::pair<int64_t, int64_t> image;
};

inline BigRational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return BigRational(BigInt(s));
  return BigRational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

inline std::vector<PointRecord> load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::FixtureFormat, "cannot open " + path);
  std::vector<PointRecord> out;
  try {
    nlohmann::json j;
    in >> j;
    if (j.value("version", 0) != 1) throw Error(Errc::FixtureFormat, "unsupported fixture version");
    for (auto& c : j.at("curves"))
      for (auto& p : c.at("points")) {
        PointRecord r;
        r.n = c.at("n");
        r.m = c.at("m");
        r.point = {parse_rational(p.at("x")), parse_rational(p.at("y"))};
        r.image = {p.at("image").at(0), p.at("image").at(1)};
        out.push_back(r);
      }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::FixtureFormat, path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(Errc::FixtureFormat, path + ": " + e.what());
  }
  return out;
}

struct RowCheck {
  TableRow row;
  int m = 0;
  bool agrees = false;
  std::vector<DescentPair> missing, extra;
  int dimension = 0;
};

/// Compares the computed group with the published generators, modulo torsion.
inline RowCheck check_row(const TableRow& row, int m, const SelmerGroup& g, const HeronCurve& c) {
  RowCheck rc;
  rc.row = row;
  rc.m = m;
  rc.dimension = g.dimension;
  TheoremPrediction published;
  published.applicable = true;
  for (auto& [a, b] : row.generators) published.generators.push_back(make_pair(c, a, b));
  auto cmp = compare(c, g, published);
  rc.agrees = cmp.agrees;
  rc.missing = cmp.missing;
  rc.extra = cmp.extra;
  return rc;
}

}  // namespace heron
