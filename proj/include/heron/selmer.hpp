#pragma once

// Assembly of the 2-Selmer group from local verdicts, and the closed-form
// prediction it is compared against.

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "heron/localsolve.hpp"

namespace heron {

struct PairVerdict {
  DescentPair pair;
  Status status = Status::Undecided;
  std::vector<LocalVerdict> verdicts;  // in place order; stops at the first refutation
};

inline PairVerdict solvable_everywhere(const HeronCurve& c, const DescentPair& pair, const SolveConfig& cfg = {}) {
  PairVerdict pv;
  pv.pair = pair;
  auto h = build(c, pair);
  bool undecided = false;
  for (const Place& pl : places_to_check(c)) {
    LocalVerdict v;
    if (pl.real) {
      v = solvable_real(h);
    } else {
      int depth = cfg.depth ? *cfg.depth : default_depth(c, h, pl.l);
      v = pl.l == 2 ? solvable_2adic(h, depth)
                    : solvable_odd(h, pl.l, derive_seed(cfg.seed, pair, pl.l), depth, cfg.samples);
    }
    Status s = v.status;
    pv.verdicts.push_back(std::move(v));
    if (s == Status::Insolvable) {
      pv.status = Status::Insolvable;
      return pv;
    }
    if (s == Status::Undecided) undecided = true;
  }
  LocalVerdict rest;
  rest.place = Place::prime(0);
  rest.status = Status::Solvable;
  rest.note = "good reduction at every other prime";
  pv.verdicts.push_back(rest);
  pv.status = undecided ? Status::Undecided : Status::Solvable;
  return pv;
}

/// Subgroup of Q(S,2)^2 spanned by the given pairs, as a sorted key set.
inline std::set<uint64_t> span(const std::vector<DescentPair>& gens) {
  std::set<uint64_t> out = {0};
  for (const auto& g : gens) {
    std::set<uint64_t> next = out;
    for (uint64_t k : out) next.insert(k ^ g.key());
    out.swap(next);
  }
  return out;
}

inline DescentPair pair_from_key(const HeronCurve& c, uint64_t key) {
  return {SquareClass(c.ambient, key >> 32), SquareClass(c.ambient, key & 0xffffffffULL)};
}

struct SelmerGroup {
  std::vector<DescentPair> members;              // sorted by pair_less
  int dimension = 0;
  std::vector<DescentPair> quotient_generators;  // basis of members / torsion image
  int rank_upper_bound = 0;
  std::vector<PairVerdict> verdicts;             // one per pair of Q(S,2)^2, enumeration order
};

struct SelmerConfig {
  SolveConfig solve;
  unsigned workers = 1;
};

inline std::vector<DescentPair> all_pairs(const HeronCurve& c) {
  auto classes = enumerate_qs2(c.ambient);
  std::vector<DescentPair> out;
  out.reserve(classes.size() * classes.size());
  for (auto& a : classes)
    for (auto& b : classes) out.push_back({a, b});
  return out;
}

/// Greedy basis of span(members) modulo span(base), scanning members in pair_less order.
inline std::vector<DescentPair> quotient_basis(const std::vector<DescentPair>& members,
                                               const std::vector<DescentPair>& base) {
  std::vector<DescentPair> gens = base, out;
  auto current = span(gens);
  for (const auto& m : members) {
    if (current.count(m.key())) continue;
    gens.push_back(m);
    out.push_back(m);
    current = span(gens);
  }
  return out;
}

inline SelmerGroup compute_selmer(const HeronCurve& c, const SelmerConfig& cfg = {}) {
  auto pairs = all_pairs(c);
  std::vector<PairVerdict> verdicts(pairs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next.fetch_add(1)) < pairs.size();) verdicts[i] = solvable_everywhere(c, pairs[i], cfg.solve);
  };
  unsigned w = std::max(1u, cfg.workers);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < w; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  SelmerGroup g;
  for (auto& v : verdicts) {
    if (v.status == Status::Undecided) {
      std::string where;
      for (auto& lv : v.verdicts)
        if (lv.status == Status::Undecided) where += " " + lv.place.str();
      throw Error(Errc::UndecidedVerdict, "pair " + v.pair.str() + " undecided at" + where);
    }
    if (v.status == Status::Solvable) g.members.push_back(v.pair);
  }
  std::sort(g.members.begin(), g.members.end(), pair_less);

  std::set<uint64_t> keys;
  for (auto& m : g.members) keys.insert(m.key());
  for (auto a : keys)
    for (auto b : keys)
      if (!keys.count(a ^ b)) throw Error(Errc::ClosureViolation, "members are not closed under multiplication");
  size_t sz = keys.size();
  if (sz == 0 || (sz & (sz - 1)) != 0) throw Error(Errc::ClosureViolation, "member count is not a power of two");
  for (auto& t : torsion_image(c))
    if (!keys.count(t.key())) throw Error(Errc::ClosureViolation, "torsion image " + t.str() + " is not a member");
  while ((size_t(1) << g.dimension) < sz) ++g.dimension;
  g.quotient_generators = quotient_basis(g.members, torsion_image(c));
  g.rank_upper_bound = g.dimension - 2;
  g.verdicts = std::move(verdicts);
  return g;
}

// ------------------------------------------------------- closed-form shape

struct TheoremPrediction {
  bool applicable = false;
  std::string reason;
  std::vector<DescentPair> generators;  // modulo the torsion image
};

inline std::vector<uint64_t> divisors_of(const HeronCurve& c) {
  std::vector<uint64_t> out = {1};
  for (auto p : c.primes) {
    size_t n = out.size();
    for (size_t i = 0; i < n; ++i) out.push_back(out[i] * p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline TheoremPrediction classify_theorem(const HeronCurve& c) {
  TheoremPrediction t;
  auto r8 = [](uint64_t x) { return x % 8; };
  bool all_pm1 = std::all_of(c.primes.begin(), c.primes.end(), [&](uint64_t p) { return r8(p) == 1 || r8(p) == 7; });
  bool all_pm3 = std::all_of(c.primes.begin(), c.primes.end(), [&](uint64_t p) { return r8(p) == 3 || r8(p) == 5; });
  auto qr = [&](uint64_t b) { return jacobi(b, c.q) == 1; };
  auto add = [&](uint64_t b1, uint64_t b2) { t.generators.push_back(make_pair(c, b1, b2)); };
  const auto divs = divisors_of(c);
  if (c.delta == 0) {
    t.applicable = true;
    t.reason = "even m";
    for (auto b : divs)
      if ((r8(b) == 1 || r8(b) == 7) && qr(b)) add(b, b);
    if (all_pm1)
      for (auto b : divs)
        if (qr(b)) add(b, 2 * b);
    return t;
  }
  if (all_pm3) {
    t.applicable = true;
    t.reason = "odd m, primes of n all 3 or 5 mod 8";
    if (c.q % 8 == 1) add(2, 2);
    return t;
  }
  if (all_pm1) {
    t.applicable = true;
    t.reason = "odd m, primes of n all 1 or 7 mod 8";
    for (auto b : divs) {
      if (!qr(b)) continue;
      if (r8(b) == 1) add(b, b);
      if (c.q % 8 == 1 && r8(b) == 7) add(2 * b, b);
    }
    if (c.q % 8 == 1) add(2, 2);
    return t;
  }
  t.reason = "odd m, primes of n mixed mod 8";
  return t;
}

struct Comparison {
  bool applicable = false;
  bool agrees = false;
  std::vector<DescentPair> missing;  // predicted, not computed
  std::vector<DescentPair> extra;    // computed, not predicted
};

/// Compares span(prediction, torsion) with the computed members.
inline Comparison compare(const HeronCurve& c, const SelmerGroup& g, const TheoremPrediction& t) {
  Comparison cmp;
  cmp.applicable = t.applicable;
  if (!t.applicable) return cmp;
  auto gens = torsion_image(c);
  gens.insert(gens.end(), t.generators.begin(), t.generators.end());
  auto predicted = span(gens);
  std::set<uint64_t> computed;
  for (auto& m : g.members) computed.insert(m.key());
  for (auto k : predicted)
    if (!computed.count(k)) cmp.missing.push_back(pair_from_key(c, k));
  for (auto k : computed)
    if (!predicted.count(k)) cmp.extra.push_back(pair_from_key(c, k));
  std::sort(cmp.missing.begin(), cmp.missing.end(), pair_less);
  std::sort(cmp.extra.begin(), cmp.extra.end(), pair_less);
  cmp.agrees = cmp.missing.empty() && cmp.extra.empty();
  return cmp;
}

}  // namespace heron
