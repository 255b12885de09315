#pragma once

// Ball refinement for the l-adic points of a torsor.
//
// In the chart x0 = 1, x1 = t the torsor has a point over t in Z_l exactly
// when P1(t) = b2 (b1 t^2 - A) and P2(t) = b1 b2 (b1 t^2 + B) are both squares
// in Q_l (zero allowed, but not both). The chart at infinity uses s = 1/t in
// l Z_l with H1(s) = b2 (b1 - A s^2), H2(s) = b1 b2 (b1 + B s^2). The search
// subdivides balls c + l^r Z_l until each polynomial has constant square class
// on the ball, or until a simple root is isolated.

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "heron/ladic.hpp"

namespace heron::detail {

struct Quad {
  BigInt a, b, c;
  BigInt at(const BigInt& u) const { return (a * u + b) * u + c; }
  BigInt deriv(const BigInt& u) const { return 2 * a * u + b; }
};

enum class WitnessKind { Generic, RootFirst, RootSecond };

struct Witness {
  int chart = 0;  // 0: x0 = 1, 1: x1 = 1
  BigInt u;
  WitnessKind kind = WitnessKind::Generic;
};

/// A ball on which one of the two values is forced out of the squares.
struct DeadLeaf {
  int chart;
  BigInt center;
  int radius;
  int which;      // 1 or 2
  BigInt value;   // representative value of the offending polynomial
  int valuation;
  int symbol;     // Legendre symbol (or the mod-8 class test at 2) of its unit part
};

struct SearchOutcome {
  enum Kind { Found, Refuted, Inconclusive } kind = Refuted;
  Witness witness;
  std::vector<DeadLeaf> leaves;
  uint64_t leaf_count = 0;
  uint64_t balls = 0;
  int max_radius = 0;
};

/// Polynomial of degree <= 2 over F_l.
struct ResPoly {
  uint64_t a = 0, b = 0, c = 0;
  int degree() const { return a ? 2 : b ? 1 : c ? 0 : -1; }
};

class BallSearch {
 public:
  static constexpr uint64_t kEnumerateBelow = 5000;

  BallSearch(uint64_t l, int max_radius, uint64_t seed) : l_(l), max_radius_(max_radius), rng_(seed) {
    kappa_ = l == 2 ? 3 : 1;
  }

  SearchOutcome run(const std::array<Quad, 2>& affine, const std::array<Quad, 2>& infinity) {
    out_ = SearchOutcome{};
    bool undecided = false;
    const std::array<Quad, 2>* charts[2] = {&affine, &infinity};
    for (int chart = 0; chart < 2; ++chart) {
      polys_ = *charts[chart];
      chart_ = chart;
      Result r = explore(0, chart == 0 ? 0 : 1);
      if (r == Result::Found) {
        out_.kind = SearchOutcome::Found;
        return out_;
      }
      if (r == Result::Undecided) undecided = true;
    }
    out_.kind = undecided ? SearchOutcome::Inconclusive : SearchOutcome::Refuted;
    return out_;
  }

 private:
  enum class Result { Found, Dead, Undecided };

  struct Local {
    BigInt value, slope;
    int val0, vslope, val1, val2;
  };

  Local local(const Quad& p, const BigInt& c, int r) const {
    Local L;
    L.value = p.at(c);
    L.slope = p.deriv(c);
    L.val0 = vl(L.value, l_);
    L.vslope = vl(L.slope, l_);
    L.val1 = L.vslope == kInfVal ? kInfVal : r + L.vslope;
    L.val2 = p.a == 0 ? kInfVal : 2 * r + vl(p.a, l_);
    return L;
  }

  bool square(const BigInt& x) const { return x != 0 && is_square_qp(x, l_); }

  int unit_symbol(const BigInt& x) const {
    int v = vl(x, l_);
    BigInt u = strip(x, l_, v);
    if (l_ == 2) return mod_floor(u, 8) == 1 ? 1 : -1;
    return legendre(u, l_);
  }

  void dead(const BigInt& c, int r, int which, const BigInt& value) {
    ++out_.leaf_count;
    if (out_.leaves.size() >= 8) return;
    if (value == 0)
      out_.leaves.push_back({chart_, c, r, which, value, kInfVal, 0});
    else
      out_.leaves.push_back({chart_, c, r, which, value, vl(value, l_), unit_symbol(value)});
  }

  Result found(const BigInt& u, WitnessKind kind) {
    out_.witness = {chart_, u, kind};
    return Result::Found;
  }

  Result explore(const BigInt& c, int r) {
    ++out_.balls;
    out_.max_radius = std::max(out_.max_radius, r);
    Local L1 = local(polys_[0], c, r), L2 = local(polys_[1], c, r);
    bool s1 = square(L1.value), s2 = square(L2.value);
    if (s1 && s2) return found(c, WitnessKind::Generic);
    if (L1.value == 0 && s2) return found(c, WitnessKind::RootFirst);
    if (L2.value == 0 && s1) return found(c, WitnessKind::RootSecond);

    bool const1 = L1.value != 0 && L1.val0 + kappa_ <= std::min(L1.val1, L1.val2);
    bool const2 = L2.value != 0 && L2.val0 + kappa_ <= std::min(L2.val1, L2.val2);
    if (const1 && !s1) {
      dead(c, r, 1, L1.value);
      return Result::Dead;
    }
    if (const2 && !s2) {
      dead(c, r, 2, L2.value);
      return Result::Dead;
    }
    if (const2 && has_root(L1, r)) return found(c, WitnessKind::RootFirst);
    if (const1 && has_root(L2, r)) return found(c, WitnessKind::RootSecond);
    if (r >= max_radius_) return Result::Undecided;
    return l_ == 2 ? split_binary(c, r) : split_odd(c, r, L1, L2);
  }

  /// Hensel: a root of the polynomial lies in c + l^r Z_l.
  static bool has_root(const Local& L, int r) {
    if (L.value == 0) return true;
    if (L.vslope == kInfVal) return false;
    return L.val0 > 2 * L.vslope && L.val0 - L.vslope >= r;
  }

  Result split_binary(const BigInt& c, int r) {
    bool undecided = false;
    BigInt step = BigInt(1) << r;
    for (int d = 0; d < 2; ++d) {
      Result res = explore(c + step * d, r + 1);
      if (res == Result::Found) return res;
      if (res == Result::Undecided) undecided = true;
    }
    return undecided ? Result::Undecided : Result::Dead;
  }

  // Odd l: child c + l^r d has P(child) = l^mu (pbar(d) + l*...), so every
  // child off the roots of pbar has a known constant class.
  Result split_odd(const BigInt& c, int r, const Local& L1, const Local& L2) {
    BigInt lr = ipow(l_, r);
    const Local* Ls[2] = {&L1, &L2};
    ResPoly pb[2];
    int mu[2];
    for (int i = 0; i < 2; ++i) {
      const Local& L = *Ls[i];
      mu[i] = std::min({L.val0, L.val1, L.val2});
      BigInt lmu = ipow(l_, mu[i]);
      pb[i].c = residue(L.value / lmu, l_);
      pb[i].b = residue(L.slope * lr / lmu, l_);
      pb[i].a = residue(polys_[i].a * lr * lr / lmu, l_);
    }
    std::vector<uint64_t> zs;
    for (auto& p : pb)
      for (uint64_t z : roots(p)) zs.push_back(z);
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

    if (mu[0] % 2 == 0 && mu[1] % 2 == 0) {
      auto d = unit_child(pb[0], pb[1], zs);
      if (d) return found(c + lr * BigInt(*d), WitnessKind::Generic);
      dead(c, r, 0, 0);
    } else {
      dead(c, r, mu[0] % 2 ? 1 : 2, mu[0] % 2 ? L1.value : L2.value);
    }

    bool undecided = false;
    for (uint64_t z : zs) {
      Result res = explore(c + lr * BigInt(z), r + 1);
      if (res == Result::Found) return res;
      if (res == Result::Undecided) undecided = true;
    }
    return undecided ? Result::Undecided : Result::Dead;
  }

  uint64_t ev(const ResPoly& p, uint64_t d) const {
    return (mulmod(mulmod(p.a, d, l_), d, l_) + mulmod(p.b, d, l_) + p.c) % l_;
  }
  int chi(uint64_t x) const { return jacobi(x, l_); }
  uint64_t neg(uint64_t x) const { return x ? l_ - x : 0; }
  uint64_t inv(uint64_t x) const { return powmod(x, l_ - 2, l_); }

  std::vector<uint64_t> roots(const ResPoly& p) const {
    switch (p.degree()) {
      case 1: return {mulmod(neg(p.c), inv(p.b), l_)};
      case 2: {
        uint64_t disc = (mulmod(p.b, p.b, l_) + l_ - mulmod(4 % l_, mulmod(p.a, p.c, l_), l_)) % l_;
        auto s = sqrt_mod(disc, l_);
        if (!s) return {};
        uint64_t i2a = inv(mulmod(2, p.a, l_));
        uint64_t r1 = mulmod((neg(p.b) + *s) % l_, i2a, l_);
        uint64_t r2 = mulmod((neg(p.b) + neg(*s)) % l_, i2a, l_);
        if (r1 == r2) return {r1};
        return {r1, r2};
      }
      default: return {};
    }
  }

  /// Sum of chi(p(d)) over all d in F_l.
  i128 char_sum(const ResPoly& p) const {
    switch (p.degree()) {
      case 0: return i128(chi(p.c)) * l_;
      case 1: return 0;
      case 2: {
        uint64_t disc = (mulmod(p.b, p.b, l_) + l_ - mulmod(4 % l_, mulmod(p.a, p.c, l_), l_)) % l_;
        return disc ? -chi(p.a) : i128(chi(p.a)) * (l_ - 1);
      }
      default: return 0;
    }
  }

  bool square_type(const ResPoly& p) const {
    if (p.degree() != 2) return false;
    uint64_t disc = (mulmod(p.b, p.b, l_) + l_ - mulmod(4 % l_, mulmod(p.a, p.c, l_), l_)) % l_;
    return disc == 0;
  }

  bool proportional(const ResPoly& p, const ResPoly& q, uint64_t& ratio) const {
    if (p.degree() != q.degree() || p.degree() < 0) return false;
    uint64_t lp = p.a ? p.a : p.b ? p.b : p.c, lq = q.a ? q.a : q.b ? q.b : q.c;
    ratio = mulmod(lp, inv(lq), l_);
    return p.a == mulmod(ratio, q.a, l_) && p.b == mulmod(ratio, q.b, l_) && p.c == mulmod(ratio, q.c, l_);
  }

  /// Sum of chi(p1 p2) when it can be given exactly.
  std::optional<i128> exact_product_sum(const ResPoly& p1, const ResPoly& p2) const {
    if (p1.degree() == 0) return chi(p1.c) * char_sum(p2);
    if (p2.degree() == 0) return chi(p2.c) * char_sum(p1);
    uint64_t ratio;
    if (proportional(p1, p2, ratio)) return i128(chi(ratio)) * (i128(l_) - i128(roots(p2).size()));
    for (int swap = 0; swap < 2; ++swap) {
      const ResPoly& s = swap ? p2 : p1;
      const ResPoly& o = swap ? p1 : p2;
      if (!square_type(s)) continue;
      uint64_t rho = roots(s)[0];
      return chi(s.a) * (char_sum(o) - chi(ev(o, rho)));
    }
    return std::nullopt;
  }

  std::optional<uint64_t> scan(const ResPoly& p1, const ResPoly& p2) const {
    for (uint64_t d = 0; d < l_; ++d)
      if (chi(ev(p1, d)) == 1 && chi(ev(p2, d)) == 1) return d;
    return std::nullopt;
  }

  /// Some d with both residues nonzero squares, if any exists.
  std::optional<uint64_t> unit_child(const ResPoly& p1, const ResPoly& p2, const std::vector<uint64_t>& zs) {
    if (l_ < kEnumerateBelow) return scan(p1, p2);
    i128 s1 = char_sum(p1), s2 = char_sum(p2);
    for (uint64_t z : zs) {
      s1 -= chi(ev(p1, z));
      s2 -= chi(ev(p2, z));
    }
    i128 base = i128(l_) - i128(zs.size()) + s1 + s2;
    auto s12 = exact_product_sum(p1, p2);
    if (s12) {
      if (base + *s12 == 0) return std::nullopt;
    } else {
      int deg = p1.degree() + p2.degree();
      i128 bound = i128((deg - 1) * std::ceil(std::sqrt(double(l_))));
      if (base - bound <= 0) return scan(p1, p2);
    }
    std::uniform_int_distribution<uint64_t> dist(0, l_ - 1);
    for (int i = 0; i < 100000; ++i) {
      uint64_t d = dist(rng_);
      if (chi(ev(p1, d)) == 1 && chi(ev(p2, d)) == 1) return d;
    }
    return scan(p1, p2);
  }

  uint64_t l_;
  int max_radius_;
  int kappa_;
  std::mt19937_64 rng_;
  std::array<Quad, 2> polys_;
  int chart_ = 0;
  SearchOutcome out_;
};

}  // namespace heron::detail
