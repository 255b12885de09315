#pragma once

// Local solvability of a torsor at the real place and at primes, with
// checkable certificates for every verdict.

#include <random>
#include <variant>

#include "heron/homspace.hpp"
#include "heron/refine.hpp"

namespace heron {

enum class Status { Solvable, Insolvable, Undecided };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Solvable: return "Solvable";
    case Status::Insolvable: return "Insolvable";
    case Status::Undecided: return "Undecided";
  }
  return "?";
}

/// A primitive integer 4-tuple x with Q1(x) = Q2(x) = 0 mod l^k whose
/// smallest Jacobian minor valuation e satisfies k >= 2e+1, so that x lifts.
struct PointCertificate {
  uint64_t l = 0;
  int k = 0;
  int minor_val = 0;
  Point4 point;
  std::string origin;
};

/// An exact real point, given by the squares of its coordinates.
struct RealCertificate {
  std::array<BigRational, 4> squares;
};

struct SymbolEntry {
  std::string chart;
  BigInt center;
  int radius;
  int which;
  BigInt value;
  int valuation;
  int symbol;
};

struct Refutation {
  std::string criterion;
  int depth = 0;
  uint64_t balls = 0;
  uint64_t leaves = 0;
  std::vector<SymbolEntry> symbols;
};

struct LocalVerdict {
  Place place;
  Status status = Status::Undecided;
  std::optional<PointCertificate> point;
  std::optional<RealCertificate> real;
  std::optional<Refutation> refutation;
  std::string note;
};

struct SolveConfig {
  uint64_t seed = 0;
  std::optional<int> depth;  // overrides the per-place default
  int samples = 64;
};

// ---------------------------------------------------------------- real place

inline LocalVerdict solvable_real(const HomogeneousSpace& h) {
  LocalVerdict v;
  v.place = Place::infinity();
  if (h.b1.sign() != h.b2.sign()) {
    v.status = Status::Insolvable;
    Refutation r;
    r.criterion = "sign";
    r.symbols.push_back({"", 0, 0, 1, h.b1, 0, h.b1.sign()});
    r.symbols.push_back({"", 0, 0, 2, h.b2, 0, h.b2.sign()});
    v.refutation = r;
    return v;
  }
  RealCertificate rc;
  BigRational b1(h.b1), b2(h.b2), A(h.A), B(h.B), C(h.C);
  if (h.b1 > 0) {
    rc.squares = {BigRational(1), A / b1, BigRational(0), C / (b1 * b2)};
  } else {
    rc.squares = {BigRational(1), -B / b1, -C / b2, BigRational(0)};
  }
  v.status = Status::Solvable;
  v.real = rc;
  return v;
}

inline bool verify_real(const HomogeneousSpace& h, const RealCertificate& rc) {
  BigRational s1 = 0, s2 = 0;
  bool nonzero = false;
  for (int i = 0; i < 4; ++i) {
    if (rc.squares[i] < 0) return false;
    if (rc.squares[i] != 0) nonzero = true;
    s1 += BigRational(h.q1.coef[i]) * rc.squares[i];
    s2 += BigRational(h.q2.coef[i]) * rc.squares[i];
  }
  return nonzero && s1 == 0 && s2 == 0;
}

// ------------------------------------------------------------- certificates

inline bool primitive_at(const Point4& x, uint64_t l) {
  for (auto& c : x)
    if (c % l != 0) return true;
  return false;
}

inline bool verify_certificate(const HomogeneousSpace& h, const PointCertificate& c) {
  if (c.l < 2 || c.k < 1 || !primitive_at(c.point, c.l)) return false;
  if (!vanishes_mod(h, c.point, ipow(c.l, c.k))) return false;
  auto e = jacobian_minor_valuation(h, c.point, c.l);
  return e && *e == c.minor_val && c.k >= 2 * *e + 1;
}

/// Newton iteration on the pair (x_i, x_j) of the smallest minor, raising the
/// precision of a certified point to l^target.
inline Point4 hensel_lift(const HomogeneousSpace& h, const PointCertificate& c, int target) {
  Point4 y = c.point;
  auto J0 = jacobian(h, y);
  int bi = 0, bj = 1, best = kInfVal;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      int v = vl(J0.minor(i, j), c.l);
      if (v < best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  BigInt mod = ipow(c.l, target + 2 * best + 2);
  for (int iter = 0; iter < 200; ++iter) {
    BigInt f1 = h.q1(y), f2 = h.q2(y);
    if (std::min(vl(f1, c.l), vl(f2, c.l)) >= target) break;
    auto J = jacobian(h, y);
    BigInt det = J.minor(bi, bj);
    int vd = vl(det, c.l);
    BigInt lvd = ipow(c.l, vd);
    BigInt uinv = inv_mod(det / lvd, mod);
    BigInt ni = J.rows[1][bj] * f1 - J.rows[0][bj] * f2;
    BigInt nj = -J.rows[1][bi] * f1 + J.rows[0][bi] * f2;
    y[bi] = mod_floor(y[bi] - (ni / lvd) * uinv, mod);
    y[bj] = mod_floor(y[bj] - (nj / lvd) * uinv, mod);
  }
  return y;
}

inline int default_depth(const HeronCurve& c, const HomogeneousSpace& h, uint64_t l) {
  return 2 * vl(c.discriminant * h.b1 * h.b2, l) + 5;
}

inline uint64_t derive_seed(uint64_t seed, const DescentPair& p, uint64_t l) {
  uint64_t s = seed ^ 0x5bd1e995u;
  splitmix64(s);
  s ^= p.b1.mask() * 0x9e3779b97f4a7c15ULL;
  splitmix64(s);
  s ^= p.b2.mask() * 0xc2b2ae3d27d4eb4fULL;
  splitmix64(s);
  s ^= l;
  return splitmix64(s);
}

namespace detail {

inline std::array<Quad, 2> affine_chart(const HomogeneousSpace& h) {
  BigInt bb = h.b1 * h.b2;
  return {Quad{h.b2 * h.b1, 0, -h.b2 * h.A}, Quad{bb * h.b1, 0, bb * h.B}};
}

inline std::array<Quad, 2> infinity_chart(const HomogeneousSpace& h) {
  BigInt bb = h.b1 * h.b2;
  return {Quad{-h.b2 * h.A, 0, h.b2 * h.b1}, Quad{bb * h.B, 0, bb * h.b1}};
}

/// Root of p near u0 to precision l^prec beyond the Hensel threshold.
inline BigInt newton_root(const Quad& p, BigInt u, uint64_t l, int prec) {
  for (int iter = 0; iter < 400; ++iter) {
    BigInt val = p.at(u);
    if (val == 0) return u;
    BigInt slope = p.deriv(u);
    int vs = vl(slope, l);
    if (vl(val, l) >= prec + 2 * vs) return u;
    BigInt mod = ipow(l, prec + 2 * vs + 2);
    BigInt ls = ipow(l, vs);
    u = mod_floor(u - (val / ls) * inv_mod(slope / ls, mod), mod);
  }
  return u;
}

inline std::optional<PointCertificate> certify_witness(const HomogeneousSpace& h, uint64_t l, const Witness& w,
                                                       const std::string& origin) {
  auto polys = w.chart == 0 ? affine_chart(h) : infinity_chart(h);
  BigInt bb = h.b1 * h.b2;
  for (int prec = 24; prec <= 768; prec *= 2) {
    BigInt u = w.u;
    if (w.kind == WitnessKind::RootFirst) u = newton_root(polys[0], u, l, prec);
    if (w.kind == WitnessKind::RootSecond) u = newton_root(polys[1], u, l, prec);
    BigInt r1 = w.kind == WitnessKind::RootFirst ? BigInt(0) : sqrt_ladic(polys[0].at(u), l, prec);
    BigInt r2 = w.kind == WitnessKind::RootSecond ? BigInt(0) : sqrt_ladic(polys[1].at(u), l, prec);
    Point4 y = w.chart == 0 ? Point4{bb, bb * u, h.b1 * r1, r2} : Point4{bb * u, bb, h.b1 * r1, r2};
    int g = kInfVal;
    for (auto& c : y) g = std::min(g, vl(c, l));
    BigInt lg = ipow(l, g);
    for (auto& c : y) c /= lg;
    auto e = jacobian_minor_valuation(h, y, l);
    if (!e) continue;
    int k = 2 * *e + 1;
    BigInt mod = ipow(l, k);
    for (auto& c : y) c = mod_floor(c, mod);
    PointCertificate cert{l, k, *e, y, origin};
    if (verify_certificate(h, cert)) return cert;
  }
  return std::nullopt;
}

inline Refutation refutation_from(const SearchOutcome& s, uint64_t l) {
  Refutation r;
  r.criterion = l == 2 ? "dyadic-classes" : "residue-symbols";
  r.depth = s.max_radius;
  r.balls = s.balls;
  r.leaves = s.leaf_count;
  for (auto& lf : s.leaves)
    r.symbols.push_back({lf.chart == 0 ? "x0=1" : "x1=1", lf.center, lf.radius, lf.which, lf.value, lf.valuation,
                         lf.symbol});
  return r;
}

inline LocalVerdict refine_verdict(const HomogeneousSpace& h, uint64_t l, int depth, uint64_t seed) {
  LocalVerdict v;
  v.place = Place::prime(l);
  BallSearch search(l, depth, seed);
  auto out = search.run(affine_chart(h), infinity_chart(h));
  if (out.kind == SearchOutcome::Found) {
    auto cert = certify_witness(h, l, out.witness, "refinement");
    if (cert) {
      v.status = Status::Solvable;
      v.point = cert;
    } else {
      v.status = Status::Undecided;
      v.note = "witness could not be certified";
    }
  } else if (out.kind == SearchOutcome::Refuted) {
    v.status = Status::Insolvable;
    v.refutation = refutation_from(out, l);
  } else {
    v.status = Status::Undecided;
    v.note = "refinement depth " + std::to_string(depth) + " exhausted";
  }
  return v;
}

}  // namespace detail

// ------------------------------------------------------------ finite places

inline LocalVerdict solvable_2adic(const HomogeneousSpace& h, int max_depth) {
  return detail::refine_verdict(h, 2, max_depth, 0);
}

/// Odd l: random points mod l first, then ball refinement.
inline LocalVerdict solvable_odd(const HomogeneousSpace& h, uint64_t l, uint64_t seed, int max_depth,
                                 int samples = 64) {
  if (l % 2 == 0 || !is_prime(l)) throw Error(Errc::InvalidArgument, "place must be an odd prime");
  std::mt19937_64 rng(seed);
  if (h.b1 % l != 0 && h.b2 % l != 0) {
    uint64_t ib2 = powmod(residue(h.b2, l), l - 2, l);
    uint64_t ib12 = powmod(residue(h.b1 * h.b2, l), l - 2, l);
    uint64_t b1 = residue(h.b1, l), A = residue(h.A, l), B = residue(h.B, l);
    for (int i = 0; i < samples; ++i) {
      uint64_t x0 = rng() % l, x1 = rng() % l;
      if (x0 == 0 && x1 == 0) continue;
      uint64_t t1 = mulmod(mulmod(b1, x1, l), x1, l), t0 = mulmod(x0, x0, l);
      uint64_t s2 = mulmod((t1 + l - mulmod(A, t0, l)) % l, ib2, l);
      uint64_t s3 = mulmod((t1 + mulmod(B, t0, l)) % l, ib12, l);
      auto x2 = sqrt_mod(s2, l), x3 = sqrt_mod(s3, l);
      if (!x2 || !x3) continue;
      PointCertificate cert{l, 1, 0, Point4{x0, x1, *x2, *x3}, "sample"};
      if (verify_certificate(h, cert)) {
        LocalVerdict v;
        v.place = Place::prime(l);
        v.status = Status::Solvable;
        v.point = cert;
        return v;
      }
    }
  }
  return detail::refine_verdict(h, l, max_depth, rng());
}

}  // namespace heron
