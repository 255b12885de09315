#pragma once

// The curve y^2 = x (x - 2^m n^2)(x + 2^m) with q = (n^2+1)/2 prime.

#include <optional>
#include <string>
#include <vector>

#include "heron/squareclass.hpp"

namespace heron {

struct HeronCurve {
  uint64_t n = 0;
  int m = 0;
  std::vector<uint64_t> primes;  // prime factors of n
  uint64_t q = 0;
  int delta = 0;  // m mod 2
  BigInt discriminant;
  AmbientPtr ambient;  // S = {-1, 2, primes of n, q}

  BigInt two_m() const { return BigInt(1) << m; }
  /// Nonzero 2-torsion abscissas are A and -B, with C = A + B.
  BigInt A() const { return two_m() * n * n; }
  BigInt B() const { return two_m(); }
  BigInt C() const { return (BigInt(1) << (m + 1)) * q; }
  std::string label() const { return "n=" + std::to_string(n) + ",m=" + std::to_string(m); }
};

inline constexpr int kMaxM = 60;

inline HeronCurve new_curve(uint64_t n, int m) {
  if (m < 1 || m > kMaxM) throw Error(Errc::InvalidArgument, "m must be in [1," + std::to_string(kMaxM) + "]");
  if (n < 3) throw Error(Errc::InvalidArgument, "n must be at least 3");
  if (n > (uint64_t(1) << 31)) throw Error(Errc::InvalidArgument, "n too large");
  HeronCurve c;
  c.n = n;
  c.m = m;
  c.primes = factor_squarefree(n);
  uint64_t q = (n * n + 1) / 2;
  if (!is_prime(q))
    throw Error(Errc::QNotPrime, std::to_string(n) + "^2+1 = " + std::to_string(n * n + 1) + " and " +
                                     std::to_string(q) + " is not prime");
  c.q = q;
  c.delta = m % 2;
  BigInt n4 = BigInt(n) * n * n * n;
  c.discriminant = (BigInt(1) << (6 * m + 6)) * n4 * q * q;
  Ambient amb;
  amb.primes.push_back(2);
  for (auto p : c.primes) amb.primes.push_back(p);
  amb.primes.push_back(q);
  c.ambient = std::make_shared<const Ambient>(std::move(amb));
  return c;
}

/// A rational point, or the point at infinity when x is empty.
struct CurvePoint {
  std::optional<BigRational> x, y;
  static CurvePoint infinity() { return {}; }
  bool is_infinity() const { return !x.has_value(); }
  bool operator==(const CurvePoint&) const = default;
};

inline bool on_curve(const HeronCurve& c, const CurvePoint& p) {
  if (p.is_infinity()) return true;
  const BigRational& x = *p.x;
  return (*p.y) * (*p.y) == x * (x - BigRational(c.A())) * (x + BigRational(c.B()));
}

inline std::vector<CurvePoint> two_torsion(const HeronCurve& c) {
  return {CurvePoint::infinity(),
          {BigRational(0), BigRational(0)},
          {BigRational(c.A()), BigRational(0)},
          {BigRational(-c.B()), BigRational(0)}};
}

struct Place {
  bool real = false;
  uint64_t l = 0;
  static Place infinity() { return {true, 0}; }
  static Place prime(uint64_t l) { return {false, l}; }
  std::string str() const { return real ? "inf" : std::to_string(l); }
  bool operator==(const Place&) const = default;
};

/// Real place, then 2, 3, the primes of n and q, ascending and without repeats.
inline std::vector<Place> places_to_check(const HeronCurve& c) {
  std::vector<uint64_t> ls = {2, 3};
  for (auto p : c.primes) ls.push_back(p);
  ls.push_back(c.q);
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  std::vector<Place> out = {Place::infinity()};
  for (auto l : ls) out.push_back(Place::prime(l));
  return out;
}

inline DescentPair make_pair(const HeronCurve& c, const BigInt& b1, const BigInt& b2) {
  return {from_integer(b1, c.ambient), from_integer(b2, c.ambient)};
}

/// Images of O, (0,0), (A,0), (-B,0) under the descent map.
inline std::vector<DescentPair> torsion_image(const HeronCurve& c) {
  BigInt d = c.delta ? 2 : 1;
  BigInt e = c.delta ? 1 : 2;
  return {make_pair(c, 1, 1), make_pair(c, -1, -d), make_pair(c, d, BigInt(2) * c.q),
          make_pair(c, -d, -e * c.q)};
}

/// The descent map E(Q) -> Q(S,2) x Q(S,2), x -> (x, x - A).
inline DescentPair beta(const HeronCurve& c, const CurvePoint& p) {
  if (!on_curve(c, p)) throw Error(Errc::NotOnCurve, "point is not on the curve");
  if (p.is_infinity()) return make_pair(c, 1, 1);
  const BigRational& x = *p.x;
  BigRational A(c.A()), B(c.B());
  // At a root of the cubic one factor vanishes; use x(x - A)(x + B) = y^2 instead.
  if (x == 0) return {from_rational(-A * B, c.ambient), from_rational(-A, c.ambient)};
  if (x == A) return {from_rational(A, c.ambient), from_rational(A * (A + B), c.ambient)};
  return {from_rational(x, c.ambient), from_rational(x - A, c.ambient)};
}

}  // namespace heron
