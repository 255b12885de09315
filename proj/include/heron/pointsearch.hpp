#pragma once

// Naive search for rational points x = u/v^2 and the descent-image lower bound.

#include <numeric>
#include <set>
#include <thread>

#include "heron/selmer.hpp"

namespace heron {

namespace detail {

/// u (u - A v^2)(u + B v^2), in 128 bits when it fits.
inline std::optional<i128> cubic_numerator(i128 u, i128 v2, i128 A, i128 B) {
  auto av = checked_mul(A, v2), bv = checked_mul(B, v2);
  if (!av || !bv) return std::nullopt;
  auto f1 = checked_add(u, -*av), f2 = checked_add(u, *bv);
  if (!f1 || !f2) return std::nullopt;
  auto p = checked_mul(u, *f1);
  if (!p) return std::nullopt;
  return checked_mul(*p, *f2);
}

}  // namespace detail

/// Points with |u| <= num_bound, 1 <= v <= den_bound, gcd(u, v) = 1, plus the
/// 2-torsion; both signs of y. The u-range is split across workers; the
/// result is sorted by denominator, then x, then descending y.
inline std::vector<CurvePoint> search_points(const HeronCurve& c, uint64_t num_bound, uint64_t den_bound,
                                             unsigned workers = 1) {
  const BigInt Abig = c.A(), Bbig = c.B();
  const bool small = Abig <= BigInt(INT64_MAX);
  const i128 A = small ? i128(Abig.convert_to<int64_t>()) : 0;
  const i128 B = i128(1) << c.m;

  auto scan = [&](int64_t u_lo, int64_t u_hi, std::vector<CurvePoint>& found) {
    for (uint64_t v = 1; v <= den_bound; ++v) {
      i128 v2 = i128(v) * v;
      for (int64_t u = u_lo; u <= u_hi; ++u) {
        if (std::gcd(uint64_t(u < 0 ? -u : u), v) != 1) continue;
        std::optional<BigInt> w;
        auto num = small ? detail::cubic_numerator(u, v2, A, B) : std::nullopt;
        if (num) {
          if (*num < 0) continue;
          u128 nn = u128(*num);
          if (nn < (u128(1) << 126)) {
            uint64_t r = isqrt(nn);
            if (u128(r) * r != nn) continue;
            w = BigInt(r);
          } else {
            w = exact_sqrt(to_big(*num));
          }
        } else {
          BigInt U = u, V2 = BigInt(v) * v;
          w = exact_sqrt(U * (U - Abig * V2) * (U + Bbig * V2));
        }
        if (!w) continue;
        BigRational x(BigInt(u), BigInt(v) * v), y(*w, BigInt(v) * v * v);
        found.push_back({x, y});
        if (y != 0) found.push_back({x, BigRational(-y)});
      }
    }
  };

  unsigned w = std::max(1u, workers);
  int64_t lo = -int64_t(num_bound), total = 2 * int64_t(num_bound) + 1;
  std::vector<std::vector<CurvePoint>> parts(w);
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < w; ++i) {
    int64_t a = lo + total * i / w, b = lo + total * (i + 1) / w - 1;
    pool.emplace_back(scan, a, b, std::ref(parts[i]));
  }
  for (auto& t : pool) t.join();

  std::vector<CurvePoint> out = two_torsion(c);
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  auto less = [](const CurvePoint& a, const CurvePoint& b) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && !b.is_infinity();
    BigInt ha = denominator(*a.x), hb = denominator(*b.x);
    if (ha != hb) return ha < hb;
    if (*a.x != *b.x) return *a.x < *b.x;
    return *a.y > *b.y;
  };
  std::sort(out.begin(), out.end(), less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct DescentImage {
  std::vector<DescentPair> images;      // one per input point
  std::vector<DescentPair> generators;  // basis of the image modulo the torsion image
  int dimension = 0;                    // of the generated subgroup
  int rank_lower_bound = 0;
};

/// Images under the descent map; each must lie in the Selmer group.
inline DescentImage verify_descent_image(const HeronCurve& c, const std::vector<CurvePoint>& pts,
                                         const SelmerGroup& g) {
  std::set<uint64_t> members;
  for (auto& m : g.members) members.insert(m.key());
  DescentImage d;
  for (auto& p : pts) {
    auto b = beta(c, p);
    if (!members.count(b.key())) throw Error(Errc::ImageOutsideSelmer, "image " + b.str() + " is not in the Selmer group");
    d.images.push_back(b);
  }
  auto gens = torsion_image(c);
  gens.insert(gens.end(), d.images.begin(), d.images.end());
  auto sp = span(gens);
  while ((size_t(1) << d.dimension) < sp.size()) ++d.dimension;
  std::vector<DescentPair> sorted = d.images;
  std::sort(sorted.begin(), sorted.end(), pair_less);
  d.generators = quotient_basis(sorted, torsion_image(c));
  d.rank_lower_bound = d.dimension - 2;
  return d;
}

}  // namespace heron
