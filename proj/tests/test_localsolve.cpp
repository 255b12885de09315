#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "heron/brute.hpp"
#include "heron/cli.hpp"

using namespace heron;

namespace {

HomogeneousSpace space(uint64_t n, int m, int64_t b1, int64_t b2) {
  auto c = new_curve(n, m);
  return build(c, make_pair(c, b1, b2));
}

LocalVerdict solve_at(const HeronCurve& c, const HomogeneousSpace& h, uint64_t l, uint64_t seed = 0) {
  int depth = default_depth(c, h, l);
  return l == 2 ? solvable_2adic(h, depth) : solvable_odd(h, l, derive_seed(seed, h.pair, l), depth);
}

// Real points: with x0 = 1 the conditions are x2^2 = (b1 t - A)/b2 >= 0 and
// x3^2 = (b1 t + B)/(b1 b2) >= 0 for some t = x1^2 >= 0; x0 = 0 gives the
// homogeneous version with A = B = 0.
bool real_grid(const HomogeneousSpace& h) {
  double b1 = h.b1.convert_to<double>(), b2 = h.b2.convert_to<double>();
  double A = h.A.convert_to<double>(), B = h.B.convert_to<double>();
  for (double x0 : {0.0, 1.0})
    for (int e = -40; e <= 80; ++e)
      for (double mant : {1.0, 1.5}) {
        double t = mant * std::ldexp(1.0, e);
        double s2 = (b1 * t - A * x0) / b2, s3 = (b1 * t + B * x0) / (b1 * b2);
        if (s2 >= 0 && s3 >= 0) return true;
      }
  return false;
}

}  // namespace

TEST(Real, Examples) {
  EXPECT_EQ(solvable_real(space(3, 1, 2, -1)).status, Status::Insolvable);
  EXPECT_EQ(solvable_real(space(3, 1, 2, -1)).refutation->criterion, "sign");
  EXPECT_EQ(solvable_real(space(3, 1, -1, -2)).status, Status::Solvable);
  EXPECT_EQ(solvable_real(space(3, 1, 1, 1)).status, Status::Solvable);
}

TEST(Real, AgreesWithGridSearchAndCertifies) {
  for (uint64_t n : {3, 15, 79})
    for (int m : {1, 2, 5}) {
      auto c = new_curve(n, m);
      for (auto& p : all_pairs(c)) {
        auto h = build(c, p);
        auto v = solvable_real(h);
        ASSERT_EQ(v.status == Status::Solvable, real_grid(h)) << c.label() << ' ' << p.str();
        if (v.status == Status::Solvable) {
          ASSERT_TRUE(verify_real(h, *v.real));
        }
      }
    }
}

TEST(TwoAdic, Examples) {
  EXPECT_EQ(solvable_2adic(space(3, 1, 6, 3), 20).status, Status::Insolvable);
  // (2,2) on n=3, m=1 has no 2-adic point: x0 = 0 needs sqrt(2); otherwise
  // x1^2 - x2^2 = 9, x1^2 + 1 = 2 x3^2 forces z2 even and x3^2 = 5 + 2a^2, never a square.
  EXPECT_EQ(solvable_2adic(space(3, 1, 2, 2), 20).status, Status::Insolvable);
  EXPECT_EQ(brute_oracle(space(3, 1, 2, 2), 2, 20).status, Status::Insolvable);
  EXPECT_EQ(solvable_2adic(space(15, 1, 2, 2), 20).status, Status::Solvable);
  EXPECT_EQ(brute_oracle(space(15, 1, 2, 2), 2, 20).status, Status::Solvable);
  auto h = space(15, 1, 30, 15);
  auto c15 = new_curve(15, 1);
  int depth = default_depth(c15, h, 2);
  auto mine = solvable_2adic(h, depth);
  EXPECT_EQ(mine.status, Status::Solvable);
  EXPECT_EQ(brute_oracle(h, 2, depth).status, Status::Solvable);
}

TEST(OddPlace, Examples) {
  EXPECT_EQ(solvable_odd(space(3, 1, 3, 3), 3, 1, 20).status, Status::Insolvable);
  EXPECT_EQ(solvable_odd(space(3, 1, 5, 1), 5, 1, 20).status, Status::Insolvable);
  EXPECT_EQ(solvable_odd(space(15, 1, 2, 2), 113, 1, 20).status, Status::Solvable);
  EXPECT_THROW(solvable_odd(space(3, 1, 1, 1), 2, 1, 20), Error);
  EXPECT_THROW(solvable_odd(space(3, 1, 1, 1), 9, 1, 20), Error);
}

TEST(Brute, Examples) {
  EXPECT_EQ(brute_oracle(space(3, 1, 2, 2), 3, 8).status, Status::Solvable);
  auto r = brute_oracle(space(3, 1, 3, 3), 3, 8);
  EXPECT_EQ(r.status, Status::Insolvable);
  EXPECT_EQ(r.refutation->criterion, "exhaustive");
  for (uint64_t l : {2, 3, 5, 7, 113}) {
    auto v = brute_oracle(space(15, 1, 1, 1), l, 8);
    ASSERT_EQ(v.status, Status::Solvable) << l;
    EXPECT_TRUE(verify_certificate(space(15, 1, 1, 1), *v.point));
  }
}

TEST(Certificates, EverySolvableVerdictVerifiesAndLifts) {
  for (auto [n, m] : std::vector<std::pair<uint64_t, int>>{{15, 1}, {15, 2}, {79, 1}, {195, 4}}) {
    auto c = new_curve(n, m);
    for (auto& p : all_pairs(c)) {
      auto h = build(c, p);
      for (auto& pl : places_to_check(c)) {
        if (pl.real) continue;
        auto v = solve_at(c, h, pl.l);
        ASSERT_NE(v.status, Status::Undecided) << c.label() << ' ' << p.str() << ' ' << pl.l;
        if (v.status != Status::Solvable) continue;
        ASSERT_TRUE(v.point);
        const auto& cert = *v.point;
        ASSERT_TRUE(verify_certificate(h, cert)) << c.label() << ' ' << p.str() << ' ' << pl.l;
        auto y = hensel_lift(h, cert, cert.k + 25);
        ASSERT_TRUE(primitive_at(y, pl.l));
        ASSERT_TRUE(vanishes_mod(h, y, ipow(pl.l, cert.k + 25)));
        BigInt mk = ipow(pl.l, cert.k - cert.minor_val);
        for (int i = 0; i < 4; ++i) ASSERT_EQ(mod_floor(y[i] - cert.point[i], mk), 0);
      }
    }
  }
}

TEST(Certificates, TamperedCertificatesFail) {
  auto c = new_curve(15, 1);
  auto h = build(c, make_pair(c, 2, 2));
  auto v = solve_at(c, h, 113);
  ASSERT_EQ(v.status, Status::Solvable);
  auto cert = *v.point;
  auto bad = cert;
  for (auto& x : bad.point) x *= 113;
  EXPECT_FALSE(verify_certificate(h, bad));
  bad = cert;
  bad.minor_val += 1;
  EXPECT_FALSE(verify_certificate(h, bad));
  bad = cert;
  bad.point[1] += 1;
  EXPECT_FALSE(verify_certificate(h, bad));
}

// The solvable local classes form the image of E(Q_l)/2E(Q_l), a group of
// order 4 at odd l and 8 at l = 2.
TEST(LocalImage, HasKummerOrder) {
  for (auto [n, m] : std::vector<std::pair<uint64_t, int>>{{15, 1}, {15, 2}, {79, 1}, {209, 2}, {3689, 3}}) {
    auto c = new_curve(n, m);
    auto places = places_to_check(c);
    for (auto& pl : places) {
      if (pl.real) continue;
      uint64_t l = pl.l;
      std::map<std::array<int, 4>, Status> cls;
      for (auto& p : all_pairs(c)) {
        auto h = build(c, p);
        auto [v1, u1] = detail::local_class(h.b1, l);
        auto [v2, u2] = detail::local_class(h.b2, l);
        std::array<int, 4> key{v1, u1, v2, u2};
        auto s = solve_at(c, h, l).status;
        auto [it, fresh] = cls.emplace(key, s);
        ASSERT_TRUE(fresh || it->second == s) << "class function at " << l;
      }
      bool bad_place = l == 2 || l == c.q || n % l == 0;
      size_t reachable = l == 2 ? 64 : (bad_place ? 16 : 4);
      if (cls.size() != reachable) continue;  // generators of Q(S,2) do not cover Q_l*/Q_l*^2
      size_t solvable = 0;
      for (auto& [k, s] : cls) solvable += s == Status::Solvable;
      EXPECT_EQ(solvable, l == 2 ? 8u : 4u) << c.label() << " at " << l;
    }
  }
}

TEST(Determinism, SameSeedSameVerdict) {
  auto c = new_curve(3689, 1);
  for (auto& p : all_pairs(c)) {
    if (p.key() % 97 != 0) continue;
    auto h = build(c, p);
    auto a = solve_at(c, h, c.q, 7), b = solve_at(c, h, c.q, 7);
    ASSERT_EQ(a.status, b.status);
    if (a.point) {
      ASSERT_EQ(a.point->point, b.point->point);
    }
  }
}

TEST(Everywhere, Examples) {
  auto c3 = new_curve(3, 1);
  auto t = solvable_everywhere(c3, make_pair(c3, -1, -2));
  EXPECT_EQ(t.status, Status::Solvable);
  auto v = solvable_everywhere(c3, make_pair(c3, 2, 2));
  EXPECT_EQ(v.status, Status::Insolvable);
  EXPECT_EQ(v.verdicts.back().place, Place::prime(2));
  auto h = build(c3, make_pair(c3, 2, 2));
  EXPECT_EQ(solvable_odd(h, 5, 0, default_depth(c3, h, 5)).status, Status::Insolvable);
  auto c15 = new_curve(15, 1);
  EXPECT_EQ(solvable_everywhere(c15, make_pair(c15, 2, 2)).status, Status::Solvable);
}

TEST(Everywhere, TorsionImageAlwaysSolvable) {
  for (uint64_t n : {3, 15, 79, 391, 6545})
    for (int m = 1; m <= 6; ++m) {
      auto c = new_curve(n, m);
      for (auto& p : torsion_image(c)) ASSERT_EQ(solvable_everywhere(c, p).status, Status::Solvable) << p.str();
    }
}
