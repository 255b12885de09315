#include <gtest/gtest.h>

#include "heron/fixtures.hpp"
#include "heron/pointsearch.hpp"

using namespace heron;

namespace {

const std::string kPoints = std::string(HERON_DATA_DIR) + "/points_v1.json";

SelmerGroup selmer(const HeronCurve& c) {
  SelmerConfig cfg;
  cfg.workers = 4;
  return compute_selmer(c, cfg);
}

bool contains(const std::vector<CurvePoint>& pts, const CurvePoint& p) {
  return std::find(pts.begin(), pts.end(), p) != pts.end();
}

}  // namespace

TEST(Search, TorsionOnly) {
  auto c = new_curve(3, 1);
  auto pts = search_points(c, 100, 10);
  EXPECT_TRUE(contains(pts, {BigRational(0), BigRational(0)}));
  EXPECT_TRUE(contains(pts, {BigRational(18), BigRational(0)}));
  EXPECT_TRUE(contains(pts, {BigRational(-2), BigRational(0)}));
  for (uint64_t n : {3, 15, 79, 3689}) {
    auto d = new_curve(n, 2);
    auto tiny = search_points(d, 1, 1);
    EXPECT_EQ(tiny.size(), 4u);
    for (auto& t : two_torsion(d)) EXPECT_TRUE(contains(tiny, t));
  }
}

TEST(Search, AllOnCurveAndWithinBounds) {
  auto c = new_curve(15, 2);
  for (auto& p : search_points(c, 5000, 40, 3)) {
    ASSERT_TRUE(on_curve(c, p));
    if (p.is_infinity() || *p.y == 0) continue;
    auto den = denominator(*p.x);
    auto v = exact_sqrt(den);
    ASSERT_TRUE(v);
    ASSERT_LE(*v, 40);
    ASSERT_LE(abs(numerator(*p.x)), 5000);
  }
}

TEST(Search, WorkerCountDoesNotMatter) {
  auto c = new_curve(79, 1);
  EXPECT_EQ(search_points(c, 3000, 30, 1), search_points(c, 3000, 30, 7));
}

TEST(Search, FindsRecordedPoints) {
  auto recs = load_points(kPoints);
  ASSERT_FALSE(recs.empty());
  for (auto& r : recs) {
    auto c = new_curve(r.n, r.m);
    ASSERT_TRUE(on_curve(c, r.point));
    auto pts = search_points(c, 10000, 100, 8);
    EXPECT_TRUE(contains(pts, r.point)) << c.label();
    EXPECT_EQ(beta(c, r.point), make_pair(c, r.image.first, r.image.second));
  }
}

TEST(Search, RecordedPointFileRejectsGarbage) {
  EXPECT_THROW(load_points("/nonexistent/points.json"), Error);
}

TEST(DescentImage, TorsionImageExactly) {
  auto c = new_curve(3, 1);
  auto g = selmer(c);
  auto d = verify_descent_image(c, two_torsion(c), g);
  EXPECT_EQ(d.images, torsion_image(c));
  EXPECT_EQ(d.dimension, 2);
  EXPECT_EQ(d.rank_lower_bound, 0);
  auto empty = verify_descent_image(c, {}, g);
  EXPECT_TRUE(empty.images.empty());
  EXPECT_EQ(empty.rank_lower_bound, 0);
}

TEST(DescentImage, FoundPointInNontrivialCoset) {
  auto c = new_curve(15, 1);
  auto g = selmer(c);
  CurvePoint p{BigRational(-7744, 9409), BigRational(19072592, 912673)};
  auto d = verify_descent_image(c, {p}, g);
  auto coset = torsion_image(c);
  for (auto& t : coset) t = pair_mul(t, make_pair(c, 2, 2));
  EXPECT_NE(std::find(coset.begin(), coset.end(), d.images[0]), coset.end());
  EXPECT_EQ(d.rank_lower_bound, 1);
  EXPECT_EQ(d.rank_lower_bound, g.rank_upper_bound);
}

TEST(DescentImage, OutsideSelmerIsAnError) {
  auto c = new_curve(15, 1);
  SelmerGroup fake;
  fake.members = torsion_image(c);
  CurvePoint p{BigRational(-7744, 9409), BigRational(19072592, 912673)};
  try {
    verify_descent_image(c, {p}, fake);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ImageOutsideSelmer);
  }
}
