#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "convert.hpp"
#include "msx/regions.hpp"
#include "msx/scan.hpp"

using msx::FamilyPoint;
using msx::Verdict;

namespace {

bool near(const FamilyPoint& a, const FamilyPoint& b, double tol) {
  return std::abs(a.alpha - b.alpha) < tol && std::abs(a.beta - b.beta) < tol &&
         std::abs(a.gamma - b.gamma) < tol;
}

bool oracle_state(const FamilyPoint& p) {
  return oracle::min_eig(oracle::family(p.alpha, p.beta, p.gamma)) >= -1e-12;
}

}  // namespace

TEST(Curves, Examples) {
  EXPECT_NEAR(msx::l_a(0.0), -2.0 / 9.0, 1e-15);
  EXPECT_NEAR(msx::l_b(0.0), -2.0 / 9.0, 1e-15);
  EXPECT_NEAR(msx::l_a(1.0), 0.0, 1e-15);
  EXPECT_NEAR(msx::l_b(1.0), 0.0, 1e-15);
  EXPECT_NEAR(msx::l_a(0.5), -1.0 / 9.0, 1e-15);
  EXPECT_GT(msx::l_b(0.5), msx::l_a(0.5));
  EXPECT_THROW(msx::l_b(1.2), std::domain_error);
}

TEST(Curves, LbIsThePptBoundaryOnThePlane) {
  for (double g = 0.05; g < 1.0; g += 0.05) {
    const double b = msx::l_b(g);
    const double a = msx::boundary_plane_alpha(b, g);
    EXPECT_NEAR(oracle::pt_min(a, b, g), 0.0, 1e-12) << g;
    const double inside = b - 1e-4;
    EXPECT_GT(oracle::pt_min(msx::boundary_plane_alpha(inside, g), inside, g), 0.0) << g;
  }
}

TEST(BoundaryPlane, Examples) {
  const double g = 0.5;
  EXPECT_EQ(msx::boundary_plane_region(g, 0.5 * (msx::l_a(g) + msx::l_b(g))), Verdict::BoundEntangled);
  EXPECT_EQ(msx::boundary_plane_region(2.0 / 7.0, msx::l_a(2.0 / 7.0) - 0.02), Verdict::Separable);
  const FamilyPoint h = msx::horodecki_point(msx::horodecki_b(0.5));
  EXPECT_EQ(msx::boundary_plane_region(h), Verdict::NptEntangled);
  EXPECT_THROW(msx::boundary_plane_region({0.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(msx::boundary_plane_region(0.5, 0.5), std::invalid_argument);
}

TEST(BoundaryPlane, MirroredHalf) {
  // (gamma, beta) = (-0.5, l_a(0.5) - 0.02) sits in the swap image of the triangle
  const FamilyPoint p = msx::swap_mirror(
      {msx::boundary_plane_alpha(msx::l_a(0.5) - 0.02, 0.5), msx::l_a(0.5) - 0.02, 0.5});
  EXPECT_EQ(msx::boundary_plane_region(p, false), Verdict::Undetermined);
  EXPECT_EQ(msx::boundary_plane_region(p, true), Verdict::Separable);
}

TEST(Polygon, TrapezoidMatchesClosedForm) {
  const std::vector<FamilyPoint> expected{
      {2.0 / 9.0, -2.0 / 9.0, 0}, {1.0 / 3.0, 2.0 / 3.0, 0}, {-1.0 / 12.0, 1.0 / 3.0, 0}, {-1.0 / 6.0, -1.0 / 3.0, 0}};
  const auto got = msx::gamma_zero_trapezoid();
  ASSERT_EQ(got.size(), 4u);
  for (const auto& e : expected)
    EXPECT_TRUE(std::any_of(got.begin(), got.end(), [&](const FamilyPoint& v) { return near(v, e, 1e-8); }))
        << e.alpha << ", " << e.beta;
}

TEST(Polygon, TrapezoidIsTheGammaZeroPptSet) {
  // brute-force: PPT states on a grid are inside the hull of the trapezoid and vice versa
  const auto poly = msx::build_polygon();
  int checked = 0;
  for (double a = -0.3; a <= 0.45; a += 0.0125)
    for (double b = -0.45; b <= 0.8; b += 0.0125) {
      const FamilyPoint p{a, b, 0.0};
      if (!oracle_state(p)) continue;
      const double pt = oracle::pt_min(a, b, 0.0);
      if (std::abs(pt) < 1e-6) continue;
      ++checked;
      EXPECT_EQ(pt > 0.0, poly.contains(p)) << a << ", " << b;
    }
  EXPECT_GT(checked, 500);
}

TEST(Polygon, TriangleVertices) {
  const auto tri = msx::boundary_triangle();
  ASSERT_EQ(tri.size(), 3u);
  for (const FamilyPoint& e : {FamilyPoint{0.0, 0.0, 1.0}, FamilyPoint{2.0 / 9.0, -2.0 / 9.0, 0.0},
                               FamilyPoint{-1.0 / 6.0, -1.0 / 3.0, 0.0}})
    EXPECT_TRUE(std::any_of(tri.begin(), tri.end(), [&](const FamilyPoint& v) { return near(v, e, 1e-12); }));
  for (const auto& v : msx::boundary_triangle(true)) {
    EXPECT_NEAR(msx::boundary_plane_offset(v), 0.0, 1e-14);
    EXPECT_GE(oracle::pt_min(v.alpha, v.beta, v.gamma), -1e-12);
  }
}

TEST(Polygon, Examples) {
  const auto poly = msx::build_polygon();
  EXPECT_TRUE(poly.contains({0, 0, 0}));
  EXPECT_TRUE(poly.contains({0, 0, 1}));
  EXPECT_FALSE(poly.contains({1, 0, 0}));
  for (const auto& v : poly.vertices()) {
    EXPECT_FALSE(v.sources.empty());
    EXPECT_TRUE(oracle_state(v.point));
    EXPECT_GE(oracle::pt_min(v.point.alpha, v.point.beta, v.point.gamma), -1e-10);
    EXPECT_GE(v.point.gamma, 0.0);
  }
  const auto cert = poly.certificate({0, 0, 0});
  ASSERT_TRUE(cert.has_value());
  FamilyPoint sum{0, 0, 0};
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    const auto& v = poly.vertices()[cert->vertices[k]].point;
    const double w = cert->weights[k];
    EXPECT_GE(w, -msx::kMembershipTol);
    total += w;
    sum.alpha += w * v.alpha;
    sum.beta += w * v.beta;
    sum.gamma += w * v.gamma;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_TRUE(near(sum, {0, 0, 0}, 1e-12));
  EXPECT_THROW(msx::SeparablePolygon({}), std::invalid_argument);
}

TEST(Polygon, InsideIsPpt) {
  for (bool mirrored : {false, true}) {
    const auto poly = msx::build_polygon(mirrored);
    std::mt19937_64 rng(31);
    std::exponential_distribution<double> ex(1.0);
    const auto& vs = poly.vertices();
    for (int i = 0; i < 10000; ++i) {
      std::vector<double> w(vs.size());
      double total = 0.0;
      for (auto& x : w) total += (x = ex(rng));
      FamilyPoint p{0, 0, 0};
      for (std::size_t k = 0; k < vs.size(); ++k) {
        p.alpha += w[k] / total * vs[k].point.alpha;
        p.beta += w[k] / total * vs[k].point.beta;
        p.gamma += w[k] / total * vs[k].point.gamma;
      }
      ASSERT_TRUE(poly.contains(p));
      ASSERT_GE(oracle::pt_min(p.alpha, p.beta, p.gamma), -1e-8);
    }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(msx::classify({0, 0, 0}).verdict, Verdict::Separable);
  EXPECT_EQ(msx::classify({1, 0, 0}).verdict, Verdict::NptEntangled);
  EXPECT_EQ(msx::classify({2, 0, 0}).verdict, Verdict::NotAState);
  const auto c = msx::classify(msx::horodecki_point(1.5));
  EXPECT_EQ(c.verdict, Verdict::BoundEntangled);
  ASSERT_TRUE(c.evidence.witness_value.has_value());
  EXPECT_LT(*c.evidence.witness_value, -msx::kWitnessTol);
  ASSERT_TRUE(c.evidence.pt_min_eigenvalue.has_value());
  EXPECT_GE(*c.evidence.pt_min_eigenvalue, -1e-10);
  const auto sep = msx::classify({0, 0, 0});
  ASSERT_TRUE(sep.evidence.certificate.has_value());
  EXPECT_TRUE(sep.evidence.polygon_member.value_or(false));
  EXPECT_EQ(msx::classify(msx::horodecki_point(3.5)).verdict, Verdict::BoundEntangled);
}

TEST(Classify, StateInput) {
  const auto& cl = msx::default_classifier();
  const auto fam = cl.classify_state(msx::family_state(msx::horodecki_point(1.5)));
  EXPECT_EQ(fam.verdict, Verdict::BoundEntangled);
  EXPECT_EQ(cl.classify_state(msx::family_state({0, 0, 0})).verdict, Verdict::Separable);
  EXPECT_EQ(cl.classify_state(msx::family_state({1, 0, 0})).verdict, Verdict::NptEntangled);
  // a product state outside the family: PPT, no witness fires, no polygon
  const auto prod = cl.classify_state(msx::random_product_state(4));
  EXPECT_EQ(prod.verdict, Verdict::Undetermined);
  EXPECT_FALSE(prod.evidence.polygon_member.has_value());
  EXPECT_THROW(cl.classify_state(msx::ComplexMatrix(4)), std::invalid_argument);
}

TEST(Classify, WitnessesAgreeWithTheAnalyticRegion) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> ug(0.0, 1.0), ut(0.0, 1.0);
  int n = 0;
  while (n < 1000) {
    const double g = ug(rng);
    const double lo = msx::l_a(g), hi = msx::l_b(g);
    if (hi - lo < 2.5e-6) continue;
    const double b = lo + 1e-6 + ut(rng) * (hi - lo - 2e-6);
    const FamilyPoint p{msx::boundary_plane_alpha(b, g), b, g};
    ASSERT_EQ(msx::boundary_plane_region(p), Verdict::BoundEntangled);
    ASSERT_EQ(msx::classify(p).verdict, Verdict::BoundEntangled) << g << ", " << b;
    ASSERT_EQ(msx::classify(msx::swap_mirror(p)).verdict, Verdict::BoundEntangled) << g << ", " << b;
    ++n;
  }
}

TEST(Classify, HorodeckiLineSegments) {
  const msx::Classifier& cl = msx::default_classifier({.mirrored_polygon = true});
  std::vector<std::pair<Verdict, double>> runs;  // verdict, first gamma
  for (int k = 0; k <= 5000; ++k) {
    const double b = k / 1000.0;
    const Verdict v = cl.classify(msx::horodecki_point(b)).verdict;
    if (runs.empty() || runs.back().first != v) runs.emplace_back(v, msx::horodecki_gamma(b));
  }
  const std::vector<Verdict> order{Verdict::NptEntangled, Verdict::BoundEntangled, Verdict::Separable,
                                   Verdict::BoundEntangled, Verdict::NptEntangled};
  ASSERT_EQ(runs.size(), order.size());
  for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(runs[i].first, order[i]) << i;
  // gamma decreases along b; each run starts at the far side of a boundary
  EXPECT_NEAR(runs[1].second, 3.0 / 7.0, 1e-3);
  EXPECT_NEAR(runs[2].second, 1.0 / 7.0, 1e-3);
  EXPECT_NEAR(runs[3].second, -1.0 / 7.0, 1e-3);
  EXPECT_NEAR(runs[4].second, -3.0 / 7.0, 1e-3);
}

TEST(Classify, DefaultPolygonLeavesTheMirroredSegmentOpen) {
  EXPECT_EQ(msx::classify(msx::horodecki_point(2.5)).verdict, Verdict::Separable);
  EXPECT_EQ(msx::classify(msx::horodecki_point(2.9)).verdict, Verdict::Undetermined);
}

TEST(Classify, SoundnessOnRandomPoints) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> a(-0.25, 1.0), b(-0.5, 1.0), g(-1.0, 1.0);
  for (int i = 0; i < 3000; ++i) {
    const FamilyPoint p{a(rng), b(rng), g(rng)};
    const auto c = msx::classify(p);
    const bool state = oracle_state(p);
    if (c.verdict == Verdict::NotAState) {
      EXPECT_FALSE(oracle::min_eig(oracle::family(p.alpha, p.beta, p.gamma)) > 1e-10);
      continue;
    }
    ASSERT_TRUE(state);
    const double pt = oracle::pt_min(p.alpha, p.beta, p.gamma);
    switch (c.verdict) {
      case Verdict::NptEntangled: EXPECT_LT(pt, 0.0); break;
      case Verdict::BoundEntangled:
      case Verdict::Separable: EXPECT_GE(pt, -1e-8); break;
      default: break;
    }
    if (c.verdict == Verdict::Separable) {
      for (const auto& w : msx::default_classifier().battery()) EXPECT_GE(w.functional(p), -1e-9) << w.name;
    }
  }
}

TEST(Scan, SinglePointGrid) {
  const auto grid = msx::parse_cartesian_grid("0,0,0");
  EXPECT_EQ(grid.size(), 1u);
  const auto r = msx::scan(grid, msx::default_classifier());
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].result.verdict, Verdict::Separable);
}

TEST(Scan, AxisParsing) {
  const auto ax = msx::parse_axis("0:1:0.25");
  EXPECT_EQ(ax.count(), 5u);
  EXPECT_DOUBLE_EQ(ax.value(4), 1.0);
  EXPECT_EQ(msx::parse_axis("1/3").count(), 1u);
  EXPECT_NEAR(msx::parse_axis("1/3").start, 1.0 / 3.0, 1e-16);
  EXPECT_THROW(msx::parse_axis("1:0:0.1").count(), std::invalid_argument);
  EXPECT_THROW(msx::parse_axis("0:1:0").count(), std::invalid_argument);
  EXPECT_THROW(msx::parse_axis("x"), std::invalid_argument);
  EXPECT_THROW(msx::parse_cartesian_grid("0:1:0.1,0"), std::invalid_argument);
  msx::GridSpec empty;
  empty.alpha = {1.0, 0.0, 0.1};
  EXPECT_THROW(empty.points(), std::invalid_argument);
}

TEST(Scan, DeterministicAcrossThreadCounts) {
  const auto grid = msx::parse_boundary_plane_grid("0:1:0.02,-0.34:0.1:0.02");
  std::string reference;
  for (unsigned threads : {1u, 2u, 7u}) {
    std::ostringstream out;
    msx::write_scan_csv(out, msx::scan(grid, msx::default_classifier(), threads));
    if (reference.empty()) reference = out.str();
    EXPECT_EQ(out.str(), reference) << threads;
  }
  EXPECT_EQ(reference.substr(0, msx::kScanCsvHeader.size()), msx::kScanCsvHeader);
}

TEST(Scan, BoundaryPlaneLayout) {
  const auto grid = msx::parse_boundary_plane_grid("0:1:0.01,-1/3:0.1:0.01");
  const auto r = msx::scan(grid, msx::default_classifier(), 4);
  for (Verdict v : {Verdict::Separable, Verdict::BoundEntangled, Verdict::NptEntangled})
    EXPECT_GT(r.counts.count(v) ? r.counts.at(v) : 0u, 0u) << msx::to_string(v);
  for (const auto& row : r.rows) {
    if (row.result.verdict != Verdict::Separable) continue;
    EXPECT_LE(row.point.beta, msx::l_a(row.point.gamma) + 1e-12);
  }
  const auto summary = msx::scan_summary(r, msx::default_classifier());
  EXPECT_EQ(summary.at("points"), r.rows.size());
  EXPECT_TRUE(summary.contains("polygon_vertices"));
}

TEST(Scan, GammaZeroSliceHasNoBoundEntanglement) {
  const auto grid = msx::parse_cartesian_grid("-0.25:1:0.025,-0.5:1:0.025,0");
  const auto r = msx::scan(grid, msx::default_classifier(), 2);
  EXPECT_EQ(r.counts.count(Verdict::BoundEntangled), 0u);
  EXPECT_EQ(r.counts.count(Verdict::Undetermined), 0u);
}

TEST(Scan, NumberFormat) {
  EXPECT_EQ(msx::format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(msx::format_number(0.0), "0");
  EXPECT_DOUBLE_EQ(msx::round12(1.0 / 3.0), 0.333333333333);
}
