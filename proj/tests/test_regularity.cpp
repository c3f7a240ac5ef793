#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rieszkit/regularity.hpp"

using namespace rieszkit;
constexpr double kPi = std::numbers::pi;

namespace {
std::vector<double> coordinate(const CurveMesh& m, int c) {
  std::vector<double> v;
  for (const auto& x : m.nodes) v.push_back(x[c]);
  return v;
}
std::vector<CliffordValue<2>> normals(const CurveMesh& m) {
  std::vector<CliffordValue<2>> v;
  for (const auto& n : m.normals) v.push_back(CliffordValue<2>::embed(n));
  return v;
}
}  // namespace

TEST(Regularity, HolderConstantIsZero) {
  auto m = make_ellipse(2, 1, 64);
  auto r = holder_seminorm(m, std::vector<double>(m.size(), 3.0), 0.5);
  EXPECT_EQ(r.value, 0.0);
}

TEST(Regularity, HolderOfCoordinateOnCircle) {
  // [x_1]_{1/2} = sqrt 2, attained at antipodes on the x_1-axis
  auto m = make_ellipse(1, 1, 256);
  auto r = holder_seminorm(m, coordinate(m, 0), 0.5, 0.0);
  EXPECT_NEAR(r.value, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(m.nodes[r.arg_i][0] - m.nodes[r.arg_k][0]), 2.0, 1e-12);
  // brute-force pair scan oracle
  double best = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t k = 0; k < m.size(); ++k)
      if (i != k)
        best = std::max(best, std::abs(m.nodes[i][0] - m.nodes[k][0]) / std::sqrt(distance<2>(m.nodes[i], m.nodes[k])));
  EXPECT_DOUBLE_EQ(r.value, best);
}

TEST(Regularity, HolderLowerBoundMonotoneUnderRefinement) {
  // sampled estimates approach sqrt 2 from below (within 1%)
  double prev = 0.0;
  for (int N : {30, 62, 126, 254}) {
    auto m = make_ellipse(1, 1, N);
    const double v = holder_seminorm(m, coordinate(m, 0), 0.5, 0.0).value;
    EXPECT_LE(v, std::sqrt(2.0) + 1e-12);
    EXPECT_GE(v, prev * 0.99);
    prev = v;
  }
}

TEST(Regularity, HolderSeparationAndErrors) {
  auto m = make_ellipse(2, 1, 128);
  auto r = holder_seminorm(m, coordinate(m, 1), 0.3, 0.5);
  EXPECT_GE(r.arg_separation, 0.5);
  EXPECT_THROW(holder_seminorm(m, coordinate(m, 1), 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(holder_seminorm(m, coordinate(m, 1), 0.5, 100.0), std::invalid_argument);
}

TEST(Regularity, HolderOfSquareNormalsGrows) {
  double prev = 0.0;
  for (int M : {16, 64, 256}) {
    auto m = make_square(2, M);
    const double v = holder_seminorm(m, normals(m), 0.5, 0.0).value;
    const double gap = std::sqrt(2.0) * (2.0 / M);  // distance of the nodes straddling a corner
    EXPECT_GE(v, std::sqrt(2.0) / std::pow(gap, 0.5) - 1e-12);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Regularity, BumpNormalExponentGap) {
  // nu of bump_circle(0.5) is exactly C^{0.5} (amplitude large enough for the cusp to dominate): the 0.5 seminorm settles, the 0.9 one grows
  std::vector<double> h5, h9;
  for (int N : {256, 1024, 4096}) {
    auto m = make_bump_circle(0.5, 1.5, N);
    h5.push_back(holder_seminorm(m, normals(m), 0.5).value);
    h9.push_back(holder_seminorm(m, normals(m), 0.9).value);
  }
  EXPECT_LE(h5[2] / h5[1], 1.1);
  EXPECT_GE(h9[2] / h9[1], 1.2);
  EXPECT_GT(h9[1], h9[0]);
}

TEST(Regularity, BmoConstantAndCircleDecay) {
  auto m = make_ellipse(2, 1, 512);
  const std::vector<double> radii{0.8, 0.4, 0.2, 0.1, 0.05};
  auto c = bmo_sharp(m, std::vector<double>(m.size(), 1.5), radii);
  for (double v : c.profile) EXPECT_NEAR(v, 0.0, 1e-14);
  auto r = bmo_sharp(m, normals(m), radii);
  ASSERT_EQ(r.profile.size(), radii.size());
  for (std::size_t k = 1; k < r.profile.size(); ++k) EXPECT_LT(r.profile[k], r.profile[k - 1]);
  EXPECT_LT(r.profile.back(), 0.1 * r.profile.front());
}

TEST(Regularity, BmoSkipsEmptyBalls) {
  auto m = make_ellipse(1, 1, 64);
  auto r = bmo_sharp(m, coordinate(m, 0), {0.5, 0.01});
  EXPECT_EQ(r.radii.size(), 1u);
  EXPECT_EQ(r.notes.size(), 1u);
}

TEST(Regularity, BmoSquarePlateau) {
  // balls around a corner-straddling node see both edge normals: the profile stays positive
  std::vector<double> levels;
  for (int M : {64, 256}) {
    auto m = make_square(2, M);
    auto r = bmo_sharp(m, normals(m), {0.2, 0.1, 0.05});
    for (double v : r.profile) EXPECT_GT(v, 0.3);
    levels.push_back(r.profile.back());
  }
  EXPECT_NEAR(levels[0], levels[1], 0.1);
}

TEST(Regularity, BmoDominatedByHolder) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> G;
  auto m = make_ellipse(2, 1, 256);
  for (int trial = 0; trial < 3; ++trial) {
    const double a = G(rng), b = G(rng), c = G(rng);
    std::vector<double> f;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double t = 2 * kPi * i / m.size();
      f.push_back(a * std::cos(t) + b * std::sin(2 * t) + c * std::cos(3 * t));
    }
    const double alpha = 0.5;
    const double hol = holder_seminorm(m, f, alpha, 0.0).value;
    for (double r : {0.6, 0.3, 0.15}) {
      auto b1 = bmo_sharp(m, f, {r}, 1.0);
      EXPECT_LE(b1.value, 2 * hol * std::pow(r, alpha));
    }
  }
}

TEST(Regularity, BesovConstantAndClosedForm) {
  auto m = make_ellipse(1, 1, 256);
  auto c = besov_seminorm(m, std::vector<double>(m.size(), 2.0), 2.0, 0.5);
  EXPECT_EQ(c.seminorm_part, 0.0);
  EXPECT_NEAR(c.lp_part, 2.0 * std::sqrt(2 * kPi), 1e-12);

  // f = cos theta, p = 2, s = 1/2: the integrand is sin^2((t+u)/2) and the
  // double integral is 2 pi^2; the excluded diagonal costs a relative 1/N
  auto big = make_ellipse(1, 1, 8192);
  auto r = besov_seminorm(big, coordinate(big, 0), 2.0, 0.5);
  EXPECT_NEAR(r.seminorm_part / (kPi * std::sqrt(2.0)), 1.0, 1e-4);
  EXPECT_NEAR(r.lp_part, std::sqrt(kPi), 1e-12);
  EXPECT_TRUE(r.warning);  // sp = 1 = n - 1 sits on the edge of the embedding window
}

TEST(Regularity, BesovMonotoneInSmoothnessAndWindowWarning) {
  // diameter-1 circle: |x - y| <= 1 so the weight grows with s
  auto m = make_ellipse(0.5, 0.5, 128);
  auto f = coordinate(m, 1);
  double prev = 0.0;
  for (double s : {0.2, 0.4, 0.6, 0.8}) {
    const double v = besov_seminorm(m, f, 2.0, s).seminorm_part;
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_TRUE(besov_seminorm(m, f, 1.0, 0.5).warning);  // sp = 0.5 <= n - 1
  EXPECT_THROW(besov_seminorm(m, f, 0.5, 0.5), std::invalid_argument);
}

TEST(Regularity, HolderBesovEmbeddingDirection) {
  // sp > n - 1 on a diameter-1 mesh: Hölder-(s - 1/p) seminorm <= C Besov
  auto m = make_ellipse(0.5, 0.5, 256);
  std::vector<double> ratios;
  for (int k : {1, 2, 3}) {
    std::vector<double> f;
    for (std::size_t i = 0; i < m.size(); ++i) f.push_back(std::sin(k * 2 * kPi * i / m.size()));
    const double b = besov_seminorm(m, f, 4.0, 0.75).value;
    const double h = holder_seminorm(m, f, 0.75 - 0.25, 0.0).value;
    ratios.push_back(h / b);
  }
  for (double r : ratios) EXPECT_LT(r, 10.0);
}

TEST(Regularity, ClassifierVerdicts) {
  StudyConfig e;
  e.family.family = Family::Ellipse;
  e.family.a = 2;
  e.family.b = 1;
  e.alpha = 0.5;
  EXPECT_EQ(refinement_study(e).verdict, "bounded");
  StudyConfig s;
  s.family.family = Family::Square;
  s.family.side = 2;
  s.alpha = 0.5;
  auto rs = refinement_study(s);
  EXPECT_EQ(rs.verdict, "divergent");
  EXPECT_EQ(rs.levels.size(), 3u);
  EXPECT_EQ(rs.ratios.size(), 2u);
  StudyConfig few = e;
  few.levels = {64, 128};
  EXPECT_THROW(refinement_study(few), std::invalid_argument);
}

TEST(Regularity, VerdictsStableUnderJitter) {
  struct Case {
    Family f;
    double alpha;
    const char* verdict;
  } cases[] = {{Family::Ellipse, 0.4, "bounded"},
               {Family::BumpCircle, 0.4, "bounded"},
               {Family::Square, 0.5, "divergent"},
               {Family::BumpCircle, 0.9, "divergent"}};
  for (const auto& c : cases) {
    StudyConfig sc;
    sc.family.family = c.f;
    sc.family.a = 2;
    sc.family.b = 1;
    sc.family.side = 2;
    sc.family.alpha = 0.5;
    sc.family.A = 1.5;
    sc.alpha = c.alpha;
    sc.jitter = 0.1;
    sc.jitter_seed = 17;
    EXPECT_EQ(refinement_study(sc).verdict, c.verdict) << family_name(c.f) << " " << c.alpha;
  }
  StudyConfig bad;
  bad.jitter = 0.5;
  EXPECT_THROW(refinement_study(bad), std::invalid_argument);
}

TEST(Regularity, ClassifyRatios) {
  EXPECT_EQ(classify_ratios({1.0, 1.05}, 1.1, 1.5), "bounded");
  EXPECT_EQ(classify_ratios({1.6, 2.0}, 1.1, 1.5), "divergent");
  EXPECT_EQ(classify_ratios({1.0, 2.0}, 1.1, 1.5), "inconclusive");
}

TEST(Regularity, WeightedGradient) {
  // linear u: rho^{1-alpha} |a| peaks at the deepest probe
  std::vector<Point<2>> pts{{0.0, 0.1}, {0.0, 0.4}, {0.0, 0.9}};
  std::vector<double> rho{0.1, 0.4, 0.9}, u;
  std::vector<Point<2>> grad(3, Point<2>{3.0, 4.0});
  for (const auto& p : pts) u.push_back(3 * p[0] + 4 * p[1]);
  auto r = weighted_gradient_sup<2>(pts, u, grad, rho, 0.5);
  EXPECT_EQ(r.arg, 2u);
  EXPECT_NEAR(r.weighted_sup, 5.0 * std::sqrt(0.9), 1e-14);
}

TEST(Regularity, WeightedGradientOfCauchyExtensionOfOne) {
  auto m = make_ellipse(2, 1, 512);
  std::vector<Point<2>> pts;
  for (std::size_t i = 0; i < m.size(); i += 64)
    for (double t : {0.3, 0.15}) pts.push_back({m.nodes[i][0] - t * m.normals[i][0], m.nodes[i][1] - t * m.normals[i][1]});
  auto one = CliffordField<2>::scalar(ScalarField<2>::constant(m, 1.0));
  std::vector<double> u, rho;
  std::vector<Point<2>> grad;
  for (const auto& z : pts) {
    const double h = 1e-3;
    Point<2> g;
    for (int c = 0; c < 2; ++c) {
      auto zp = z, zm = z;
      zp[c] += h;
      zm[c] -= h;
      auto v = cauchy_domain(m, one, {zp, zm});
      g[c] = (v[0].scalar_part() - v[1].scalar_part()) / (2 * h);
    }
    grad.push_back(g);
    u.push_back(cauchy_domain(m, one, {z})[0].scalar_part());
    rho.push_back(m.nearest(z).second);
  }
  EXPECT_LE(weighted_gradient_sup<2>(pts, u, grad, rho, 0.5).weighted_sup, 1e-6);
}

TEST(Regularity, WeightedGradientOfRieszExtensionStable) {
  std::vector<double> sups;
  for (int N : {256, 1024}) {
    auto m = make_ellipse(2, 1, N);
    std::vector<Point<2>> pts;
    for (int i = 0; i < 8; ++i) {
      const auto& x = m.nodes[i * N / 8];
      const auto& nu = m.normals[i * N / 8];
      for (double t : {0.2, 0.1}) pts.push_back({x[0] - t * nu[0], x[1] - t * nu[1]});
    }
    auto ev = boundary_to_domain(m, KernelSpec<2>::riesz(1), ScalarField<2>::constant(m, 1.0), pts, 0.5);
    auto r = weighted_gradient_sup<2>(pts, ev, 0.5);
    EXPECT_TRUE(std::isfinite(r.weighted_sup));
    EXPECT_LE(r.ratio, 10.0);
    sups.push_back(r.weighted_sup);
  }
  EXPECT_NEAR(sups[1] / sups[0], 1.0, 1e-3);
}
