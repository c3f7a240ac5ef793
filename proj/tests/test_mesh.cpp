#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rieszkit/mesh.hpp"

using namespace rieszkit;
constexpr double kPi = std::numbers::pi;

TEST(Mesh, CircleFourNodes) {
  auto m = make_ellipse(1, 1, 4);
  const Point<2> want[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(m.nodes[i], want[i]);
    EXPECT_EQ(m.normals[i], want[i]);
    EXPECT_NEAR(m.weights[i], kPi / 2, 1e-15);
  }
}

TEST(Mesh, CircleMeasure) {
  for (int N : {8, 33, 1000}) EXPECT_NEAR(make_ellipse(1, 1, N).total_measure(), 2 * kPi, 1e-12);
}

TEST(Mesh, EllipsePerimeterMatchesAdaptiveArcLength) {
  auto m = make_ellipse(2, 1, 4096);
  const double oracle = oracle::adaptive_simpson(
      [](double t) { return std::hypot(2 * std::sin(t), std::cos(t)); }, 0.0, 2 * kPi, 1e-14);
  EXPECT_NEAR(m.total_measure() / oracle, 1.0, 1e-10);
}

TEST(Mesh, SpectralConvergenceOfCurveQuadrature) {
  const double exact = oracle::adaptive_simpson(
      [](double t) { return std::hypot(2 * std::sin(t), std::cos(t)); }, 0.0, 2 * kPi, 1e-14);
  // geometric decay: sqrt(1 + 3 sin^2 t) is analytic in |Im t| < asinh(1/sqrt 3)
  const double strip = std::asinh(1 / std::sqrt(3.0));
  for (int N : {8, 16, 32}) {
    const double err = std::abs(make_ellipse(2, 1, N).total_measure() - exact);
    EXPECT_LE(err, 10.0 * std::exp(-0.98 * strip * N) + 1e-13) << "N=" << N;
  }
  // int x_1 dsigma = 0 by symmetry; int x_1^2 dsigma also spectrally accurate
  auto m = make_ellipse(2, 1, 64);
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) s += m.nodes[i][0] * m.weights[i];
  EXPECT_NEAR(s, 0.0, 1e-13);
}

TEST(Mesh, EllipseInvariants) {
  auto m = make_ellipse(2, 1, 257);
  EXPECT_NO_THROW(m.validate());
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_NEAR(norm<2>(m.normals[i]), 1.0, 1e-12);
    EXPECT_GT(dot<2>(m.normals[i], m.nodes[i]), 0.0);  // outward for a convex curve around 0
    EXPECT_GT(m.weights[i], 0.0);
  }
}

TEST(Mesh, BadArguments) {
  EXPECT_THROW(make_ellipse(0, 1, 16), std::invalid_argument);
  EXPECT_THROW(make_ellipse(1, -1, 16), std::invalid_argument);
  EXPECT_THROW(make_ellipse(1, 1, 3), std::invalid_argument);
  EXPECT_THROW(make_sphere(1, 2, 8), std::invalid_argument);
  EXPECT_THROW(make_sphere(0, 8, 8), std::invalid_argument);
  EXPECT_THROW(make_square(1, 3), std::invalid_argument);
  EXPECT_THROW(make_bump_circle(1.2, 0.1, 64), std::invalid_argument);
  EXPECT_THROW(make_bump_circle(0.5, 5.0, 64), std::invalid_argument);
  EXPECT_THROW(make_bump_circle(0.5, -0.9, 64), std::invalid_argument);
}

TEST(Mesh, SphereArea) {
  auto s1 = make_sphere(1, 64, 128);
  EXPECT_NEAR(s1.total_measure() / (4 * kPi), 1.0, 1e-3);
  auto s2 = make_sphere(2, 64, 128);
  EXPECT_NEAR(s2.total_measure() / (16 * kPi), 1.0, 1e-3);
  for (std::size_t i = 0; i < s2.size(); ++i) {
    EXPECT_NEAR(dot<3>(s2.normals[i], s2.nodes[i]), 2.0, 1e-12);
    EXPECT_NEAR(norm<3>(s2.normals[i]), 1.0, 1e-12);
  }
}

TEST(Mesh, Square) {
  auto m = make_square(4, 13);
  EXPECT_DOUBLE_EQ(m.total_measure(), 16.0);
  EXPECT_EQ(m.size(), 52u);
  // corners are never nodes
  for (const auto& x : m.nodes) EXPECT_FALSE(std::abs(x[0]) == 2.0 && std::abs(x[1]) == 2.0);
  // edges in order bottom, right, top, left
  const auto& bottom = m.normals[0];
  const auto& left = m.normals[m.size() - 1];
  EXPECT_DOUBLE_EQ(dot<2>(bottom, left), 0.0);
  // nearest pair straddling the bottom-right corner
  const auto& a = m.normals[12];
  const auto& b = m.normals[13];
  EXPECT_NEAR(norm<2>(sub<2>(a, b)), std::sqrt(2.0), 1e-15);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_GT(dot<2>(m.normals[i], m.nodes[i]), 0.0);
}

TEST(Mesh, BumpCircle) {
  auto c = make_ellipse(1, 1, 128);
  auto z = make_bump_circle(0.5, 0.0, 128);
  EXPECT_EQ(z.nodes, c.nodes);
  EXPECT_EQ(z.normals, c.normals);
  EXPECT_EQ(z.weights, c.weights);

  auto m = make_bump_circle(0.5, 0.1, 128);
  // node 64 sits at theta = pi where r = 1 and r' = 0: normal radial
  EXPECT_NEAR(m.nodes[64][0], -1.0, 1e-15);
  EXPECT_NEAR(m.nodes[64][1], 0.0, 1e-15);
  EXPECT_NEAR(m.normals[64][0], -1.0, 1e-15);
  EXPECT_NEAR(m.normals[64][1], 0.0, 1e-15);
  EXPECT_NO_THROW(m.validate());
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(norm<2>(m.normals[i]), 1.0, 1e-12);
  // outside the bump support the mesh is the unit circle
  EXPECT_EQ(m.nodes[0], c.nodes[0]);
}

TEST(Mesh, ExteriorFlipsNormalsOnly) {
  auto m = make_ellipse(2, 1, 64);
  auto e = m.exterior();
  EXPECT_FALSE(e.bounded);
  EXPECT_EQ(e.nodes, m.nodes);
  EXPECT_EQ(e.weights, m.weights);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int k = 0; k < 2; ++k) EXPECT_EQ(e.normals[i][k], -m.normals[i][k]);
}

TEST(Mesh, DomainSide) {
  auto m = make_ellipse(2, 1, 256);
  EXPECT_NEAR(winding_number(m, {0.3, 0.2}), 1.0, 1e-6);
  EXPECT_NEAR(winding_number(m, {3.0, 0.0}), 0.0, 1e-6);
  EXPECT_TRUE(on_domain_side<2>(m, {0.3, 0.2}));
  EXPECT_FALSE(on_domain_side<2>(m.exterior(), {0.3, 0.2}));
  auto s = make_sphere(1, 32, 64);
  EXPECT_NEAR(solid_angle_indicator(s, {0.1, 0.2, 0.0}), 1.0, 1e-3);
  EXPECT_NEAR(solid_angle_indicator(s, {0.0, 0.0, 2.0}), 0.0, 1e-3);
}

TEST(Mesh, ProbeLadderOnCircleIsExact) {
  auto m = make_ellipse(1, 1, 512);
  for (std::size_t i : {0u, 17u, 300u}) {
    auto p = probe_ladder(m, i, 0.1, 0.5, 6, 1.0);
    ASSERT_EQ(p.points.size(), 6u);
    for (std::size_t k = 0; k < 6; ++k) {
      EXPECT_NEAR(p.rho[k], 0.1 * std::pow(0.5, k), 1e-14);
      EXPECT_LT(distance<2>(m.nodes[i], p.points[k]), 2.0 * p.rho[k]);
    }
  }
}

TEST(Mesh, ProbeRhoAgainstDenseDistance) {
  auto m = make_ellipse(2, 1, 512);
  auto dense = make_ellipse(2, 1, 1 << 16);
  for (std::size_t i : {0u, 64u, 128u, 200u}) {
    auto p = probe_ladder(m, i, 0.2, 0.5, 5, 1.0);
    for (std::size_t k = 0; k < p.points.size(); ++k) {
      const double d = dense.nearest(p.points[k]).second;
      EXPECT_LE(std::abs(p.rho[k] - d), m.spacing);
    }
  }
}

TEST(Mesh, ProbeLadderErrors) {
  auto m = make_ellipse(2, 1, 256);
  EXPECT_THROW(probe_ladder(m, 0, 1.5, 0.5, 4, 1.0), std::invalid_argument);  // beyond the local reach
  EXPECT_THROW(probe_ladder(m, 999, 0.1, 0.5, 4, 1.0), std::invalid_argument);
  EXPECT_THROW(probe_ladder(m, 0, 0.1, 1.5, 4, 1.0), std::invalid_argument);
}

TEST(Mesh, SaveLoadRoundTripIsBitExact) {
  auto m = make_ellipse(2, 1, 100);
  std::stringstream ss;
  save_mesh(m, ss);
  auto back = load_mesh<2>(ss);
  EXPECT_EQ(back.nodes, m.nodes);
  EXPECT_EQ(back.normals, m.normals);
  EXPECT_EQ(back.weights, m.weights);
  EXPECT_EQ(back.label, m.label);
  EXPECT_TRUE(back.bounded);

  auto s = make_sphere(1.5, 8, 16).exterior();
  std::stringstream s3;
  save_mesh(s, s3);
  auto b3 = load_mesh<3>(s3);
  EXPECT_EQ(b3.nodes, s.nodes);
  EXPECT_FALSE(b3.bounded);
}

TEST(Mesh, LoadRejectsMalformedFiles) {
  std::stringstream a("n=2 bounded=1\n");
  EXPECT_THROW(load_mesh<2>(a), std::invalid_argument);
  std::stringstream b("# n=3 bounded=1 label=x\n0,0,0,1,0,0,1\n");
  EXPECT_THROW(load_mesh<2>(b), std::invalid_argument);
  std::stringstream c("# n=2 bounded=1 label=x\n1,0,1,0\n");
  EXPECT_THROW(load_mesh<2>(c), std::invalid_argument);
  std::stringstream d("# n=2 bounded=1 label=x\n1,0,1,zz,1\n");
  EXPECT_THROW(load_mesh<2>(d), std::invalid_argument);
}

TEST(Mesh, RefineKeepsFamily) {
  auto m = make_ellipse(2, 1, 64).exterior();
  auto r = refine(m, 4);
  EXPECT_EQ(r.size(), 256u);
  EXPECT_FALSE(r.bounded);
  EXPECT_EQ(r.nodes[0], m.nodes[0]);
  EXPECT_NEAR(r.total_measure(), m.total_measure(), 1e-10);
}

TEST(Mesh, JitteredBuildersKeepMeasure) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-0.1, 0.1);
  std::vector<double> off(512), sq(4 * 64);
  for (double& d : off) d = U(rng);
  for (double& d : sq) d = U(rng);
  const auto c = make_ellipse(1, 1, 512, off);
  EXPECT_NEAR(c.total_measure(), 2 * kPi, 1e-4);  // nonuniform trapezoid: second order
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(norm<2>(c.nodes[i]), 1.0, 1e-15);
  const auto s = make_square(2.0, 64, sq);
  EXPECT_NEAR(s.total_measure(), 8.0, 1e-13);
  EXPECT_GT(s.spacing, 2.0 / 64);
  const auto b = make_bump_circle(0.5, 1.5, 512, 1.0, off);
  EXPECT_EQ(b.topology, Topology::IrregularPeriodicCurve);
  off[3] = 0.6;
  EXPECT_THROW(make_ellipse(1, 1, 512, off), std::invalid_argument);
  EXPECT_THROW(make_ellipse(1, 1, 256, std::span<const double>(off.data(), 100)), std::invalid_argument);
}
