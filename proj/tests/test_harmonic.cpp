#include <gtest/gtest.h>

#include <random>

#include "rieszkit/harmonic.hpp"
#include "rieszkit/spherical.hpp"

using namespace rieszkit;

namespace {

HomogeneousPoly random_poly(int n, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> C(-5, 5);
  HomogeneousPoly p(n, degree);
  for (const auto& e : monomials_of_degree(n, degree)) p.add_term(e, Rational(C(rng), 1 + std::abs(C(rng))));
  return p;
}

std::vector<double> random_point(int n, std::mt19937_64& rng, double rmin = 0.5, double rmax = 2.0) {
  std::normal_distribution<double> G;
  std::uniform_real_distribution<double> R(rmin, rmax);
  std::vector<double> x(static_cast<std::size_t>(n));
  double s = 0.0;
  for (auto& v : x) {
    v = G(rng);
    s += v * v;
  }
  const double r = R(rng) / std::sqrt(s);
  for (auto& v : x) v *= r;
  return x;
}

// L^2(S^2) inner product by Gauss-Legendre x trapezoid, exact for the degrees used here
double sphere_inner(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  SphereGrid g(24, 48);
  double s = 0.0;
  for (int i = 0; i < g.n_lat; ++i)
    for (int k = 0; k < g.n_lon; ++k) {
      auto u = g.point(i, k);
      s += g.weight(i) * a.evaluate(u) * b.evaluate(u);
    }
  return s;
}

HomogeneousPoly odd_harmonic(int n, int degree, std::mt19937_64& rng) {
  auto terms = harmonic_decompose(random_poly(n, degree, rng));
  return terms.front().j == 1 ? terms.front().poly : HomogeneousPoly(n, degree);
}

}  // namespace

TEST(HarmonicDecompose, HarmonicInputIsSingleTerm) {
  auto p = parse_polynomial("x1*x2*x3", 3);
  auto t = harmonic_decompose(p);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].j, 1);
  EXPECT_EQ(t[0].poly, p);
}

TEST(HarmonicDecompose, CubeOfCoordinate) {
  auto t = harmonic_decompose(parse_polynomial("x1^3", 3));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].poly, parse_polynomial("x1^3 - 3/5*x1^3 - 3/5*x1*x2^2 - 3/5*x1*x3^2", 3));
  EXPECT_EQ(t[1].j, 2);
  EXPECT_EQ(t[1].poly, parse_polynomial("3/5*x1", 3));
}

TEST(HarmonicDecompose, RandomReconstructionExact) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const int d = 1 + trial % 7;
    auto p = random_poly(n, d, rng);
    auto t = harmonic_decompose(p);
    for (const auto& term : t) {
      EXPECT_TRUE(term.poly.is_harmonic());
      EXPECT_EQ(term.poly.degree(), d - 2 * (term.j - 1));
    }
    EXPECT_EQ(reconstruct(t, n), p);
    for (int k = 0; k < 5; ++k) {
      auto x = random_point(n, rng);
      double s = 0.0, r2 = 0.0;
      for (double v : x) r2 += v * v;
      for (const auto& term : t) s += std::pow(r2, term.j - 1) * term.poly.evaluate(x);
      EXPECT_NEAR(s, p.evaluate(x), 1e-12 * std::max(1.0, std::abs(s)));
    }
  }
}

TEST(HarmonicDecompose, SphereOrthogonality) {
  std::mt19937_64 rng(41);
  for (int d = 2; d <= 7; ++d) {
    auto p = random_poly(3, d, rng);
    auto t = harmonic_decompose(p);
    double parts = 0.0;
    for (std::size_t a = 0; a < t.size(); ++a) {
      parts += sphere_inner(t[a].poly, t[a].poly);
      for (std::size_t b = a + 1; b < t.size(); ++b)
        EXPECT_NEAR(sphere_inner(t[a].poly, t[b].poly), 0.0, 1e-8 * sphere_inner(p, p));
    }
    EXPECT_NEAR(parts, sphere_inner(p, p), 1e-8 * sphere_inner(p, p));
  }
}

TEST(Gamma, RieszChain) {
  for (int n = 2; n <= 6; ++n) {
    auto g = gamma_coefficient(n, 1, 1.0);
    EXPECT_NEAR(g.real(), 0.0, 1e-12);
    EXPECT_NEAR(g.imag(), -sphere_area(n), 1e-12 * sphere_area(n));
  }
  EXPECT_NEAR(sphere_area(2), 2 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_area(3), 4 * std::numbers::pi, 1e-14);
}

TEST(Gamma, ParityAndErrors) {
  for (int m = 0; m < 12; ++m) {
    auto g = gamma_coefficient(3, m, 1.0);
    if (m % 2 == 0) EXPECT_EQ(g.imag(), 0.0);
    else EXPECT_EQ(g.real(), 0.0);
  }
  EXPECT_THROW(gamma_coefficient(2, 1, 2.0), std::invalid_argument);
  EXPECT_THROW(gamma_coefficient(2, 1, 0.0), std::invalid_argument);
  EXPECT_THROW(gamma_coefficient(2, -1, 1.0), std::invalid_argument);
  // denominator Gamma(m/2 + n/2 - lambda/2) at 0 for n=1? lambda < n rules it out; numerator pole at m=0, lambda->0 excluded
  EXPECT_NO_THROW(gamma_coefficient(4, 0, 3.5));
}

TEST(Gamma, GrowthExponentInThreeDimensions) {
  // least-squares slope of log|gamma_{3,l,1}| against log l on [20, 200]
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int l = 20; l <= 200; ++l) {
    const double x = std::log(l), y = std::log(std::abs(gamma_coefficient(3, l, 1.0)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  EXPECT_NEAR(slope, -0.5, 0.1);
  // still inside the O(l^{1/2}) envelope
  for (int l = 20; l <= 200; l += 20) EXPECT_LE(std::abs(gamma_coefficient(3, l, 1.0)), 20.0 * std::sqrt(l));
}

TEST(KernelSymbol, RieszAndOddness) {
  for (int n = 2; n <= 3; ++n) {
    for (int j = 1; j <= n; ++j) {
      auto P = HomogeneousPoly::coordinate(n, j);
      std::vector<double> nu(static_cast<std::size_t>(n), 0.0);
      nu[0] = 0.6;
      nu[1] = 0.8;
      // P = x_j / omega: symbol -i nu_j
      auto s = kernel_symbol(P, nu) / sphere_area(n);
      EXPECT_NEAR(s.real(), 0.0, 1e-14);
      EXPECT_NEAR(s.imag(), -nu[static_cast<std::size_t>(j - 1)], 1e-14);
    }
  }
  auto P = parse_polynomial("x1^3 - 2*x1*x2^2 + x3^3", 3);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    auto u = random_point(3, rng, 1, 1);
    std::vector<double> mu = {-u[0], -u[1], -u[2]};
    auto a = kernel_symbol(P, u), b = kernel_symbol(P, mu);
    EXPECT_NEAR(std::abs(a + b), 0.0, 1e-13);
  }
  const double e1[] = {1.0, 0.0, 0.0};
  EXPECT_EQ(kernel_symbol(parse_polynomial("x1*x2*x3", 3), e1), Complex(0.0, 0.0));
  const double bad[] = {1.0, 1.0, 0.0};
  EXPECT_THROW(kernel_symbol(P, bad), std::invalid_argument);
}

TEST(RationalHomogeneous, DerivativeMatchesFiniteDifference) {
  RationalHomogeneous q(parse_polynomial("x1^2*x2 - x3^3", 3), 5);
  EXPECT_EQ(q.homogeneity(), -2);
  const std::vector<double> x = {0.4, -0.7, 1.1};
  for (int r = 1; r <= 3; ++r) {
    auto xp = x, xm = x;
    const double h = 1e-5;
    xp[static_cast<std::size_t>(r - 1)] += h;
    xm[static_cast<std::size_t>(r - 1)] -= h;
    const double fd = (q.evaluate(xp).real() - q.evaluate(xm).real()) / (2 * h);
    EXPECT_NEAR(q.partial(r).evaluate(x).real(), fd, 1e-8);
  }
}

TEST(Semmes, ProductMonomialThreeD) {
  auto fam = semmes_decompose(parse_polynomial("x1*x2*x3", 3));
  EXPECT_EQ(fam.Prs[0][1], parse_polynomial("1/6*x3", 3));
  EXPECT_TRUE(fam.Prs[0][0].is_zero());
  for (int r = 0; r < 3; ++r) EXPECT_TRUE(fam.Prs[r][r].is_zero());
}

TEST(Semmes, Errors) {
  EXPECT_THROW(semmes_decompose(parse_polynomial("x1*x2", 3)), std::invalid_argument);
  EXPECT_THROW(semmes_decompose(parse_polynomial("x1^3", 3)), std::invalid_argument);
  EXPECT_THROW(semmes_decompose(parse_polynomial("x1", 3)), std::invalid_argument);
}

namespace {

void check_family(const HomogeneousPoly& P, double tol, std::uint64_t seed) {
  auto fam = semmes_decompose(P);
  const int n = P.dim(), l = P.degree();
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 100; ++t) {
    auto x = random_point(n, rng);
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    const double target = P.evaluate(x) / std::pow(r2, 0.5 * (n - 1 + l));
    EXPECT_NEAR(fam.pro1_lhs(x), target, tol * std::max(1.0, std::abs(target)));
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        auto D = fam.dirac_right(r, s, x);
        const double rhs = fam.pro2_rhs(r, s, x);
        EXPECT_NEAR(D.scalar_part(), rhs, tol * std::max(1.0, std::abs(rhs)));
        auto rest = D - Multivector::scalar(n, D.scalar_part());
        EXPECT_LE(rest.norm(), tol);
      }
  }
  // oddness and homogeneity of k_rs
  for (int t = 0; t < 10; ++t) {
    auto x = random_point(n, rng);
    std::vector<double> mx(x.size()), lx(x.size());
    const double lam = 1.7;
    for (std::size_t k = 0; k < x.size(); ++k) {
      mx[k] = -x[k];
      lx[k] = lam * x[k];
    }
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        auto a = fam.k_value(r, s, x), b = fam.k_value(r, s, mx), c = fam.k_value(r, s, lx);
        EXPECT_LE((a + b).norm(), 1e-12 * std::max(1.0, a.norm()));
        EXPECT_LE((c - std::pow(lam, 1 - n) * a).norm(), 1e-12 * std::max(1.0, a.norm()));
      }
  }
}

}  // namespace

TEST(Semmes, IdentitiesThreeD) {
  check_family(parse_polynomial("x1*x2*x3", 3), 1e-9, 1);
  std::mt19937_64 rng(55);
  check_family(odd_harmonic(3, 5, rng), 1e-9, 2);
}

TEST(Semmes, IdentitiesHigherDimension) {
  std::mt19937_64 rng(56);
  check_family(odd_harmonic(4, 3, rng), 1e-9, 3);
}

TEST(Semmes, FourierPathTwoD) {
  auto P = parse_polynomial("x1^3 - 3*x1*x2^2", 2);
  auto fam = semmes_decompose(P);
  EXPECT_LE(fam.max_imag_residue, 1e-10);
  check_family(P, 1e-8, 4);
  check_family(parse_polynomial("x1^5 - 10*x1^3*x2^2 + 5*x1*x2^4", 2), 1e-8, 5);
}

TEST(Semmes, SupBoundStableAcrossDegrees) {
  // max_{S^2} |k_rs| / (2^l ||P||_{L^1}) should not blow up with l
  std::mt19937_64 rng(77);
  SphereGrid g(20, 40);
  std::vector<double> ratios;
  for (int l : {3, 5, 7}) {
    auto P = odd_harmonic(3, l, rng);
    auto fam = semmes_decompose(P);
    double l1 = 0.0, sup = 0.0;
    for (int a = 0; a < g.n_lat; ++a)
      for (int b = 0; b < g.n_lon; ++b) {
        auto u = g.point(a, b);
        l1 += g.weight(a) * std::abs(P.evaluate(u));
        for (int r = 0; r < 3; ++r)
          for (int s = 0; s < 3; ++s) sup = std::max(sup, fam.k_value(r, s, u).norm());
      }
    ratios.push_back(sup / (std::pow(2.0, l) * l1));
  }
  for (double r : ratios) {
    EXPECT_GT(r, 0.0);
    EXPECT_LT(r, 10.0 * ratios.front());
  }
}

TEST(InteriorEstimate, SecondDerivativesOnSphere) {
  std::mt19937_64 rng(78);
  SphereGrid g(20, 40);
  for (int l : {3, 5, 7}) {
    auto P = odd_harmonic(3, l, rng);
    double l1 = 0.0, sup = 0.0;
    for (int a = 0; a < g.n_lat; ++a)
      for (int b = 0; b < g.n_lon; ++b) {
        auto u = g.point(a, b);
        l1 += g.weight(a) * std::abs(P.evaluate(u));
        for (int r = 1; r <= 3; ++r) {
          sup = std::max(sup, std::abs(P.partial(r).evaluate(u)));
          for (int s = 1; s <= 3; ++s) sup = std::max(sup, std::abs(P.partial(r).partial(s).evaluate(u)));
        }
      }
    // generous dimensional constant
    EXPECT_LE(sup, 50.0 * std::pow(2.0, l) / (3 + l) * l1);
  }
}
