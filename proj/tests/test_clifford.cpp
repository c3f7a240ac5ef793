#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rieszkit/clifford.hpp"

using namespace rieszkit;

namespace {

Multivector random_mv(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Multivector u(n);
  for (std::uint32_t m = 0; m < (1u << n); ++m) u.set(BladeIndex::from_mask(m), U(rng));
  return u;
}

Multivector random_vector(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = U(rng);
  return Multivector::embed(x);
}

std::vector<double> dense_of(const Multivector& u) {
  std::vector<double> out(std::size_t{1} << u.dim(), 0.0);
  for (const auto& [m, c] : u.coefficients()) out[m] = c;
  return out;
}

}  // namespace

TEST(BladeIndex, RejectsBadIndices) {
  EXPECT_THROW(BladeIndex({2, 1}, 3), std::invalid_argument);
  EXPECT_THROW(BladeIndex({1, 1}, 3), std::invalid_argument);
  EXPECT_THROW(BladeIndex({0}, 3), std::invalid_argument);
  EXPECT_THROW(BladeIndex({4}, 3), std::invalid_argument);
  EXPECT_NO_THROW(BladeIndex({1, 3}, 3));
  EXPECT_EQ(BladeIndex({1, 3}, 3).indices(), (std::vector<int>{1, 3}));
}

TEST(BladeMul, BasicSigns) {
  auto p = blade_mul(BladeIndex({1}, 2), BladeIndex({1}, 2), 2);
  EXPECT_EQ(p.sign, -1);
  EXPECT_EQ(p.blade, BladeIndex{});
  p = blade_mul(BladeIndex({1}, 2), BladeIndex({2}, 2), 2);
  EXPECT_EQ(p.sign, 1);
  EXPECT_EQ(p.blade, BladeIndex({1, 2}, 2));
  p = blade_mul(BladeIndex({2}, 2), BladeIndex({1}, 2), 2);
  EXPECT_EQ(p.sign, -1);
  EXPECT_EQ(p.blade, BladeIndex({1, 2}, 2));
}

TEST(BladeMul, MatchesWordReductionExhaustively) {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint32_t a = 0; a < (1u << n); ++a) {
      for (std::uint32_t b = 0; b < (1u << n); ++b) {
        auto p = blade_mul(BladeIndex::from_mask(a), BladeIndex::from_mask(b), n);
        auto [s, w] = oracle::word_product(oracle::mask_word(a), oracle::mask_word(b));
        ASSERT_EQ(p.sign, s) << a << " " << b;
        ASSERT_EQ(p.blade.mask(), oracle::word_mask(w));
      }
    }
  }
}

TEST(Multivector, VectorSquareIsMinusNorm) {
  const double x[] = {3.0, 4.0, 0.0};
  auto v = Multivector::embed(x);
  auto sq = v * v;
  EXPECT_DOUBLE_EQ(sq.scalar_part(), -25.0);
  EXPECT_EQ(sq.coefficients().size(), 1u);
}

TEST(Multivector, UnitAndMismatch) {
  std::mt19937_64 rng(1);
  auto u = random_mv(3, rng);
  EXPECT_EQ(u * Multivector::scalar(3, 1.0), u);
  EXPECT_THROW(u * Multivector(2), std::invalid_argument);
}

TEST(Multivector, ProductMatchesDenseOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto u = random_mv(3, rng), v = random_mv(3, rng);
    auto got = dense_of(u * v);
    auto want = oracle::dense_product(3, dense_of(u), dense_of(v));
    for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-14);
  }
}

TEST(Multivector, ConjugationExamples) {
  auto e12 = Multivector::blade(2, BladeIndex({1, 2}, 2));
  EXPECT_EQ(e12.conj(), -1.0 * e12);
  EXPECT_EQ(Multivector::scalar(3, 2.5).conj(), Multivector::scalar(3, 2.5));
  const double x[] = {1.0, -2.0, 0.5};
  const double mx[] = {-1.0, 2.0, -0.5};
  EXPECT_EQ(Multivector::embed(x).conj(), Multivector::embed(mx));
  for (std::uint32_t m = 0; m < 16; ++m) {
    auto e = Multivector::blade(4, BladeIndex::from_mask(m));
    auto p = e.conj() * e;
    EXPECT_DOUBLE_EQ(p.scalar_part(), 1.0);
    EXPECT_EQ(p.coefficients().size(), 1u);
  }
}

TEST(Multivector, NormAndInner) {
  Multivector u = Multivector::blade(2, BladeIndex({1}, 2)) + Multivector::blade(2, BladeIndex({1, 2}, 2), 2.0);
  EXPECT_DOUBLE_EQ(u.norm_squared(), 5.0);
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 5; ++n) {
    for (int t = 0; t < 20; ++t) {
      auto a = random_mv(n, rng);
      EXPECT_NEAR((a * a.conj()).scalar_part(), a.norm_squared(), 1e-12);
      EXPECT_NEAR((a.conj() * a).scalar_part(), a.norm_squared(), 1e-12);
      auto b = random_mv(n, rng);
      EXPECT_NEAR(mv_inner(a, b), mv_inner(b, a), 1e-12);
    }
  }
}

TEST(CliffordProperties, AssociativityExhaustive) {
  for (int n = 1; n <= 4; ++n) {
    const std::uint32_t size = 1u << n;
    for (std::uint32_t a = 0; a < size; ++a)
      for (std::uint32_t b = 0; b < size; ++b)
        for (std::uint32_t c = 0; c < size; ++c) {
          auto A = Multivector::blade(n, BladeIndex::from_mask(a));
          auto B = Multivector::blade(n, BladeIndex::from_mask(b));
          auto C = Multivector::blade(n, BladeIndex::from_mask(c));
          ASSERT_EQ((A * B) * C, A * (B * C));
        }
  }
}

TEST(CliffordProperties, SubmultiplicativeAndVectorIsometry) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 5; ++n) {
    const double bound = std::pow(2.0, 0.5 * n);
    for (int t = 0; t < 2000; ++t) {
      auto u = random_mv(n, rng), v = random_mv(n, rng);
      EXPECT_LE((u * v).norm(), bound * u.norm() * v.norm() * (1 + 1e-12));
      auto x = random_vector(n, rng);
      EXPECT_NEAR((x * v).norm(), x.norm() * v.norm(), 1e-12 * x.norm() * v.norm());
      EXPECT_NEAR((v * x).norm(), x.norm() * v.norm(), 1e-12 * x.norm() * v.norm());
    }
  }
}

TEST(CliffordProperties, ConjugationReversesProducts) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 5; ++n) {
    for (int t = 0; t < 50; ++t) {
      auto u = random_mv(n, rng), v = random_mv(n, rng);
      auto lhs = (u * v).conj(), rhs = v.conj() * u.conj();
      for (std::uint32_t m = 0; m < (1u << n); ++m)
        EXPECT_NEAR(lhs.coeff(BladeIndex::from_mask(m)), rhs.coeff(BladeIndex::from_mask(m)), 1e-12);
    }
  }
}

TEST(CliffordProperties, UnitVectorInverse) {
  std::mt19937_64 rng(9);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 50; ++t) {
      auto nu = random_vector(n, rng);
      nu = nu * (1.0 / nu.norm());
      auto sq = nu * nu;
      EXPECT_NEAR(sq.scalar_part(), -1.0, 1e-14);
      auto v = random_mv(n, rng);
      auto back = (-1.0 * nu) * (nu * v);
      for (std::uint32_t m = 0; m < (1u << n); ++m)
        EXPECT_NEAR(back.coeff(BladeIndex::from_mask(m)), v.coeff(BladeIndex::from_mask(m)), 1e-13);
    }
  }
}

TEST(DenseMultivector, AgreesWithSparsePath) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    auto u = random_mv(3, rng), v = random_mv(3, rng);
    auto d = DenseMultivector<3>::from_sparse(u) * DenseMultivector<3>::from_sparse(v);
    auto s = u * v;
    for (std::uint32_t m = 0; m < 8; ++m) EXPECT_NEAR(d[m], s.coeff(BladeIndex::from_mask(m)), 1e-14);
    EXPECT_NEAR(d.conj().to_sparse().coeff(BladeIndex::from_mask(3)), s.conj().coeff(BladeIndex::from_mask(3)), 1e-14);
  }
  const std::array<double, 2> x{0.3, -0.4};
  EXPECT_EQ(DenseMultivector<2>::embed(x).vector_part(), x);
}
