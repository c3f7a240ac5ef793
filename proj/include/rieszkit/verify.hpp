#pragma once

// Invariant suite for Cl_n, run against a pluggable blade product so that a
// corrupted sign table is caught and pinned to the blade pair responsible.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rieszkit/clifford.hpp"

namespace rieszkit {

using BladeMulFn = std::function<BladeProduct(BladeIndex, BladeIndex, int)>;

/// Flips the sign of one entry of the blade table.
struct SignFault {
  BladeIndex lhs, rhs;
};

inline BladeMulFn faulty_blade_mul(SignFault f) {
  return [f](BladeIndex a, BladeIndex b, int n) {
    auto p = blade_mul(a, b, n);
    if (a == f.lhs && b == f.rhs) p.sign = -p.sign;
    return p;
  };
}

/// "e1e2,e3" style fault spec; "1" or "" denotes the scalar blade.
inline SignFault parse_sign_fault(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("fault: expected two blades separated by ','");
  auto blade = [](const std::string& w) {
    std::uint32_t mask = 0;
    if (w.empty() || w == "1") return BladeIndex{};
    std::size_t k = 0;
    while (k < w.size()) {
      if (w[k] != 'e') throw std::invalid_argument("fault: malformed blade '" + w + "'");
      std::size_t end = k + 1;
      while (end < w.size() && std::isdigit(static_cast<unsigned char>(w[end]))) ++end;
      if (end == k + 1) throw std::invalid_argument("fault: malformed blade '" + w + "'");
      const int j = std::stoi(w.substr(k + 1, end - k - 1));
      if (j < 1 || j > kMaxCliffordDim) throw std::invalid_argument("fault: index out of range");
      const std::uint32_t bit = std::uint32_t{1} << (j - 1);
      if ((mask & bit) || (mask >> (j - 1)) > 1) throw std::invalid_argument("fault: indices must increase");
      mask |= bit;
      k = end;
    }
    return BladeIndex::from_mask(mask);
  };
  return {blade(s.substr(0, comma)), blade(s.substr(comma + 1))};
}

inline std::string blade_name(BladeIndex b) {
  if (b.mask() == 0) return "1";
  std::string s;
  for (int j = 0; j < 32; ++j)
    if (b.mask() & (std::uint32_t{1} << j)) s += "e" + std::to_string(j + 1);
  return s;
}

struct InvariantCheck {
  std::string name;
  bool passed = true;
  double worst = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;
  std::string failing_case;  // first offending input, empty on pass
};

struct CliffordVerifyReport {
  int n = 0;
  std::uint64_t seed = 0;
  std::size_t random_pairs = 0;
  std::vector<InvariantCheck> checks;
  bool passed = true;
  std::optional<std::pair<BladeIndex, BladeIndex>> offending_pair;
};

namespace detail {

// Sign of e_I e_J from generator rules alone: bring e_J's generators left
// past e_I's one at a time (anticommutation), cancel on contact (e_j e_j = -1).
inline int generator_sign(std::uint32_t a, std::uint32_t b) {
  int sign = 1;
  std::uint32_t cur = a;
  for (int j = 0; j < 32; ++j) {
    const std::uint32_t bit = std::uint32_t{1} << j;
    if (!(b & bit)) continue;
    // generators of cur above j must be crossed
    if (std::popcount(cur & ~((bit << 1) - 1)) & 1) sign = -sign;
    if (cur & bit) {
      sign = -sign;
      cur &= ~bit;
    } else {
      cur |= bit;
    }
  }
  return sign;
}

inline Multivector mul_with(const Multivector& u, const Multivector& v, const BladeMulFn& bm) {
  const int n = u.dim();
  Multivector out(n);
  for (const auto& [a, ca] : u.coefficients())
    for (const auto& [b, cb] : v.coefficients()) {
      const auto p = bm(BladeIndex::from_mask(a), BladeIndex::from_mask(b), n);
      out.add_to(p.blade, p.sign * ca * cb);
    }
  return out;
}

inline Multivector random_mv(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> G;
  Multivector u(n);
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) u.set(BladeIndex::from_mask(m), G(rng));
  return u;
}

inline Multivector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> G;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = G(rng);
  return Multivector::embed(x);
}

}  // namespace detail

/// Runs the Cl_n invariant suite with blade product `bm` (defaults to blade_mul).
inline CliffordVerifyReport verify_clifford(int n, std::size_t random_pairs = 10000, std::uint64_t seed = 20240601,
                                            BladeMulFn bm = {}, double tol_scale = 1.0) {
  if (n < 1 || n > 6) throw std::invalid_argument("verify_clifford: n must lie in 1..6");
  if (!bm) bm = [](BladeIndex a, BladeIndex b, int d) { return blade_mul(a, b, d); };
  CliffordVerifyReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.random_pairs = random_pairs;
  const std::uint32_t size = std::uint32_t{1} << n;
  auto fail = [&](InvariantCheck& c, const std::string& what) {
    if (c.passed) c.failing_case = what;
    c.passed = false;
  };

  {
    // table vs generator rules: pins a corrupted entry to its pair
    InvariantCheck c{"blade_table", true, 0.0, 0.0, 0, {}};
    for (std::uint32_t a = 0; a < size; ++a)
      for (std::uint32_t b = 0; b < size; ++b) {
        ++c.cases;
        const auto p = bm(BladeIndex::from_mask(a), BladeIndex::from_mask(b), n);
        if (p.blade.mask() != (a ^ b) || p.sign != detail::generator_sign(a, b)) {
          c.worst = std::max(c.worst, 2.0);
          if (c.passed) rep.offending_pair = {BladeIndex::from_mask(a), BladeIndex::from_mask(b)};
          fail(c, blade_name(BladeIndex::from_mask(a)) + " * " + blade_name(BladeIndex::from_mask(b)));
        }
      }
    rep.checks.push_back(c);
  }
  {
    InvariantCheck c{"generator_relations", true, 0.0, 0.0, 0, {}};
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ++c.cases;
        const auto ej = BladeIndex::from_mask(1u << j), ek = BladeIndex::from_mask(1u << k);
        const auto p = bm(ej, ek, n), q = bm(ek, ej, n);
        const bool ok = j == k ? (p.sign == -1 && p.blade.mask() == 0) : (p.sign == -q.sign && p.blade == q.blade);
        if (!ok) fail(c, blade_name(ej) + " * " + blade_name(ek));
      }
    rep.checks.push_back(c);
  }
  if (n <= 4) {
    InvariantCheck c{"associativity_exhaustive", true, 0.0, 0.0, 0, {}};
    for (std::uint32_t a = 0; a < size; ++a)
      for (std::uint32_t b = 0; b < size; ++b)
        for (std::uint32_t d = 0; d < size; ++d) {
          ++c.cases;
          const auto A = BladeIndex::from_mask(a), B = BladeIndex::from_mask(b), D = BladeIndex::from_mask(d);
          const auto ab = bm(A, B, n), bd = bm(B, D, n);
          const auto l = bm(ab.blade, D, n), r = bm(A, bd.blade, n);
          if (ab.sign * l.sign != bd.sign * r.sign || l.blade != r.blade)
            fail(c, "(" + blade_name(A) + " " + blade_name(B) + ") " + blade_name(D));
        }
    rep.checks.push_back(c);
  }

  std::mt19937_64 rng(seed);
  InvariantCheck sub{"submultiplicative", true, 0.0, 0.0, 0, {}};
  InvariantCheck iso{"vector_isometry", true, 0.0, 1e-12 * tol_scale, 0, {}};
  InvariantCheck conj{"conjugation_antihomomorphism", true, 0.0, 1e-12 * tol_scale, 0, {}};
  InvariantCheck nrm{"norm_from_product", true, 0.0, 1e-12 * tol_scale, 0, {}};
  InvariantCheck unit{"unit_vector_inverse", true, 0.0, 1e-12 * tol_scale, 0, {}};
  const double bound = std::pow(2.0, 0.5 * n);
  for (std::size_t t = 0; t < random_pairs; ++t) {
    const auto u = detail::random_mv(n, rng), v = detail::random_mv(n, rng);
    const auto uv = detail::mul_with(u, v, bm);
    const double ratio = uv.norm() / (u.norm() * v.norm());
    ++sub.cases;
    sub.worst = std::max(sub.worst, ratio);
    if (ratio > bound * (1 + 1e-12 * tol_scale)) fail(sub, "pair " + std::to_string(t));

    const auto x = detail::random_vector(n, rng);
    const double e = std::abs(detail::mul_with(x, v, bm).norm() - x.norm() * v.norm()) / (x.norm() * v.norm());
    ++iso.cases;
    iso.worst = std::max(iso.worst, e);
    if (e > iso.tolerance) fail(iso, "pair " + std::to_string(t));

    if (t < 1000) {
      const double ec = (uv.conj() - detail::mul_with(v.conj(), u.conj(), bm)).norm() / (u.norm() * v.norm());
      ++conj.cases;
      conj.worst = std::max(conj.worst, ec);
      if (ec > conj.tolerance) fail(conj, "pair " + std::to_string(t));

      const double uu = u.norm() * u.norm();
      const double en = std::max(std::abs(detail::mul_with(u, u.conj(), bm).scalar_part() - uu),
                                 std::abs(detail::mul_with(u.conj(), u, bm).scalar_part() - uu)) /
                        uu;
      ++nrm.cases;
      nrm.worst = std::max(nrm.worst, en);
      if (en > nrm.tolerance) fail(nrm, "element " + std::to_string(t));

      const auto nu = x * (1.0 / x.norm());
      const auto sq = detail::mul_with(nu, nu, bm) + Multivector::scalar(n, 1.0);
      const auto back = detail::mul_with(nu * -1.0, detail::mul_with(nu, v, bm), bm) - v;
      const double eu = std::max(sq.norm(), back.norm() / v.norm());
      ++unit.cases;
      unit.worst = std::max(unit.worst, eu);
      if (eu > unit.tolerance) fail(unit, "vector " + std::to_string(t));
    }
  }
  sub.tolerance = bound;
  rep.checks.push_back(sub);
  rep.checks.push_back(iso);
  rep.checks.push_back(conj);
  rep.checks.push_back(nrm);
  rep.checks.push_back(unit);

  for (const auto& c : rep.checks) rep.passed = rep.passed && c.passed;
  return rep;
}

}  // namespace rieszkit
