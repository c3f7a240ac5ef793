#pragma once

// Harmonic decomposition, Q(x)/|x|^p quotients, Fourier coefficients of
// harmonic kernels and the Semmes kernel families.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rieszkit/clifford.hpp"
#include "rieszkit/polynomial.hpp"

namespace rieszkit {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// constants

/// Area of the unit sphere S^{n-1}.
inline double sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("sphere_area: n must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

namespace detail {

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// sign of Gamma(x) for x not a pole
inline double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace detail

/// gamma_{n,m,lambda} = (-1)^{3m/2} pi^{n/2} 2^lambda Gamma(m/2+lambda/2)/Gamma(m/2+n/2-lambda/2),
/// with (-1)^{3m/2} taken as exp(i 3 pi m / 2).
inline Complex gamma_coefficient(int n, int m, double lambda) {
  if (n < 1) throw std::invalid_argument("gamma_coefficient: n must be >= 1");
  if (m < 0) throw std::invalid_argument("gamma_coefficient: m must be >= 0");
  if (!(lambda > 0.0) || !(lambda < n))
    throw std::invalid_argument("gamma_coefficient: lambda must lie in (0, n)");
  const double a = 0.5 * m + 0.5 * lambda;
  const double b = 0.5 * m + 0.5 * n - 0.5 * lambda;
  if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b))
    throw std::domain_error("gamma_coefficient: Gamma pole");
  const double ratio =
      detail::gamma_sign(a) * detail::gamma_sign(b) * std::exp(std::lgamma(a) - std::lgamma(b));
  const double mag = std::pow(std::numbers::pi, 0.5 * n) * std::pow(2.0, lambda) * ratio;
  // exp(i 3 pi m/2) = (-i)^m, exact
  static constexpr Complex kPhase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return kPhase[m % 4] * mag;
}

// ---------------------------------------------------------------------------
// harmonic decomposition

namespace detail {

// Solves A y = rhs exactly; A square. Throws on singular systems.
inline std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> A, std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && A[piv][c] == 0) ++piv;
    if (piv == n) throw std::logic_error("harmonic_decompose: singular linear system");
    if (piv != c) {
      std::swap(A[piv], A[c]);
      std::swap(rhs[piv], rhs[c]);
    }
    const Rational inv = 1 / A[c][c];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      const Rational f = A[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) rhs[c] /= A[c][c];
  return rhs;
}

}  // namespace detail

struct HarmonicTerm {
  int j;                 // P = sum_j |x|^{2(j-1)} P_j
  HomogeneousPoly poly;  // harmonic, degree l - 2(j-1)
};

/// P = sum_j |x|^{2(j-1)} P_j with every P_j harmonic. Zero pieces are omitted.
inline std::vector<HarmonicTerm> harmonic_decompose(const HomogeneousPoly& P) {
  std::vector<HarmonicTerm> out;
  const int n = P.dim();
  const HomogeneousPoly r2 = HomogeneousPoly::radius_squared(n);
  HomogeneousPoly cur = P;
  int j = 1;
  while (!cur.is_zero()) {
    const int l = cur.degree();
    if (l < 2 || cur.is_harmonic()) {
      out.push_back({j, cur});
      break;
    }
    // unknown Q of degree l-2: columns are Delta(|x|^2 x^e), rows indexed by degree l-2 monomials
    const auto basis = monomials_of_degree(n, l - 2);
    std::map<Exponent, std::size_t> row_of;
    for (std::size_t k = 0; k < basis.size(); ++k) row_of[basis[k]] = k;
    const std::size_t m = basis.size();
    std::vector<std::vector<Rational>> A(m, std::vector<Rational>(m));
    for (std::size_t c = 0; c < m; ++c) {
      const HomogeneousPoly img = (r2 * HomogeneousPoly::monomial(basis[c])).laplacian();
      for (const auto& [e, v] : img.terms()) A[row_of.at(e)][c] = v;
    }
    std::vector<Rational> rhs(m);
    const HomogeneousPoly lap = cur.laplacian();
    for (const auto& [e, v] : lap.terms()) rhs[row_of.at(e)] = v;
    const auto y = detail::solve_rational(std::move(A), std::move(rhs));
    HomogeneousPoly Q(n, l - 2);
    for (std::size_t k = 0; k < m; ++k) Q.add_term(basis[k], y[k]);
    HomogeneousPoly P1 = cur - r2 * Q;
    if (!P1.is_harmonic()) throw std::logic_error("harmonic_decompose: stage output not harmonic");
    if (!P1.is_zero()) out.push_back({j, std::move(P1)});
    cur = std::move(Q);
    ++j;
  }
  return out;
}

/// |x|^{2k} as an exact polynomial.
inline HomogeneousPoly radius_power_poly(int n, int k) {
  HomogeneousPoly out = HomogeneousPoly::constant(n, 1);
  const HomogeneousPoly r2 = HomogeneousPoly::radius_squared(n);
  for (int i = 0; i < k; ++i) out = out * r2;
  return out;
}

inline HomogeneousPoly reconstruct(const std::vector<HarmonicTerm>& terms, int n) {
  HomogeneousPoly sum(n, 0);
  for (const auto& t : terms) sum += radius_power_poly(n, t.j - 1) * t.poly;
  return sum;
}

// ---------------------------------------------------------------------------
// numerator / |x|^p

class RationalHomogeneous {
 public:
  RationalHomogeneous() = default;
  RationalHomogeneous(HomogeneousPoly numerator, int radial_power, Complex scalar = {1.0, 0.0})
      : num_(std::move(numerator)), p_(radial_power), scalar_(scalar), compiled_(num_) {}

  const HomogeneousPoly& numerator() const { return num_; }
  int radial_power() const { return p_; }
  Complex scalar() const { return scalar_; }
  int dim() const { return num_.dim(); }
  int homogeneity() const { return num_.degree() - p_; }
  bool is_zero() const { return num_.is_zero() || scalar_ == Complex{}; }

  Complex evaluate(std::span<const double> x) const {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return scalar_ * (compiled_(x) / std::pow(r2, 0.5 * p_));
  }

  /// d/dx_r (N/|x|^p) = (d_r N |x|^2 - p x_r N) / |x|^{p+2}
  RationalHomogeneous partial(int r) const {
    const int n = dim();
    HomogeneousPoly top = num_.partial(r) * HomogeneousPoly::radius_squared(n);
    top -= HomogeneousPoly::coordinate(n, r) * num_ * Rational(p_);
    return RationalHomogeneous(std::move(top), p_ + 2, scalar_);
  }

 private:
  HomogeneousPoly num_;
  int p_ = 0;
  Complex scalar_{1.0, 0.0};
  CompiledPoly compiled_;
};

/// Finite sums of RationalHomogeneous terms.
class RationalSum {
 public:
  RationalSum() = default;
  explicit RationalSum(RationalHomogeneous t) { add(std::move(t)); }

  void add(RationalHomogeneous t) {
    if (!t.is_zero()) terms_.push_back(std::move(t));
  }
  const std::vector<RationalHomogeneous>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Complex evaluate(std::span<const double> x) const {
    Complex s{};
    for (const auto& t : terms_) s += t.evaluate(x);
    return s;
  }
  double evaluate_real(std::span<const double> x) const { return evaluate(x).real(); }

  RationalSum partial(int r) const {
    RationalSum out;
    for (const auto& t : terms_) out.add(t.partial(r));
    return out;
  }

 private:
  std::vector<RationalHomogeneous> terms_;
};

// ---------------------------------------------------------------------------
// Fourier symbols

/// Symbol of P(x)/|x|^{n-1+l} at a unit vector xi. Non-harmonic P is decomposed first;
/// the piece |x|^{2(j-1)}P_j/|x|^{n-1+l} = P_j/|x|^{n+m_j-1} has symbol gamma_{n,m_j,1} P_j(xi).
inline Complex kernel_symbol(const HomogeneousPoly& P, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != P.dim()) throw std::invalid_argument("kernel_symbol: dimension mismatch");
  double nrm = 0.0;
  for (double v : xi) nrm += v * v;
  if (std::abs(std::sqrt(nrm) - 1.0) > 1e-12) throw std::invalid_argument("kernel_symbol: xi must be a unit vector");
  Complex s{};
  for (const auto& t : harmonic_decompose(P)) s += gamma_coefficient(P.dim(), t.poly.degree(), 1.0) * t.poly.evaluate(xi);
  return s;
}

// ---------------------------------------------------------------------------
// Semmes family

struct SemmesFamily {
  int n = 0;
  int l = 0;
  HomogeneousPoly P;
  std::vector<std::vector<HomogeneousPoly>> Prs;         // [r][s], 0-based
  std::vector<std::vector<std::vector<RationalSum>>> krs;  // [r][s][j]
  double max_imag_residue = 0.0;                          // n = 2 path only

  /// k_rs(x) as a Clifford vector
  Multivector k_value(int r, int s, std::span<const double> x) const {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = krs[r][s][j].evaluate_real(x);
    return Multivector::embed(v);
  }

  /// sum_{r,s} [k_rs(x)]_s
  double pro1_lhs(std::span<const double> x) const {
    double s = 0.0;
    for (int r = 0; r < n; ++r)
      for (int q = 0; q < n; ++q) s += krs[r][q][q].evaluate_real(x);
    return s;
  }

  /// D_R k_rs = sum_{j,ell} d_ell k_j e_j e_ell
  Multivector dirac_right(int r, int s, std::span<const double> x) const {
    Multivector out(n);
    for (int j = 0; j < n; ++j) {
      for (int ell = 0; ell < n; ++ell) {
        const double d = krs[r][s][j].partial(ell + 1).evaluate_real(x);
        const auto bp = blade_mul(BladeIndex::from_mask(1u << j), BladeIndex::from_mask(1u << ell), n);
        out.add_to(bp.blade, bp.sign * d);
      }
    }
    return out;
  }

  /// ((l-1)/(n+l-3)) d_r (P_rs / |x|^{n+l-3})
  double pro2_rhs(int r, int s, std::span<const double> x) const {
    RationalHomogeneous q(Prs[r][s], n + l - 3);
    return to_double(Rational(l - 1, n + l - 3)) * q.partial(r + 1).evaluate(x).real();
  }
};

inline SemmesFamily semmes_decompose(const HomogeneousPoly& P) {
  const int n = P.dim();
  const int l = P.degree();
  if (l < 3) throw std::invalid_argument("semmes_decompose: degree must be >= 3");
  if (l % 2 == 0 || P.is_zero()) throw std::invalid_argument("semmes_decompose: polynomial must be odd");
  if (!P.is_harmonic()) throw std::invalid_argument("semmes_decompose: polynomial must be harmonic");
  if (n < 2) throw std::invalid_argument("semmes_decompose: n must be >= 2");

  SemmesFamily fam;
  fam.n = n;
  fam.l = l;
  fam.P = P;
  const auto un = static_cast<std::size_t>(n);
  fam.Prs.assign(un, std::vector<HomogeneousPoly>(un));
  fam.krs.assign(un, std::vector<std::vector<RationalSum>>(un, std::vector<RationalSum>(un)));
  const Rational inv_ll = Rational(1, l * (l - 1));
  for (int r = 1; r <= n; ++r)
    for (int s = 1; s <= n; ++s) {
      HomogeneousPoly q = P.partial(r).partial(s) * inv_ll;
      if (q.is_zero()) q = HomogeneousPoly(n, l - 2);
      fam.Prs[r - 1][s - 1] = std::move(q);
    }

  if (n >= 3) {
    const int p = n + l - 5;
    const Rational c = Rational(1, (n + l - 3) * (n + l - 5));
    for (int r = 1; r <= n; ++r)
      for (int s = 1; s <= n; ++s) {
        const RationalHomogeneous base(fam.Prs[r - 1][s - 1] * c, p);
        const RationalHomogeneous dr = base.partial(r);
        for (int j = 1; j <= n; ++j) fam.krs[r - 1][s - 1][j - 1] = RationalSum(dr.partial(j));
      }
    return fam;
  }

  // n = 2: F^{-1}(xi_r xi_j P_rs / |xi|^{l+1}) through the harmonic pieces H_h of xi_r xi_j P_rs,
  // each contributing H_h(x) / (gamma_{2,m_h,1} |x|^{m_h+1}).
  const Complex phase_l = std::polar(1.0, 1.5 * std::numbers::pi * l);
  for (int r = 1; r <= 2; ++r)
    for (int s = 1; s <= 2; ++s)
      for (int j = 1; j <= 2; ++j) {
        const HomogeneousPoly Q = HomogeneousPoly::coordinate(2, r) * HomogeneousPoly::coordinate(2, j) * fam.Prs[r - 1][s - 1];
        RationalSum comp;
        for (const auto& t : harmonic_decompose(Q)) {
          const int m = t.poly.degree();
          const Complex c = phase_l * 2.0 * std::numbers::pi / gamma_coefficient(2, m, 1.0);
          fam.max_imag_residue = std::max(fam.max_imag_residue, std::abs(c.imag()));
          if (std::abs(c.imag()) > 1e-10) throw std::logic_error("semmes_decompose: complex residue in n=2 kernel");
          comp.add(RationalHomogeneous(t.poly, m + 1, Complex(c.real(), 0.0)));
        }
        fam.krs[r - 1][s - 1][j - 1] = std::move(comp);
      }
  return fam;
}

}  // namespace rieszkit
