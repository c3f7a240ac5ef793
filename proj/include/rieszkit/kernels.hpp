#pragma once

// Odd kernels homogeneous of degree -(n-1), and sampled boundary fields.

#include <functional>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "rieszkit/clifford.hpp"
#include "rieszkit/harmonic.hpp"
#include "rieszkit/mesh.hpp"
#include "rieszkit/spherical.hpp"

namespace rieszkit {

template <int Dim>
struct AmbientConstants {
  static double omega() { return sphere_area(Dim); }
};

template <int Dim>
class KernelSpec {
 public:
  enum class Kind { Riesz, Poly, Series, Sampled };

  /// x_j / (omega_{n-1} |x|^n), stored as the polynomial kernel with P = x_j / omega.
  static KernelSpec riesz(int j) {
    if (j < 1 || j > Dim) throw std::invalid_argument("KernelSpec::riesz: component out of range");
    KernelSpec k = poly(riesz_polynomial(j));
    k.kind_ = Kind::Riesz;
    k.j_ = j;
    return k;
  }

  static HomogeneousPoly riesz_polynomial(int j) {
    return HomogeneousPoly::coordinate(Dim, j) * Rational(1.0 / sphere_area(Dim));
  }

  /// P(x) / |x|^{n-1+l}; P must have odd degree.
  static KernelSpec poly(const HomogeneousPoly& P) {
    if (P.dim() != Dim) throw std::invalid_argument("KernelSpec::poly: dimension mismatch");
    if (P.degree() % 2 == 0) throw std::invalid_argument("KernelSpec::poly: even-degree kernel is not odd");
    KernelSpec k;
    k.kind_ = Kind::Poly;
    k.P_ = P;
    k.cp_ = CompiledPoly(P);
    k.l_ = P.degree();
    return k;
  }

  /// sum_l Y_l(x/|x|) / |x|^{n-1}
  static KernelSpec series(const SphericalExpansion& e) {
    if (e.n != Dim) throw std::invalid_argument("KernelSpec::series: dimension mismatch");
    KernelSpec k;
    k.kind_ = Kind::Series;
    k.series_ = e;
    k.l_ = e.L_max;
    return k;
  }

  /// Arbitrary callable kernel (direct evaluation of a sampled or closed-form k); no symbol.
  static KernelSpec sampled(std::function<double(const Point<Dim>&)> k, std::string name = "sampled") {
    KernelSpec s;
    s.kind_ = Kind::Sampled;
    s.fn_ = std::move(k);
    s.name_ = std::move(name);
    return s;
  }

  Kind kind() const { return kind_; }
  int component() const { return j_; }
  int degree() const { return l_; }
  const HomogeneousPoly& polynomial() const { return P_; }
  const SphericalExpansion& expansion() const { return series_; }

  std::string describe() const {
    switch (kind_) {
      case Kind::Riesz: return "riesz(j=" + std::to_string(j_) + ")";
      case Kind::Poly: return "poly(" + P_.to_string() + ")";
      case Kind::Series: return "series(L_max=" + std::to_string(series_.L_max) + ")";
      default: return name_;
    }
  }

  double operator()(const Point<Dim>& x) const {
    if (kind_ == Kind::Sampled) return fn_(x);
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    if (kind_ == Kind::Series) {
      const double r = std::sqrt(r2);
      Point<Dim> u;
      for (int k = 0; k < Dim; ++k) u[k] = x[k] / r;
      return series_.value(u) / std::pow(r, Dim - 1);
    }
    const double v = cp_(x);
    if constexpr (Dim == 2) {
      if (l_ == 1) return v / r2;
    } else {
      if (l_ == 1) return v / (r2 * std::sqrt(r2));
    }
    return v / std::pow(r2, 0.5 * (Dim - 1 + l_));
  }

  /// Random spot check of oddness and degree -(n-1) homogeneity; returns max relative defect.
  double parity_defect(int samples = 32, std::uint64_t seed = 1) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> G;
    std::uniform_real_distribution<double> L(0.3, 3.0);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
      Point<Dim> x, mx, lx;
      const double lam = L(rng);
      for (int k = 0; k < Dim; ++k) {
        x[k] = G(rng);
        mx[k] = -x[k];
        lx[k] = lam * x[k];
      }
      const double a = (*this)(x);
      const double scale = std::max(std::abs(a), 1e-300);
      worst = std::max(worst, std::abs(a + (*this)(mx)) / scale);
      worst = std::max(worst, std::abs((*this)(lx) - std::pow(lam, 1 - Dim) * a) / scale);
    }
    return worst;
  }

 private:
  Kind kind_ = Kind::Poly;
  int j_ = 0;
  int l_ = 1;
  HomogeneousPoly P_;
  CompiledPoly cp_;
  SphericalExpansion series_;
  std::function<double(const Point<Dim>&)> fn_;
  std::string name_;
};

/// Fourier symbol (1/2i) k^(nu) of the jump relation; real for odd kernels.
template <int Dim>
double jump_symbol(const KernelSpec<Dim>& k, const std::type_identity_t<Point<Dim>>& nu) {
  if (k.kind() == KernelSpec<Dim>::Kind::Sampled) throw std::invalid_argument("jump_symbol: sampled kernels carry no symbol");
  Complex s{};
  if (k.kind() == KernelSpec<Dim>::Kind::Series) {
    const auto& e = k.expansion();
    for (int l = 0; l <= e.L_max; ++l) {
      if (e.mode_norm(l) == 0.0) continue;
      s += gamma_coefficient(Dim, l, 1.0) * e.mode_value(l, nu);
    }
  } else {
    s = kernel_symbol(k.polynomial(), nu);
  }
  const Complex j = s / Complex(0.0, 2.0);
  if (std::abs(j.imag()) > 1e-10 * std::max(1.0, std::abs(j.real())))
    throw std::logic_error("jump_symbol: symbol of an odd kernel must be purely imaginary");
  return j.real();
}

// ---------------------------------------------------------------------------
// fields

template <int Dim>
using CliffordValue = DenseMultivector<Dim>;

template <int Dim>
struct ScalarField {
  std::vector<double> values;
  std::function<double(const Point<Dim>&)> analytic;  // optional closed form for target-adapted quadrature

  static ScalarField from(const BoundaryMesh<Dim>& m, std::function<double(const Point<Dim>&)> f) {
    ScalarField s;
    s.values.reserve(m.size());
    for (const auto& x : m.nodes) s.values.push_back(f(x));
    s.analytic = std::move(f);
    return s;
  }
  static ScalarField constant(const BoundaryMesh<Dim>& m, double c) {
    return from(m, [c](const Point<Dim>&) { return c; });
  }
  void check(const BoundaryMesh<Dim>& m) const {
    if (values.size() != m.size()) throw std::invalid_argument("ScalarField: size does not match mesh");
    for (double v : values)
      if (!std::isfinite(v)) throw std::invalid_argument("ScalarField: non-finite value");
  }
};

template <int Dim>
struct CliffordField {
  std::vector<CliffordValue<Dim>> values;
  std::function<CliffordValue<Dim>(const Point<Dim>&)> analytic;

  static CliffordField from(const BoundaryMesh<Dim>& m, std::function<CliffordValue<Dim>(const Point<Dim>&)> f) {
    CliffordField c;
    c.values.reserve(m.size());
    for (const auto& x : m.nodes) c.values.push_back(f(x));
    c.analytic = std::move(f);
    return c;
  }
  static CliffordField scalar(const ScalarField<Dim>& s) {
    CliffordField c;
    for (double v : s.values) c.values.push_back(CliffordValue<Dim>(v));
    if (s.analytic) {
      auto f = s.analytic;
      c.analytic = [f](const Point<Dim>& x) { return CliffordValue<Dim>(f(x)); };
    }
    return c;
  }
  /// The outward normal as a Clifford vector field.
  static CliffordField normal(const BoundaryMesh<Dim>& m) {
    CliffordField c;
    for (const auto& nu : m.normals) c.values.push_back(CliffordValue<Dim>::embed(nu));
    return c;
  }
  std::vector<Multivector> to_sparse() const {
    std::vector<Multivector> out;
    for (const auto& v : values) out.push_back(v.to_sparse());
    return out;
  }
  void check(const BoundaryMesh<Dim>& m) const {
    if (values.size() != m.size()) throw std::invalid_argument("CliffordField: size does not match mesh");
  }
  double sup_norm() const {
    double s = 0.0;
    for (const auto& v : values) s = std::max(s, v.norm());
    return s;
  }
};

}  // namespace rieszkit
