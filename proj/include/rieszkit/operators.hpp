#pragma once

// Quadrature engines for the boundary singular integrals: truncated, principal
// value and maximal Riesz transforms, polynomial and series kernels, the
// Cauchy-Clifford operators, and harmonic layer potentials.
//
// Principal values are computed on a target node x_i by excluding the node.
// On periodic curves with equispaced parameter the excluded sum misses exactly
// h times the even part of the integrand at the singular point; `Corrected`
// adds that term back, extrapolating (G_{i+m} + G_{i-m})/2 to m = 0 in m^2.
// On the lat-long sphere with a closed-form density the rule is applied on a
// copy of the grid rotated to put x_i at the pole.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "rieszkit/extrapolation.hpp"
#include "rieszkit/kernels.hpp"
#include "rieszkit/parallel.hpp"

namespace rieszkit {

enum class PvMode { Exclusion, Corrected, Truncation };

inline const char* pv_mode_name(PvMode m) {
  switch (m) {
    case PvMode::Exclusion: return "exclusion";
    case PvMode::Corrected: return "corrected";
    default: return "truncation";
  }
}

struct TruncationLadder {
  int levels = 4;
  double eps_min_spacings = 16.0;  // finest epsilon in units of mesh spacing
  double ratio = 0.7;
  double eps0 = 0.0;               // > 0 overrides the finest-level rule
  bool smooth = true;              // C-infinity cutoff psi(|x-y|/eps) instead of per-cell fractions

  std::vector<double> epsilons(double spacing) const {
    std::vector<double> e(static_cast<std::size_t>(levels));
    const double first = eps0 > 0.0 ? eps0 : eps_min_spacings * spacing * std::pow(1.0 / ratio, levels - 1);
    for (int m = 0; m < levels; ++m) e[static_cast<std::size_t>(m)] = first * std::pow(ratio, m);
    return e;
  }
};

struct PvOptions {
  PvMode mode = PvMode::Corrected;
  int correction_points = 4;
  TruncationLadder ladder;
  bool cross_validate = false;
  double cross_tolerance_factor = 10.0;
  ExecPolicy exec;
};

struct OperatorMeta {
  std::string op;
  std::string kernel;
  std::string mesh_label;
  std::size_t N = 0;
  std::string mode;
  bool target_adapted = false;  // corrected or rotated rule actually applied
  bool cross_checked = false;
  double max_disagreement = 0.0;
  double max_uncertainty = 0.0;
  bool warning = false;
  std::vector<std::string> notes;
};

template <class V>
struct OperatorResult {
  std::vector<V> values;
  std::vector<double> uncertainty;
  OperatorMeta meta;
};

namespace detail {

/// Weights c_m with sum_m c_m s(m^2) = s(0) for polynomials of degree < K in u = m^2.
inline std::vector<double> diagonal_weights(int K) {
  std::vector<double> c(static_cast<std::size_t>(K));
  for (int m = 1; m <= K; ++m) {
    double v = 1.0;
    for (int q = 1; q <= K; ++q)
      if (q != m) v *= static_cast<double>(q) * q / (static_cast<double>(q) * q - static_cast<double>(m) * m);
    c[static_cast<std::size_t>(m - 1)] = v;
  }
  return c;
}

template <class V>
V zero_like() {
  return V{};
}

/// sum_{k != i} term(k) plus, when `cw` is non-empty, the diagonal correction.
template <class V, class Term>
V excluded_sum(std::size_t N, std::size_t i, const Term& term, const std::vector<double>& cw) {
  V s = zero_like<V>();
  for (std::size_t k = 0; k < N; ++k)
    if (k != i) s += term(k);
  if (!cw.empty()) {
    V b = zero_like<V>();
    for (std::size_t m = 1; m <= cw.size(); ++m) {
      const std::size_t kp = (i + m) % N, km = (i + N - (m % N)) % N;
      b += (term(kp) + term(km)) * (0.5 * cw[m - 1]);
    }
    s += b;
  }
  return s;
}

/// Fraction of the cell around node k lying outside B(x, eps): linear in the signed
/// distance across the cell, measured along the boundary.
template <int Dim>
inline double cell_fraction(const BoundaryMesh<Dim>& m, std::size_t k, const Point<Dim>& x, double r, double eps) {
  const double ell = Dim == 2 ? m.weights[k] : std::sqrt(m.weights[k]);
  double un = 0.0;
  for (int c = 0; c < Dim; ++c) un += (m.nodes[k][c] - x[c]) * m.normals[k][c];
  un /= r;
  const double g = std::sqrt(std::max(1.0 - un * un, 0.01));
  return std::clamp(0.5 + (r - eps) / (ell * g), 0.0, 1.0);
}

/// Smooth step: 0 for t <= 0, 1 for t >= 1, C-infinity in between.
inline double smooth_cutoff(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

enum class Cutoff { Cell, Sharp, Smooth };

/// All ladder levels of sum_k chi_eps(k) term(k) in a single pass.
template <int Dim, class V, class Term>
std::vector<V> truncated_sums(const BoundaryMesh<Dim>& m, const Point<Dim>& x, const std::vector<double>& eps,
                              const Term& term, Cutoff cut = Cutoff::Cell) {
  std::vector<V> out(eps.size(), zero_like<V>());
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double r = distance<Dim>(x, m.nodes[k]);
    if (r == 0.0) continue;
    bool computed = false;
    V t{};
    for (std::size_t e = 0; e < eps.size(); ++e) {
      const double chi = cut == Cutoff::Sharp    ? (r > eps[e] ? 1.0 : 0.0)
                         : cut == Cutoff::Smooth ? smooth_cutoff(r / eps[e])
                                                 : cell_fraction<Dim>(m, k, x, r, eps[e]);
      if (chi == 0.0) continue;
      if (!computed) {
        t = term(k);
        computed = true;
      }
      out[e] += t * chi;
    }
  }
  return out;
}

/// Orthonormal frame with the third axis along u (unit).
inline std::array<Point<3>, 3> frame_from(const Point<3>& u) {
  Point<3> a = std::abs(u[0]) < 0.9 ? Point<3>{1, 0, 0} : Point<3>{0, 1, 0};
  const double d = dot<3>(a, u);
  Point<3> e1{a[0] - d * u[0], a[1] - d * u[1], a[2] - d * u[2]};
  const double n1 = norm<3>(e1);
  for (double& c : e1) c /= n1;
  const Point<3> e2{u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2], u[0] * e1[1] - u[1] * e1[0]};
  return {e1, e2, u};
}

/// Lat-long rule of the sphere mesh rotated so that the pole sits at x (x on the sphere).
template <class V, class PointTerm>
V rotated_sphere_sum(const SurfaceMesh& m, const Point<3>& x, const PointTerm& term) {
  const double r = m.family.r;
  Point<3> u{x[0] / r, x[1] / r, x[2] / r};
  const double nu = norm<3>(u);
  for (double& c : u) c /= nu;
  const auto F = frame_from(u);
  const int np = m.family.n_phi, nt = m.family.n_theta;
  const double dphi = std::numbers::pi / np, dth = 2.0 * std::numbers::pi / nt;
  V s = zero_like<V>();
  for (int a = 0; a < np; ++a) {
    const double phi = (a + 0.5) * dphi, sp = std::sin(phi), c = std::cos(phi);
    const double w = r * r * sp * dphi * dth;
    for (int b = 0; b < nt; ++b) {
      const double th = b * dth, ct = std::cos(th), st = std::sin(th);
      Point<3> n;
      for (int k = 0; k < 3; ++k) n[k] = sp * ct * F[0][k] + sp * st * F[1][k] + c * F[2][k];
      const Point<3> y{r * n[0], r * n[1], r * n[2]};
      s += term(y, n, w);
    }
  }
  return s;
}

template <int Dim>
bool sphere_rule_available(const BoundaryMesh<Dim>& m) {
  if constexpr (Dim == 3) {
    return m.topology == Topology::LatLong && m.family.family == Family::Sphere && m.family.n_theta % 2 == 0;
  }
  return false;
}

template <int Dim>
bool periodic_rule_available(const BoundaryMesh<Dim>& m) {
  return Dim == 2 && m.topology == Topology::PeriodicCurve;
}

template <int Dim>
bool split_rule_available(const BoundaryMesh<Dim>& m) {
  return Dim == 2 && m.topology == Topology::IrregularPeriodicCurve && m.size() >= 8;
}

// Kernel-split sum on a curve sampled at irregular parameters t_k. An odd kernel of
// degree 1-n behaves like c/(t_i - s) per unit parameter near t_i; c cot((t_i - s)/2)/2
// has zero principal value over the period, so it is subtracted and the smooth
// remainder goes to the nonuniform trapezoid rule, diagonal included.
template <class V, class Term>
V split_sum(const std::vector<std::array<double, 2>>& params, std::size_t i, const Term& term) {
  const std::size_t N = params.size();
  const double two_pi = 2.0 * std::numbers::pi;
  auto t_at = [&](std::ptrdiff_t k) {
    const auto n = static_cast<std::ptrdiff_t>(N);
    const std::ptrdiff_t q = ((k % n) + n) % n;
    return params[static_cast<std::size_t>(q)][0] + two_pi * static_cast<double>((k - q) / n);
  };
  const auto ii = static_cast<std::ptrdiff_t>(i);
  auto dt = [&](std::ptrdiff_t k) { return 0.5 * (t_at(k + 1) - t_at(k - 1)); };
  const double ti = t_at(ii);
  const double dp = t_at(ii + 1) - ti, dm = ti - t_at(ii - 1);
  // density per unit parameter at the two neighbours
  const V gp = term((i + 1) % N) * (1.0 / dt(ii + 1)), gm = term((i + N - 1) % N) * (1.0 / dt(ii - 1));
  const V c = (gp * (-dp) * dm + gm * dm * dp) * (1.0 / (dp + dm));  // (t_i - s) g(s) interpolated to s = t_i
  auto half_cot = [](double u) { return 0.5 / std::tan(0.5 * u); };
  V s = zero_like<V>();
  for (std::size_t k = 0; k < N; ++k)
    if (k != i) {
      const double d = params[i][0] - params[k][0];
      s += term(k) - c * (half_cot(d) * dt(static_cast<std::ptrdiff_t>(k)));
    }
  const V rp = gp - c * half_cot(-dp), rm = gm - c * half_cot(dm);
  s += (rp * dm + rm * dp) * (dt(ii) / (dp + dm));
  return s;
}

template <int Dim>
inline Point<Dim> zero_point() {
  Point<Dim> p{};
  return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// generic singular integral over the boundary at node targets

/// Evaluates, at every node x_i, the singular integral whose node contribution is
/// node_term(i, k) (weight included) and, for target-adapted sphere rules, whose
/// contribution at an arbitrary boundary point is point_term(i, y, nu, w).
template <int Dim, class V, class NodeTerm, class PointTerm>
OperatorResult<V> singular_integral(const BoundaryMesh<Dim>& m, const NodeTerm& node_term, const PointTerm& point_term,
                                    bool have_point_term, const PvOptions& opt) {
  OperatorResult<V> res;
  const std::size_t N = m.size();
  res.values.assign(N, V{});
  res.uncertainty.assign(N, 0.0);
  res.meta.mesh_label = m.label;
  res.meta.N = N;
  res.meta.mode = pv_mode_name(opt.mode);

  auto run_truncation = [&](std::vector<V>& vals, std::vector<double>& unc) {
    const auto eps = opt.ladder.epsilons(m.spacing);
    vals.assign(N, V{});
    unc.assign(N, 0.0);
    parallel_for(N, opt.exec, [&](std::size_t i) {
      auto sums = detail::truncated_sums<Dim, V>(m, m.nodes[i], eps, [&](std::size_t k) { return node_term(i, k); },
                                                 opt.ladder.smooth ? detail::Cutoff::Smooth : detail::Cutoff::Cell);
      auto ex = extrapolate_to_zero(eps, sums);
      vals[i] = ex.value;
      unc[i] = ex.uncertainty;
    });
    // The per-node estimate can vanish by coincidence; the error it bounds is a
    // property of the whole ball of radius eps_min, so take the max over that ball.
    const double r = *std::min_element(eps.begin(), eps.end());
    const std::vector<double> raw = unc;
    parallel_for(N, opt.exec, [&](std::size_t i) {
      for (std::size_t k = 0; k < N; ++k)
        if (raw[k] > unc[i] && distance<Dim>(m.nodes[i], m.nodes[k]) <= r) unc[i] = raw[k];
    });
  };

  if (opt.mode == PvMode::Truncation) {
    run_truncation(res.values, res.uncertainty);
    for (double u : res.uncertainty) res.meta.max_uncertainty = std::max(res.meta.max_uncertainty, u);
    return res;
  }

  const bool periodic = opt.mode == PvMode::Corrected && detail::periodic_rule_available(m);
  const bool sphere = opt.mode == PvMode::Corrected && have_point_term && detail::sphere_rule_available(m);
  const bool split = opt.mode == PvMode::Corrected && detail::split_rule_available(m);
  const std::vector<double> cw = periodic ? detail::diagonal_weights(opt.correction_points) : std::vector<double>{};
  res.meta.target_adapted = periodic || sphere || split;
  if (opt.mode == PvMode::Corrected && !res.meta.target_adapted) {
    res.meta.mode = "exclusion";
    res.meta.notes.push_back("no target-adapted rule for this mesh/density; plain node exclusion used");
  }
  parallel_for(N, opt.exec, [&](std::size_t i) {
    if (sphere) {
      if constexpr (Dim == 3) {
        res.values[i] = detail::rotated_sphere_sum<V>(
            m, m.nodes[i], [&](const Point<3>& y, const Point<3>& nu, double w) { return point_term(i, y, nu, w); });
      }
    } else if (split) {
      res.values[i] = detail::split_sum<V>(m.params, i, [&](std::size_t k) { return node_term(i, k); });
    } else {
      res.values[i] = detail::excluded_sum<V>(N, i, [&](std::size_t k) { return node_term(i, k); }, cw);
    }
  });

  if (opt.cross_validate) {
    std::vector<V> tv;
    std::vector<double> tu;
    run_truncation(tv, tu);
    res.meta.cross_checked = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double d = detail::magnitude(res.values[i] - tv[i]);
      res.uncertainty[i] = tu[i];
      res.meta.max_disagreement = std::max(res.meta.max_disagreement, d);
      res.meta.max_uncertainty = std::max(res.meta.max_uncertainty, tu[i]);
      if (d > opt.cross_tolerance_factor * tu[i] + 1e-12) res.meta.warning = true;
    }
    if (res.meta.warning) res.meta.notes.push_back("exclusion and truncation modes disagree beyond tolerance");
  }
  return res;
}

// ---------------------------------------------------------------------------
// Riesz and polynomial-kernel transforms

/// (1/omega) sum over nodes with |x_i - y| > eps of (x_i - y)_j/|x_i - y|^n f w, at node i.
/// The cutoff is applied per quadrature cell (fractional cells at the sphere |x - y| = eps)
/// unless `sharp` is set.
template <int Dim>
double riesz_truncated(const BoundaryMesh<Dim>& m, int j, const ScalarField<Dim>& f, double eps, std::size_t i,
                       bool sharp = false) {
  if (!(eps > 0.0)) throw std::invalid_argument("riesz_truncated: eps must be positive");
  if (j < 1 || j > Dim) throw std::invalid_argument("riesz_truncated: component out of range");
  f.check(m);
  const auto K = KernelSpec<Dim>::riesz(j);
  const auto& x = m.nodes.at(i);
  auto s = detail::truncated_sums<Dim, double>(m, x, {eps},
                                              [&](std::size_t k) { return K(sub<Dim>(x, m.nodes[k])) * f.values[k] * m.weights[k]; },
                                              sharp ? detail::Cutoff::Sharp : detail::Cutoff::Cell);
  return s[0];
}

namespace detail {
template <int Dim>
OperatorResult<double> kernel_pv(const BoundaryMesh<Dim>& m, const KernelSpec<Dim>& K, const ScalarField<Dim>& f,
                                 const PvOptions& opt) {
  auto node_term = [&](std::size_t i, std::size_t k) {
    return K(sub<Dim>(m.nodes[i], m.nodes[k])) * f.values[k] * m.weights[k];
  };
  auto point_term = [&](std::size_t i, const Point<Dim>& y, const Point<Dim>&, double w) {
    return K(sub<Dim>(m.nodes[i], y)) * f.analytic(y) * w;
  };
  auto res = singular_integral<Dim, double>(m, node_term, point_term, static_cast<bool>(f.analytic), opt);
  res.meta.op = "generalized_pv";
  res.meta.kernel = K.describe();
  return res;
}
}  // namespace detail

template <int Dim>
OperatorResult<double> generalized_pv(const BoundaryMesh<Dim>& m, const KernelSpec<Dim>& K, const ScalarField<Dim>& f,
                                      const PvOptions& opt = {}) {
  f.check(m);
  if (K.kind() == KernelSpec<Dim>::Kind::Series) {
    // mode-by-mode: each Y_l(x/|x|)/|x|^{n-1} is its own polynomial-kernel operator
    const auto& e = K.expansion();
    OperatorResult<double> total;
    total.values.assign(m.size(), 0.0);
    total.uncertainty.assign(m.size(), 0.0);
    int used = 0;
    const double floor = 1e-13 * e.l2_norm();
    for (int l = 0; l <= e.L_max; ++l) {
      if (e.mode_norm(l) <= floor) continue;
      if (l % 2 == 0) throw std::invalid_argument("generalized_pv: even mode in a series kernel");
      auto part = detail::kernel_pv(m, KernelSpec<Dim>::series(e.single_mode(l)), f, opt);
      for (std::size_t i = 0; i < m.size(); ++i) {
        total.values[i] += part.values[i];
        total.uncertainty[i] += part.uncertainty[i];
      }
      const bool warned = total.meta.warning;
      const double dis = total.meta.max_disagreement, unc = total.meta.max_uncertainty;
      total.meta = part.meta;
      total.meta.warning = warned || part.meta.warning;
      total.meta.max_disagreement = std::max(dis, part.meta.max_disagreement);
      total.meta.max_uncertainty = std::max(unc, part.meta.max_uncertainty);
      ++used;
    }
    total.meta.op = "generalized_pv";
    total.meta.kernel = K.describe();
    total.meta.notes.push_back("summed over " + std::to_string(used) + " modes");
    return total;
  }
  return detail::kernel_pv(m, K, f, opt);
}

template <int Dim>
OperatorResult<double> riesz_pv(const BoundaryMesh<Dim>& m, int j, const ScalarField<Dim>& f, const PvOptions& opt = {}) {
  auto res = generalized_pv(m, KernelSpec<Dim>::riesz(j), f, opt);
  res.meta.op = "riesz_pv";
  return res;
}

/// Per-node sup over the ladder of |R_{j,eps} f|.
template <int Dim>
std::vector<double> riesz_maximal(const BoundaryMesh<Dim>& m, int j, const ScalarField<Dim>& f,
                                  const std::vector<double>& eps_ladder, bool sharp = false) {
  if (eps_ladder.empty()) throw std::invalid_argument("riesz_maximal: empty ladder");
  for (std::size_t k = 1; k < eps_ladder.size(); ++k)
    if (!(eps_ladder[k] < eps_ladder[k - 1])) throw std::invalid_argument("riesz_maximal: ladder must decrease");
  f.check(m);
  const auto K = KernelSpec<Dim>::riesz(j);
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& x = m.nodes[i];
    auto s = detail::truncated_sums<Dim, double>(
        m, x, eps_ladder, [&](std::size_t k) { return K(sub<Dim>(x, m.nodes[k])) * f.values[k] * m.weights[k]; },
        sharp ? detail::Cutoff::Sharp : detail::Cutoff::Cell);
    for (double v : s) out[i] = std::max(out[i], std::abs(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// boundary-to-domain

template <int Dim>
struct DomainEvaluation {
  std::vector<double> values;
  std::vector<Point<Dim>> gradients;
  std::vector<double> rho;
  std::vector<bool> proximity_warning;
  double sup_value = 0.0;
  double sup_weighted_gradient = 0.0;  // sup rho^{1-alpha} |grad|
};

template <int Dim>
double plain_domain_sum(const BoundaryMesh<Dim>& m, const KernelSpec<Dim>& K, const std::vector<double>& f,
                        const std::type_identity_t<Point<Dim>>& z) {
  double s = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) s += K(sub<Dim>(z, m.nodes[k])) * f[k] * m.weights[k];
  return s;
}

/// T f(z) = int k(z - y) f(y) dsigma(y) by plain quadrature, with the diagnostic pair
/// (sup |Tf|, sup rho^{1-alpha} |grad Tf|); gradients by central differences with
/// step min(rho/8, spacing).
template <int Dim>
DomainEvaluation<Dim> boundary_to_domain(const BoundaryMesh<Dim>& m, const KernelSpec<Dim>& K, const ScalarField<Dim>& f,
                                         const std::type_identity_t<std::vector<Point<Dim>>>& points, double alpha = 0.5,
                                         const ExecPolicy& exec = {}) {
  f.check(m);
  DomainEvaluation<Dim> ev;
  const std::size_t P = points.size();
  ev.values.assign(P, 0.0);
  ev.gradients.assign(P, Point<Dim>{});
  ev.rho.assign(P, 0.0);
  ev.proximity_warning.assign(P, false);
  parallel_for(P, exec, [&](std::size_t p) {
    const auto& z = points[p];
    const double rho = m.nearest(z).second;
    if (!(rho > 0.0)) throw std::invalid_argument("boundary_to_domain: evaluation point lies on the boundary");
    ev.rho[p] = rho;
    ev.proximity_warning[p] = rho < 2.0 * m.spacing;
    ev.values[p] = plain_domain_sum(m, K, f.values, z);
    const double h = std::min(rho / 8.0, m.spacing);
    for (int c = 0; c < Dim; ++c) {
      auto zp = z, zm = z;
      zp[c] += h;
      zm[c] -= h;
      ev.gradients[p][c] = (plain_domain_sum(m, K, f.values, zp) - plain_domain_sum(m, K, f.values, zm)) / (2.0 * h);
    }
  });
  for (std::size_t p = 0; p < P; ++p) {
    ev.sup_value = std::max(ev.sup_value, std::abs(ev.values[p]));
    ev.sup_weighted_gradient =
        std::max(ev.sup_weighted_gradient, std::pow(ev.rho[p], 1.0 - alpha) * norm<Dim>(ev.gradients[p]));
  }
  return ev;
}

// ---------------------------------------------------------------------------
// Cauchy-Clifford operators

namespace detail {

/// (x - y)/|x - y|^n as a Clifford vector.
template <int Dim>
inline CliffordValue<Dim> cauchy_kernel(const Point<Dim>& x, const Point<Dim>& y) {
  const auto d = sub<Dim>(x, y);
  double r2 = 0.0;
  for (double v : d) r2 += v * v;
  const double s = Dim == 2 ? 1.0 / r2 : 1.0 / (r2 * std::sqrt(r2));
  Point<Dim> k;
  for (int c = 0; c < Dim; ++c) k[c] = d[c] * s;
  return CliffordValue<Dim>::embed(k);
}

template <int Dim>
inline CliffordValue<Dim> cauchy_term(const Point<Dim>& x, const Point<Dim>& y, const Point<Dim>& nu,
                                      const CliffordValue<Dim>& f, double w) {
  return (cauchy_kernel<Dim>(x, y) * CliffordValue<Dim>::embed(nu)) * f * w;
}

}  // namespace detail

template <int Dim>
struct NearBoundary {
  bool subtract = false;  // Cf(z) = f(x*) C1(z) + C(f - f(x*))(z), x* the nearest node
  int upsample = 1;       // trigonometric resampling factor (periodic curve families only)
};

/// (1/omega) sum_k (z - y_k)/|z - y_k|^n nu_k f_k w_k at off-boundary points.
template <int Dim>
std::vector<CliffordValue<Dim>> cauchy_domain(const BoundaryMesh<Dim>& m, const CliffordField<Dim>& f,
                                              const std::type_identity_t<std::vector<Point<Dim>>>& points, const NearBoundary<Dim>& near = {},
                                              std::vector<bool>* proximity = nullptr, const ExecPolicy& exec = {}) {
  f.check(m);
  const double inv_omega = 1.0 / sphere_area(Dim);
  const BoundaryMesh<Dim>* mesh = &m;
  const std::vector<CliffordValue<Dim>>* vals = &f.values;
  BoundaryMesh<Dim> fine;
  std::vector<CliffordValue<Dim>> fine_vals;
  if (near.upsample > 1) {
    if constexpr (Dim == 2) {
      if (m.topology != Topology::PeriodicCurve) throw std::invalid_argument("cauchy_domain: upsampling needs a periodic curve family");
      fine = refine(m, near.upsample);
      if (f.analytic) {
        for (const auto& y : fine.nodes) fine_vals.push_back(f.analytic(y));
      } else {
        fine_vals.assign(fine.size(), CliffordValue<Dim>{});
        std::vector<double> comp(m.size());
        for (std::size_t b = 0; b < static_cast<std::size_t>(CliffordValue<Dim>::kSize); ++b) {
          for (std::size_t k = 0; k < m.size(); ++k) comp[k] = f.values[k][b];
          const auto up = trig_upsample(comp, near.upsample);
          for (std::size_t k = 0; k < fine.size(); ++k) fine_vals[k][b] = up[k];
        }
      }
      mesh = &fine;
      vals = &fine_vals;
    } else {
      throw std::invalid_argument("cauchy_domain: upsampling is available for curves only");
    }
  }
  std::vector<CliffordValue<Dim>> out(points.size());
  if (proximity) proximity->assign(points.size(), false);
  parallel_for(points.size(), exec, [&](std::size_t p) {
    const auto& z = points[p];
    auto [kn, rho] = mesh->nearest(z);
    if (!(rho > 0.0)) throw std::invalid_argument("cauchy_domain: evaluation point lies on the boundary");
    if (proximity) (*proximity)[p] = m.nearest(z).second < 2.0 * m.spacing;
    CliffordValue<Dim> s{};
    if (near.subtract) {
      const auto fstar = (*vals)[kn];
      for (std::size_t k = 0; k < mesh->size(); ++k)
        s += detail::cauchy_term<Dim>(z, mesh->nodes[k], mesh->normals[k], (*vals)[k] - fstar, mesh->weights[k]);
      s *= inv_omega;
      if (mesh->bounded) s += fstar;  // C1 = 1 inside a bounded domain, 0 in the unbounded one
    } else {
      for (std::size_t k = 0; k < mesh->size(); ++k)
        s += detail::cauchy_term<Dim>(z, mesh->nodes[k], mesh->normals[k], (*vals)[k], mesh->weights[k]);
      s *= inv_omega;
    }
    out[p] = s;
  });
  return out;
}

/// Subtracted principal value: C^pv f(x_i) = +-f_i/2 + (1/omega) sum (x_i - y_k)/|x_i - y_k|^n nu_k (f_k - f_i) w_k,
/// + for bounded and - for unbounded domains.
template <int Dim>
OperatorResult<CliffordValue<Dim>> cauchy_pv(const BoundaryMesh<Dim>& m, const CliffordField<Dim>& f,
                                             const PvOptions& opt = {}) {
  f.check(m);
  using V = CliffordValue<Dim>;
  const double inv_omega = 1.0 / sphere_area(Dim);
  auto node_term = [&](std::size_t i, std::size_t k) {
    return detail::cauchy_term<Dim>(m.nodes[i], m.nodes[k], m.normals[k], f.values[k] - f.values[i], m.weights[k]);
  };
  auto point_term = [&](std::size_t i, const Point<Dim>& y, const Point<Dim>& nu, double w) {
    Point<Dim> nn = nu;  // the rotated rule produces the ball's outward normal
    if (!m.bounded)
      for (int c = 0; c < Dim; ++c) nn[c] = -nu[c];
    return detail::cauchy_term<Dim>(m.nodes[i], y, nn, f.analytic(y) - f.values[i], w);
  };
  PvOptions o = opt;
  if (o.mode == PvMode::Truncation) o.mode = PvMode::Corrected;  // raw truncation is cauchy_pv_truncated
  auto res = singular_integral<Dim, V>(m, node_term, point_term, static_cast<bool>(f.analytic), o);
  const double half = m.bounded ? 0.5 : -0.5;
  for (std::size_t i = 0; i < m.size(); ++i) res.values[i] = res.values[i] * inv_omega + f.values[i] * half;
  res.meta.op = "cauchy_pv";
  res.meta.kernel = "cauchy-clifford";
  return res;
}

/// Cauchy principal value from the raw kernel by epsilon-truncation and extrapolation
/// (no subtraction, no analytic 1/2): the independent cross-check of cauchy_pv.
template <int Dim>
OperatorResult<CliffordValue<Dim>> cauchy_pv_truncated(const BoundaryMesh<Dim>& m, const CliffordField<Dim>& f,
                                                       const PvOptions& opt = {}) {
  f.check(m);
  using V = CliffordValue<Dim>;
  const double inv_omega = 1.0 / sphere_area(Dim);
  auto node_term = [&](std::size_t i, std::size_t k) {
    return detail::cauchy_term<Dim>(m.nodes[i], m.nodes[k], m.normals[k], f.values[k], m.weights[k]) * inv_omega;
  };
  PvOptions o = opt;
  o.mode = PvMode::Truncation;
  auto res = singular_integral<Dim, V>(m, node_term, [](auto...) { return V{}; }, false, o);
  res.meta.op = "cauchy_pv_truncated";
  res.meta.kernel = "cauchy-clifford";
  return res;
}

template <int Dim>
struct NormalRecovery {
  std::vector<CliffordValue<Dim>> recovered;
  std::vector<double> error;          // |nu_rec - nu| (full Clifford norm)
  std::vector<double> angular_error;  // angle between vector part of nu_rec and nu
  double max_error = 0.0;
  double max_angular_error = 0.0;
};

/// nu_rec = -4 C^pv( sum_j (R_j^pv 1) e_j ).
template <int Dim>
NormalRecovery<Dim> recover_normal(const BoundaryMesh<Dim>& m, const PvOptions& opt = {}) {
  auto one = ScalarField<Dim>::constant(m, 1.0);
  CliffordField<Dim> g;
  g.values.assign(m.size(), CliffordValue<Dim>{});
  for (int j = 1; j <= Dim; ++j) {
    auto r = riesz_pv(m, j, one, opt);
    for (std::size_t i = 0; i < m.size(); ++i) g.values[i][std::size_t{1} << (j - 1)] = r.values[i];
  }
  auto c = cauchy_pv(m, g, opt);
  NormalRecovery<Dim> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto rec = c.values[i] * -4.0;
    const auto nu = CliffordValue<Dim>::embed(m.normals[i]);
    out.recovered.push_back(rec);
    const double e = (rec - nu).norm();
    const auto v = rec.vector_part();
    // atan2 of the tangential and normal parts; acos loses half the digits near 0
    const double vn = dot<Dim>(v, m.normals[i]);
    Point<Dim> tang = v;
    for (int c = 0; c < Dim; ++c) tang[c] -= vn * m.normals[i][c];
    const double ang = std::atan2(norm<Dim>(tang), vn);
    out.error.push_back(e);
    out.angular_error.push_back(ang);
    out.max_error = std::max(out.max_error, e);
    out.max_angular_error = std::max(out.max_angular_error, ang);
  }
  return out;
}

// ---------------------------------------------------------------------------
// layer potentials

/// Fundamental solution of the Laplacian: ln|x|/(2 pi) for n = 2, 1/(omega (2-n) |x|^{n-2}) otherwise.
template <int Dim>
inline double fundamental_solution(const Point<Dim>& x) {
  const double r = norm<Dim>(x);
  if constexpr (Dim == 2) {
    return std::log(r) / (2.0 * std::numbers::pi);
  } else {
    return 1.0 / (sphere_area(Dim) * (2.0 - Dim) * std::pow(r, Dim - 2));
  }
}

template <int Dim>
std::vector<double> single_layer(const BoundaryMesh<Dim>& m, const ScalarField<Dim>& f, const std::type_identity_t<std::vector<Point<Dim>>>& points) {
  f.check(m);
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t k = 0; k < m.size(); ++k)
      out[p] += fundamental_solution<Dim>(sub<Dim>(points[p], m.nodes[k])) * f.values[k] * m.weights[k];
  return out;
}

/// (1/omega) int <nu(y), y - x>/|x - y|^n f(y) dsigma(y).
template <int Dim>
std::vector<double> double_layer(const BoundaryMesh<Dim>& m, const ScalarField<Dim>& f, const std::type_identity_t<std::vector<Point<Dim>>>& points) {
  f.check(m);
  const double inv_omega = 1.0 / sphere_area(Dim);
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t p = 0; p < points.size(); ++p) {
    double s = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
      const auto d = sub<Dim>(m.nodes[k], points[p]);
      const double r = norm<Dim>(d);
      s += dot<Dim>(m.normals[k], d) / std::pow(r, Dim) * f.values[k] * m.weights[k];
    }
    out[p] = s * inv_omega;
  }
  return out;
}

template <int Dim>
struct GradSingleLayer {
  std::vector<Point<Dim>> finite_difference;  // 4th-order central differences of S f
  std::vector<Point<Dim>> clifford;           // vector part of -C(nu f)
  std::vector<double> relative_residual;
  double max_relative_residual = 0.0;
};

template <int Dim>
GradSingleLayer<Dim> grad_single_layer(const BoundaryMesh<Dim>& m, const ScalarField<Dim>& f,
                                       const std::type_identity_t<std::vector<Point<Dim>>>& points, double step = 0.0) {
  f.check(m);
  GradSingleLayer<Dim> g;
  CliffordField<Dim> nf;
  for (std::size_t k = 0; k < m.size(); ++k) nf.values.push_back(CliffordValue<Dim>::embed(m.normals[k]) * f.values[k]);
  const auto C = cauchy_domain(m, nf, points);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double rho = m.nearest(points[p]).second;
    const double h = step > 0.0 ? step : std::min(rho / 8.0, 1e-2);
    Point<Dim> fd{};
    for (int c = 0; c < Dim; ++c) {
      std::vector<Point<Dim>> st(4, points[p]);
      st[0][c] += 2 * h;
      st[1][c] += h;
      st[2][c] -= h;
      st[3][c] -= 2 * h;
      const auto s = single_layer(m, f, st);
      fd[c] = (-s[0] + 8.0 * s[1] - 8.0 * s[2] + s[3]) / (12.0 * h);
    }
    const auto cv = (C[p] * -1.0).vector_part();
    g.finite_difference.push_back(fd);
    g.clifford.push_back(cv);
  }
  // residuals relative to the largest gradient over the probe set (symmetric probes may have grad = 0)
  double scale = 0.0;
  for (const auto& c : g.clifford) scale = std::max(scale, norm<Dim>(c));
  scale = std::max(scale, 1e-300);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double rel = norm<Dim>(sub<Dim>(g.finite_difference[p], g.clifford[p])) / scale;
    g.relative_residual.push_back(rel);
    g.max_relative_residual = std::max(g.max_relative_residual, rel);
  }
  return g;
}

// ---------------------------------------------------------------------------
// nontangential traces

/// Extrapolates evaluator(z_k) along the probe ladder to depth 0.
template <int Dim, class V, class Evaluator>
Extrapolated<V> nontangential_trace(const Evaluator& evaluator, const ProbeSet<Dim>& probes) {
  if (probes.points.size() < 3) throw std::invalid_argument("nontangential_trace: need at least 3 ladder depths");
  std::vector<V> vals;
  for (const auto& z : probes.points) vals.push_back(evaluator(z));
  return richardson_ladder(probes.depths, vals);
}

}  // namespace rieszkit
