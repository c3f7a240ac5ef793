#pragma once

// Discrete Hölder, BMO/VMO and Besov estimators over boundary node sets, and
// the refinement-study classifier (bounded vs divergent seminorms under mesh
// refinement).

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "rieszkit/operators.hpp"

namespace rieszkit {

struct SeminormReport {
  std::string kind;  // "holder" | "bmo" | "besov"
  double value = 0.0;
  double exponent = 0.0;  // alpha for Hölder, p for BMO and Besov
  double smoothness = 0.0;  // s for Besov
  std::size_t arg_i = 0, arg_k = 0;  // maximizing pair (Hölder) or node (BMO)
  double arg_separation = 0.0;
  std::size_t admissible_pairs = 0;
  std::vector<double> radii;    // VMO profile abscissae
  std::vector<double> profile;  // sup over nodes of the mean oscillation at each radius
  double seminorm_part = 0.0;   // Besov double sum, p-th root
  double lp_part = 0.0;         // Besov L^p term
  bool warning = false;
  std::vector<std::string> notes;
  std::size_t N = 0;
};

namespace detail {
inline double value_distance(double a, double b) { return std::abs(a - b); }
template <int N>
inline double value_distance(const DenseMultivector<N>& a, const DenseMultivector<N>& b) {
  return (a - b).norm();
}
inline double value_abs(double a) { return std::abs(a); }
template <int N>
inline double value_abs(const DenseMultivector<N>& a) {
  return a.norm();
}
}  // namespace detail

/// max over pairs with |x - y| >= min_sep of |f(x) - f(y)| / |x - y|^alpha.
template <int Dim, class V>
SeminormReport holder_seminorm(const std::vector<Point<Dim>>& nodes, const std::vector<V>& f, double alpha,
                               double min_sep) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("holder_seminorm: alpha must lie in (0,1)");
  if (!(min_sep >= 0.0)) throw std::invalid_argument("holder_seminorm: min_sep must be nonnegative");
  if (nodes.size() != f.size()) throw std::invalid_argument("holder_seminorm: size mismatch");
  SeminormReport r;
  r.kind = "holder";
  r.exponent = alpha;
  r.N = nodes.size();
  const double sep2 = min_sep * min_sep;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t k = i + 1; k < nodes.size(); ++k) {
      double d2 = 0.0;
      for (int c = 0; c < Dim; ++c) d2 += (nodes[i][c] - nodes[k][c]) * (nodes[i][c] - nodes[k][c]);
      if (d2 < sep2 || d2 == 0.0) continue;
      ++r.admissible_pairs;
      const double q = detail::value_distance(f[i], f[k]) * std::exp(-0.5 * alpha * std::log(d2));
      if (q > r.value || r.admissible_pairs == 1) {
        r.value = q;
        r.arg_i = i;
        r.arg_k = k;
        r.arg_separation = std::sqrt(d2);
      }
    }
  if (r.admissible_pairs == 0) throw std::invalid_argument("holder_seminorm: fewer than 2 admissible nodes");
  return r;
}

template <int Dim, class V>
SeminormReport holder_seminorm(const BoundaryMesh<Dim>& m, const std::vector<V>& f, double alpha, double min_sep = -1.0) {
  return holder_seminorm<Dim, V>(m.nodes, f, alpha, min_sep < 0.0 ? 3.0 * m.spacing : min_sep);
}

/// Sharp maximal function f^{#,p} over mesh balls B(x_i, r) (weights as masses).
/// value = sup over nodes and radii; profile = sup over nodes at each radius.
template <int Dim, class V>
SeminormReport bmo_sharp(const BoundaryMesh<Dim>& m, const std::vector<V>& f, const std::vector<double>& radii,
                         double p = 1.0) {
  if (f.size() != m.size()) throw std::invalid_argument("bmo_sharp: size mismatch");
  if (!(p >= 1.0)) throw std::invalid_argument("bmo_sharp: p must be >= 1");
  SeminormReport r;
  r.kind = "bmo";
  r.exponent = p;
  r.N = m.size();
  for (double rad : radii) {
    if (!(rad > 0.0)) throw std::invalid_argument("bmo_sharp: radii must be positive");
    double sup = 0.0;
    std::size_t arg = 0;
    bool any = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
      double mass = 0.0;
      V mean{};
      std::size_t count = 0;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (distance<Dim>(m.nodes[i], m.nodes[k]) < rad) {
          mass += m.weights[k];
          mean += f[k] * m.weights[k];
          ++count;
        }
      if (count < 2) continue;
      mean = mean * (1.0 / mass);
      double osc = 0.0;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (distance<Dim>(m.nodes[i], m.nodes[k]) < rad) osc += std::pow(detail::value_distance(f[k], mean), p) * m.weights[k];
      osc = std::pow(osc / mass, 1.0 / p);
      any = true;
      if (osc > sup) {
        sup = osc;
        arg = i;
      }
    }
    if (!any) {
      r.notes.push_back("radius " + std::to_string(rad) + " skipped: balls hold a single node");
      continue;
    }
    r.radii.push_back(rad);
    r.profile.push_back(sup);
    if (sup >= r.value) {
      r.value = sup;
      r.arg_i = arg;
    }
  }
  return r;
}

/// (sum_i sum_{k != i} |f_i - f_k|^p / |x_i - x_k|^{n-1+sp} w_i w_k)^{1/p} plus the L^p term.
template <int Dim, class V>
SeminormReport besov_seminorm(const BoundaryMesh<Dim>& m, const std::vector<V>& f, double p, double s) {
  if (f.size() != m.size()) throw std::invalid_argument("besov_seminorm: size mismatch");
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("besov_seminorm: need 1 <= p < infinity");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("besov_seminorm: s must lie in (0,1)");
  SeminormReport r;
  r.kind = "besov";
  r.exponent = p;
  r.smoothness = s;
  r.N = m.size();
  const double q = 0.5 * (Dim - 1 + s * p);
  double dbl = 0.0, lp = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    lp += std::pow(detail::value_abs(f[i]), p) * m.weights[i];
    double row = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == i) continue;
      double d2 = 0.0;
      for (int c = 0; c < Dim; ++c) d2 += (m.nodes[i][c] - m.nodes[k][c]) * (m.nodes[i][c] - m.nodes[k][c]);
      if (d2 == 0.0) continue;
      row += std::pow(detail::value_distance(f[i], f[k]), p) * std::exp(-q * std::log(d2)) * m.weights[k];
    }
    dbl += row * m.weights[i];
  }
  r.seminorm_part = std::pow(dbl, 1.0 / p);
  r.lp_part = std::pow(lp, 1.0 / p);
  r.value = r.seminorm_part + r.lp_part;
  if (s * p <= Dim - 1) {
    r.warning = true;
    r.notes.push_back("sp <= n-1: outside the Hölder embedding window");
  }
  return r;
}

// ---------------------------------------------------------------------------
// refinement classifier

enum class StudyOperator { Riesz, Normal, RecoveredNormal };

inline StudyOperator parse_study_operator(const std::string& s) {
  if (s == "riesz") return StudyOperator::Riesz;
  if (s == "normal") return StudyOperator::Normal;
  if (s == "recover_normal") return StudyOperator::RecoveredNormal;
  throw std::invalid_argument("unknown study operator '" + s + "' (riesz | normal | recover_normal)");
}

struct StudyConfig {
  FamilyParams family;  // N / M fields are overridden per level
  StudyOperator op = StudyOperator::Riesz;
  double alpha = 0.5;
  std::vector<int> levels{256, 1024, 4096};  // node counts (square: total nodes, 4 edges)
  double min_sep_spacings = 3.0;
  double bounded_ratio = 1.1;
  double divergent_ratio = 1.5;
  // nodes moved by U(-jitter, jitter) parameter steps (the square has no smooth
  // parametrization, so its jittered levels use the truncation mode)
  double jitter = 0.0;
  std::uint64_t jitter_seed = 1;
  ExecPolicy exec;
};

struct StudyLevel {
  int N = 0;
  double spacing = 0.0;
  double min_sep = 0.0;
  double seminorm = 0.0;
  double arg_separation = 0.0;
  double sup = 0.0;
};

struct StudyResult {
  std::string family;
  std::string op;
  double alpha = 0.0;
  std::vector<StudyLevel> levels;
  std::vector<double> ratios;
  std::string verdict;  // "bounded" | "divergent" | "inconclusive"
  std::vector<CliffordValue<2>> finest_values;  // operator output on the last level
  CurveMesh finest_mesh;
};

inline CurveMesh make_family_curve(FamilyParams f, int N, std::span<const double> offsets = {}) {
  switch (f.family) {
    case Family::Ellipse: return make_ellipse(f.a, f.b, N, offsets);
    case Family::BumpCircle: return make_bump_circle(f.alpha, f.A, N, f.width, offsets);
    case Family::Square: return make_square(f.side, std::max(4, N / 4), offsets);
    default: throw std::invalid_argument("refinement_study: family has no curve builder");
  }
}

inline std::string classify_ratios(const std::vector<double>& ratios, double bounded, double divergent) {
  const bool all_b = std::all_of(ratios.begin(), ratios.end(), [&](double r) { return r <= bounded; });
  const bool all_d = std::all_of(ratios.begin(), ratios.end(), [&](double r) { return r >= divergent; });
  return all_b ? "bounded" : (all_d ? "divergent" : "inconclusive");
}

/// Operator output per level (as a Clifford vector field), its Hölder seminorm with
/// min_sep tied to each level's spacing, successive ratios and the verdict.
inline StudyResult refinement_study(const StudyConfig& cfg) {
  if (cfg.levels.size() < 3) throw std::invalid_argument("refinement_study: need at least 3 levels");
  if (!(cfg.jitter >= 0.0 && cfg.jitter < 0.5)) throw std::invalid_argument("refinement_study: jitter must lie in [0, 1/2)");
  StudyResult res;
  res.family = family_name(cfg.family.family);
  res.op = cfg.op == StudyOperator::Riesz ? "riesz" : cfg.op == StudyOperator::Normal ? "normal" : "recover_normal";
  res.alpha = cfg.alpha;
  PvOptions pv;
  pv.exec = cfg.exec;
  if (cfg.jitter > 0.0 && cfg.family.family == Family::Square) pv.mode = PvMode::Truncation;
  std::mt19937_64 rng(cfg.jitter_seed);
  std::uniform_real_distribution<double> U(-cfg.jitter, cfg.jitter);
  for (int N : cfg.levels) {
    std::vector<double> offsets;
    if (cfg.jitter > 0.0) {
      offsets.resize(cfg.family.family == Family::Square ? static_cast<std::size_t>(4 * std::max(4, N / 4)) : static_cast<std::size_t>(N));
      for (double& d : offsets) d = U(rng);
    }
    const auto m = make_family_curve(cfg.family, N, offsets);
    std::vector<CliffordValue<2>> out(m.size());
    if (cfg.op == StudyOperator::Normal) {
      for (std::size_t i = 0; i < m.size(); ++i) out[i] = CliffordValue<2>::embed(m.normals[i]);
    } else if (cfg.op == StudyOperator::Riesz) {
      const auto one = ScalarField<2>::constant(m, 1.0);
      for (int j = 1; j <= 2; ++j) {
        const auto r = riesz_pv(m, j, one, pv);
        for (std::size_t i = 0; i < m.size(); ++i) out[i][std::size_t{1} << (j - 1)] = r.values[i];
      }
    } else {
      out = recover_normal(m, pv).recovered;
    }
    StudyLevel L;
    L.N = static_cast<int>(m.size());
    L.spacing = m.spacing;
    L.min_sep = cfg.min_sep_spacings * m.spacing;
    const auto h = holder_seminorm<2>(m.nodes, out, cfg.alpha, L.min_sep);
    L.seminorm = h.value;
    L.arg_separation = h.arg_separation;
    for (const auto& v : out) L.sup = std::max(L.sup, v.norm());
    res.levels.push_back(L);
    res.finest_values = std::move(out);
    res.finest_mesh = m;
  }
  for (std::size_t k = 1; k < res.levels.size(); ++k)
    res.ratios.push_back(res.levels[k].seminorm / std::max(res.levels[k - 1].seminorm, 1e-300));
  res.verdict = classify_ratios(res.ratios, cfg.bounded_ratio, cfg.divergent_ratio);
  return res;
}

// ---------------------------------------------------------------------------
// weighted gradient bound for domain fields

struct WeightedGradientReport {
  double weighted_sup = 0.0;  // sup rho^{1-alpha} |grad u|
  std::size_t arg = 0;
  double holder = 0.0;        // Hölder-alpha seminorm of u on the probe cloud
  double ratio = 0.0;         // holder / weighted_sup
};

template <int Dim>
WeightedGradientReport weighted_gradient_sup(const std::vector<Point<Dim>>& points, const std::vector<double>& u,
                                             const std::vector<Point<Dim>>& gradients, const std::vector<double>& rho,
                                             double alpha) {
  if (points.size() != u.size() || points.size() != gradients.size() || points.size() != rho.size())
    throw std::invalid_argument("weighted_gradient_sup: size mismatch");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("weighted_gradient_sup: alpha must lie in (0,1)");
  WeightedGradientReport r;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double v = std::pow(rho[p], 1.0 - alpha) * norm<Dim>(gradients[p]);
    if (v > r.weighted_sup) {
      r.weighted_sup = v;
      r.arg = p;
    }
  }
  if (points.size() >= 2) r.holder = holder_seminorm<Dim, double>(points, u, alpha, 0.0).value;
  r.ratio = r.weighted_sup > 0.0 ? r.holder / r.weighted_sup : 0.0;
  return r;
}

template <int Dim>
WeightedGradientReport weighted_gradient_sup(const std::vector<Point<Dim>>& points, const DomainEvaluation<Dim>& ev,
                                             double alpha) {
  return weighted_gradient_sup<Dim>(points, ev.values, ev.gradients, ev.rho, alpha);
}

}  // namespace rieszkit
