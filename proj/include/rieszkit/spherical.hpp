#pragma once

// Surface harmonic analysis on S^1 and S^2: Fourier modes, real spherical
// harmonics, the Laplace-Beltrami operator on band-limited samples, and the
// 4^{l^2} summability diagnostic for kernel expansions.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rieszkit {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> x, w;
};

inline GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendre g;
  g.x.resize(static_cast<std::size_t>(n));
  g.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(n - 1 - i);
    g.x[a] = z;
    g.x[b] = -z;
    g.w[a] = g.w[b] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return g;
}

// ---------------------------------------------------------------------------
// real spherical harmonics on S^2, orthonormal, no Condon-Shortley phase

/// Fully normalized associated Legendre values Pbar_l^m(z) for 0 <= m <= l <= L,
/// packed at index l(l+1)/2 + m.
inline std::vector<double> normalized_legendre(int L, double z) {
  std::vector<double> p(static_cast<std::size_t>((L + 1) * (L + 2) / 2), 0.0);
  auto at = [](int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); };
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  double pmm = std::sqrt(1.0 / (4.0 * std::numbers::pi));
  for (int m = 0; m <= L; ++m) {
    if (m > 0) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    p[at(m, m)] = pmm;
    if (m + 1 <= L) p[at(m + 1, m)] = z * std::sqrt(2.0 * m + 3.0) * pmm;
    for (int l = m + 2; l <= L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double a1 = std::sqrt((4.0 * (l - 1) * (l - 1) - 1.0) /
                                  (static_cast<double>(l - 1) * (l - 1) - static_cast<double>(m) * m));
      p[at(l, m)] = a * (z * p[at(l - 1, m)] - p[at(l - 2, m)] / a1);
    }
  }
  return p;
}

/// All real harmonics Y_{l,m}, 0 <= l <= L, -l <= m <= l, at polar z = cos(phi), azimuth theta.
/// Packed at index l*l + (m + l).
inline std::vector<double> real_harmonics(int L, double z, double theta) {
  const auto p = normalized_legendre(L, z);
  std::vector<double> y(static_cast<std::size_t>((L + 1) * (L + 1)));
  for (int l = 0; l <= L; ++l) {
    const std::size_t base = static_cast<std::size_t>(l * l + l);
    y[base] = p[static_cast<std::size_t>(l * (l + 1) / 2)];
    for (int m = 1; m <= l; ++m) {
      const double pl = std::numbers::sqrt2 * p[static_cast<std::size_t>(l * (l + 1) / 2 + m)];
      y[base + static_cast<std::size_t>(m)] = pl * std::cos(m * theta);
      y[base - static_cast<std::size_t>(m)] = pl * std::sin(m * theta);
    }
  }
  return y;
}

inline std::vector<double> real_harmonics_at(int L, std::span<const double> u) {
  if (u.size() != 3) throw std::invalid_argument("real_harmonics_at: need a point of R^3");
  const double r = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  return real_harmonics(L, u[2] / r, std::atan2(u[1], u[0]));
}

/// Tensor grid on S^2: Gauss-Legendre in cos(phi) times uniform azimuth.
struct SphereGrid {
  int n_lat = 0, n_lon = 0;
  std::vector<double> z, wz, theta;

  SphereGrid(int lat, int lon) : n_lat(lat), n_lon(lon) {
    if (lat < 2 || lon < 4) throw std::invalid_argument("SphereGrid: grid too small");
    auto g = gauss_legendre(lat);
    z = g.x;
    wz = g.w;
    theta.resize(static_cast<std::size_t>(lon));
    for (int b = 0; b < lon; ++b) theta[static_cast<std::size_t>(b)] = 2.0 * std::numbers::pi * b / lon;
  }

  std::size_t size() const { return static_cast<std::size_t>(n_lat) * static_cast<std::size_t>(n_lon); }
  double weight(int a) const { return wz[static_cast<std::size_t>(a)] * 2.0 * std::numbers::pi / n_lon; }
  std::array<double, 3> point(int a, int b) const {
    const double zz = z[static_cast<std::size_t>(a)], s = std::sqrt(1.0 - zz * zz);
    const double t = theta[static_cast<std::size_t>(b)];
    return {s * std::cos(t), s * std::sin(t), zz};
  }
};

// ---------------------------------------------------------------------------
// expansions

struct SphericalMode {
  int l = 0;
  std::vector<double> coeffs;  // S^1: {a_l, b_l}; S^2: 2l+1 real harmonic coefficients, m = -l..l
};

struct SphericalExpansion {
  int n = 2;
  int L_max = 0;
  std::vector<SphericalMode> modes;  // indexed by l = 0..L_max
  std::vector<double> m_schedule;    // m_l per l; empty means m_l = l^2
  double even_residue = 0.0;

  /// ||Y_l||_{L^2(S^{n-1})}
  double mode_norm(int l) const {
    const auto& c = modes.at(static_cast<std::size_t>(l)).coeffs;
    if (n == 2) {
      if (l == 0) return std::sqrt(2.0 * std::numbers::pi) * std::abs(c[0]);
      return std::sqrt(std::numbers::pi * (c[0] * c[0] + c[1] * c[1]));
    }
    double s = 0.0;
    for (double v : c) s += v * v;
    return std::sqrt(s);
  }

  double l2_norm() const {
    double s = 0.0;
    for (int l = 0; l <= L_max; ++l) s += mode_norm(l) * mode_norm(l);
    return std::sqrt(s);
  }

  double m_of(int l) const {
    if (m_schedule.empty()) return static_cast<double>(l) * l;
    if (static_cast<std::size_t>(l) < m_schedule.size()) return m_schedule[static_cast<std::size_t>(l)];
    return m_schedule.back();
  }

  /// Y_l at a unit vector (n = 2 uses the angle of u).
  double mode_value(int l, std::span<const double> u) const {
    const auto& c = modes.at(static_cast<std::size_t>(l)).coeffs;
    if (n == 2) {
      const double t = std::atan2(u[1], u[0]);
      return l == 0 ? c[0] : c[0] * std::cos(l * t) + c[1] * std::sin(l * t);
    }
    const auto y = real_harmonics_at(l, u);
    double s = 0.0;
    for (int m = -l; m <= l; ++m) s += c[static_cast<std::size_t>(m + l)] * y[static_cast<std::size_t>(l * l + m + l)];
    return s;
  }

  double value(std::span<const double> u) const {
    double s = 0.0;
    for (int l = 0; l <= L_max; ++l) s += mode_value(l, u);
    return s;
  }

  /// Copy keeping only mode l.
  SphericalExpansion single_mode(int l) const {
    SphericalExpansion e = *this;
    for (auto& md : e.modes)
      if (md.l != l) std::fill(md.coeffs.begin(), md.coeffs.end(), 0.0);
    return e;
  }

  static SphericalExpansion zero(int n, int L_max) {
    SphericalExpansion e;
    e.n = n;
    e.L_max = L_max;
    for (int l = 0; l <= L_max; ++l)
      e.modes.push_back({l, std::vector<double>(n == 2 ? 2 : static_cast<std::size_t>(2 * l + 1), 0.0)});
    return e;
  }
};

/// Equispaced angles 2 pi i / N.
inline std::vector<double> circle_angles(int N) {
  std::vector<double> t(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) t[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / N;
  return t;
}

namespace detail {

inline void check_odd_residue(SphericalExpansion& e, double scale, bool require_odd) {
  double r = 0.0;
  for (int l = 0; l <= e.L_max; l += 2) r = std::max(r, e.mode_norm(l));
  e.even_residue = r;
  if (require_odd && r > 1e-8 * std::max(scale, 1.0))
    throw std::invalid_argument("expand_on_sphere: samples are not odd (even-mode residue " + std::to_string(r) + ")");
}

}  // namespace detail

/// Discrete Fourier analysis of equispaced samples f(2 pi i/N) on S^1.
inline SphericalExpansion expand_on_circle(std::span<const double> samples, int L_max, bool require_odd = true) {
  const int N = static_cast<int>(samples.size());
  if (L_max < 0) throw std::invalid_argument("expand_on_circle: L_max must be >= 0");
  if (N < 4 * std::max(L_max, 1)) throw std::invalid_argument("expand_on_circle: aliasing guard needs N >= 4 L_max");
  auto e = SphericalExpansion::zero(2, L_max);
  double scale = 0.0;
  for (double v : samples) scale = std::max(scale, std::abs(v));
  for (int l = 0; l <= L_max; ++l) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < N; ++i) {
      // exact index reduction keeps cos/sin arguments small
      const double t = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(l) * i) % N) / N;
      a += samples[static_cast<std::size_t>(i)] * std::cos(t);
      b += samples[static_cast<std::size_t>(i)] * std::sin(t);
    }
    const double f = (l == 0 || 2 * l == N) ? 1.0 / N : 2.0 / N;
    e.modes[static_cast<std::size_t>(l)].coeffs = {a * f, l == 0 ? 0.0 : b * f};
  }
  detail::check_odd_residue(e, scale, require_odd);
  return e;
}

/// Quadrature projection of grid samples onto real spherical harmonics of degree <= L_max.
inline SphericalExpansion expand_on_sphere2(const SphereGrid& g, std::span<const double> samples, int L_max,
                                            bool require_odd = true) {
  if (samples.size() != g.size()) throw std::invalid_argument("expand_on_sphere: sample count does not match grid");
  if (g.n_lon < 4 * std::max(L_max, 1) || g.n_lat < L_max + 1)
    throw std::invalid_argument("expand_on_sphere: aliasing guard needs n_lon >= 4 L_max and n_lat > L_max");
  auto e = SphericalExpansion::zero(3, L_max);
  double scale = 0.0;
  for (double v : samples) scale = std::max(scale, std::abs(v));
  for (int a = 0; a < g.n_lat; ++a) {
    for (int b = 0; b < g.n_lon; ++b) {
      const auto y = real_harmonics(L_max, g.z[static_cast<std::size_t>(a)], g.theta[static_cast<std::size_t>(b)]);
      const double fw = samples[static_cast<std::size_t>(a * g.n_lon + b)] * g.weight(a);
      for (int l = 0; l <= L_max; ++l)
        for (int m = -l; m <= l; ++m)
          e.modes[static_cast<std::size_t>(l)].coeffs[static_cast<std::size_t>(m + l)] +=
              fw * y[static_cast<std::size_t>(l * l + m + l)];
    }
  }
  detail::check_odd_residue(e, scale, require_odd);
  return e;
}

inline std::vector<double> synthesize_on_sphere2(const SphericalExpansion& e, const SphereGrid& g) {
  std::vector<double> out(g.size(), 0.0);
  for (int a = 0; a < g.n_lat; ++a)
    for (int b = 0; b < g.n_lon; ++b) {
      const auto y = real_harmonics(e.L_max, g.z[static_cast<std::size_t>(a)], g.theta[static_cast<std::size_t>(b)]);
      double s = 0.0;
      for (int l = 0; l <= e.L_max; ++l)
        for (int m = -l; m <= l; ++m)
          s += e.modes[static_cast<std::size_t>(l)].coeffs[static_cast<std::size_t>(m + l)] *
               y[static_cast<std::size_t>(l * l + m + l)];
      out[static_cast<std::size_t>(a * g.n_lon + b)] = s;
    }
  return out;
}

/// Spectral second derivative of equispaced periodic samples (Laplace-Beltrami on S^1).
inline std::vector<double> laplace_beltrami_circle(std::span<const double> samples) {
  const int N = static_cast<int>(samples.size());
  const int K = N / 2;
  std::vector<double> a(static_cast<std::size_t>(K + 1)), b(static_cast<std::size_t>(K + 1));
  for (int l = 1; l <= K; ++l) {
    double sa = 0.0, sb = 0.0;
    for (int i = 0; i < N; ++i) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(l) * i) % N) / N;
      sa += samples[static_cast<std::size_t>(i)] * std::cos(t);
      sb += samples[static_cast<std::size_t>(i)] * std::sin(t);
    }
    const double f = (2 * l == N) ? 1.0 / N : 2.0 / N;
    a[static_cast<std::size_t>(l)] = sa * f;
    b[static_cast<std::size_t>(l)] = (2 * l == N) ? 0.0 : sb * f;
  }
  std::vector<double> out(static_cast<std::size_t>(N), 0.0);
  for (int i = 0; i < N; ++i) {
    double s = 0.0;
    for (int l = 1; l <= K; ++l) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(l) * i) % N) / N;
      s -= static_cast<double>(l) * l * (a[static_cast<std::size_t>(l)] * std::cos(t) + b[static_cast<std::size_t>(l)] * std::sin(t));
    }
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

/// Laplace-Beltrami on S^2 for samples band-limited to degree L_max: project, scale by -l(l+1), resynthesize.
inline std::vector<double> laplace_beltrami_sphere2(const SphereGrid& g, std::span<const double> samples, int L_max) {
  auto e = expand_on_sphere2(g, samples, L_max, false);
  for (int l = 0; l <= L_max; ++l)
    for (double& c : e.modes[static_cast<std::size_t>(l)].coeffs) c *= -static_cast<double>(l) * (l + 1);
  return synthesize_on_sphere2(e, g);
}

/// Evaluates the trigonometric interpolant of equispaced samples at angle t.
inline double trig_interpolate(std::span<const double> samples, double t) {
  const int N = static_cast<int>(samples.size());
  const int K = N / 2;
  double s = 0.0;
  for (int i = 0; i < N; ++i) s += samples[static_cast<std::size_t>(i)];
  s /= N;
  for (int l = 1; l <= K; ++l) {
    double sa = 0.0, sb = 0.0;
    for (int i = 0; i < N; ++i) {
      const double ti = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(l) * i) % N) / N;
      sa += samples[static_cast<std::size_t>(i)] * std::cos(ti);
      sb += samples[static_cast<std::size_t>(i)] * std::sin(ti);
    }
    const double f = (2 * l == N) ? 1.0 / N : 2.0 / N;
    s += f * (sa * std::cos(l * t) + ((2 * l == N) ? 0.0 : sb * std::sin(l * t)));
  }
  return s;
}

/// Trigonometric interpolation of equispaced samples onto a grid `factor` times finer.
inline std::vector<double> trig_upsample(std::span<const double> samples, int factor) {
  const int N = static_cast<int>(samples.size());
  const int K = (N - 1) / 2;  // Nyquist term dropped for a real, symmetric interpolant
  std::vector<double> a(static_cast<std::size_t>(K + 1)), b(static_cast<std::size_t>(K + 1));
  for (int l = 0; l <= K; ++l) {
    double sa = 0.0, sb = 0.0;
    for (int i = 0; i < N; ++i) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(l) * i) % N) / N;
      sa += samples[static_cast<std::size_t>(i)] * std::cos(t);
      sb += samples[static_cast<std::size_t>(i)] * std::sin(t);
    }
    a[static_cast<std::size_t>(l)] = sa * (l == 0 ? 1.0 : 2.0) / N;
    b[static_cast<std::size_t>(l)] = sb * 2.0 / N;
  }
  const int M = N * factor;
  std::vector<double> out(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) {
    double s = a[0];
    for (int l = 1; l <= K; ++l) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(l) * i) % M) / M;
      s += a[static_cast<std::size_t>(l)] * std::cos(t) + b[static_cast<std::size_t>(l)] * std::sin(t);
    }
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

// ---------------------------------------------------------------------------
// summability

struct SummabilityTerm {
  int l = 0;
  double m = 0.0;
  double log_term = 0.0;  // natural log of the weighted term; -inf for a zero term
  double term = 0.0;      // exp(log_term), may overflow to inf
};

struct SummabilityReport {
  std::vector<SummabilityTerm> terms;
  double log_total = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  bool convergent = true;
  double noise_floor = 0.0;
};

/// Terms C * 4^{l^2} l^{-2 m_l} ||Delta^{m_l} k||_{L^2(S^{n-1})} for l = 0..l_report, with
/// ||Delta^m k||^2 = sum_l' [l'(l'+n-2)]^{2m} ||Y_l'||^2. Modes below rel_floor * max ||Y_l'||
/// are treated as zero (they are roundoff). Logs are used throughout since 4^{l^2} overflows.
inline SummabilityReport summability_report(const SphericalExpansion& e, double C = 1.0, int l_report = -1,
                                            double rel_floor = 1e-12) {
  SummabilityReport rep;
  if (l_report < 0) l_report = 2 * e.L_max + 10;
  double ymax = 0.0;
  for (int l = 0; l <= e.L_max; ++l) ymax = std::max(ymax, e.mode_norm(l));
  rep.noise_floor = rel_floor * ymax;
  const double ninf = -std::numeric_limits<double>::infinity();
  auto log_add = [](double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
  };
  for (int l = 0; l <= l_report; ++l) {
    const double m = e.m_of(l);
    double log_sq = ninf;  // log ||Delta^m k||^2
    for (int lp = 0; lp <= e.L_max; ++lp) {
      const double y = e.mode_norm(lp);
      if (y == 0.0 || y < rep.noise_floor) continue;
      const double eig = static_cast<double>(lp) * (lp + e.n - 2);
      if (eig == 0.0 && m > 0) continue;
      const double lt = (m > 0 ? 2.0 * m * std::log(eig) : 0.0) + 2.0 * std::log(y);
      log_sq = log_add(log_sq, lt);
    }
    SummabilityTerm t;
    t.l = l;
    t.m = m;
    if (log_sq == ninf || C == 0.0) {
      t.log_term = ninf;
    } else {
      const double lw = static_cast<double>(l) * l * std::log(4.0) - (l > 0 ? 2.0 * m * std::log(static_cast<double>(l)) : 0.0);
      t.log_term = std::log(C) + lw + 0.5 * log_sq;
    }
    t.term = std::exp(t.log_term);
    rep.log_total = log_add(rep.log_total, t.log_term);
    rep.terms.push_back(t);
  }
  rep.total = std::exp(rep.log_total);
  // verdict: the tail must be decaying and negligible against the total
  if (rep.log_total != ninf && rep.terms.size() >= 3) {
    const auto& last = rep.terms.back();
    const auto& prev = rep.terms[rep.terms.size() - 2];
    const bool decaying = last.log_term < prev.log_term;
    const bool negligible = last.log_term < rep.log_total + std::log(1e-12);
    rep.convergent = decaying && negligible && std::isfinite(rep.log_total);
  }
  return rep;
}

/// Closed-form term 4^{l^2} l^{-2 l^2} [l0(l0+n-2)]^{l^2} ||k|| for a single-mode kernel, as a log.
inline double single_mode_log_term(int l, int l0, int n, double knorm) {
  const double L2 = static_cast<double>(l) * l;
  const double base = (l > 0 ? std::log(4.0) - 2.0 * std::log(static_cast<double>(l)) : 0.0) +
                      std::log(static_cast<double>(l0) * (l0 + n - 2));
  return (l == 0 ? 0.0 : L2 * base) + std::log(knorm);
}

}  // namespace rieszkit
