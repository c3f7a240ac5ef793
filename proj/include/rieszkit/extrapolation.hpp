#pragma once

// Polynomial extrapolation to zero of sequences sampled at decreasing
// abscissae (epsilon ladders, probe depths).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rieszkit {

template <class V>
struct Extrapolated {
  V value{};
  double uncertainty = 0.0;
  bool converging = true;
};

/// Neville evaluation at x = 0 of the interpolating polynomial through (x_k, y_k).
template <class V>
V neville_at_zero(const std::vector<double>& x, std::vector<V> y) {
  const std::size_t n = x.size();
  if (n == 0 || y.size() != n) throw std::invalid_argument("neville_at_zero: bad sample sizes");
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) {
      const double xi = x[i], xj = x[i + m];
      // P_{i..i+m}(0) = (x_{i+m} P_{i..}(0) - x_i P_{i+1..}(0)) / (x_{i+m} - x_i)
      y[i] = (xj * y[i] - xi * y[i + 1]) * (1.0 / (xj - xi));
    }
  return y[0];
}

namespace detail {
inline double magnitude(double v) { return std::abs(v); }
template <class V>
double magnitude(const V& v) {
  return v.norm();
}
}  // namespace detail

/// Extrapolates to x = 0 using all samples; uncertainty is the larger change against
/// the estimates that drop the coarsest or the finest sample.
template <class V>
Extrapolated<V> extrapolate_to_zero(const std::vector<double>& x, const std::vector<V>& y) {
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("extrapolate_to_zero: need at least 2 samples");
  Extrapolated<V> out;
  out.value = neville_at_zero(x, y);
  std::vector<double> xs(x.begin() + 1, x.end());
  std::vector<V> ys(y.begin() + 1, y.end());
  const V coarser = neville_at_zero(xs, ys);
  std::vector<double> xf(x.begin(), x.end() - 1);
  std::vector<V> yf(y.begin(), y.end() - 1);
  const V finer = neville_at_zero(xf, yf);
  out.uncertainty = std::max(detail::magnitude(out.value - coarser), detail::magnitude(out.value - finer));
  return out;
}

/// Richardson table along a geometric ladder; increments between successive diagonal
/// entries must decrease, otherwise the estimate is flagged. Uncertainty = last increment.
template <class V>
Extrapolated<V> richardson_ladder(const std::vector<double>& x, const std::vector<V>& y) {
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("richardson_ladder: need at least 3 samples");
  Extrapolated<V> out;
  std::vector<V> diag;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<double> xs(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<V> ys(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k));
    diag.push_back(neville_at_zero(xs, ys));
  }
  std::vector<double> inc;
  for (std::size_t k = 1; k < diag.size(); ++k) inc.push_back(detail::magnitude(diag[k] - diag[k - 1]));
  out.value = diag.back();
  out.uncertainty = inc.back();
  // contraction judged on the tail; tiny increments at roundoff level count as converged
  const double floor = 1e-13 * std::max(1.0, detail::magnitude(out.value));
  for (std::size_t k = inc.size() >= 3 ? inc.size() - 2 : 1; k < inc.size(); ++k)
    if (inc[k] > inc[k - 1] && inc[k] > floor) out.converging = false;
  return out;
}

}  // namespace rieszkit
