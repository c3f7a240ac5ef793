#pragma once

// Exact homogeneous polynomials in n variables with rational coefficients.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cmath>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rieszkit {

using Rational = boost::multiprecision::cpp_rational;
using Exponent = std::vector<int>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// All exponent vectors of total degree `degree` in n variables, in
/// lexicographically descending order (x1^d first).
inline std::vector<Exponent> monomials_of_degree(int n, int degree) {
  std::vector<Exponent> out;
  if (n <= 0 || degree < 0) return out;
  Exponent e(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == n - 1) {
      e[static_cast<std::size_t>(var)] = remaining;
      out.push_back(e);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[static_cast<std::size_t>(var)] = k;
      self(self, var + 1, remaining - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

class HomogeneousPoly {
 public:
  HomogeneousPoly() = default;
  HomogeneousPoly(int n, int degree) : n_(n), degree_(degree) {
    if (n < 1) throw std::invalid_argument("HomogeneousPoly: dimension must be >= 1");
    if (degree < 0) throw std::invalid_argument("HomogeneousPoly: degree must be >= 0");
  }

  static HomogeneousPoly monomial(const Exponent& e, Rational c = 1) {
    int deg = 0;
    for (int k : e) {
      if (k < 0) throw std::invalid_argument("HomogeneousPoly: negative exponent");
      deg += k;
    }
    HomogeneousPoly p(static_cast<int>(e.size()), deg);
    p.add_term(e, std::move(c));
    return p;
  }

  static HomogeneousPoly constant(int n, Rational c) { return monomial(Exponent(static_cast<std::size_t>(n), 0), std::move(c)); }

  /// x_j, j in 1..n
  static HomogeneousPoly coordinate(int n, int j) {
    if (j < 1 || j > n) throw std::invalid_argument("coordinate index out of range");
    Exponent e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j - 1)] = 1;
    return monomial(e);
  }

  /// |x|^2 = x1^2 + ... + xn^2
  static HomogeneousPoly radius_squared(int n) {
    HomogeneousPoly p(n, 2);
    for (int j = 0; j < n; ++j) {
      Exponent e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(j)] = 2;
      p.add_term(e, 1);
    }
    return p;
  }

  int dim() const { return n_; }
  int degree() const { return degree_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponent& e, const Rational& c) {
    if (static_cast<int>(e.size()) != n_) throw std::invalid_argument("HomogeneousPoly: exponent length mismatch");
    int deg = 0;
    for (int k : e) deg += k;
    if (deg != degree_) throw std::invalid_argument("HomogeneousPoly: term degree does not match polynomial degree");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  HomogeneousPoly& operator+=(const HomogeneousPoly& q) {
    absorb_degree(q);
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
  }
  HomogeneousPoly& operator-=(const HomogeneousPoly& q) {
    absorb_degree(q);
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
  }
  HomogeneousPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }

  friend HomogeneousPoly operator+(HomogeneousPoly p, const HomogeneousPoly& q) { return p += q; }
  friend HomogeneousPoly operator-(HomogeneousPoly p, const HomogeneousPoly& q) { return p -= q; }
  friend HomogeneousPoly operator*(HomogeneousPoly p, const Rational& s) { return p *= s; }
  friend HomogeneousPoly operator*(const Rational& s, HomogeneousPoly p) { return p *= s; }

  friend HomogeneousPoly operator*(const HomogeneousPoly& p, const HomogeneousPoly& q) {
    if (p.n_ != q.n_) throw std::invalid_argument("poly_mul: dimension mismatch");
    HomogeneousPoly out(p.n_, p.degree_ + q.degree_);
    Exponent e(static_cast<std::size_t>(p.n_));
    for (const auto& [ea, ca] : p.terms_) {
      for (const auto& [eb, cb] : q.terms_) {
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const HomogeneousPoly& p, const HomogeneousPoly& q) {
    return p.n_ == q.n_ && p.terms_ == q.terms_ && (p.degree_ == q.degree_ || p.terms_.empty());
  }

  /// d/dx_r, r in 1..n
  HomogeneousPoly partial(int r) const {
    if (r < 1 || r > n_) throw std::invalid_argument("poly_partial: variable index out of range");
    HomogeneousPoly out(n_, std::max(degree_ - 1, 0));
    const auto k = static_cast<std::size_t>(r - 1);
    for (const auto& [e, c] : terms_) {
      if (e[k] == 0) continue;
      Exponent d = e;
      d[k] -= 1;
      out.add_term(d, c * e[k]);
    }
    return out;
  }

  HomogeneousPoly laplacian() const {
    HomogeneousPoly out(n_, std::max(degree_ - 2, 0));
    for (int r = 1; r <= n_; ++r) {
      if (degree_ >= 2) out += partial(r).partial(r);
    }
    return out;
  }

  bool is_harmonic() const { return laplacian().is_zero(); }

  /// Odd symmetry P(-x) = -P(x); for homogeneous polynomials this is odd degree (or zero).
  bool is_odd() const { return is_zero() || (degree_ % 2 == 1); }

  double evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("poly_eval: point dimension mismatch");
    double s = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = to_double(c);
      for (std::size_t k = 0; k < e.size(); ++k) {
        for (int p = 0; p < e[k]; ++p) t *= x[k];
      }
      s += t;
    }
    return s;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational mag = c < 0 ? Rational(-c) : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      bool constant = std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
      bool wrote = false;
      if (mag != 1 || constant) {
        os << mag;
        wrote = true;
      }
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (wrote) os << "*";
        os << "x" << (k + 1);
        if (e[k] > 1) os << "^" << e[k];
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  void absorb_degree(const HomogeneousPoly& q) {
    if (q.n_ != n_) throw std::invalid_argument("HomogeneousPoly: dimension mismatch");
    if (q.degree_ == degree_) return;
    if (q.terms_.empty()) return;
    if (terms_.empty()) {
      degree_ = q.degree_;
      return;
    }
    throw std::invalid_argument("HomogeneousPoly: degree mismatch");
  }

  int n_ = 1;
  int degree_ = 0;
  std::map<Exponent, Rational> terms_;
};

inline HomogeneousPoly poly_partial(const HomogeneousPoly& p, int r) { return p.partial(r); }
inline HomogeneousPoly poly_laplacian(const HomogeneousPoly& p) { return p.laplacian(); }
inline double poly_eval(const HomogeneousPoly& p, std::span<const double> x) { return p.evaluate(x); }
inline HomogeneousPoly poly_mul(const HomogeneousPoly& p, const HomogeneousPoly& q) { return p * q; }

/// Parses monomial strings such as "x1^2*x2 - 3*x3^3" or "3/5*x1*x2".
/// Every term must have the same total degree.
inline HomogeneousPoly parse_polynomial(std::string_view text, int n) {
  if (n < 1) throw std::invalid_argument("parse_polynomial: dimension must be >= 1");
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("parse_polynomial: " + what + " at offset " + std::to_string(pos) + " in \"" +
                                std::string(text) + "\"");
  };
  auto read_uint = [&]() -> std::string {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected integer");
    return std::string(text.substr(start, pos - start));
  };

  std::vector<std::pair<Exponent, Rational>> terms;
  int degree = -1;
  skip_ws();
  if (pos == text.size()) fail("empty polynomial");
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    Rational coef = sign;
    Exponent e(static_cast<std::size_t>(n), 0);
    bool any_factor = false;
    while (true) {
      skip_ws();
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        Rational num(read_uint().c_str());
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          Rational den(read_uint().c_str());
          if (den == 0) fail("zero denominator");
          num /= den;
        }
        coef *= num;
      } else if (pos < text.size() && text[pos] == 'x') {
        ++pos;
        int var = std::stoi(read_uint());
        if (var < 1 || var > n) fail("variable x" + std::to_string(var) + " outside x1..x" + std::to_string(n));
        int power = 1;
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip_ws();
          power = std::stoi(read_uint());
        }
        e[static_cast<std::size_t>(var - 1)] += power;
      } else {
        fail("expected coefficient or variable");
      }
      any_factor = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any_factor) fail("empty term");
    int deg = 0;
    for (int k : e) deg += k;
    if (degree < 0) degree = deg;
    if (deg != degree) fail("polynomial is not homogeneous");
    terms.emplace_back(std::move(e), std::move(coef));
  }
  HomogeneousPoly p(n, std::max(degree, 0));
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

/// Floating-point evaluation form of a polynomial, for quadrature loops.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const HomogeneousPoly& p) : n_(p.dim()), degree_(p.degree()) {
    for (const auto& [e, c] : p.terms()) {
      coeffs_.push_back(to_double(c));
      exps_.insert(exps_.end(), e.begin(), e.end());
    }
  }

  int dim() const { return n_; }
  int degree() const { return degree_; }

  double operator()(std::span<const double> x) const {
    // powers table up to degree for each coordinate
    double pw[8][32];
    const int nd = std::min(n_, 8);
    for (int k = 0; k < nd; ++k) {
      pw[k][0] = 1.0;
      for (int d = 1; d <= degree_ && d < 32; ++d) pw[k][d] = pw[k][d - 1] * x[static_cast<std::size_t>(k)];
    }
    double s = 0.0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      double v = coeffs_[t];
      const int* e = &exps_[t * static_cast<std::size_t>(n_)];
      for (int k = 0; k < nd; ++k) v *= pw[k][e[k]];
      s += v;
    }
    return s;
  }

 private:
  int n_ = 0;
  int degree_ = 0;
  std::vector<double> coeffs_;
  std::vector<int> exps_;
};

}  // namespace rieszkit
