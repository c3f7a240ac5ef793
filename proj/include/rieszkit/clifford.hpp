#pragma once

// Real Clifford algebra Cl_n with n anticommuting imaginary units
// (e_j * e_j = -1). Blades are indexed by strictly increasing index sets,
// stored internally as bitmasks (bit j-1 <=> e_j).

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rieszkit {

inline constexpr int kMaxCliffordDim = 16;

class BladeIndex {
 public:
  constexpr BladeIndex() = default;

  /// Builds e_I from a strictly increasing list of indices in 1..n.
  BladeIndex(std::span<const int> indices, int n) {
    if (n < 0 || n > kMaxCliffordDim) throw std::invalid_argument("BladeIndex: dimension out of range");
    int prev = 0;
    for (int idx : indices) {
      if (idx < 1 || idx > n) {
        throw std::invalid_argument("BladeIndex: index " + std::to_string(idx) + " outside 1.." + std::to_string(n));
      }
      if (idx <= prev) throw std::invalid_argument("BladeIndex: indices must be strictly increasing");
      mask_ |= std::uint32_t{1} << (idx - 1);
      prev = idx;
    }
  }
  BladeIndex(std::initializer_list<int> indices, int n)
      : BladeIndex(std::span<const int>(indices.begin(), indices.size()), n) {}

  static constexpr BladeIndex from_mask(std::uint32_t mask) {
    BladeIndex b;
    b.mask_ = mask;
    return b;
  }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr int grade() const { return std::popcount(mask_); }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (int j = 0; j < 32; ++j) {
      if (mask_ & (std::uint32_t{1} << j)) out.push_back(j + 1);
    }
    return out;
  }

  bool valid_for(int n) const { return n >= 32 || (mask_ >> n) == 0; }

  friend constexpr bool operator==(BladeIndex a, BladeIndex b) { return a.mask_ == b.mask_; }
  friend constexpr auto operator<=>(BladeIndex a, BladeIndex b) { return a.mask_ <=> b.mask_; }

 private:
  std::uint32_t mask_ = 0;
};

/// Sign of e_I * e_J after reordering to ascending form: one factor -1 per
/// transposition (pairs i in I, j in J with i > j) and one per collision,
/// since e_j * e_j = -1.
constexpr int blade_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  std::uint32_t shifted = a >> 1;
  while (shifted != 0) {
    swaps += std::popcount(shifted & b);
    shifted >>= 1;
  }
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1 : 1;
}

struct BladeProduct {
  int sign;
  BladeIndex blade;
};

inline BladeProduct blade_mul(BladeIndex lhs, BladeIndex rhs, int n) {
  if (!lhs.valid_for(n) || !rhs.valid_for(n)) throw std::invalid_argument("blade_mul: blade not valid for dimension");
  return {blade_sign(lhs.mask(), rhs.mask()), BladeIndex::from_mask(lhs.mask() ^ rhs.mask())};
}

/// Sign picked up by a blade of grade l under conjugation:
/// conj(e_I) = (-1)^l e_{i_l} ... e_{i_1} = (-1)^{l(l+1)/2} e_I.
constexpr int conj_sign(int grade) { return ((grade * (grade + 1) / 2) & 1) ? -1 : 1; }

/// Sparse multivector over the 2^n blade basis; absent coefficients are zero.
class Multivector {
 public:
  explicit Multivector(int n = 0) : n_(n) {
    if (n < 0 || n > kMaxCliffordDim) throw std::invalid_argument("Multivector: dimension out of range");
  }

  static Multivector scalar(int n, double c) {
    Multivector u(n);
    u.set(BladeIndex{}, c);
    return u;
  }

  /// x = sum_j x_j e_j
  static Multivector embed(std::span<const double> x) {
    Multivector u(static_cast<int>(x.size()));
    for (std::size_t j = 0; j < x.size(); ++j) u.set(BladeIndex::from_mask(std::uint32_t{1} << j), x[j]);
    return u;
  }

  static Multivector blade(int n, BladeIndex b, double c = 1.0) {
    Multivector u(n);
    u.set(b, c);
    return u;
  }

  int dim() const { return n_; }
  const std::map<std::uint32_t, double>& coefficients() const { return coeffs_; }

  double coeff(BladeIndex b) const {
    auto it = coeffs_.find(b.mask());
    return it == coeffs_.end() ? 0.0 : it->second;
  }

  void set(BladeIndex b, double c) {
    if (!b.valid_for(n_)) throw std::invalid_argument("Multivector::set: blade not valid for dimension");
    if (c == 0.0) {
      coeffs_.erase(b.mask());
    } else {
      coeffs_[b.mask()] = c;
    }
  }

  void add_to(BladeIndex b, double c) { set(b, coeff(b) + c); }

  double scalar_part() const { return coeff(BladeIndex{}); }

  std::vector<double> vector_part() const {
    std::vector<double> x(static_cast<std::size_t>(n_), 0.0);
    for (int j = 0; j < n_; ++j) x[static_cast<std::size_t>(j)] = coeff(BladeIndex::from_mask(std::uint32_t{1} << j));
    return x;
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& [m, c] : coeffs_) s += c * c;
    return s;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  Multivector conj() const {
    Multivector out(n_);
    for (const auto& [m, c] : coeffs_) out.coeffs_[m] = conj_sign(std::popcount(m)) * c;
    return out;
  }

  Multivector& operator+=(const Multivector& v) {
    check_same(v);
    for (const auto& [m, c] : v.coeffs_) add_to(BladeIndex::from_mask(m), c);
    return *this;
  }
  Multivector& operator-=(const Multivector& v) {
    check_same(v);
    for (const auto& [m, c] : v.coeffs_) add_to(BladeIndex::from_mask(m), -c);
    return *this;
  }
  Multivector& operator*=(double s) {
    if (s == 0.0) {
      coeffs_.clear();
    } else {
      for (auto& [m, c] : coeffs_) c *= s;
    }
    return *this;
  }

  friend Multivector operator+(Multivector u, const Multivector& v) { return u += v; }
  friend Multivector operator-(Multivector u, const Multivector& v) { return u -= v; }
  friend Multivector operator*(Multivector u, double s) { return u *= s; }
  friend Multivector operator*(double s, Multivector u) { return u *= s; }
  friend Multivector operator-(Multivector u) { return u *= -1.0; }

  /// Clifford product, the bilinear extension of blade_mul.
  friend Multivector operator*(const Multivector& u, const Multivector& v) {
    u.check_same(v);
    Multivector out(u.n_);
    for (const auto& [a, ca] : u.coeffs_) {
      for (const auto& [b, cb] : v.coeffs_) {
        out.coeffs_[a ^ b] += blade_sign(a, b) * ca * cb;
      }
    }
    std::erase_if(out.coeffs_, [](const auto& kv) { return kv.second == 0.0; });
    return out;
  }

  friend bool operator==(const Multivector& u, const Multivector& v) { return u.n_ == v.n_ && u.coeffs_ == v.coeffs_; }

 private:
  void check_same(const Multivector& v) const {
    if (v.n_ != n_) throw std::invalid_argument("Multivector: dimension mismatch");
  }

  int n_;
  std::map<std::uint32_t, double> coeffs_;
};

inline Multivector mv_mul(const Multivector& u, const Multivector& v) { return u * v; }
inline Multivector mv_conj(const Multivector& u) { return u.conj(); }
inline double mv_norm(const Multivector& u) { return u.norm(); }
inline double mv_scalar_part(const Multivector& u) { return u.scalar_part(); }
/// <u, v> = (u * conj(v))_0
inline double mv_inner(const Multivector& u, const Multivector& v) { return (u * v.conj()).scalar_part(); }

namespace detail {

template <int N>
struct DenseTable {
  static constexpr int kSize = 1 << N;
  std::array<std::array<signed char, kSize>, kSize> sign{};
  constexpr DenseTable() {
    for (int a = 0; a < kSize; ++a) {
      for (int b = 0; b < kSize; ++b) {
        sign[a][b] = static_cast<signed char>(blade_sign(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)));
      }
    }
  }
};

}  // namespace detail

/// Dense fixed-dimension multivector, used by the quadrature kernels.
/// The product goes through a sign table cached at compile time from the
/// transposition-counting rule.
template <int N>
class DenseMultivector {
  static_assert(N >= 1 && N <= 4, "dense path covers n <= 4");

 public:
  static constexpr int kDim = N;
  static constexpr int kSize = 1 << N;

  constexpr DenseMultivector() = default;
  constexpr explicit DenseMultivector(double s) { c_[0] = s; }

  static constexpr DenseMultivector embed(const std::array<double, N>& x) {
    DenseMultivector u;
    for (int j = 0; j < N; ++j) u.c_[std::size_t{1} << j] = x[static_cast<std::size_t>(j)];
    return u;
  }

  static DenseMultivector from_sparse(const Multivector& u) {
    if (u.dim() != N) throw std::invalid_argument("DenseMultivector: dimension mismatch");
    DenseMultivector out;
    for (const auto& [m, c] : u.coefficients()) out.c_[m] = c;
    return out;
  }

  Multivector to_sparse() const {
    Multivector u(N);
    for (int m = 0; m < kSize; ++m) u.set(BladeIndex::from_mask(static_cast<std::uint32_t>(m)), c_[static_cast<std::size_t>(m)]);
    return u;
  }

  constexpr double& operator[](std::size_t m) { return c_[m]; }
  constexpr double operator[](std::size_t m) const { return c_[m]; }
  const std::array<double, kSize>& data() const { return c_; }

  constexpr double scalar_part() const { return c_[0]; }

  std::array<double, N> vector_part() const {
    std::array<double, N> x{};
    for (int j = 0; j < N; ++j) x[static_cast<std::size_t>(j)] = c_[std::size_t{1} << j];
    return x;
  }

  double norm_squared() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  DenseMultivector conj() const {
    DenseMultivector out;
    for (int m = 0; m < kSize; ++m) {
      out.c_[static_cast<std::size_t>(m)] = conj_sign(std::popcount(static_cast<unsigned>(m))) * c_[static_cast<std::size_t>(m)];
    }
    return out;
  }

  DenseMultivector& operator+=(const DenseMultivector& v) {
    for (int m = 0; m < kSize; ++m) c_[static_cast<std::size_t>(m)] += v.c_[static_cast<std::size_t>(m)];
    return *this;
  }
  DenseMultivector& operator-=(const DenseMultivector& v) {
    for (int m = 0; m < kSize; ++m) c_[static_cast<std::size_t>(m)] -= v.c_[static_cast<std::size_t>(m)];
    return *this;
  }
  DenseMultivector& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

  friend DenseMultivector operator+(DenseMultivector u, const DenseMultivector& v) { return u += v; }
  friend DenseMultivector operator-(DenseMultivector u, const DenseMultivector& v) { return u -= v; }
  friend DenseMultivector operator*(DenseMultivector u, double s) { return u *= s; }
  friend DenseMultivector operator*(double s, DenseMultivector u) { return u *= s; }
  friend DenseMultivector operator-(DenseMultivector u) { return u *= -1.0; }

  friend DenseMultivector operator*(const DenseMultivector& u, const DenseMultivector& v) {
    static constexpr detail::DenseTable<N> table{};
    DenseMultivector out;
    for (int a = 0; a < kSize; ++a) {
      const double ua = u.c_[static_cast<std::size_t>(a)];
      if (ua == 0.0) continue;
      for (int b = 0; b < kSize; ++b) {
        out.c_[static_cast<std::size_t>(a ^ b)] += table.sign[a][b] * ua * v.c_[static_cast<std::size_t>(b)];
      }
    }
    return out;
  }

  friend bool operator==(const DenseMultivector&, const DenseMultivector&) = default;

 private:
  std::array<double, kSize> c_{};
};

}  // namespace rieszkit
