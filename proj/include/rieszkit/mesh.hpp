#pragma once

// Discretized closed boundaries: nodes, outward unit normals, quadrature
// weights and the parametrization needed to refine or resample them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <type_traits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rieszkit {

template <int Dim>
using Point = std::array<double, Dim>;

template <int Dim>
inline double dot(const Point<Dim>& a, const Point<Dim>& b) {
  double s = 0.0;
  for (int k = 0; k < Dim; ++k) s += a[k] * b[k];
  return s;
}

template <int Dim>
inline double norm(const Point<Dim>& a) {
  return std::sqrt(dot<Dim>(a, a));
}

template <int Dim>
inline Point<Dim> sub(const Point<Dim>& a, const Point<Dim>& b) {
  Point<Dim> c;
  for (int k = 0; k < Dim; ++k) c[k] = a[k] - b[k];
  return c;
}

template <int Dim>
inline Point<Dim> axpy(const Point<Dim>& x, double t, const Point<Dim>& v) {
  Point<Dim> c;
  for (int k = 0; k < Dim; ++k) c[k] = x[k] + t * v[k];
  return c;
}

template <int Dim>
inline double distance(const Point<Dim>& a, const Point<Dim>& b) {
  return norm<Dim>(sub<Dim>(a, b));
}

// IrregularPeriodicCurve: a periodic parametrization sampled at perturbed parameters
enum class Topology { PeriodicCurve, IrregularPeriodicCurve, LatLong, Unstructured };
enum class Family { Ellipse, Sphere, Square, BumpCircle, Custom };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Ellipse: return "ellipse";
    case Family::Sphere: return "sphere";
    case Family::Square: return "square";
    case Family::BumpCircle: return "bump_circle";
    default: return "custom";
  }
}

/// Construction parameters, kept so a mesh can be regenerated at another resolution.
struct FamilyParams {
  Family family = Family::Custom;
  double a = 1.0, b = 1.0;  // ellipse semi-axes
  double r = 1.0;           // sphere radius
  double side = 1.0;        // square side
  double alpha = 0.5, A = 0.0, width = 1.0;  // bump circle
  int N = 0;                // curve nodes
  int n_phi = 0, n_theta = 0;
  int M = 0;                // nodes per square edge
};

template <int Dim>
struct BoundaryMesh {
  static constexpr int kDim = Dim;

  std::vector<Point<Dim>> nodes;
  std::vector<Point<Dim>> normals;
  std::vector<double> weights;
  std::vector<std::array<double, 2>> params;  // theta | (phi, theta) | (edge, slot)
  std::string label;
  bool bounded = true;
  Topology topology = Topology::Unstructured;
  FamilyParams family;
  double spacing = 0.0;  // typical (max) node spacing

  std::size_t size() const { return nodes.size(); }

  double total_measure() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  /// Same nodes and weights with the normals flipped: the complementary, unbounded domain.
  BoundaryMesh exterior() const {
    BoundaryMesh m = *this;
    for (auto& v : m.normals)
      for (double& c : v) c = -c;
    m.bounded = !bounded;
    return m;
  }

  double diameter_bound() const {
    Point<Dim> lo, hi;
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    for (const auto& x : nodes)
      for (int k = 0; k < Dim; ++k) {
        lo[k] = std::min(lo[k], x[k]);
        hi[k] = std::max(hi[k], x[k]);
      }
    return norm<Dim>(sub<Dim>(hi, lo));
  }

  Point<Dim> centroid() const {
    Point<Dim> c{};
    const double W = total_measure();
    for (std::size_t i = 0; i < size(); ++i)
      for (int k = 0; k < Dim; ++k) c[k] += nodes[i][k] * weights[i] / W;
    return c;
  }

  /// Index and distance of the nearest node to z.
  std::pair<std::size_t, double> nearest(const Point<Dim>& z) const {
    std::size_t best = 0;
    double d2 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < size(); ++k) {
      double s = 0.0;
      for (int c = 0; c < Dim; ++c) {
        const double t = z[c] - nodes[k][c];
        s += t * t;
      }
      if (s < d2) {
        d2 = s;
        best = k;
      }
    }
    return {best, std::sqrt(d2)};
  }

  void validate() const {
    if (nodes.size() != normals.size() || nodes.size() != weights.size())
      throw std::logic_error("BoundaryMesh: inconsistent array lengths");
    for (std::size_t i = 0; i < size(); ++i) {
      if (std::abs(norm<Dim>(normals[i]) - 1.0) > 1e-12) throw std::logic_error("BoundaryMesh: normal not unit length");
      if (!(weights[i] > 0.0)) throw std::logic_error("BoundaryMesh: nonpositive weight");
    }
  }
};

using CurveMesh = BoundaryMesh<2>;
using SurfaceMesh = BoundaryMesh<3>;

namespace detail {

inline std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// C-infinity cutoff exp(1 - 1/(1-t^2)) on |t| < 1 and its derivative
inline double bump_cutoff(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}
inline double bump_cutoff_deriv(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  const double q = 1.0 - t * t;
  return bump_cutoff(t) * (-2.0 * t / (q * q));
}

// offsets, when given, move node i to t_i + offsets[i] dt (|offsets| < 1/2); the
// weights are then the nonuniform periodic trapezoid.
inline CurveMesh make_parametrized_curve(int N, const auto& position, const auto& velocity,
                                         std::span<const double> offsets = {}) {
  CurveMesh m;
  m.topology = offsets.empty() ? Topology::PeriodicCurve : Topology::IrregularPeriodicCurve;
  if (!offsets.empty() && offsets.size() != static_cast<std::size_t>(N))
    throw std::invalid_argument("curve builder: one offset per node required");
  for (double d : offsets)
    if (!(std::abs(d) < 0.5)) throw std::invalid_argument("curve builder: offsets must lie in (-1/2, 1/2)");
  m.nodes.resize(static_cast<std::size_t>(N));
  m.normals.resize(static_cast<std::size_t>(N));
  m.weights.resize(static_cast<std::size_t>(N));
  m.params.resize(static_cast<std::size_t>(N));
  const double dt = 2.0 * std::numbers::pi / N;
  auto param = [&](int i) {
    const int k = (i % N + N) % N;
    const double shift = offsets.empty() ? 0.0 : offsets[static_cast<std::size_t>(k)];
    return dt * (i + shift);
  };
  double hmax = 0.0;
  for (int i = 0; i < N; ++i) {
    const double t = param(i);
    const auto z = position(t);
    const auto v = velocity(t);
    const double speed = std::hypot(v[0], v[1]);
    const double span = 0.5 * (param(i + 1) - param(i - 1));
    const auto ui = static_cast<std::size_t>(i);
    m.nodes[ui] = z;
    m.normals[ui] = {v[1] / speed, -v[0] / speed};  // counterclockwise curve: outward = tangent rotated by -90 deg
    m.weights[ui] = speed * span;
    m.params[ui] = {t, 0.0};
    hmax = std::max(hmax, speed * std::max(param(i + 1) - t, t - param(i - 1)));
  }
  m.spacing = hmax;
  return m;
}

}  // namespace detail

/// Ellipse (a cos t, b sin t) sampled at t_i = 2 pi i/N with periodic trapezoid weights.
inline CurveMesh make_ellipse(double a, double b, int N, std::span<const double> offsets = {}) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("make_ellipse: semi-axes must be positive");
  if (N < 4) throw std::invalid_argument("make_ellipse: need at least 4 nodes");
  auto m = detail::make_parametrized_curve(
      N, [&](double t) { return Point<2>{a * std::cos(t), b * std::sin(t)}; },
      [&](double t) { return Point<2>{-a * std::sin(t), b * std::cos(t)}; }, offsets);
  m.label = "ellipse(a=" + detail::fmt_g(a) + ",b=" + detail::fmt_g(b) + ",N=" + std::to_string(N) + ")";
  m.family.family = Family::Ellipse;
  m.family.a = a;
  m.family.b = b;
  m.family.N = N;
  // exact symmetric nodes on the circle
  if (a == b && offsets.empty()) {
    for (int i = 0; i < N; ++i) {
      if ((4 * i) % N == 0) {
        const int q = 4 * i / N;
        static constexpr double c[4] = {1, 0, -1, 0}, s[4] = {0, 1, 0, -1};
        m.nodes[static_cast<std::size_t>(i)] = {a * c[q], a * s[q]};
        m.normals[static_cast<std::size_t>(i)] = {c[q], s[q]};
      }
    }
  }
  return m;
}

/// Radial graph r(t) = 1 + A psi((t-pi)/w) |t-pi|^{1+alpha}, exactly C^{1+alpha} at t = pi.
inline CurveMesh make_bump_circle(double alpha, double A, int N, double width = 1.0,
                                  std::span<const double> offsets = {}) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("make_bump_circle: alpha must lie in (0,1)");
  if (N < 4) throw std::invalid_argument("make_bump_circle: need at least 4 nodes");
  if (!(width > 0.0 && width <= std::numbers::pi)) throw std::invalid_argument("make_bump_circle: width must lie in (0, pi]");
  // min over the bump of 1 + A psi |d|^{1+alpha}; psi <= 1 and |d| <= width
  if (A < 0.0 && 1.0 + A * std::pow(width, 1.0 + alpha) <= 0.2)
    throw std::invalid_argument("make_bump_circle: amplitude too large, radius would collapse");
  if (std::abs(A) * std::pow(width, 1.0 + alpha) > 2.0)
    throw std::invalid_argument("make_bump_circle: amplitude too large");
  const double pi = std::numbers::pi;
  auto radius = [=](double t) {
    const double d = t - pi;
    return 1.0 + A * detail::bump_cutoff(d / width) * std::pow(std::abs(d), 1.0 + alpha);
  };
  auto dradius = [=](double t) {
    const double d = t - pi;
    const double ad = std::abs(d);
    const double sgn = d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0);
    return A * (detail::bump_cutoff_deriv(d / width) / width * std::pow(ad, 1.0 + alpha) +
                detail::bump_cutoff(d / width) * (1.0 + alpha) * std::pow(ad, alpha) * sgn);
  };
  auto m = detail::make_parametrized_curve(
      N, [&](double t) { return Point<2>{radius(t) * std::cos(t), radius(t) * std::sin(t)}; },
      [&](double t) {
        const double r = radius(t), dr = dradius(t);
        return Point<2>{dr * std::cos(t) - r * std::sin(t), dr * std::sin(t) + r * std::cos(t)};
      },
      offsets);
  if (A == 0.0) {
    auto c = make_ellipse(1.0, 1.0, N, offsets);
    m.nodes = c.nodes;
    m.normals = c.normals;
    m.weights = c.weights;
  }
  m.label = "bump_circle(alpha=" + detail::fmt_g(alpha) + ",A=" + detail::fmt_g(A) + ",N=" + std::to_string(N) + ")";
  m.family.family = Family::BumpCircle;
  m.family.alpha = alpha;
  m.family.A = A;
  m.family.width = width;
  m.family.N = N;
  return m;
}

/// Square of the given side centred at the origin; M midpoint nodes per edge, corners excluded.
/// offsets, when given, move node k of each edge to (k + 1/2 + offset) h with matching cells.
inline CurveMesh make_square(double side, int M, std::span<const double> offsets = {}) {
  if (!(side > 0.0)) throw std::invalid_argument("make_square: side must be positive");
  if (M < 4) throw std::invalid_argument("make_square: need at least 4 nodes per edge");
  if (!offsets.empty() && offsets.size() != static_cast<std::size_t>(4 * M))
    throw std::invalid_argument("make_square: one offset per node required");
  for (double d : offsets)
    if (!(std::abs(d) < 0.5)) throw std::invalid_argument("make_square: offsets must lie in (-1/2, 1/2)");
  CurveMesh m;
  m.topology = Topology::Unstructured;
  const double h = side / M, s2 = 0.5 * side;
  // counterclockwise: bottom, right, top, left
  const Point<2> start[4] = {{-s2, -s2}, {s2, -s2}, {s2, s2}, {-s2, s2}};
  const Point<2> dir[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Point<2> nrm[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
  double hmax = h;
  for (int e = 0; e < 4; ++e) {
    auto pos = [&](int k) {
      if (k < 0) return 0.0;
      if (k >= M) return side;
      const double d = offsets.empty() ? 0.0 : offsets[static_cast<std::size_t>(e * M + k)];
      return (k + 0.5 + d) * h;
    };
    for (int k = 0; k < M; ++k) {
      const double lo = k == 0 ? 0.0 : 0.5 * (pos(k - 1) + pos(k));
      const double hi = k == M - 1 ? side : 0.5 * (pos(k) + pos(k + 1));
      m.nodes.push_back(axpy<2>(start[e], pos(k), dir[e]));
      m.normals.push_back(nrm[e]);
      m.weights.push_back(hi - lo);
      m.params.push_back({static_cast<double>(e), static_cast<double>(k)});
      if (k + 1 < M) hmax = std::max(hmax, pos(k + 1) - pos(k));
    }
  }
  m.spacing = offsets.empty() ? h : hmax;
  m.label = "square(side=" + detail::fmt_g(side) + ",M=" + std::to_string(M) + ")";
  m.family.family = Family::Square;
  m.family.side = side;
  m.family.M = M;
  return m;
}

/// Lat-long sphere grid: phi_a = (a + 1/2) dphi (poles excluded), theta_b = b dtheta.
inline SurfaceMesh make_sphere(double r, int n_phi, int n_theta) {
  if (!(r > 0.0)) throw std::invalid_argument("make_sphere: radius must be positive");
  if (n_phi < 4 || n_theta < 4) throw std::invalid_argument("make_sphere: grid too coarse");
  SurfaceMesh m;
  m.topology = Topology::LatLong;
  const double dphi = std::numbers::pi / n_phi, dth = 2.0 * std::numbers::pi / n_theta;
  for (int a = 0; a < n_phi; ++a) {
    const double phi = (a + 0.5) * dphi;
    for (int b = 0; b < n_theta; ++b) {
      const double th = b * dth;
      const Point<3> u{std::sin(phi) * std::cos(th), std::sin(phi) * std::sin(th), std::cos(phi)};
      m.nodes.push_back({r * u[0], r * u[1], r * u[2]});
      m.normals.push_back(u);
      m.weights.push_back(r * r * std::sin(phi) * dphi * dth);
      m.params.push_back({phi, th});
    }
  }
  m.spacing = r * std::max(dphi, dth);
  m.label = "sphere(r=" + detail::fmt_g(r) + ",Nphi=" + std::to_string(n_phi) + ",Ntheta=" + std::to_string(n_theta) + ")";
  m.family.family = Family::Sphere;
  m.family.r = r;
  m.family.n_phi = n_phi;
  m.family.n_theta = n_theta;
  return m;
}

/// Regenerates a curve family at `factor` times the node count.
inline CurveMesh refine(const CurveMesh& m, int factor) {
  CurveMesh out;
  const auto& f = m.family;
  switch (f.family) {
    case Family::Ellipse: out = make_ellipse(f.a, f.b, f.N * factor); break;
    case Family::BumpCircle: out = make_bump_circle(f.alpha, f.A, f.N * factor, f.width); break;
    case Family::Square: out = make_square(f.side, f.M * factor); break;
    default: throw std::invalid_argument("refine: mesh has no family parametrization");
  }
  return m.bounded ? out : out.exterior();
}

inline SurfaceMesh refine(const SurfaceMesh& m, int factor) {
  if (m.family.family != Family::Sphere) throw std::invalid_argument("refine: mesh has no family parametrization");
  auto out = make_sphere(m.family.r, m.family.n_phi * factor, m.family.n_theta * factor);
  return m.bounded ? out : out.exterior();
}

// ---------------------------------------------------------------------------
// domain side tests

/// Winding number of the closed node polygon around z (2D).
inline double winding_number(const CurveMesh& m, const Point<2>& z) {
  double total = 0.0;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = m.nodes[i];
    const auto& q = m.nodes[(i + 1) % n];
    const double a1 = std::atan2(p[1] - z[1], p[0] - z[0]);
    const double a2 = std::atan2(q[1] - z[1], q[0] - z[0]);
    double d = a2 - a1;
    while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
    total += d;
  }
  return total / (2.0 * std::numbers::pi);
}

/// Solid-angle indicator (1/omega) int <nu, y - z>/|y - z|^3 dsigma: 1 inside, 0 outside (3D).
inline double solid_angle_indicator(const SurfaceMesh& m, const Point<3>& z) {
  double s = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const auto d = sub<3>(m.nodes[k], z);
    const double r = norm<3>(d);
    s += dot<3>(m.normals[k], d) / (r * r * r) * m.weights[k];
  }
  return s / (4.0 * std::numbers::pi);
}

/// True when z lies in the domain whose outward normal the mesh carries
/// (the bounded interior, or the exterior for a flipped mesh).
template <int Dim>
inline bool on_domain_side(const BoundaryMesh<Dim>& m, const std::type_identity_t<Point<Dim>>& z) {
  bool inside;
  if constexpr (Dim == 2) {
    // polygon orientation follows node order; normals decide which side is "inside"
    inside = std::abs(winding_number(m, z)) > 0.5;
  } else {
    const auto base = m.bounded ? m : m.exterior();
    inside = solid_angle_indicator(base, z) > 0.5;
  }
  return m.bounded ? inside : !inside;
}

// ---------------------------------------------------------------------------
// probes

template <int Dim>
struct ProbeSet {
  std::size_t base = 0;
  std::vector<double> depths;
  std::vector<Point<Dim>> points;
  std::vector<double> rho;
  double rho_uncertainty = 0.0;
  double kappa = 1.0;
};

/// Probes x_i - t0 ratio^k nu_i, k = 0..K-1, with rho = distance to the nearest node.
template <int Dim>
inline ProbeSet<Dim> probe_ladder(const BoundaryMesh<Dim>& m, std::size_t i, double t0, double ratio, int K,
                                  double kappa) {
  if (i >= m.size()) throw std::invalid_argument("probe_ladder: node index out of range");
  if (!(t0 > 0.0) || !(ratio > 0.0 && ratio < 1.0) || K < 1 || !(kappa > 0.0))
    throw std::invalid_argument("probe_ladder: invalid ladder parameters");
  ProbeSet<Dim> ps;
  ps.base = i;
  ps.kappa = kappa;
  ps.rho_uncertainty = m.spacing;
  const auto& x = m.nodes[i];
  const auto& nu = m.normals[i];
  {
    const auto z0 = axpy<Dim>(x, -t0, nu);
    auto [k0, d0] = m.nearest(z0);
    if (k0 != i && d0 < t0 * (1.0 - 1e-12))
      throw std::invalid_argument("probe_ladder: t0 exceeds the local reach at node " + std::to_string(i));
  }
  double t = t0;
  for (int k = 0; k < K; ++k, t *= ratio) {
    const auto z = axpy<Dim>(x, -t, nu);
    const double rho = m.nearest(z).second;
    if (!(distance<Dim>(x, z) < (1.0 + kappa) * rho))
      throw std::invalid_argument("probe_ladder: probe " + std::to_string(k) + " at node " + std::to_string(i) +
                                  " leaves the nontangential region");
    if (!on_domain_side(m, z))
      throw std::invalid_argument("probe_ladder: probe " + std::to_string(k) + " at node " + std::to_string(i) +
                                  " is on the wrong side of the boundary");
    ps.depths.push_back(t);
    ps.points.push_back(z);
    ps.rho.push_back(rho);
  }
  return ps;
}

// ---------------------------------------------------------------------------
// text IO: "# n=<dim> bounded=<0|1> label=<string>" then x..., nu..., w per row

template <int Dim>
inline void save_mesh(const BoundaryMesh<Dim>& m, std::ostream& os) {
  os << "# n=" << Dim << " bounded=" << (m.bounded ? 1 : 0) << " label=" << m.label << "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::string row;
    for (int k = 0; k < Dim; ++k) row += detail::fmt_g(m.nodes[i][k]) + ",";
    for (int k = 0; k < Dim; ++k) row += detail::fmt_g(m.normals[i][k]) + ",";
    row += detail::fmt_g(m.weights[i]);
    os << row << "\n";
  }
}

struct MeshHeader {
  int n = 0;
  bool bounded = true;
  std::string label;
};

inline MeshHeader parse_mesh_header(const std::string& line) {
  MeshHeader h;
  if (line.rfind("# n=", 0) != 0) throw std::invalid_argument("mesh file: missing '# n=' header");
  std::istringstream is(line.substr(2));
  std::string tok;
  bool have_n = false, have_b = false;
  while (is >> tok) {
    if (tok.rfind("n=", 0) == 0) {
      h.n = std::stoi(tok.substr(2));
      have_n = true;
    } else if (tok.rfind("bounded=", 0) == 0) {
      const auto v = tok.substr(8);
      if (v != "0" && v != "1") throw std::invalid_argument("mesh file: bounded must be 0 or 1");
      h.bounded = v == "1";
      have_b = true;
    } else if (tok.rfind("label=", 0) == 0) {
      h.label = tok.substr(6);
      std::string rest;
      std::getline(is, rest);
      h.label += rest;
      break;
    }
  }
  if (!have_n || !have_b) throw std::invalid_argument("mesh file: header needs n= and bounded=");
  return h;
}

template <int Dim>
inline BoundaryMesh<Dim> load_mesh(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("mesh file: empty");
  const auto h = parse_mesh_header(line);
  if (h.n != Dim) throw std::invalid_argument("mesh file: dimension " + std::to_string(h.n) + " does not match");
  BoundaryMesh<Dim> m;
  m.bounded = h.bounded;
  m.label = h.label;
  m.topology = Topology::Unstructured;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const auto comma = line.find(',', pos);
      const auto cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw std::invalid_argument("mesh file: bad number on row " + std::to_string(row));
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (vals.size() != static_cast<std::size_t>(2 * Dim + 1))
      throw std::invalid_argument("mesh file: row " + std::to_string(row) + " has wrong column count");
    Point<Dim> x, nu;
    for (int k = 0; k < Dim; ++k) {
      x[k] = vals[static_cast<std::size_t>(k)];
      nu[k] = vals[static_cast<std::size_t>(Dim + k)];
    }
    m.nodes.push_back(x);
    m.normals.push_back(nu);
    m.weights.push_back(vals.back());
  }
  double hmax = 0.0;
  for (double w : m.weights) hmax = std::max(hmax, Dim == 2 ? w : std::sqrt(w));
  m.spacing = hmax;
  m.validate();
  return m;
}

template <int Dim>
inline void save_mesh(const BoundaryMesh<Dim>& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  save_mesh(m, os);
}

template <int Dim>
inline BoundaryMesh<Dim> load_mesh(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return load_mesh<Dim>(is);
}

}  // namespace rieszkit
