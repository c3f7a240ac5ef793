#pragma once

// Residual table for the Cauchy-Clifford and layer-potential identities on a
// smooth closed curve (interior or exterior side).

#include <cmath>
#include <string>
#include <vector>

#include "rieszkit/operators.hpp"
#include "rieszkit/regularity.hpp"

namespace rieszkit {

/// Six smooth test fields: cos/sin k theta for k = 1..3 on the blades 1, e1, e2, e12 in turn,
/// theta the curve parameter angle atan2(x2/b, x1/a).
inline std::vector<CliffordField<2>> trig_suite(const CurveMesh& m, double a = 1.0, double b = 1.0) {
  static constexpr std::size_t blades[4] = {0, 1, 2, 3};
  std::vector<CliffordField<2>> out;
  for (int p = 0; p < 6; ++p) {
    const int k = p / 2 + 1;
    const bool use_sin = p % 2;
    const std::size_t blade = blades[p % 4];
    out.push_back(CliffordField<2>::from(m, [=](const Point<2>& x) {
      const double th = std::atan2(x[1] / b, x[0] / a);
      CliffordValue<2> v{};
      v[blade] = use_sin ? std::sin(k * th) : std::cos(k * th);
      return v;
    }));
  }
  return out;
}

/// sup |f| + [f]_alpha over the nodes.
inline double holder_norm(const CurveMesh& m, const CliffordField<2>& f, double alpha) {
  return f.sup_norm() + holder_seminorm<2>(m.nodes, f.values, alpha, 0.0).value;
}

struct IdentityRow {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::string note;
};

struct IdentitySuite {
  std::string mesh_label;
  std::size_t N = 0;
  bool exterior = false;
  std::vector<IdentityRow> rows;
  bool passed = true;

  void add(std::string name, double residual, double tol, std::string note = {}) {
    IdentityRow r{std::move(name), residual, tol, residual <= tol, std::move(note)};
    passed = passed && r.passed;
    rows.push_back(std::move(r));
  }
};

struct IdentityOptions {
  double tol_scale = 1.0;
  double alpha = 0.5;     // Hölder exponent in the jump tolerance
  bool circle = false;    // enables the Riesz closed-form row
  std::size_t jump_stride = 8;  // trace nodes: every jump_stride-th
  ExecPolicy exec;
};

/// m must be a smooth periodic curve (ellipse or bump circle family), either side.
inline IdentitySuite run_identity_suite(const CurveMesh& m, const IdentityOptions& o = {}) {
  if (m.family.family == Family::Square) throw std::invalid_argument("identity suite: the square is not a smooth domain");
  if (m.topology != Topology::PeriodicCurve) throw std::invalid_argument("identity suite: needs a periodic curve family");
  IdentitySuite S;
  S.mesh_label = m.label;
  S.N = m.size();
  S.exterior = !m.bounded;
  const double side = m.bounded ? 1.0 : -1.0;
  const double ts = o.tol_scale;
  PvOptions pv;
  pv.exec = o.exec;

  // C1 at depth 0.25 on the domain side
  {
    std::vector<Point<2>> pts;
    for (std::size_t i = 0; i < m.size(); i += std::max<std::size_t>(1, m.size() / 32))
      pts.push_back(axpy<2>(m.nodes[i], -0.25, m.normals[i]));
    const auto one = CliffordField<2>::scalar(ScalarField<2>::constant(m, 1.0));
    const auto c = cauchy_domain(m, one, pts, {}, nullptr, o.exec);
    double e = 0.0;
    const CliffordValue<2> want(m.bounded ? 1.0 : 0.0);
    for (const auto& v : c) e = std::max(e, (v - want).norm());
    S.add(m.bounded ? "C1_equals_1" : "C1_equals_0", e, 1e-6 * ts);
  }
  const auto one = CliffordField<2>::scalar(ScalarField<2>::constant(m, 1.0));
  {
    const auto c = cauchy_pv(m, one, pv);
    double e = 0.0;
    for (const auto& v : c.values) e = std::max(e, (v - CliffordValue<2>(0.5 * side)).norm());
    S.add("Cpv1_corrected", e, 1e-12 * ts);
    const auto t = cauchy_pv_truncated(m, one, pv);
    double et = 0.0;
    for (const auto& v : t.values) et = std::max(et, (v - CliffordValue<2>(0.5 * side)).norm());
    S.add("Cpv1_truncation", et, 1e-3 * ts);
  }

  const auto& fp = m.family;
  const double a = fp.family == Family::Ellipse ? fp.a : 1.0, b = fp.family == Family::Ellipse ? fp.b : 1.0;
  const auto suite = trig_suite(m, a, b);
  {
    double worst = 0.0;
    for (const auto& f : suite) {
      const auto c1 = cauchy_pv(m, f, pv);
      CliffordField<2> g;
      g.values = c1.values;
      const auto c2 = cauchy_pv(m, g, pv);
      double e = 0.0;
      for (std::size_t i = 0; i < m.size(); ++i) e = std::max(e, (c2.values[i] - f.values[i] * 0.25).norm());
      worst = std::max(worst, e / f.sup_norm());
    }
    S.add("square_identity", worst, 5e-3 * ts);
  }
  {
    // nontangential trace of Cf by Richardson over t = 0.1 2^-k, k = 0..6
    std::vector<double> t;
    for (int k = 0; k <= 6; ++k) t.push_back(0.1 * std::pow(0.5, k));
    NearBoundary<2> nb;
    nb.subtract = true;
    nb.upsample = 4;
    double worst = 0.0;
    bool conv = true;
    for (const auto& f : suite) {
      const auto pvf = cauchy_pv(m, f, pv);
      std::vector<Point<2>> pts;
      std::vector<std::size_t> base;
      for (std::size_t i = 0; i < m.size(); i += std::max<std::size_t>(1, o.jump_stride)) {
        const auto ps = probe_ladder(m, i, t.front(), 0.5, 7, 1.0);
        pts.insert(pts.end(), ps.points.begin(), ps.points.end());
        base.push_back(i);
      }
      const auto vals = cauchy_domain(m, f, pts, nb, nullptr, o.exec);
      double e = 0.0;
      for (std::size_t q = 0; q < base.size(); ++q) {
        std::vector<CliffordValue<2>> y(vals.begin() + static_cast<std::ptrdiff_t>(7 * q),
                                        vals.begin() + static_cast<std::ptrdiff_t>(7 * q + 7));
        const auto ex = richardson_ladder(t, y);
        conv = conv && ex.converging;
        const std::size_t i = base[q];
        e = std::max(e, (ex.value - (f.values[i] * 0.5 + pvf.values[i])).norm());
      }
      worst = std::max(worst, e / holder_norm(m, f, o.alpha));
    }
    S.add("jump_formula", worst, 1e-2 * ts, conv ? "" : "trace ladder not monotonically converging at some node");
  }
  if (o.circle) {
    double e = 0.0;
    for (int j = 1; j <= 2; ++j) {
      const auto r = riesz_pv(m, j, ScalarField<2>::constant(m, 1.0), pv);
      for (std::size_t i = 0; i < m.size(); ++i) e = std::max(e, std::abs(r.values[i] - side * m.normals[i][j - 1] / 2));
    }
    S.add("riesz_closed_form", e, 1e-4 * ts);
  }
  {
    const auto rec = recover_normal(m, pv);
    S.add("normal_recovery", rec.max_error, (o.circle ? 1e-6 : 1e-2) * ts);
  }
  if (m.bounded) {
    std::vector<Point<2>> pts;
    for (std::size_t i = 0; i < m.size(); i += std::max<std::size_t>(1, m.size() / 8))
      pts.push_back(axpy<2>(m.nodes[i], -0.3, m.normals[i]));
    const auto one_s = ScalarField<2>::constant(m, 1.0);
    const auto g = grad_single_layer(m, one_s, pts);
    double scale = 0.0, diff = 0.0;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      scale = std::max(scale, norm<2>(g.clifford[p]));
      diff = std::max(diff, norm<2>(sub<2>(g.finite_difference[p], g.clifford[p])));
    }
    if (scale > 1e-8)
      S.add("grad_single_layer", g.max_relative_residual, 1e-4 * ts);
    else
      S.add("grad_single_layer", diff, 1e-4 * ts, "gradient vanishes on the probes; absolute residual");
    double e = 0.0;
    for (double v : double_layer(m, one_s, pts)) e = std::max(e, std::abs(v - 1.0));
    S.add("D1_equals_1", e, 1e-6 * ts);
  } else {
    std::vector<Point<2>> pts;
    for (std::size_t i = 0; i < m.size(); i += std::max<std::size_t>(1, m.size() / 8))
      pts.push_back(axpy<2>(m.nodes[i], -0.3, m.normals[i]));
    double e = 0.0;
    for (double v : double_layer(m, ScalarField<2>::constant(m, 1.0), pts)) e = std::max(e, std::abs(v));
    S.add("D1_equals_0", e, 1e-6 * ts);
  }
  return S;
}

/// Sphere rows: Riesz closed form, C1, Cpv1 and the layer potentials of 1 at the center.
inline IdentitySuite run_identity_suite(const SurfaceMesh& m, const IdentityOptions& o = {}) {
  if (m.family.family != Family::Sphere) throw std::invalid_argument("identity suite: surface meshes must be spheres");
  IdentitySuite S;
  S.mesh_label = m.label;
  S.N = m.size();
  S.exterior = !m.bounded;
  const double side = m.bounded ? 1.0 : -1.0;
  const double ts = o.tol_scale;
  const double r = m.family.r;
  PvOptions pv;
  pv.exec = o.exec;
  const auto one = ScalarField<3>::constant(m, 1.0);
  {
    double e = 0.0;
    for (int j = 1; j <= 3; ++j) {
      const auto rj = riesz_pv(m, j, one, pv);
      for (std::size_t i = 0; i < m.size(); ++i) e = std::max(e, std::abs(rj.values[i] - side * m.normals[i][j - 1] / 2));
    }
    S.add("riesz_closed_form", e, 1e-4 * ts);
  }
  // The lat-long rule is second order in phi; the layer-potential rows use polar-axis
  // points, where the integrands do not depend on theta, on a 2048 x 8 copy.
  auto fine = make_sphere(r, 2048, 8);
  if (!m.bounded) fine = fine.exterior();
  const auto fone = ScalarField<3>::constant(fine, 1.0);
  const std::vector<Point<3>> pts = m.bounded ? std::vector<Point<3>>{{0, 0, 0}, {0, 0, 0.3 * r}, {0, 0, -0.5 * r}}
                                              : std::vector<Point<3>>{{0, 0, 2.5 * r}, {0, 0, -3 * r}};
  const std::string note = "polar-axis points, 2048 x 8 axisymmetric rule";
  {
    const auto c = cauchy_domain(fine, CliffordField<3>::scalar(fone), pts, {}, nullptr, o.exec);
    double e = 0.0;
    for (const auto& v : c) e = std::max(e, (v - CliffordValue<3>(m.bounded ? 1.0 : 0.0)).norm());
    S.add(m.bounded ? "C1_equals_1" : "C1_equals_0", e, 1e-6 * ts, note);
  }
  {
    double e = 0.0;
    for (double v : double_layer(fine, fone, pts)) e = std::max(e, std::abs(v - (m.bounded ? 1.0 : 0.0)));
    S.add(m.bounded ? "D1_equals_1" : "D1_equals_0", e, 1e-6 * ts, note);
  }
  if (m.bounded) {
    // S1 is constant -r inside a sphere of radius r
    double e = 0.0;
    for (double v : single_layer(fine, fone, pts)) e = std::max(e, std::abs(v + r));
    S.add("S1_equals_minus_r", e, 1e-6 * ts, note);
  }
  return S;
}

}  // namespace rieszkit
