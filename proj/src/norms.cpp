#include "dgp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dgp/errors.hpp"
#include "dgp/quadrature.hpp"

namespace dgp {

namespace {

bool is_infinite_p(double p) {
  return p == p_infinity || p == std::numeric_limits<double>::infinity();
}

void check_p(double p) {
  if (is_infinite_p(p)) return;
  if (!(p >= 1.0))
    throw DgError(ErrorCategory::invalid_argument, "V^p norm requires p >= 1");
}

double pow_p(double x, double p) {
  if (p == 1.0) return std::abs(x);
  if (p == 2.0) return x * x;
  return std::pow(std::abs(x), p);
}

// Barycentric lattice of resolution res on the reference triangle; idx holds
// the integer coordinates (i0,i1,i2) with sum res, ref the (xi,eta) image.
struct RefLattice {
  int res;
  std::vector<std::array<int, 3>> idx;
  std::vector<Point2> ref;
};

RefLattice make_lattice(int res) {
  RefLattice lat;
  lat.res = res;
  for (int i = 0; i <= res; ++i)
    for (int j = 0; j <= res - i; ++j) {
      const int k = res - i - j;
      lat.idx.push_back({i, j, k});
      lat.ref.push_back({static_cast<double>(j) / res, static_cast<double>(k) / res});
    }
  return lat;
}

// Basis values tabulated at a fixed set of reference points.
std::vector<double> tabulate_values(const ReferenceBasis& basis, const std::vector<Point2>& pts) {
  std::vector<double> tab(pts.size() * basis.n_loc());
  for (size_t q = 0; q < pts.size(); ++q)
    basis.eval(pts[q].x, pts[q].y, tab.data() + q * basis.n_loc());
  return tab;
}

double tabulated_value(const DgSpace& space, const std::vector<double>& coeffs, int elem,
                       const std::vector<double>& tab, size_t q) {
  const int n_loc = space.dofs.n_loc;
  double s = 0.0;
  for (int i = 0; i < n_loc; ++i)
    s += coeffs[space.dofs.global(elem, i)] * tab[q * n_loc + i];
  return s;
}

// Sutherland-Hodgman clip of a CCW polygon against the rectangle.
std::vector<Point2> clip_polygon_rect(std::vector<Point2> poly, const Rect& r) {
  struct HalfPlane {
    double a, b, c;  // a x + b y + c >= 0
  };
  const HalfPlane planes[4] = {
      {1.0, 0.0, -r.x0}, {-1.0, 0.0, r.x1}, {0.0, 1.0, -r.y0}, {0.0, -1.0, r.y1}};
  for (const auto& hp : planes) {
    std::vector<Point2> out;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
      const Point2 s = poly[i], e = poly[(i + 1) % n];
      const double fs = hp.a * s.x + hp.b * s.y + hp.c;
      const double fe = hp.a * e.x + hp.b * e.y + hp.c;
      if (fe >= 0.0) {
        if (fs < 0.0) out.push_back(s + (fs / (fs - fe)) * (e - s));
        out.push_back(e);
      } else if (fs >= 0.0) {
        out.push_back(s + (fs / (fs - fe)) * (e - s));
      }
    }
    poly = std::move(out);
    if (poly.size() < 3) return {};
  }
  return poly;
}

// Parameter interval of the segment p0->p1 inside the rectangle, or empty.
bool clip_segment_rect(Point2 p0, Point2 p1, const Rect& r, double& t0, double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  const double d[2] = {p1.x - p0.x, p1.y - p0.y};
  const double lo[2] = {r.x0, r.y0}, hi[2] = {r.x1, r.y1};
  const double s[2] = {p0.x, p0.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (s[axis] < lo[axis] || s[axis] > hi[axis]) return false;
      continue;
    }
    double ta = (lo[axis] - s[axis]) / d[axis];
    double tb = (hi[axis] - s[axis]) / d[axis];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 >= t1) return false;
  }
  return true;
}

struct EdgeSamples {
  std::vector<Point2> points;
  std::vector<double> v1, v2;       // one-sided values
  std::vector<Point2> g1, g2;      // one-sided gradients
  bool interior;
};

EdgeSamples sample_edge(const Mesh& m, const BrokenFunction& fn, const Edge& e,
                        const std::vector<double>& ts) {
  EdgeSamples s;
  s.interior = e.kind == EdgeKind::interior;
  const Point2 p0 = m.vertices[e.v[0]], p1 = m.vertices[e.v[1]];
  for (double t : ts) s.points.push_back(p0 + t * (p1 - p0));
  for (const Point2& p : s.points) {
    s.v1.push_back(fn.value(e.elems[0], p));
    s.g1.push_back(fn.gradient(e.elems[0], p));
    if (s.interior) {
      s.v2.push_back(fn.value(e.elems[1], p));
      s.g2.push_back(fn.gradient(e.elems[1], p));
    }
  }
  return s;
}

}  // namespace

BrokenFunction discrete_function(const Mesh& m, const DgSpace& space,
                                 const std::vector<double>& coeffs) {
  const Mesh* mp = &m;
  const DgSpace* sp = &space;
  const std::vector<double>* cp = &coeffs;
  return {[mp, sp, cp](int t, Point2 p) { return eval_on_element(*mp, t, *sp, *cp, p); },
          [mp, sp, cp](int t, Point2 p) { return eval_grad_on_element(*mp, t, *sp, *cp, p); }};
}

BrokenFunction error_function(const Mesh& m, const DgSpace& space,
                              const std::vector<double>& coeffs, const ScalarField& exact) {
  const Mesh* mp = &m;
  const DgSpace* sp = &space;
  const std::vector<double>* cp = &coeffs;
  const ScalarField* ep = &exact;
  return {[mp, sp, cp, ep](int t, Point2 p) {
            return ep->value(p.x, p.y) - eval_on_element(*mp, t, *sp, *cp, p);
          },
          [mp, sp, cp, ep](int t, Point2 p) {
            const Point2 ge = ep->gradient(p.x, p.y);
            const Point2 gh = eval_grad_on_element(*mp, t, *sp, *cp, p);
            return Point2{ge.x - gh.x, ge.y - gh.y};
          }};
}

VpParts norm_vp_parts(const Mesh& m, const DgSpace& space, const BrokenFunction& fn, double p,
                      const Rect* subdomain) {
  check_p(p);
  const int r = space.basis.degree();
  const QuadRuleTri tri_rule = make_quad_tri(std::min(2 * r + 4, 10));
  const QuadRuleEdge edge_rule = make_quad_edge(std::min(2 * r + 2, 10));

  VpParts parts;
  const bool inf = is_infinite_p(p);
  auto fold = [inf](double& acc, double term) { acc = inf ? std::max(acc, term) : acc + term; };

  // Elementwise W^{1,p} part. Finite p integrates |v|^p + |v_x|^p + |v_y|^p
  // over K (clipped to the rectangle when given); p = infinity samples a
  // barycentric lattice plus the quadrature points.
  if (!inf) {
    for (int t = 0; t < m.n_triangles(); ++t) {
      const auto& v = m.triangles[t].v;
      std::vector<Point2> poly = {m.vertices[v[0]], m.vertices[v[1]], m.vertices[v[2]]};
      if (subdomain) {
        poly = clip_polygon_rect(std::move(poly), *subdomain);
        if (poly.size() < 3) continue;
      }
      for (size_t k = 1; k + 1 < poly.size(); ++k) {
        const Point2 a = poly[0], b = poly[k], c = poly[k + 1];
        const double det = cross(b - a, c - a);
        if (det <= 0.0) continue;
        for (const auto& qp : tri_rule.points) {
          const Point2 phys = a + qp.xi() * (b - a) + qp.eta() * (c - a);
          const double w = qp.w * det;
          const double val = fn.value(t, phys);
          const Point2 g = fn.gradient(t, phys);
          fold(parts.volume, w * (pow_p(val, p) + pow_p(g.x, p) + pow_p(g.y, p)));
        }
      }
    }
  } else {
    const RefLattice lat = make_lattice(20);
    for (int t = 0; t < m.n_triangles(); ++t) {
      const ElementMap em = element_map(m, t);
      auto consider = [&](Point2 phys) {
        if (subdomain && !subdomain->contains(phys)) return;
        const double val = fn.value(t, phys);
        const Point2 g = fn.gradient(t, phys);
        fold(parts.volume, std::max({std::abs(val), std::abs(g.x), std::abs(g.y)}));
      };
      for (const Point2& ref : lat.ref) consider(em.to_physical(ref.x, ref.y));
      for (const auto& qp : tri_rule.points) consider(em.to_physical(qp.xi(), qp.eta()));
    }
  }

  // Edge terms over all edges, boundary included.
  for (const auto& e : m.edges) {
    double t0 = 0.0, t1 = 1.0;
    if (subdomain &&
        !clip_segment_rect(m.vertices[e.v[0]], m.vertices[e.v[1]], *subdomain, t0, t1))
      continue;

    std::vector<double> ts;
    std::vector<double> ws;
    if (!inf) {
      for (const auto& qp : edge_rule.points) {
        ts.push_back(t0 + qp.t * (t1 - t0));
        ws.push_back(qp.w * (t1 - t0) * e.length);
      }
    } else {
      const int res = 20;
      for (int k = 0; k <= res; ++k) ts.push_back(t0 + (t1 - t0) * k / res);
      for (const auto& qp : edge_rule.points) ts.push_back(t0 + qp.t * (t1 - t0));
    }

    const EdgeSamples s = sample_edge(m, fn, e, ts);
    double& jump_part = s.interior ? parts.jump_interior : parts.jump_boundary;
    for (size_t q = 0; q < ts.size(); ++q) {
      // |[[v]]| = |v1 - v2| on interior edges (unit normal), |v| on the
      // boundary; {grad v} magnitude is Euclidean.
      const double jmag = s.interior ? std::abs(s.v1[q] - s.v2[q]) : std::abs(s.v1[q]);
      const Point2 gm = s.interior ? 0.5 * (s.g1[q] + s.g2[q]) : s.g1[q];
      const double gmag = std::hypot(gm.x, gm.y);
      if (!inf) {
        fold(jump_part, std::pow(e.h_e, 1.0 - p) * ws[q] * pow_p(jmag, p));
        fold(parts.grad_mean, e.h_e * ws[q] * pow_p(gmag, p));
      } else {
        fold(jump_part, jmag / e.h_e);
        fold(parts.grad_mean, gmag);
      }
    }
  }
  return parts;
}

double norm_vp(const Mesh& m, const DgSpace& space, const BrokenFunction& fn, double p,
               const Rect* subdomain) {
  const VpParts parts = norm_vp_parts(m, space, fn, p, subdomain);
  if (is_infinite_p(p))
    return parts.volume + std::max(parts.jump_interior, parts.jump_boundary) + parts.grad_mean;
  const double total = parts.volume + parts.jump_interior + parts.jump_boundary + parts.grad_mean;
  return std::pow(total, 1.0 / p);
}

double norm_vp(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs, double p,
               const Rect* subdomain) {
  return norm_vp(m, space, discrete_function(m, space, coeffs), p, subdomain);
}

namespace {

// (integral of err^2, integral of |grad err|^2), elementwise.
std::pair<double, double> integrate_error_sq(const Mesh& m, const DgSpace& space,
                                             const std::vector<double>& coeffs,
                                             const ScalarField& exact) {
  const int r = space.basis.degree();
  const int n_loc = space.dofs.n_loc;
  const QuadRuleTri rule = make_quad_tri(std::min(2 * r + 4, 10));
  const size_t nq = rule.points.size();

  std::vector<double> phi(nq * n_loc);
  std::vector<Point2> dphi(nq * n_loc);
  for (size_t q = 0; q < nq; ++q) {
    space.basis.eval(rule.points[q].xi(), rule.points[q].eta(), phi.data() + q * n_loc);
    space.basis.eval_grad(rule.points[q].xi(), rule.points[q].eta(), dphi.data() + q * n_loc);
  }

  double val_sq = 0.0, grad_sq = 0.0;
  for (int t = 0; t < m.n_triangles(); ++t) {
    const ElementMap em = element_map(m, t);
    for (size_t q = 0; q < nq; ++q) {
      const Point2 p = em.to_physical(rule.points[q].xi(), rule.points[q].eta());
      double vh = 0.0;
      Point2 gh{0.0, 0.0};
      for (int i = 0; i < n_loc; ++i) {
        const double c = coeffs[space.dofs.global(t, i)];
        vh += c * phi[q * n_loc + i];
        const Point2 pg = em.push_gradient(dphi[q * n_loc + i]);
        gh.x += c * pg.x;
        gh.y += c * pg.y;
      }
      const double w = rule.points[q].w * em.det;
      const double ev = exact.value(p.x, p.y) - vh;
      const Point2 eg = exact.gradient(p.x, p.y) - gh;
      val_sq += w * ev * ev;
      grad_sq += w * (eg.x * eg.x + eg.y * eg.y);
    }
  }
  return {val_sq, grad_sq};
}

}  // namespace

double error_l2(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                const ScalarField& exact) {
  return std::sqrt(integrate_error_sq(m, space, coeffs, exact).first);
}

double error_broken_h1(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                       const ScalarField& exact) {
  return std::sqrt(integrate_error_sq(m, space, coeffs, exact).second);
}

double error_v2(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                const ScalarField& exact) {
  return norm_vp(m, space, error_function(m, space, coeffs, exact), 2.0);
}

namespace {

// One-sided discrete values at an edge's quadrature points. This is the one
// code path for edge sampling, shared by error_linf and both extrema
// routines, so the same sample always yields the identical float.
struct EdgeSideValues {
  std::vector<Point2> points;
  std::vector<double> values;
};

EdgeSideValues edge_side_values(const Mesh& m, const DgSpace& space,
                                const std::vector<double>& coeffs, const Edge& e, int side,
                                const QuadRuleEdge& rule) {
  EdgeSideValues out;
  const Point2 p0 = m.vertices[e.v[0]], p1 = m.vertices[e.v[1]];
  const int n_loc = space.dofs.n_loc;
  const int elem = e.elems[side];
  const ElementMap em = element_map(m, elem);
  std::vector<double> phi(n_loc);
  for (const auto& qp : rule.points) {
    const Point2 p = p0 + qp.t * (p1 - p0);
    const Point2 r = em.to_reference(p);
    space.basis.eval(r.x, r.y, phi.data());
    double v = 0.0;
    for (int i = 0; i < n_loc; ++i) v += coeffs[space.dofs.global(elem, i)] * phi[i];
    out.points.push_back(p);
    out.values.push_back(v);
  }
  return out;
}

QuadRuleEdge sampling_edge_rule(int degree) { return make_quad_edge(std::min(2 * degree + 2, 10)); }

QuadRuleTri sampling_tri_rule(int degree) { return make_quad_tri(std::min(2 * degree + 4, 10)); }

}  // namespace

double error_linf(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                  const ScalarField* exact, const Rect* subdomain, int lattice_res) {
  const RefLattice lat = make_lattice(lattice_res);
  const std::vector<double> lat_tab = tabulate_values(space.basis, lat.ref);

  const QuadRuleTri tri_rule = sampling_tri_rule(space.basis.degree());
  std::vector<Point2> tri_ref;
  for (const auto& qp : tri_rule.points) tri_ref.push_back({qp.xi(), qp.eta()});
  const std::vector<double> tri_tab = tabulate_values(space.basis, tri_ref);

  const QuadRuleEdge edge_rule = sampling_edge_rule(space.basis.degree());

  double best = 0.0;
  bool found = false;
  auto consider = [&](Point2 p, double vh) {
    if (subdomain && !subdomain->contains(p)) return;
    found = true;
    const double err = exact ? std::abs(exact->value(p.x, p.y) - vh) : std::abs(vh);
    best = std::max(best, err);
  };

  for (int t = 0; t < m.n_triangles(); ++t) {
    const ElementMap em = element_map(m, t);
    for (size_t q = 0; q < lat.ref.size(); ++q)
      consider(em.to_physical(lat.ref[q].x, lat.ref[q].y),
               tabulated_value(space, coeffs, t, lat_tab, q));
    for (size_t q = 0; q < tri_ref.size(); ++q)
      consider(em.to_physical(tri_ref[q].x, tri_ref[q].y),
               tabulated_value(space, coeffs, t, tri_tab, q));
  }
  for (const auto& e : m.edges) {
    const int n_sides = e.kind == EdgeKind::interior ? 2 : 1;
    for (int s = 0; s < n_sides; ++s) {
      const EdgeSideValues vals = edge_side_values(m, space, coeffs, e, s, edge_rule);
      for (size_t q = 0; q < vals.points.size(); ++q) consider(vals.points[q], vals.values[q]);
    }
  }
  if (!found)
    throw DgError(ErrorCategory::empty_subdomain, "subdomain contains no sample points");
  return best;
}

Extrema global_extrema(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                       int lattice_res) {
  const RefLattice lat = make_lattice(lattice_res);
  const std::vector<double> lat_tab = tabulate_values(space.basis, lat.ref);

  const QuadRuleTri tri_rule = sampling_tri_rule(space.basis.degree());
  std::vector<Point2> tri_ref;
  for (const auto& qp : tri_rule.points) tri_ref.push_back({qp.xi(), qp.eta()});
  const std::vector<double> tri_tab = tabulate_values(space.basis, tri_ref);

  const QuadRuleEdge edge_rule = sampling_edge_rule(space.basis.degree());

  Extrema ex{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  auto consider = [&ex](double v) {
    ex.min_value = std::min(ex.min_value, v);
    ex.max_value = std::max(ex.max_value, v);
  };

  for (int t = 0; t < m.n_triangles(); ++t) {
    for (size_t q = 0; q < lat.ref.size(); ++q)
      consider(tabulated_value(space, coeffs, t, lat_tab, q));
    for (size_t q = 0; q < tri_ref.size(); ++q)
      consider(tabulated_value(space, coeffs, t, tri_tab, q));
  }
  for (const auto& e : m.edges) {
    const int n_sides = e.kind == EdgeKind::interior ? 2 : 1;
    for (int s = 0; s < n_sides; ++s)
      for (double v : edge_side_values(m, space, coeffs, e, s, edge_rule).values) consider(v);
  }
  return ex;
}

Extrema boundary_extrema(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                         int lattice_res) {
  const RefLattice lat = make_lattice(lattice_res);
  const std::vector<double> lat_tab = tabulate_values(space.basis, lat.ref);
  const QuadRuleEdge edge_rule = sampling_edge_rule(space.basis.degree());

  Extrema ex{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  auto consider = [&ex](double v) {
    ex.min_value = std::min(ex.min_value, v);
    ex.max_value = std::max(ex.max_value, v);
  };

  for (int ei = 0; ei < m.n_edges(); ++ei) {
    const Edge& e = m.edges[ei];
    if (e.kind != EdgeKind::boundary) continue;
    const int owner = e.elems[0];

    // Lattice points of the owning element that lie on this edge: local edge
    // l is opposite local vertex l, so its points have barycentric index
    // idx[l] == 0. Evaluated through the same tabulated path as the global
    // sampling.
    int l = -1;
    for (int k = 0; k < 3; ++k)
      if (m.triangle_edges[owner][k] == ei) l = k;
    for (size_t q = 0; q < lat.idx.size(); ++q)
      if (lat.idx[q][l] == 0) consider(tabulated_value(space, coeffs, owner, lat_tab, q));

    for (double v : edge_side_values(m, space, coeffs, e, 0, edge_rule).values) consider(v);
  }
  return ex;
}

namespace {

// L-infinity of the error over boundary sample points, one-sided from the
// owning element.
double error_linf_boundary(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                           const ScalarField& exact, int lattice_res) {
  const RefLattice lat = make_lattice(lattice_res);
  const std::vector<double> lat_tab = tabulate_values(space.basis, lat.ref);
  const QuadRuleEdge edge_rule = sampling_edge_rule(space.basis.degree());

  double best = 0.0;
  for (int ei = 0; ei < m.n_edges(); ++ei) {
    const Edge& e = m.edges[ei];
    if (e.kind != EdgeKind::boundary) continue;
    const int owner = e.elems[0];
    const ElementMap em = element_map(m, owner);
    int l = -1;
    for (int k = 0; k < 3; ++k)
      if (m.triangle_edges[owner][k] == ei) l = k;
    for (size_t q = 0; q < lat.idx.size(); ++q)
      if (lat.idx[q][l] == 0) {
        const Point2 p = em.to_physical(lat.ref[q].x, lat.ref[q].y);
        best = std::max(best, std::abs(exact.value(p.x, p.y) -
                                       tabulated_value(space, coeffs, owner, lat_tab, q)));
      }
    const EdgeSideValues vals = edge_side_values(m, space, coeffs, e, 0, edge_rule);
    for (size_t q = 0; q < vals.points.size(); ++q)
      best = std::max(best, std::abs(exact.value(vals.points[q].x, vals.points[q].y) -
                                     vals.values[q]));
  }
  return best;
}

}  // namespace

ErrorReport compute_error_report(const Mesh& m, const DgSpace& space,
                                 const std::vector<double>& coeffs, const ScalarField& exact,
                                 const Rect* subdomain, int lattice_res) {
  ErrorReport rep;
  rep.l2 = error_l2(m, space, coeffs, exact);
  rep.broken_h1 = error_broken_h1(m, space, coeffs, exact);
  rep.v2 = error_v2(m, space, coeffs, exact);
  rep.linf = error_linf(m, space, coeffs, &exact, nullptr, lattice_res);
  rep.linf_boundary = error_linf_boundary(m, space, coeffs, exact, lattice_res);
  if (subdomain)
    rep.linf_subdomain = error_linf(m, space, coeffs, &exact, subdomain, lattice_res);
  rep.h = mesh_metrics(m).h;
  rep.dofs = space.dofs.total_dofs;
  return rep;
}

}  // namespace dgp
