#include "ellipsect/sections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "ellipsect/errors.hpp"

namespace ellipsect {

namespace {

// Intersection of a line with the solid slab |x_i| <= b for all i; empty
// interval when the line misses the box.
bool clip_to_box(const Vec3& a, const Vec3& u, double b, double& t0,
                 double& t1) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(u[i]) < 1e-300) {
      if (std::abs(a[i]) > b) return false;
      continue;
    }
    double lo = (-b - a[i]) / u[i];
    double hi = (b - a[i]) / u[i];
    if (lo > hi) std::swap(lo, hi);
    t0 = std::max(t0, lo);
    t1 = std::min(t1, hi);
    if (t0 >= t1) return false;
  }
  return true;
}

// Golden-section polish of a 1-D function around a candidate minimum.
template <typename F>
double golden_refine(const F& f, double lo, double hi, int iters = 60) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - phi * (hi - lo); f1 = f(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + phi * (hi - lo); f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace

double PlanarCurve::diameter() const {
  double best = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, (pts[i] - pts[j]).norm());
  return best;
}

Vec2 PlanarCurve::centroid() const {
  Vec2 c = Vec2::Zero();
  for (const auto& p : pts) c += p;
  return c / double(pts.size());
}

std::pair<bool, Vec3> plane_meets_interior(const ConvexBody& body,
                                           const Plane& H) {
  PlaneFrame f = frame_of(H);
  // Center the search at the projection of the interior point onto H.
  Vec2 c0 = f.project(body.interior() - H.signed_distance(body.interior()) * H.n);
  const double R = 1.05 * body.reach() +
                   std::abs(H.signed_distance(body.interior()));

  auto g2 = [&](const Vec2& uv) { return body.field(f.lift(uv)); };

  // Coarse grid.
  const int n = 41;
  Vec2 best = c0;
  double best_val = g2(c0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vec2 uv = c0 + Vec2(R * (2.0 * i / (n - 1) - 1.0),
                          R * (2.0 * j / (n - 1) - 1.0));
      double v = g2(uv);
      if (v < best_val) { best_val = v; best = uv; }
    }
  }
  // Deterministic compass pattern descent.
  double step = R / (n - 1);
  for (int it = 0; it < 240 && step > 1e-14 * std::max(1.0, R); ++it) {
    bool moved = false;
    static const Vec2 dirs[4] = {Vec2(1, 0), Vec2(-1, 0), Vec2(0, 1),
                                 Vec2(0, -1)};
    for (const Vec2& d : dirs) {
      Vec2 cand = best + step * d;
      double v = g2(cand);
      if (v < best_val) { best_val = v; best = cand; moved = true; }
    }
    if (!moved) step *= 0.5;
  }
  if (best_val < -kGStrict) return {true, f.lift(best)};
  return {false, Vec3::Zero()};
}

std::pair<bool, Vec3> line_meets_interior(const ConvexBody& body,
                                          const Line& L) {
  // Clip to the bounding sphere about the interior point (and the box).
  const Vec3 o = body.interior();
  const double R = 1.05 * body.reach() + 1e-9;
  Vec3 w = L.a - o;
  double wu = w.dot(L.u);
  double disc = wu * wu - (w.squaredNorm() - R * R);
  if (disc <= 0) return {false, Vec3::Zero()};
  double t0 = -wu - std::sqrt(disc), t1 = -wu + std::sqrt(disc);
  if (body.box() && !clip_to_box(L.a, L.u, *body.box(), t0, t1))
    return {false, Vec3::Zero()};

  auto geff = [&](double t) { return body.field(L.point_at(t)); };

  // Candidates: critical points of the univariate restriction of the smooth
  // field, box kinks, endpoints, and a coarse guard grid.
  std::vector<double> cands = {t0, t1};
  std::vector<double> poly = body.smooth().restrict_to_ray(L.a, L.u);
  for (double r : real_roots(derive_poly(poly)))
    if (r > t0 && r < t1) cands.push_back(r);
  if (body.box()) {
    const double b = *body.box();
    for (int i = 0; i < 3; ++i) {
      if (std::abs(L.u[i]) < 1e-300) continue;
      for (double s : {-b, b}) {
        double t = (s - L.a[i]) / L.u[i];
        if (t > t0 && t < t1) cands.push_back(t);
      }
    }
  }
  const int grid = 65;
  for (int i = 0; i < grid; ++i)
    cands.push_back(t0 + (t1 - t0) * i / (grid - 1.0));

  double best_t = t0, best_val = std::numeric_limits<double>::infinity();
  for (double t : cands) {
    double v = geff(t);
    if (v < best_val) { best_val = v; best_t = t; }
  }
  double span = (t1 - t0) / (grid - 1.0);
  double refined =
      golden_refine(geff, std::max(t0, best_t - span), std::min(t1, best_t + span));
  if (geff(refined) < best_val) { best_val = geff(refined); best_t = refined; }

  if (best_val < -kGStrict) return {true, L.point_at(best_t)};
  return {false, Vec3::Zero()};
}

PlanarCurve extract_section(const ConvexBody& body, const Plane& H, int m) {
  if (m < 16) raise(Err::INVALID_ARGUMENT, "section sample count must be >= 16");
  auto [ok, witness] = plane_meets_interior(body, H);
  if (!ok) raise(Err::NO_INTERSECTION, "plane does not cut the interior");

  PlanarCurve curve;
  curve.host = H;
  curve.frame = frame_of(H);

  auto sample_from = [&](const Vec2& center2) {
    Vec3 center = curve.frame.lift(center2);
    curve.pts.clear();
    curve.on_edge.clear();
    curve.pts.reserve(m);
    for (int j = 0; j < m; ++j) {
      double th = 2.0 * M_PI * j / m;
      Vec3 d = std::cos(th) * curve.frame.e1 + std::sin(th) * curve.frame.e2;
      BoundaryPoint bp = boundary_hit(body, center, d);
      curve.pts.push_back(curve.frame.project(bp.p));
      curve.on_edge.push_back(bp.on_edge);
    }
  };

  Vec2 w2 = curve.frame.project(witness);
  sample_from(w2);
  // One recentering pass at the centroid reduces angular sampling bias.
  Vec2 c2 = curve.centroid();
  if (body.field(curve.frame.lift(c2)) < -kGStrict) {
    sample_from(c2);
    curve.star_center = c2;
  } else {
    curve.star_center = w2;
  }
  return curve;
}

std::pair<BoundaryPoint, BoundaryPoint> line_chord(const ConvexBody& body,
                                                   const Line& L) {
  auto [ok, witness] = line_meets_interior(body, L);
  if (!ok) raise(Err::NO_INTERSECTION, "line does not cut the interior");
  return {boundary_hit(body, witness, L.u), boundary_hit(body, witness, -L.u)};
}

double polygon_area(const PlanarCurve& curve) {
  double s = 0;
  const int m = curve.size();
  for (int i = 0; i < m; ++i) {
    const Vec2& p = curve.pts[i];
    const Vec2& q = curve.pts[(i + 1) % m];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * std::abs(s);
}

void write_curve_csv(const PlanarCurve& curve, std::ostream& os) {
  os << "idx,u,v,x,y,z\n";
  char buf[160];
  for (int i = 0; i < curve.size(); ++i) {
    Vec3 p = curve.lift(i);
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", i,
                  curve.pts[i][0], curve.pts[i][1], p[0], p[1], p[2]);
    os << buf;
  }
}

}  // namespace ellipsect
