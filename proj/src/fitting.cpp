#include "ellipsect/fitting.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ellipsect/errors.hpp"

namespace ellipsect {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Vec6 conic_point_row(const Vec2& p) {
  Vec6 r;
  r << p[0] * p[0], p[0] * p[1], p[1] * p[1], p[0], p[1], 1.0;
  return r;
}

Vec6 conic_tangent_row(const Vec2& p, const Vec2& t) {
  Vec6 r;
  r << 2 * p[0] * t[0], p[1] * t[0] + p[0] * t[1], 2 * p[1] * t[1], t[0], t[1],
      0.0;
  return r;
}

Vec10 quadric_point_row(const Vec3& p) {
  Vec10 r;
  r << p[0] * p[0], p[1] * p[1], p[2] * p[2], p[0] * p[1], p[0] * p[2],
      p[1] * p[2], p[0], p[1], p[2], 1.0;
  return r;
}

Vec10 quadric_tangent_row(const Vec3& p, const Vec3& t) {
  Vec10 r;
  r << 2 * p[0] * t[0], 2 * p[1] * t[1], 2 * p[2] * t[2],
      p[1] * t[0] + p[0] * t[1], p[2] * t[0] + p[0] * t[2],
      p[2] * t[1] + p[1] * t[2], t[0], t[1], t[2], 0.0;
  return r;
}

template <typename PointVec>
void reject_duplicates(const std::vector<PointVec>& anchors) {
  for (size_t i = 0; i < anchors.size(); ++i)
    for (size_t j = i + 1; j < anchors.size(); ++j)
      if ((anchors[i] - anchors[j]).norm() < 1e-9)
        raise(Err::INVALID_ARGUMENT, "duplicate conditions at the same point");
}

// Exact nullspace solve of the wide matrix M (rows = cols - 1). Returns the
// structural nullspace direction; gap_out = s_min / (eps * s_max).
VecX exact_nullspace(const MatX& M, double rank_tol, double& gap_out) {
  Eigen::JacobiSVD<MatX> svd(M, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const int m = int(s.size());
  const double smax = s[0];
  gap_out = s[m - 1] / std::max(kEps * smax, 1e-300);
  if (s[m - 1] <= rank_tol * smax) {
    std::ostringstream oss;
    oss << "condition matrix is rank deficient (s_min/s_max = "
        << s[m - 1] / smax << ", condition_gap = " << gap_out << ")";
    raise(Err::RANK_DEFICIENT, oss.str());
  }
  return svd.matrixV().col(M.cols() - 1);
}

struct Normalization2 {
  Vec2 center;
  double scale;
};

Normalization2 normalize2(const std::vector<Vec2>& pts) {
  Vec2 c = Vec2::Zero();
  for (const auto& p : pts) c += p;
  c /= double(pts.size());
  double rms = 0;
  for (const auto& p : pts) rms += (p - c).squaredNorm();
  rms = std::sqrt(rms / double(pts.size()));
  return {c, rms > 1e-300 ? std::sqrt(2.0) / rms : 1.0};
}

// Map conic c'(x') with x' = s (x - t) back to original coordinates.
Conic denormalize_conic(const Vec6& cp, const Normalization2& N) {
  Conic c_norm(cp);
  Mat3 W;
  W << N.scale, 0, -N.scale * N.center[0],
       0, N.scale, -N.scale * N.center[1],
       0, 0, 1;
  Mat3 M = W.transpose() * c_norm.matrix() * W;
  Vec6 c;
  c << M(0, 0), 2 * M(0, 1), M(1, 1), 2 * M(0, 2), 2 * M(1, 2), M(2, 2);
  return Conic(c);
}

struct Normalization3 {
  Vec3 center;
  double scale;
};

Quadric denormalize_quadric(const Vec10& qp, const Normalization3& N) {
  Quadric q_norm(qp);
  Mat4 W = Mat4::Identity() * N.scale;
  W(3, 3) = 1.0;
  W.block<3, 1>(0, 3) = -N.scale * N.center;
  Mat4 M = W.transpose() * q_norm.matrix() * W;
  Vec10 q;
  q << M(0, 0), M(1, 1), M(2, 2), 2 * M(0, 1), 2 * M(0, 2), 2 * M(1, 2),
      2 * M(0, 3), 2 * M(1, 3), 2 * M(2, 3), M(3, 3);
  return Quadric(q);
}

}  // namespace

Conic fit_conic(const std::vector<ConicCondition>& conditions,
                double rank_tol) {
  int rows = 0;
  std::vector<Vec2> anchors;
  for (const auto& c : conditions) {
    rows += c.rows();
    anchors.push_back(c.point);
  }
  if (rows != 5)
    raise(Err::INVALID_ARGUMENT, "conic conditions must total exactly 5 rows");
  reject_duplicates(anchors);

  MatX M(5, 6);
  int r = 0;
  for (const auto& c : conditions) {
    M.row(r++) = conic_point_row(c.point).transpose();
    if (c.kind == ConicCondition::Kind::TANGENT_LINE_AT)
      M.row(r++) = conic_tangent_row(c.point, c.dir).transpose();
  }
  double gap;
  VecX v = exact_nullspace(M, rank_tol, gap);
  return Conic(Vec6(v));
}

Quadric fit_quadric(const std::vector<QuadricCondition>& conditions,
                    double rank_tol) {
  int rows = 0;
  std::vector<Vec3> anchors;
  for (const auto& c : conditions) {
    rows += c.rows();
    anchors.push_back(c.point);
  }
  if (rows != 9)
    raise(Err::INVALID_ARGUMENT, "quadric conditions must total exactly 9 rows");
  reject_duplicates(anchors);

  MatX M(9, 10);
  int r = 0;
  for (const auto& c : conditions) {
    M.row(r++) = quadric_point_row(c.point).transpose();
    if (c.kind == QuadricCondition::Kind::TANGENT_PLANE_AT) {
      Vec3 t1, t2;
      orthonormal_tangents(c.plane.n, t1, t2);
      M.row(r++) = quadric_tangent_row(c.point, t1).transpose();
      M.row(r++) = quadric_tangent_row(c.point, t2).transpose();
    }
  }
  double gap;
  VecX v = exact_nullspace(M, rank_tol, gap);
  return Quadric(Vec10(v));
}

double sampson_distance(const Conic& c, const Vec2& p) {
  double v = c.value(p);
  double gn = c.gradient(p).norm();
  return std::abs(v) / std::max(gn, 1e-300);
}

double sampson_distance(const Quadric& q, const Vec3& p) {
  double v = q.value(p);
  double gn = q.gradient(p).norm();
  return std::abs(v) / std::max(gn, 1e-300);
}

double rms_sampson(const Quadric& q, const std::vector<Vec3>& pts) {
  double s = 0;
  for (const auto& p : pts) {
    double d = sampson_distance(q, p);
    s += d * d;
  }
  return std::sqrt(s / double(pts.size()));
}

ConicFit fit_conic_lsq(const std::vector<Vec2>& samples) {
  if (samples.size() < 6)
    raise(Err::INVALID_ARGUMENT, "conic least squares needs at least 6 samples");
  Normalization2 N = normalize2(samples);
  MatX D(samples.size(), 6);
  for (size_t i = 0; i < samples.size(); ++i)
    D.row(i) = conic_point_row(N.scale * (samples[i] - N.center)).transpose();
  Eigen::JacobiSVD<MatX> svd(D, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  ConicFit fit;
  fit.conic = denormalize_conic(svd.matrixV().col(5), N);
  fit.condition_gap = s[4] / std::max(s[5], kEps * s[0]);
  double acc = 0;
  for (const auto& p : samples) {
    double d = sampson_distance(fit.conic, p);
    acc += d * d;
  }
  fit.residual = std::sqrt(acc / double(samples.size()));
  return fit;
}

ConicFit fit_conic_lsq(const PlanarCurve& curve) {
  return fit_conic_lsq(curve.pts);
}

QuadricFit fit_quadric_lsq(const std::vector<Vec3>& samples) {
  if (samples.size() < 10)
    raise(Err::INVALID_ARGUMENT, "quadric least squares needs at least 10 samples");
  Normalization3 N;
  N.center = Vec3::Zero();
  for (const auto& p : samples) N.center += p;
  N.center /= double(samples.size());
  double rms = 0;
  for (const auto& p : samples) rms += (p - N.center).squaredNorm();
  rms = std::sqrt(rms / double(samples.size()));
  N.scale = rms > 1e-300 ? std::sqrt(3.0) / rms : 1.0;

  MatX D(samples.size(), 10);
  for (size_t i = 0; i < samples.size(); ++i)
    D.row(i) = quadric_point_row(N.scale * (samples[i] - N.center)).transpose();
  Eigen::JacobiSVD<MatX> svd(D, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  QuadricFit fit;
  fit.quadric = denormalize_quadric(svd.matrixV().col(9), N);
  fit.condition_gap = s[8] / std::max(s[9], kEps * s[0]);
  fit.residual = rms_sampson(fit.quadric, samples);
  return fit;
}

EllipseTest is_ellipse(const PlanarCurve& curve, double ellipse_tol) {
  EllipseTest t;
  ConicFit fit = fit_conic_lsq(curve);
  t.conic = fit.conic;
  t.residual = fit.residual;
  double diam = curve.diameter();
  t.relative_residual = diam > 1e-300 ? fit.residual / diam : fit.residual;
  t.is_ellipse = t.relative_residual <= ellipse_tol &&
                 classify_conic(fit.conic) == ConicClass::ELLIPSE;
  if (t.is_ellipse) t.area = ellipse_area(fit.conic);
  return t;
}

double ellipse_area(const Conic& c) {
  if (classify_conic(c) != ConicClass::ELLIPSE)
    raise(Err::NOT_AN_ELLIPSE, "area is defined for real ellipses only");
  double det3 = c.matrix().determinant();
  double det2 = c.quadratic_part().determinant();
  return M_PI * std::abs(det3) / std::pow(det2, 1.5);
}

}  // namespace ellipsect
