#include "ellipsect/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "ellipsect/errors.hpp"
#include "ellipsect/kernel.hpp"

namespace ellipsect {

namespace {

double mod_pi(double t) {
  t = std::fmod(t, M_PI);
  if (t < 0) t += M_PI;
  return t;
}

}  // namespace

CurvaturePair::CurvaturePair(double k1, double k2, double angle) {
  if (k1 >= k2) {
    kappa1 = k1;
    kappa2 = k2;
    t0 = mod_pi(angle);
  } else {
    kappa1 = k2;
    kappa2 = k1;
    t0 = mod_pi(angle + M_PI_2);
  }
}

double euler_curvature(const CurvaturePair& cp, double theta) {
  double c = std::cos(theta - cp.t0), s = std::sin(theta - cp.t0);
  return cp.kappa1 * c * c + cp.kappa2 * s * s;
}

CurvaturePair principal_curvatures_implicit(const Poly3& g, const Vec3& p,
                                            const Vec3& outward) {
  Vec3 grad = g.gradient(p);
  double gn = grad.norm();
  if (!(gn > 0)) raise(Err::INVALID_ARGUMENT, "vanishing gradient");
  Vec3 n = grad / gn;
  double flip = 1.0;
  if (n.dot(outward) < 0) { n = -n; flip = -1.0; }

  Vec3 t1, t2;
  orthonormal_tangents(n, t1, t2);
  Mat3 H = g.hessian(p);
  Mat2 W;
  W(0, 0) = t1.dot(H * t1);
  W(0, 1) = t1.dot(H * t2);
  W(1, 0) = W(0, 1);
  W(1, 1) = t2.dot(H * t2);
  W *= flip / gn;

  Eigen::SelfAdjointEigenSolver<Mat2> es(W);
  // eigenvalues ascending: kappa1 is the larger
  double k2 = es.eigenvalues()[0], k1 = es.eigenvalues()[1];
  Vec2 v1 = es.eigenvectors().col(1);
  return CurvaturePair(k1, k2, std::atan2(v1[1], v1[0]));
}

CurvaturePair principal_curvatures(const ConvexBody& body,
                                   const BoundaryPoint& p) {
  if (p.on_edge)
    raise(Err::EDGE_POINT, "curvature undefined where the box clamp is active");
  return principal_curvatures_implicit(body.smooth(), p.p, p.normal);
}

MatchResult match_in_three_directions(const CurvaturePair& a,
                                      const CurvaturePair& b,
                                      const std::array<double, 3>& dirs,
                                      double tol) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      double d = mod_pi(dirs[i] - dirs[j]);
      d = std::min(d, M_PI - d);
      if (d < 1e-6)
        raise(Err::DIRECTIONS_NOT_DISTINCT,
              "directions must be pairwise distinct mod pi");
    }

  // euler(theta) = (k1+k2)/2 + (k1-k2)/2 cos(2(theta - t0)); the difference
  // of two such functions is A + B cos 2theta + C sin 2theta.
  const double A = 0.5 * (a.kappa1 + a.kappa2) - 0.5 * (b.kappa1 + b.kappa2);
  const double da = 0.5 * (a.kappa1 - a.kappa2);
  const double db = 0.5 * (b.kappa1 - b.kappa2);
  const double B = da * std::cos(2 * a.t0) - db * std::cos(2 * b.t0);
  const double C = da * std::sin(2 * a.t0) - db * std::sin(2 * b.t0);

  MatchResult r;
  r.fourier = Vec3(A, B, C);

  const double scale = std::max(
      {std::abs(a.kappa1), std::abs(a.kappa2), std::abs(b.kappa1),
       std::abs(b.kappa2), 1.0});
  const double tol_eff = tol * scale;

  auto diff = [&](double th) {
    return A + B * std::cos(2 * th) + C * std::sin(2 * th);
  };
  // Peak of the sinusoidal part; the extrema of |diff| sit there or a
  // quarter period away.
  double th_peak = 0.5 * std::atan2(C, B);
  double best_th = th_peak, best = std::abs(diff(th_peak));
  for (double th : {th_peak + M_PI_2, 0.0}) {
    if (std::abs(diff(th)) > best) { best = std::abs(diff(th)); best_th = th; }
  }
  r.witness_angle = mod_pi(best_th);
  r.max_difference = best;

  bool at_dirs = true;
  for (double th : dirs)
    if (std::abs(diff(th)) > tol_eff) at_dirs = false;
  r.agree_everywhere = at_dirs && r.fourier.norm() <= 3 * tol_eff;
  return r;
}

}  // namespace ellipsect
