#pragma once

// Normal sectional curvature of implicit surfaces: principal curvatures via
// the shape operator, the Euler formula, and the three-direction agreement
// test.

#include <array>

#include "ellipsect/body.hpp"
#include "ellipsect/polynomial.hpp"
#include "ellipsect/types.hpp"

namespace ellipsect {

// Principal curvatures kappa1 >= kappa2 and the angular offset t0 in [0, pi)
// of the kappa1 direction within the deterministic tangent frame of the
// surface normal. Convention: the unit sphere has curvature +1.
struct CurvaturePair {
  double kappa1 = 0;
  double kappa2 = 0;
  double t0 = 0;

  CurvaturePair() = default;
  CurvaturePair(double k1, double k2, double angle);
};

// kappa1 cos^2(theta - t0) + kappa2 sin^2(theta - t0).
double euler_curvature(const CurvaturePair& cp, double theta);

// Shape-operator curvatures of the body boundary at a smooth boundary point
// (EDGE_POINT when a box face is active).
CurvaturePair principal_curvatures(const ConvexBody& body,
                                   const BoundaryPoint& p);

// Same computation for any implicit surface g = 0 at a point with
// nonvanishing gradient; `outward` fixes the normal sign so curvature signs
// are comparable across surfaces through the same point.
CurvaturePair principal_curvatures_implicit(const Poly3& g, const Vec3& p,
                                            const Vec3& outward);

struct MatchResult {
  bool agree_everywhere = false;
  double witness_angle = 0;    // maximizer of |difference| when disagreeing
  double max_difference = 0;   // value of the difference at the witness
  Vec3 fourier = Vec3::Zero(); // (A,B,C) of A + B cos 2theta + C sin 2theta
};

// Agreement of two Euler curvature functions at three directions (pairwise
// distinct mod pi by at least 1e-6) decides agreement everywhere: the
// difference reduces exactly to A + B cos 2theta + C sin 2theta, and three
// zeros force A = B = C = 0. tol is relative to the largest curvature
// magnitude.
MatchResult match_in_three_directions(const CurvaturePair& a,
                                      const CurvaturePair& b,
                                      const std::array<double, 3>& dirs,
                                      double tol = 1e-9);

}  // namespace ellipsect
