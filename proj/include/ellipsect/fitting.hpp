#pragma once

// Conic and quadric construction from incidence/tangency conditions (exact
// nullspace fits) and algebraic least-squares fitting with Sampson
// residuals.
//
// Exact fits solve the wide homogeneous system M c = 0 where M stacks the
// condition rows (5x6 for conics, 9x10 for quadrics); the solution is the
// structural nullspace direction. Degeneracy is decided on the smallest
// computed singular value s_min against rank_tol * s_max, and condition_gap
// reports how far s_min sits above the numerical-zero floor
// (machine epsilon * s_max); a well-posed construction therefore has
// condition_gap >> 1e3 while a tie gives condition_gap around 1.

#include <vector>

#include "ellipsect/kernel.hpp"
#include "ellipsect/sections.hpp"
#include "ellipsect/types.hpp"

namespace ellipsect {

struct ConicCondition {
  enum class Kind { POINT_ON, TANGENT_LINE_AT };
  Kind kind;
  Vec2 point;
  Vec2 dir;  // tangent direction, TANGENT_LINE_AT only

  static ConicCondition point_on(const Vec2& p) {
    return {Kind::POINT_ON, p, Vec2::Zero()};
  }
  static ConicCondition tangent_line_at(const Vec2& p, const Vec2& dir) {
    return {Kind::TANGENT_LINE_AT, p, dir.normalized()};
  }
  int rows() const { return kind == Kind::POINT_ON ? 1 : 2; }
};

struct QuadricCondition {
  enum class Kind { POINT_ON, TANGENT_PLANE_AT };
  Kind kind;
  Vec3 point;
  Plane plane;  // tangent plane, TANGENT_PLANE_AT only

  static QuadricCondition point_on(const Vec3& p) {
    return {Kind::POINT_ON, p, Plane()};
  }
  static QuadricCondition tangent_plane_at(const Vec3& p, const Plane& H) {
    return {Kind::TANGENT_PLANE_AT, p, H};
  }
  int rows() const { return kind == Kind::POINT_ON ? 1 : 3; }
};

struct ConicFit {
  Conic conic;
  double residual = 0;       // RMS Sampson distance of the input samples
  double condition_gap = 1;  // ratio of the two smallest singular values
};

struct QuadricFit {
  Quadric quadric;
  double residual = 0;
  double condition_gap = 1;
};

// Exact conic through conditions totaling 5 rows. RANK_DEFICIENT when the
// condition matrix drops rank within rank_tol (e.g. three collinear points).
Conic fit_conic(const std::vector<ConicCondition>& conditions,
                double rank_tol = kRankTol);

// Exact quadric through conditions totaling 9 rows.
Quadric fit_quadric(const std::vector<QuadricCondition>& conditions,
                    double rank_tol = kRankTol);

// Algebraic least-squares conic: smallest singular direction of the design
// matrix built on centered/scaled coordinates, mapped back. Total function
// for m >= 6 samples.
ConicFit fit_conic_lsq(const std::vector<Vec2>& samples);
ConicFit fit_conic_lsq(const PlanarCurve& curve);

// Algebraic least-squares quadric over boundary samples (m >= 10).
QuadricFit fit_quadric_lsq(const std::vector<Vec3>& samples);

// First-order geometric distance of a point to the coefficient locus.
double sampson_distance(const Conic& c, const Vec2& p);
double sampson_distance(const Quadric& q, const Vec3& p);
double rms_sampson(const Quadric& q, const std::vector<Vec3>& pts);

struct EllipseTest {
  bool is_ellipse = false;
  Conic conic;
  double residual = 0;           // absolute RMS Sampson
  double relative_residual = 0;  // residual / curve diameter
  double area = 0;               // defined only when is_ellipse
};

constexpr double kEllipseTol = 1e-6;  // on the diameter-relative residual

EllipseTest is_ellipse(const PlanarCurve& curve, double ellipse_tol = kEllipseTol);

// Area enclosed by a real ellipse: pi |det M3| / det(M2)^(3/2).
double ellipse_area(const Conic& c);

}  // namespace ellipsect
