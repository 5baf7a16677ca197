#pragma once

// Core geometric types: planes, lines, conics, quadrics. All types are
// immutable value types canonicalized on construction, so equality of the
// underlying geometry is plain coefficient comparison. Coefficient vectors
// are kept at unit Euclidean norm with a deterministic sign.
//
// Coefficient orders:
//   Conic   c = (A,B,C,D,E,F):        A x^2 + B xy + C y^2 + D x + E y + F
//   Quadric q = (A,B,C,D,E,F,G,H,I,J):A x^2 + B y^2 + C z^2 + D xy + E xz
//                                      + F yz + G x + H y + I z + J

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "ellipsect/errors.hpp"
#include "ellipsect/types.hpp"

namespace ellipsect {

template <typename S> using Vec2T = Eigen::Matrix<S, 2, 1>;
template <typename S> using Vec3T = Eigen::Matrix<S, 3, 1>;
template <typename S> using Vec6T = Eigen::Matrix<S, 6, 1>;
template <typename S> using Vec10T = Eigen::Matrix<S, 10, 1>;
template <typename S> using Mat2T = Eigen::Matrix<S, 2, 2>;
template <typename S> using Mat3T = Eigen::Matrix<S, 3, 3>;
template <typename S> using Mat4T = Eigen::Matrix<S, 4, 4>;

namespace detail {

// Sign gate used by all canonicalizations: below this, a component is
// treated as zero when deciding the canonical sign of a unit vector.
template <typename S>
constexpr S sign_eps() { return S(1e-14); }

// +1 to keep, -1 to flip: first component with magnitude above the gate
// must be positive.
template <typename Derived>
int canonical_sign(const Eigen::MatrixBase<Derived>& v) {
  using S = typename Derived::Scalar;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > sign_eps<S>()) return v[i] > S(0) ? 1 : -1;
  }
  return 1;
}

}  // namespace detail

// Deterministic orthonormal basis completion: picks the coordinate axis
// least aligned with n (lowest index on ties), projects it onto n's
// orthogonal complement, and closes with the cross product.
template <typename S>
void orthonormal_tangents(const Vec3T<S>& n, Vec3T<S>& e1, Vec3T<S>& e2) {
  int k = 0;
  S best = std::abs(n[0]);
  for (int i = 1; i < 3; ++i) {
    if (std::abs(n[i]) < best) { best = std::abs(n[i]); k = i; }
  }
  Vec3T<S> axis = Vec3T<S>::Zero();
  axis[k] = S(1);
  e1 = (axis - n.dot(axis) * n).normalized();
  e2 = n.cross(e1);
}

// ---------------------------------------------------------------------------
// Plane {x : <n,x> = d}, with ||n|| = 1 and canonical sign so that (n,d) and
// (-n,-d) construct the same object.
// ---------------------------------------------------------------------------
template <typename S>
struct PlaneT {
  Vec3T<S> n = Vec3T<S>::UnitZ();
  S d = S(0);

  PlaneT() = default;
  PlaneT(const Vec3T<S>& normal, S offset) {
    S len = normal.norm();
    if (!(len > S(0))) raise(Err::INVALID_ARGUMENT, "plane normal is zero");
    n = normal / len;
    d = offset / len;
    if (detail::canonical_sign(n) < 0) { n = -n; d = -d; }
  }

  static PlaneT through(const Vec3T<S>& normal, const Vec3T<S>& point) {
    return PlaneT(normal, normal.normalized().dot(point));
  }

  S signed_distance(const Vec3T<S>& p) const { return n.dot(p) - d; }
};

// ---------------------------------------------------------------------------
// Line {a + t u}, ||u|| = 1, canonical direction sign, base point a chosen as
// the point of the line nearest the origin (so a is orthogonal to u).
// ---------------------------------------------------------------------------
template <typename S>
struct LineT {
  Vec3T<S> a = Vec3T<S>::Zero();
  Vec3T<S> u = Vec3T<S>::UnitX();

  LineT() = default;
  LineT(const Vec3T<S>& point, const Vec3T<S>& dir) {
    S len = dir.norm();
    if (!(len > S(0))) raise(Err::INVALID_ARGUMENT, "line direction is zero");
    u = dir / len;
    if (detail::canonical_sign(u) < 0) u = -u;
    a = point - point.dot(u) * u;
  }

  Vec3T<S> point_at(S t) const { return a + t * u; }
};

template <typename S>
S point_line_distance(const LineT<S>& L, const Vec3T<S>& p) {
  Vec3T<S> w = p - L.a;
  return (w - w.dot(L.u) * L.u).norm();
}

// Distance between two lines (parallel case handled).
template <typename S>
S line_distance(const LineT<S>& L1, const LineT<S>& L2) {
  Vec3T<S> cr = L1.u.cross(L2.u);
  S cn = cr.norm();
  Vec3T<S> w = L2.a - L1.a;
  if (cn < S(1e-12)) return (w - w.dot(L1.u) * L1.u).norm();
  return std::abs(w.dot(cr)) / cn;
}

// Parameters (t1,t2) of the mutually closest points; requires non-parallel
// lines (falls back to t1 = 0 when nearly parallel).
template <typename S>
std::pair<Vec3T<S>, Vec3T<S>> closest_points(const LineT<S>& L1,
                                             const LineT<S>& L2) {
  Vec3T<S> w = L2.a - L1.a;
  S b = L1.u.dot(L2.u);
  S denom = S(1) - b * b;
  if (denom < S(1e-14)) {
    Vec3T<S> p1 = L1.a;
    Vec3T<S> p2 = L2.a + (L1.a - L2.a).dot(L2.u) * L2.u;
    return {p1, p2};
  }
  S t1 = (w.dot(L1.u) - w.dot(L2.u) * b) / denom;
  S t2 = (w.dot(L1.u) * b - w.dot(L2.u)) / denom;
  return {L1.point_at(t1), L2.point_at(t2)};
}

// ---------------------------------------------------------------------------
// Conic, unit-norm coefficients, canonical sign A + C >= 0 (first nonzero
// entry positive when the trace vanishes).
// ---------------------------------------------------------------------------
template <typename S>
struct ConicT {
  Vec6T<S> c = Vec6T<S>::Zero();

  ConicT() = default;
  explicit ConicT(const Vec6T<S>& coeffs) {
    S len = coeffs.norm();
    if (!(len > S(0))) raise(Err::INVALID_ARGUMENT, "conic coefficients are zero");
    c = coeffs / len;
    S tr = c[0] + c[2];
    if (tr < -detail::sign_eps<S>()) {
      c = -c;
    } else if (std::abs(tr) <= detail::sign_eps<S>() &&
               detail::canonical_sign(c) < 0) {
      c = -c;
    }
  }

  S value(const Vec2T<S>& p) const {
    const S x = p[0], y = p[1];
    return c[0] * x * x + c[1] * x * y + c[2] * y * y + c[3] * x + c[4] * y + c[5];
  }

  Vec2T<S> gradient(const Vec2T<S>& p) const {
    const S x = p[0], y = p[1];
    return Vec2T<S>(S(2) * c[0] * x + c[1] * y + c[3],
                    c[1] * x + S(2) * c[2] * y + c[4]);
  }

  Mat3T<S> matrix() const {
    Mat3T<S> M;
    M << c[0], c[1] / S(2), c[3] / S(2),
         c[1] / S(2), c[2], c[4] / S(2),
         c[3] / S(2), c[4] / S(2), c[5];
    return M;
  }

  Mat2T<S> quadratic_part() const {
    Mat2T<S> M;
    M << c[0], c[1] / S(2), c[1] / S(2), c[2];
    return M;
  }
};

// ---------------------------------------------------------------------------
// Quadric, unit-norm coefficients, canonical sign tr(quadratic part) >= 0.
// ---------------------------------------------------------------------------
template <typename S>
struct QuadricT {
  Vec10T<S> q = Vec10T<S>::Zero();

  QuadricT() = default;
  explicit QuadricT(const Vec10T<S>& coeffs) {
    S len = coeffs.norm();
    if (!(len > S(0))) raise(Err::INVALID_ARGUMENT, "quadric coefficients are zero");
    q = coeffs / len;
    S tr = q[0] + q[1] + q[2];
    if (tr < -detail::sign_eps<S>()) {
      q = -q;
    } else if (std::abs(tr) <= detail::sign_eps<S>() &&
               detail::canonical_sign(q) < 0) {
      q = -q;
    }
  }

  S value(const Vec3T<S>& p) const {
    const S x = p[0], y = p[1], z = p[2];
    return q[0] * x * x + q[1] * y * y + q[2] * z * z + q[3] * x * y +
           q[4] * x * z + q[5] * y * z + q[6] * x + q[7] * y + q[8] * z + q[9];
  }

  Vec3T<S> gradient(const Vec3T<S>& p) const {
    const S x = p[0], y = p[1], z = p[2];
    return Vec3T<S>(S(2) * q[0] * x + q[3] * y + q[4] * z + q[6],
                    S(2) * q[1] * y + q[3] * x + q[5] * z + q[7],
                    S(2) * q[2] * z + q[4] * x + q[5] * y + q[8]);
  }

  Mat4T<S> matrix() const {
    Mat4T<S> M;
    M << q[0], q[3] / S(2), q[4] / S(2), q[6] / S(2),
         q[3] / S(2), q[1], q[5] / S(2), q[7] / S(2),
         q[4] / S(2), q[5] / S(2), q[2], q[8] / S(2),
         q[6] / S(2), q[7] / S(2), q[8] / S(2), q[9];
    return M;
  }

  Mat3T<S> quadratic_part() const {
    Mat3T<S> M;
    M << q[0], q[3] / S(2), q[4] / S(2),
         q[3] / S(2), q[1], q[5] / S(2),
         q[4] / S(2), q[5] / S(2), q[2];
    return M;
  }
};

using Plane = PlaneT<double>;
using Line = LineT<double>;
using Conic = ConicT<double>;
using Quadric = QuadricT<double>;

enum class ConicClass { ELLIPSE, PARABOLA, HYPERBOLA, DEGENERATE };
enum class QuadricClass { ELLIPSOID, NON_ELLIPSOID_QUADRIC, DEGENERATE };

inline const char* to_string(ConicClass c) {
  switch (c) {
    case ConicClass::ELLIPSE: return "ELLIPSE";
    case ConicClass::PARABOLA: return "PARABOLA";
    case ConicClass::HYPERBOLA: return "HYPERBOLA";
    case ConicClass::DEGENERATE: return "DEGENERATE";
  }
  return "?";
}

inline const char* to_string(QuadricClass c) {
  switch (c) {
    case QuadricClass::ELLIPSOID: return "ELLIPSOID";
    case QuadricClass::NON_ELLIPSOID_QUADRIC: return "NON_ELLIPSOID_QUADRIC";
    case QuadricClass::DEGENERATE: return "DEGENERATE";
  }
  return "?";
}

constexpr double kRankTol = 1e-9;
constexpr double kParallelTol = 1e-9;

// Conic classification on normalized coefficients. Ranks are decided by the
// eigenvalues of the symmetric conic matrix against rank_tol; an elliptic
// conic with an empty real locus (imaginary ellipse) is reported DEGENERATE,
// since no real curve exists.
template <typename S>
ConicClass classify_conic(const ConicT<S>& conic, S rank_tol = S(kRankTol)) {
  const auto& c = conic.c;
  Mat3T<S> M = conic.matrix();
  Eigen::SelfAdjointEigenSolver<Mat3T<S>> es(M);
  int rank = 0;
  for (int i = 0; i < 3; ++i)
    if (std::abs(es.eigenvalues()[i]) > rank_tol) ++rank;
  if (rank <= 2) return ConicClass::DEGENERATE;

  S disc = c[1] * c[1] - S(4) * c[0] * c[2];
  if (disc < -rank_tol) {
    // Elliptic type; real and bounded iff det(M) < 0 given A + C >= 0.
    if (M.determinant() < S(0)) return ConicClass::ELLIPSE;
    return ConicClass::DEGENERATE;  // imaginary ellipse, no real locus
  }
  if (disc > rank_tol) return ConicClass::HYPERBOLA;
  return ConicClass::PARABOLA;
}

// Quadric classification: DEGENERATE iff the 4x4 matrix has rank <= 3 within
// rank_tol; ELLIPSOID iff the quadratic part is positive definite (after the
// canonical sign) and the locus is real and bounded, decided by eigenvalues
// and the value at the center; all other full-rank quadrics are
// NON_ELLIPSOID_QUADRIC.
template <typename S>
QuadricClass classify_quadric(const QuadricT<S>& quad, S rank_tol = S(kRankTol)) {
  Mat4T<S> M4 = quad.matrix();
  Eigen::SelfAdjointEigenSolver<Mat4T<S>> es4(M4);
  int rank = 0;
  for (int i = 0; i < 4; ++i)
    if (std::abs(es4.eigenvalues()[i]) > rank_tol) ++rank;
  if (rank <= 3) return QuadricClass::DEGENERATE;

  Mat3T<S> M3 = quad.quadratic_part();
  Eigen::SelfAdjointEigenSolver<Mat3T<S>> es3(M3);
  if (es3.eigenvalues().minCoeff() > rank_tol) {
    Vec3T<S> b(quad.q[6] / S(2), quad.q[7] / S(2), quad.q[8] / S(2));
    Vec3T<S> center = M3.ldlt().solve(-b);
    S c0 = quad.q[9] + b.dot(center);
    if (c0 < S(0)) return QuadricClass::ELLIPSOID;
  }
  return QuadricClass::NON_ELLIPSOID_QUADRIC;
}

// Dihedral angle between two planes, in [0, pi/2]; 0 iff parallel.
template <typename S>
S dihedral_angle(const PlaneT<S>& H1, const PlaneT<S>& H2) {
  S c = std::abs(H1.n.dot(H2.n));
  if (c > S(1)) c = S(1);
  return std::acos(c);
}

// Line of intersection of two planes; PARALLEL_PLANES below parallel_tol.
template <typename S>
LineT<S> intersect_planes(const PlaneT<S>& H1, const PlaneT<S>& H2,
                          S parallel_tol = S(kParallelTol)) {
  if (dihedral_angle(H1, H2) <= parallel_tol)
    raise(Err::PARALLEL_PLANES, "planes do not meet in a line");
  Vec3T<S> u = H1.n.cross(H2.n).normalized();
  Mat3T<S> A;
  A.row(0) = H1.n.transpose();
  A.row(1) = H2.n.transpose();
  A.row(2) = u.transpose();
  Vec3T<S> rhs(H1.d, H2.d, S(0));
  Vec3T<S> p = A.fullPivLu().solve(rhs);
  return LineT<S>(p, u);
}

// ---------------------------------------------------------------------------
// In-plane frames. The origin is the plane point nearest the global origin,
// and (e1,e2) complete n via the deterministic smallest-component rule, so
// identical planes always get identical frames.
// ---------------------------------------------------------------------------
template <typename S>
struct PlaneFrameT {
  Vec3T<S> origin;
  Vec3T<S> e1, e2;
  Vec3T<S> normal;

  Vec3T<S> lift(const Vec2T<S>& uv) const {
    return origin + uv[0] * e1 + uv[1] * e2;
  }
  Vec2T<S> project(const Vec3T<S>& p) const {
    return Vec2T<S>((p - origin).dot(e1), (p - origin).dot(e2));
  }
};

using PlaneFrame = PlaneFrameT<double>;

template <typename S>
PlaneFrameT<S> frame_of(const PlaneT<S>& H) {
  PlaneFrameT<S> f;
  f.normal = H.n;
  f.origin = H.d * H.n;
  orthonormal_tangents(H.n, f.e1, f.e2);
  return f;
}

// Restriction of a quadric to a plane, expressed in the plane's frame.
// DEGENERATE_RESTRICTION when the plane is contained in the quadric.
template <typename S>
ConicT<S> restrict_quadric(const QuadricT<S>& Q, const PlaneT<S>& H,
                           S rank_tol = S(kRankTol)) {
  PlaneFrameT<S> f = frame_of(H);
  Eigen::Matrix<S, 4, 3> L;
  L.template block<3, 1>(0, 0) = f.e1;
  L.template block<3, 1>(0, 1) = f.e2;
  L.template block<3, 1>(0, 2) = f.origin;
  L.row(3) << S(0), S(0), S(1);
  Mat3T<S> C = L.transpose() * Q.matrix() * L;
  Vec6T<S> c;
  c << C(0, 0), S(2) * C(0, 1), C(1, 1), S(2) * C(0, 2), S(2) * C(1, 2), C(2, 2);
  if (c.norm() <= rank_tol)
    raise(Err::DEGENERATE_RESTRICTION, "plane is contained in the quadric");
  return ConicT<S>(c);
}

// Coefficients of the quadric after the rigid motion x -> R x + t, i.e. the
// zero set is the image of the original zero set.
template <typename S>
QuadricT<S> transform_quadric(const QuadricT<S>& Q, const Mat3T<S>& R,
                              const Vec3T<S>& t) {
  Mat4T<S> Tinv = Mat4T<S>::Identity();
  Tinv.template block<3, 3>(0, 0) = R.transpose();
  Tinv.template block<3, 1>(0, 3) = -R.transpose() * t;
  Mat4T<S> M = Tinv.transpose() * Q.matrix() * Tinv;
  Vec10T<S> q;
  q << M(0, 0), M(1, 1), M(2, 2), S(2) * M(0, 1), S(2) * M(0, 2), S(2) * M(1, 2),
      S(2) * M(0, 3), S(2) * M(1, 3), S(2) * M(2, 3), M(3, 3);
  return QuadricT<S>(q);
}

// ---------------------------------------------------------------------------
// Metric geometry of nondegenerate central conics / quadrics.
// ---------------------------------------------------------------------------
struct EllipseGeometry {
  Vec2 center;
  double semi_major = 0, semi_minor = 0;
  double angle = 0;  // direction of the semi-major axis
};

inline EllipseGeometry ellipse_geometry(const Conic& conic) {
  if (classify_conic(conic) != ConicClass::ELLIPSE)
    raise(Err::NOT_AN_ELLIPSE, "conic is not a real ellipse");
  Mat2 M2 = conic.quadratic_part();
  Vec2 b(conic.c[3] / 2, conic.c[4] / 2);
  Vec2 center = M2.ldlt().solve(-b);
  double v = conic.value(center);
  Eigen::SelfAdjointEigenSolver<Mat2> es(M2);
  double a0 = std::sqrt(-v / es.eigenvalues()[0]);
  double a1 = std::sqrt(-v / es.eigenvalues()[1]);
  EllipseGeometry g;
  g.center = center;
  // eigenvalues ascending, so axis 0 is the longer one
  g.semi_major = a0;
  g.semi_minor = a1;
  g.angle = std::atan2(es.eigenvectors()(1, 0), es.eigenvectors()(0, 0));
  if (g.angle < 0) g.angle += M_PI;
  return g;
}

struct EllipsoidGeometry {
  Vec3 center;
  Vec3 semi_axes;  // descending
  Mat3 axes;       // columns are the corresponding directions
};

inline EllipsoidGeometry ellipsoid_geometry(const Quadric& quad) {
  if (classify_quadric(quad) != QuadricClass::ELLIPSOID)
    raise(Err::INVALID_ARGUMENT, "quadric is not an ellipsoid");
  Mat3 M3 = quad.quadratic_part();
  Vec3 b(quad.q[6] / 2, quad.q[7] / 2, quad.q[8] / 2);
  Vec3 center = M3.ldlt().solve(-b);
  double c0 = quad.q[9] + b.dot(center);
  Eigen::SelfAdjointEigenSolver<Mat3> es(M3);
  EllipsoidGeometry g;
  g.center = center;
  for (int i = 0; i < 3; ++i) {
    g.semi_axes[i] = std::sqrt(-c0 / es.eigenvalues()[i]);
    g.axes.col(i) = es.eigenvectors().col(i);
  }
  // eigenvalues ascending => semi-axes already descending
  return g;
}

// Canonical coefficient distance; both inputs already canonicalized, so this
// is a plain norm.
inline double conic_distance(const Conic& a, const Conic& b) {
  return (a.c - b.c).norm();
}
inline double quadric_distance(const Quadric& a, const Quadric& b) {
  return (a.q - b.q).norm();
}

}  // namespace ellipsect
