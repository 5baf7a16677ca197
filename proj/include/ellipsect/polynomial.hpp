#pragma once

// Trivariate polynomials in monomial form. This is the implicit-function
// backbone for convex bodies: evaluation, analytic gradient/Hessian, and
// exact restriction to rays, which turns every boundary query into
// univariate root finding.

#include <array>
#include <vector>

#include "ellipsect/kernel.hpp"
#include "ellipsect/types.hpp"

namespace ellipsect {

struct Monomial {
  int ex = 0, ey = 0, ez = 0;
  double coeff = 0.0;
};

class Poly3 {
 public:
  Poly3() = default;
  explicit Poly3(std::vector<Monomial> terms);

  static Poly3 from_quadric(const Quadric& q);

  const std::vector<Monomial>& terms() const { return terms_; }
  int degree() const { return degree_; }

  double eval(const Vec3& p) const;
  Vec3 gradient(const Vec3& p) const;
  Mat3 hessian(const Vec3& p) const;

  // Coefficients (ascending powers of t) of g(a + t u).
  std::vector<double> restrict_to_ray(const Vec3& a, const Vec3& u) const;

  Poly3 operator-() const;

 private:
  std::vector<Monomial> terms_;  // merged, zero terms dropped
  int degree_ = 0;
};

// ---------------------------------------------------------------------------
// Univariate helpers for the ray restrictions.
// ---------------------------------------------------------------------------

double eval_poly(const std::vector<double>& coeffs, double t);
std::vector<double> derive_poly(const std::vector<double>& coeffs);

// All real roots, via the companion matrix of the deflated polynomial.
std::vector<double> real_roots(const std::vector<double>& coeffs,
                               double imag_tol = 1e-9);

}  // namespace ellipsect
