#include "ellipsect/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "ellipsect/errors.hpp"

namespace ellipsect {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Binomial coefficients of (a + b t)^n as coefficients in t.
std::vector<double> linear_power(double a, double b, int n) {
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  for (int k = 0; k < n; ++k) {
    std::vector<double> next(c.size() + 0, 0.0);
    next.assign(k + 2, 0.0);
    for (int i = 0; i <= k; ++i) {
      next[i] += a * c[i];
      next[i + 1] += b * c[i];
    }
    c = next;
  }
  return c;
}

std::vector<double> convolve(const std::vector<double>& p,
                             const std::vector<double>& q) {
  std::vector<double> r(p.size() + q.size() - 1, 0.0);
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

}  // namespace

Poly3::Poly3(std::vector<Monomial> terms) {
  std::map<std::tuple<int, int, int>, double> merged;
  for (const auto& m : terms) {
    if (m.ex < 0 || m.ey < 0 || m.ez < 0)
      raise(Err::INVALID_ARGUMENT, "negative monomial exponent");
    merged[{m.ex, m.ey, m.ez}] += m.coeff;
  }
  for (const auto& [key, coeff] : merged) {
    if (coeff == 0.0) continue;
    auto [ex, ey, ez] = key;
    terms_.push_back({ex, ey, ez, coeff});
    degree_ = std::max(degree_, ex + ey + ez);
  }
}

Poly3 Poly3::from_quadric(const Quadric& q) {
  return Poly3({{2, 0, 0, q.q[0]},
                {0, 2, 0, q.q[1]},
                {0, 0, 2, q.q[2]},
                {1, 1, 0, q.q[3]},
                {1, 0, 1, q.q[4]},
                {0, 1, 1, q.q[5]},
                {1, 0, 0, q.q[6]},
                {0, 1, 0, q.q[7]},
                {0, 0, 1, q.q[8]},
                {0, 0, 0, q.q[9]}});
}

double Poly3::eval(const Vec3& p) const {
  double s = 0.0;
  for (const auto& m : terms_)
    s += m.coeff * ipow(p[0], m.ex) * ipow(p[1], m.ey) * ipow(p[2], m.ez);
  return s;
}

Vec3 Poly3::gradient(const Vec3& p) const {
  Vec3 g = Vec3::Zero();
  for (const auto& m : terms_) {
    double px = ipow(p[0], m.ex), py = ipow(p[1], m.ey), pz = ipow(p[2], m.ez);
    if (m.ex > 0) g[0] += m.coeff * m.ex * ipow(p[0], m.ex - 1) * py * pz;
    if (m.ey > 0) g[1] += m.coeff * m.ey * px * ipow(p[1], m.ey - 1) * pz;
    if (m.ez > 0) g[2] += m.coeff * m.ez * px * py * ipow(p[2], m.ez - 1);
  }
  return g;
}

Mat3 Poly3::hessian(const Vec3& p) const {
  Mat3 H = Mat3::Zero();
  for (const auto& m : terms_) {
    const int e[3] = {m.ex, m.ey, m.ez};
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        int d[3] = {e[0], e[1], e[2]};
        double factor = 1.0;
        if (i == j) {
          if (e[i] < 2) continue;
          factor = double(e[i]) * (e[i] - 1);
          d[i] -= 2;
        } else {
          if (e[i] < 1 || e[j] < 1) continue;
          factor = double(e[i]) * e[j];
          d[i] -= 1;
          d[j] -= 1;
        }
        double v = m.coeff * factor * ipow(p[0], d[0]) * ipow(p[1], d[1]) *
                   ipow(p[2], d[2]);
        H(i, j) += v;
        if (i != j) H(j, i) += v;
      }
    }
  }
  return H;
}

std::vector<double> Poly3::restrict_to_ray(const Vec3& a, const Vec3& u) const {
  std::vector<double> out(degree_ + 1, 0.0);
  for (const auto& m : terms_) {
    std::vector<double> prod = linear_power(a[0], u[0], m.ex);
    prod = convolve(prod, linear_power(a[1], u[1], m.ey));
    prod = convolve(prod, linear_power(a[2], u[2], m.ez));
    for (size_t i = 0; i < prod.size(); ++i) out[i] += m.coeff * prod[i];
  }
  while (out.size() > 1 && out.back() == 0.0) out.pop_back();
  return out;
}

Poly3 Poly3::operator-() const {
  std::vector<Monomial> t = terms_;
  for (auto& m : t) m.coeff = -m.coeff;
  return Poly3(std::move(t));
}

double eval_poly(const std::vector<double>& coeffs, double t) {
  double s = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) s = s * t + coeffs[i];
  return s;
}

std::vector<double> derive_poly(const std::vector<double>& coeffs) {
  if (coeffs.size() <= 1) return {0.0};
  std::vector<double> d(coeffs.size() - 1);
  for (size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * double(i);
  return d;
}

std::vector<double> real_roots(const std::vector<double>& coeffs,
                               double imag_tol) {
  // strip leading (highest-order) zeros
  std::vector<double> c = coeffs;
  while (c.size() > 1 && std::abs(c.back()) < 1e-300) c.pop_back();
  const int n = int(c.size()) - 1;
  std::vector<double> roots;
  if (n <= 0) return roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  MatX companion = MatX::Zero(n, n);
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<MatX> es(companion);
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    scale = std::max(scale, std::abs(es.eigenvalues()[i]));
  for (int i = 0; i < n; ++i) {
    auto ev = es.eigenvalues()[i];
    if (std::abs(ev.imag()) <= imag_tol * std::max(1.0, scale))
      roots.push_back(ev.real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace ellipsect
