#include "tpa/faddeeva.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tpa {
namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

// w(z) for x ≥ 0, y ≥ 0. Power series near the origin, Gautschi's truncated
// continued fraction with Taylor correction in the middle region and the plain
// Laplace continued fraction outside (Poppe & Wijers layout).
cplx faddeeva_first_quadrant(double x, double y) {
  const double xs = x / 6.3, ys = y / 4.4;
  double qrho = xs * xs + ys * ys;
  const double xquad = x * x - y * y;
  const double yquad = 2.0 * x * y;

  if (qrho < 0.085264) {
    qrho = (1.0 - 0.85 * ys) * std::sqrt(qrho);
    const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
    int j = 2 * n + 1;
    double xsum = 1.0 / j, ysum = 0.0;
    for (int i = n; i >= 1; --i) {
      j -= 2;
      const double xaux = (xsum * xquad - ysum * yquad) / i;
      ysum = (xsum * yquad + ysum * xquad) / i;
      xsum = xaux + 1.0 / j;
    }
    const double u1 = -kTwoOverSqrtPi * (xsum * y + ysum * x) + 1.0;
    const double v1 = kTwoOverSqrtPi * (xsum * x - ysum * y);
    const double daux = std::exp(-xquad);
    const double u2 = daux * std::cos(yquad);
    const double v2 = -daux * std::sin(yquad);
    return {u1 * u2 - v1 * v2, u1 * v2 + v1 * u2};
  }

  double h = 0.0;
  int kapn = 0, nu = 0;
  if (qrho > 1.0) {
    nu = static_cast<int>(3.0 + 1442.0 / (26.0 * std::sqrt(qrho) + 77.0));
  } else {
    const double q = (1.0 - ys) * std::sqrt(1.0 - qrho);
    h = 1.88 * q;
    kapn = static_cast<int>(std::lround(7.0 + 34.0 * q));
    nu = static_cast<int>(std::lround(16.0 + 26.0 * q));
  }
  const double h2 = 2.0 * h;
  const bool corrected = h > 0.0;
  double qlambda = corrected ? std::pow(h2, kapn) : 0.0;
  double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
  for (int n = nu; n >= 0; --n) {
    const double np1 = n + 1.0;
    double tx = y + h + np1 * rx;
    const double ty = x - np1 * ry;
    const double c = 0.5 / (tx * tx + ty * ty);
    rx = c * tx;
    ry = c * ty;
    if (corrected && n <= kapn) {
      tx = qlambda + sx;
      sx = rx * tx - ry * sy;
      sy = ry * tx + rx * sy;
      qlambda /= h2;
    }
  }
  double u = kTwoOverSqrtPi * (corrected ? sx : rx);
  const double v = kTwoOverSqrtPi * (corrected ? sy : ry);
  if (y == 0.0) u = std::exp(-x * x);
  return {u, v};
}

cplx faddeeva_upper(cplx z) {
  const cplx w = faddeeva_first_quadrant(std::abs(z.real()), z.imag());
  return z.real() < 0.0 ? std::conj(w) : w;
}

}  // namespace

cplx faddeeva(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("faddeeva: non-finite argument");
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

cplx complex_normal_cdf(cplx z) {
  if (!(std::abs(z) <= kNormalCdfDomain))
    throw std::domain_error("complex_normal_cdf: |z| outside validated domain (" +
                            std::to_string(kNormalCdfDomain) + ")");
  const double s = std::numbers::sqrt2 / 2.0;
  const cplx g = 0.5 * std::exp(-0.5 * z * z);
  if (z.real() <= 0.0) return g * faddeeva_upper(cplx(z.imag(), -z.real()) * s);
  return 1.0 - g * faddeeva_upper(cplx(-z.imag(), z.real()) * s);
}

}  // namespace tpa
