#include "tpa/response.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tpa {
namespace {

constexpr cplx I{0.0, 1.0};

cplx pole(double coupling, cplx omega, double omega_s, double gamma_s) {
  return I * coupling / (omega - omega_s + I * gamma_s);
}

cplx sum_e(const LevelSystem& sys, double omega) {
  const double c = std::sqrt(sys.prefactor());
  cplx s = 0.0;
  for (const auto& l : sys.levels()) s += pole(c * l.weight, omega, l.omega, l.gamma);
  return s;
}

cplx l_f(const LevelSystem& sys, cplx omega) {
  return pole(std::sqrt(sys.prefactor()), omega, sys.omega_f(), sys.gamma_f());
}

// exp(z) − 1 without cancellation for small |z|.
cplx expm1c(cplx z) {
  const double a = z.real(), b = z.imag();
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// e^{iCτ} (e^{−iXτ} − e^{−iBτ})/(X − B); removable at X = B, never overflows
// for the arguments used below (Im X ≤ 0, Im B < 0).
cplx shifted_difference(double c, cplx x, cplx b, double tau) {
  const cplx d = x - b;
  const cplx z = -I * d * tau;
  if (std::abs(z) < 0.5) {
    const cplx phi1 = z == 0.0 ? cplx(1.0) : expm1c(z) / z;
    return std::exp(I * (c - b) * tau) * (-I * tau) * phi1;
  }
  return (std::exp(I * (c - x) * tau) - std::exp(I * (c - b) * tau)) / d;
}

cplx global_phase(double omega1, double omega2, const ResponseOptions& opts) {
  if (opts.drop_global_phase || opts.t_minus_t0 == 0.0) return 1.0;
  return std::exp(-I * (omega1 + omega2) * opts.t_minus_t0);
}

void check_time(const ResponseOptions& opts) {
  if (!std::isfinite(opts.t_minus_t0) || opts.t_minus_t0 < 0.0)
    throw std::invalid_argument("t_minus_t0 must be finite and non-negative");
}

void require_single_level(const LevelSystem& sys, const char* what) {
  if (sys.multi_level())
    throw std::domain_error(std::string(what) +
                            ": closed form unavailable for multiple intermediate levels");
}

}  // namespace

cplx lineshape(const LevelSystem& sys, Level level, double omega) {
  if (level == Level::e) return sum_e(sys, omega);
  return l_f(sys, omega);
}

cplx response_infinite(const LevelSystem& sys, double omega1, double omega2,
                       const ResponseOptions& opts) {
  check_time(opts);
  const cplx t = (sum_e(sys, omega1) + sum_e(sys, omega2)) * l_f(sys, omega1 + omega2);
  return t * global_phase(omega1, omega2, opts);
}

cplx response_asymmetric(const LevelSystem& sys, double omega1, double omega2,
                         const ResponseOptions& opts) {
  check_time(opts);
  return sum_e(sys, omega1) * l_f(sys, omega1 + omega2) * global_phase(omega1, omega2, opts);
}

cplx response_finite(const LevelSystem& sys, const ResponseOptions& opts, double omega1,
                     double omega2) {
  check_time(opts);
  const double tau = opts.t_minus_t0;
  const double c = omega1 + omega2;
  const double cf = std::sqrt(sys.prefactor());
  const cplx b{sys.omega_f(), -sys.gamma_f()};

  auto half = [&](double w1, double w2) {
    cplx acc = 0.0;
    for (const auto& l : sys.levels()) {
      const cplx x2{w2 + l.omega, -l.gamma};
      const cplx bracket = shifted_difference(c, c, b, tau) - shifted_difference(c, x2, b, tau);
      acc += pole(cf * l.weight, w1, l.omega, l.gamma) * bracket;
    }
    return I * cf * acc;
  };
  cplx t = half(omega1, omega2) + half(omega2, omega1);
  if (!opts.drop_global_phase) t *= std::exp(-I * c * tau);
  return t;
}

double normalization(const LevelSystem& sys) {
  require_single_level(sys, "normalization");
  const double k = sys.prefactor();
  return 2.0 * std::numbers::pi * std::numbers::pi * k * k / (sys.gamma_e() * sys.gamma_f());
}

cplx optimal_state(const LevelSystem& sys, double omega1, double omega2) {
  return std::conj(response_infinite(sys, omega1, omega2)) / std::sqrt(normalization(sys));
}

double marginal_sum(const LevelSystem& sys, double omega_plus) {
  const double gf = sys.gamma_f();
  const double x = omega_plus - sys.omega_f();
  return gf / (std::numbers::pi * (x * x + gf * gf));
}

double marginal_single(const LevelSystem& sys, double omega) {
  require_single_level(sys, "marginal_single");
  const double ge = sys.gamma_e(), gf = sys.gamma_f();
  const double we = sys.omega_e(), wf = sys.omega_f();
  const double x = omega - we;
  const double y = omega - wf + we;
  const double det = wf - 2.0 * we;
  const double num = ge * (ge + gf) * (4.0 * ge + gf) + ge * det * det + gf * x * x;
  const double den = 2.0 * std::numbers::pi * (x * x + ge * ge) * (y * y + (ge + gf) * (ge + gf));
  return num / den;
}

}  // namespace tpa
