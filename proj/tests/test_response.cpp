#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tpa/response.hpp"
#include "tpa/schmidt.hpp"

using namespace tpa;

TEST_CASE("level system validates its invariants") {
  CHECK_THROWS_AS(LevelSystem(0.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(LevelSystem(0.0, -2.5), std::invalid_argument);
  CHECK_THROWS_AS(LevelSystem(LevelParams{.gamma_e = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(LevelSystem(LevelParams{.prefactor = -1.0}), std::invalid_argument);
  const LevelSystem s(LevelParams{.detuning = 3.0, .deviation = 0.5, .gamma_e = 2.0, .omega_e = 1.0});
  CHECK(s.omega_f() == doctest::Approx(2.0 + 6.0));
  CHECK(s.gamma_f() == doctest::Approx(5.0));
}

TEST_CASE("lineshape basics") {
  const LevelSystem s(0.0, 0.0);
  const cplx l0 = lineshape(s, Level::e, 0.0);
  CHECK(l0.imag() == 0.0);
  CHECK(l0.real() == doctest::Approx(1.0));
  CHECK(std::norm(lineshape(s, Level::e, 1.0)) / std::norm(l0) == doctest::Approx(0.5));
  double prev = std::abs(l0);
  for (double w = 0.5; w < 1e4; w *= 2) {
    const double a = std::abs(lineshape(s, Level::e, w));
    CHECK(a < prev);
    CHECK(std::abs(lineshape(s, Level::e, -w)) == doctest::Approx(a));
    prev = a;
  }
}

TEST_CASE("infinite response symmetry and peak") {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> u(-30, 30);
  const LevelSystem s(LevelParams{.detuning = 2.3, .deviation = -0.7,
                                  .intermediates = {{0.0, 1.0, 1.0}, {3.0, 0.4, 0.6}}});
  for (int i = 0; i < 100; ++i) {
    const double a = u(g), b = u(g);
    CHECK(response_infinite(s, a, b) == response_infinite(s, b, a));
  }
  const LevelSystem s0(0.0, 0.0);
  const double peak = std::abs(response_infinite(s0, 0.0, 0.0));
  for (double a = -3; a <= 3; a += 0.25)
    for (double b = -3; b <= 3; b += 0.25) CHECK(std::abs(response_infinite(s0, a, b)) <= peak);
}

TEST_CASE("anti-diagonal concentration for Delta=5, delta=-1.9") {
  const LevelSystem s(5.0, -1.9);
  // Along a fixed anti-diagonal offset the weight falls off like a Lorentzian of width γ_f.
  const double a = 0.0;
  const double on = std::norm(response_infinite(s, a, s.omega_f() - a));
  const double off = std::norm(response_infinite(s, a, s.omega_f() - a + s.gamma_f()));
  CHECK(off / on == doctest::Approx(0.5).epsilon(0.02));
  const double far = std::norm(response_infinite(s, a, s.omega_f() - a + 20 * s.gamma_f()));
  CHECK(far / on < 0.01);
}

TEST_CASE("finite-time response") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(-6, 6);
  const LevelSystem s(1.5, -0.5);
  ResponseOptions zero{0.0, true};
  for (int i = 0; i < 50; ++i) CHECK(response_finite(s, zero, u(g), u(g)) == cplx(0.0));

  ResponseOptions late{50.0, true};
  for (int i = 0; i < 100; ++i) {
    const double a = u(g), b = u(g);
    const cplx fin = response_finite(s, late, a, b);
    CHECK(fin == response_finite(s, late, b, a));
    const cplx inf = response_infinite(s, a, b);
    CHECK(std::abs(fin - inf) <= 1e-6 * std::abs(inf));
  }
  // Keeping the global phase multiplies by exp(−i(ω1+ω2)τ).
  ResponseOptions kept{7.0, false};
  ResponseOptions dropped{7.0, true};
  const cplx ph = std::exp(cplx(0, -(0.3 + 1.1) * 7.0));
  CHECK(std::abs(response_finite(s, kept, 0.3, 1.1) - ph * response_finite(s, dropped, 0.3, 1.1)) < 1e-14);

  // δ = −1 makes γ_f = γ_e: the second divided difference hits its removable point.
  const LevelSystem t(0.0, -1.0);
  const cplx v = response_finite(t, ResponseOptions{3.0, true}, 0.2, t.omega_f() - t.omega_e());
  CHECK(std::isfinite(v.real()));
  CHECK(std::isfinite(v.imag()));
  const cplx near = response_finite(t, ResponseOptions{3.0, true}, 0.2, t.omega_f() - t.omega_e() + 1e-9);
  CHECK(std::abs(v - near) < 1e-7 * std::abs(v));
  CHECK_THROWS_AS(response_finite(s, ResponseOptions{-1.0, true}, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("asymmetric kernel composes the symmetric one") {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(-40, 40);
  const LevelSystem s(4.0, -1.2);
  int asymmetric = 0;
  for (int i = 0; i < 100; ++i) {
    const double a = u(g), b = u(g);
    const cplx t = response_infinite(s, a, b);
    const cplx q = response_asymmetric(s, a, b) + response_asymmetric(s, b, a);
    // Rounding is relative to the summands, which can cancel.
    const double scale = std::abs(response_asymmetric(s, a, b)) + std::abs(response_asymmetric(s, b, a));
    CHECK(std::abs(q - t) <= 4e-16 * scale);
    if (std::abs(response_asymmetric(s, a, b) - response_asymmetric(s, b, a)) > 1e-8 * std::abs(t)) ++asymmetric;
  }
  CHECK(asymmetric == 100);
}

TEST_CASE("asymmetric kernel at large detuning keeps one peak") {
  const LevelSystem s(100.0, -1.5);
  const double top_left = std::norm(response_asymmetric(s, s.omega_e(), s.omega_f() - s.omega_e()));
  const double bottom_right = std::norm(response_asymmetric(s, s.omega_f() - s.omega_e(), s.omega_e()));
  CHECK(bottom_right < 1e-3 * top_left);
  const double t_br = std::norm(response_infinite(s, s.omega_f() - s.omega_e(), s.omega_e()));
  CHECK(t_br > 0.5 * top_left);
}

TEST_CASE("normalization against an independent double integral") {
  for (auto [det, dev] : {std::pair{0.0, 0.0}, {5.0, -1.9}, {1.0, -1.0}, {0.3, 1.5}}) {
    const LevelSystem s(LevelParams{.detuning = det, .deviation = dev, .gamma_e = 1.3, .omega_e = 0.7, .prefactor = 2.0});
    const double ref = oracle::norm_t(oracle::levels(det, dev, 1.3, 0.7, 2.0));
    CHECK(oracle::rel_err(normalization(s), ref) < 1e-7);
  }
  CHECK(normalization(LevelSystem(0.0, 1e-9)) == doctest::Approx(normalization(LevelSystem(0.0, 0.0))).epsilon(1e-8));
  CHECK(normalization(LevelSystem(37.0, -0.4)) == normalization(LevelSystem(0.0, -0.4)));
  const LevelSystem multi(LevelParams{.intermediates = {{0, 1, 1}, {1, 1, 1}}});
  CHECK_THROWS_AS(normalization(multi), std::domain_error);
  CHECK_THROWS_AS(marginal_single(multi, 0.0), std::domain_error);
}

TEST_CASE("normalized state is prefactor invariant") {
  const LevelSystem a(2.0, -0.5);
  for (double c : {1e-6, 0.37, 1.0, 42.0, 1e5}) {
    const LevelSystem b = a.with_prefactor(c);
    for (double w1 = -4; w1 <= 4; w1 += 1.3)
      for (double w2 = -4; w2 <= 6; w2 += 1.7) {
        const cplx x = optimal_state(a, w1, w2), y = optimal_state(b, w1, w2);
        CHECK(std::abs(x - y) <= 1e-12 * std::abs(x));
      }
  }
}

TEST_CASE("sum-frequency marginal") {
  const LevelSystem s(2.0, -0.6);
  CHECK(marginal_sum(s, s.omega_f()) == doctest::Approx(1.0 / (std::numbers::pi * s.gamma_f())));
  const double mass = oracle::integrate_line(
      [&](long double x) { return static_cast<long double>(marginal_sum(s, static_cast<double>(x))); },
      s.omega_f(), s.gamma_f(), 200);
  CHECK(static_cast<double>(mass) == doctest::Approx(1.0).epsilon(1e-12));
  const LevelSystem sharp(2.0, -2.0 + 1e-4);
  CHECK(marginal_sum(sharp, sharp.omega_f()) > 1e3);
  CHECK(marginal_sum(sharp, sharp.omega_f() + 0.1) < 1e-2);
}

TEST_CASE("single-photon marginal") {
  const LevelSystem s0(0.0, 0.0);
  for (double w = -20; w <= 20; w += 0.37) {
    const double lor = 1.0 / (std::numbers::pi * (w * w + 1.0));
    CHECK(std::abs(marginal_single(s0, w) - lor) <= 1e-15);
  }
  for (auto [det, dev, ge, we] : {std::tuple{5.0, -1.9, 1.0, 0.0}, {2.0, 0.5, 0.7, 1.0}, {0.0, -1.0, 1.0, 0.0}}) {
    const LevelSystem s(LevelParams{.detuning = det, .deviation = dev, .gamma_e = ge, .omega_e = we});
    const auto l = oracle::levels(det, dev, ge, we);
    for (double w : {we - 3.0, we, we + 0.5 * det * ge, s.omega_f() - we, s.omega_f() + 2.0})
      CHECK(oracle::rel_err(marginal_single(s, w), oracle::marginal_single(l, w, normalization(s))) < 1e-8);
    const long double mass = oracle::integrate_line(
        [&](long double x) { return static_cast<long double>(marginal_single(s, static_cast<double>(x))); },
        we, ge, 400);
    CHECK(static_cast<double>(mass) == doctest::Approx(1.0).epsilon(1e-8));
  }
  // Double-peak structure at Δ = 5, δ = −1.9.
  const LevelSystem s(5.0, -1.9);
  const double pe = marginal_single(s, s.omega_e());
  const double pf = marginal_single(s, s.omega_f() - s.omega_e());
  const double mid = marginal_single(s, 0.5 * s.omega_f());
  CHECK(pe > 1.5 * mid);
  CHECK(pf > 1.5 * mid);
  // Exactly one local minimum on [ω_e − 3, ω_f − ω_e + 3].
  int minima = 0;
  double prev = marginal_single(s, s.omega_e() - 3.0), slope = 0;
  for (double w = s.omega_e() - 2.95; w <= s.omega_f() - s.omega_e() + 3.0; w += 0.05) {
    const double v = marginal_single(s, w);
    const double sl = v - prev;
    if (slope < 0 && sl > 0) ++minima;
    if (sl != 0) slope = sl;
    prev = v;
  }
  CHECK(minima == 1);
}
