#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "gzrep/errors.hpp"
#include "gzrep/sampling.hpp"
#include "gzrep/specfun.hpp"

using namespace gzrep;
using std::numbers::pi;

namespace {

// Reduces the imaginary part modulo 2 pi.
cd mod_2pi_i(cd z) {
  const double k = std::round(z.imag() / (2 * pi));
  return {z.real(), z.imag() - 2 * pi * k};
}

// Independent oracle: Stirling series at z + 12, recursion back down.
cd stirling_log_gamma(cd z) {
  cd shift = 0.0;
  cd w = z;
  while (std::abs(w) < 20.0 || w.real() < 10.0) {
    shift += std::log(w);
    w += 1.0;
  }
  const double b[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
  cd s = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2 * pi);
  cd wp = w;
  for (int k = 1; k <= 7; ++k) {
    s += b[k - 1] / (2.0 * k * (2.0 * k - 1) * wp);
    wp *= w * w;
  }
  return s - shift;
}

}  // namespace

TEST(LogGamma, ClassicalValues) {
  EXPECT_NEAR(std::abs(log_gamma(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(log_gamma(0.5) - std::log(std::sqrt(pi))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(log_gamma(5.0) - std::log(24.0)), 0.0, 1e-14);
}

TEST(LogGamma, RecursionShiftOracle) {
  const cd z(3.0, 4.0);
  cd oracle = log_gamma(z + 5.0);
  for (int k = 0; k < 5; ++k) oracle -= std::log(z + static_cast<double>(k));
  EXPECT_LT(std::abs(mod_2pi_i(log_gamma(z) - oracle)), 1e-13);
  // Frozen high-precision reference.
  const cd ref(-1.75662678460378411053060418162, 4.74266443803465792819488940755);
  EXPECT_LT(std::abs(mod_2pi_i(log_gamma(z) - ref)), 1e-13);
}

TEST(LogGamma, LeftHalfPlaneReference) {
  const cd ref(-0.432088892613201920515033396367, -9.09334542128974150730952146378);
  EXPECT_LT(std::abs(mod_2pi_i(log_gamma({-2.5, 0.3}) - ref)), 1e-13);
}

TEST(LogGamma, AgreesWithStirlingOracleOnBox) {
  Rng rng(11);
  for (int t = 0; t < 2000; ++t) {
    const cd z(rng.uniform(-40, 60), rng.uniform(-60, 60));
    if (std::abs(z.imag()) < 0.5 && z.real() < 0.5) continue;
    const cd diff = mod_2pi_i(log_gamma(z) - stirling_log_gamma(z));
    EXPECT_LT(std::abs(diff), 1e-13 * std::max(1.0, std::abs(stirling_log_gamma(z)) / 30.0)) << z;
  }
}

TEST(LogGamma, FunctionalEquation) {
  Rng rng(3);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const cd z(rng.uniform(-30, 30), rng.uniform(-30, 30));
    const cd r = mod_2pi_i(log_gamma(z + 1.0) - log_gamma(z) - std::log(z));
    worst = std::max(worst, std::abs(r));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(LogGamma, Reflection) {
  Rng rng(5);
  for (int t = 0; t < 2000; ++t) {
    const cd z(rng.uniform(-6, 6), rng.uniform(-3, 3));
    const cd v = gamma(z) * gamma(1.0 - z) * std::sin(pi * z);
    EXPECT_LT(std::abs(v - pi) / pi, 1e-10) << z;
  }
}

TEST(LogGamma, PolesThrowAndReciprocalVanishes) {
  EXPECT_THROW(log_gamma(0.0), PoleError);
  EXPECT_THROW(log_gamma(-3.0), PoleError);
  EXPECT_EQ(rgamma(-2.0), cd(0.0));
  EXPECT_TRUE(std::isinf(log_rgamma(0.0).real()));
  EXPECT_NO_THROW(log_gamma({-3.0, 1e-9}));
}

TEST(LogGamma, RealAxisMatchesStdLgamma) {
  for (double x = 0.05; x < 90; x *= 1.3) {
    EXPECT_NEAR(log_gamma(x).real(), std::lgamma(x), 1e-13 * std::max(1.0, std::abs(std::lgamma(x))));
  }
}

TEST(HbarPower, RealLogarithm) {
  const HBar h(0.37);
  const cd w(0.3, -1.1);
  EXPECT_LT(std::abs(hbar_power(h, w) - std::exp(w * std::log(0.37))), 1e-15);
  EXPECT_LT(std::abs(hbar_power(HBar(1.0), w) - 1.0), 1e-15);
}

TEST(Macdonald, HalfIntegerClosedForm) {
  const cd v = macdonald_k(0.5, 1.0);
  EXPECT_NEAR(std::abs(v - std::sqrt(pi / 2) * std::exp(-1.0)), 0.0, 1e-13);
  for (double z : {0.1, 0.7, 3.0, 12.0}) {
    EXPECT_NEAR(std::abs(macdonald_k(0.5, z) - std::sqrt(pi / (2 * z)) * std::exp(-z)), 0.0, 1e-12);
    // K_{3/2}(z) = sqrt(pi/2z) e^{-z} (1 + 1/z)
    EXPECT_NEAR(std::abs(macdonald_k(1.5, z) - std::sqrt(pi / (2 * z)) * std::exp(-z) * (1 + 1 / z)), 0.0,
                1e-12 * (1 + 1 / z));
  }
}

TEST(Macdonald, FrozenReferences) {
  EXPECT_NEAR(macdonald_k(0.0, 2.0).real(), 0.113893872749533435652719574932, 1e-14);
  EXPECT_NEAR(std::abs(macdonald_k({0.0, 2.0}, 1.5) - 0.0693318572126196319279303887612), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(macdonald_k({0.3, -1.7}, 0.4) - cd(0.0189244140573250803245179786197,
                                                           -0.109653136614628483969261915864)),
              0.0, 1e-12);
  EXPECT_NEAR(std::abs(macdonald_k({0.0, 5.0}, 3.0) - 0.00037941674688920078868817273178), 0.0, 1e-12);
}

TEST(Macdonald, EvenInOrder) {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const cd nu(rng.uniform(-2, 2), rng.uniform(-10, 10));
    const double z = rng.uniform(0.1, 6.0);
    const cd a = macdonald_k(nu, z), b = macdonald_k(-nu, z);
    EXPECT_LT(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST(Macdonald, DomainError) {
  EXPECT_THROW(macdonald_k(0.3, 0.0), DomainError);
  EXPECT_THROW(macdonald_k(0.3, -1.0), DomainError);
}

TEST(Gauss2F1, SeriesConstantAndLogOracle) {
  EXPECT_EQ(gauss_2f1({0.3, 1}, {2, -1}, {1.5, 0.2}, 0.0), cd(1.0));
  EXPECT_NEAR(std::abs(gauss_2f1(1, 1, 2, 0.5) - 2 * std::log(2.0)), 0.0, 1e-14);
  for (double x : {-0.9, -0.3, 0.1, 0.6, 0.95}) {
    EXPECT_NEAR(std::abs(gauss_2f1(1, 1, 2, x) + std::log(1 - x) / x), 0.0, 1e-12);
  }
}

TEST(Gauss2F1, SymmetryAndReference) {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const cd a = rng.complex_in_box(3, 3), b = rng.complex_in_box(3, 3);
    const cd c(rng.uniform(0.5, 4.0), rng.uniform(-2, 2));
    const double x = rng.uniform(-0.9, 0.9);
    const cd u = gauss_2f1(a, b, c, x), v = gauss_2f1(b, a, c, x);
    EXPECT_LT(std::abs(u - v), 1e-12 * std::max(1.0, std::abs(u)));
  }
  const cd ref(0.788756154589202158991586914903, -0.0364895923101917000299290113255);
  EXPECT_LT(std::abs(gauss_2f1({0.5, 0.2}, {-1.3, 0.7}, {2.1, -0.4}, 0.63) - ref), 1e-13);
  const cd ref2(1.32048888436025827129841728225, -0.0103484722248653310200280036206);
  EXPECT_LT(std::abs(gauss_2f1({0.5, 0.2}, {-1.3, 0.7}, {2.1, -0.4}, -0.8) - ref2), 1e-13);
}

TEST(Gauss2F1, DomainErrors) {
  EXPECT_THROW(gauss_2f1(1, 1, -2.0, 0.3), DomainError);
  EXPECT_THROW(gauss_2f1(1, 1, 2, 1.0), DomainError);
}

TEST(Legendre, Trivial) {
  EXPECT_EQ(legendre_p({0.3, 2.0}, 1.0), cd(1.0));
  EXPECT_NEAR(std::abs(legendre_p(1.0, 2.0) - 2.0), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(legendre_p_two_term(1.0, 2.0) - 2.0), 0.0, 1e-13);
  // P_2(x) = (3x^2 - 1)/2
  EXPECT_NEAR(std::abs(legendre_p(2.0, 3.0) - 13.0), 0.0, 1e-11);
}

TEST(Legendre, OdeResidual) {
  const cd nu(-0.5, 0.7);
  const double x = std::cosh(1.0);
  const double h = 1e-3;
  const cd pm = legendre_p(nu, x - h), p0 = legendre_p(nu, x), pp = legendre_p(nu, x + h);
  const cd d1 = (pp - pm) / (2 * h);
  const cd d2 = (pp - 2.0 * p0 + pm) / (h * h);
  const cd residual = (1 - x * x) * d2 - 2 * x * d1 + nu * (nu + 1.0) * p0;
  EXPECT_LT(std::abs(residual) / std::abs(p0), 1e-5);
  EXPECT_NEAR(std::abs(p0 - 0.830178077854033943564695459652), 0.0, 1e-12);
}

TEST(Legendre, FrozenReferencesAndRouteAgreement) {
  const cd nu(0.3, -1.2);
  EXPECT_LT(std::abs(legendre_p(nu, 3.7) - cd(-0.204577555246836134854289023912, -0.844553125428229804939051437055)),
            1e-12);
  EXPECT_LT(std::abs(legendre_p(nu, 1.2) - cd(0.894250142798000881468538120115, -0.173727043071306023807889862319)),
            1e-13);
  Rng rng(4);
  for (int t = 0; t < 40; ++t) {
    const cd v(rng.uniform(-1.5, 1.5), rng.uniform(-3, 3));
    const double x = rng.uniform(1.3, 2.9);
    const cd a = legendre_p_two_term(v, x), b = legendre_p_near_one(v, x);
    EXPECT_LT(std::abs(a - b), 1e-11 * std::max(1.0, std::abs(b))) << v << " " << x;
  }
}

TEST(Legendre, DegenerateParameter) {
  EXPECT_THROW(legendre_p_two_term(0.5, 2.0), DegenerateParameterError);
  EXPECT_THROW(legendre_p(-0.5, 2.0), DegenerateParameterError);
  EXPECT_THROW(legendre_p(0.2, 0.5), DomainError);
}

TEST(HarishChandra, Values) {
  const HBar h(0.37);
  const cd v = harish_chandra_c(0.0, cd(0.0, 0.37), h);  // lambda1 - lambda2 = -i hbar
  EXPECT_NEAR(std::abs(v - std::sqrt(pi)), 0.0, 1e-14);
  EXPECT_THROW(harish_chandra_c(0.4, 0.4, h), PoleError);
  EXPECT_THROW(harish_chandra_c(cd(0.0, 2 * 0.37 * 3), 0.0, h), PoleError);  // kappa = 3
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
    const cd prod = harish_chandra_c(a, b, h) * harish_chandra_c(b, a, h);
    EXPECT_TRUE(std::isfinite(prod.real()) && std::isfinite(prod.imag()));
  }
}
