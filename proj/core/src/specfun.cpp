#include "gzrep/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "gzrep/errors.hpp"

namespace gzrep {
namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cd z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

bool is_integer(cd z, double tol) {
  return std::abs(z.imag()) <= tol && std::abs(z.real() - std::round(z.real())) <= tol;
}

cd log_gamma_right(cd z) {
  // Re z >= 0.5
  const cd zm = z - 1.0;
  cd x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    x += kLanczos[i] / (zm + static_cast<double>(i));
  }
  const cd t = zm + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (zm + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(w) without overflow for large |Im w| (defined mod 2 pi i).
cd log_sin(cd w) {
  const cd i(0.0, 1.0);
  if (w.imag() >= 0.0) {
    return -i * w - std::log(2.0) + i * (kPi / 2) + std::log(1.0 - std::exp(2.0 * i * w));
  }
  return i * w - std::log(2.0) - i * (kPi / 2) + std::log(1.0 - std::exp(-2.0 * i * w));
}

}  // namespace

cd log_gamma(cd z) {
  if (is_nonpositive_integer(z)) {
    throw PoleError("log_gamma: pole at non-positive integer");
  }
  if (z.real() >= 0.5) return log_gamma_right(z);
  // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
  return std::log(kPi) - log_sin(kPi * z) - log_gamma_right(1.0 - z);
}

cd gamma(cd z) { return std::exp(log_gamma(z)); }

cd rgamma(cd z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

cd log_rgamma(cd z) {
  if (is_nonpositive_integer(z)) return {-std::numeric_limits<double>::infinity(), 0.0};
  return -log_gamma(z);
}

cd hbar_power(HBar hbar, cd w) { return std::exp(w * std::log(hbar.value())); }

cd macdonald_k(cd nu, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("macdonald_k: argument must be positive");
  const double re_nu = std::abs(nu.real());
  // The integrand modulus is bounded by exp(-z cosh t + |Re nu| t); cut where it
  // has dropped by e^-40 below its maximum.
  const double t_peak = std::asinh(re_nu / z);
  const double peak = -z * std::cosh(t_peak) + re_nu * t_peak;
  double t_max = t_peak + 0.5;
  while (-z * std::cosh(t_max) + re_nu * t_max > peak - 40.0) t_max += 0.25;

  auto f = [&](double t) {
    return std::exp(-z * std::cosh(t)) * std::cosh(nu * t);
  };

  int intervals = 32;
  double h = t_max / intervals;
  cd sum = 0.5 * (f(0.0) + f(t_max));
  double l1 = 0.5 * (std::abs(f(0.0)) + std::abs(f(t_max)));
  for (int k = 1; k < intervals; ++k) {
    const cd v = f(k * h);
    sum += v;
    l1 += std::abs(v);
  }
  cd value = h * sum;
  for (int level = 0; level < 16; ++level) {
    cd odd = 0.0;
    for (int k = 0; k < intervals; ++k) {
      const cd v = f((k + 0.5) * h);
      odd += v;
      l1 += std::abs(v);
    }
    sum += odd;
    intervals *= 2;
    h *= 0.5;
    const cd refined = h * sum;
    const double delta = std::abs(refined - value);
    value = refined;
    if (delta <= 1e-15 * std::max(std::abs(value), h * l1)) break;
  }
  return value;
}

cd gauss_2f1(cd a, cd b, cd c, double x) {
  if (!(std::abs(x) < 1.0)) throw DomainError("gauss_2f1: |x| must be < 1");
  if (is_nonpositive_integer(c)) throw DomainError("gauss_2f1: c is a non-positive integer");
  cd term = 1.0;
  cd sum = 1.0;
  const double ax = std::abs(x);
  const double params = std::abs(a) + std::abs(b) + std::abs(c);
  constexpr long kMaxTerms = 20'000'000;
  for (long k = 0; k < kMaxTerms; ++k) {
    const double kk = static_cast<double>(k);
    const cd ratio = (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0));
    term *= ratio * x;
    sum += term;
    if (term == 0.0) return sum;
    // Past the parameter scale the term ratio tends to |x|; bound the tail geometrically.
    if (kk > params + 4.0) {
      const double r = std::max(std::abs(ratio) * ax, ax);
      if (r < 1.0) {
        const double tail = std::abs(term) * r / (1.0 - r);
        if (tail <= 1e-17 * std::abs(sum) || tail <= 1e-300) return sum;
      }
    }
  }
  throw DomainError("gauss_2f1: series did not converge");
}

cd legendre_p_two_term(cd nu, double x) {
  if (!(x >= 1.0)) throw DomainError("legendre_p: argument must be >= 1");
  if (x == 1.0) return 1.0;
  const cd kappa = nu + 0.5;
  if (is_integer(kappa, 1e-12)) {
    throw DegenerateParameterError("legendre_p: nu + 1/2 is an integer; two-term form degenerates");
  }
  const double a = std::acosh(x);
  const double y = std::exp(-2.0 * a);
  const cd r1 = std::exp(log_gamma(-kappa)) * rgamma(0.5 - kappa);
  const cd r2 = std::exp(log_gamma(kappa)) * rgamma(0.5 + kappa);
  const cd t1 = std::exp(-kappa * a) * r1 * gauss_2f1(0.5, 0.5 + kappa, 1.0 + kappa, y);
  const cd t2 = std::exp(kappa * a) * r2 * gauss_2f1(0.5, 0.5 - kappa, 1.0 - kappa, y);
  return std::exp(-0.5 * a) / std::sqrt(kPi) * (t1 + t2);
}

cd legendre_p_near_one(cd nu, double x) {
  if (!(x >= 1.0)) throw DomainError("legendre_p: argument must be >= 1");
  if (!(x < 3.0)) throw DomainError("legendre_p_near_one: requires x < 3");
  return gauss_2f1(-nu, nu + 1.0, 1.0, (1.0 - x) / 2.0);
}

cd legendre_p(cd nu, double x) {
  if (!(x >= 1.0)) throw DomainError("legendre_p: argument must be >= 1");
  if (x == 1.0) return 1.0;
  if (x <= 1.5) return legendre_p_near_one(nu, x);
  return legendre_p_two_term(nu, x);
}

cd harish_chandra_c(cd lambda1, cd lambda2, HBar hbar) {
  const cd kappa = (lambda1 - lambda2) / (cd(0.0, 2.0) * hbar.value());
  if (is_integer(kappa, 1e-12) && std::round(kappa.real()) >= 0.0) {
    throw PoleError("harish_chandra_c: numerator pole");
  }
  return std::exp(log_gamma(-kappa)) * rgamma(0.5 - kappa);
}

}  // namespace gzrep
