#pragma once

#include <complex>

#include "gzrep/hbar.hpp"

namespace gzrep {

using cd = std::complex<double>;

/// Principal branch of log Gamma(z). Throws PoleError at non-positive integers.
cd log_gamma(cd z);

/// Gamma(z) = exp(log_gamma(z)).
cd gamma(cd z);

/// 1/Gamma(z); entire, returns exactly 0 at the poles of Gamma.
cd rgamma(cd z);

/// log(1/Gamma(z)); the real part is -infinity at the poles of Gamma.
cd log_rgamma(cd z);

/// hbar^w = exp(w ln hbar) for real hbar > 0.
cd hbar_power(HBar hbar, cd w);

/// Macdonald function K_nu(z) for z > 0 from the integral
/// int_0^inf exp(-z cosh t) cosh(nu t) dt.
cd macdonald_k(cd nu, double z);

/// Gauss hypergeometric series 2F1(a, b; c; x) for real |x| < 1.
cd gauss_2f1(cd a, cd b, cd c, double x);

/// Legendre function P_nu(x) for real x >= 1.
///
/// Uses the two-term 2F1 representation in y = exp(-2 acosh x) with
/// kappa = nu + 1/2; close to x = 1 it switches to 2F1(-nu, nu + 1; 1; (1 - x)/2).
/// Throws DegenerateParameterError when kappa is an integer (two-term branch).
cd legendre_p(cd nu, double x);

/// Same as legendre_p but always uses the two-term representation.
cd legendre_p_two_term(cd nu, double x);

/// Same as legendre_p but always uses the series in (1 - x)/2; valid for x < 3.
cd legendre_p_near_one(cd nu, double x);

/// Harish-Chandra coefficient Gamma(-k)/Gamma(1/2 - k) with k = (l1 - l2)/(2 i hbar).
cd harish_chandra_c(cd lambda1, cd lambda2, HBar hbar);

}  // namespace gzrep
