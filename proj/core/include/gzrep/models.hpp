#pragma once

// Toda chain and hyperbolic Sutherland wave functions as Mellin-Barnes type
// integrals over Gelfand-Zetlin patterns, their N = 2 closed forms, and
// finite-difference checks of the Hamiltonian eigen-equations.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gzrep/gz_core.hpp"
#include "gzrep/quad.hpp"

namespace gzrep {

struct SpectralParams {
  std::vector<cd> gamma;  // top row gamma_N
  HBar hbar{1.0};
};

struct WaveSample {
  std::vector<double> x;
  cd value = 0.0;
  double err_estimate = 0.0;
};

enum class TodaMethod { direct, recursive };

struct WaveOptions {
  double tol = 1e-10;
  QuadOptions quad;
  std::optional<ContourSpec> contour;  // direct and Sutherland: replaces the default contour
  double recursive_delta = 1.0;        // recursive: level spacing in units of hbar
};

/// Throws ConfigurationError unless the top row has pairwise distinct entries.
void validate_params(const SpectralParams& params);

/// Log of the Toda integrand at a full pattern, plane wave included.
cd toda_log_integrand(const GzPattern& p, std::span<const double> x, HBar hbar);

/// The same integrand written in the unshifted coordinates, e^{-x.rho} prefactor included.
/// Agrees with toda_log_integrand at gamma_nj -> gamma_nj - i hbar (N - n)/2.
cd toda_unshifted_log_integrand(const GzPattern& p, std::span<const double> x, HBar hbar);

/// One integral per x; the direct method shares the Gamma tables across all points.
std::vector<WaveSample> toda_wavefunction(const SpectralParams& params, const std::vector<std::vector<double>>& xs,
                                          TodaMethod method, const WaveOptions& opt = {});
WaveSample toda_wavefunction(const SpectralParams& params, const std::vector<double>& x, TodaMethod method,
                             const WaveOptions& opt = {});

/// Direct quadrature with prod_j (lambda - gamma_{row, j}) inserted into the integrand.
struct RowMultiplier {
  int row = 1;
  cd lambda = 0.0;
};
std::vector<WaveSample> toda_wavefunction_with_multiplier(const SpectralParams& params,
                                                          const std::vector<std::vector<double>>& xs,
                                                          const RowMultiplier& mult, const WaveOptions& opt = {});

/// 4 pi hbar e^{(i/2hbar)(g21+g22)(x1+x2)} K_{(g21-g22)/i hbar}((2/hbar) e^{(x1-x2)/2}).
cd toda_n2_oracle(const SpectralParams& params, std::span<const double> x);

/// Differential operator sum_t c_t(x) d^{J_t}, each J_t a set of distinct coordinates.
struct DiffTerm {
  std::function<cd(std::span<const double>)> coeff;
  unsigned mask = 0;  // bit j - 1 set: one derivative in x_j
};
using DiffOperator = std::vector<DiffTerm>;

/// Toda Lax recursion A_n = (lambda - p_n) A_{n-1} - e^{x_{n-1} - x_n} A_{n-2}, p = -i hbar d.
DiffOperator toda_lax_operator(int n, cd lambda, HBar hbar);
DiffOperator toda_h1(int levels, HBar hbar);
DiffOperator toda_h2(int levels, HBar hbar);
DiffOperator sutherland_h2(int levels, HBar hbar);
/// -hbar^2 sum_{m<n} (d_m d_n - coth(x_m - x_n)(d_m - d_n)/2), acting on the spherical function.
DiffOperator sutherland_phi_h2(int levels, HBar hbar);

struct FdOptions {
  double h_scale = 1e-3;   // h_j = h_scale (1 + |x_j|)
  bool richardson = true;  // one extrapolation level from steps h and 2h
};

/// Stencil points needed to apply any DiffOperator at x.
std::vector<std::vector<double>> fd_stencil(std::span<const double> x, const FdOptions& fd);

/// Applies `op` at x from values on fd_stencil(x, fd) (same order).
cd apply_fd(const DiffOperator& op, std::span<const double> x, std::span<const cd> values, const FdOptions& fd);

struct EigenResidual {
  std::string name;
  std::vector<double> x;
  cd lhs = 0.0;
  cd rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, |psi|)
};

struct EigenReport {
  std::vector<EigenResidual> items;
  double max_residual(const std::string& prefix = "") const;
};

struct EigenOptions {
  FdOptions fd;
  std::vector<cd> lambdas;  // A_N(lambda) checks
  TodaMethod method = TodaMethod::direct;
  WaveOptions wave;
};

/// h1, h2 and A_N(lambda) against the spectral values at every x.
EigenReport toda_eigencheck(const SpectralParams& params, const std::vector<std::vector<double>>& xs,
                            const EigenOptions& opt = {});

/// A_n(lambda) psi by finite differences against the integral with prod_j (lambda - gamma_nj) inserted.
EigenResidual toda_qism_identity(const SpectralParams& params, const std::vector<double>& x, cd lambda, int n,
                                 const EigenOptions& opt = {});

/// Psi = prod_{j<k} sinh^{1/2}(x_j - x_k) Phi with Phi the real-contour integral;
/// x must lie in the chamber x_1 > ... > x_N.
std::vector<WaveSample> sutherland_wavefunction(const SpectralParams& params,
                                                const std::vector<std::vector<double>>& xs,
                                                const WaveOptions& opt = {});
/// Phi alone (no sinh prefactor).
std::vector<WaveSample> sutherland_spherical(const SpectralParams& params, const std::vector<std::vector<double>>& xs,
                                             const WaveOptions& opt = {});

/// sinh^{1/2}(x1-x2) (4 pi^3 hbar / cosh(pi (g21-g22)/2hbar)) e^{(i/2hbar)(g21+g22)(x1+x2)}
/// P_{(g21-g22)/2i hbar - 1/2}(cosh(x1-x2)).
cd sutherland_n2_oracle(const SpectralParams& params, std::span<const double> x);

/// Ratio of the oracle constant to 4 pi hbar (pi^2).
double sutherland_n2_constant_ratio();

/// Large-separation form of Phi at N = 2:
/// (4 pi^{5/2} hbar / cosh) e^{-(x1-x2)/2} [c(g21,g22) e^{(i/hbar)(g21 x1+g22 x2)} + c(g22,g21) e^{(i/hbar)(g22 x1+g21 x2)}].
cd sutherland_n2_asymptotic(const SpectralParams& params, std::span<const double> x);

/// h1 and h2 on Psi, and the second-order equation on Phi with the sigma_2(rho) shift.
EigenReport sutherland_eigencheck(const SpectralParams& params, const std::vector<std::vector<double>>& xs,
                                  const EigenOptions& opt = {});

/// Elementary symmetric function e_k of the entries.
cd elementary_symmetric(std::span<const cd> v, int k);

}  // namespace gzrep
