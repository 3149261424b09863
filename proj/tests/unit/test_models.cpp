#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gzrep/errors.hpp"
#include "gzrep/models.hpp"
#include "gzrep/sampling.hpp"

using namespace gzrep;
using cd = std::complex<double>;

namespace {
double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

std::vector<std::vector<double>> separations(double lo, double hi, int count, double shift = 0.1) {
  std::vector<std::vector<double>> xs;
  for (int i = 0; i < count; ++i) {
    const double d = lo + (hi - lo) * i / (count - 1);
    xs.push_back({0.5 * d + shift, -0.5 * d + shift});
  }
  return xs;
}
}  // namespace

TEST(Toda, SingleParticleIsPlaneWave) {
  SpectralParams p{{cd(0.7, 0.1)}, HBar(0.5)};
  const WaveSample w = toda_wavefunction(p, std::vector<double>{1.3}, TodaMethod::direct);
  EXPECT_LT(rel(w.value, std::exp(cd(0, 1) / 0.5 * cd(0.7, 0.1) * 1.3)), 1e-15);
  EXPECT_EQ(w.err_estimate, 0.0);
}

TEST(Toda, RejectsRepeatedSpectrumAndBadShapes) {
  SpectralParams p{{0.5, 0.5}, HBar(1.0)};
  EXPECT_THROW(toda_wavefunction(p, {0.0, 0.0}, TodaMethod::direct), ConfigurationError);
  SpectralParams q{{0.5, -0.5}, HBar(1.0)};
  EXPECT_THROW(toda_wavefunction(q, std::vector<double>{0.0}, TodaMethod::direct), ConfigurationError);
  SpectralParams big{{0.1, 0.2, 0.3, 0.4}, HBar(1.0)};
  EXPECT_THROW(toda_wavefunction(big, {0, 0, 0, 0}, TodaMethod::direct), ConfigurationError);
}

TEST(Toda, MatchesMacdonaldClosedFormAtTwoParticles) {
  for (const auto& g : {std::vector<cd>{0.5, -0.5}, std::vector<cd>{1.3, 0.2}}) {
    for (const double hb : {1.0, 0.37}) {
      SpectralParams p{g, HBar(hb)};
      const auto xs = separations(-2.0, 2.0, 21);
      const auto w = toda_wavefunction(p, xs, TodaMethod::direct);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const cd oracle = toda_n2_oracle(p, xs[i]);
        EXPECT_LT(rel(w[i].value, oracle), 1e-8) << "hbar " << hb << " x " << xs[i][0] << "," << xs[i][1];
        EXPECT_LE(std::abs(w[i].value - oracle), 10.0 * w[i].err_estimate);
      }
    }
  }
}

TEST(Toda, RecursiveMatchesClosedFormAtTwoParticles) {
  SpectralParams p{{1.3, 0.2}, HBar(1.0)};
  const auto xs = separations(-1.5, 1.5, 5);
  const auto w = toda_wavefunction(p, xs, TodaMethod::recursive);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_LT(rel(w[i].value, toda_n2_oracle(p, xs[i])), 1e-9);
}

TEST(Toda, ComplexSpectrumUsesShiftedContour) {
  SpectralParams p{{cd(0.4, 0.3), cd(-0.6, -0.2)}, HBar(1.0)};
  const std::vector<double> x = {0.2, -0.1};
  EXPECT_LT(rel(toda_wavefunction(p, x, TodaMethod::direct).value, toda_n2_oracle(p, x)), 1e-9);
}

TEST(Toda, ContourOffsetsDoNotMatter) {
  SpectralParams p{{0.5, -0.5}, HBar(1.0)};
  const std::vector<double> x = {0.4, -0.3};
  const cd base = toda_wavefunction(p, x, TodaMethod::direct).value;
  for (const double shift : {-0.1, 0.1}) {
    WaveOptions opt;
    ContourSpec spec = default_contour(2, p.hbar, p.gamma);
    spec.offsets[0] += shift;
    opt.contour = spec;
    EXPECT_LT(rel(toda_wavefunction(p, x, TodaMethod::direct, opt).value, base), 1e-10);
  }
}

TEST(Toda, ContourBelowTopRowRejected) {
  SpectralParams p{{0.5, -0.5}, HBar(1.0)};
  WaveOptions opt;
  ContourSpec spec = default_contour(2, p.hbar, p.gamma);
  spec.offsets[0] = -0.2;
  opt.contour = spec;
  EXPECT_THROW(toda_wavefunction(p, {0.0, 0.0}, TodaMethod::direct, opt), DomainError);
}

TEST(Toda, ThreeParticlesDirectAgreesWithRecursive) {
  SpectralParams p{{0.5, -0.2, -0.4}, HBar(1.0)};
  WaveOptions opt;
  opt.tol = 1e-6;
  const std::vector<double> x = {0.3, 0.0, -0.3};
  const WaveSample d = toda_wavefunction(p, x, TodaMethod::direct, opt);
  const WaveSample r = toda_wavefunction(p, x, TodaMethod::recursive, opt);
  EXPECT_LT(std::abs(d.value - r.value), d.err_estimate + r.err_estimate);
  EXPECT_LT(rel(d.value, r.value), 1e-5);
}

TEST(Toda, TopRowPermutationInvariance) {
  WaveOptions opt;
  opt.tol = 1e-6;
  const std::vector<double> x = {0.2, -0.1, 0.3};
  const cd a = toda_wavefunction({{0.5, -0.2, -0.4}, HBar(1.0)}, x, TodaMethod::direct, opt).value;
  const cd b = toda_wavefunction({{-0.4, 0.5, -0.2}, HBar(1.0)}, x, TodaMethod::direct, opt).value;
  EXPECT_LT(rel(a, b), 1e-7);
  const std::vector<double> x2 = {0.2, -0.1};
  EXPECT_LT(rel(toda_wavefunction({{1.3, 0.2}, HBar(1.0)}, x2, TodaMethod::direct).value,
                toda_wavefunction({{0.2, 1.3}, HBar(1.0)}, x2, TodaMethod::direct).value),
            1e-12);
}

TEST(Toda, UnshiftedIntegrandAgreesAfterShift) {
  Rng rng(7);
  const HBar hb(0.8);
  const int N = 3;
  GzPattern p(N);
  for (int n = 1; n <= N; ++n)
    for (int j = 1; j <= n; ++j) p(n, j) = cd(rng.uniform(-2, 2), rng.uniform(-0.2, 0.2) + 1.5 * (N - n));
  GzPattern q = p;
  for (int n = 1; n < N; ++n)
    for (int j = 1; j <= n; ++j) q(n, j) -= cd(0.0, hb.value() * (N - n) / 2.0);
  const std::vector<double> x = {0.3, -0.7, 0.1};
  const cd a = std::exp(toda_log_integrand(p, x, hb));
  const cd b = std::exp(toda_unshifted_log_integrand(q, x, hb));
  EXPECT_LT(rel(a, b), 1e-12);
}

TEST(FiniteDifference, StencilSizes) {
  FdOptions fd;
  EXPECT_EQ(fd_stencil(std::vector<double>{0.0, 0.0}, fd).size(), 17u);
  EXPECT_EQ(fd_stencil(std::vector<double>{0.0, 0.0, 0.0}, fd).size(), 53u);
  fd.richardson = false;
  EXPECT_EQ(fd_stencil(std::vector<double>{0.0, 0.0, 0.0}, fd).size(), 27u);
  fd.h_scale = 0.0;
  EXPECT_THROW(fd_stencil(std::vector<double>{0.0}, fd), ConfigurationError);
}

TEST(FiniteDifference, MixedDerivativesOfExponential) {
  const std::vector<double> x = {0.3, -0.4, 0.2};
  const std::vector<double> k = {0.7, -1.1, 0.4};
  FdOptions fd;
  fd.h_scale = 1e-2;  // third derivatives: rounding grows like eps / h^3
  const auto pts = fd_stencil(x, fd);
  std::vector<cd> v;
  for (const auto& p : pts) v.push_back(std::exp(k[0] * p[0] + k[1] * p[1] + k[2] * p[2]));
  DiffOperator op = {{[](std::span<const double>) { return cd(1.0); }, 0b111}};
  const cd exact = k[0] * k[1] * k[2] * std::exp(k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
  EXPECT_LT(rel(apply_fd(op, x, v, fd), exact), 1e-7);
  EXPECT_THROW(apply_fd(op, x, std::span<const cd>(v.data(), 10), fd), ConfigurationError);
}

TEST(FiniteDifference, LaxOperatorAtOneAndTwo) {
  const HBar hb(1.0);
  EXPECT_EQ(toda_lax_operator(1, 0.5, hb).size(), 2u);  // lambda - p_1
  EXPECT_EQ(toda_lax_operator(2, 0.5, hb).size(), 5u);  // (lambda - p_2)(lambda - p_1) - e^{x_1 - x_2}
  EXPECT_EQ(toda_lax_operator(3, 0.5, hb).size(), 12u);
}

TEST(TodaEigen, TwoParticleHamiltonians) {
  SpectralParams p{{0.5, -0.5}, HBar(1.0)};
  EigenOptions opt;
  opt.lambdas = {0.7, 0.5};
  const EigenReport r = toda_eigencheck(p, {{0.3, -0.2}, {-0.5, 0.4}}, opt);
  EXPECT_LT(r.max_residual("h1"), 1e-6);
  EXPECT_LT(r.max_residual("h2"), 1e-4);
  EXPECT_LT(r.max_residual("lax"), 1e-4);
  // lambda = gamma_21 is a root: the Lax operator annihilates psi.
  for (const auto& it : r.items) {
    if (it.name == "lax" && it.rhs == 0.0) EXPECT_LT(std::abs(it.lhs), 1e-6);
  }
}

TEST(TodaEigen, ResidualsAreSecondOrderInStep) {
  SpectralParams p{{0.5, -0.5}, HBar(1.0)};
  EigenOptions coarse, fine;
  coarse.fd = {0.04, false};
  fine.fd = {0.02, false};
  const EigenReport a = toda_eigencheck(p, {{0.3, -0.2}}, coarse);
  const EigenReport b = toda_eigencheck(p, {{0.3, -0.2}}, fine);
  for (const std::string name : {"h1", "h2"}) {
    const double order = std::log2(a.max_residual(name) / b.max_residual(name));
    EXPECT_GE(order, 1.7) << name;
    EXPECT_LE(order, 2.3) << name;
  }
}

TEST(TodaEigen, QismIdentityLowLevels) {
  SpectralParams p{{0.5, -0.5}, HBar(1.0)};
  EigenOptions opt;
  EXPECT_LT(toda_qism_identity(p, {0.3, -0.2}, cd(0.4, 0.1), 1, opt).residual, 1e-8);
  EXPECT_LT(toda_qism_identity(p, {0.3, -0.2}, cd(0.4, 0.1), 2, opt).residual, 1e-8);
  EXPECT_THROW(toda_qism_identity(p, {0.3, -0.2}, 0.4, 3, opt), ConfigurationError);
}

TEST(TodaEigen, ThreeParticlesCoarse) {
  SpectralParams p{{0.5, -0.2, -0.4}, HBar(1.0)};
  EigenOptions opt;
  opt.wave.tol = 1e-6;
  opt.lambdas = {0.3};
  const EigenReport r = toda_eigencheck(p, {{0.3, 0.0, -0.3}}, opt);
  EXPECT_LT(r.max_residual("h1"), 1e-6);
  EXPECT_LT(r.max_residual("h2"), 1e-3);
  EXPECT_LT(r.max_residual("lax"), 1e-3);
  EXPECT_LT(toda_qism_identity(p, {0.3, 0.0, -0.3}, cd(0.4, 0.2), 2, opt).residual, 1e-4);
}

TEST(Sutherland, MatchesLegendreClosedForm) {
  for (const auto& g : {std::vector<cd>{0.5, -0.5}, std::vector<cd>{1.3, 0.2}}) {
    for (const double hb : {1.0, 0.37}) {
      SpectralParams p{g, HBar(hb)};
      const auto xs = separations(0.1, 3.0, 20, -0.2);
      const auto w = sutherland_wavefunction(p, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_LT(rel(w[i].value, sutherland_n2_oracle(p, xs[i])), 1e-8);
    }
  }
  EXPECT_NEAR(sutherland_n2_constant_ratio(), std::numbers::pi * std::numbers::pi, 1e-15);
}

TEST(Sutherland, HarishChandraAsymptotics) {
  SpectralParams p{{1.3, 0.2}, HBar(1.0)};
  const std::vector<double> x = {4.0, -4.0};
  const cd phi = sutherland_spherical(p, {x})[0].value;
  EXPECT_LT(rel(phi, sutherland_n2_asymptotic(p, x)), 1e-2);
}

TEST(Sutherland, KernelIsPositiveOnRealLine) {
  // With x = 0 the integral of a positive kernel is real and positive.
  SpectralParams p{{0.5, -0.5}, HBar(1.0)};
  const cd phi = sutherland_spherical(p, {{0.0, 0.0}})[0].value;
  EXPECT_GT(phi.real(), 0.0);
  EXPECT_LT(std::abs(phi.imag()), 1e-12 * phi.real());
}

TEST(Sutherland, DomainErrors) {
  SpectralParams p{{0.5, -0.5}, HBar(1.0)};
  EXPECT_THROW(sutherland_wavefunction(p, {{0.0, 0.0}}), DomainError);
  EXPECT_THROW(sutherland_wavefunction(p, {{-0.5, 0.5}}), DomainError);
  SpectralParams c{{cd(0.5, 0.1), -0.5}, HBar(1.0)};
  EXPECT_THROW(sutherland_spherical(c, {{0.5, -0.5}}), DomainError);
  EigenOptions opt;
  opt.fd.h_scale = 0.2;
  EXPECT_THROW(sutherland_eigencheck(p, {{0.1, 0.0}}, opt), ConfigurationError);
}

TEST(SutherlandEigen, TwoParticles) {
  SpectralParams p{{0.5, -0.5}, HBar(1.0)};
  const EigenReport r = sutherland_eigencheck(p, {{0.6, -0.3}, {1.5, 0.2}});
  EXPECT_LT(r.max_residual("h1"), 1e-6);
  EXPECT_LT(r.max_residual("h2"), 1e-4);
  EXPECT_LT(r.max_residual("phi_h2"), 1e-4);
}

TEST(SutherlandEigen, ThreeParticlesCoarse) {
  SpectralParams p{{0.5, -0.2, -0.6}, HBar(1.0)};
  EigenOptions opt;
  opt.wave.tol = 1e-6;
  const EigenReport r = sutherland_eigencheck(p, {{0.8, 0.1, -0.6}}, opt);
  EXPECT_LT(r.max_residual("h1"), 1e-6);
  EXPECT_LT(r.max_residual("h2"), 1e-4);
  EXPECT_LT(r.max_residual("phi_h2"), 1e-4);
}

TEST(Symmetric, ElementaryFunctions) {
  const std::vector<cd> v = {1.0, 2.0, 3.0};
  EXPECT_EQ(elementary_symmetric(v, 1), cd(6.0));
  EXPECT_EQ(elementary_symmetric(v, 2), cd(11.0));
  EXPECT_EQ(elementary_symmetric(v, 3), cd(6.0));
}
