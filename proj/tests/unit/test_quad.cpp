#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "gzrep/errors.hpp"
#include "gzrep/quad.hpp"

using namespace gzrep;
using cd = std::complex<double>;

namespace {
const double kPi = std::numbers::pi;

PairwiseLogIntegrand coupled_gaussian() {
  PairwiseLogIntegrand f;
  f.unary = {[](cd z) { return -z * z; }, [](cd z) { return -z * z; }};
  f.pairs.push_back({0, 1, [](cd a, cd b) { return 0.6 * a * b; }});
  return f;
}
}  // namespace

TEST(LineIntegral, Gaussian) {
  const GridResult r = line_integral([](cd t) { return std::exp(-t * t); }, 0.0, 8.0, 257);
  EXPECT_NEAR(r.value.real(), std::sqrt(kPi), 1e-13);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-13);
  EXPECT_LT(r.halving_delta, 1e-12);
}

TEST(LineIntegral, ShiftedLineGivesSameValue) {
  const GridResult r = line_integral([](cd t) { return std::exp(-t * t); }, 0.7, 9.0, 301);
  EXPECT_NEAR(std::abs(r.value - std::sqrt(kPi)), 0.0, 1e-12);
}

TEST(LineIntegral, SuppliedTailEntersError) {
  const GridResult r = line_integral([](cd t) { return std::exp(-t * t); }, 0.0, 8.0, 257, 1e-5);
  EXPECT_DOUBLE_EQ(r.tail, 1e-5);
  EXPECT_GE(r.error, 1e-5);
}

TEST(LineIntegral, CoarseGridReportsLargeDelta) {
  const GridResult r = line_integral([](cd t) { return std::exp(-t * t); }, 0.0, 8.0, 17);
  EXPECT_GT(r.halving_delta, 1e-6);
}

TEST(GridIntegral, SeparableProduct) {
  std::vector<Axis> axes = {{0.0, 0.0, 8.0, 201, 0}, {0.0, 0.0, 8.0, 201, 1}};
  auto r = grid_integral(axes, 2, [](std::span<const cd> z, std::span<cd> out) {
    out[0] = std::exp(-z[0] * z[0] - 2.0 * z[1] * z[1]);
    out[1] = z[0] * z[0] * std::exp(-z[0] * z[0] - z[1] * z[1]);
  });
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].value.real(), kPi / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r[1].value.real(), 0.5 * kPi, 1e-12);
  EXPECT_EQ(r[0].group_deltas.size(), 2u);
}

TEST(GridIntegral, NonFiniteThrows) {
  std::vector<Axis> axes = {{0.0, 0.0, 4.0, 33, 0}};
  EXPECT_THROW(grid_integral(axes, 1, [](std::span<const cd>, std::span<cd> out) { out[0] = cd(NAN, 0.0); }),
               EvaluationError);
}

TEST(GridIntegral, BadAxesRejected) {
  std::vector<Axis> even = {{0.0, 0.0, 4.0, 32, 0}};
  auto f = [](std::span<const cd>, std::span<cd> out) { out[0] = 1.0; };
  EXPECT_THROW(grid_integral(even, 1, f), ConfigurationError);
  std::vector<Axis> flat = {{0.0, 0.0, 0.0, 33, 0}};
  EXPECT_THROW(grid_integral(flat, 1, f), ConfigurationError);
}

TEST(StructuredIntegral, CoupledGaussianWithVariants) {
  std::vector<Axis> axes = {{0.0, 0.0, 9.0, 241, 0}, {0.0, 0.0, 9.0, 241, 0}};
  Variant plain;
  Variant tilted;
  tilted.factor = {[](cd z) { return std::exp(0.2 * z); }, {}};
  auto r = structured_integral(axes, coupled_gaussian(), {plain, tilted});
  // exp(-z^T A z + b^T z) with A = [[1, -0.3], [-0.3, 1]], b = (0.2, 0).
  const double det = 0.91;
  EXPECT_NEAR(r[0].value.real(), kPi / std::sqrt(det), 1e-12);
  EXPECT_NEAR(r[1].value.real(), kPi / std::sqrt(det) * std::exp(0.01 / det), 1e-12);
}

TEST(StructuredIntegral, AgreesWithGenericEngine) {
  std::vector<Axis> axes = {{0.3, 0.2, 7.0, 121, 0}, {0.0, -0.1, 7.0, 121, 1}, {0.0, 0.0, 7.0, 121, 1}};
  PairwiseLogIntegrand f;
  f.unary = {[](cd z) { return -z * z; }, [](cd z) { return -0.5 * z * z + cd(0, 0.3) * z; },
             [](cd z) { return -z * z; }};
  f.pairs.push_back({0, 2, [](cd a, cd b) { return 0.2 * a * b; }});
  f.pairs.push_back({2, 1, [](cd a, cd b) { return -0.1 * a * b; }});
  auto s = structured_integral(axes, f, {});
  auto g = grid_integral(axes, 1, [](std::span<const cd> z, std::span<cd> out) {
    out[0] = std::exp(-z[0] * z[0] - 0.5 * z[1] * z[1] + cd(0, 0.3) * z[1] - z[2] * z[2] + 0.2 * z[0] * z[2] -
                      0.1 * z[1] * z[2]);
  });
  EXPECT_LT(std::abs(s[0].value - g[0].value), 1e-12 * std::abs(g[0].value));
  ASSERT_EQ(s[0].group_deltas.size(), 2u);
}

TEST(StructuredIntegral, LargeLogsAreRescaled) {
  std::vector<Axis> axes = {{0.0, 0.0, 8.0, 201, 0}};
  PairwiseLogIntegrand f;
  f.unary = {[](cd z) { return 700.0 - z * z; }};
  auto r = structured_integral(axes, f, {});
  EXPECT_NEAR(r[0].value.real() / std::exp(700.0) / std::sqrt(kPi), 1.0, 1e-12);
  f.unary = {[](cd z) { return -700.0 - z * z; }};
  auto tiny = structured_integral(axes, f, {});
  EXPECT_NEAR(tiny[0].value.real() / std::exp(-700.0) / std::sqrt(kPi), 1.0, 1e-12);
}

TEST(StructuredIntegral, BitStableAcrossWorkerCounts) {
  std::vector<Axis> axes = {{0.0, 0.0, 9.0, 121, 0}, {0.0, 0.0, 9.0, 121, 0}};
  QuadOptions one, three;
  one.workers = 1;
  three.workers = 3;
  auto a = structured_integral(axes, coupled_gaussian(), {}, one);
  auto b = structured_integral(axes, coupled_gaussian(), {}, three);
  EXPECT_EQ(std::memcmp(&a[0].value, &b[0].value, sizeof(cd)), 0);
  EXPECT_EQ(a[0].error, b[0].error);
}

TEST(DefaultContour, ShapeAndOrdering) {
  std::vector<cd> top = {{0.5, 0.2}, {-0.4, -0.3}, {0.1, 0.0}};
  const ContourSpec s = default_contour(3, HBar(1.0), top);
  ASSERT_EQ(s.offsets.size(), 2u);
  EXPECT_GT(s.offsets[1], 0.2);
  EXPECT_GT(s.offsets[0], s.offsets[1]);
  EXPECT_EQ(s.nodes % 2, 1);
  EXPECT_GE(s.nodes, 257);
  EXPECT_NO_THROW(validate_contour(s, 3, top));
}

TEST(DefaultContour, RealKindHasZeroOffsets) {
  std::vector<cd> top = {0.5, -0.5};
  const ContourSpec s = default_contour(2, HBar(0.5), top, ContourKind::real);
  EXPECT_EQ(s.offsets[0], 0.0);
  EXPECT_NO_THROW(validate_contour(s, 2, top));
}

TEST(ValidateContour, OrderingViolationsRejected) {
  std::vector<cd> top = {{0.5, 0.2}, {-0.4, -0.3}, {0.1, 0.0}};
  ContourSpec s = default_contour(3, HBar(1.0), top);
  std::swap(s.offsets[0], s.offsets[1]);
  EXPECT_THROW(validate_contour(s, 3, top), DomainError);
  ContourSpec low = default_contour(3, HBar(1.0), top);
  low.offsets[1] = 0.1;
  low.offsets[0] = 0.5;
  EXPECT_THROW(validate_contour(low, 3, top), DomainError);
  ContourSpec real = default_contour(3, HBar(1.0), top, ContourKind::real);
  EXPECT_THROW(validate_contour(real, 3, top), DomainError);
}

TEST(PatternAxes, TopFreeRowOutermost) {
  ContourSpec s;
  s.offsets = {2.0, 1.0, 0.5};
  const PatternAxes pa = pattern_axes(4, s);
  ASSERT_EQ(pa.axes.size(), 6u);
  EXPECT_EQ(pa.index[0], std::make_pair(3, 1));
  EXPECT_EQ(pa.index[5], std::make_pair(1, 1));
  EXPECT_EQ(pa.axes[0].sigma, 0.5);
  EXPECT_EQ(pa.axes[5].sigma, 2.0);
}

TEST(NestedIntegral, GaussianOverThreeRows) {
  std::vector<cd> top = {0.0, 0.0, 0.0};
  ContourSpec s;
  s.kind = ContourKind::real;
  s.offsets = {0.0, 0.0};
  s.radius = 7.0;
  s.nodes = 71;
  auto r = nested_integral(3, top, [](const GzPattern& p) {
    cd e = 0.0;
    for (int n = 1; n <= 2; ++n)
      for (int j = 1; j <= n; ++j) e += p(n, j) * p(n, j);
    return std::exp(-e);
  }, s);
  EXPECT_NEAR(r.value.real(), std::pow(kPi, 1.5), 1e-10);
}

TEST(DecayBound, Examples) {
  GzPattern p2({{0.7}, {0.0, 0.0}});
  EXPECT_NEAR(decay_bound(p2, 2, HBar(1.0)), std::exp(-0.7), 1e-15);
  GzPattern p3({{1.0}, {{-2.0, 0.5}, 1.0}, {0.0, 0.0, 0.0}});
  EXPECT_NEAR(decay_bound(p3, 3, HBar(1.0)), std::exp(-4.0 / 3.0), 1e-15);
}

TEST(PairingMeasure, TrivialAtTwoAndSymmetricAtThree) {
  GzPattern p2({{0.3}, {1.0, -1.0}});
  EXPECT_EQ(pairing_measure(p2, HBar(1.0)), cd(1.0));
  GzPattern a({{0.1}, {0.4, -0.7}, {0.0, 0.0, 0.0}});
  GzPattern b({{0.1}, {-0.7, 0.4}, {0.0, 0.0, 0.0}});
  EXPECT_NEAR(std::abs(pairing_measure(a, HBar(0.8)) - pairing_measure(b, HBar(0.8))), 0.0, 1e-14);
  GzPattern c({{0.1}, {0.4, 0.4}, {0.0, 0.0, 0.0}});
  EXPECT_EQ(pairing_measure(c, HBar(1.0)), cd(0.0));
}

TEST(Pairing, HermitianAtTwo) {
  const HBar hb(1.0);
  std::vector<cd> top = {0.5, -0.5};
  GzFunction phi(2, top, [](const GzPattern& p) { return std::exp(-p(1, 1) * p(1, 1) + cd(0, 0.4) * p(1, 1)); });
  GzFunction psi(2, top, [](const GzPattern& p) { return (1.0 + p(1, 1)) * std::exp(-0.5 * p(1, 1) * p(1, 1)); });
  const ContourSpec s = default_contour(2, hb, top, ContourKind::real);
  const cd ab = pairing(phi, psi, 2, hb, s).value;
  const cd ba = pairing(psi, phi, 2, hb, s).value;
  EXPECT_LT(std::abs(ab - std::conj(ba)), 1e-12);
  const cd aa = pairing(phi, phi, 2, hb, s).value;
  EXPECT_NEAR(aa.real(), std::sqrt(kPi / 2.0), 1e-12);
  EXPECT_NEAR(aa.imag(), 0.0, 1e-14);
}

TEST(Pairing, RequiresRealContours) {
  const HBar hb(1.0);
  std::vector<cd> top = {0.5, -0.5};
  GzFunction f(2, top, [](const GzPattern&) { return cd(1.0); });
  EXPECT_THROW(pairing(f, f, 2, hb, default_contour(2, hb, top)), DomainError);
}
