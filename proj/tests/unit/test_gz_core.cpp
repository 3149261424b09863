#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gzrep/gl_rep.hpp"
#include "gzrep/gz_core.hpp"
#include "gzrep/sampling.hpp"

using namespace gzrep;

namespace {

GzFunction coordinate_power(int levels, int n, int j, int power) {
  return GzFunction(levels, std::vector<cd>(static_cast<size_t>(levels), 0.0), [n, j, power](const GzPattern& p) {
    cd v = 1.0;
    for (int k = 0; k < power; ++k) v *= p(n, j);
    return v;
  });
}

}  // namespace

TEST(HBar, RejectsNonPositive) {
  EXPECT_THROW(HBar{0.0}, ConfigurationError);
  EXPECT_THROW(HBar{-1.0}, ConfigurationError);
  EXPECT_THROW(HBar{std::numeric_limits<double>::infinity()}, ConfigurationError);
  EXPECT_EQ(HBar(0.37).value(), 0.37);
}

TEST(GzPattern, RaggedRows) {
  GzPattern p({{1.0}, {2.0, 3.0}, {4.0, 5.0, 6.0}});
  EXPECT_EQ(p.levels(), 3);
  EXPECT_EQ(p(2, 2), cd(3.0));
  EXPECT_EQ(p.row(3)[0], cd(4.0));
  EXPECT_EQ(p.free_size(), 3);
  EXPECT_THROW(GzPattern({{1.0}, {2.0}}), ConfigurationError);
  EXPECT_THROW(GzPattern({{cd(NAN, 0.0)}}), ConfigurationError);
}

TEST(EvalShifted, Examples) {
  const HBar h(1.0);
  const GzFunction one(2, {0.0, 1.0}, [](const GzPattern&) { return cd(1.0); });
  GzPattern p({{0.0}, {0.0, 1.0}});
  EXPECT_EQ(eval_shifted(one, p, {{{1, 1}, 3}}, h), cd(1.0));
  const GzFunction x = coordinate_power(2, 1, 1, 1);
  EXPECT_EQ(eval_shifted(x, p, {{{1, 1}, 1}}, h), cd(0.0, 1.0));
  p(1, 1) = 2.0;
  const GzFunction x2 = coordinate_power(2, 1, 1, 2);
  EXPECT_LT(std::abs(eval_shifted(x2, p, {{{1, 1}, -1}}, h) - cd(3.0, -4.0)), 1e-15);
  EXPECT_THROW(eval_shifted(x2, p, {{{2, 1}, 1}}, h), ConfigurationError);
}

TEST(EvalShifted, SingularSetThrows) {
  const HBar h(1.0);
  GzPattern p({{0.0}, {cd(0.0, 1.0), 0.0}, {1.0, 2.0, 3.0}});
  const GzFunction f = coordinate_power(3, 2, 1, 1);
  EXPECT_THROW(eval_shifted(f, p, {{{2, 1}, -1}}, h), SingularityError);
}

TEST(EvalShifted, IsBitwiseReevaluation) {
  Rng rng(1);
  const HBar h(0.37);
  for (int t = 0; t < 20; ++t) {
    const GzPattern p = random_pattern(4, rng);
    const GzFunction f = random_polynomial(4, {p.row(4).begin(), p.row(4).end()}, rng);
    ShiftVector s;
    s.add(flat_index(2, 1), 1);
    s.add(flat_index(3, 3), -2);
    GzPattern q = p;
    q(2, 1) += cd(0.0, 0.37);
    q(3, 3) += cd(0.0, 0.37) * -2.0;
    EXPECT_EQ(eval_shifted(f, p, s, h), f(q));
  }
}

TEST(Operators, ComposeIdentityAndMismatch) {
  const HBar h(1.0);
  Rng rng(2);
  const GzPattern p = random_pattern(3, rng);
  const GzFunction f = random_polynomial(3, {p.row(3).begin(), p.row(3).end()}, rng);
  const GzOperator e12 = generator({1, 2}, 3, h);
  EXPECT_LT(operator_discrepancy(compose(identity_operator(3, h), e12), e12, f, p), 1e-15);
  EXPECT_LT(std::abs(commutator(e12, e12).apply_at(f, p).value), 1e-15);
  EXPECT_THROW(compose(e12, generator({1, 2}, 3, HBar(0.5))), ConfigurationError);
  EXPECT_THROW(compose(e12, generator({1, 2}, 4, h)), ConfigurationError);
}

TEST(Operators, Rank1CommutatorExample) {
  const HBar h(1.0);
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const GzPattern p = random_pattern(2, rng);
    const GzFunction f = random_polynomial(2, {p.row(2).begin(), p.row(2).end()}, rng);
    const GzOperator lhs = compose(generator({1, 2}, 2, h), generator({2, 1}, 2, h)) -
                           compose(generator({2, 1}, 2, h), generator({1, 2}, 2, h));
    const GzOperator rhs = generator({1, 1}, 2, h) - generator({2, 2}, 2, h);
    EXPECT_LT(operator_discrepancy(lhs, rhs, f, p), 1e-13);
    EXPECT_LT(operator_discrepancy(commutator(generator({1, 1}, 2, h), generator({1, 1}, 2, h)),
                                   zero_operator(2, h), f, p),
              1e-15);
  }
}

TEST(Operators, Linearity) {
  Rng rng(4);
  for (double hv : {1.0, 0.37}) {
    const HBar h(hv);
    const std::vector<GzOperator> ops = {generator({1, 2}, 3, h), generator({3, 1}, 3, h), generator({2, 2}, 3, h),
                                         commutator(generator({1, 2}, 3, h), generator({2, 1}, 3, h))};
    for (int t = 0; t < 20; ++t) {
      const GzPattern p = random_pattern(3, rng);
      std::vector<cd> top(p.row(3).begin(), p.row(3).end());
      const GzFunction f = random_polynomial(3, top, rng), g = random_polynomial(3, top, rng);
      const cd a = rng.complex_in_box(2, 2), b = rng.complex_in_box(2, 2);
      const GzFunction comb = linear_combination(a, f, b, g);
      for (const auto& op : ops) {
        const AppliedValue vf = op.apply_at(f, p), vg = op.apply_at(g, p), vc = op.apply_at(comb, p);
        const cd expect = a * vf.value + b * vg.value;
        EXPECT_LT(relative_error(vc.value, expect, std::abs(a) * vf.scale + std::abs(b) * vg.scale), 1e-12);
      }
    }
  }
}

TEST(Operators, Associativity) {
  Rng rng(5);
  const HBar h(0.37);
  const GzOperator a = generator({1, 2}, 3, h), b = generator({3, 2}, 3, h), c = generator({2, 1}, 3, h);
  for (int t = 0; t < 20; ++t) {
    const GzPattern p = random_pattern(3, rng);
    const GzFunction f = random_polynomial(3, {p.row(3).begin(), p.row(3).end()}, rng);
    EXPECT_LT(operator_discrepancy(compose(compose(a, b), c), compose(a, compose(b, c)), f, p), 1e-12);
  }
}

TEST(Operators, ApplyProducesFunction) {
  Rng rng(6);
  const HBar h(1.0);
  const GzPattern p = random_pattern(3, rng);
  const GzFunction f = random_polynomial(3, {p.row(3).begin(), p.row(3).end()}, rng);
  const GzOperator a = generator({1, 2}, 3, h), b = generator({2, 3}, 3, h);
  const GzFunction bf = b.apply(f);
  const cd nested = a.apply(bf)(p);
  EXPECT_LT(relative_error(nested, compose(a, b).apply_at(f, p).value), 1e-13);
}

TEST(Expansion, MergesDuplicateShifts) {
  Expansion e;
  e.add(ShiftVector::unit(1, 1, 1), 2.0);
  e.add(ShiftVector::unit(1, 1, 1), -2.0);
  e.add(ShiftVector{}, 1.0);
  e.normalize();
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e.terms()[1].coeff, cd(0.0));
  EXPECT_EQ(e.terms()[1].magnitude, 4.0);
}
