#include "gzrep/yangian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "gzrep/gl_rep.hpp"
#include "gzrep/sampling.hpp"
#include "gzrep/specfun.hpp"

namespace gzrep {
namespace {

constexpr double kPi = std::numbers::pi;

// Coefficients (ascending) of prod_{s in roots} (lambda - root_s).
std::vector<cd> poly_from_roots(const std::vector<cd>& roots) {
  std::vector<cd> c{1.0};
  for (const cd r : roots) {
    std::vector<cd> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

cd row_product(const GzPattern& p, int n, cd lambda) {
  cd v = 1.0;
  for (int j = 1; j <= n; ++j) v *= lambda - p(n, j);
  return v;
}

using Weight = std::function<cd(const GzPattern&, int j)>;

// Operator polynomial sum_j L_j(lambda) weight_j T_j^{delta} at level n, scaled by pre.
OperatorPolynomial interpolation_polynomial(int n, int levels, HBar hbar, cd pre, Weight weight, int delta,
                                            const std::string& label) {
  std::vector<GzOperator> coeffs;
  for (int k = 0; k < n; ++k) {
    coeffs.emplace_back(levels, hbar, label + "_" + std::to_string(k),
                        [n, k, pre, weight, delta](const GzPattern& p, Expansion& out) {
                          for (int j = 1; j <= n; ++j) {
                            std::vector<cd> others;
                            cd den = 1.0;
                            for (int s = 1; s <= n; ++s) {
                              if (s == j) continue;
                              others.push_back(p(n, s));
                              den *= p(n, j) - p(n, s);
                            }
                            if (den == 0.0) throw SingularityError("coinciding same-level entries");
                            const cd ck = poly_from_roots(others)[static_cast<size_t>(k)];
                            out.add(ShiftVector::unit(n, j, delta), pre * ck * weight(p, j) / den);
                          }
                        });
  }
  return OperatorPolynomial(levels, hbar, std::move(coeffs));
}

cd log_s(const GzPattern& p, int n, HBar hbar) {
  const double h = hbar.value();
  const double lnh = std::log(h);
  cd acc = 0.0;
  for (int k = 1; k <= n; ++k) {
    for (int m = 1; m <= n + 1; ++m) {
      const cd z = (p(n, k) - p(n + 1, m)) / cd(0.0, h) + 0.5;
      acc += z * lnh + log_gamma(z);
    }
  }
  return acc;
}

struct LambdaPair {
  cd lambda;
  cd mu;
};

cd random_in_disc(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double t = 2.0 * kPi * rng.uniform();
  return std::polar(r, t);
}

LambdaPair random_lambda_pair(Rng& rng) {
  for (;;) {
    const cd a = random_in_disc(rng, 5.0);
    const cd b = random_in_disc(rng, 5.0);
    if (std::abs(a - b) >= 0.05) return {a, b};
  }
}

int permutation_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) inv += p[a] > p[b] ? 1 : 0;
  }
  return inv % 2 == 0 ? 1 : -1;
}

// A_n in the form used for relation checks: permutation sum when cheap, product otherwise.
OperatorPolynomial a_polynomial(int n, int levels, HBar hbar) {
  return n <= 3 ? casimir_poly(n, levels, hbar) : product_polynomial(n, levels, hbar);
}

}  // namespace

OperatorPolynomial::OperatorPolynomial(int levels, HBar hbar, std::vector<GzOperator> coefficients)
    : levels_(levels), hbar_(hbar), coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw ConfigurationError("OperatorPolynomial: no coefficients");
}

GzOperator OperatorPolynomial::at(cd lambda) const {
  std::vector<std::pair<cd, GzOperator>> terms;
  cd power = 1.0;
  for (const auto& c : coefficients_) {
    terms.emplace_back(power, c);
    power *= lambda;
  }
  return linear_combination(terms, levels_, hbar_, "P(lambda)");
}

OperatorPolynomial casimir_poly(int n, int levels, HBar hbar, int max_n) {
  if (n < 1 || n > levels) throw ConfigurationError("casimir_poly: need 1 <= n <= N");
  if (n > max_n) throw CostGuardError("casimir_poly: n exceeds the permutation-expansion cap");
  const double h = hbar.value();
  const cd ih(0.0, h);
  const std::vector<double> rho = rho_vector(n);

  // G_{ab} = -i hbar rho_b delta_{ab} - i hbar E_{ab}; factor k carries the lambda delta_{p(k),k}.
  std::vector<std::vector<GzOperator>> G(static_cast<size_t>(n + 1));
  for (int a = 1; a <= n; ++a) {
    G[a].push_back(zero_operator(levels, hbar));
    for (int b = 1; b <= n; ++b) {
      GzOperator e = (-ih) * generator({a, b}, levels, hbar);
      if (a == b) e = e + (-ih * rho[b - 1]) * identity_operator(levels, hbar);
      G[a].push_back(e);
    }
  }

  std::vector<std::vector<std::pair<cd, GzOperator>>> by_degree(static_cast<size_t>(n + 1));
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  do {
    const double sign = permutation_sign(perm);
    std::vector<int> fixed;
    for (int k = 1; k <= n; ++k) {
      if (perm[k - 1] == k) fixed.push_back(k);
    }
    const int nf = static_cast<int>(fixed.size());
    for (int mask = 0; mask < (1 << nf); ++mask) {
      std::vector<bool> take_lambda(static_cast<size_t>(n + 1), false);
      int degree = 0;
      for (int b = 0; b < nf; ++b) {
        if (mask & (1 << b)) {
          take_lambda[fixed[b]] = true;
          ++degree;
        }
      }
      // Ordered product of the remaining factors, k ascending (leftmost acts last).
      std::vector<const GzOperator*> chain;
      for (int k = 1; k <= n; ++k) {
        if (!take_lambda[k]) chain.push_back(&G[perm[k - 1]][k]);
      }
      GzOperator prod = identity_operator(levels, hbar);
      if (!chain.empty()) {
        prod = *chain.back();
        for (std::size_t c = chain.size() - 1; c-- > 0;) prod = compose(*chain[c], prod);
      }
      by_degree[degree].emplace_back(sign, prod);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<GzOperator> coeffs;
  for (int d = 0; d <= n; ++d) {
    coeffs.push_back(linear_combination(by_degree[d], levels, hbar, "A" + std::to_string(n) + "_" + std::to_string(d)));
  }
  return OperatorPolynomial(levels, hbar, std::move(coeffs));
}

OperatorPolynomial product_polynomial(int n, int levels, HBar hbar) {
  if (n < 1 || n > levels) throw ConfigurationError("product_polynomial: need 1 <= n <= N");
  std::vector<GzOperator> coeffs;
  for (int k = 0; k <= n; ++k) {
    coeffs.push_back(multiplication_operator(levels, hbar, "prod", [n, k](const GzPattern& p) {
      std::vector<cd> roots(p.row(n).begin(), p.row(n).end());
      return poly_from_roots(roots)[static_cast<size_t>(k)];
    }));
  }
  return OperatorPolynomial(levels, hbar, std::move(coeffs));
}

DrinfeldTriple drinfeld_triple(int n, int levels, HBar hbar) {
  if (n < 1 || n >= levels) throw ConfigurationError("drinfeld_triple: need 1 <= n <= N-1");
  const cd half(0.0, hbar.value() / 2);
  Weight wb = [n, half](const GzPattern& p, int j) {
    cd v = 1.0;
    for (int r = 1; r <= n + 1; ++r) v *= p(n, j) - p(n + 1, r) - half;
    return v;
  };
  Weight wc = [n, half](const GzPattern& p, int j) {
    cd v = 1.0;
    for (int r = 1; r <= n - 1; ++r) v *= p(n, j) - p(n - 1, r) + half;
    return v;
  };
  return {product_polynomial(n, levels, hbar), interpolation_polynomial(n, levels, hbar, 1.0, wb, -1, "B"),
          interpolation_polynomial(n, levels, hbar, -1.0, wc, +1, "C")};
}

DrinfeldTriple qism_triple(int n, int levels, HBar hbar) {
  if (n < 1 || n >= levels) throw ConfigurationError("qism_triple: need 1 <= n <= N-1");
  const cd i(0.0, 1.0);
  Weight one = [](const GzPattern&, int) { return cd(1.0); };
  return {product_polynomial(n, levels, hbar), interpolation_polynomial(n, levels, hbar, std::pow(i, 1 + n), one, -1, "Bq"),
          interpolation_polynomial(n, levels, hbar, std::pow(i, 1 - n), one, +1, "Cq")};
}

ConjugationConstants qism_conjugation_constants(int n, int levels, HBar hbar, int trials, std::uint64_t seed) {
  const DrinfeldTriple gz = drinfeld_triple(n, levels, hbar);
  const DrinfeldTriple qs = qism_triple(n, levels, hbar);
  auto s_op = [&](int level, double sign) {
    return multiplication_operator(levels, hbar, "s", [level, sign, hbar](const GzPattern& p) {
      return std::exp(sign * log_s(p, level, hbar));
    });
  };
  Rng rng(seed);
  ConjugationConstants out{0.0, 0.0, 0.0, 0.0};
  bool have_b = false, have_c = false;
  auto ratio_spread = [](const Expansion& a, const Expansion& b, cd& ref, bool& have) {
    double spread = 0.0;
    for (const auto& ta : a.terms()) {
      for (const auto& tb : b.terms()) {
        if (!(ta.shift == tb.shift)) continue;
        const cd r = ta.coeff / tb.coeff;
        if (!have) {
          ref = r;
          have = true;
        }
        spread = std::max(spread, std::abs(r - ref) / std::abs(ref));
      }
    }
    return spread;
  };
  for (int t = 0; t < trials; ++t) {
    const GzPattern p = random_pattern(levels, rng);
    const cd lambda = random_in_disc(rng, 5.0);
    const GzOperator cb = compose(s_op(n, -1.0), compose(gz.B.at(lambda), s_op(n, 1.0)));
    out.b_spread = std::max(out.b_spread, ratio_spread(cb.expand(p), qs.B.at(lambda).expand(p), out.b_constant, have_b));
    if (n >= 2) {
      const GzOperator cc = compose(s_op(n - 1, -1.0), compose(gz.C.at(lambda), s_op(n - 1, 1.0)));
      out.c_spread = std::max(out.c_spread, ratio_spread(cc.expand(p), qs.C.at(lambda).expand(p), out.c_constant, have_c));
    } else {
      // s_0 is empty: the conjugation is trivial.
      out.c_spread = std::max(out.c_spread, ratio_spread(gz.C.at(lambda).expand(p), qs.C.at(lambda).expand(p),
                                                         out.c_constant, have_c));
    }
  }
  return out;
}

SuiteReport check_casimir(int n_max, int levels, HBar hbar, int trials, std::uint64_t seed, double threshold) {
  SuiteReport report;
  report.suite = "casimir";
  report.seed = seed;
  Rng rng(seed);
  const int top = std::min(n_max, levels);
  std::vector<OperatorPolynomial> polys;
  for (int n = 1; n <= top; ++n) polys.push_back(casimir_poly(n, levels, hbar));
  for (int t = 0; t < trials; ++t) {
    const GzPattern p = random_pattern(levels, rng);
    std::vector<cd> row_top(p.row(levels).begin(), p.row(levels).end());
    const GzFunction f = random_polynomial(levels, row_top, rng);
    const cd lambda = random_in_disc(rng, 5.0);
    for (int n = 1; n <= top; ++n) {
      const GzOperator mult = multiplication_operator(levels, hbar, "prod", [n, lambda](const GzPattern& q) {
        return row_product(q, n, lambda);
      });
      report.record("cas2_n" + std::to_string(n), operator_discrepancy(polys[n - 1].at(lambda), mult, f, p), threshold);
      // Leading coefficient is the identity.
      report.record("leading_identity",
                    operator_discrepancy(polys[n - 1].coefficient(n), identity_operator(levels, hbar), f, p), threshold);
    }
  }
  return report;
}

SuiteReport check_drinfeld_commutators(int levels, HBar hbar, int trials, std::uint64_t seed, double threshold) {
  SuiteReport report;
  report.suite = "drinfeld_images";
  report.seed = seed;
  Rng rng(seed);
  for (int n = 1; n < levels; ++n) {
    const DrinfeldTriple tr = drinfeld_triple(n, levels, hbar);
    const OperatorPolynomial cas = casimir_poly(n, levels, hbar);
    const GzOperator raise = generator({n, n + 1}, levels, hbar);
    const GzOperator lower = generator({n + 1, n}, levels, hbar);
    for (int t = 0; t < trials; ++t) {
      const GzPattern p = random_pattern(levels, rng);
      std::vector<cd> row_top(p.row(levels).begin(), p.row(levels).end());
      const GzFunction f = random_polynomial(levels, row_top, rng);
      const cd lambda = random_in_disc(rng, 5.0);
      const GzOperator a = cas.at(lambda);
      report.record("bzb", operator_discrepancy(tr.B.at(lambda), commutator(a, raise), f, p), threshold);
      report.record("bzc", operator_discrepancy(tr.C.at(lambda), commutator(lower, a), f, p), threshold);
      report.record("A_matches_casimir", operator_discrepancy(tr.A.at(lambda), a, f, p), threshold);
    }
  }
  return report;
}

namespace {

// Shared relation battery for interpolation-form and QISM operators at level n.
void record_exchange_relations(SuiteReport& report, const std::string& prefix, const OperatorPolynomial& A,
                               const OperatorPolynomial& B, const OperatorPolynomial& C, cd lambda, cd mu,
                               const GzFunction& f, const GzPattern& p, HBar hbar, double threshold) {
  const cd ih(0.0, hbar.value());
  const GzOperator Al = A.at(lambda), Am = A.at(mu);
  const GzOperator Bl = B.at(lambda), Bm = B.at(mu);
  const GzOperator Cl = C.at(lambda), Cm = C.at(mu);
  const cd d = lambda - mu;
  report.record(prefix + "AB_exchange",
                operator_discrepancy((d + ih) * compose(Al, Bm), d * compose(Bm, Al) + ih * compose(Am, Bl), f, p),
                threshold);
  report.record(prefix + "AC_exchange",
                operator_discrepancy((d + ih) * compose(Am, Cl), d * compose(Cl, Am) + ih * compose(Al, Cm), f, p),
                threshold);
  // lambda = mu: both sides reduce to i hbar A(lambda) B(lambda) term by term.
  const cd z = 0.0;
  report.record(prefix + "AB_exchange_equal_args",
                operator_discrepancy((z + ih) * compose(Al, Bl), z * compose(Bl, Al) + ih * compose(Al, Bl), f, p),
                1e-15);
}

}  // namespace

SuiteReport check_yangian_relations(int levels, HBar hbar, int trials, std::uint64_t seed, double threshold) {
  if (levels < 2) throw ConfigurationError("check_yangian_relations: N >= 2 required");
  SuiteReport report;
  report.suite = "yangian";
  report.seed = seed;
  const int N = levels;
  std::vector<OperatorPolynomial> A, B, C;
  for (int n = 1; n <= N; ++n) A.push_back(a_polynomial(n, N, hbar));
  for (int n = 1; n < N; ++n) {
    const DrinfeldTriple tr = drinfeld_triple(n, N, hbar);
    B.push_back(tr.B);
    C.push_back(tr.C);
  }
  const GzOperator zero = zero_operator(N, hbar);
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const GzPattern p = random_pattern(N, rng);
    std::vector<cd> row_top(p.row(N).begin(), p.row(N).end());
    const GzFunction f = random_polynomial(N, row_top, rng);
    const auto [lambda, mu] = random_lambda_pair(rng);
    for (int n = 1; n <= N; ++n) {
      for (int m = 1; m <= N; ++m) {
        report.record("AA_commute", operator_discrepancy(commutator(A[n - 1].at(lambda), A[m - 1].at(mu)), zero, f, p),
                      threshold);
      }
    }
    for (int n = 1; n < N; ++n) {
      for (int m = 1; m < N; ++m) {
        if (std::abs(n - m) == 1) continue;
        report.record("BB_commute", operator_discrepancy(commutator(B[n - 1].at(lambda), B[m - 1].at(mu)), zero, f, p),
                      threshold);
        report.record("CC_commute", operator_discrepancy(commutator(C[n - 1].at(lambda), C[m - 1].at(mu)), zero, f, p),
                      threshold);
      }
      record_exchange_relations(report, "", A[n - 1], B[n - 1], C[n - 1], lambda, mu, f, p, hbar, threshold);
    }
  }
  return report;
}

SuiteReport check_qism_relations(int levels, HBar hbar, int trials, std::uint64_t seed, double threshold) {
  SuiteReport report;
  report.suite = "qism";
  report.seed = seed;
  const GzOperator zero = zero_operator(levels, hbar);
  Rng rng(seed);
  for (int n = 1; n < levels; ++n) {
    const DrinfeldTriple q = qism_triple(n, levels, hbar);
    const OperatorPolynomial cas = a_polynomial(n, levels, hbar);
    for (int t = 0; t < trials; ++t) {
      const GzPattern p = random_pattern(levels, rng);
      std::vector<cd> row_top(p.row(levels).begin(), p.row(levels).end());
      const GzFunction f = random_polynomial(levels, row_top, rng);
      const auto [lambda, mu] = random_lambda_pair(rng);
      report.record("A_matches_casimir", operator_discrepancy(q.A.at(lambda), cas.at(lambda), f, p), threshold);
      report.record("AA_commute", operator_discrepancy(commutator(q.A.at(lambda), q.A.at(mu)), zero, f, p), threshold);
      report.record("BB_commute", operator_discrepancy(commutator(q.B.at(lambda), q.B.at(mu)), zero, f, p), threshold);
      report.record("CC_commute", operator_discrepancy(commutator(q.C.at(lambda), q.C.at(mu)), zero, f, p), threshold);
      record_exchange_relations(report, "", q.A, q.B, q.C, lambda, mu, f, p, hbar, threshold);
    }
    const ConjugationConstants k = qism_conjugation_constants(n, levels, hbar, trials, derive_seed(seed, 100 + n));
    report.record("conjugation_B_proportional", k.b_spread, threshold);
    report.record("conjugation_C_proportional", k.c_spread, threshold);
  }
  return report;
}

double default_reconstruction_radius(int n, HBar hbar) {
  const double max_abs = std::hypot(3.0, 1.0);
  return 2.0 * (max_abs + n * hbar.value()) + 1.0;
}

SuiteReport reconstruct_generators(int n, int levels, HBar hbar, double radius, int trials, std::uint64_t seed,
                                   int angular_nodes, double threshold) {
  if (n < 1 || n >= levels) throw ConfigurationError("reconstruct_generators: need 1 <= n <= N-1");
  SuiteReport report;
  report.suite = "reconstruction";
  report.seed = seed;
  const double h = hbar.value();
  const cd ih(0.0, h);
  const DrinfeldTriple tr = drinfeld_triple(n, levels, hbar);
  const GzOperator raise = generator({n, n + 1}, levels, hbar);
  const GzOperator lower = generator({n + 1, n}, levels, hbar);
  const GzOperator diag = generator({n, n}, levels, hbar);
  Rng rng(seed);

  // (1/2 pi hbar) oint g(lambda) dlambda on |lambda| = R, counterclockwise.
  auto circle = [&](const std::function<cd(cd)>& g, int nodes) {
    cd sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const cd lam = std::polar(radius, 2.0 * kPi * k / nodes);
      sum += g(lam) * cd(0.0, 1.0) * lam;
    }
    return sum * (2.0 * kPi / nodes) / (2.0 * kPi * h);
  };

  for (int t = 0; t < trials; ++t) {
    const GzPattern p = random_pattern(levels, rng);
    double max_abs = 0.0;
    for (const cd v : p.data()) max_abs = std::max(max_abs, std::abs(v));
    if (!(radius > max_abs + n * h)) throw ContourError("reconstruct_generators: radius does not enclose the poles");
    std::vector<cd> row_top(p.row(levels).begin(), p.row(levels).end());
    const GzFunction f = random_polynomial(levels, row_top, rng);

    auto raise_integrand = [&](cd lam) { return tr.B.at(lam).apply_at(f, p).value / row_product(p, n, lam); };
    auto lower_integrand = [&](cd lam) {
      const GzFunction q(levels, row_top, [&f, n, lam](const GzPattern& x) { return f(x) / row_product(x, n, lam); });
      return tr.C.at(lam).apply_at(q, p).value;
    };
    auto diag_integrand = [&](cd lam) {
      cd lower_prod = 1.0;
      for (int r = 1; r < n; ++r) lower_prod *= lam - ih / 2.0 - p(n - 1, r);
      return row_product(p, n, lam) / lower_prod / lam * f(p);
    };

    const AppliedValue er = raise.apply_at(f, p);
    const AppliedValue el = lower.apply_at(f, p);
    const AppliedValue ed = diag.apply_at(f, p);

    const cd ir = circle(raise_integrand, angular_nodes);
    const cd il = circle(lower_integrand, angular_nodes);
    // The constant term enters with +(n-1)/2 for a counterclockwise contour.
    const cd id = circle(diag_integrand, angular_nodes) + 0.5 * (n - 1) * f(p);
    report.record("rtt3_raising", relative_error(ir, er.value, er.scale), threshold);
    report.record("rtt3_lowering", relative_error(il, el.value, el.scale), threshold);
    report.record("rtt3_diagonal", relative_error(id, ed.value, ed.scale + 0.5 * (n - 1) * std::abs(f(p))), threshold);

    const cd ir2 = circle(raise_integrand, 2 * angular_nodes);
    report.record("angular_doubling", relative_error(ir2, ir, er.scale), 1e-12);
  }
  return report;
}

}  // namespace gzrep
