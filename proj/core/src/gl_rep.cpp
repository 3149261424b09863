#include "gzrep/gl_rep.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gzrep/sampling.hpp"
#include "gzrep/specfun.hpp"

namespace gzrep {
namespace {

std::string name_of(int j, int k) { return "E_{" + std::to_string(j) + "," + std::to_string(k) + "}"; }

cd vandermonde_row(const GzPattern& p, int n, int j) {
  cd den = 1.0;
  const cd g = p(n, j);
  for (int s = 1; s <= n; ++s) {
    if (s != j) den *= g - p(n, s);
  }
  if (den == 0.0) throw SingularityError("coinciding same-level entries");
  return den;
}

GzOperator diagonal_generator(int n, int levels, HBar hbar) {
  const double h = hbar.value();
  return GzOperator(levels, hbar, name_of(n, n), [n, h](const GzPattern& p, Expansion& out) {
    cd sum = 0.0;
    double mag = 0.0;
    for (int j = 1; j <= n; ++j) {
      sum += p(n, j);
      mag += std::abs(p(n, j));
    }
    for (int j = 1; j < n; ++j) {
      sum -= p(n - 1, j);
      mag += std::abs(p(n - 1, j));
    }
    out.add(ShiftVector{}, sum / cd(0.0, h), mag / h);
  });
}

GzOperator raising_generator(int n, int levels, HBar hbar) {
  const double h = hbar.value();
  return GzOperator(levels, hbar, name_of(n, n + 1), [n, h](const GzPattern& p, Expansion& out) {
    const cd half(0.0, h / 2);
    const cd pre = -1.0 / cd(0.0, h);
    for (int j = 1; j <= n; ++j) {
      cd num = 1.0;
      for (int r = 1; r <= n + 1; ++r) num *= p(n, j) - p(n + 1, r) - half;
      out.add(ShiftVector::unit(n, j, -1), pre * num / vandermonde_row(p, n, j));
    }
  });
}

GzOperator lowering_generator(int n, int levels, HBar hbar) {
  const double h = hbar.value();
  return GzOperator(levels, hbar, name_of(n + 1, n), [n, h](const GzPattern& p, Expansion& out) {
    const cd half(0.0, h / 2);
    const cd pre = 1.0 / cd(0.0, h);
    for (int j = 1; j <= n; ++j) {
      cd num = 1.0;
      for (int r = 1; r <= n - 1; ++r) num *= p(n, j) - p(n - 1, r) + half;
      out.add(ShiftVector::unit(n, j, +1), pre * num / vandermonde_row(p, n, j));
    }
  });
}

void check_index(GeneratorIndex idx, int levels) {
  if (idx.j < 1 || idx.j > levels || idx.k < 1 || idx.k > levels) {
    throw ConfigurationError("generator index out of range");
  }
}

}  // namespace

GzOperator generator(GeneratorIndex idx, int levels, HBar hbar) {
  check_index(idx, levels);
  const int j = idx.j, k = idx.k;
  if (j == k) return diagonal_generator(j, levels, hbar);
  if (k == j + 1) return raising_generator(j, levels, hbar);
  if (j == k + 1) return lowering_generator(k, levels, hbar);
  return generator_via(idx, j < k ? j + 1 : j - 1, levels, hbar);
}

GzOperator generator_via(GeneratorIndex idx, int m, int levels, HBar hbar) {
  check_index(idx, levels);
  const int j = idx.j, k = idx.k;
  const bool between = (j < m && m < k) || (k < m && m < j);
  if (!between) throw ConfigurationError("generator_via: m must lie strictly between j and k");
  GzOperator c = commutator(generator({j, m}, levels, hbar), generator({m, k}, levels, hbar));
  return GzOperator(levels, hbar, name_of(j, k), [c](const GzPattern& p, Expansion& out) {
    for (const auto& t : c.expand(p).terms()) out.add(t.shift, t.coeff, t.magnitude);
  });
}

std::vector<double> rho_vector(int n) {
  std::vector<double> r(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) r[k - 1] = 0.5 * (n - 2 * k + 1);
  return r;
}

cd log_whittaker_w(const GzPattern& p, HBar hbar) {
  const double h = hbar.value();
  const double lnh = std::log(h);
  const int levels = p.levels();
  cd acc = 0.0;
  for (int n = 1; n < levels; ++n) {
    cd row_sum = 0.0;
    for (int j = 1; j <= n; ++j) row_sum += p(n, j);
    acc += -(std::numbers::pi / h) * static_cast<double>(n - 1) * row_sum;
    for (int k = 1; k <= n; ++k) {
      for (int m = 1; m <= n + 1; ++m) {
        const cd z = (p(n, k) - p(n + 1, m)) / cd(0.0, h) + 0.5;
        acc += z * lnh + log_gamma(z);
      }
    }
  }
  return acc;
}

WhittakerVector whittaker_vector(WhittakerKind kind, int levels, HBar hbar, std::vector<cd> top_row) {
  for (std::size_t a = 0; a < top_row.size(); ++a) {
    for (std::size_t b = a + 1; b < top_row.size(); ++b) {
      if (top_row[a] == top_row[b]) throw ConfigurationError("whittaker_vector: top row entries must be distinct");
    }
  }
  if (kind == WhittakerKind::w_prime) {
    return {kind, GzFunction(levels, std::move(top_row), [](const GzPattern&) { return cd(1.0); })};
  }
  return {kind, GzFunction(levels, std::move(top_row),
                           [hbar](const GzPattern& p) { return std::exp(log_whittaker_w(p, hbar)); })};
}

cd log_sutherland_v(const GzPattern& p, HBar hbar) {
  const double h = hbar.value();
  const double ln2h = std::log(2.0 * h);
  const int levels = p.levels();
  cd acc = 0.0;
  for (int n = 1; n < levels; ++n) {
    cd row_sum = 0.0;
    for (int j = 1; j <= n; ++j) row_sum += p(n, j);
    acc += -(std::numbers::pi / (2.0 * h)) * static_cast<double>(n - 1) * row_sum;
    for (int k = 1; k <= n; ++k) {
      for (int m = 1; m <= n + 1; ++m) {
        const cd z = (p(n, k) - p(n + 1, m)) / cd(0.0, 2.0 * h) + 0.25;
        acc += z * ln2h + log_gamma(z);
      }
    }
  }
  return acc;
}

SutherlandVector sutherland_vector(int levels, HBar hbar, std::vector<cd> top_row) {
  return {GzFunction(levels, std::move(top_row),
                     [hbar](const GzPattern& p) { return std::exp(log_sutherland_v(p, hbar)); })};
}

double operator_discrepancy(const GzOperator& a, const GzOperator& b, const GzFunction& f, const GzPattern& p) {
  const AppliedValue va = a.apply_at(f, p);
  const AppliedValue vb = b.apply_at(f, p);
  return relative_error(va.value, vb.value, va.scale + vb.scale);
}

SuiteReport check_gl_relations(int levels, HBar hbar, int trials, std::uint64_t seed, double threshold) {
  if (levels < 2) throw ConfigurationError("check_gl_relations: N >= 2 required");
  SuiteReport report;
  report.suite = "gl_relations";
  report.seed = seed;
  const int N = levels;

  std::vector<std::vector<GzOperator>> E;
  E.resize(static_cast<size_t>(N + 1));
  for (int j = 1; j <= N; ++j) {
    E[j].reserve(static_cast<size_t>(N + 1));
    E[j].push_back(zero_operator(N, hbar));
    for (int k = 1; k <= N; ++k) E[j].push_back(generator({j, k}, N, hbar));
  }
  const GzOperator zero = zero_operator(N, hbar);
  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const GzPattern p = random_pattern(N, rng);
    std::vector<cd> top(p.row(N).begin(), p.row(N).end());
    const GzFunction f = random_polynomial(N, top, rng);
    auto rec = [&](const std::string& name, const GzOperator& lhs, const GzOperator& rhs) {
      report.record(name, operator_discrepancy(lhs, rhs, f, p), threshold);
    };

    // Cartan-root relations and [E_{n,n+1}, E_{m+1,m}].
    for (int n = 1; n <= N; ++n) {
      for (int m = 1; m < N; ++m) {
        const double c = delta(n, m) - delta(n, m + 1);
        rec("cartan_raising", commutator(E[n][n], E[m][m + 1]), cd(c) * E[m][m + 1]);
        rec("cartan_lowering", commutator(E[n][n], E[m + 1][m]), cd(-c) * E[m + 1][m]);
      }
    }
    for (int n = 1; n < N; ++n) {
      for (int m = 1; m < N; ++m) {
        const GzOperator rhs = n == m ? E[n][n] - E[n + 1][n + 1] : zero;
        rec("raising_lowering", commutator(E[n][n + 1], E[m + 1][m]), rhs);
      }
    }
    // Serre relations for adjacent simple roots, both orders.
    for (int n = 1; n + 1 < N; ++n) {
      const GzOperator& ea = E[n][n + 1];
      const GzOperator& eb = E[n + 1][n + 2];
      const GzOperator& fa = E[n + 1][n];
      const GzOperator& fb = E[n + 2][n + 1];
      rec("serre", commutator(ea, commutator(ea, eb)), zero);
      rec("serre", commutator(eb, commutator(eb, ea)), zero);
      rec("serre", commutator(fa, commutator(fa, fb)), zero);
      rec("serre", commutator(fb, commutator(fa, fb)), zero);
    }
    // Full grid [E_jk, E_lm] = delta_lk E_jm - delta_jm E_lk.
    for (int j = 1; j <= N; ++j) {
      for (int k = 1; k <= N; ++k) {
        for (int l = 1; l <= N; ++l) {
          for (int m = 1; m <= N; ++m) {
            const GzOperator rhs = cd(delta(l, k)) * E[j][m] - cd(delta(j, m)) * E[l][k];
            rec("alg_grid", commutator(E[j][k], E[l][m]), rhs);
          }
        }
      }
    }
    // Alternative intermediate indices for composite generators.
    for (int j = 1; j <= N; ++j) {
      for (int k = 1; k <= N; ++k) {
        if (std::abs(j - k) < 2) continue;
        const int lo = std::min(j, k), hi = std::max(j, k);
        for (int m = lo + 1; m < hi; ++m) {
          rec("composite_paths", generator_via({j, k}, m, N, hbar), E[j][k]);
        }
      }
    }
  }
  if (N < 3) report.record("serre", 0.0, threshold);
  return report;
}

SuiteReport check_whittaker_eigen(WhittakerKind kind, int levels, HBar hbar, int trials, std::uint64_t seed,
                                  double threshold) {
  SuiteReport report;
  report.suite = kind == WhittakerKind::w ? "whittaker_w" : "whittaker_w_prime";
  report.seed = seed;
  const cd chi = cd(0.0, -1.0) / hbar.value();
  Rng rng(seed);
  PointSampling opt;
  opt.real_top_row = true;
  for (int t = 0; t < trials; ++t) {
    const GzPattern p = random_pattern(levels, rng, opt);
    std::vector<cd> top(p.row(levels).begin(), p.row(levels).end());
    const WhittakerVector w = whittaker_vector(kind, levels, hbar, top);
    const GzOperator scaled = chi * identity_operator(levels, hbar);
    for (int n = 1; n < levels; ++n) {
      const GzOperator X = kind == WhittakerKind::w ? generator({n, n + 1}, levels, hbar)
                                                    : generator({n + 1, n}, levels, hbar);
      report.record(kind == WhittakerKind::w ? "fww_raising" : "fww_lowering",
                    operator_discrepancy(X, scaled, w.evaluator, p), threshold);
    }
  }
  return report;
}

SuiteReport check_sutherland_condition(int levels, HBar hbar, int trials, std::uint64_t seed, double threshold) {
  SuiteReport report;
  report.suite = "sutherland_vector";
  report.seed = seed;
  Rng rng(seed);
  PointSampling opt;
  opt.real_top_row = true;
  for (int t = 0; t < trials; ++t) {
    const GzPattern p = random_pattern(levels, rng, opt);
    std::vector<cd> top(p.row(levels).begin(), p.row(levels).end());
    const SutherlandVector v = sutherland_vector(levels, hbar, top);
    for (int n = 1; n < levels; ++n) {
      report.record("cm1", operator_discrepancy(generator({n, n + 1}, levels, hbar), generator({n + 1, n}, levels, hbar),
                                                v.evaluator, p),
                    threshold);
    }
  }
  return report;
}

}  // namespace gzrep
