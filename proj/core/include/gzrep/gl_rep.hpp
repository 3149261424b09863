#pragma once

#include <cstdint>
#include <vector>

#include "gzrep/gz_core.hpp"
#include "gzrep/report.hpp"

namespace gzrep {

struct GeneratorIndex {
  int j = 1;
  int k = 1;
};

/// E_{jk} acting on functions of the free rows.
///
/// Simple generators are the difference operators of the GZ representation;
/// for |j - k| >= 2 the nearest intermediate index is used,
/// E_{jk} = [E_{j,j+1}, E_{j+1,k}] (j < k) or [E_{j,j-1}, E_{j-1,k}] (j > k).
GzOperator generator(GeneratorIndex idx, int levels, HBar hbar);

/// Composite E_{jk} = [E_{jm}, E_{mk}] with an explicit intermediate m strictly between j and k.
GzOperator generator_via(GeneratorIndex idx, int m, int levels, HBar hbar);

/// rho^{(n)}_k = (n - 2k + 1)/2, k = 1..n.
std::vector<double> rho_vector(int n);

enum class WhittakerKind { w, w_prime };

struct WhittakerVector {
  WhittakerKind kind;
  GzFunction evaluator;
};

/// Log of the Whittaker Gamma kernel, -(pi/hbar) sum (n-1) sum gamma_n + sum_n log s_n.
cd log_whittaker_w(const GzPattern& p, HBar hbar);

WhittakerVector whittaker_vector(WhittakerKind kind, int levels, HBar hbar, std::vector<cd> top_row);

struct SutherlandVector {
  GzFunction evaluator;
};

/// Log of the Sutherland vector; the Gamma kernels carry powers of (2 hbar).
cd log_sutherland_v(const GzPattern& p, HBar hbar);

SutherlandVector sutherland_vector(int levels, HBar hbar, std::vector<cd> top_row);

/// Pointwise check of the gl(N) commutation relations on random polynomials.
SuiteReport check_gl_relations(int levels, HBar hbar, int trials, std::uint64_t seed, double threshold = 1e-10);

/// E_{n,n+1} w = -i/hbar w (kind w) or E_{n+1,n} 1 = -i/hbar (kind w_prime).
SuiteReport check_whittaker_eigen(WhittakerKind kind, int levels, HBar hbar, int trials, std::uint64_t seed,
                                  double threshold = 1e-10);

/// (E_{n,n+1} - E_{n+1,n}) v = 0 for the Sutherland vector.
SuiteReport check_sutherland_condition(int levels, HBar hbar, int trials, std::uint64_t seed,
                                       double threshold = 1e-10);

/// Relative error of (a f)(p) against (b f)(p), normalized by the cancellation scale.
double operator_discrepancy(const GzOperator& a, const GzOperator& b, const GzFunction& f, const GzPattern& p);

}  // namespace gzrep
