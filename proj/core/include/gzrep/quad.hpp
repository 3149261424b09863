#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gzrep/gz_core.hpp"

namespace gzrep {

/// One trapezoid axis: nodes center - R + k h + i sigma, k = 0..M-1, h = 2R/(M-1).
struct Axis {
  double center = 0.0;
  double sigma = 0.0;
  double radius = 8.0;
  int nodes = 257;
  int group = 0;  // axes sharing a group are halved together in the diagnostics

  double step() const { return 2.0 * radius / (nodes - 1); }
  cd node(int k) const { return {center - radius + k * step(), sigma}; }
};

struct QuadOptions {
  int workers = 0;             // 0: GZREP_WORKERS or hardware concurrency
  double decay_length = 0.0;   // e-folding length of the integrand beyond R, used for the tail bound
};

/// Worker count used when QuadOptions::workers is 0.
int default_workers();

struct GridResult {
  cd value = 0.0;
  double error = 0.0;          // halving delta + tail + rounding floor
  double halving_delta = 0.0;  // |I_M - I_{M/2}| with every axis halved
  double tail = 0.0;           // bound on the neglected region beyond R
  std::vector<double> group_deltas;  // |I_M - I| with only one group halved
  double abs_sum = 0.0;        // sum of |weight * f|, the cancellation scale
};

/// Trapezoid rule on the horizontal line Im t = sigma over [center - R, center + R].
/// `tail_bound` (absolute) is added to the error estimate.
GridResult line_integral(const std::function<cd(cd)>& f, double sigma, double radius, int nodes,
                         double tail_bound = 0.0, double center = 0.0);

/// Product-grid trapezoid of a vector-valued integrand: f(z, out) fills out[0..values).
std::vector<GridResult> grid_integral(const std::vector<Axis>& axes, int values,
                                      const std::function<void(std::span<const cd>, std::span<cd>)>& f,
                                      const QuadOptions& opt = {});

/// log f = sum_k unary_k(z_k) + sum_pairs pair(z_a, z_b).
struct PairwiseLogIntegrand {
  struct Pair {
    int a;
    int b;
    std::function<cd(cd, cd)> log_factor;
  };
  std::vector<std::function<cd(cd)>> unary;  // one per axis; empty entries contribute 0
  std::vector<Pair> pairs;
};

/// Per-axis multiplicative factors applied on top of exp(log f); one result per variant.
struct Variant {
  std::vector<std::function<cd(cd)>> factor;  // one per axis; empty entries are 1
};

/// Structured engine: tabulates unary and pair logs once, exponentiates once per node and
/// accumulates every variant in the same pass.
std::vector<GridResult> structured_integral(const std::vector<Axis>& axes, const PairwiseLogIntegrand& integrand,
                                            const std::vector<Variant>& variants, const QuadOptions& opt = {});

enum class ContourKind { s_ordered, real };

/// Per-level offsets, truncation, node count and center for GZ-pattern integrals.
struct ContourSpec {
  std::vector<double> offsets;  // sigma_n, n = 1..N-1
  double radius = 8.0;
  int nodes = 257;
  double center = 0.0;
  ContourKind kind = ContourKind::s_ordered;
  bool stagger = false;  // axis (n, j) centred at center + (j - 1) h / n, keeping same-row nodes apart
};

/// sigma_n = max Im gamma_N + (N - n) delta with delta = hbar/2 (s_ordered), or 0 (real);
/// R and M sized so the half grid and the tail are both near `tol`.
ContourSpec default_contour(int levels, HBar hbar, std::span<const cd> top_row, ContourKind kind = ContourKind::s_ordered,
                            double tol = 1e-10);

/// Throws DomainError when the offsets violate the ordering required by `kind`.
void validate_contour(const ContourSpec& spec, int levels, std::span<const cd> top_row);

/// Axis list for the free rows, row N-1 outermost; `index` maps each axis to (n, j).
struct PatternAxes {
  std::vector<Axis> axes;
  std::vector<std::pair<int, int>> index;
};
PatternAxes pattern_axes(int levels, const ContourSpec& spec);

/// Iterated integral over the free rows of a pattern with fixed top row.
GridResult nested_integral(int levels, std::span<const cd> top_row, const std::function<cd(const GzPattern&)>& integrand,
                           const ContourSpec& spec, const QuadOptions& opt = {});

/// mu_0 = prod_{n=2}^{N-1} prod_{s<p} (g_ns - g_np)(e^{2 pi g_np/hbar} - e^{2 pi g_ns/hbar}).
cd pairing_measure(const GzPattern& p, HBar hbar);

/// <phi, psi> = int mu_0 conj(phi) psi over the real free rows (top row real), on a staggered grid.
GridResult pairing(const GzFunction& phi, const GzFunction& psi, int levels, HBar hbar, const ContourSpec& spec,
                   const QuadOptions& opt = {});

/// exp(-(1/(2N-3)!!) sum_{n<N} sum_j |Re gamma_nj|).
double decay_bound(const GzPattern& p, int levels, HBar hbar);

}  // namespace gzrep
