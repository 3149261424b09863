#include "gzrep/quad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "gzrep/errors.hpp"

namespace gzrep {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Floor on the error estimate: accumulated rounding relative to the cancellation scale.
constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();

double weight(int k, int m) { return (k == 0 || k == m - 1) ? 0.5 : 1.0; }

double cheap_abs(cd v) { return std::abs(v.real()) + std::abs(v.imag()); }

void check_axes(const std::vector<Axis>& axes) {
  if (axes.empty()) throw ConfigurationError("quadrature: no axes");
  for (const auto& a : axes) {
    if (a.nodes < 17 || a.nodes % 2 == 0) throw ConfigurationError("quadrature: node count must be odd and >= 17");
    if (!(a.radius > 0.0) || !std::isfinite(a.radius)) throw ConfigurationError("quadrature: radius must be positive");
    if (a.group < 0) throw ConfigurationError("quadrature: negative group id");
  }
}

int group_count(const std::vector<Axis>& axes) {
  int g = 0;
  for (const auto& a : axes) g = std::max(g, a.group + 1);
  return g;
}

// Sums accumulated for one outer index, a common real shift s applying to all of them.
struct RowSums {
  double shift = kNegInf;
  std::vector<cd> full, half;
  std::vector<cd> group_half;  // [variant * groups + g]
  std::vector<double> abs_sum;
  std::vector<double> boundary_log;  // log of max |f| on the box boundary (shift included)

  void init(int values, int groups) {
    full.assign(values, 0.0);
    half.assign(values, 0.0);
    group_half.assign(static_cast<size_t>(values * groups), 0.0);
    abs_sum.assign(values, 0.0);
    boundary_log.assign(values, kNegInf);
  }
};

template <class Work>
void run_parallel(int tasks, int workers, Work&& work) {
  if (workers <= 1 || tasks <= 1) {
    for (int t = 0; t < tasks; ++t) work(t);
    return;
  }
  workers = std::min(workers, tasks);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int t = w; t < tasks; t += workers) work(t);
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<GridResult> combine(const std::vector<Axis>& axes, const std::vector<RowSums>& rows, int values,
                                double decay_length) {
  const int dims = static_cast<int>(axes.size());
  const int groups = group_count(axes);
  double step_product = 1.0;
  for (const auto& a : axes) step_product *= a.step();
  std::vector<int> group_dims(static_cast<size_t>(groups), 0);
  for (const auto& a : axes) ++group_dims[a.group];

  double top = kNegInf;
  for (const auto& r : rows) top = std::max(top, r.shift);

  std::vector<GridResult> out(static_cast<size_t>(values));
  if (top == kNegInf) {
    for (auto& g : out) g.group_deltas.assign(static_cast<size_t>(groups), 0.0);
    return out;
  }
  if (!std::isfinite(top)) throw EvaluationError("quadrature: integrand overflow");

  double surface = 0.0;
  for (int k = 0; k < dims; ++k) {
    double face = 2.0;
    for (int l = 0; l < dims; ++l) {
      if (l != k) face *= 2.0 * axes[l].radius;
    }
    surface += face;
  }
  if (decay_length <= 0.0) decay_length = axes[0].radius / 8.0;

  for (int v = 0; v < values; ++v) {
    cd full = 0.0, half = 0.0;
    std::vector<cd> gh(static_cast<size_t>(groups), 0.0);
    double abs_sum = 0.0, boundary = kNegInf;
    for (const auto& r : rows) {
      if (r.shift == kNegInf) continue;
      const double scale = std::exp(r.shift - top);
      full += scale * r.full[v];
      half += scale * r.half[v];
      for (int g = 0; g < groups; ++g) gh[g] += scale * r.group_half[v * groups + g];
      abs_sum += scale * r.abs_sum[v];
      boundary = std::max(boundary, r.boundary_log[v]);
    }
    const double e_top = std::exp(top);
    GridResult& g = out[v];
    g.value = e_top * step_product * full;
    const cd half_value = e_top * step_product * std::pow(2.0, dims) * half;
    g.halving_delta = std::abs(g.value - half_value);
    g.group_deltas.resize(static_cast<size_t>(groups));
    for (int k = 0; k < groups; ++k) {
      const cd gv = e_top * step_product * std::pow(2.0, group_dims[k]) * gh[k];
      g.group_deltas[k] = std::abs(g.value - gv);
    }
    g.abs_sum = e_top * step_product * abs_sum;
    g.tail = boundary == kNegInf ? 0.0 : std::exp(boundary) * decay_length * surface;
    g.error = g.halving_delta + g.tail + kRoundoff * g.abs_sum;
    if (!std::isfinite(g.value.real()) || !std::isfinite(g.value.imag()) || !std::isfinite(g.error)) {
      throw EvaluationError("quadrature: non-finite result");
    }
  }
  return out;
}

}  // namespace

int default_workers() {
  if (const char* env = std::getenv("GZREP_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::vector<GridResult> grid_integral(const std::vector<Axis>& axes, int values,
                                      const std::function<void(std::span<const cd>, std::span<cd>)>& f,
                                      const QuadOptions& opt) {
  check_axes(axes);
  if (values < 1) throw ConfigurationError("grid_integral: need at least one value");
  const int dims = static_cast<int>(axes.size());
  const int groups = group_count(axes);
  const int m0 = axes[0].nodes;
  std::vector<RowSums> rows(static_cast<size_t>(m0));
  const int workers = opt.workers > 0 ? opt.workers : default_workers();

  run_parallel(m0, workers, [&](int i0) {
    RowSums& row = rows[i0];
    row.init(values, groups);
    row.shift = 0.0;
    std::vector<int> idx(static_cast<size_t>(dims), 0);
    idx[0] = i0;
    std::vector<cd> z(static_cast<size_t>(dims));
    std::vector<cd> out(static_cast<size_t>(values));
    std::vector<char> group_even(static_cast<size_t>(groups));
    for (;;) {
      double w = 1.0;
      bool all_even = true, boundary = false;
      std::fill(group_even.begin(), group_even.end(), 1);
      for (int k = 0; k < dims; ++k) {
        z[k] = axes[k].node(idx[k]);
        w *= weight(idx[k], axes[k].nodes);
        const bool even = idx[k] % 2 == 0;
        all_even = all_even && even;
        if (!even) group_even[axes[k].group] = 0;
        boundary = boundary || idx[k] == 0 || idx[k] == axes[k].nodes - 1;
      }
      std::fill(out.begin(), out.end(), 0.0);
      f(z, out);
      for (int v = 0; v < values; ++v) {
        const cd fv = w * out[v];
        row.full[v] += fv;
        row.abs_sum[v] += cheap_abs(fv);
        if (all_even) row.half[v] += fv;
        for (int g = 0; g < groups; ++g) {
          if (group_even[g]) row.group_half[v * groups + g] += fv;
        }
        if (boundary) {
          const double a = std::abs(out[v]);
          if (a > 0.0) row.boundary_log[v] = std::max(row.boundary_log[v], std::log(a));
        }
      }
      // Odometer over axes 1..D-1.
      int k = dims - 1;
      for (; k >= 1; --k) {
        if (++idx[k] < axes[k].nodes) break;
        idx[k] = 0;
      }
      if (k < 1) break;
    }
  });
  return combine(axes, rows, values, opt.decay_length);
}

GridResult line_integral(const std::function<cd(cd)>& f, double sigma, double radius, int nodes, double tail_bound,
                         double center) {
  Axis a{center, sigma, radius, nodes, 0};
  QuadOptions opt;
  opt.workers = 1;
  auto res = grid_integral({a}, 1, [&f](std::span<const cd> z, std::span<cd> out) { out[0] = f(z[0]); }, opt);
  GridResult r = res[0];
  // Only the caller knows the decay; replace the boundary heuristic by the supplied bound.
  r.tail = tail_bound;
  r.error = r.halving_delta + r.tail + kRoundoff * r.abs_sum;
  return r;
}

std::vector<GridResult> structured_integral(const std::vector<Axis>& axes, const PairwiseLogIntegrand& integrand,
                                            const std::vector<Variant>& variants_in, const QuadOptions& opt) {
  check_axes(axes);
  const int dims = static_cast<int>(axes.size());
  const int groups = group_count(axes);
  if (static_cast<int>(integrand.unary.size()) > dims) throw ConfigurationError("structured_integral: too many unary terms");
  std::vector<Variant> variants = variants_in;
  if (variants.empty()) variants.emplace_back();
  const int values = static_cast<int>(variants.size());

  // Unary log tables.
  std::vector<std::vector<cd>> unary(static_cast<size_t>(dims));
  for (int k = 0; k < dims; ++k) {
    unary[k].assign(static_cast<size_t>(axes[k].nodes), 0.0);
    if (k < static_cast<int>(integrand.unary.size()) && integrand.unary[k]) {
      for (int i = 0; i < axes[k].nodes; ++i) unary[k][i] = integrand.unary[k](axes[k].node(i));
    }
  }
  // Pair tables, merged per (a, b) with a < b; table[i_a * M_b + i_b].
  struct PairTable {
    int a, b;
    std::vector<cd> t;
  };
  std::vector<PairTable> pairs;
  for (const auto& p : integrand.pairs) {
    int a = p.a, b = p.b;
    if (a == b || a < 0 || b < 0 || a >= dims || b >= dims) throw ConfigurationError("structured_integral: bad pair");
    const bool swapped = a > b;
    if (swapped) std::swap(a, b);
    auto it = std::find_if(pairs.begin(), pairs.end(), [a, b](const PairTable& t) { return t.a == a && t.b == b; });
    if (it == pairs.end()) {
      pairs.push_back({a, b, std::vector<cd>(static_cast<size_t>(axes[a].nodes * axes[b].nodes), 0.0)});
      it = pairs.end() - 1;
    }
    for (int i = 0; i < axes[a].nodes; ++i) {
      const cd za = axes[a].node(i);
      for (int j = 0; j < axes[b].nodes; ++j) {
        const cd zb = axes[b].node(j);
        it->t[static_cast<size_t>(i * axes[b].nodes + j)] += swapped ? p.log_factor(zb, za) : p.log_factor(za, zb);
      }
    }
  }
  // Variant factor tables, [v][k][i]; empty means identically 1.
  std::vector<std::vector<std::vector<cd>>> factors(static_cast<size_t>(values),
                                                    std::vector<std::vector<cd>>(static_cast<size_t>(dims)));
  for (int v = 0; v < values; ++v) {
    for (int k = 0; k < dims && k < static_cast<int>(variants[v].factor.size()); ++k) {
      if (!variants[v].factor[k]) continue;
      factors[v][k].resize(static_cast<size_t>(axes[k].nodes));
      for (int i = 0; i < axes[k].nodes; ++i) factors[v][k][i] = variants[v].factor[k](axes[k].node(i));
    }
  }

  const int last = dims - 1;
  const int m_last = axes[last].nodes;
  std::vector<const PairTable*> outer_pairs, last_pairs;
  for (const auto& p : pairs) (p.b == last ? last_pairs : outer_pairs).push_back(&p);

  const int m0 = axes[0].nodes;
  std::vector<RowSums> rows(static_cast<size_t>(m0));
  const int workers = opt.workers > 0 ? opt.workers : default_workers();

  run_parallel(m0, workers, [&](int i0) {
    RowSums& row = rows[i0];
    row.init(values, groups);
    std::vector<int> idx(static_cast<size_t>(dims), 0);
    idx[0] = i0;
    std::vector<cd> logs(static_cast<size_t>(m_last));
    std::vector<cd> row_factor(static_cast<size_t>(values));
    std::vector<char> group_even(static_cast<size_t>(groups));

    // Walks the block of nodes with idx[0] = i0; `body` sees one innermost row of logs.
    auto walk = [&](auto&& body) {
      std::fill(idx.begin() + 1, idx.end(), 0);
      for (;;) {
        cd base = 0.0;
        for (int k = 0; k < dims - 1; ++k) base += unary[k][idx[k]];
        if (dims == 1) base = 0.0;
        for (const PairTable* p : outer_pairs) base += p->t[static_cast<size_t>(idx[p->a] * axes[p->b].nodes + idx[p->b])];
        if (dims == 1) {
          logs[0] = unary[0][i0];
          body(1);
        } else {
          for (int i = 0; i < m_last; ++i) logs[i] = base + unary[last][i];
          for (const PairTable* p : last_pairs) {
            const cd* r = p->t.data() + static_cast<size_t>(idx[p->a] * m_last);
            for (int i = 0; i < m_last; ++i) logs[i] += r[i];
          }
          body(m_last);
        }
        if (dims <= 2) break;
        int k = dims - 2;
        for (; k >= 1; --k) {
          if (++idx[k] < axes[k].nodes) break;
          idx[k] = 0;
        }
        if (k < 1) break;
      }
    };

    double smax = kNegInf;
    walk([&](int count) {
      for (int i = 0; i < count; ++i) smax = std::max(smax, logs[i].real());
    });
    row.shift = smax;
    if (smax == kNegInf) return;
    if (!std::isfinite(smax)) throw EvaluationError("structured_integral: non-finite log integrand");

    walk([&](int count) {
      // Outer-axis weight, evenness and boundary status.
      double w_outer = 1.0;
      bool outer_even = true, outer_boundary = false;
      std::fill(group_even.begin(), group_even.end(), 1);
      const int outer_dims = dims == 1 ? 0 : dims - 1;
      for (int k = 0; k < outer_dims; ++k) {
        w_outer *= weight(idx[k], axes[k].nodes);
        const bool even = idx[k] % 2 == 0;
        outer_even = outer_even && even;
        if (!even) group_even[axes[k].group] = 0;
        outer_boundary = outer_boundary || idx[k] == 0 || idx[k] == axes[k].nodes - 1;
      }
      for (int v = 0; v < values; ++v) {
        cd rf = 1.0;
        for (int k = 0; k < outer_dims; ++k) {
          if (!factors[v][k].empty()) rf *= factors[v][k][idx[k]];
        }
        row_factor[v] = rf;
      }
      const int lk = dims == 1 ? 0 : last;
      const int lg = axes[lk].group;
      for (int i = 0; i < count; ++i) {
        const int il = dims == 1 ? i0 : i;
        const double w = w_outer * weight(il, axes[lk].nodes);
        const bool even_last = il % 2 == 0;
        const bool boundary = outer_boundary || il == 0 || il == axes[lk].nodes - 1;
        const cd e = std::exp(logs[i] - smax);
        for (int v = 0; v < values; ++v) {
          cd f = e * row_factor[v];
          if (!factors[v][lk].empty()) f *= factors[v][lk][il];
          const cd fv = w * f;
          row.full[v] += fv;
          row.abs_sum[v] += cheap_abs(fv);
          if (outer_even && even_last) row.half[v] += fv;
          for (int g = 0; g < groups; ++g) {
            const bool ge = group_even[g] && (g != lg || even_last);
            if (ge) row.group_half[v * groups + g] += fv;
          }
          if (boundary) {
            const double a = std::abs(f);
            if (a > 0.0) row.boundary_log[v] = std::max(row.boundary_log[v], std::log(a) + smax);
          }
        }
      }
    });
  });
  return combine(axes, rows, values, opt.decay_length);
}

ContourSpec default_contour(int levels, HBar hbar, std::span<const cd> top_row, ContourKind kind, double tol) {
  if (levels < 2) throw ConfigurationError("default_contour: N >= 2 required");
  if (static_cast<int>(top_row.size()) != levels) throw ConfigurationError("default_contour: top row length mismatch");
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigurationError("default_contour: tolerance must lie in (0, 1)");
  const double h = hbar.value();
  const double delta = 0.5 * h;
  double max_im = kNegInf, lo = std::numeric_limits<double>::infinity(), hi = -lo, mean = 0.0;
  for (const cd g : top_row) {
    max_im = std::max(max_im, g.imag());
    lo = std::min(lo, g.real());
    hi = std::max(hi, g.real());
    mean += g.real();
  }
  mean /= levels;
  ContourSpec spec;
  spec.kind = kind;
  spec.center = mean;
  spec.offsets.resize(static_cast<size_t>(levels - 1));
  for (int n = 1; n < levels; ++n) spec.offsets[n - 1] = kind == ContourKind::real ? 0.0 : max_im + (levels - n) * delta;
  // Gamma kernels decay like exp(-pi |t| / hbar) per variable; poles sit delta below (or above) each line.
  const double log_tol = std::log(1.0 / tol);
  spec.radius = 1.25 * (h / std::numbers::pi) * log_tol + 0.5 * (hi - lo);
  const double step = std::numbers::pi * delta / log_tol;
  int m = static_cast<int>(std::ceil(2.0 * spec.radius / step)) + 1;
  m = std::max(m, tol <= 1e-10 ? 257 : 33);
  if (m % 2 == 0) ++m;
  spec.nodes = m;
  return spec;
}

void validate_contour(const ContourSpec& spec, int levels, std::span<const cd> top_row) {
  if (static_cast<int>(spec.offsets.size()) != levels - 1) throw ConfigurationError("contour: need N-1 offsets");
  if (static_cast<int>(top_row.size()) != levels) throw ConfigurationError("contour: top row length mismatch");
  if (spec.nodes < 17 || spec.nodes % 2 == 0) throw ConfigurationError("contour: node count must be odd and >= 17");
  if (!(spec.radius > 0.0)) throw ConfigurationError("contour: radius must be positive");
  if (spec.kind == ContourKind::real) {
    for (const double s : spec.offsets) {
      if (s != 0.0) throw DomainError("contour: real contours need zero offsets");
    }
    for (const cd g : top_row) {
      if (g.imag() != 0.0) throw DomainError("contour: real contours need a real top row");
    }
    return;
  }
  double max_im = kNegInf;
  for (const cd g : top_row) max_im = std::max(max_im, g.imag());
  if (!(spec.offsets[levels - 2] > max_im)) throw DomainError("contour: level N-1 must lie above the top row");
  for (int n = 1; n + 1 < levels; ++n) {
    if (!(spec.offsets[n - 1] > spec.offsets[n])) throw DomainError("contour: offsets must decrease with the level");
  }
}

PatternAxes pattern_axes(int levels, const ContourSpec& spec) {
  PatternAxes pa;
  for (int n = levels - 1; n >= 1; --n) {
    for (int j = 1; j <= n; ++j) {
      Axis a{spec.center, spec.offsets[n - 1], spec.radius, spec.nodes, levels - 1 - n};
      if (spec.stagger) a.center += (j - 1) * a.step() / n;
      pa.axes.push_back(a);
      pa.index.emplace_back(n, j);
    }
  }
  return pa;
}

GridResult nested_integral(int levels, std::span<const cd> top_row, const std::function<cd(const GzPattern&)>& integrand,
                           const ContourSpec& spec, const QuadOptions& opt) {
  validate_contour(spec, levels, top_row);
  const PatternAxes pa = pattern_axes(levels, spec);
  GzPattern proto(levels);
  proto.set_top_row(top_row);
  auto res = grid_integral(
      pa.axes, 1,
      [&](std::span<const cd> z, std::span<cd> out) {
        GzPattern p = proto;
        for (std::size_t k = 0; k < z.size(); ++k) p(pa.index[k].first, pa.index[k].second) = z[k];
        out[0] = integrand(p);
      },
      opt);
  return res[0];
}

cd pairing_measure(const GzPattern& p, HBar hbar) {
  const double h = hbar.value();
  cd mu = 1.0;
  for (int n = 2; n < p.levels(); ++n) {
    for (int s = 1; s <= n; ++s) {
      for (int q = s + 1; q <= n; ++q) {
        mu *= (p(n, s) - p(n, q)) * (std::exp(2.0 * std::numbers::pi * p(n, q) / h) -
                                     std::exp(2.0 * std::numbers::pi * p(n, s) / h));
      }
    }
  }
  return mu;
}

GridResult pairing(const GzFunction& phi, const GzFunction& psi, int levels, HBar hbar, const ContourSpec& spec,
                   const QuadOptions& opt) {
  if (spec.kind != ContourKind::real) throw DomainError("pairing: requires real contours");
  const std::vector<cd>& top = psi.top_row();
  QuadOptions o = opt;
  if (o.decay_length <= 0.0) o.decay_length = hbar.value() / std::numbers::pi;
  ContourSpec s = spec;
  s.stagger = true;
  return nested_integral(
      levels, top,
      [&](const GzPattern& p) {
        GzPattern c = p;
        for (cd& v : c.data()) v = std::conj(v);
        return pairing_measure(p, hbar) * std::conj(phi(c)) * psi(p);
      },
      s, o);
}

double decay_bound(const GzPattern& p, int levels, HBar) {
  double dfact = 1.0;
  for (int k = 2 * levels - 3; k > 1; k -= 2) dfact *= k;
  double s = 0.0;
  for (int n = 1; n < levels; ++n) {
    for (int j = 1; j <= n; ++j) s += std::abs(p(n, j).real());
  }
  return std::exp(-s / dfact);
}

}  // namespace gzrep
