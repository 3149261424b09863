#include "gzrep/models.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "gzrep/errors.hpp"
#include "gzrep/gl_rep.hpp"
#include "gzrep/specfun.hpp"

namespace gzrep {
namespace {

constexpr double kPi = std::numbers::pi;
const cd kI(0.0, 1.0);

void check_points(const std::vector<std::vector<double>>& xs, int levels) {
  if (xs.empty()) throw ConfigurationError("wave function: no evaluation points");
  for (const auto& x : xs) {
    if (static_cast<int>(x.size()) != levels) throw ConfigurationError("wave function: x must have length N");
    for (const double v : x) {
      if (!std::isfinite(v)) throw ConfigurationError("wave function: non-finite coordinate");
    }
  }
}

// log of hbar^z Gamma(z), z = (a - b)/(i hbar).
cd log_kernel(cd a, cd b, double h, double lnh) {
  const cd z = (a - b) / cd(0.0, h);
  return z * lnh + log_gamma(z);
}

// log of 1/(Gamma(z) Gamma(-z)), z = (a - b)/(i hbar).
cd log_pair_measure(cd a, cd b, double h) {
  const cd z = (a - b) / cd(0.0, h);
  return log_rgamma(z) + log_rgamma(-z);
}

// log |Gamma(z/2 + 1/4)|^2 continued analytically, z = (a - b)/(i hbar).
cd log_sutherland_kernel(cd a, cd b, double h) {
  const cd w = (a - b) / cd(0.0, 2.0 * h);
  return log_gamma(w + 0.25) + log_gamma(-w + 0.25);
}

cd top_sum(const SpectralParams& params) {
  cd s = 0.0;
  for (const cd g : params.gamma) s += g;
  return s;
}

std::vector<WaveSample> finish(const std::vector<std::vector<double>>& xs, const std::vector<GridResult>& res,
                               const std::vector<cd>& constants) {
  std::vector<WaveSample> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i].x = xs[i];
    out[i].value = constants[i] * res[i].value;
    out[i].err_estimate = std::abs(constants[i]) * res[i].error;
  }
  return out;
}

enum class Kernel { toda, sutherland };

// Pattern-integral batch: one structured pass, one variant per x.
std::vector<WaveSample> pattern_batch(const SpectralParams& params, const std::vector<std::vector<double>>& xs,
                                      Kernel kernel, const RowMultiplier* mult, const WaveOptions& opt) {
  const int N = static_cast<int>(params.gamma.size());
  const double h = params.hbar.value();
  const double lnh = std::log(h);
  const std::vector<cd>& top = params.gamma;

  std::vector<cd> constants(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) constants[i] = std::exp(kI / h * top_sum(params) * xs[i][N - 1]);
  if (mult && mult->row == N) {
    cd m = 1.0;
    for (const cd g : top) m *= mult->lambda - g;
    for (auto& c : constants) c *= m;
  }
  if (N == 1) {
    std::vector<GridResult> ones(xs.size());
    for (auto& r : ones) r.value = 1.0;
    return finish(xs, ones, constants);
  }

  const ContourKind kind = kernel == Kernel::toda ? ContourKind::s_ordered : ContourKind::real;
  const ContourSpec spec = opt.contour ? *opt.contour : default_contour(N, params.hbar, top, kind, opt.tol);
  if (spec.kind != kind) throw DomainError("wave function: contour kind does not match the model");
  validate_contour(spec, N, top);
  const PatternAxes pa = pattern_axes(N, spec);
  const int dims = static_cast<int>(pa.axes.size());

  PairwiseLogIntegrand f;
  f.unary.resize(static_cast<size_t>(dims));
  for (int a = 0; a < dims; ++a) {
    const int n = pa.index[a].first;
    if (n == N - 1) {
      if (kernel == Kernel::toda) {
        f.unary[a] = [top, h, lnh](cd z) {
          cd acc = 0.0;
          for (const cd g : top) acc += log_kernel(z, g, h, lnh);
          return acc;
        };
      } else {
        f.unary[a] = [top, h](cd z) {
          cd acc = 0.0;
          for (const cd g : top) acc += log_sutherland_kernel(z, g, h);
          return acc;
        };
      }
    }
    for (int b = a + 1; b < dims; ++b) {
      const int nb = pa.index[b].first;
      if (nb == n) {
        f.pairs.push_back({a, b, [h](cd u, cd v) { return log_pair_measure(u, v, h); }});
      } else if (nb == n - 1) {
        // b sits one row below a in the pattern (axes run from row N-1 downwards).
        if (kernel == Kernel::toda) {
          f.pairs.push_back({b, a, [h, lnh](cd lower, cd upper) { return log_kernel(lower, upper, h, lnh); }});
        } else {
          f.pairs.push_back({b, a, [h](cd lower, cd upper) { return log_sutherland_kernel(lower, upper, h); }});
        }
      }
    }
  }

  std::vector<Variant> variants(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    variants[i].factor.resize(static_cast<size_t>(dims));
    for (int a = 0; a < dims; ++a) {
      const int n = pa.index[a].first;
      const double dx = xs[i][n - 1] - xs[i][n];
      const bool multiply = mult && mult->row == n;
      const cd lambda = mult ? mult->lambda : cd(0.0);
      variants[i].factor[a] = [dx, h, multiply, lambda](cd z) {
        const cd e = std::exp(kI / h * z * dx);
        return multiply ? (lambda - z) * e : e;
      };
    }
  }
  QuadOptions q = opt.quad;
  if (q.decay_length <= 0.0) q.decay_length = h / kPi;
  return finish(xs, structured_integral(pa.axes, f, variants, q), constants);
}

// psi_n(x_1..x_n) at the row gamma_n, for every x (only the first n coordinates are read).
void toda_recursive(int n, const std::vector<cd>& gamma_n, const std::vector<std::vector<double>>& xs, HBar hbar,
                    const WaveOptions& opt, int workers, std::vector<cd>& out, double& rel_err) {
  const double h = hbar.value();
  const double lnh = std::log(h);
  out.assign(xs.size(), 0.0);
  rel_err = 0.0;
  if (n == 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = std::exp(kI / h * gamma_n[0] * xs[i][0]);
    return;
  }
  cd sum_n = 0.0;
  double max_im = -std::numeric_limits<double>::infinity();
  for (const cd g : gamma_n) {
    sum_n += g;
    max_im = std::max(max_im, g.imag());
  }
  const ContourSpec base = default_contour(n, hbar, gamma_n, ContourKind::s_ordered, opt.tol);
  const double sigma = max_im + opt.recursive_delta * h;
  QuadOptions q;
  q.workers = workers;
  q.decay_length = h / kPi;

  if (n == 2) {
    Axis axis{base.center, sigma, base.radius, base.nodes, 0};
    PairwiseLogIntegrand f;
    f.unary = {[gamma_n, h, lnh](cd z) {
      cd acc = 0.0;
      for (const cd g : gamma_n) acc += log_kernel(z, g, h, lnh);
      return acc;
    }};
    std::vector<Variant> variants(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double dx = xs[i][0] - xs[i][1];
      variants[i].factor = {[dx, h](cd z) { return std::exp(kI / h * z * dx); }};
    }
    const auto res = structured_integral({axis}, f, variants, q);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const cd c = std::exp(kI / h * sum_n * xs[i][1]);
      out[i] = c * res[i].value;
      if (std::abs(res[i].value) > 0.0) rel_err = std::max(rel_err, res[i].error / std::abs(res[i].value));
    }
    return;
  }

  std::vector<Axis> axes;
  for (int j = 0; j < n - 1; ++j) axes.push_back({base.center, sigma, base.radius, base.nodes, 0});
  std::atomic<double> inner_err{0.0};
  const int values = static_cast<int>(xs.size());
  const auto res = grid_integral(
      axes, values,
      [&](std::span<const cd> z, std::span<cd> vals) {
        cd log_k = 0.0;
        cd sum_z = 0.0;
        for (std::size_t s = 0; s < z.size(); ++s) {
          sum_z += z[s];
          for (std::size_t p = s + 1; p < z.size(); ++p) log_k += log_pair_measure(z[s], z[p], h);
          for (const cd g : gamma_n) log_k += log_kernel(z[s], g, h, lnh);
        }
        const cd k = std::exp(log_k);
        if (k == 0.0) return;
        std::vector<cd> inner;
        double err = 0.0;
        toda_recursive(n - 1, std::vector<cd>(z.begin(), z.end()), xs, hbar, opt, 1, inner, err);
        double seen = inner_err.load();
        while (err > seen && !inner_err.compare_exchange_weak(seen, err)) {
        }
        for (int i = 0; i < values; ++i) {
          vals[i] = k * std::exp(kI / h * (sum_n - sum_z) * xs[i][n - 1]) * inner[i];
        }
      },
      q);
  for (int i = 0; i < values; ++i) {
    out[i] = res[i].value;
    const double err = res[i].error + inner_err.load() * res[i].abs_sum;
    if (std::abs(res[i].value) > 0.0) rel_err = std::max(rel_err, err / std::abs(res[i].value));
  }
}

void check_chamber(const std::vector<std::vector<double>>& xs) {
  for (const auto& x : xs) {
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
      if (!(x[j] > x[j + 1])) throw DomainError("sutherland: x must satisfy x_1 > ... > x_N");
    }
  }
}

double sinh_prefactor(std::span<const double> x) {
  double s = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t k = j + 1; k < x.size(); ++k) s *= std::sqrt(std::sinh(x[j] - x[k]));
  }
  return s;
}

unsigned bit(int j) { return 1u << (j - 1); }

int ipow3(int n) {
  int r = 1;
  for (int k = 0; k < n; ++k) r *= 3;
  return r;
}

std::vector<double> steps(std::span<const double> x, const FdOptions& fd) {
  if (!(fd.h_scale > 0.0)) throw ConfigurationError("finite differences: step must be positive");
  std::vector<double> h(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) h[j] = fd.h_scale * (1.0 + std::abs(x[j]));
  return h;
}

double residual(cd lhs, cd rhs, cd psi) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), std::abs(psi)});
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

struct Stencils {
  std::vector<std::vector<double>> points;
  std::size_t per_point = 0;
};

Stencils gather(const std::vector<std::vector<double>>& xs, const FdOptions& fd) {
  Stencils s;
  for (const auto& x : xs) {
    auto st = fd_stencil(x, fd);
    s.per_point = st.size();
    s.points.insert(s.points.end(), st.begin(), st.end());
  }
  return s;
}

}  // namespace

void validate_params(const SpectralParams& params) {
  const auto& g = params.gamma;
  if (g.empty()) throw ConfigurationError("spectral parameters: empty top row");
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (!std::isfinite(g[a].real()) || !std::isfinite(g[a].imag()))
      throw ConfigurationError("spectral parameters: non-finite entry");
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      if (std::abs(g[a] - g[b]) <= 1e-12 * (1.0 + std::abs(g[a])))
        throw ConfigurationError("spectral parameters: entries must be pairwise distinct");
    }
  }
}

cd elementary_symmetric(std::span<const cd> v, int k) {
  std::vector<cd> e(static_cast<size_t>(k + 1), 0.0);
  e[0] = 1.0;
  for (const cd a : v) {
    for (int j = k; j >= 1; --j) e[j] += a * e[j - 1];
  }
  return e[k];
}

cd toda_log_integrand(const GzPattern& p, std::span<const double> x, HBar hbar) {
  const int N = p.levels();
  const double h = hbar.value();
  const double lnh = std::log(h);
  cd acc = 0.0;
  for (int n = 1; n < N; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (int m = 1; m <= n + 1; ++m) acc += log_kernel(p(n, k), p(n + 1, m), h, lnh);
    }
    for (int s = 1; s <= n; ++s) {
      for (int q = s + 1; q <= n; ++q) acc += log_pair_measure(p(n, s), p(n, q), h);
    }
  }
  for (int n = 1; n <= N; ++n) {
    cd d = 0.0;
    for (int j = 1; j <= n; ++j) d += p(n, j);
    for (int j = 1; j < n; ++j) d -= p(n - 1, j);
    acc += kI / h * d * x[n - 1];
  }
  return acc;
}

cd toda_unshifted_log_integrand(const GzPattern& p, std::span<const double> x, HBar hbar) {
  const int N = p.levels();
  const double h = hbar.value();
  const double lnh = std::log(h);
  const std::vector<double> rho = rho_vector(N);
  cd acc = 0.0;
  for (int n = 1; n <= N; ++n) acc -= x[n - 1] * rho[n - 1];
  for (int n = 1; n < N; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (int m = 1; m <= n + 1; ++m) {
        const cd z = (p(n, k) - p(n + 1, m)) / cd(0.0, h) + 0.5;
        acc += z * lnh + log_gamma(z);
      }
    }
    for (int s = 1; s <= n; ++s) {
      for (int q = s + 1; q <= n; ++q) acc += log_pair_measure(p(n, s), p(n, q), h);
    }
  }
  for (int n = 1; n <= N; ++n) {
    cd d = 0.0;
    for (int j = 1; j <= n; ++j) d += p(n, j);
    for (int j = 1; j < n; ++j) d -= p(n - 1, j);
    acc += kI / h * d * x[n - 1];
  }
  return acc;
}

std::vector<WaveSample> toda_wavefunction(const SpectralParams& params, const std::vector<std::vector<double>>& xs,
                                          TodaMethod method, const WaveOptions& opt) {
  validate_params(params);
  const int N = static_cast<int>(params.gamma.size());
  check_points(xs, N);
  if (method == TodaMethod::direct) {
    if (N > 3) throw ConfigurationError("toda_wavefunction: direct quadrature supports N <= 3");
    return pattern_batch(params, xs, Kernel::toda, nullptr, opt);
  }
  if (N > 3) throw ConfigurationError("toda_wavefunction: recursive quadrature supports N <= 3");
  if (!(opt.recursive_delta > 0.0)) throw ConfigurationError("toda_wavefunction: recursive_delta must be positive");
  std::vector<cd> values;
  double rel = 0.0;
  const int workers = opt.quad.workers > 0 ? opt.quad.workers : default_workers();
  toda_recursive(N, params.gamma, xs, params.hbar, opt, workers, values, rel);
  std::vector<WaveSample> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i].x = xs[i];
    out[i].value = values[i];
    out[i].err_estimate = rel * std::abs(values[i]);
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
      throw EvaluationError("toda_wavefunction: non-finite value");
  }
  return out;
}

WaveSample toda_wavefunction(const SpectralParams& params, const std::vector<double>& x, TodaMethod method,
                             const WaveOptions& opt) {
  return toda_wavefunction(params, std::vector<std::vector<double>>{x}, method, opt)[0];
}

std::vector<WaveSample> toda_wavefunction_with_multiplier(const SpectralParams& params,
                                                          const std::vector<std::vector<double>>& xs,
                                                          const RowMultiplier& mult, const WaveOptions& opt) {
  validate_params(params);
  const int N = static_cast<int>(params.gamma.size());
  check_points(xs, N);
  if (N > 3) throw ConfigurationError("toda_wavefunction: direct quadrature supports N <= 3");
  if (mult.row < 1 || mult.row > N) throw ConfigurationError("toda_wavefunction: multiplier row out of range");
  return pattern_batch(params, xs, Kernel::toda, &mult, opt);
}

cd toda_n2_oracle(const SpectralParams& params, std::span<const double> x) {
  if (params.gamma.size() != 2 || x.size() != 2) throw ConfigurationError("toda_n2_oracle: N = 2 only");
  const double h = params.hbar.value();
  const cd g1 = params.gamma[0], g2 = params.gamma[1];
  const cd nu = (g1 - g2) / cd(0.0, h);
  return 4.0 * kPi * h * std::exp(kI / (2.0 * h) * (g1 + g2) * (x[0] + x[1])) *
         macdonald_k(nu, (2.0 / h) * std::exp(0.5 * (x[0] - x[1])));
}

DiffOperator toda_lax_operator(int n, cd lambda, HBar hbar) {
  if (n < 0 || n > 31) throw ConfigurationError("toda_lax_operator: level out of range");
  struct Mono {
    cd c;
    unsigned exps;  // bit k-1: factor e^{x_{k-1} - x_k}
    unsigned mask;
  };
  const double h = hbar.value();
  std::vector<Mono> prev2;                 // A_{-1} = 0
  std::vector<Mono> prev1 = {{1.0, 0, 0}};  // A_0 = 1
  for (int k = 1; k <= n; ++k) {
    std::vector<Mono> next;
    for (const Mono& m : prev1) {
      next.push_back({lambda * m.c, m.exps, m.mask});
      next.push_back({kI * h * m.c, m.exps, m.mask | bit(k)});  // -p_k = i hbar d_k
    }
    if (k >= 2) {
      for (const Mono& m : prev2) next.push_back({-m.c, m.exps | bit(k), m.mask});
    }
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  DiffOperator op;
  for (const Mono& m : prev1) {
    const unsigned exps = m.exps;
    const cd c = m.c;
    op.push_back({[c, exps](std::span<const double> x) {
                    double e = 0.0;
                    for (int k = 2; k <= static_cast<int>(x.size()); ++k) {
                      if (exps & bit(k)) e += x[k - 2] - x[k - 1];
                    }
                    return c * std::exp(e);
                  },
                  m.mask});
  }
  return op;
}

DiffOperator toda_h1(int levels, HBar hbar) {
  DiffOperator op;
  const double h = hbar.value();
  for (int j = 1; j <= levels; ++j) op.push_back({[h](std::span<const double>) { return -kI * h; }, bit(j)});
  return op;
}

DiffOperator toda_h2(int levels, HBar hbar) {
  DiffOperator op;
  const double h = hbar.value();
  for (int j = 1; j <= levels; ++j) {
    for (int k = j + 1; k <= levels; ++k) {
      op.push_back({[h](std::span<const double>) { return cd(-h * h); }, bit(j) | bit(k)});
    }
  }
  for (int j = 1; j < levels; ++j) {
    op.push_back({[j](std::span<const double> x) { return cd(-std::exp(x[j - 1] - x[j])); }, 0});
  }
  return op;
}

DiffOperator sutherland_h2(int levels, HBar hbar) {
  DiffOperator op;
  const double h = hbar.value();
  for (int m = 1; m <= levels; ++m) {
    for (int n = m + 1; n <= levels; ++n) {
      op.push_back({[h](std::span<const double>) { return cd(-h * h); }, bit(m) | bit(n)});
      op.push_back({[h, m, n](std::span<const double> x) {
                      const double s = std::sinh(x[m - 1] - x[n - 1]);
                      return cd(0.25 * h * h / (s * s));
                    },
                    0});
    }
  }
  return op;
}

DiffOperator sutherland_phi_h2(int levels, HBar hbar) {
  DiffOperator op;
  const double h = hbar.value();
  for (int m = 1; m <= levels; ++m) {
    for (int n = m + 1; n <= levels; ++n) {
      op.push_back({[h](std::span<const double>) { return cd(-h * h); }, bit(m) | bit(n)});
      auto half_coth = [h, m, n](std::span<const double> x) { return 0.5 * h * h / std::tanh(x[m - 1] - x[n - 1]); };
      op.push_back({[half_coth](std::span<const double> x) { return cd(half_coth(x)); }, bit(m)});
      op.push_back({[half_coth](std::span<const double> x) { return cd(-half_coth(x)); }, bit(n)});
    }
  }
  return op;
}

std::vector<std::vector<double>> fd_stencil(std::span<const double> x, const FdOptions& fd) {
  const int N = static_cast<int>(x.size());
  if (N < 1 || N > 8) throw ConfigurationError("fd_stencil: dimension out of range");
  const std::vector<double> h = steps(x, fd);
  const int count = ipow3(N);
  std::vector<std::vector<double>> pts;
  const int levels = fd.richardson ? 2 : 1;
  for (int level = 1; level <= levels; ++level) {
    for (int idx = 0; idx < count; ++idx) {
      if (level == 2 && idx == (count - 1) / 2) continue;  // centre already present
      std::vector<double> p(x.begin(), x.end());
      int r = idx;
      for (int j = 0; j < N; ++j) {
        p[j] += (r % 3 - 1) * level * h[j];
        r /= 3;
      }
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

cd apply_fd(const DiffOperator& op, std::span<const double> x, std::span<const cd> values, const FdOptions& fd) {
  const int N = static_cast<int>(x.size());
  const std::vector<double> h = steps(x, fd);
  const int count = ipow3(N);
  const int center = (count - 1) / 2;
  const std::size_t expected = fd.richardson ? static_cast<std::size_t>(2 * count - 1) : static_cast<std::size_t>(count);
  if (values.size() != expected) throw ConfigurationError("apply_fd: stencil size mismatch");

  auto value_at = [&](int level, const std::vector<int>& s) {
    int idx = 0, w = 1;
    for (int j = 0; j < N; ++j) {
      idx += (s[j] + 1) * w;
      w *= 3;
    }
    if (level == 1 || idx == center) return values[idx];
    return values[count + (idx < center ? idx : idx - 1)];
  };
  auto derivative = [&](unsigned mask, int level) {
    std::vector<int> axes;
    for (int j = 1; j <= N; ++j) {
      if (mask & bit(j)) axes.push_back(j - 1);
    }
    if (axes.size() != static_cast<std::size_t>(std::popcount(mask)))
      throw ConfigurationError("apply_fd: derivative index beyond N");
    double denom = 1.0;
    for (const int a : axes) denom *= 2.0 * level * h[a];
    cd acc = 0.0;
    const unsigned corners = 1u << axes.size();
    std::vector<int> s(static_cast<size_t>(N), 0);
    for (unsigned c = 0; c < corners; ++c) {
      double sign = 1.0;
      for (std::size_t t = 0; t < axes.size(); ++t) {
        const int v = (c >> t) & 1u ? 1 : -1;
        s[axes[t]] = v;
        sign *= v;
      }
      acc += sign * value_at(level, s);
    }
    return acc / denom;
  };
  cd total = 0.0;
  for (const DiffTerm& t : op) {
    cd d = derivative(t.mask, 1);
    if (fd.richardson && t.mask != 0) d = (4.0 * d - derivative(t.mask, 2)) / 3.0;
    total += t.coeff(x) * d;
  }
  return total;
}

double EigenReport::max_residual(const std::string& prefix) const {
  double m = 0.0;
  for (const auto& it : items) {
    if (it.name.rfind(prefix, 0) == 0) m = std::max(m, it.residual);
  }
  return m;
}

EigenReport toda_eigencheck(const SpectralParams& params, const std::vector<std::vector<double>>& xs,
                            const EigenOptions& opt) {
  validate_params(params);
  const int N = static_cast<int>(params.gamma.size());
  check_points(xs, N);
  const Stencils st = gather(xs, opt.fd);
  const auto samples = toda_wavefunction(params, st.points, opt.method, opt.wave);
  std::vector<cd> values(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) values[i] = samples[i].value;

  const cd e1 = elementary_symmetric(params.gamma, 1);
  const cd e2 = N >= 2 ? elementary_symmetric(params.gamma, 2) : cd(0.0);
  const DiffOperator h1 = toda_h1(N, params.hbar);
  const DiffOperator h2 = toda_h2(N, params.hbar);
  const int center = (ipow3(N) - 1) / 2;
  EigenReport rep;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::span<const cd> v(values.data() + i * st.per_point, st.per_point);
    const cd psi = v[center];
    auto add = [&](const std::string& name, const DiffOperator& op, cd eig) {
      const cd lhs = apply_fd(op, xs[i], v, opt.fd);
      rep.items.push_back({name, xs[i], lhs, eig * psi, residual(lhs, eig * psi, psi)});
    };
    add("h1", h1, e1);
    if (N >= 2) add("h2", h2, e2);
    for (const cd lambda : opt.lambdas) {
      cd eig = 1.0;
      for (const cd g : params.gamma) eig *= lambda - g;
      add("lax", toda_lax_operator(N, lambda, params.hbar), eig);
    }
  }
  return rep;
}

EigenResidual toda_qism_identity(const SpectralParams& params, const std::vector<double>& x, cd lambda, int n,
                                 const EigenOptions& opt) {
  validate_params(params);
  const int N = static_cast<int>(params.gamma.size());
  if (n < 1 || n > N) throw ConfigurationError("toda_qism_identity: level out of range");
  check_points({x}, N);
  const auto pts = fd_stencil(x, opt.fd);
  const auto samples = toda_wavefunction(params, pts, opt.method, opt.wave);
  std::vector<cd> values(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) values[i] = samples[i].value;
  const cd lhs = apply_fd(toda_lax_operator(n, lambda, params.hbar), x, values, opt.fd);
  const cd rhs = toda_wavefunction_with_multiplier(params, {x}, {n, lambda}, opt.wave)[0].value;
  const cd psi = values[(ipow3(N) - 1) / 2];
  return {"qism_A" + std::to_string(n), x, lhs, rhs, residual(lhs, rhs, psi)};
}

std::vector<WaveSample> sutherland_spherical(const SpectralParams& params, const std::vector<std::vector<double>>& xs,
                                             const WaveOptions& opt) {
  validate_params(params);
  const int N = static_cast<int>(params.gamma.size());
  check_points(xs, N);
  if (N > 3) throw ConfigurationError("sutherland: quadrature supports N <= 3");
  for (const cd g : params.gamma) {
    if (g.imag() != 0.0) throw DomainError("sutherland: the top row must be real");
  }
  return pattern_batch(params, xs, Kernel::sutherland, nullptr, opt);
}

std::vector<WaveSample> sutherland_wavefunction(const SpectralParams& params,
                                                const std::vector<std::vector<double>>& xs,
                                                const WaveOptions& opt) {
  check_chamber(xs);
  auto out = sutherland_spherical(params, xs, opt);
  for (auto& s : out) {
    const double pre = sinh_prefactor(s.x);
    s.value *= pre;
    s.err_estimate *= pre;
  }
  return out;
}

cd sutherland_n2_oracle(const SpectralParams& params, std::span<const double> x) {
  if (params.gamma.size() != 2 || x.size() != 2) throw ConfigurationError("sutherland_n2_oracle: N = 2 only");
  if (!(x[0] > x[1])) throw DomainError("sutherland_n2_oracle: requires x1 > x2");
  const double h = params.hbar.value();
  const cd g1 = params.gamma[0], g2 = params.gamma[1];
  const double d = x[0] - x[1];
  const cd nu = (g1 - g2) / cd(0.0, 2.0 * h) - 0.5;
  return std::sqrt(std::sinh(d)) * (4.0 * kPi * kPi * kPi * h / std::cosh(kPi * (g1 - g2) / (2.0 * h))) *
         std::exp(kI / (2.0 * h) * (g1 + g2) * (x[0] + x[1])) * legendre_p(nu, std::cosh(d));
}

double sutherland_n2_constant_ratio() { return kPi * kPi; }

cd sutherland_n2_asymptotic(const SpectralParams& params, std::span<const double> x) {
  if (params.gamma.size() != 2 || x.size() != 2) throw ConfigurationError("sutherland_n2_asymptotic: N = 2 only");
  const double h = params.hbar.value();
  const cd g1 = params.gamma[0], g2 = params.gamma[1];
  const cd norm = 4.0 * std::pow(kPi, 2.5) * h / std::cosh(kPi * (g1 - g2) / (2.0 * h)) * std::exp(-0.5 * (x[0] - x[1]));
  return norm * (harish_chandra_c(g1, g2, params.hbar) * std::exp(kI / h * (g1 * x[0] + g2 * x[1])) +
                 harish_chandra_c(g2, g1, params.hbar) * std::exp(kI / h * (g2 * x[0] + g1 * x[1])));
}

EigenReport sutherland_eigencheck(const SpectralParams& params, const std::vector<std::vector<double>>& xs,
                                  const EigenOptions& opt) {
  validate_params(params);
  const int N = static_cast<int>(params.gamma.size());
  check_points(xs, N);
  check_chamber(xs);
  const Stencils st = gather(xs, opt.fd);
  try {
    check_chamber(st.points);
  } catch (const DomainError&) {
    throw ConfigurationError("sutherland_eigencheck: stencil leaves the chamber x_1 > ... > x_N");
  }
  const auto phi = sutherland_spherical(params, st.points, opt.wave);
  std::vector<cd> phi_v(phi.size()), psi_v(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    phi_v[i] = phi[i].value;
    psi_v[i] = phi[i].value * sinh_prefactor(st.points[i]);
  }
  const cd e1 = elementary_symmetric(params.gamma, 1);
  const cd e2 = N >= 2 ? elementary_symmetric(params.gamma, 2) : cd(0.0);
  std::vector<cd> rho;
  for (const double r : rho_vector(N)) rho.emplace_back(r);
  const double h = params.hbar.value();
  const cd e2_phi = e2 + h * h * (N >= 2 ? elementary_symmetric(rho, 2) : cd(0.0));
  const DiffOperator h1 = toda_h1(N, params.hbar);
  const DiffOperator h2 = sutherland_h2(N, params.hbar);
  const DiffOperator hphi = sutherland_phi_h2(N, params.hbar);
  const int center = (ipow3(N) - 1) / 2;
  EigenReport rep;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::span<const cd> psi(psi_v.data() + i * st.per_point, st.per_point);
    std::span<const cd> ph(phi_v.data() + i * st.per_point, st.per_point);
    auto add = [&](const std::string& name, const DiffOperator& op, cd eig, std::span<const cd> v) {
      const cd lhs = apply_fd(op, xs[i], v, opt.fd);
      rep.items.push_back({name, xs[i], lhs, eig * v[center], residual(lhs, eig * v[center], v[center])});
    };
    add("h1", h1, e1, psi);
    if (N >= 2) {
      add("h2", h2, e2, psi);
      add("phi_h2", hphi, e2_phi, ph);
    }
  }
  return rep;
}

}  // namespace gzrep
