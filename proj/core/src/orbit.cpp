#include "gzrep/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gzrep/errors.hpp"

namespace gzrep {
namespace {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

void check_shape(const OrbitPoint& p) {
  const int N = p.levels();
  if (N < 1) throw ConfigurationError("orbit: empty pattern");
  if (static_cast<int>(p.Q.size()) != N - 1) throw ConfigurationError("orbit: Q needs N-1 rows");
  for (int n = 1; n <= N; ++n) {
    if (static_cast<int>(p.gamma[n - 1].size()) != n) throw ConfigurationError("orbit: gamma row n needs n entries");
    if (n < N && static_cast<int>(p.Q[n - 1].size()) != n) throw ConfigurationError("orbit: Q row n needs n entries");
  }
}

// prod_r (gamma_nj - gamma_{m,r}) / prod_{s != j} (gamma_nj - gamma_ns)
double ratio(const OrbitPoint& p, int n, int j, int m) {
  double num = 1.0, den = 1.0;
  if (m >= 1) {
    for (int r = 1; r <= m; ++r) num *= p.g(n, j) - p.g(m, r);
  }
  for (int s = 1; s <= n; ++s) {
    if (s != j) den *= p.g(n, j) - p.g(n, s);
  }
  return num / den;
}

// Lagrange basis prod_{s != j} (lambda - gamma_ns)/(gamma_nj - gamma_ns)
double lagrange(const OrbitPoint& p, int n, int j, double lambda) {
  double v = 1.0;
  for (int s = 1; s <= n; ++s) {
    if (s != j) v *= (lambda - p.g(n, s)) / (p.g(n, j) - p.g(n, s));
  }
  return v;
}

CMat shifted(const Mat& u, std::complex<double> lambda) {
  return lambda * CMat::Identity(u.rows(), u.cols()) - u.cast<std::complex<double>>();
}

void check_level(const Mat& u, int n) {
  if (n < 1 || n > u.rows()) throw ConfigurationError("orbit: minor index out of range");
}

}  // namespace

void check_off_delta(const OrbitPoint& p, double tol) {
  check_shape(p);
  const int N = p.levels();
  for (int n = 1; n <= N; ++n) {
    for (int j = 1; j <= n; ++j) {
      if (!std::isfinite(p.g(n, j))) throw DegenerateInputError("orbit: non-finite gamma");
      for (int k = j + 1; k <= n; ++k) {
        if (std::abs(p.g(n, j) - p.g(n, k)) <= tol) throw DegenerateInputError("orbit: coincident entries in one row");
      }
      if (n > 1) {
        for (int k = 1; k < n; ++k) {
          if (std::abs(p.g(n, j) - p.g(n - 1, k)) <= tol)
            throw DegenerateInputError("orbit: coincident entries in consecutive rows");
        }
      }
      if (n < N && !(std::abs(p.q(n, j)) > tol)) throw DegenerateInputError("orbit: Q entry vanishes");
    }
  }
}

Mat corner_matrix(int n, const OrbitPoint& p) {
  check_off_delta(p);
  if (n < 1 || n > p.levels()) throw ConfigurationError("corner_matrix: n out of range");
  Mat f(n, n);
  for (int j = 1; j <= n; ++j) {
    const double r = ratio(p, n, j, n - 1);
    for (int k = 1; k < n; ++k) f(j - 1, k - 1) = p.q(n - 1, k) / (p.g(n, j) - p.g(n - 1, k)) * r;
    f(j - 1, n - 1) = r;
  }
  return f;
}

Mat reconstruct_u(const OrbitPoint& p, double* first_condition) {
  check_off_delta(p);
  const int N = p.levels();
  Mat u = Mat::Zero(N, N);
  for (int j = 1; j <= N; ++j) u(j - 1, j - 1) = p.g(N, j);
  double worst = 0.0;
  for (int n = N; n >= 2; --n) {
    Mat gn = Mat::Identity(N, N);
    gn.topLeftCorner(n, n) = corner_matrix(n, p);
    Eigen::PartialPivLU<Mat> lu(gn);
    if (!(std::abs(lu.determinant()) > 0.0)) throw DegenerateInputError("reconstruct_u: singular corner matrix");
    u = lu.solve(u * gn);
    // Upper-left (n-1) block must now be diag(gamma_{n-1}).
    double scale = 1.0;
    for (int j = 1; j < n; ++j) scale = std::max(scale, std::abs(p.g(n - 1, j)));
    for (int a = 0; a < n - 1; ++a) {
      for (int b = 0; b < n - 1; ++b) {
        const double target = a == b ? p.g(n - 1, a + 1) : 0.0;
        worst = std::max(worst, std::abs(u(a, b) - target) / scale);
      }
    }
  }
  if (first_condition) *first_condition = worst;
  return u;
}

std::complex<double> minor_a(const Mat& u, int n, std::complex<double> lambda) {
  if (n == 0) return 1.0;
  check_level(u, n);
  return shifted(u, lambda).topLeftCorner(n, n).determinant();
}

std::complex<double> minor_b(const Mat& u, int n, std::complex<double> lambda) {
  if (n < 1 || n >= u.rows()) throw ConfigurationError("minor_b: n out of range");
  CMat t = shifted(u, lambda);
  t.col(n - 1).swap(t.col(n));
  return t.topLeftCorner(n, n).determinant();
}

std::complex<double> minor_c(const Mat& u, int n, std::complex<double> lambda) {
  if (n < 1 || n >= u.rows()) throw ConfigurationError("minor_c: n out of range");
  CMat t = shifted(u, lambda);
  t.row(n - 1).swap(t.row(n));
  return t.topLeftCorner(n, n).determinant();
}

double b_closed_form(const OrbitPoint& p, int n, double lambda) {
  check_off_delta(p);
  double s = 0.0;
  for (int j = 1; j <= n; ++j) {
    double prod = 1.0;
    for (int r = 1; r <= n + 1; ++r) prod *= p.g(n, j) - p.g(n + 1, r);
    s += prod / p.q(n, j) * lagrange(p, n, j, lambda);
  }
  return s;
}

double c_closed_form(const OrbitPoint& p, int n, double lambda) {
  check_off_delta(p);
  double s = 0.0;
  for (int j = 1; j <= n; ++j) {
    double prod = 1.0;
    for (int r = 1; r < n; ++r) prod *= p.g(n, j) - p.g(n - 1, r);
    s -= p.q(n, j) * prod * lagrange(p, n, j, lambda);
  }
  return s;
}

std::vector<double> minor_roots(const Mat& u, int n) {
  if (n < 1 || n > u.rows()) throw ConfigurationError("minor_roots: n out of range");
  const Mat block = u.topLeftCorner(n, n);
  Eigen::EigenSolver<Mat> es(block, false);
  if (es.info() != Eigen::Success) throw DegenerateInputError("minor_roots: eigenvalue solver failed");
  const double scale = std::max(1.0, block.cwiseAbs().maxCoeff());
  std::vector<double> roots;
  for (int k = 0; k < n; ++k) {
    const auto ev = es.eigenvalues()[k];
    if (std::abs(ev.imag()) > 1e-8 * scale) throw DegenerateInputError("minor_roots: complex roots");
    double x = ev.real();
    // Newton polish on a_n: a_n'/a_n = tr((x - A)^{-1}).
    for (int it = 0; it < 3; ++it) {
      const Mat t = x * Mat::Identity(n, n) - block;
      Eigen::PartialPivLU<Mat> lu(t);
      if (!(std::abs(lu.determinant()) > 0.0)) break;
      const double tr = lu.inverse().trace();
      if (!std::isfinite(tr) || tr == 0.0) break;
      const double step = 1.0 / tr;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  for (int k = 1; k < n; ++k) {
    if (roots[k] - roots[k - 1] <= 1e-12 * scale) throw DegenerateInputError("minor_roots: repeated roots");
  }
  return roots;
}

OrbitPoint recover_point(const Mat& u, double* formula_spread) {
  const int N = static_cast<int>(u.rows());
  if (N < 1 || u.cols() != N) throw ConfigurationError("recover_point: u must be square");
  OrbitPoint p;
  for (int n = 1; n <= N; ++n) p.gamma.push_back(minor_roots(u, n));
  double spread = 0.0;
  for (int n = 1; n < N; ++n) {
    std::vector<double> q;
    for (int j = 1; j <= n; ++j) {
      const double x = p.g(n, j);
      const std::complex<double> b = minor_b(u, n, x);
      const std::complex<double> a_prev = minor_a(u, n - 1, x);
      if (b == 0.0 || a_prev == 0.0) throw DegenerateInputError("recover_point: minor vanishes at a root");
      const double q1 = (minor_a(u, n + 1, x) / b).real();
      const double q2 = (-minor_c(u, n, x) / a_prev).real();
      spread = std::max(spread, std::abs(q1 - q2) / std::max(std::abs(q1), std::abs(q2)));
      q.push_back(q1);
    }
    p.Q.push_back(std::move(q));
  }
  if (formula_spread) *formula_spread = spread;
  return p;
}

OrbitPoint canonical_order(const OrbitPoint& p) {
  check_shape(p);
  OrbitPoint out = p;
  for (int n = 1; n <= p.levels(); ++n) {
    std::vector<int> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return p.gamma[n - 1][a] < p.gamma[n - 1][b]; });
    for (int k = 0; k < n; ++k) {
      out.gamma[n - 1][k] = p.gamma[n - 1][idx[k]];
      if (n < p.levels()) out.Q[n - 1][k] = p.Q[n - 1][idx[k]];
    }
  }
  return out;
}

ClassicalGenerators classical_generators(const OrbitPoint& p) {
  check_off_delta(p);
  const int N = p.levels();
  ClassicalGenerators g;
  for (int n = 1; n <= N; ++n) {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += p.g(n, j);
    for (int j = 1; j < n; ++j) s -= p.g(n - 1, j);
    g.diag.push_back(s);
  }
  for (int n = 1; n < N; ++n) {
    double up = 0.0, lo = 0.0;
    for (int j = 1; j <= n; ++j) {
      up -= ratio(p, n, j, n + 1) / p.q(n, j);
      lo += ratio(p, n, j, n - 1) * p.q(n, j);
    }
    g.upper.push_back(up);
    g.lower.push_back(lo);
  }
  return g;
}

ClassicalGenerators contour_generators(const Mat& u, double radius, int nodes) {
  const int N = static_cast<int>(u.rows());
  if (!(radius > 0.0) || nodes < 8) throw ConfigurationError("contour_generators: bad circle");
  ClassicalGenerators g;
  g.diag.assign(static_cast<size_t>(N), 0.0);
  g.upper.assign(static_cast<size_t>(N - 1), 0.0);
  g.lower.assign(static_cast<size_t>(N - 1), 0.0);
  // -(1/2 pi i) oint F(lambda) dlambda with lambda = R e^{i t}: -(1/M) sum F(lambda_k) lambda_k.
  for (int k = 0; k < nodes; ++k) {
    const std::complex<double> lam = std::polar(radius, 2.0 * std::numbers::pi * k / nodes);
    std::vector<std::complex<double>> a(static_cast<size_t>(N + 1));
    for (int n = 0; n <= N; ++n) a[n] = minor_a(u, n, lam);
    for (int n = 1; n <= N; ++n) g.diag[n - 1] -= (a[n] / a[n - 1]).real() / nodes;  // the 1/lambda cancels
    for (int n = 1; n < N; ++n) {
      g.upper[n - 1] -= (minor_b(u, n, lam) / a[n] * lam).real() / nodes;
      g.lower[n - 1] -= (minor_c(u, n, lam) / a[n] * lam).real() / nodes;
    }
  }
  return g;
}

PoissonReport poisson_check(const OrbitPoint& p, double h) {
  check_off_delta(p);
  if (!(h > 0.0)) throw ConfigurationError("poisson_check: step must be positive");
  const int N = p.levels();
  const Mat u = reconstruct_u(p);
  std::vector<Mat> d_gamma, d_logq;
  for (int n = 1; n < N; ++n) {
    for (int j = 1; j <= n; ++j) {
      OrbitPoint a = p, b = p;
      a.gamma[n - 1][j - 1] += h;
      b.gamma[n - 1][j - 1] -= h;
      d_gamma.push_back((reconstruct_u(a) - reconstruct_u(b)) / (2.0 * h));
      a = p;
      b = p;
      a.Q[n - 1][j - 1] *= std::exp(h);
      b.Q[n - 1][j - 1] *= std::exp(-h);
      d_logq.push_back((reconstruct_u(a) - reconstruct_u(b)) / (2.0 * h));
    }
  }
  PoissonReport rep;
  rep.scale = std::max(1.0, u.cwiseAbs().maxCoeff());
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      for (int c = 0; c < N; ++c) {
        for (int d = 0; d < N; ++d) {
          // {F, G} = sum dF/dlogQ dG/dgamma - dF/dgamma dG/dlogQ
          double br = 0.0;
          for (std::size_t k = 0; k < d_gamma.size(); ++k) {
            br += d_logq[k](a, b) * d_gamma[k](c, d) - d_gamma[k](a, b) * d_logq[k](c, d);
          }
          const double rhs = (c == b ? u(a, d) : 0.0) - (a == d ? u(c, b) : 0.0);
          rep.max_error = std::max(rep.max_error, std::abs(br - rhs) / rep.scale);
          rep.opposite_sign_error = std::max(rep.opposite_sign_error, std::abs(br + rhs) / rep.scale);
        }
      }
    }
  }
  return rep;
}

OrbitPoint random_orbit_point(int levels, Rng& rng, const OrbitSampling& opt) {
  if (levels < 1) throw ConfigurationError("random_orbit_point: N >= 1 required");
  const double sep = opt.min_separation;
  if (!(sep > 0.0) || 2.0 * sep * levels > 6.0) throw ConfigurationError("random_orbit_point: bad separation");
  OrbitPoint p;
  p.gamma.resize(static_cast<size_t>(levels));
  auto separated = [](const std::vector<double>& row, double x, double d) {
    for (const double y : row) {
      if (std::abs(x - y) < d) return false;
    }
    return true;
  };
  if (opt.interlacing) {
    std::vector<double>& top = p.gamma[levels - 1];
    for (int attempt = 0; static_cast<int>(top.size()) < levels; ++attempt) {
      if (attempt > 100000) throw ConfigurationError("random_orbit_point: sampling failed");
      const double x = rng.uniform(-3.0, 3.0);
      if (separated(top, x, 2.0 * sep + 0.05)) top.push_back(x);
    }
    std::sort(top.begin(), top.end());
    for (int n = levels - 1; n >= 1; --n) {
      const std::vector<double>& up = p.gamma[n];
      for (int j = 0; j < n; ++j) p.gamma[n - 1].push_back(rng.uniform(up[j] + sep, up[j + 1] - sep));
    }
    for (int n = 2; n <= levels; ++n) {
      std::vector<double>& row = p.gamma[n - 1];
      for (int j = n - 1; j > 0; --j) std::swap(row[j], row[rng.uniform_int(0, j)]);
    }
  } else {
    for (int n = 1; n <= levels; ++n) {
      std::vector<double>& row = p.gamma[n - 1];
      for (int attempt = 0; static_cast<int>(row.size()) < n; ++attempt) {
        if (attempt > 100000) throw ConfigurationError("random_orbit_point: sampling failed");
        const double x = rng.uniform(-3.0, 3.0);
        if (separated(row, x, sep) && (n == 1 || separated(p.gamma[n - 2], x, sep))) row.push_back(x);
      }
    }
  }
  for (int n = 1; n < levels; ++n) {
    std::vector<double> q;
    for (int j = 0; j < n; ++j) q.push_back(rng.uniform(0.5, 2.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0));
    p.Q.push_back(std::move(q));
  }
  return p;
}

SuiteReport check_orbit(int levels, int trials, std::uint64_t seed) {
  if (levels < 2) throw ConfigurationError("check_orbit: N >= 2 required");
  SuiteReport rep;
  rep.suite = "orbit";
  rep.seed = seed;
  Rng rng(seed);
  const int N = levels;
  for (int t = 0; t < trials; ++t) {
    const OrbitPoint p = random_orbit_point(N, rng);
    double first = 0.0, spread = 0.0;
    const Mat u = reconstruct_u(p, &first);
    rep.record("first_condition", first, 1e-10);

    const OrbitPoint back = recover_point(u, &spread);
    const OrbitPoint ref = canonical_order(p);
    double rt = 0.0;
    for (int n = 1; n <= N; ++n) {
      for (int j = 1; j <= n; ++j) {
        rt = std::max(rt, std::abs(back.g(n, j) - ref.g(n, j)) / std::max(1.0, std::abs(ref.g(n, j))));
        if (n < N) rt = std::max(rt, std::abs(back.q(n, j) - ref.q(n, j)) / std::abs(ref.q(n, j)));
      }
    }
    rep.record("round_trip", rt, 1e-10);
    rep.record("q_formulas_agree", spread, 1e-10);

    Eigen::VectorXcd spec = u.eigenvalues();
    std::vector<double> ev;
    for (int k = 0; k < N; ++k) ev.push_back(spec[k].real());
    std::sort(ev.begin(), ev.end());
    double se = 0.0;
    for (int k = 0; k < N; ++k) se = std::max(se, std::abs(ev[k] - ref.g(N, k + 1)) / std::max(1.0, std::abs(ev[k])));
    rep.record("spectrum", se, 1e-10);

    const ClassicalGenerators cg = classical_generators(p);
    const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
    double ge = 0.0;
    for (int n = 1; n <= N; ++n) ge = std::max(ge, std::abs(cg.diag[n - 1] - u(n - 1, n - 1)) / scale);
    for (int n = 1; n < N; ++n) {
      ge = std::max(ge, std::abs(cg.upper[n - 1] - u(n - 1, n)) / scale);
      ge = std::max(ge, std::abs(cg.lower[n - 1] - u(n, n - 1)) / scale);
    }
    rep.record("generators", ge, 1e-10);

    double me = 0.0;
    const double lam = rng.uniform(-3.0, 3.0);
    for (int n = 1; n < N; ++n) {
      for (int j = 1; j <= n; ++j) me = std::max(me, std::abs(minor_a(u, n, p.g(n, j))) / std::pow(scale, n));
      const double b = b_closed_form(p, n, lam), c = c_closed_form(p, n, lam);
      me = std::max(me, relative_error(minor_b(u, n, lam), b, std::pow(scale, n)));
      me = std::max(me, relative_error(minor_c(u, n, lam), c, std::pow(scale, n)));
    }
    rep.record("minors", me, 1e-10);

    double radius = 1.0;
    for (const auto& row : p.gamma)
      for (const double x : row) radius = std::max(radius, 2.0 * std::abs(x) + 1.0);
    const ClassicalGenerators cc = contour_generators(u, radius);
    double ce = 0.0;
    for (int n = 1; n <= N; ++n) ce = std::max(ce, std::abs(cc.diag[n - 1] - u(n - 1, n - 1)) / scale);
    for (int n = 1; n < N; ++n) {
      ce = std::max(ce, std::abs(cc.upper[n - 1] - u(n - 1, n)) / scale);
      ce = std::max(ce, std::abs(cc.lower[n - 1] - u(n, n - 1)) / scale);
    }
    rep.record("contour_formulas", ce, 1e-8);

    if (N <= 4) {
      const PoissonReport pr = poisson_check(p);
      rep.record("poisson", pr.max_error, 1e-5);
    }
  }
  return rep;
}

}  // namespace gzrep
