#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gzrep/duality.hpp"
#include "gzrep/errors.hpp"
#include "gzrep/gl_rep.hpp"
#include "gzrep/models.hpp"
#include "gzrep/orbit.hpp"
#include "gzrep/sampling.hpp"
#include "gzrep/yangian.hpp"

namespace gzrep::cli {
namespace {

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  if (s.empty()) throw ConfigurationError("empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) throw ConfigurationError("malformed number '" + s + "'");
  return v;
}

cd parse_complex(const std::string& s) {
  if (s.empty()) throw ConfigurationError("empty complex entry");
  if (s.back() != 'i') return parse_double(s);
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  auto imag_of = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t);
  };
  if (split_at == std::string::npos) return {0.0, imag_of(body)};
  return {parse_double(body.substr(0, split_at)), imag_of(body.substr(split_at))};
}

struct Config {
  std::string command;
  int n = 0;
  double hbar = 1.0;
  std::string gamma;
  std::string x;
  std::string points;
  std::uint64_t seed = 1;
  int trials = 0;
  double tol = 0.0;  // 0: command default
  double threshold = 0.0;
  double delta = 0.0;
  double radius = 0.0;
  int nodes = 0;
  std::string format;
  std::string out;
  std::string report;
  int workers = 0;
  std::string method = "direct";
  std::string lambda;
  double fd_h = 1e-3;
  bool qism = false;
};

struct Result {
  SuiteReport report;
  json params = json::object();
  json extra = json::object();
  std::vector<WaveSample> samples;
  bool wave_output = false;
};

double pick(double given, double fallback) { return given > 0.0 ? given : fallback; }
int pick(int given, int fallback) { return given > 0 ? given : fallback; }

std::vector<cd> gamma_of(const Config& c, std::vector<cd> fallback = {}) {
  std::vector<cd> g = c.gamma.empty() ? std::move(fallback) : parse_complex_list(c.gamma);
  if (g.empty()) throw ConfigurationError("--gamma is required");
  if (c.n > 0 && static_cast<int>(g.size()) != c.n) throw ConfigurationError("--gamma must have --n entries");
  return g;
}

std::vector<std::vector<double>> points_of(const Config& c, int levels, const std::string& fallback = "") {
  std::vector<std::vector<double>> xs;
  if (!c.x.empty()) xs = parse_grid(c.x, levels);
  if (!c.points.empty()) {
    auto more = parse_points(c.points, levels);
    xs.insert(xs.end(), more.begin(), more.end());
  }
  if (xs.empty() && !fallback.empty()) xs = parse_grid(fallback, levels);
  if (xs.empty()) throw ConfigurationError("--x or --points is required");
  return xs;
}

json gamma_json(const std::vector<cd>& g) {
  json a = json::array();
  for (const cd v : g) a.push_back(json::array({v.real(), v.imag()}));
  return a;
}

double rel(cd a, cd b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

WaveOptions wave_options(const Config& c, const SpectralParams& sp, ContourKind kind) {
  WaveOptions w;
  w.tol = pick(c.tol, 1e-10);
  w.quad.workers = c.workers;
  const int N = static_cast<int>(sp.gamma.size());
  if (c.method == "recursive" && c.delta > 0.0) w.recursive_delta = c.delta / sp.hbar.value();
  if (N >= 2 && (c.delta > 0.0 || c.radius > 0.0 || c.nodes > 0)) {
    ContourSpec s = default_contour(N, sp.hbar, sp.gamma, kind, w.tol);
    if (c.delta > 0.0 && kind == ContourKind::s_ordered) {
      double top_im = -1e300;
      for (const cd g : sp.gamma) top_im = std::max(top_im, g.imag());
      for (int n = 1; n < N; ++n) s.offsets[n - 1] = top_im + (N - n) * c.delta;
    }
    if (c.radius > 0.0) s.radius = c.radius;
    if (c.nodes > 0) s.nodes = c.nodes % 2 == 1 ? c.nodes : c.nodes + 1;
    w.contour = s;
  }
  return w;
}

json contour_json(const WaveOptions& w) {
  if (!w.contour) return "default";
  return {{"offsets", w.contour->offsets}, {"radius", w.contour->radius}, {"nodes", w.contour->nodes}};
}

double max_relative_estimate(const std::vector<WaveSample>& s) {
  double m = 0.0;
  for (const auto& w : s) m = std::max(m, w.err_estimate / std::max(std::abs(w.value), 1e-300));
  return m;
}

// ---- verify ----

Result verify_algebra(const Config& c) {
  const int N = pick(c.n, 3);
  Result r;
  r.report = check_gl_relations(N, HBar(c.hbar), pick(c.trials, 20), c.seed, pick(c.threshold, 1e-10));
  r.params = {{"n", N}, {"hbar", c.hbar}, {"trials", pick(c.trials, 20)}};
  return r;
}

Result verify_yangian(const Config& c) {
  const int N = pick(c.n, 3);
  const HBar h(c.hbar);
  const int trials = pick(c.trials, 20);
  SuiteReport rep;
  rep.suite = "yangian";
  rep.seed = c.seed;
  auto thr = [&](double d) { return pick(c.threshold, d); };
  rep.merge(check_casimir(std::min(N, 4), N, h, trials, derive_seed(c.seed, 1), thr(1e-9)));
  if (N >= 2) {
    rep.merge(check_drinfeld_commutators(N, h, trials, derive_seed(c.seed, 2), thr(1e-9)));
    rep.merge(check_yangian_relations(N, h, trials, derive_seed(c.seed, 3), thr(1e-9)));
    rep.merge(check_qism_relations(N, h, trials, derive_seed(c.seed, 4), thr(1e-9)));
    for (int n = 1; n < N; ++n) {
      SuiteReport rec = reconstruct_generators(n, N, h, default_reconstruction_radius(n, h), std::min(trials, 10),
                                               derive_seed(c.seed, 10 + static_cast<std::uint64_t>(n)), 96, thr(1e-8));
      rec.suite += "_n" + std::to_string(n);
      rep.merge(rec);
    }
  }
  Result r;
  r.report = rep;
  r.params = {{"n", N}, {"hbar", c.hbar}, {"trials", trials}};
  return r;
}

Result verify_whittaker(const Config& c) {
  const int N = pick(c.n, 3);
  const HBar h(c.hbar);
  const int trials = pick(c.trials, 20);
  const double thr = pick(c.threshold, 1e-10);
  SuiteReport rep;
  rep.suite = "whittaker";
  rep.seed = c.seed;
  rep.merge(check_whittaker_eigen(WhittakerKind::w, N, h, trials, derive_seed(c.seed, 1), thr));
  rep.merge(check_whittaker_eigen(WhittakerKind::w_prime, N, h, trials, derive_seed(c.seed, 2), thr));
  rep.merge(check_sutherland_condition(N, h, trials, derive_seed(c.seed, 3), thr));
  Result r;
  r.report = rep;
  r.params = {{"n", N}, {"hbar", c.hbar}, {"trials", trials}};
  return r;
}

Result verify_pairing(const Config& c) {
  const int N = pick(c.n, 2);
  DualityOptions opt;
  opt.threshold = pick(c.threshold, 1e-6);
  opt.tol = pick(c.tol, N == 2 ? 1e-12 : 1e-7);
  opt.quad.workers = c.workers;
  if (!c.gamma.empty()) {
    for (const cd g : gamma_of(c)) {
      if (g.imag() != 0.0) throw ConfigurationError("verify pairing: --gamma must be real");
      opt.top_row.push_back(g.real());
    }
  }
  const int trials = pick(c.trials, N == 2 ? 3 : 1);
  Result r;
  r.report = check_pairing_duality(N, HBar(c.hbar), trials, c.seed, opt);
  r.params = {{"n", N}, {"hbar", c.hbar}, {"trials", trials}, {"tol", opt.tol}};
  return r;
}

Result verify_orbit(const Config& c) {
  const int N = pick(c.n, 4);
  const int trials = pick(c.trials, 20);
  Result r;
  r.report = check_orbit(N, trials, c.seed);
  if (c.threshold > 0.0) {
    for (auto& k : r.report.checks) {
      k.threshold = c.threshold;
      k.pass = k.max_error < c.threshold;
    }
  }
  r.params = {{"n", N}, {"trials", trials}};
  return r;
}

// ---- wave functions ----

Result wave(const Config& c, bool toda) {
  SpectralParams sp{gamma_of(c), HBar(c.hbar)};
  const int N = static_cast<int>(sp.gamma.size());
  const auto xs = points_of(c, N);
  const WaveOptions w = wave_options(c, sp, toda ? ContourKind::s_ordered : ContourKind::real);
  Result r;
  r.samples = toda ? toda_wavefunction(sp, xs, c.method == "recursive" ? TodaMethod::recursive : TodaMethod::direct, w)
                   : sutherland_wavefunction(sp, xs, w);
  r.wave_output = true;
  r.report.suite = toda ? "toda" : "sutherland";
  r.report.seed = c.seed;
  r.report.record("max_relative_err_estimate", max_relative_estimate(r.samples),
                  pick(c.threshold, std::max(1e-6, 1e3 * w.tol)));
  r.params = {{"n", N},           {"hbar", c.hbar},          {"gamma", gamma_json(sp.gamma)}, {"points", xs.size()},
              {"tol", w.tol},     {"contour", contour_json(w)}};
  if (toda) r.params["method"] = c.method;
  return r;
}

// ---- eigencheck ----

Result eigencheck(const Config& c, bool toda) {
  SpectralParams sp{gamma_of(c), HBar(c.hbar)};
  const int N = static_cast<int>(sp.gamma.size());
  const auto xs = points_of(c, N);
  EigenOptions eo;
  eo.fd.h_scale = c.fd_h;
  eo.method = c.method == "recursive" ? TodaMethod::recursive : TodaMethod::direct;
  eo.wave = wave_options(c, sp, toda ? ContourKind::s_ordered : ContourKind::real);
  if (!c.lambda.empty()) {
    if (!toda) throw ConfigurationError("--lambda applies to eigencheck toda only");
    eo.lambdas = parse_complex_list(c.lambda);
  }
  const EigenReport er = toda ? toda_eigencheck(sp, xs, eo) : sutherland_eigencheck(sp, xs, eo);
  Result r;
  r.report.suite = toda ? "eigencheck_toda" : "eigencheck_sutherland";
  r.report.seed = c.seed;
  const double thr = pick(c.threshold, 1e-4);
  json items = json::array();
  for (const auto& it : er.items) {
    r.report.record(it.name, it.residual, thr);
    items.push_back({{"name", it.name}, {"x", it.x}, {"residual", it.residual}});
  }
  if (toda && c.qism) {
    for (const cd lambda : eo.lambdas) {
      for (int n = 1; n < N; ++n) {
        for (const auto& x : xs) {
          const EigenResidual q = toda_qism_identity(sp, x, lambda, n, eo);
          r.report.record(q.name, q.residual, thr);
          items.push_back({{"name", q.name}, {"x", q.x}, {"residual", q.residual}});
        }
      }
    }
  }
  r.params = {{"n", N}, {"hbar", c.hbar}, {"gamma", gamma_json(sp.gamma)}, {"points", xs.size()},
              {"fd_h", c.fd_h}, {"tol", eo.wave.tol}, {"contour", contour_json(eo.wave)}};
  r.extra["residuals"] = items;
  return r;
}

// ---- N = 2 oracles ----

Result oracle(const Config& c, bool toda) {
  if (c.n > 0 && c.n != 2) throw ConfigurationError("oracle n2: --n must be 2");
  SpectralParams sp{gamma_of(c, {0.5, -0.5}), HBar(c.hbar)};
  if (sp.gamma.size() != 2) throw ConfigurationError("oracle n2: --gamma needs two entries");
  const auto xs = points_of(c, 2, toda ? "-2:2:21,0" : "0.1:3:21,0");
  const WaveOptions w = wave_options(c, sp, toda ? ContourKind::s_ordered : ContourKind::real);
  Result r;
  r.samples = toda ? toda_wavefunction(sp, xs, TodaMethod::direct, w) : sutherland_wavefunction(sp, xs, w);
  r.report.suite = toda ? "oracle_n2_toda" : "oracle_n2_sutherland";
  r.report.seed = c.seed;
  double worst = 0.0, bound = 0.0;
  json rows = json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const cd ref = toda ? toda_n2_oracle(sp, xs[i]) : sutherland_n2_oracle(sp, xs[i]);
    const WaveSample& s = r.samples[i];
    const double e = rel(s.value, ref);
    worst = std::max(worst, e);
    const double abs_err = std::abs(s.value - ref);
    if (s.err_estimate > 0.0) bound = std::max(bound, abs_err / s.err_estimate);
    rows.push_back({{"x", xs[i]},
                    {"re", s.value.real()},
                    {"im", s.value.imag()},
                    {"err_estimate", s.err_estimate},
                    {"oracle_re", ref.real()},
                    {"oracle_im", ref.imag()},
                    {"rel_error", e}});
  }
  r.report.record("max_rel_error", worst, pick(c.threshold, 1e-6));
  r.report.add({"true_error_over_estimate", bound, 10.0, bound <= 10.0, "max over points of |value - oracle| / estimate"});
  if (!toda) {
    const std::vector<double> far = {4.0, -4.0};
    const cd phi = sutherland_spherical(sp, {far}, w)[0].value;
    r.report.record("harish_chandra_asymptotic", rel(phi, sutherland_n2_asymptotic(sp, far)), 1e-2);
    r.extra["constant_ratio"] = sutherland_n2_constant_ratio();
    r.extra["constant_ratio_note"] = "oracle constant 4 pi^3 hbar over 4 pi hbar";
  }
  r.extra["samples"] = rows;
  r.params = {{"n", 2}, {"hbar", c.hbar}, {"gamma", gamma_json(sp.gamma)}, {"points", xs.size()},
              {"tol", w.tol}, {"contour", contour_json(w)}};
  return r;
}

// ---- output ----

json report_json(const Config& c, const Result& r, double wall) {
  json j;
  j["schema"] = 1;
  j["command"] = c.command;
  j["suite"] = r.report.suite;
  j["seed"] = r.report.seed;
  j["pass"] = r.report.passed();
  j["wall_time_s"] = wall;
  json checks = json::array();
  for (const auto& k : r.report.checks) {
    json e = {{"name", k.name}, {"max_error", k.max_error}, {"threshold", k.threshold}, {"pass", k.pass}};
    if (!k.note.empty()) e["note"] = k.note;
    checks.push_back(e);
  }
  j["checks"] = checks;
  j["params"] = r.params;
  for (auto it = r.extra.begin(); it != r.extra.end(); ++it) j[it.key()] = it.value();
  if (r.wave_output) {
    json s = json::array();
    for (const auto& w : r.samples) {
      s.push_back({{"x", w.x}, {"re", w.value.real()}, {"im", w.value.imag()}, {"err_estimate", w.err_estimate}});
    }
    j["samples"] = s;
  }
  return j;
}

std::string csv(const std::vector<WaveSample>& samples) {
  std::ostringstream o;
  const std::size_t N = samples.empty() ? 0 : samples.front().x.size();
  for (std::size_t k = 1; k <= N; ++k) o << "x_" << k << ",";
  o << "re,im,err_estimate\n";
  for (const auto& s : samples) {
    for (const double x : s.x) o << format_double(x) << ",";
    o << format_double(s.value.real()) << "," << format_double(s.value.imag()) << "," << format_double(s.err_estimate)
      << "\n";
  }
  return o.str();
}

void write_to(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigurationError("cannot open " + path + " for writing");
  f << text;
}

bool is_usage_error(const Error& e) {
  return dynamic_cast<const ConfigurationError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
         dynamic_cast<const DegenerateInputError*>(&e) || dynamic_cast<const DegenerateParameterError*>(&e);
}

}  // namespace

std::vector<cd> parse_complex_list(const std::string& text) {
  std::vector<cd> out;
  for (const auto& t : split(text, ',')) out.push_back(parse_complex(t));
  return out;
}

std::vector<std::vector<double>> parse_grid(const std::string& text, int levels) {
  const auto parts = split(text, ',');
  if (static_cast<int>(parts.size()) != levels) {
    throw ConfigurationError("--x needs one entry per coordinate (" + std::to_string(levels) + ")");
  }
  std::vector<std::vector<double>> axes;
  for (const auto& p : parts) {
    const auto f = split(p, ':');
    if (f.size() == 1) {
      axes.push_back({parse_double(f[0])});
    } else if (f.size() == 3) {
      const double a = parse_double(f[0]), b = parse_double(f[1]);
      const double cnt = parse_double(f[2]);
      if (cnt < 1 || cnt != std::floor(cnt) || cnt > 1e7) throw ConfigurationError("grid count must be a positive integer");
      const int m = static_cast<int>(cnt);
      std::vector<double> v;
      for (int k = 0; k < m; ++k) v.push_back(m == 1 ? a : a + (b - a) * k / (m - 1));
      axes.push_back(v);
    } else {
      throw ConfigurationError("grid entry '" + p + "' is neither a value nor start:stop:count");
    }
  }
  std::vector<std::vector<double>> out(1);
  for (const auto& ax : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out) {
      for (const double v : ax) {
        auto q = prefix;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<double>> parse_points(const std::string& text, int levels) {
  std::vector<std::vector<double>> out;
  for (const auto& p : split(text, ';')) {
    if (p.empty()) continue;
    std::vector<double> x;
    for (const auto& t : split(p, ',')) x.push_back(parse_double(t));
    if (static_cast<int>(x.size()) != levels) throw ConfigurationError("point '" + p + "' has the wrong dimension");
    out.push_back(std::move(x));
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Gelfand-Zetlin representations: verification suites and wave functions", "gzrep"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--n", c.n, "Rank N")->check(CLI::Range(1, 8));
  app.add_option("--hbar", c.hbar, "Deformation parameter")->check(CLI::PositiveNumber);
  app.add_option("--gamma", c.gamma, "Top row, comma separated; complex entries as a+bi");
  app.add_option("--x", c.x, "Grid: per coordinate a value or start:stop:count");
  app.add_option("--points", c.points, "Explicit points x1,x2;x1,x2");
  app.add_option("--seed", c.seed, "Seed for random test data");
  app.add_option("--trials", c.trials, "Random trials per check")->check(CLI::Range(1, 100000));
  app.add_option("--tol", c.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--threshold", c.threshold, "Pass threshold override")->check(CLI::PositiveNumber);
  app.add_option("--delta", c.delta, "Contour level spacing")->check(CLI::PositiveNumber);
  app.add_option("--radius", c.radius, "Contour truncation R")->check(CLI::PositiveNumber);
  app.add_option("--nodes", c.nodes, "Nodes per axis M")->check(CLI::Range(17, 1 << 20));
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.out, "Output file (default stdout)");
  app.add_option("--report", c.report, "JSON report file when the output is CSV");
  app.add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--method", c.method, "Toda method")->check(CLI::IsMember({"direct", "recursive"}));
  app.add_option("--lambda", c.lambda, "Spectral parameters for the A_N(lambda) check");
  app.add_option("--fd-h", c.fd_h, "Finite-difference step scale")->check(CLI::PositiveNumber);
  app.add_flag("--qism", c.qism, "Also check A_n(lambda) psi for n < N (eigencheck toda)");

  using Runner = std::function<Result(const Config&)>;
  std::vector<std::pair<CLI::App*, std::pair<std::string, Runner>>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Runner fn) {
    CLI::App* s = parent->add_subcommand(name, help);
    std::string full = parent == &app ? name : parent->get_name() + " " + name;
    if (parent->get_parent() && parent->get_parent() != &app) full = parent->get_parent()->get_name() + " " + full;
    leaves.push_back({s, {full, std::move(fn)}});
  };
  CLI::App* verify = app.add_subcommand("verify", "Pointwise verification suites");
  verify->require_subcommand(1);
  leaf(verify, "algebra", "gl(N) relations", verify_algebra);
  leaf(verify, "yangian", "Casimir, Drinfeld, Yangian and QISM relations, contour reconstruction", verify_yangian);
  leaf(verify, "whittaker", "Whittaker eigen-equations and the Sutherland condition", verify_whittaker);
  leaf(verify, "pairing", "Skew-symmetry of the generators under the pairing", verify_pairing);
  leaf(verify, "orbit", "Classical orbit coordinates", verify_orbit);
  leaf(&app, "toda", "Toda wave function on a grid", [](const Config& k) { return wave(k, true); });
  leaf(&app, "sutherland", "Sutherland wave function on a grid", [](const Config& k) { return wave(k, false); });
  CLI::App* eig = app.add_subcommand("eigencheck", "Finite-difference eigen-equation residuals");
  eig->require_subcommand(1);
  leaf(eig, "toda", "Toda h1, h2 and A_N(lambda)", [](const Config& k) { return eigencheck(k, true); });
  leaf(eig, "sutherland", "Sutherland h1, h2", [](const Config& k) { return eigencheck(k, false); });
  CLI::App* orc = app.add_subcommand("oracle", "Closed-form comparisons");
  orc->require_subcommand(1);
  CLI::App* n2 = orc->add_subcommand("n2", "N = 2 closed forms");
  n2->require_subcommand(1);
  leaf(n2, "toda", "Against the Macdonald function form", [](const Config& k) { return oracle(k, true); });
  leaf(n2, "sutherland", "Against the Legendre function form", [](const Config& k) { return oracle(k, false); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "gzrep: " << e.what() << "\n";
    return kUsageError;
  }

  const Runner* fn = nullptr;
  for (const auto& [sub, named] : leaves) {
    if (sub->parsed()) {
      c.command = named.first;
      fn = &named.second;
    }
  }
  if (!fn) {
    err << "gzrep: no command given\n";
    return kUsageError;
  }

  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r = (*fn)(c);
  } catch (const Error& e) {
    if (is_usage_error(e)) {
      err << "gzrep: " << e.what() << "\n";
      return kUsageError;
    }
    r = Result{};
    r.report.suite = c.command;
    r.report.seed = c.seed;
    r.report.add({"evaluation", std::nan(""), 0.0, false, e.what()});
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  try {
    const std::string format = !c.format.empty() ? c.format : (r.wave_output ? "csv" : "json");
    const std::string report = report_json(c, r, wall).dump(2) + "\n";
    if (format == "csv") {
      if (!r.wave_output) throw ConfigurationError("--format csv applies to toda and sutherland only");
      write_to(c.out, csv(r.samples), out);
      if (!c.report.empty()) {
        write_to(c.report, report, out);
      } else if (!c.out.empty()) {
        write_to(c.out + ".json", report, out);
      } else {
        err << report;
      }
    } else {
      write_to(c.out, report, out);
    }
  } catch (const Error& e) {
    err << "gzrep: " << e.what() << "\n";
    return kUsageError;
  }
  return r.report.passed() ? kPass : kAccuracyFailure;
}

}  // namespace gzrep::cli
