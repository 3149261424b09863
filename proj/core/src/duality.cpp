#include "gzrep/duality.hpp"

#include <algorithm>
#include <string>

#include "gzrep/errors.hpp"
#include "gzrep/sampling.hpp"

namespace gzrep {

std::vector<GeneratorIndex> duality_generators(int levels) {
  if (levels == 2) return {{1, 1}, {1, 2}, {2, 1}};
  std::vector<GeneratorIndex> out;
  for (int n = 1; n < levels; ++n) {
    out.push_back({n, n + 1});
    out.push_back({n + 1, n});
    out.push_back({n, n});
  }
  return out;
}

SuiteReport check_pairing_duality(int levels, HBar hbar, int trials, std::uint64_t seed, const DualityOptions& opt) {
  if (levels < 2 || levels > 3) throw ConfigurationError("check_pairing_duality: N must be 2 or 3");
  std::vector<cd> top;
  if (opt.top_row.empty()) {
    for (int k = 0; k < levels; ++k) top.emplace_back(1.0 - 2.0 * k / (levels - 1) + 0.1 * k * k);
  } else {
    if (static_cast<int>(opt.top_row.size()) != levels) throw ConfigurationError("check_pairing_duality: top row length");
    for (const double g : opt.top_row) top.emplace_back(g);
  }
  SuiteReport rep;
  rep.suite = "pairing";
  rep.seed = seed;
  const GzFunction psi = whittaker_vector(WhittakerKind::w, levels, hbar, top).evaluator;
  const ContourSpec spec = default_contour(levels, hbar, top, ContourKind::real, opt.tol);
  const std::vector<GeneratorIndex> gens = opt.generators.empty() ? duality_generators(levels) : opt.generators;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const GzFunction phi = random_polynomial(levels, top, rng, 3, 4);
    for (const GeneratorIndex idx : gens) {
      const GzOperator X = generator(idx, levels, hbar);
      const GridResult a = pairing(phi, X.apply(psi), levels, hbar, spec, opt.quad);
      const GridResult b = pairing(X.apply(phi), psi, levels, hbar, spec, opt.quad);
      const double scale = std::max(std::abs(a.value), std::abs(b.value));
      const double err = scale > 0.0 ? std::abs(a.value + b.value) / scale : 0.0;
      rep.record("E" + std::to_string(idx.j) + std::to_string(idx.k), err, opt.threshold);
    }
  }
  return rep;
}

}  // namespace gzrep
