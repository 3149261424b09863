#include "gzrep/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace gzrep {
namespace {

void fill_row(std::span<cd> row, Rng& rng, const PointSampling& opt, bool real) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    for (auto& v : row) v = real ? cd(rng.uniform(-opt.re_max, opt.re_max), 0.0) : rng.complex_in_box(opt.re_max, opt.im_max);
    bool ok = true;
    for (std::size_t a = 0; a < row.size() && ok; ++a) {
      for (std::size_t b = a + 1; b < row.size() && ok; ++b) {
        ok = std::abs(row[a].real() - row[b].real()) >= opt.min_separation;
      }
    }
    if (ok) return;
  }
  throw ConfigurationError("random_pattern: could not satisfy separation");
}

struct Monomial {
  cd coeff;
  std::vector<std::pair<int, int>> powers;  // (flat index, exponent)
};

}  // namespace

GzPattern random_pattern(int levels, Rng& rng, const PointSampling& opt) {
  GzPattern p(levels);
  for (int n = 1; n <= levels; ++n) fill_row(p.row(n), rng, opt, n == levels && opt.real_top_row);
  return p;
}

GzPattern random_pattern_below(std::span<const cd> top, Rng& rng, const PointSampling& opt) {
  const int levels = static_cast<int>(top.size());
  GzPattern p(levels);
  p.set_top_row(top);
  for (int n = 1; n < levels; ++n) fill_row(p.row(n), rng, opt, false);
  return p;
}

GzFunction random_polynomial(int levels, std::vector<cd> top_row, Rng& rng, int max_degree, int terms) {
  const int free = levels * (levels - 1) / 2;
  auto monos = std::make_shared<std::vector<Monomial>>();
  monos->push_back({rng.complex_in_box(1.0, 1.0), {}});
  for (int t = 0; t < terms && free > 0; ++t) {
    Monomial m{rng.complex_in_box(1.0, 1.0), {}};
    const int degree = rng.uniform_int(1, max_degree);
    std::vector<int> exps(static_cast<size_t>(free), 0);
    for (int d = 0; d < degree; ++d) ++exps[static_cast<size_t>(rng.uniform_int(0, free - 1))];
    for (int k = 0; k < free; ++k) {
      if (exps[k] > 0) m.powers.emplace_back(k, exps[k]);
    }
    monos->push_back(std::move(m));
  }
  return GzFunction(levels, std::move(top_row), [monos](const GzPattern& p) {
    cd sum = 0.0;
    for (const auto& m : *monos) {
      cd v = m.coeff;
      for (const auto& [k, e] : m.powers) {
        const cd x = p.data()[k];
        for (int r = 0; r < e; ++r) v *= x;
      }
      sum += v;
    }
    return sum;
  });
}

double relative_error(cd a, cd b, double scale) {
  const double denom = std::max({std::abs(a), std::abs(b), scale, 1e-300});
  return std::abs(a - b) / denom;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  // splitmix64 finalizer
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace gzrep
