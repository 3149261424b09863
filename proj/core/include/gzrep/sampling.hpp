#pragma once

// Seeded randomness and the polynomial test-function family used by every
// pointwise verification suite.

#include <cstdint>
#include <random>
#include <vector>

#include "gzrep/gz_core.hpp"

namespace gzrep {

/// std::mt19937_64 with a hand-written double mapping, so draws are identical
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }
  cd complex_in_box(double re_max, double im_max) {
    const double re = uniform(-re_max, re_max);
    return {re, uniform(-im_max, im_max)};
  }

 private:
  std::mt19937_64 engine_;
};

struct PointSampling {
  double re_max = 3.0;
  double im_max = 1.0;
  double min_separation = 0.1;  // on real parts, same level
  bool real_top_row = false;
};

/// Random pattern with same-level real parts separated by min_separation on every row.
GzPattern random_pattern(int levels, Rng& rng, const PointSampling& opt = {});

/// Random free rows below a fixed top row.
GzPattern random_pattern_below(std::span<const cd> top, Rng& rng, const PointSampling& opt = {});

/// Sparse random polynomial in the free entries, total degree <= max_degree.
GzFunction random_polynomial(int levels, std::vector<cd> top_row, Rng& rng, int max_degree = 4, int terms = 6);

/// |a - b| / max(|a|, |b|, scale, tiny).
double relative_error(cd a, cd b, double scale = 0.0);

/// Seed derived from a base seed and a label so suites draw independent streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

}  // namespace gzrep
