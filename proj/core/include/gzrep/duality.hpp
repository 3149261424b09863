#pragma once

// Skew-symmetry of the generators under the pairing, <phi, X psi> = -<X phi, psi>,
// with psi the Whittaker vector and phi a random polynomial.

#include <cstdint>
#include <vector>

#include "gzrep/gl_rep.hpp"
#include "gzrep/quad.hpp"
#include "gzrep/report.hpp"

namespace gzrep {

struct DualityOptions {
  std::vector<double> top_row;  // real, distinct; empty: evenly spaced in [-1, 1]
  double tol = 1e-12;           // contour sizing
  double threshold = 1e-6;
  std::vector<GeneratorIndex> generators;  // empty: duality_generators(N)
  QuadOptions quad;
};

/// Generators tested: E11, E12, E21 for N = 2, the simple ones E_{n,n+1}, E_{n+1,n}, E_nn otherwise.
std::vector<GeneratorIndex> duality_generators(int levels);

SuiteReport check_pairing_duality(int levels, HBar hbar, int trials, std::uint64_t seed, const DualityOptions& opt = {});

}  // namespace gzrep
