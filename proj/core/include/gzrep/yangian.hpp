#pragma once

#include <cstdint>
#include <vector>

#include "gzrep/gz_core.hpp"
#include "gzrep/report.hpp"

namespace gzrep {

/// sum_k lambda^k Op_k.
class OperatorPolynomial {
 public:
  OperatorPolynomial(int levels, HBar hbar, std::vector<GzOperator> coefficients);

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const GzOperator& coefficient(int k) const { return coefficients_.at(static_cast<size_t>(k)); }
  GzOperator at(cd lambda) const;

 private:
  int levels_;
  HBar hbar_;
  std::vector<GzOperator> coefficients_;
};

/// Quantum determinant of the gl(n) block: signed permutation sum of ordered
/// products [(lambda - i hbar rho_k) delta_{p(k),k} - i hbar E_{p(k),k}], k = 1..n.
OperatorPolynomial casimir_poly(int n, int levels, HBar hbar, int max_n = 5);

struct DrinfeldTriple {
  OperatorPolynomial A;
  OperatorPolynomial B;
  OperatorPolynomial C;
};

/// Interpolation-form images A_n, B_n, C_n in the GZ representation (1 <= n <= N-1).
DrinfeldTriple drinfeld_triple(int n, int levels, HBar hbar);

/// A_n(lambda) as multiplication by prod_j (lambda - gamma_nj), valid for 1 <= n <= N.
OperatorPolynomial product_polynomial(int n, int levels, HBar hbar);

/// QISM operators: A_n as above, B_n = i^{1+n} sum_j L_j T^-_j, C_n = i^{1-n} sum_j L_j T^+_j.
DrinfeldTriple qism_triple(int n, int levels, HBar hbar);

struct ConjugationConstants {
  cd b_constant;      // s_n^{-1} B_n s_n = b_constant * B^{qism}_n
  cd c_constant;      // s_{n-1}^{-1} C_n s_{n-1} = c_constant * C^{qism}_n
  double b_spread;    // max relative deviation of the pointwise ratio
  double c_spread;
};

/// Pointwise ratio of the conjugated interpolation operators to the QISM ones.
ConjugationConstants qism_conjugation_constants(int n, int levels, HBar hbar, int trials, std::uint64_t seed);

/// A_n(lambda) f = prod_j (lambda - gamma_nj) f for n = 1..min(n_max, N).
SuiteReport check_casimir(int n_max, int levels, HBar hbar, int trials, std::uint64_t seed, double threshold = 1e-9);

/// B_n = [A_n, E_{n,n+1}] and C_n = [E_{n+1,n}, A_n] with A_n from the permutation sum.
SuiteReport check_drinfeld_commutators(int levels, HBar hbar, int trials, std::uint64_t seed,
                                       double threshold = 1e-10);

/// The listed Drinfeld relations at random (lambda, mu).
SuiteReport check_yangian_relations(int levels, HBar hbar, int trials, std::uint64_t seed, double threshold = 1e-9);

/// Commutation relations of the QISM operators plus the conjugation identities.
SuiteReport check_qism_relations(int levels, HBar hbar, int trials, std::uint64_t seed, double threshold = 1e-9);

/// Circle integrals over |lambda| = radius recovering E_{n,n+1}, E_{n+1,n}, E_{nn}.
SuiteReport reconstruct_generators(int n, int levels, HBar hbar, double radius, int trials, std::uint64_t seed,
                                   int angular_nodes = 96, double threshold = 1e-8);

/// Radius that safely encloses the poles for patterns drawn by random_pattern.
double default_reconstruction_radius(int n, HBar hbar);

}  // namespace gzrep
