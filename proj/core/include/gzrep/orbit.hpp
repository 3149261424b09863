#pragma once

// Classical Gelfand-Zetlin coordinates (gamma, Q) on the open part of a
// coadjoint orbit of GL(N, R): the matrix u = g^{-1} diag(gamma_N) g, its
// corner minors, and the classical generator formulas.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gzrep/report.hpp"
#include "gzrep/sampling.hpp"

namespace gzrep {

/// gamma[n-1] holds row n (length n, n = 1..N); Q[n-1] holds Q_{n.} (n = 1..N-1).
struct OrbitPoint {
  std::vector<std::vector<double>> gamma;
  std::vector<std::vector<double>> Q;

  int levels() const { return static_cast<int>(gamma.size()); }
  double g(int n, int j) const { return gamma[n - 1][j - 1]; }
  double q(int n, int j) const { return Q[n - 1][j - 1]; }
};

/// Throws DegenerateInputError on coincident same-level or consecutive-level entries, or Q = 0.
void check_off_delta(const OrbitPoint& p, double tol = 1e-12);

/// The n x n representative f_n.
Eigen::MatrixXd corner_matrix(int n, const OrbitPoint& p);

/// u = g^{-1} diag(gamma_N) g with g = g_N ... g_2. When `first_condition` is given it receives
/// the largest off-diagonal entry found in the upper-left (n-1) blocks of the intermediate matrices.
Eigen::MatrixXd reconstruct_u(const OrbitPoint& p, double* first_condition = nullptr);

/// Principal minor a_n, and the minors b_n, c_n of lambda - u with columns (rows) n, n+1 swapped.
std::complex<double> minor_a(const Eigen::MatrixXd& u, int n, std::complex<double> lambda);
std::complex<double> minor_b(const Eigen::MatrixXd& u, int n, std::complex<double> lambda);
std::complex<double> minor_c(const Eigen::MatrixXd& u, int n, std::complex<double> lambda);

/// Closed forms of b_n and c_n in the coordinates.
double b_closed_form(const OrbitPoint& p, int n, double lambda);
double c_closed_form(const OrbitPoint& p, int n, double lambda);

/// Sorted real roots of a_n; DegenerateInputError if they are complex or repeated.
std::vector<double> minor_roots(const Eigen::MatrixXd& u, int n);

/// Coordinates recovered from u: gamma from the minors' roots (sorted), Q from a_{n+1}/b_n.
/// `formula_spread` receives the largest relative gap to the second formula -c_n/a_{n-1}.
OrbitPoint recover_point(const Eigen::MatrixXd& u, double* formula_spread = nullptr);

/// Sorts every row of gamma ascending, permuting Q alongside.
OrbitPoint canonical_order(const OrbitPoint& p);

struct ClassicalGenerators {
  std::vector<double> diag;   // u_nn, n = 1..N
  std::vector<double> upper;  // u_{n,n+1}, n = 1..N-1
  std::vector<double> lower;  // u_{n+1,n}
};

ClassicalGenerators classical_generators(const OrbitPoint& p);

/// The same entries from contour integrals of a_n/a_{n-1}, b_n/a_n, c_n/a_n on |lambda| = radius.
ClassicalGenerators contour_generators(const Eigen::MatrixXd& u, double radius, int nodes = 256);

struct PoissonReport {
  double max_error = 0.0;           // {u_ab, u_cd} = delta_cb u_ad - delta_ad u_cb
  double opposite_sign_error = 0.0;  // same relation under {gamma_nj, Q_nj} = +Q_nj
  double scale = 1.0;
};

/// Brackets of all pairs of u entries by central differences in (gamma, log Q), with
/// {Q_nj, gamma_nj} = Q_nj.
PoissonReport poisson_check(const OrbitPoint& p, double h = 1e-6);

struct OrbitSampling {
  /// Interlacing rows (gamma_{n+1,j} < gamma_{nj} < gamma_{n+1,j+1} after sorting), shuffled within
  /// each row. Without it the map to u can lose up to 1e-7 for N = 5.
  bool interlacing = true;
  double min_separation = 0.2;
};

/// Random point off the degenerate set: entries in [-3, 3] at distance >= min_separation within and
/// between consecutive rows, |Q| in [0.5, 2] with random sign.
OrbitPoint random_orbit_point(int levels, Rng& rng, const OrbitSampling& opt = {});

/// Round trip, generator formulas, minors' closed forms, Poisson relations and contour formulas.
SuiteReport check_orbit(int levels, int trials, std::uint64_t seed);

}  // namespace gzrep
