#include <gtest/gtest.h>

#include <cmath>

#include "gzrep/errors.hpp"
#include "gzrep/orbit.hpp"

using namespace gzrep;

namespace {
OrbitPoint small_point() {
  OrbitPoint p;
  p.gamma = {{1.0}, {2.0, 0.0}};
  p.Q = {{1.0}};
  return p;
}
}  // namespace

TEST(Orbit, CornerMatrixExample) {
  const Eigen::MatrixXd f = corner_matrix(2, small_point());
  EXPECT_NEAR(f(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(f(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(f(1, 0), -0.5, 1e-15);
  EXPECT_NEAR(f(1, 1), 0.5, 1e-15);
  EXPECT_EQ(corner_matrix(1, small_point())(0, 0), 1.0);
}

TEST(Orbit, ReconstructSmallExample) {
  double first = 1.0;
  const Eigen::MatrixXd u = reconstruct_u(small_point(), &first);
  EXPECT_LT(first, 1e-15);
  EXPECT_NEAR(u(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(u(1, 1), 1.0, 1e-14);
  EXPECT_NEAR(u(0, 1), 1.0, 1e-14);
  EXPECT_NEAR(u(1, 0), 1.0, 1e-14);  // Q_11
  const auto roots = minor_roots(u, 2);
  EXPECT_NEAR(roots[0], 0.0, 1e-14);
  EXPECT_NEAR(roots[1], 2.0, 1e-14);
}

TEST(Orbit, LowerEntryIsQ) {
  OrbitPoint p = small_point();
  p.Q[0][0] = -1.7;
  EXPECT_NEAR(reconstruct_u(p)(1, 0), -1.7, 1e-14);
  EXPECT_NEAR(classical_generators(p).lower[0], -1.7, 1e-15);
  EXPECT_NEAR(classical_generators(p).upper[0], -1.0 / 1.7, 1e-15);
}

TEST(Orbit, DegenerateInputs) {
  OrbitPoint p = small_point();
  p.Q[0][0] = 0.0;
  EXPECT_THROW(reconstruct_u(p), DegenerateInputError);
  p = small_point();
  p.gamma[1] = {1.0, 0.0};  // touches gamma_11
  EXPECT_THROW(corner_matrix(2, p), DegenerateInputError);
  p = small_point();
  p.gamma[1] = {0.5, 0.5};
  EXPECT_THROW(classical_generators(p), DegenerateInputError);
  p = small_point();
  p.Q.clear();
  EXPECT_THROW(reconstruct_u(p), ConfigurationError);
}

TEST(Orbit, RoundTripUpToFive) {
  Rng rng(11);
  for (int N = 2; N <= 5; ++N) {
    for (int t = 0; t < 10; ++t) {
      const OrbitPoint p = random_orbit_point(N, rng);
      double first = 0.0, spread = 0.0;
      const Eigen::MatrixXd u = reconstruct_u(p, &first);
      EXPECT_LT(first, 1e-10);
      const OrbitPoint back = recover_point(u, &spread);
      const OrbitPoint ref = canonical_order(p);
      EXPECT_LT(spread, 1e-10);
      for (int n = 1; n <= N; ++n) {
        for (int j = 1; j <= n; ++j) {
          EXPECT_NEAR(back.g(n, j), ref.g(n, j), 1e-10);
          if (n < N) EXPECT_LT(std::abs(back.q(n, j) / ref.q(n, j) - 1.0), 1e-10);
          EXPECT_LT(std::abs(minor_a(u, n, ref.g(n, j))), 1e-9);
        }
      }
    }
  }
}

TEST(Orbit, GeneratorFormulasMatchMatrix) {
  Rng rng(5);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int N = 2 + t % 4;
    const OrbitPoint p = random_orbit_point(N, rng);
    const Eigen::MatrixXd u = reconstruct_u(p);
    const ClassicalGenerators g = classical_generators(p);
    for (int n = 1; n <= N; ++n) worst = std::max(worst, std::abs(g.diag[n - 1] - u(n - 1, n - 1)));
    for (int n = 1; n < N; ++n) {
      worst = std::max(worst, std::abs(g.upper[n - 1] - u(n - 1, n)));
      worst = std::max(worst, std::abs(g.lower[n - 1] - u(n, n - 1)));
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Orbit, MinorClosedForms) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const OrbitPoint p = random_orbit_point(4, rng);
    const Eigen::MatrixXd u = reconstruct_u(p);
    const double lam = rng.uniform(-3.0, 3.0);
    for (int n = 1; n < 4; ++n) {
      EXPECT_LT(relative_error(minor_b(u, n, lam), b_closed_form(p, n, lam), 1.0), 1e-10);
      EXPECT_LT(relative_error(minor_c(u, n, lam), c_closed_form(p, n, lam), 1.0), 1e-10);
    }
  }
}

TEST(Orbit, PoissonRelations) {
  Rng rng(3);
  for (int N = 2; N <= 4; ++N) {
    for (int t = 0; t < 20; ++t) {
      const PoissonReport r = poisson_check(random_orbit_point(N, rng));
      EXPECT_LT(r.max_error, 1e-5) << "N=" << N;
      // The opposite orientation of the bracket gives the relations with reversed sign.
      EXPECT_GT(r.opposite_sign_error, 1e-2);
    }
  }
}

TEST(Orbit, GeneralPointsAtLowRank) {
  Rng rng(17);
  const OrbitSampling general{.interlacing = false};
  for (int N = 2; N <= 3; ++N) {
    for (int t = 0; t < 20; ++t) {
      const OrbitPoint p = random_orbit_point(N, rng, general);
      double spread = 0.0;
      const OrbitPoint back = recover_point(reconstruct_u(p), &spread);
      const OrbitPoint ref = canonical_order(p);
      EXPECT_LT(spread, 1e-10);
      for (int n = 1; n <= N; ++n) {
        for (int j = 1; j <= n; ++j) EXPECT_NEAR(back.g(n, j), ref.g(n, j), 1e-10);
      }
      EXPECT_LT(poisson_check(p).max_error, 1e-5);
    }
  }
}

TEST(Orbit, SamplerProperties) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const OrbitPoint p = canonical_order(random_orbit_point(5, rng));
    for (int n = 1; n < 5; ++n) {
      for (int j = 1; j <= n; ++j) {
        EXPECT_GT(p.g(n, j), p.g(n + 1, j));
        EXPECT_LT(p.g(n, j), p.g(n + 1, j + 1));
      }
    }
    EXPECT_NO_THROW(check_off_delta(p, 0.1));
  }
}

TEST(Orbit, ContourFormulas) {
  Rng rng(21);
  for (int N = 2; N <= 5; ++N) {
    const OrbitPoint p = random_orbit_point(N, rng);
    const Eigen::MatrixXd u = reconstruct_u(p);
    const ClassicalGenerators g = contour_generators(u, 7.0);
    for (int n = 1; n <= N; ++n) EXPECT_NEAR(g.diag[n - 1], u(n - 1, n - 1), 1e-8);
    for (int n = 1; n < N; ++n) {
      EXPECT_NEAR(g.upper[n - 1], u(n - 1, n), 1e-8);
      EXPECT_NEAR(g.lower[n - 1], u(n, n - 1), 1e-8);
    }
  }
}

TEST(Orbit, SuitePasses) {
  for (int N = 2; N <= 5; ++N) {
    const SuiteReport r = check_orbit(N, 10, 99);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " N=" << N << " err=" << c.max_error;
  }
}
