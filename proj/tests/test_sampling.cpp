#include <doctest.h>

#include <cmath>

#include "oamw/sampling.hpp"

using namespace oamw;

TEST_CASE("random pure states are normalized") {
  Rng rng(1);
  for (int dim = 1; dim <= 8; ++dim) {
    for (int i = 0; i < 50; ++i) CHECK(random_pure_state(rng, dim).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(random_pure_state(rng, 0), std::invalid_argument);
  CHECK_THROWS_AS(random_diagonal_triple(rng, 0), std::invalid_argument);
}

TEST_CASE("samplers are reproducible by seed") {
  Rng a(77), b(77);
  for (int i = 0; i < 100; ++i) {
    const auto ta = random_mixed_qubit_triple(a);
    const auto tb = random_mixed_qubit_triple(b);
    CHECK(ta.as_array() == tb.as_array());
  }
  const auto c1 = mixed_qubit_exit_check(5, 2000);
  const auto c2 = mixed_qubit_exit_check(5, 2000);
  CHECK(c1.samples == 2000);
  CHECK(c1.outside == c2.outside);
}

TEST_CASE("one-outcome distributions give unit overlaps") {
  Rng rng(2);
  const auto t = random_diagonal_triple(rng, 1);
  CHECK(t.r_ab == doctest::Approx(1.0));
  CHECK(t.r_ac == doctest::Approx(1.0));
}

TEST_CASE("pure-qubit overlaps obey the Bloch relation") {
  // |<a|b>|^2 = (1 + n_a . n_b) / 2, so the three Bloch vectors' Gram matrix is PSD.
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_qubit_triple(rng);
    Eigen::Matrix3d g;
    const double x = 2 * t.r_ab - 1, y = 2 * t.r_bc - 1, z = 2 * t.r_ac - 1;
    g << 1, x, z, x, 1, y, z, y, 1;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g);
    CHECK(es.eigenvalues().minCoeff() > -1e-9);
  }
}

TEST_CASE("mixed-qubit overlaps stay within the unit cube and Q") {
  Rng rng(4);
  for (int i = 0; i < 10000; ++i) {
    const auto t = random_mixed_qubit_triple(rng);
    CHECK_NOTHROW(t.validate());
    CHECK(in_quantum(t));
  }
}
