#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "oamw/witnesses.hpp"

namespace oamw {

/// Every sampler draws from an explicit stream so shards are reproducible by seed.
using Rng = std::mt19937_64;

/// Haar-random pure state in C^dim.
Eigen::VectorXcd random_pure_state(Rng& rng, int dim);

/// |<psi_i|psi_j>|^2 for three Haar-random pure states in C^dim.
OverlapTriple random_pure_triple(Rng& rng, int dim);

/// Three Haar-random pure qubits.
OverlapTriple random_qubit_triple(Rng& rng);

/// sum_k p_k q_k for three random distributions over `outcomes` outcomes.
OverlapTriple random_diagonal_triple(Rng& rng, int outcomes);

/// tr(rho_i rho_j) for three qubit density operators with Bloch vectors uniform in the ball.
OverlapTriple random_mixed_qubit_triple(Rng& rng);

struct ContainmentCount {
  long samples = 0;
  long outside = 0;
};

/// Empirical cross-check: how many random mixed-qubit triples fall outside the pure-qubit region.
ContainmentCount mixed_qubit_exit_check(std::uint64_t seed, long samples);

}  // namespace oamw
