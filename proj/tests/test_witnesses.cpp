#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oamw/overlap.hpp"
#include "oamw/sampling.hpp"
#include "oamw/search.hpp"
#include "oamw/witnesses.hpp"

using namespace oamw;

namespace {

// Dykstra alternating projections onto the three facets and the box; converges to the
// Euclidean projection onto C intersected with the cube.
double classical_distance_oracle(const OverlapTriple& t) {
  const Eigen::Vector3d p0(t.r_ab, t.r_bc, t.r_ac);
  const Eigen::Vector3d normals[3] = {{1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};
  Eigen::Vector3d x = p0;
  Eigen::Vector3d incr[4] = {Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(),
                             Eigen::Vector3d::Zero()};
  for (int it = 0; it < 20000; ++it) {
    for (int k = 0; k < 4; ++k) {
      const Eigen::Vector3d y = x + incr[k];
      Eigen::Vector3d z = y;
      if (k < 3) {
        const double excess = normals[k].dot(y) - 1.0;
        if (excess > 0.0) z = y - excess / 3.0 * normals[k];
      } else {
        z = y.cwiseMax(0.0).cwiseMin(1.0);
      }
      incr[k] = y - z;
      x = z;
    }
  }
  return (x - p0).norm();
}

// Qubit overlaps from Bloch geometry: a = z, b at polar angle t1, c at polar angle t3 with
// azimuth phi. The region's surface is the coplanar family phi in {0, pi}.
OverlapTriple bloch_triple(double t1, double t3, double phi) {
  const Eigen::Vector3d a(0, 0, 1), b(std::sin(t1), 0, std::cos(t1)),
      c(std::sin(t3) * std::cos(phi), std::sin(t3) * std::sin(phi), std::cos(t3));
  return {(1 + a.dot(b)) / 2, (1 + b.dot(c)) / 2, (1 + a.dot(c)) / 2};
}

double qubit_distance_oracle(const OverlapTriple& t) {
  constexpr int kSteps = 1200;
  double best = 1e9;
  for (int i = 0; i <= kSteps; ++i) {
    for (int j = 0; j <= kSteps; ++j) {
      const double t1 = kPi * i / kSteps, t3 = kPi * j / kSteps;
      for (double phi : {0.0, kPi}) {
        const auto q = bloch_triple(t1, t3, phi);
        best = std::min(best, std::hypot(q.r_ab - t.r_ab, q.r_bc - t.r_bc, q.r_ac - t.r_ac));
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("triple validation") {
  CHECK_THROWS_AS((OverlapTriple{1.2, 0.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((OverlapTriple{0.2, -0.1, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((OverlapTriple{0.2, NAN, 0.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((OverlapTriple{0.0, 1.0, 0.5}.validate()));
}

TEST_CASE("in_classical examples") {
  CHECK(in_classical({1, 1, 1}));
  CHECK(in_classical({0, 0, 0}));
  CHECK_FALSE(in_classical({0.7673, 0.7673, 0.3117}));
}

TEST_CASE("in_quantum examples") {
  CHECK_FALSE(in_quantum({1, 1, 0}));
  CHECK(in_quantum({1, 1, 1}));
  CHECK(in_quantum({0.05, 0.06, 0.11}));
}

TEST_CASE("in_qubit examples") {
  CHECK_FALSE(in_qubit({0.05, 0.06, 0.11}));
  CHECK(quantum_bounds(0.05, 0.06).first == doctest::Approx(std::pow(std::sqrt(0.003) - std::sqrt(0.893), 2)));
  CHECK(in_qubit({1, 1, 1}));
  // |0>, (|0> + sqrt3 |1>)/2, |0>
  const Eigen::Vector2cd a(1, 0), b(0.5, std::sqrt(3.0) / 2), c(1, 0);
  const OverlapTriple t{std::norm(a.dot(b)), std::norm(b.dot(c)), std::norm(a.dot(c))};
  CHECK(t.r_ab == doctest::Approx(0.25));
  CHECK(t.r_ac == doctest::Approx(1.0));
  CHECK(in_qubit(t));
  CHECK(in_qubit({0.25, 0.25, 1}));
}

TEST_CASE("witness_distance_classical examples") {
  CHECK(witness_distance_classical({0.3, 0.3, 0.3}) == 0.0);
  const OverlapTriple f2{0.7673, 0.7673, 0.3117};
  CHECK(witness_distance_classical(f2) == doctest::Approx((0.7673 * 2 - 0.3117 - 1) / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(witness_distance_classical(f2) == doctest::Approx(0.129).epsilon(0.5e-3 / 0.129));
  CHECK(witness_distance_classical(f2) == doctest::Approx(classical_distance_oracle(f2)).epsilon(1e-8));
  CHECK(std::abs(witness_distance_classical({0.62, 0.71, 0.23}) - 0.06) <= 0.005);
}

TEST_CASE("witness_distance_classical matches Dykstra projection") {
  Rng rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int outside = 0;
  for (int i = 0; i < 400; ++i) {
    const OverlapTriple t{u(rng), u(rng), u(rng)};
    const double d = witness_distance_classical(t);
    if (d > 0) ++outside;
    CHECK(std::abs(d - classical_distance_oracle(t)) < 1e-9);
  }
  CHECK(outside > 20);
}

TEST_CASE("witness_distance_qubit examples") {
  CHECK(witness_distance_qubit({1, 1, 1}) == 0.0);
  CHECK(witness_distance_qubit({0, 0, 1}) == 0.0);
  CHECK(quantum_bounds(0.0, 0.0).first == doctest::Approx(1.0));
  const double wd = witness_distance_qubit({0.05, 0.06, 0.11});
  CHECK(std::abs(wd - 0.31) <= 0.02);
}

TEST_CASE("witness_distance_qubit against a dense Bloch-surface oracle") {
  Rng rng(32);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 6) {
    const OverlapTriple t{u(rng), u(rng), u(rng)};
    if (in_qubit(t)) continue;
    const double oracle = qubit_distance_oracle(t);
    const double wd = witness_distance_qubit(t);
    CHECK(std::abs(wd - oracle) < 1e-3);
    ++checked;
  }
}

TEST_CASE("h_n examples") {
  CHECK(h_n(OverlapMatrix::from_triple({1, 1, 1})) == doctest::Approx(1.0));
  // from_triple maps (r_ab, r_bc, r_ac) onto states (A, B, C) = (0, 1, 2); hub B gives F2.
  const auto m = OverlapMatrix::from_triple({0.7673, 0.7673, 0.3117});
  CHECK(h_n(m, 1) == doctest::Approx(1.2229));
  CHECK(h_n_best_hub(m) == doctest::Approx(1.2229));
  Eigen::MatrixXd e = Eigen::MatrixXd::Ones(3, 3);
  e(0, 1) = e(1, 0) = 0.7673;
  e(0, 2) = e(2, 0) = 0.7673;
  e(1, 2) = e(2, 1) = 0.3117;
  CHECK(h_n(OverlapMatrix(e)) == doctest::Approx(1.2229));
  CHECK_THROWS_AS(h_n(OverlapMatrix(Eigen::MatrixXd::Identity(2, 2))), std::invalid_argument);
  CHECK_THROWS_AS(h_n(OverlapMatrix(e), 3), std::invalid_argument);
}

TEST_CASE("h_4 at the tabulated four-state optimum") {
  // Charges 0.9, 0.6, 0.6, 0.6 with beta_ij = alpha_i - alpha_j: beta_12 = 0, beta_13 = 4.30, beta_14 = 1.97.
  const FracModeSpec s[4] = {{0.9, 0.0}, {0.6, 0.0}, {0.6, -4.30}, {0.6, -1.97}};
  const auto m = OverlapMatrix::from_states(s);
  // Independent recomputation: hub-star sum from overlap_sq directly.
  double ref = 0.0;
  for (int k = 1; k < 4; ++k) ref += overlap_sq(s[0], s[k]);
  for (int i = 1; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) ref -= overlap_sq(s[i], s[j]);
  }
  CHECK(h_n(m) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(std::abs(h_n(m) - 1.15) < 0.01);
}

TEST_CASE("OverlapMatrix validation") {
  Eigen::MatrixXd e = Eigen::MatrixXd::Ones(3, 3);
  e(0, 1) = 0.5;
  CHECK_THROWS_AS(OverlapMatrix{e}, std::invalid_argument);
  e(1, 0) = 0.5;
  e(2, 2) = 0.9;
  CHECK_THROWS_AS(OverlapMatrix{e}, std::invalid_argument);
}

TEST_CASE("gram_matrix examples") {
  const FracModeSpec same[2] = {{0.3, 1.0}, {0.3, 1.0}};
  CHECK(std::abs(gram_matrix(same).determinant()) < 1e-12);
  const FracModeSpec ints[3] = {{0.0, 0.3}, {1.0, 2.0}, {2.0, 5.0}};
  const auto gi = gram_matrix(ints);
  CHECK((gi.entries() - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-12);
  CHECK(gi.determinant() == doctest::Approx(1.0));
  const FracModeSpec five[5] = {{0.4, 0.0}, {0.4, 1.55}, {0.4, 3.18}, {0.4, 4.66}, {0.1, 4.77}};
  const auto g5 = gram_matrix(five);
  CHECK(std::abs(g5.determinant() - 0.005) < 0.0005);
  CHECK(g5.determinant() == doctest::Approx(g5.entries().determinant().real()).epsilon(1e-9));
  CHECK(certify_dimension(g5) == 5);
  CHECK(certify_dimension(GramMatrix(Eigen::MatrixXcd::Identity(5, 5))) == 5);
  const FracModeSpec one[1] = {{0.3, 0.0}};
  CHECK_THROWS_AS(gram_matrix(one), std::invalid_argument);
  const FracModeSpec mixed[2] = {{0.3, 0.0}, {0.3, 0.0, {1, 0}}};
  CHECK_THROWS_AS(gram_matrix(mixed), std::invalid_argument);
}

TEST_CASE("certify_dimension for the coherence family") {
  const auto st = scenario_states(kPi / 4, ScenarioFamily::Coherence);
  Eigen::MatrixXcd g(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g(i, j) = coeff_overlap(st[i], st[j]);
  }
  // brute-force rank through SVD
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
  const auto sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < 3; ++i) rank += sv(i) > 1e-9 * sv(0);
  CHECK(rank == 2);
  CHECK(certify_dimension(GramMatrix(g)) == 2);
}

TEST_CASE("GramMatrix rejects non-PSD input") {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Ones(3, 3);
  g(0, 1) = g(1, 0) = -1.0;
  CHECK_THROWS_AS(GramMatrix{g}, std::invalid_argument);
}

TEST_CASE("classify_region examples") {
  CHECK(classify_region({0.7673, 0.7673, 0.3117}).region == Region::IV);
  const auto r1 = classify_region({0.05, 0.06, 0.11});
  CHECK(r1.region == Region::I);
  CHECK(r1.W_D == doctest::Approx(0.31).epsilon(0.02 / 0.31));
  CHECK(r1.W_c == 0.0);
  CHECK(classify_region({1, 1, 0}).region == Region::V);
  CHECK(classify_region({1, 1, 1}).region == Region::III);
  CHECK(to_string(Region::IV) == "IV");
}

TEST_CASE("region labels follow the memberships") {
  Rng rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const OverlapTriple t{u(rng), u(rng), u(rng)};
    const auto r = classify_region(t);
    CHECK((!r.in_C || r.in_Q));
    if (!r.in_Q) CHECK(r.region == Region::V);
    else if (!r.in_C) CHECK(r.region == Region::IV);
    else if (!r.in_Qbid) CHECK(r.region == Region::I);
    else CHECK((r.region == Region::II || r.region == Region::III));
    if (r.region == Region::III) CHECK(r.in_C2);
    CHECK((r.W_c > 0) == !r.in_C);
  }
}

TEST_CASE("WitnessReport JSON") {
  nlohmann::json j = classify_region({0.05, 0.06, 0.11});
  for (const char* key : {"r_ab", "r_bc", "r_ac", "in_C", "in_Q", "in_Qbid", "W_c", "W_D", "region"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["region"] == "I");
  CHECK(j["in_Qbid"] == false);
}
