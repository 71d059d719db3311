#pragma once

#include <array>
#include <span>
#include <string_view>

#include <Eigen/Dense>
#include <json.hpp>

#include "oamw/frac_modes.hpp"

namespace oamw {

/// Additive slack used by every membership inequality.
inline constexpr double kMembershipSlack = 1e-9;

/// Pairwise overlaps (r_AB, r_BC, r_AC) of three states.
struct OverlapTriple {
  double r_ab = 0.0;
  double r_bc = 0.0;
  double r_ac = 0.0;

  /// Throws std::invalid_argument unless every component is finite and in [0, 1].
  void validate() const;
  std::array<double, 3> as_array() const { return {r_ab, r_bc, r_ac}; }
};

OverlapTriple triple_from_states(const FracModeSpec& a, const FracModeSpec& b, const FracModeSpec& c);

/// Classical region C: r_AB + r_BC - r_AC <= 1 and its two cyclic relabelings.
bool in_classical(const OverlapTriple& t, double slack = kMembershipSlack);

/// Quantum region Q: for every relabeling the opposite overlap lies in [lower, r+], with
/// lower = r- when the two adjacent overlaps sum above 1 and 0 otherwise.
bool in_quantum(const OverlapTriple& t, double slack = kMembershipSlack);

/// Pure-qubit region Q_bid: as in_quantum with the r- branch applied unconditionally.
bool in_qubit(const OverlapTriple& t, double slack = kMembershipSlack);

/// Triples reachable by three diagonal qubit states (two-outcome distributions).
bool in_classical_bit(const OverlapTriple& t, double slack = kMembershipSlack);

/// r- and r+ for the overlap opposite to the two given adjacent overlaps.
std::pair<double, double> quantum_bounds(double r_adj1, double r_adj2);

/// Euclidean distance to C intersected with the unit cube (exact projection); 0 inside C.
double witness_distance_classical(const OverlapTriple& t);

/// Euclidean distance to Q_bid (sampled boundary plus local refinement, ~1e-6); 0 inside Q_bid.
double witness_distance_qubit(const OverlapTriple& t);

/// Symmetric matrix of pairwise overlaps with unit diagonal.
class OverlapMatrix {
 public:
  /// Throws std::invalid_argument unless symmetric, unit diagonal and off-diagonal in [0, 1].
  explicit OverlapMatrix(Eigen::MatrixXd entries);

  static OverlapMatrix from_states(std::span<const FracModeSpec> states);
  static OverlapMatrix from_vectors(std::span<const Eigen::VectorXcd> states);
  static OverlapMatrix from_triple(const OverlapTriple& t);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

/// Hub-star h_n: sum_k r_{hub,k} - sum over the remaining pairs r_{i,j}.
/// For n = 3 and hub 0 this is r01 + r02 - r12. Throws std::invalid_argument for n < 3 or a bad hub.
double h_n(const OverlapMatrix& m, int hub = 0);

/// Maximum of h_n over the choice of hub.
double h_n_best_hub(const OverlapMatrix& m, int* best_hub = nullptr);

/// Hermitian matrix of inner products G_ij = <psi_i|psi_j>.
class GramMatrix {
 public:
  /// Throws std::invalid_argument unless Hermitian with unit diagonal and eigenvalues >= -1e-9.
  explicit GramMatrix(Eigen::MatrixXcd entries);

  int size() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  /// Ascending eigenvalues.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  double determinant() const;

 private:
  Eigen::MatrixXcd entries_;
  Eigen::VectorXd eigenvalues_;
};

/// G_ij = <spec_i|spec_j>. Needs at least two states on a common carrier.
GramMatrix gram_matrix(std::span<const FracModeSpec> specs);

/// Numerical rank: eigenvalues above tol * lambda_max.
int certify_dimension(const GramMatrix& g, double tol = 1e-9);

enum class Region { I, II, III, IV, V };

std::string_view to_string(Region r);

struct WitnessReport {
  OverlapTriple triple;
  bool in_C = false;
  bool in_Q = false;
  bool in_Qbid = false;
  bool in_C2 = false;  // two-outcome classical
  // Verdicts with zero slack.
  bool in_C_strict = false;
  bool in_Q_strict = false;
  bool in_Qbid_strict = false;
  double W_c = 0.0;
  double W_D = 0.0;
  Region region = Region::V;
};

/// V: outside Q. IV: in Q, outside C. I: in Q and C, outside Q_bid.
/// III: additionally two-outcome classical. II: the rest.
WitnessReport classify_region(const OverlapTriple& t);

/// Flat object with keys r_ab, r_bc, r_ac, in_C, in_Q, in_Qbid, W_c, W_D, region.
void to_json(nlohmann::json& j, const WitnessReport& report);

}  // namespace oamw
