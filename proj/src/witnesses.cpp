#include "oamw/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nelder_mead.hpp"
#include "oamw/overlap.hpp"

namespace oamw {
namespace {

// (opposite, adjacent1, adjacent2) for each of the three relabelings.
std::array<std::array<double, 3>, 3> relabelings(const OverlapTriple& t) {
  return {{{t.r_bc, t.r_ab, t.r_ac}, {t.r_ac, t.r_ab, t.r_bc}, {t.r_ab, t.r_bc, t.r_ac}}};
}

struct HalfSpace {
  Eigen::Vector3d normal;
  double bound;
};

const std::vector<HalfSpace>& classical_polytope() {
  static const std::vector<HalfSpace> faces = [] {
    std::vector<HalfSpace> f;
    f.push_back({{1, 1, -1}, 1});
    f.push_back({{1, -1, 1}, 1});
    f.push_back({{-1, 1, 1}, 1});
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector3d e = Eigen::Vector3d::Zero();
      e[i] = 1;
      f.push_back({e, 1});
      f.push_back({-e, 0});
    }
    return f;
  }();
  return faces;
}

bool feasible(const std::vector<HalfSpace>& faces, const Eigen::Vector3d& x, double tol) {
  return std::all_of(faces.begin(), faces.end(),
                     [&](const HalfSpace& h) { return h.normal.dot(x) <= h.bound + tol; });
}

}  // namespace

void OverlapTriple::validate() const {
  for (double r : as_array()) {
    if (!std::isfinite(r) || r < 0.0 || r > 1.0) {
      throw std::invalid_argument("OverlapTriple: components must lie in [0, 1]");
    }
  }
}

OverlapTriple triple_from_states(const FracModeSpec& a, const FracModeSpec& b, const FracModeSpec& c) {
  auto clamp01 = [](double r) { return std::clamp(r, 0.0, 1.0); };
  return {clamp01(overlap_sq(a, b)), clamp01(overlap_sq(b, c)), clamp01(overlap_sq(a, c))};
}

std::pair<double, double> quantum_bounds(double r_adj1, double r_adj2) {
  const double a = std::sqrt(std::max(0.0, r_adj1 * r_adj2));
  const double b = std::sqrt(std::max(0.0, (1.0 - r_adj1) * (1.0 - r_adj2)));
  return {(a - b) * (a - b), (a + b) * (a + b)};
}

bool in_classical(const OverlapTriple& t, double slack) {
  return t.r_ab + t.r_bc - t.r_ac <= 1.0 + slack && t.r_ab - t.r_bc + t.r_ac <= 1.0 + slack &&
         -t.r_ab + t.r_bc + t.r_ac <= 1.0 + slack;
}

bool in_quantum(const OverlapTriple& t, double slack) {
  for (const auto& [opposite, adj1, adj2] : relabelings(t)) {
    const auto [lo, hi] = quantum_bounds(adj1, adj2);
    const double lower = adj1 + adj2 > 1.0 ? lo : 0.0;
    if (opposite > hi + slack || opposite < lower - slack) return false;
  }
  return true;
}

bool in_qubit(const OverlapTriple& t, double slack) {
  for (const auto& [opposite, adj1, adj2] : relabelings(t)) {
    const auto [lo, hi] = quantum_bounds(adj1, adj2);
    if (opposite > hi + slack || opposite < lo - slack) return false;
  }
  return true;
}

bool in_classical_bit(const OverlapTriple& t, double slack) {
  // Two-outcome distributions p = (1 + u) / 2 give r = (1 + u v) / 2, so the triple is
  // realizable iff uv = x, vw = y, uw = z has a solution in [-1, 1]^3.
  const double eps = 2.0 * slack;
  const double x = 2.0 * t.r_ab - 1.0;
  const double y = 2.0 * t.r_bc - 1.0;
  const double z = 2.0 * t.r_ac - 1.0;
  const int zeros = (std::abs(x) <= eps) + (std::abs(y) <= eps) + (std::abs(z) <= eps);
  if (zeros >= 2) return true;
  if (zeros == 1) return false;
  if (x * y * z < 0.0) return false;
  const double limit = 1.0 + 4.0 * slack;
  return std::abs(x * z / y) <= limit && std::abs(x * y / z) <= limit && std::abs(y * z / x) <= limit;
}

double witness_distance_classical(const OverlapTriple& t) {
  if (in_classical(t)) return 0.0;
  const auto& faces = classical_polytope();
  const Eigen::Vector3d p(t.r_ab, t.r_bc, t.r_ac);
  const int m = static_cast<int>(faces.size());
  double best = std::numeric_limits<double>::infinity();

  auto try_active = [&](const std::vector<int>& active) {
    const int k = static_cast<int>(active.size());
    Eigen::MatrixXd n(k, 3);
    Eigen::VectorXd b(k);
    for (int i = 0; i < k; ++i) {
      n.row(i) = faces[active[i]].normal.transpose();
      b[i] = faces[active[i]].bound;
    }
    const Eigen::MatrixXd nnt = n * n.transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(nnt);
    if (lu.rank() < k) return;
    const Eigen::VectorXd lambda = lu.solve(n * p - b);
    const Eigen::Vector3d x = p - n.transpose() * lambda;
    if (feasible(faces, x, 1e-12)) best = std::min(best, (x - p).norm());
  };

  for (int i = 0; i < m; ++i) {
    try_active({i});
    for (int j = i + 1; j < m; ++j) {
      try_active({i, j});
      for (int k = j + 1; k < m; ++k) try_active({i, j, k});
    }
  }
  return best;
}

double witness_distance_qubit(const OverlapTriple& t) {
  if (in_qubit(t)) return 0.0;
  const Eigen::Vector3d p(t.r_ab, t.r_bc, t.r_ac);
  constexpr int kGrid = 200;
  static constexpr double kHalfPi = 0.5 * kPi;

  // Boundary surfaces of Q_bid: opposite overlap = cos^2(a -/+ c) with adjacent overlaps
  // cos^2 a and cos^2 c, a, c in [0, pi/2], for each choice of the opposite pair.
  auto surface = [](int label, int branch, double a, double c) {
    a = std::clamp(a, 0.0, kHalfPi);
    c = std::clamp(c, 0.0, kHalfPi);
    const double adj1 = std::cos(a) * std::cos(a);
    const double adj2 = std::cos(c) * std::cos(c);
    const double opp = std::pow(std::cos(branch < 0 ? a + c : a - c), 2);
    switch (label) {
      case 0: return Eigen::Vector3d(adj1, opp, adj2);
      case 1: return Eigen::Vector3d(adj1, adj2, opp);
      default: return Eigen::Vector3d(opp, adj1, adj2);
    }
  };

  double best = std::numeric_limits<double>::infinity();
  for (int label = 0; label < 3; ++label) {
    for (int branch : {-1, 1}) {
      double patch_best = std::numeric_limits<double>::infinity();
      double best_a = 0.0, best_c = 0.0;
      for (int i = 0; i <= kGrid; ++i) {
        const double a = kHalfPi * i / kGrid;
        for (int j = 0; j <= kGrid; ++j) {
          const double c = kHalfPi * j / kGrid;
          const double d = (surface(label, branch, a, c) - p).squaredNorm();
          if (d < patch_best) {
            patch_best = d;
            best_a = a;
            best_c = c;
          }
        }
      }
      auto dist2 = [&](const std::vector<double>& v) {
        const double pen = std::pow(std::max(0.0, -v[0]), 2) + std::pow(std::max(0.0, v[0] - kHalfPi), 2) +
                           std::pow(std::max(0.0, -v[1]), 2) + std::pow(std::max(0.0, v[1] - kHalfPi), 2);
        return (surface(label, branch, v[0], v[1]) - p).squaredNorm() + pen;
      };
      const double h = kHalfPi / kGrid;
      const auto refined = detail::nelder_mead(dist2, {best_a, best_c}, {h, h}, 4000, 1e-12);
      const double d = (surface(label, branch, refined.x[0], refined.x[1]) - p).squaredNorm();
      best = std::min({best, patch_best, d});
    }
  }
  return std::sqrt(best);
}

OverlapMatrix::OverlapMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  const auto n = entries_.rows();
  if (n != entries_.cols() || n < 1) throw std::invalid_argument("OverlapMatrix: must be square and non-empty");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(entries_(i, i) - 1.0) > 1e-9) throw std::invalid_argument("OverlapMatrix: diagonal must be 1");
    for (Eigen::Index j = 0; j < n; ++j) {
      const double r = entries_(i, j);
      if (std::abs(r - entries_(j, i)) > 1e-12) throw std::invalid_argument("OverlapMatrix: must be symmetric");
      if (!(r >= 0.0 && r <= 1.0 + 1e-12)) throw std::invalid_argument("OverlapMatrix: entries must lie in [0, 1]");
    }
  }
}

OverlapMatrix OverlapMatrix::from_states(std::span<const FracModeSpec> states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      m(i, j) = m(j, i) = std::clamp(overlap_sq(states[i], states[j]), 0.0, 1.0);
    }
  }
  return OverlapMatrix(std::move(m));
}

OverlapMatrix OverlapMatrix::from_vectors(std::span<const Eigen::VectorXcd> states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = std::norm(states[i].normalized().dot(states[j].normalized()));
      m(i, j) = m(j, i) = std::clamp(r, 0.0, 1.0);
    }
  }
  return OverlapMatrix(std::move(m));
}

OverlapMatrix OverlapMatrix::from_triple(const OverlapTriple& t) {
  t.validate();
  Eigen::Matrix3d m;
  m << 1.0, t.r_ab, t.r_ac,  //
      t.r_ab, 1.0, t.r_bc,   //
      t.r_ac, t.r_bc, 1.0;
  return OverlapMatrix(m);
}

double h_n(const OverlapMatrix& m, int hub) {
  const int n = m.size();
  if (n < 3) throw std::invalid_argument("h_n: needs at least three states");
  if (hub < 0 || hub >= n) throw std::invalid_argument("h_n: hub out of range");
  double value = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      value += (i == hub || j == hub) ? m(i, j) : -m(i, j);
    }
  }
  return value;
}

double h_n_best_hub(const OverlapMatrix& m, int* best_hub) {
  double best = -std::numeric_limits<double>::infinity();
  for (int hub = 0; hub < m.size(); ++hub) {
    const double v = h_n(m, hub);
    if (v > best) {
      best = v;
      if (best_hub) *best_hub = hub;
    }
  }
  return best;
}

GramMatrix::GramMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  const auto n = entries_.rows();
  if (n != entries_.cols() || n < 1) throw std::invalid_argument("GramMatrix: must be square and non-empty");
  if ((entries_ - entries_.adjoint()).norm() > 1e-12 * std::max(1.0, entries_.norm())) {
    throw std::invalid_argument("GramMatrix: must be Hermitian");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(entries_(i, i) - 1.0) > 1e-9) throw std::invalid_argument("GramMatrix: diagonal must be 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  eigenvalues_ = solver.eigenvalues();
  if (eigenvalues_.minCoeff() < -1e-9) throw std::invalid_argument("GramMatrix: not positive semidefinite");
}

double GramMatrix::determinant() const { return eigenvalues_.prod(); }

GramMatrix gram_matrix(std::span<const FracModeSpec> specs) {
  if (specs.size() < 2) throw std::invalid_argument("gram_matrix: needs at least two states");
  const auto n = static_cast<Eigen::Index>(specs.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      g(i, j) = complex_overlap(specs[j], specs[i]).value;  // <i|j>
      g(j, i) = std::conj(g(i, j));
    }
  }
  return GramMatrix(std::move(g));
}

int certify_dimension(const GramMatrix& g, double tol) {
  const auto& ev = g.eigenvalues();
  const double lmax = ev.maxCoeff();
  if (!(lmax > 0.0)) return 0;
  return static_cast<int>((ev.array() > tol * lmax).count());
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::V: return "V";
  }
  return "?";
}

WitnessReport classify_region(const OverlapTriple& t) {
  t.validate();
  WitnessReport r;
  r.triple = t;
  r.in_C = in_classical(t);
  r.in_Q = in_quantum(t);
  r.in_Qbid = in_qubit(t);
  r.in_C2 = in_classical_bit(t);
  r.in_C_strict = in_classical(t, 0.0);
  r.in_Q_strict = in_quantum(t, 0.0);
  r.in_Qbid_strict = in_qubit(t, 0.0);
  r.W_c = witness_distance_classical(t);
  r.W_D = witness_distance_qubit(t);
  if (!r.in_Q) {
    r.region = Region::V;
  } else if (!r.in_C) {
    r.region = Region::IV;
  } else if (!r.in_Qbid) {
    r.region = Region::I;
  } else {
    r.region = r.in_C2 ? Region::III : Region::II;
  }
  return r;
}

void to_json(nlohmann::json& j, const WitnessReport& report) {
  j = nlohmann::json{{"r_ab", report.triple.r_ab}, {"r_bc", report.triple.r_bc}, {"r_ac", report.triple.r_ac},
                     {"in_C", report.in_C},          {"in_Q", report.in_Q},     {"in_Qbid", report.in_Qbid},
                     {"W_c", report.W_c},            {"W_D", report.W_D},       {"region", to_string(report.region)}};
}

}  // namespace oamw
