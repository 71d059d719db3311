#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oamw/bench.hpp"
#include "oamw/overlap.hpp"
#include "oamw/search.hpp"
#include "oamw/witnesses.hpp"

namespace py = pybind11;
using namespace oamw;

namespace {

py::dict report_dict(const WitnessReport& r) {
  py::dict d;
  d["r_ab"] = r.triple.r_ab;
  d["r_bc"] = r.triple.r_bc;
  d["r_ac"] = r.triple.r_ac;
  d["in_C"] = r.in_C;
  d["in_Q"] = r.in_Q;
  d["in_Qbid"] = r.in_Qbid;
  d["W_c"] = r.W_c;
  d["W_D"] = r.W_D;
  d["region"] = std::string(to_string(r.region));
  return d;
}

ObjectiveKind objective_from(const std::string& name) {
  if (name == "F1") return ObjectiveKind::F1;
  if (name == "F2") return ObjectiveKind::F2;
  if (name == "F3") return ObjectiveKind::F3;
  if (name == "W_D") return ObjectiveKind::WD;
  if (name == "W_c") return ObjectiveKind::WC;
  throw std::invalid_argument("unknown objective '" + name + "'");
}

BoundaryFamily family_from(const std::string& name) {
  for (auto f : {BoundaryFamily::AllFree, BoundaryFamily::SymmetricEll, BoundaryFamily::BetaSumPi}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fractional OAM overlaps, coherence and dimension witnesses, virtual interferometer";

  py::class_<FracModeSpec>(m, "FracMode")
      .def(py::init([](double ell, double alpha, int l, int p) { return FracModeSpec(ell, alpha, LgIndex{l, p}); }),
           py::arg("ell"), py::arg("alpha") = 0.0, py::arg("l") = 0, py::arg("p") = 0)
      .def_readonly("ell", &FracModeSpec::ell)
      .def_readonly("alpha", &FracModeSpec::alpha)
      .def("__repr__", [](const FracModeSpec& s) {
        return "FracMode(ell=" + std::to_string(s.ell) + ", alpha=" + std::to_string(s.alpha) + ")";
      });

  m.def("sinc", &sinc);
  m.def("overlap_sq", &overlap_sq, py::arg("a"), py::arg("b"));
  m.def("complex_overlap", [](const FracModeSpec& a, const FracModeSpec& b) { return complex_overlap(a, b).value; },
        "<b|a>", py::arg("a"), py::arg("b"));
  m.def("overlap_sq_beta0", &overlap_sq_beta0);
  m.def("overlap_sq_equal_ell", &overlap_sq_equal_ell);
  m.def("expand_in_lg", [](const FracModeSpec& s, int n_modes) {
    const auto c = expand_in_lg(s, n_modes);
    std::map<std::pair<int, int>, cplx> terms;
    for (const auto& [idx, amp] : c.terms()) terms[{idx.l, idx.p}] = amp;
    return py::make_tuple(terms, c.captured_norm());
  }, py::arg("spec"), py::arg("n_modes") = 10);

  m.def("classify_region", [](double r_ab, double r_bc, double r_ac) {
    const OverlapTriple t{r_ab, r_bc, r_ac};
    t.validate();
    return report_dict(classify_region(t));
  });
  m.def("triple_from_states", [](const FracModeSpec& a, const FracModeSpec& b, const FracModeSpec& c) {
    const auto t = triple_from_states(a, b, c);
    return py::make_tuple(t.r_ab, t.r_bc, t.r_ac);
  });
  m.def("in_classical", [](double a, double b, double c) { return in_classical({a, b, c}); });
  m.def("in_quantum", [](double a, double b, double c) { return in_quantum({a, b, c}); });
  m.def("in_qubit", [](double a, double b, double c) { return in_qubit({a, b, c}); });
  m.def("witness_distance_classical", [](double a, double b, double c) { return witness_distance_classical({a, b, c}); });
  m.def("witness_distance_qubit", [](double a, double b, double c) { return witness_distance_qubit({a, b, c}); });

  m.def("overlap_matrix", [](const std::vector<FracModeSpec>& s) { return OverlapMatrix::from_states(s).entries(); });
  m.def("h_n", [](const Eigen::MatrixXd& r, int hub) { return h_n(OverlapMatrix(r), hub); }, py::arg("r"), py::arg("hub") = 0);
  m.def("h_n_best_hub", [](const Eigen::MatrixXd& r) { return h_n_best_hub(OverlapMatrix(r)); });
  m.def("gram_matrix", [](const std::vector<FracModeSpec>& s) { return gram_matrix(s).entries(); });
  m.def("gram_determinant", [](const std::vector<FracModeSpec>& s) { return gram_matrix(s).determinant(); });
  m.def("certify_dimension", [](const std::vector<FracModeSpec>& s, double tol) { return certify_dimension(gram_matrix(s), tol); },
        py::arg("states"), py::arg("tol") = 1e-9);

  m.def("violation_functions", [](double x, double y) {
    const auto v = violation_functions(x, y);
    return py::make_tuple(v.f1, v.f2, v.f3);
  });
  m.def("solve_transcendental", &solve_transcendental);
  m.def("maximize", [](const std::string& objective, int n_states, std::uint64_t seed, long budget, int jobs) {
    const SearchProblem problem = objective == "h_n" ? SearchProblem::hn(n_states)
                                  : objective == "W_D" || objective == "W_c"
                                      ? SearchProblem::witness_distance(objective_from(objective))
                                      : SearchProblem::violation(objective_from(objective));
    SearchOptions opts;
    opts.jobs = jobs;
    SearchResult r;
    {
      py::gil_scoped_release release;
      r = maximize(problem, seed, budget, opts);
    }
    py::dict d;
    d["best_params"] = r.best_params;
    d["best_value"] = r.best_value;
    d["evaluations"] = r.evaluations;
    return d;
  }, py::arg("objective"), py::arg("n_states") = 0, py::arg("seed") = 1, py::arg("budget") = 20000, py::arg("jobs") = 1);
  m.def("trace_boundary", [](const std::string& family, int resolution, std::uint64_t seed) {
    BoundaryCurve c;
    {
      py::gil_scoped_release release;
      c = trace_boundary(family_from(family), resolution, {seed, 1});
    }
    std::vector<std::pair<double, double>> out;
    for (const auto& s : c.samples) out.emplace_back(s.r_ab, s.r_ac);
    return out;
  }, py::arg("family"), py::arg("resolution") = 64, py::arg("seed") = 1);

  m.def("bench_overlap", [](const FracModeSpec& a, const FracModeSpec& b, int n, double extent_waists, int kick_index, int n_modes) {
    BenchConfig cfg = BenchConfig::defaults(n, extent_waists);
    if (kick_index > 0) cfg.kick_index = kick_index;
    if (n_modes > 0) cfg.synthesis = LgTruncated{n_modes};
    Extraction e;
    {
      py::gil_scoped_release release;
      e = extract(interfere(synthesize(a, cfg), synthesize(b, cfg), cfg));
    }
    py::dict d;
    d["bench"] = e.overlap;
    d["raw"] = e.raw;
    d["separation"] = e.separation;
    d["separation_ok"] = e.separation_ok;
    return d;
  }, py::arg("a"), py::arg("b"), py::arg("n") = 256, py::arg("extent_waists") = 16.0, py::arg("kick_index") = 0,
     py::arg("n_modes") = 0);
}
