// Python surface: graphs, oracles, the embedding, the four rounding paths,
// and the planted-instance tools. Matrices cross the boundary as lists of
// rows; keyword names follow the C++ ones except where Python reserves them
// (lambda_, passed).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "ssecut/cut_improve.hpp"
#include "ssecut/embed.hpp"
#include "ssecut/graph.hpp"
#include "ssecut/gs_round.hpp"
#include "ssecut/linalg.hpp"
#include "ssecut/oracle.hpp"
#include "ssecut/orth_sep.hpp"
#include "ssecut/decomp.hpp"
#include "ssecut/planted.hpp"
#include "ssecut/sse_flow.hpp"

namespace py = pybind11;
using namespace ssecut;

namespace {

std::vector<std::vector<double>> matrix_rows(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows, std::vector<double>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) rows[i][j] = m(i, j);
  return rows;
}

RoundMode parse_mode(const std::string& name, double c) {
  RoundMode mode;
  mode.c = c;
  if (name == "sparsest")
    mode.kind = RoundMode::Kind::sparsest;
  else if (name == "expansion")
    mode.kind = RoundMode::Kind::expansion;
  else if (name == "balanced")
    mode.kind = RoundMode::Kind::balanced;
  else
    throw std::invalid_argument("mode must be sparsest, expansion, or balanced");
  return mode;
}

}  // namespace

PYBIND11_MODULE(_ssecut, m) {
  m.doc() = "approximate sparsest cut under local expansion";

  py::class_<Graph>(m, "Graph")
      .def_readonly("n", &Graph::n)
      .def_property_readonly("weights", [](const Graph& g) { return matrix_rows(g.weights); })
      .def("degrees", &Graph::degrees)
      .def("edges", &Graph::edges)
      .def("connected", &Graph::connected);

  py::class_<CutResult>(m, "CutResult")
      .def_readonly("set", &CutResult::set)
      .def_readonly("cut_weight", &CutResult::cut_weight)
      .def_readonly("sparsity", &CutResult::sparsity)
      .def_readonly("expansion", &CutResult::expansion);

  py::class_<SmallSetResult>(m, "SmallSetResult")
      .def_readonly("phi", &SmallSetResult::phi)
      .def_readonly("phi_witness", &SmallSetResult::phi_witness)
      .def_readonly("expansion", &SmallSetResult::expansion)
      .def_readonly("expansion_witness", &SmallSetResult::expansion_witness);

  py::class_<VectorSolution>(m, "VectorSolution")
      .def_property_readonly("x", [](const VectorSolution& s) { return matrix_rows(s.x); })
      .def_readonly("objective", &VectorSolution::objective)
      .def_readonly("mu", &VectorSolution::mu)
      .def_readonly("nu", &VectorSolution::nu)
      .def_readonly("iterations", &VectorSolution::iterations)
      .def_readonly("converged", &VectorSolution::converged);

  py::class_<RoundingReport>(m, "RoundingReport")
      .def_readonly("selected", &RoundingReport::selected)
      .def_readonly("gamma", &RoundingReport::gamma)
      .def_readonly("bound", &RoundingReport::bound)
      .def_readonly("best_cut", &RoundingReport::best_cut)
      .def_readonly("seed", &RoundingReport::seed);

  py::class_<RoundOrSmall>(m, "RoundOrSmall")
      .def_readonly("is_cut", &RoundOrSmall::is_cut)
      .def_readonly("inconclusive", &RoundOrSmall::inconclusive)
      .def_readonly("cut", &RoundOrSmall::cut)
      .def_readonly("small_set", &RoundOrSmall::small_set)
      .def_readonly("phi_sdp", &RoundOrSmall::phi_sdp)
      .def_readonly("gamma", &RoundOrSmall::gamma)
      .def_readonly("residual", &RoundOrSmall::residual)
      .def_readonly("kappa", &RoundOrSmall::kappa)
      .def_readonly("anchor_ran", &RoundOrSmall::anchor_ran)
      .def_readonly("note", &RoundOrSmall::note);

  py::class_<GenusRound>(m, "GenusRound")
      .def_readonly("is_cut", &GenusRound::is_cut)
      .def_readonly("inconclusive", &GenusRound::inconclusive)
      .def_readonly("cut", &GenusRound::cut)
      .def_readonly("small_set", &GenusRound::small_set)
      .def_readonly("phi_sdp", &GenusRound::phi_sdp)
      .def_readonly("delta", &GenusRound::delta)
      .def_readonly("beta_pad", &GenusRound::beta_pad)
      .def_readonly("constant", &GenusRound::constant)
      .def_readonly("note", &GenusRound::note);

  py::class_<FlowPath>(m, "FlowPath")
      .def_readonly("verts", &FlowPath::verts)
      .def_readonly("amount", &FlowPath::amount);

  py::class_<MultiFlow>(m, "MultiFlow")
      .def(py::init([](int n, const std::vector<std::pair<std::vector<int>, double>>& paths) {
             MultiFlow f;
             f.n = n;
             for (const auto& [verts, amount] : paths) f.paths.push_back({verts, amount});
             return f;
           }),
           py::arg("n"), py::arg("paths"))
      .def_readonly("n", &MultiFlow::n)
      .def_readonly("paths", &MultiFlow::paths);

  py::class_<SpectralCertificate>(m, "SpectralCertificate")
      .def_readonly("r", &SpectralCertificate::r)
      .def_readonly("d", &SpectralCertificate::d)
      .def_readonly("lambda_", &SpectralCertificate::lambda)
      .def_readonly("lambda_measured", &SpectralCertificate::lambda_measured)
      .def_readonly("degrees", &SpectralCertificate::degrees)
      .def_readonly("valid", &SpectralCertificate::valid);

  py::class_<SpectralFlowResult>(m, "SpectralFlowResult")
      .def_readonly("flow", &SpectralFlowResult::flow)
      .def_readonly("cert", &SpectralFlowResult::cert)
      .def_readonly("objective_history", &SpectralFlowResult::objective_history);

  py::class_<PlantedInstance>(m, "PlantedInstance")
      .def_readonly("graph", &PlantedInstance::graph)
      .def_readonly("planted", &PlantedInstance::planted)
      .def_readonly("rho", &PlantedInstance::rho)
      .def_readonly("planted_cut", &PlantedInstance::planted_cut)
      .def_readonly("phi_planted", &PlantedInstance::phi_planted)
      .def_readonly("side_expansion", &PlantedInstance::side_expansion)
      .def_readonly("rest_expansion", &PlantedInstance::rest_expansion);

  py::class_<HypothesisReport>(m, "HypothesisReport")
      .def_readonly("passed", &HypothesisReport::pass)
      .def_readonly("delta", &HypothesisReport::delta)
      .def_readonly("margin", &HypothesisReport::margin)
      .def_readonly("witness", &HypothesisReport::witness)
      .def_readonly("cross_heavy", &HypothesisReport::cross_heavy)
      .def_readonly("note", &HypothesisReport::note);

  m.def("make_graph", &make_graph, py::arg("n"), py::arg("edges"));
  m.def(
      "normalize_regular", [](const Graph& g) { return normalize_regular(g); }, py::arg("graph"));
  m.def("cut_quality", &cut_quality, py::arg("graph"), py::arg("set"));
  m.def("cut_weight", &cut_weight, py::arg("graph"), py::arg("set"));
  m.def("brute_sparsest", &brute_sparsest, py::arg("graph"));
  m.def("brute_small_set", &brute_small_set, py::arg("graph"), py::arg("r"));

  m.def(
      "solve_base_embedding",
      [](const Graph& g, double mu) { return solve_base_embedding(g, mu); }, py::arg("graph"),
      py::arg("mu") = 0.5);
  m.def(
      "solve_best_embedding", [](const Graph& g) { return solve_best_embedding(g); },
      py::arg("graph"));

  m.def(
      "gs_rounding",
      [](const Graph& g, const VectorSolution& sol, int r, double eps, std::uint64_t seed) {
        return gs_rounding(g, sol, r, eps, seed);
      },
      py::arg("graph"), py::arg("solution"), py::arg("r"), py::arg("eps"), py::arg("seed") = 0);
  m.def(
      "round_or_small_set",
      [](const Graph& g, int r, double eps, std::uint64_t seed, const VectorSolution* sol) {
        return round_or_small_set(g, r, eps, seed, sol);
      },
      py::arg("graph"), py::arg("r"), py::arg("eps"), py::arg("seed") = 0,
      py::arg("solution") = nullptr);
  m.def(
      "genus_round",
      [](const Graph& g, const VectorSolution& sol, int r, double eps, double beta_pad,
         std::uint64_t seed, int draws) {
        return genus_round(g, sol, r, eps, beta_pad, seed, draws);
      },
      py::arg("graph"), py::arg("solution"), py::arg("r"), py::arg("eps"),
      py::arg("beta_pad") = 3.0, py::arg("seed") = 0, py::arg("draws") = 64);

  m.def(
      "construct_spectral_flow",
      [](const Graph& g, int r, double d, int iterations) {
        return construct_spectral_flow(g, r, d, iterations);
      },
      py::arg("graph"), py::arg("r"), py::arg("d"), py::arg("iterations") = 300);
  m.def("verify_spectral", &verify_spectral, py::arg("flow"), py::arg("r"), py::arg("d"),
        py::arg("lambda_"));
  m.def(
      "flow_round",
      [](const Graph& g, const MultiFlow& f, const SpectralCertificate& cert, double eps,
         const std::string& mode, double c, double net_resolution) {
        return flow_round(g, f, cert, eps, parse_mode(mode, c), net_resolution);
      },
      py::arg("graph"), py::arg("flow"), py::arg("cert"), py::arg("eps"),
      py::arg("mode") = "sparsest", py::arg("c") = 0.5, py::arg("net_resolution") = 0.25);
  m.def("improve_cut", &improve_cut, py::arg("graph"), py::arg("T"), py::arg("phi_guess"),
        py::arg("delta"));

  m.def("generate_planted", &generate_planted, py::arg("n"), py::arg("rho"),
        py::arg("inner_degree"), py::arg("cross_edges"), py::arg("seed"));
  m.def(
      "check_hypothesis",
      [](const PlantedInstance& inst, double eps, double c0) {
        return check_hypothesis(inst, eps, c0);
      },
      py::arg("instance"), py::arg("eps"), py::arg("c0") = 1.0);
}
