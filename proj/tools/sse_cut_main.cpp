// sse-cut: solve / round / certify / generate / bench for the sparsest-cut
// pipeline. One subcommand per run, JSON report on stdout, exit 0 on success,
// 2 when a rounding path is inconclusive or a verification reports false,
// 1 on error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ssecut/cut_improve.hpp"
#include "ssecut/decomp.hpp"
#include "ssecut/embed.hpp"
#include "ssecut/graph.hpp"
#include "ssecut/gs_round.hpp"
#include "ssecut/json_io.hpp"
#include "ssecut/oracle.hpp"
#include "ssecut/orth_sep.hpp"
#include "ssecut/planted.hpp"
#include "ssecut/sse_flow.hpp"

namespace {

using nlohmann::json;
using namespace ssecut;

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  double tol = 1e-7;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "random seed (reports embed it)");
  cmd->add_option("--out", c.out, "also write the primary artifact to this file");
  cmd->add_option("--tol", c.tol, "re-scoring tolerance")->check(CLI::PositiveNumber);
}

json cut_json(const CutResult& c) {
  return json{{"set", c.set},
              {"cut_weight", c.cut_weight},
              {"sparsity", c.sparsity},
              {"expansion", c.expansion}};
}

/// Every emitted cut is re-scored from the graph before it leaves the
/// process; a mismatch is a bug, not a bad input.
void rescore(const Graph& g, const CutResult& c, double tol) {
  CutResult fresh = cut_quality(g, c.set);
  if (std::abs(fresh.sparsity - c.sparsity) > tol ||
      std::abs(fresh.cut_weight - c.cut_weight) > tol ||
      std::abs(fresh.expansion - c.expansion) > tol)
    throw std::logic_error("re-scoring mismatch on an emitted cut");
}

void emit(const json& rep, const std::string& out) {
  std::cout << rep.dump(2) << "\n";
  if (!out.empty()) save_json(rep, out);
}

json anchor_json(const AnchorReport& ar) {
  return json{{"anchors", ar.anchors},
              {"marked_partition", ar.marked_partition},
              {"residual", ar.residual},
              {"residual_constant", ar.residual_constant},
              {"success", ar.success},
              {"inconclusive", ar.inconclusive},
              {"failure", ar.failure},
              {"note", ar.note}};
}

VectorSolution solve_for(const Graph& g, double mu) {
  if (mu > 0.0 && mu < 1.0) return solve_base_embedding(g, mu);
  return solve_best_embedding(g);
}

MultiFlow flow_from_file(const std::string& path, int n) {
  json j = load_json(path);
  if (j.contains("flow")) return flow_from_json(j.at("flow"), n);
  return flow_from_json(j, n);
}

int cmd_embed(const Common& c, const std::string& graph_path, double mu) {
  Graph g = load_graph(graph_path);
  VectorSolution sol = solve_for(g, mu);
  SolutionCheck chk = check_solution(g, sol);
  std::vector<std::vector<double>> cols(static_cast<std::size_t>(sol.x.cols));
  for (int u = 0; u < sol.x.cols; ++u)
    for (int i = 0; i < sol.x.rows; ++i) cols[static_cast<std::size_t>(u)].push_back(sol.x(i, u));
  json rep{{"command", "embed"},
           {"seed", c.seed},
           {"n", g.n},
           {"objective", sol.objective},
           {"mu", sol.mu},
           {"nu", sol.nu},
           {"iterations", sol.iterations},
           {"converged", sol.converged},
           {"check",
            {{"centering", chk.centering},
             {"norm_excess", chk.norm_excess},
             {"triangle", chk.triangle},
             {"objective_gap", chk.objective_gap}}},
           {"vectors", cols}};
  emit(rep, c.out);
  return 0;
}

int cmd_gs_round(const Common& c, const std::string& graph_path, int r, double eps, double mu) {
  Graph g = load_graph(graph_path);
  VectorSolution sol = solve_for(g, mu);
  RoundingReport rr = gs_rounding(g, sol, r, eps, c.seed);
  rescore(g, rr.best_cut, c.tol);
  json rep{{"command", "gs-round"}, {"seed", rr.seed},
           {"r", r},               {"eps", eps},
           {"objective", sol.objective},
           {"selected", rr.selected},
           {"gamma", rr.gamma},    {"bound", rr.bound},
           {"cut", cut_json(rr.best_cut)},
           {"sparsity", rr.best_cut.sparsity}};
  emit(rep, c.out);
  return 0;
}

int cmd_orth_round(const Common& c, const std::string& graph_path, int r, double eps,
                   int trials) {
  Graph g = normalize_regular(load_graph(graph_path));
  VectorSolution sol = solve_best_embedding(g);
  RoundOrSmall rs = round_or_small_set(g, r, eps, c.seed, &sol);
  json rep{{"command", "orth-round"},
           {"seed", c.seed},
           {"r", r},
           {"eps", eps},
           {"phi_sdp", rs.phi_sdp},
           {"is_cut", rs.is_cut},
           {"inconclusive", rs.inconclusive},
           {"gamma", rs.gamma},
           {"residual", rs.residual},
           {"kappa", rs.kappa},
           {"note", rs.note}};
  if (!rs.cut.set.empty()) {
    rescore(g, rs.cut, c.tol);
    rep["cut"] = cut_json(rs.cut);
  }
  if (!rs.small_set.set.empty()) {
    rescore(g, rs.small_set, c.tol);
    rep["small_set"] = cut_json(rs.small_set);
  }
  if (rs.anchor_ran) rep["anchor_report"] = anchor_json(rs.anchor);
  if (trials > 0) {
    // Validate the separator definition on this embedding: rescale the
    // centered columns to fit the unit ball and estimate the three
    // conditions at the anchor-rule parameters.
    Matrix xt = sol.x;
    double top = 0.0;
    for (int u = 0; u < xt.cols; ++u) {
      double s = 0.0;
      for (int i = 0; i < xt.rows; ++i) s += xt(i, u) * xt(i, u);
      top = std::max(top, s);
    }
    if (top > 1.0)
      for (double& v : xt.a) v /= std::sqrt(top);
    double delta = std::clamp(eps / 2.0, 1e-3, 0.9);
    double beta = std::clamp(eps / 2.0, 1e-3, 0.24);
    SeparatorParams p = anchor_params(r, delta, beta);
    SeparatorStats st = estimate_properties(xt, p, trials, c.seed + 1);
    double worst_z = 0.0;
    for (std::size_t u = 0; u < st.alpha_hat.size(); ++u) {
      double s0 = 0.0;
      for (int i = 0; i < xt.rows; ++i)
        s0 += xt(i, static_cast<int>(u)) * xt(i, static_cast<int>(u));
      double sig = st.alpha_sigma[u] > 0.0 ? st.alpha_sigma[u] : 1.0;
      worst_z = std::max(worst_z, std::abs(st.alpha_hat[u] - st.alpha * s0) / sig);
    }
    rep["separator_stats"] = json{{"alpha", st.alpha},
                                  {"trials", st.trials},
                                  {"distortion_hat", st.distortion_hat},
                                  {"distortion_max", st.distortion_max},
                                  {"condition2_flags", st.condition2_flags.size()},
                                  {"worst_alpha_z", worst_z}};
  }
  emit(rep, c.out);
  return rs.inconclusive ? 2 : 0;
}

int cmd_genus_round(const Common& c, const std::string& graph_path, int r, double eps,
                    double beta_pad, int draws, double delta_override) {
  Graph g = load_graph(graph_path);
  VectorSolution sol = solve_best_embedding(g);
  GenusRound gr = genus_round(g, sol, r, eps, beta_pad, c.seed, draws, delta_override);
  json rep{{"command", "genus-round"},
           {"seed", c.seed},
           {"r", r},
           {"eps", eps},
           {"beta_pad", gr.beta_pad},
           {"phi_sdp", gr.phi_sdp},
           {"delta", gr.delta},
           {"constant", gr.constant},
           {"is_cut", gr.is_cut},
           {"inconclusive", gr.inconclusive},
           {"note", gr.note}};
  if (!gr.cut.set.empty()) {
    rescore(g, gr.cut, c.tol);
    rep["cut"] = cut_json(gr.cut);
  }
  if (!gr.small_set.set.empty()) {
    rescore(g, gr.small_set, c.tol);
    rep["small_set"] = cut_json(gr.small_set);
  }
  emit(rep, c.out);
  return gr.inconclusive ? 2 : 0;
}

int cmd_flow_build(const Common& c, const std::string& graph_path, int r, double d,
                   int iterations) {
  Graph g = load_graph(graph_path);
  SpectralFlowResult sf = construct_spectral_flow(g, r, d, iterations);
  json rep{{"command", "flow-build"},
           {"seed", c.seed},
           {"r", r},
           {"d", d},
           {"flow", flow_to_json(sf.flow)},
           {"certificate", cert_to_json(sf.cert)},
           {"objective_history", sf.objective_history},
           {"valid", sf.cert.valid}};
  emit(rep, c.out);
  return sf.cert.valid ? 0 : 2;
}

int cmd_flow_verify(const Common& c, const std::string& graph_path, const std::string& flow_path,
                    const std::vector<double>& spectral, const std::vector<double>& sse,
                    const std::vector<double>& weak) {
  Graph g = load_graph(graph_path);
  MultiFlow f = flow_from_file(flow_path, g.n);
  CapacityCheck cap = verify_capacity(f, g);
  bool all = cap.pass;
  json rep{{"command", "flow-verify"},
           {"seed", c.seed},
           {"capacity", json{{"pass", cap.pass}, {"load", cap.load}, {"cap", cap.cap}}}};
  if (!spectral.empty()) {
    SpectralCertificate cert =
        verify_spectral(f, static_cast<int>(spectral[0]), spectral[1], spectral[2]);
    rep["certificate"] = cert_to_json(cert);
    rep["certificate"]["valid"] = cert.valid;
    all = all && cert.valid;
  }
  auto sse_json = [](const SseCheck& s) {
    return json{{"pass", s.pass},
                {"witness", s.witness},
                {"crossing", s.crossing},
                {"ratio", s.ratio}};
  };
  if (!sse.empty()) {
    SseCheck s = verify_sse(f, sse[0], sse[1], sse[2]);
    rep["sse"] = sse_json(s);
    all = all && s.pass;
  }
  if (!weak.empty()) {
    SseCheck s = verify_weak_sse(f, weak[0], weak[1], weak[2]);
    rep["weak_sse"] = sse_json(s);
    all = all && s.pass;
  }
  rep["pass"] = all;
  emit(rep, c.out);
  return all ? 0 : 2;
}

int cmd_flow_round(const Common& c, const std::string& graph_path, const std::string& cert_path,
                   const std::string& flow_path, double eps, const std::string& mode_name,
                   double balance, double net_resolution) {
  Graph g = load_graph(graph_path);
  json cj = load_json(cert_path);
  const json& cert_obj = cj.contains("certificate") ? cj.at("certificate") : cj;
  SpectralCertificate stored = cert_from_json(cert_obj);
  MultiFlow f;
  if (!flow_path.empty())
    f = flow_from_file(flow_path, g.n);
  else if (cj.contains("flow"))
    f = flow_from_json(cj.at("flow"), g.n);
  else
    throw std::invalid_argument("flow-round: no flow (embed one in the cert file or use --flow)");
  // Certificates are never trusted from disk; re-derive validity from the
  // flow that was actually supplied.
  SpectralCertificate cert = verify_spectral(f, stored.r, stored.d, stored.lambda);
  RoundMode mode;
  if (mode_name == "sparsest")
    mode.kind = RoundMode::Kind::sparsest;
  else if (mode_name == "expansion")
    mode.kind = RoundMode::Kind::expansion;
  else if (mode_name == "balanced")
    mode.kind = RoundMode::Kind::balanced;
  else
    throw std::invalid_argument("mode must be sparsest, expansion, or balanced");
  mode.c = balance;
  CutResult cut = flow_round(g, f, cert, eps, mode, net_resolution);
  rescore(g, cut, c.tol);
  json rep{{"command", "flow-round"},
           {"seed", c.seed},
           {"eps", eps},
           {"mode", mode_name},
           {"certificate", cert_to_json(cert)},
           {"cut", cut_json(cut)},
           {"sparsity", cut.sparsity}};
  emit(rep, c.out);
  return 0;
}

int cmd_brute(const Common& c, const std::string& graph_path, double r, double balance) {
  Graph g = load_graph(graph_path);
  CutResult best = brute_sparsest(g);
  rescore(g, best, c.tol);
  json rep{{"command", "brute"},
           {"seed", c.seed},
           {"n", g.n},
           {"cut", cut_json(best)},
           {"sparsity", best.sparsity}};
  if (r > 1.0) {
    SmallSetResult s = brute_small_set(g, r);
    rep["small_set"] = json{{"phi", s.phi},
                            {"phi_witness", s.phi_witness},
                            {"expansion", s.expansion},
                            {"expansion_witness", s.expansion_witness}};
  }
  if (balance > 0.0) {
    CutResult b = brute_balanced(g, balance);
    rescore(g, b, c.tol);
    rep["balanced"] = cut_json(b);
  }
  emit(rep, c.out);
  return 0;
}

int cmd_gen_planted(const Common& c, const std::string& out, int n, double rho, int inner_degree,
                    int cross_edges, double check_eps, double check_c0) {
  PlantedInstance inst = generate_planted(n, rho, inner_degree, cross_edges, c.seed);
  json sidecar{{"planted", inst.planted}, {"rho", inst.rho}};
  json rep{{"command", "gen-planted"},
           {"seed", c.seed},
           {"n", n},
           {"rho", inst.rho},
           {"inner_degree", inner_degree},
           {"cross_edges", cross_edges},
           {"planted", inst.planted},
           {"planted_cut", cut_json(inst.planted_cut)},
           {"phi_planted", inst.phi_planted},
           {"side_expansion", inst.side_expansion},
           {"rest_expansion", inst.rest_expansion}};
  if (check_eps > 0.0) {
    HypothesisReport hr = check_hypothesis(inst, check_eps, check_c0);
    rep["hypothesis"] = json{{"pass", hr.pass},     {"delta", hr.delta},
                             {"margin", hr.margin}, {"witness", hr.witness},
                             {"cross_heavy", hr.cross_heavy}, {"note", hr.note}};
  }
  if (!out.empty()) {
    save_json(graph_to_json(inst.graph), out);
    save_json(sidecar, out + ".planted.json");
    rep["graph_file"] = out;
    rep["sidecar_file"] = out + ".planted.json";
  } else {
    rep["graph"] = graph_to_json(inst.graph);
  }
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int cmd_bench(const Common& c, const std::vector<std::string>& graph_paths, int r, double eps) {
  std::ostringstream csv;
  csv << "instance,algorithm,sparsity,oracle,ratio,seconds\n";
  auto timed = [](auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    CutResult cut = fn();
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return std::pair<CutResult, double>(cut, dt.count());
  };
  for (const std::string& path : graph_paths) {
    std::string name = path;
    std::size_t slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    Graph g = normalize_regular(load_graph(path));
    double oracle =
        g.n <= 24 ? brute_sparsest(g).sparsity : std::numeric_limits<double>::quiet_NaN();
    VectorSolution sol = solve_best_embedding(g);
    auto row = [&](const std::string& algo, const CutResult& cut, double secs) {
      double ratio = oracle > 0.0 ? cut.sparsity / oracle
                                  : (cut.sparsity <= c.tol ? 1.0
                                                           : std::numeric_limits<double>::infinity());
      csv << name << "," << algo << "," << cut.sparsity << "," << oracle << "," << ratio << ","
          << secs << "\n";
    };
    {
      auto [cut, secs] = timed([&] { return gs_rounding(g, sol, r, eps, c.seed).best_cut; });
      row("gs-round", cut, secs);
    }
    {
      auto [cut, secs] = timed([&] {
        RoundOrSmall rs = round_or_small_set(g, r, eps, c.seed, &sol);
        return rs.is_cut ? rs.cut : (!rs.small_set.set.empty() ? rs.small_set : rs.cut);
      });
      row("orth-round", cut, secs);
    }
    {
      auto [cut, secs] = timed([&] {
        GenusRound gr = genus_round(g, sol, r, eps, 3.0, c.seed);
        return gr.is_cut ? gr.cut : gr.small_set;
      });
      if (!cut.set.empty()) row("genus-round", cut, secs);
    }
    {
      auto [cut, secs] = timed([&] {
        SpectralFlowResult sf = construct_spectral_flow(g, r, 1.0);
        return flow_round(g, sf.flow, sf.cert, eps, RoundMode{}, 1.0);
      });
      row("flow-round", cut, secs);
    }
  }
  if (!c.out.empty()) {
    json rep{{"command", "bench"}, {"seed", c.seed}, {"csv", c.out},
             {"instances", graph_paths.size()}};
    std::ofstream fout(c.out);
    if (!fout) throw std::runtime_error("bench: cannot write " + c.out);
    fout << csv.str();
    std::cout << rep.dump(2) << "\n";
  } else {
    std::cout << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparsest-cut rounding toolkit"};
  app.require_subcommand(1);

  Common common;
  std::string graph_path, flow_path, cert_path, mode_name = "sparsest", out_graph;
  double mu = 0.0, eps = 0.25, beta_pad = 3.0, delta_override = 0.0, d = 1.0;
  double brute_r = 0.0, balance = 0.0, rho = 0.5, check_eps = 0.0, check_c0 = 1.0;
  double net_resolution = 0.25, flow_balance = 0.5;
  int r = 2, trials = 0, draws = 64, iterations = 300, n = 8, inner_degree = 3, cross_edges = 2;
  std::vector<double> spectral, sse, weak;
  std::vector<std::string> graph_paths;

  CLI::App* c_embed = app.add_subcommand("embed", "solve the base vector relaxation");
  add_common(c_embed, common);
  c_embed->add_option("--graph", graph_path, "graph JSON")->required();
  c_embed->add_option("--mu", mu, "balance parameter; outside (0,1) sweeps all balances");

  CLI::App* c_gs = app.add_subcommand("gs-round", "column-selection threshold rounding");
  add_common(c_gs, common);
  c_gs->add_option("--graph", graph_path, "graph JSON")->required();
  c_gs->add_option("--r", r, "target rank")->required();
  c_gs->add_option("--eps", eps, "selection slack");
  c_gs->add_option("--mu", mu, "balance parameter; outside (0,1) sweeps all balances");

  CLI::App* c_orth = app.add_subcommand("orth-round", "round-or-small-set via separators");
  add_common(c_orth, common);
  c_orth->add_option("--graph", graph_path, "graph JSON (normalized on load)")->required();
  c_orth->add_option("--r", r, "small-set parameter")->required();
  c_orth->add_option("--eps", eps, "approximation target");
  c_orth->add_option("--trials", trials, "also estimate separator statistics with this many draws");

  CLI::App* c_genus = app.add_subcommand("genus-round", "padded-decomposition rounding");
  add_common(c_genus, common);
  c_genus->add_option("--graph", graph_path, "graph JSON")->required();
  c_genus->add_option("--r", r, "small-set parameter")->required();
  c_genus->add_option("--eps", eps, "approximation target");
  c_genus->add_option("--beta-pad", beta_pad, "padding parameter of the decomposition");
  c_genus->add_option("--draws", draws, "decomposition draws");
  c_genus->add_option("--delta", delta_override, "override the block-diameter scale");

  CLI::App* c_build = app.add_subcommand("flow-build", "construct a spectral SSE flow");
  add_common(c_build, common);
  c_build->add_option("--graph", graph_path, "graph JSON")->required();
  c_build->add_option("--r", r, "certificate order")->required();
  c_build->add_option("--d", d, "demand degree target");
  c_build->add_option("--iterations", iterations, "Frank-Wolfe iterations");

  CLI::App* c_verify = app.add_subcommand("flow-verify", "verify capacity / SSE / spectral");
  add_common(c_verify, common);
  c_verify->add_option("--graph", graph_path, "graph JSON")->required();
  c_verify->add_option("--flow", flow_path, "flow JSON")->required();
  c_verify->add_option("--spectral", spectral, "r d lambda")->expected(3);
  c_verify->add_option("--sse", sse, "r d beta (exhaustive, n <= 24)")->expected(3);
  c_verify->add_option("--weak-sse", weak, "r d beta (restricted size window)")->expected(3);

  CLI::App* c_fround = app.add_subcommand("flow-round", "eigenspace rounding from a certificate");
  add_common(c_fround, common);
  c_fround->add_option("--graph", graph_path, "graph JSON")->required();
  c_fround->add_option("--cert", cert_path, "certificate JSON (may embed the flow)")->required();
  c_fround->add_option("--flow", flow_path, "flow JSON when not embedded in --cert");
  c_fround->add_option("--eps", eps, "approximation target");
  c_fround->add_option("--mode", mode_name, "sparsest | expansion | balanced");
  c_fround->add_option("--balance", flow_balance, "balanced-mode side fraction");
  c_fround->add_option("--net-resolution", net_resolution, "eigenspace net step");

  CLI::App* c_brute = app.add_subcommand("brute", "exhaustive cut oracle (n <= 24)");
  add_common(c_brute, common);
  c_brute->add_option("--graph", graph_path, "graph JSON")->required();
  c_brute->add_option("--r", brute_r, "also report small-set minima at this r");
  c_brute->add_option("--balance", balance, "also report the balanced minimum at this fraction");

  CLI::App* c_gen = app.add_subcommand("gen-planted", "seeded planted-cut instance");
  add_common(c_gen, common);
  c_gen->add_option("--n", n, "vertex count")->required();
  c_gen->add_option("--rho", rho, "planted side fraction");
  c_gen->add_option("--inner-degree", inner_degree, "degree inside each side");
  c_gen->add_option("--cross", cross_edges, "edges across the planted cut");
  c_gen->add_option("--check-eps", check_eps, "run the local-expansion check at this eps");
  c_gen->add_option("--check-c0", check_c0, "constant for the local-expansion check");

  CLI::App* c_bench = app.add_subcommand("bench", "CSV benchmark over all rounding paths");
  add_common(c_bench, common);
  c_bench->add_option("--graph", graph_paths, "graph JSON files")->required()->expected(-1);
  c_bench->add_option("--r", r, "small-set parameter");
  c_bench->add_option("--eps", eps, "approximation target");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*c_embed) return cmd_embed(common, graph_path, mu);
    if (*c_gs) return cmd_gs_round(common, graph_path, r, eps, mu);
    if (*c_orth) return cmd_orth_round(common, graph_path, r, eps, trials);
    if (*c_genus)
      return cmd_genus_round(common, graph_path, r, eps, beta_pad, draws, delta_override);
    if (*c_build) return cmd_flow_build(common, graph_path, r, d, iterations);
    if (*c_verify) return cmd_flow_verify(common, graph_path, flow_path, spectral, sse, weak);
    if (*c_fround)
      return cmd_flow_round(common, graph_path, cert_path, flow_path, eps, mode_name,
                            flow_balance, net_resolution);
    if (*c_brute) return cmd_brute(common, graph_path, brute_r, balance);
    if (*c_gen)
      return cmd_gen_planted(common, common.out, n, rho, inner_degree, cross_edges, check_eps,
                             check_c0);
    if (*c_bench) return cmd_bench(common, graph_paths, r, eps);
  } catch (const std::exception& e) {
    std::cerr << "sse-cut: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
