// Command-line front end for the 1-RCSG termination-game workbench.
//
// Exit status: 0 on success, 1 when the input model fails validation,
// 2 on usage errors (bad flags, unreadable files, malformed input).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rcsg/improvement.hpp"
#include "rcsg/model_io.hpp"
#include "rcsg/qualitative.hpp"
#include "rcsg/reductions.hpp"
#include "rcsg/simulate.hpp"
#include "rcsg/solver.hpp"
#include "rcsg/validate.hpp"

namespace {

using nlohmann::json;
using namespace rcsg;

constexpr int kExitOk = 0;
constexpr int kExitInvalidModel = 1;
constexpr int kExitUsage = 2;

struct InvalidModel : std::runtime_error {
  explicit InvalidModel(std::string report) : std::runtime_error(std::move(report)) {}
};

Rcsg load_checked(const std::string& path, bool single_exit) {
  Rcsg model = load_model_file(path);
  ValidationReport report = validate(model, {.require_single_exit = single_exit});
  if (!report.ok()) throw InvalidModel(report.to_string());
  return model;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

json values_json(const EquationSystem& sys, const ValueVector& x) {
  json j = json::object();
  for (int v = 0; v < sys.size(); ++v)
    j[sys.vertex_ids[static_cast<std::size_t>(v)]] = x[static_cast<std::size_t>(v)];
  return j;
}

json strategy_json(const RsmStrategy& s) {
  json j = json::object();
  for (const auto& [vertex, mix] : s.at) {
    json moves = json::object();
    for (std::size_t i = 0; i < mix.moves.size(); ++i)
      moves[mix.moves[i]] = mix.probabilities[i];
    j[vertex] = std::move(moves);
  }
  return j;
}

RsmStrategy strategy_from_json(const json& j) {
  RsmStrategy s;
  for (auto it = j.begin(); it != j.end(); ++it) {
    MixedStrategy mix;
    for (auto mv = it.value().begin(); mv != it.value().end(); ++mv) {
      mix.moves.push_back(mv.key());
      mix.probabilities.push_back(mv.value().get<double>());
    }
    s.at[it.key()] = std::move(mix);
  }
  return s;
}

RsmStrategy load_strategy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open strategy file '" + path + "'");
  json j = json::parse(in);
  return strategy_from_json(j.contains("at") ? j["at"] : j);
}

int cmd_validate(const std::string& path, bool single_exit) {
  Rcsg model = load_model_file(path);
  ValidationReport report = validate(model, {.require_single_exit = single_exit});
  std::cout << report.to_string();
  return report.ok() ? kExitOk : kExitInvalidModel;
}

int cmd_solve(const std::string& path, double tol, long max_iter,
              const std::string& out) {
  Rcsg model = load_checked(path, true);
  EquationSystem sys = build_system(model);
  SolveResult res = value_iterate(sys, {tol, max_iter});
  for (int v = 0; v < sys.size(); ++v)
    std::cout << sys.vertex_ids[static_cast<std::size_t>(v)] << " = "
              << fmt6(res.values[static_cast<std::size_t>(v)]) << "\n";
  std::cout << "# iterations " << res.iterations << " residual " << res.residual
            << " converged " << (res.converged ? "yes" : "no") << "\n";
  if (!out.empty()) {
    write_json(out, json{{"values", values_json(sys, res.values)},
                         {"iterations", res.iterations},
                         {"residual", res.residual},
                         {"converged", res.converged}});
  }
  return kExitOk;
}

int cmd_zeroset(const std::string& path) {
  Rcsg model = load_checked(path, true);
  ZeroSetResult res = zero_set(model);
  for (const auto& v : res.zero_vertices) std::cout << v << "\n";
  std::cout << "# size " << res.zero_vertices.size() << " iterations "
            << res.iterations << "\n";
  return kExitOk;
}

int cmd_bounds(const std::string& path, double tol, double iter_tol, long max_iter,
               const std::string& out) {
  Rcsg model = load_checked(path, true);
  EquationSystem sys = build_system(model);
  IterOptions iter{iter_tol, max_iter};
  AlmostSureReport report = almost_sure_report(model, tol, iter);
  SolveResult mid = value_iterate(sys, iter);
  std::set<std::string> zero;
  for (const auto& v : zero_set(model).zero_vertices) zero.insert(v);
  std::cout << "# vertex zero lower upper verdict\n";
  for (const auto& row : report.rows)
    std::cout << row.vertex << " " << (zero.count(row.vertex) ? "Z" : "-") << " "
              << fmt6(row.lower) << " " << fmt6(row.upper) << " "
              << verdict_name(row.verdict) << "\n";
  std::cout << "# bounds_converged " << (report.bounds_converged ? "yes" : "no") << "\n";
  if (!out.empty()) {
    BoundsCertificate cert = certify_bounds(sys, mid.values, iter);
    json verdicts = json::object();
    json lower = json::object(), upper = json::object();
    json in_zero = json::object();
    for (const auto& row : report.rows) {
      verdicts[row.vertex] = verdict_name(row.verdict);
      lower[row.vertex] = row.lower;
      upper[row.vertex] = row.upper;
      in_zero[row.vertex] = zero.count(row.vertex) > 0;
    }
    write_json(out, json{{"lower", lower},
                         {"upper", upper},
                         {"verdicts", verdicts},
                         {"zero_set", in_zero},
                         {"sigma", strategy_json(cert.witness_sigma)},
                         {"tau", strategy_json(cert.witness_tau)},
                         {"bounds_converged", report.bounds_converged}});
  }
  return kExitOk;
}

int cmd_improve(const std::string& path, double eps, long max_rounds,
                const std::string& trace_path, const std::string& out) {
  Rcsg model = load_checked(path, true);
  EquationSystem sys = build_system(model);
  VertexTable table = VertexTable::build(model);
  ImproveOptions opts;
  opts.eps = eps;
  opts.max_rounds = max_rounds;
  ImproveResult res = strategy_improve(sys, uniform_strategy(table, 1), opts);

  for (const auto& [vertex, mix] : res.sigma.at) {
    std::cout << vertex << ":";
    for (std::size_t i = 0; i < mix.moves.size(); ++i)
      std::cout << " " << mix.moves[i] << "=" << fmt6(mix.probabilities[i]);
    std::cout << "\n";
  }
  for (int v = 0; v < sys.size(); ++v)
    std::cout << sys.vertex_ids[static_cast<std::size_t>(v)] << " = "
              << fmt6(res.values.values[static_cast<std::size_t>(v)]) << "\n";
  std::cout << "# rounds " << res.rounds << " converged "
            << (res.converged ? "yes" : "no") << "\n";
  if (!trace_path.empty()) {
    std::ofstream tf(trace_path);
    if (!tf) throw std::runtime_error("cannot write '" + trace_path + "'");
    tf << format_trace(res.trace);
  }
  if (!out.empty()) {
    write_json(out, json{{"sigma", strategy_json(res.sigma)},
                         {"values", values_json(sys, res.values.values)},
                         {"rounds", res.rounds},
                         {"converged", res.converged}});
  }
  return kExitOk;
}

int cmd_simulate(const std::string& path, const std::string& start,
                 const std::string& sigma_path, const std::string& tau_path,
                 long samples, long max_steps, std::uint64_t seed) {
  Rcsg model = load_checked(path, true);
  VertexTable table = VertexTable::build(model);
  RsmStrategy sigma =
      sigma_path.empty() ? uniform_strategy(table, 1) : load_strategy(sigma_path);
  RsmStrategy tau =
      tau_path.empty() ? uniform_strategy(table, 2) : load_strategy(tau_path);
  SimEstimate est =
      estimate_termination(table, sigma, tau, start, {samples, max_steps, seed});
  std::cout << "estimate " << fmt6(est.estimate) << " stderr " << fmt6(est.std_error)
            << "\n";
  std::cout << "# samples " << est.samples << " terminated " << est.terminated
            << " absorbed " << est.absorbed << " censored " << est.step_censored
            << "\n";
  return kExitOk;
}

int cmd_gadget(const std::string& a_csv, std::int64_t k, const std::string& out) {
  std::vector<std::int64_t> a_list;
  std::string item;
  std::istringstream in(a_csv);
  while (std::getline(in, item, ',')) a_list.push_back(std::stoll(item));
  SqrtSumInstance inst = sqrt_sum_instance(a_list, k);
  save_model_file(inst.model, out + ".model");

  json gadgets = json::array();
  for (const auto& g : inst.gadgets) {
    gadgets.push_back(json{{"a", g.a},
                           {"m", g.m.to_string()},
                           {"l", g.l.to_string()},
                           {"c1", g.c1.to_string()},
                           {"c2", g.c2.to_string()},
                           {"c3", g.c3.to_string()},
                           {"g", g.g.to_string()},
                           {"d", g.d.to_string()},
                           {"e", g.e.to_string()},
                           {"perfect_square", g.perfect_square}});
  }
  write_json(out + ".json", json{{"a_list", inst.a_list},
                                 {"k", inst.k},
                                 {"D", inst.D.to_string()},
                                 {"E", inst.E.to_string()},
                                 {"threshold", inst.threshold.to_string()},
                                 {"threshold_double", inst.threshold.to_double()},
                                 {"start", inst.start},
                                 {"query", "value(" + inst.start + ") >= threshold"},
                                 {"gadgets", gadgets}});
  std::cout << "wrote " << out << ".model and " << out << ".json (threshold "
            << inst.threshold.to_string() << " ~ " << fmt6(inst.threshold.to_double())
            << ")\n";
  return kExitOk;
}

int cmd_derandomize(const std::string& path, const std::string& out) {
  Rcsg model = load_checked(path, false);
  Rcsg result = derandomize(model);
  save_model_file(result, out);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_csg_to_rcsg(const std::string& path, const std::string& start,
                    const std::string& p_str, const std::string& out) {
  Rcsg model = load_checked(path, true);
  CsgReduction red = csg_quant_to_rcsg_qual(model, start, Rational::from_string(p_str));
  switch (red.kind) {
    case CsgReduction::Kind::ValueZero:
      std::cout << "certificate: CSG value at " << start << " is 0, below threshold\n";
      return kExitOk;
    case CsgReduction::Kind::ValueOne:
      std::cout << "certificate: CSG value at " << start << " is 1, meets threshold\n";
      return kExitOk;
    case CsgReduction::Kind::Model:
      save_model_file(red.model, out);
      std::cout << "wrote " << out << "; CSG value >= threshold iff value("
                << red.designated << ") = 1\n";
      return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-exit recursive concurrent stochastic game solver workbench"};
  app.require_subcommand(1);

  std::string model_path, out, start, sigma_path, tau_path, trace_path, a_csv, p_str;
  bool single_exit = false;
  double tol = 1e-9, eps = 1e-6, report_tol = 1e-6, bounds_iter_tol = 1e-12;
  long max_iter = 1'000'000, max_rounds = 10'000, samples = 100'000, max_steps = 10'000;
  long bounds_max_iter = 10'000'000;
  std::int64_t k = 0;
  std::uint64_t seed = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check model invariants");
  validate_cmd->add_option("model", model_path)->required();
  validate_cmd->add_flag("--single-exit", single_exit, "also require one exit per component");

  auto* solve_cmd = app.add_subcommand("solve", "value iteration to the least fixed point");
  solve_cmd->add_option("model", model_path)->required();
  solve_cmd->add_option("--tol", tol);
  solve_cmd->add_option("--max-iter", max_iter);
  solve_cmd->add_option("--out", out, "full-precision JSON sidecar");

  auto* improve_cmd = app.add_subcommand("improve", "strategy improvement for player 1");
  improve_cmd->add_option("model", model_path)->required();
  improve_cmd->add_option("--eps", eps);
  improve_cmd->add_option("--max-rounds", max_rounds);
  improve_cmd->add_option("--trace", trace_path, "trace file (round vertex old new val)");
  improve_cmd->add_option("--out", out);

  auto* zero_cmd = app.add_subcommand("zeroset", "vertices with termination value 0");
  zero_cmd->add_option("model", model_path)->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "two-sided certificates and value-1 verdicts");
  bounds_cmd->add_option("model", model_path)->required();
  bounds_cmd->add_option("--tol", report_tol, "verdict threshold on 1 - value");
  bounds_cmd->add_option("--iter-tol", bounds_iter_tol, "inner value-iteration tolerance");
  bounds_cmd->add_option("--max-iter", bounds_max_iter);
  bounds_cmd->add_option("--out", out);

  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo termination estimate");
  sim_cmd->add_option("model", model_path)->required();
  sim_cmd->add_option("--start", start)->required();
  sim_cmd->add_option("--sigma", sigma_path, "player 1 strategy JSON (default uniform)");
  sim_cmd->add_option("--tau", tau_path, "player 2 strategy JSON (default uniform)");
  sim_cmd->add_option("--samples", samples);
  sim_cmd->add_option("--max-steps", max_steps);
  sim_cmd->add_option("--seed", seed);

  auto* gadget_cmd = app.add_subcommand("gadget", "hardness gadget generators");
  gadget_cmd->require_subcommand(1);
  auto* sqrt_cmd = gadget_cmd->add_subcommand("sqrt-sum", "square-root-sum instance");
  sqrt_cmd->add_option("--a", a_csv, "comma-separated integers > 1")->required();
  sqrt_cmd->add_option("--k", k, "threshold integer")->required();
  sqrt_cmd->add_option("--out", out, "output prefix")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "model-to-model reductions");
  reduce_cmd->require_subcommand(1);
  auto* derand_cmd = reduce_cmd->add_subcommand("derandomize", "remove probabilistic vertices");
  derand_cmd->add_option("model", model_path)->required();
  derand_cmd->add_option("--out", out)->required();
  auto* c2r_cmd = reduce_cmd->add_subcommand("csg-to-rcsg",
                                             "quantitative CSG to qualitative 1-RCSG");
  c2r_cmd->add_option("model", model_path)->required();
  c2r_cmd->add_option("--start", start)->required();
  c2r_cmd->add_option("--p", p_str, "rational threshold, e.g. 1/2")->default_val("1/2");
  c2r_cmd->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
    if (validate_cmd->parsed()) return cmd_validate(model_path, single_exit);
    if (solve_cmd->parsed()) return cmd_solve(model_path, tol, max_iter, out);
    if (improve_cmd->parsed()) return cmd_improve(model_path, eps, max_rounds, trace_path, out);
    if (zero_cmd->parsed()) return cmd_zeroset(model_path);
    if (bounds_cmd->parsed())
      return cmd_bounds(model_path, report_tol, bounds_iter_tol, bounds_max_iter, out);
    if (sim_cmd->parsed())
      return cmd_simulate(model_path, start, sigma_path, tau_path, samples, max_steps, seed);
    if (gadget_cmd->parsed() && sqrt_cmd->parsed()) return cmd_gadget(a_csv, k, out);
    if (reduce_cmd->parsed() && derand_cmd->parsed()) return cmd_derandomize(model_path, out);
    if (reduce_cmd->parsed() && c2r_cmd->parsed())
      return cmd_csg_to_rcsg(model_path, start, p_str, out);
    std::cerr << app.help() << "\n";
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const InvalidModel& e) {
    std::cerr << e.what();
    return kExitInvalidModel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
