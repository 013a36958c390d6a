// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: solve, certify, cycle, generate, spectrum, bench.

#include "rotavg/certify.hpp"
#include "rotavg/cycle.hpp"
#include "rotavg/io.hpp"
#include "rotavg/solver.hpp"
#include "rotavg/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
using namespace rotavg;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

struct Common {
  double eps = 1e-15;
  int max_iter = 100;
  double sigma = -1e-2;
  std::uint64_t seed = 1;
  std::string format = "human";
  std::string out;
  bool timing = false;
};

void add_common(CLI::App* app, Common& c, bool solver_flags) {
  if (solver_flags) {
    app->add_option("--eps", c.eps, "certificate tolerance")->check(CLI::PositiveNumber);
    app->add_option("--max-iter", c.max_iter, "maximum outer iterations")->check(CLI::NonNegativeNumber);
    app->add_option("--sigma", c.sigma, "eigensolver shift (negative)");
    app->add_flag("--timing", c.timing, "record wall times in the trace");
  }
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"human", "records"}));
  app->add_option("--out", c.out, "output path");
}

SolveOptions solve_options(const Common& c) {
  SolveOptions o;
  o.epsilon = c.eps;
  o.max_iterations = c.max_iter;
  o.sigma = c.sigma;
  o.seed = c.seed;
  o.validate();
  return o;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

json lambda_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

json certificate_json(const Certificate& c) {
  return {{"certified", c.is_certified}, {"epsilon", c.epsilon},           {"cost", c.cost},
          {"duality_gap", c.duality_gap}, {"gap_lower_bound", c.gap_lower_bound},
          {"kkt_residual", c.kkt_residual}, {"lambda_small", lambda_json(c.lambda_small)}};
}

void print_certificate(std::ostream& os, const Certificate& c) {
  os << "verdict          " << (c.is_certified ? "certified" : "not certified") << '\n'
     << "cost             " << fmt("%.9f", c.cost) << '\n'
     << "lambda_small    ";
  for (Eigen::Index k = 0; k < c.lambda_small.size(); ++k) os << ' ' << fmt("%.3e", c.lambda_small[k]);
  os << '\n'
     << "duality gap      " << fmt("%.3e", c.duality_gap) << '\n'
     << "gap lower bound  " << fmt("%.3e", c.gap_lower_bound) << '\n'
     << "kkt residual     " << fmt("%.3e", c.kkt_residual) << '\n'
     << "epsilon          " << fmt("%.3e", c.epsilon) << '\n';
}

std::vector<TraceRecord> maybe_strip_timing(std::vector<TraceRecord> trace, bool timing) {
  if (!timing) {
    for (TraceRecord& t : trace) t.wall_time_ns = 0;
  }
  return trace;
}

template <typename F>
void write_to(const std::string& path, F&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  body(f);
}

int run_solve(const std::string& input, const Common& c, bool info_weights) {
  const SolveOptions opts = solve_options(c);
  const ParsedGraph parsed = load_g2o(input, {info_weights});
  const Connection conn = assemble_connection(parsed.graph);
  const SolveResult result = primal_dual_solve(conn, opts);
  const Certificate cert = certificate_of(result, conn.adjacency);
  const auto trace = maybe_strip_timing(result.trace, c.timing);
  if (!c.out.empty()) {
    write_to(c.out, [&](std::ostream& os) {
      export_solution(os, result.state.rotations, cert, trace, parsed.original_ids);
    });
  }
  if (c.format == "records") {
    json rec = {{"command", "solve"},
                {"input", input},
                {"n", parsed.graph.num_vertices()},
                {"m", parsed.graph.num_edges()},
                {"duplicates_dropped", parsed.duplicates_dropped},
                {"converged", result.converged},
                {"iterations", result.state.iteration},
                {"certificate", certificate_json(cert)}};
    json rows = json::array();
    for (const TraceRecord& t : trace) {
      rows.push_back({{"iteration", t.iteration}, {"cost", t.cost}, {"lambda_min", t.lambda_min},
                      {"wall_time_ns", t.wall_time_ns}});
    }
    rec["trace"] = rows;
    std::cout << rec.dump() << '\n';
  } else {
    std::cout << "input            " << input << '\n'
              << "vertices/edges   " << parsed.graph.num_vertices() << " / " << parsed.graph.num_edges() << '\n'
              << "converged        " << (result.converged ? "yes" : "no") << " after " << result.state.iteration
              << " dual updates\n";
    print_certificate(std::cout, cert);
  }
  if (!result.converged) {
    std::cerr << "rotavg: solver did not converge in " << opts.max_iterations << " iterations\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

int run_certify(const std::string& input, const std::string& solution_path, double eps, const Common& c,
                bool info_weights) {
  const ParsedGraph parsed = load_g2o(input, {info_weights});
  std::ifstream f(solution_path);
  if (!f) throw std::runtime_error("cannot open '" + solution_path + "'");
  const SolutionRecord record = read_solution(f);
  const int n = parsed.graph.num_vertices();
  if (static_cast<int>(record.parameters.size()) != n || record.dim != parsed.graph.dim()) {
    throw std::runtime_error("solution does not match the graph's size or dimension");
  }
  std::map<long long, int> compact;
  for (int v = 0; v < n; ++v) compact[parsed.original_ids[v]] = v;
  const RotationStack parsed_rotations = record.rotations();
  RotationStack r(n);
  std::vector<bool> seen(n, false);
  for (int k = 0; k < n; ++k) {
    const auto it = compact.find(record.ids[k]);
    if (it == compact.end() || seen[it->second]) {
      throw std::runtime_error("solution vertex id " + std::to_string(record.ids[k]) + " is not in the graph");
    }
    seen[it->second] = true;
    r[it->second] = parsed_rotations[k];
  }
  EigenOptions eig;
  eig.seed = c.seed;
  const Certificate cert = certify_solution(r, assemble_connection(parsed.graph).adjacency, eps, eig);
  if (c.format == "records") {
    std::cout << json{{"command", "certify"}, {"input", input}, {"solution", solution_path},
                      {"certificate", certificate_json(cert)}}
                     .dump()
              << '\n';
  } else {
    print_certificate(std::cout, cert);
  }
  return kExitOk;
}

struct CycleSource {
  std::string input;
  int n = 0;
  double noise = 0.0;
};

CycleProblem load_cycle(const CycleSource& src, std::uint64_t seed) {
  if (!src.input.empty()) return cycle_from_graph(load_g2o(src.input).graph).problem;
  if (src.n < 3) throw std::invalid_argument("give an input file or --n >= 3");
  return make_cycle_problem(src.n, {src.noise, seed}).problem;
}

int run_cycle(const CycleSource& src, const Common& c) {
  const CycleProblem problem = load_cycle(src, c.seed);
  const NthRoots roots = nth_roots(cycle_error(problem), problem.n());
  const auto points = all_stationary_points(problem);
  if (!c.out.empty()) {
    write_to(c.out, [&](std::ostream& os) { export_solution(os, points[0].rotations, std::nullopt, {}); });
  }
  if (c.format == "records") {
    json rows = json::array();
    for (const auto& s : points) {
      rows.push_back({{"k", s.k}, {"residual_angle", s.residual_angle}, {"cost", s.cost}, {"tie", s.tie}});
    }
    std::cout << json{{"command", "cycle"}, {"n", problem.n()}, {"gamma", roots.gamma},
                      {"axis", {roots.axis[0], roots.axis[1], roots.axis[2]}},
                      {"conventional_axis", roots.conventional_axis}, {"optimal_cost", points[0].cost},
                      {"stationary", rows}}
                     .dump()
              << '\n';
    return kExitOk;
  }
  std::cout << "n                " << problem.n() << '\n'
            << "cycle error      angle " << fmt("%.12f", roots.gamma) << " axis (" << fmt("%.6f", roots.axis[0])
            << ", " << fmt("%.6f", roots.axis[1]) << ", " << fmt("%.6f", roots.axis[2]) << ")"
            << (roots.conventional_axis ? " [conventional]" : "") << '\n'
            << "optimal cost     " << fmt("%.10f", points[0].cost) << (points[0].tie ? " (tie with k = n-1)" : "")
            << "\n\n"
            << "   k   residual angle               cost\n";
  for (const auto& s : points) {
    std::printf("%4d %16.12f %18.10f\n", s.k, s.residual_angle, s.cost);
  }
  return kExitOk;
}

int run_spectrum(const CycleSource& src, const Common& c) {
  const CycleProblem problem = load_cycle(src, c.seed);
  const std::vector<double> closed = adjacency_spectrum(problem);
  const Eigen::MatrixXd dense = assemble_connection(problem.to_pose_graph()).adjacency.to_dense();
  const Eigen::VectorXd numeric = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense, Eigen::EigenvaluesOnly).eigenvalues();
  double worst = 0.0;
  for (std::size_t k = 0; k < closed.size(); ++k) worst = std::max(worst, std::abs(closed[k] - numeric[k]));
  if (c.format == "records") {
    std::cout << json{{"command", "spectrum"}, {"n", problem.n()}, {"closed_form", closed},
                      {"numeric", std::vector<double>(numeric.data(), numeric.data() + numeric.size())},
                      {"max_abs_difference", worst}}
                     .dump()
              << '\n';
    return kExitOk;
  }
  std::cout << "  index        closed form            numeric\n";
  // Values below the printed precision are shown as 0 rather than -0.
  auto shown = [](double v) { return std::abs(v) < 5e-13 ? 0.0 : v; };
  for (std::size_t k = 0; k < closed.size(); ++k) {
    std::printf("%7zu %18.12f %18.12f\n", k, shown(closed[k]), shown(numeric[k]));
  }
  std::cout << "max |difference| " << fmt("%.3e", worst) << '\n';
  return kExitOk;
}

int run_generate(const std::string& kind, int n, double noise, double density, const Common& c) {
  if (kind == "cycle") {
    const SyntheticCycle s = make_cycle_problem(n, {noise, c.seed});
    write_to(c.out, [&](std::ostream& os) { write_g2o(os, s.problem.to_pose_graph()); });
  } else {
    const SyntheticGraph s = make_random_problem(n, density, {noise, c.seed});
    write_to(c.out, [&](std::ostream& os) { write_g2o(os, s.graph); });
    if (!c.out.empty()) {
      std::cerr << "fiedler " << fmt("%.6f", s.fiedler) << "  |A~ - A|_2 " << fmt("%.6f", s.noise_norm) << '\n';
    }
  }
  return kExitOk;
}

struct BenchRow {
  std::string label;
  int n = 0;
  int m = 0;
  double sigma = 0.0;
  int trials = 0;
  double abs_lambda = 0.0;  // worst |lambda_1|
  double cost = 0.0;        // mean f*
  int iterations = 0;       // worst
  bool all_certified = true;
  double seconds = 0.0;     // mean
};

void emit_bench(const std::vector<BenchRow>& rows, const Common& c) {
  if (c.format == "records") {
    for (const BenchRow& r : rows) {
      std::cout << json{{"command", "bench"}, {"label", r.label}, {"n", r.n}, {"m", r.m}, {"sigma", r.sigma},
                        {"trials", r.trials}, {"max_abs_lambda1", r.abs_lambda}, {"mean_cost", r.cost},
                        {"max_iterations", r.iterations}, {"all_certified", r.all_certified},
                        {"mean_seconds", r.seconds}}
                       .dump()
                << '\n';
    }
    return;
  }
  std::printf("%-24s %6s %7s %6s %6s %11s %18s %5s %9s %10s\n", "problem", "n", "m", "sigma", "trials", "|lambda1|",
              "f*", "iter", "certified", "time [s]");
  for (const BenchRow& r : rows) {
    std::printf("%-24s %6d %7d %6.2f %6d %11.2e %18.6f %5d %9s %10.4f\n", r.label.c_str(), r.n, r.m, r.sigma,
                r.trials, r.abs_lambda, r.cost, r.iterations, r.all_certified ? "yes" : "no", r.seconds);
  }
}

void accumulate(BenchRow& row, const SolveResult& result, double seconds) {
  row.abs_lambda = std::max(row.abs_lambda, std::abs(result.state.lambda_min));
  row.cost += result.state.cost;
  row.iterations = std::max(row.iterations, result.state.iteration);
  row.all_certified = row.all_certified && result.certified;
  row.seconds += seconds;
  ++row.trials;
}

int run_bench(const std::vector<std::string>& inputs, int seeds, const Common& c) {
  const SolveOptions opts = solve_options(c);
  std::vector<BenchRow> rows;
  bool all_converged = true;
  auto timed_solve = [&](const PoseGraph& g, BenchRow& row) {
    const auto start = std::chrono::steady_clock::now();
    const SolveResult result = primal_dual_solve(g, opts);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all_converged = all_converged && result.converged;
    accumulate(row, result, s);
  };
  if (inputs.empty()) {
    for (int n : {20, 50, 100, 200}) {
      for (double sigma : {0.2, 0.5}) {
        BenchRow row;
        row.label = "cycle";
        row.n = n;
        row.m = n;
        row.sigma = sigma;
        for (int s = 0; s < seeds; ++s) {
          const SyntheticCycle cyc = make_cycle_problem(n, {sigma, c.seed + static_cast<std::uint64_t>(s)});
          timed_solve(cyc.problem.to_pose_graph(), row);
        }
        rows.push_back(row);
      }
    }
  } else {
    for (const std::string& path : inputs) {
      const ParsedGraph parsed = load_g2o(path);
      BenchRow row;
      const auto slash = path.find_last_of('/');
      row.label = slash == std::string::npos ? path : path.substr(slash + 1);
      row.n = parsed.graph.num_vertices();
      row.m = parsed.graph.num_edges();
      timed_solve(parsed.graph, row);
      rows.push_back(row);
    }
  }
  for (BenchRow& r : rows) {
    r.cost /= r.trials;
    r.seconds /= r.trials;
  }
  emit_bench(rows, c);
  return all_converged ? 0 : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certifiable rotation averaging"};
  app.require_subcommand(1);

  Common common;
  bool info_weights = false;
  std::string input;

  auto* solve = app.add_subcommand("solve", "solve a g2o pose graph and certify the result");
  solve->add_option("input", input, "g2o file")->required()->check(CLI::ExistingFile);
  solve->add_flag("--weights-from-information", info_weights, "edge weights from information matrices");
  add_common(solve, common, true);

  std::string solution;
  double certify_eps = 1e-10;
  auto* certify = app.add_subcommand("certify", "certify a candidate solution");
  certify->add_option("input", input, "g2o file")->required()->check(CLI::ExistingFile);
  certify->add_option("solution", solution, "solution file")->required()->check(CLI::ExistingFile);
  certify->add_option("--eps", certify_eps, "certificate tolerance")->check(CLI::PositiveNumber);
  certify->add_flag("--weights-from-information", info_weights, "edge weights from information matrices");
  add_common(certify, common, false);

  CycleSource src;
  auto add_cycle_source = [&](CLI::App* sub) {
    sub->add_option("input", src.input, "g2o file holding a single cycle")->check(CLI::ExistingFile);
    sub->add_option("--n", src.n, "generate a cycle with n vertices instead");
    sub->add_option("--noise", src.noise, "perturbation angle std. dev. for generated cycles");
  };
  auto* cycle = app.add_subcommand("cycle", "closed-form optimum and stationary costs of a cycle");
  add_cycle_source(cycle);
  add_common(cycle, common, false);

  auto* spectrum = app.add_subcommand("spectrum", "closed-form vs numeric cycle adjacency spectrum");
  add_cycle_source(spectrum);
  add_common(spectrum, common, false);

  std::string kind = "cycle";
  int gen_n = 20;
  double gen_noise = 0.0, density = 0.3;
  auto* generate = app.add_subcommand("generate", "write a synthetic problem as g2o");
  generate->add_option("--kind", kind, "problem family")->check(CLI::IsMember({"cycle", "random"}));
  generate->add_option("--n", gen_n, "vertex count")->check(CLI::Range(3, 1000000));
  generate->add_option("--noise", gen_noise, "perturbation angle std. dev.")->check(CLI::NonNegativeNumber);
  generate->add_option("--density", density, "edge probability for random graphs")->check(CLI::Range(0.0, 1.0));
  add_common(generate, common, false);

  std::vector<std::string> bench_inputs;
  int seeds = 20;
  auto* bench = app.add_subcommand("bench", "cycle grid benchmark, or g2o files when given");
  bench->add_option("inputs", bench_inputs, "g2o files")->check(CLI::ExistingFile);
  bench->add_option("--seeds", seeds, "trials per grid cell")->check(CLI::PositiveNumber);
  add_common(bench, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help requests succeed; every usage error maps to the generic error status.
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return run_solve(input, common, info_weights);
    if (*certify) return run_certify(input, solution, certify_eps, common, info_weights);
    if (*cycle) return run_cycle(src, common);
    if (*spectrum) return run_spectrum(src, common);
    if (*generate) return run_generate(kind, gen_n, gen_noise, density, common);
    if (*bench) return run_bench(bench_inputs, seeds, common);
  } catch (const ParseError& e) {
    std::cerr << "rotavg: parse error: " << e.what() << '\n';
  } catch (const GraphError& e) {
    std::cerr << "rotavg: graph error: " << e.what() << '\n';
  } catch (const EigenSolverError& e) {
    std::cerr << "rotavg: eigensolver error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "rotavg: error: " << e.what() << '\n';
  }
  return kExitError;
}
