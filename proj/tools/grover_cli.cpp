// grover: parameter solver, simulator and verification driver.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grover/fixture_io.hpp"
#include "grover/grover.hpp"
#include "grover/verify_suites.hpp"

#ifndef GROVER_FIXTURE_DIR
#define GROVER_FIXTURE_DIR "fixtures"
#endif

namespace {

using nlohmann::json;
using namespace grover;

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCap = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

std::string fmt(const Complex& z) {
  std::ostringstream os;
  os << std::setprecision(15) << z.real() << (z.imag() < 0 ? " - " : " + ")
     << std::abs(z.imag()) << "i";
  return os.str();
}

// ---------------------------------------------------------------------------
// params

struct ParamsArgs {
  double lambda = 0.0;
  std::string output = "json";
};

int cmd_params(const ParamsArgs& a) {
  const SearchParams p = solve(a.lambda);
  const double check = p.consistency_residual();
  if (a.output == "json") {
    json j{{"lambda", p.lambda},
           {"k", p.k},
           {"alpha_radians", p.alpha},
           {"theta_radians", p.theta},
           {"cos_theta_check", check},
           {"no_iteration", p.no_iteration}};
    std::cout << j.dump(2) << "\n";
  } else if (a.output == "csv") {
    std::cout << "lambda,k,alpha_radians,theta_radians,cos_theta_check,no_iteration\n"
              << fmt(p.lambda) << "," << p.k << "," << fmt(p.alpha) << "," << fmt(p.theta) << ","
              << fmt(check) << "," << (p.no_iteration ? "true" : "false") << "\n";
  } else {
    std::cout << "lambda            " << fmt(p.lambda) << "\n"
              << "k                 " << p.k << "\n"
              << "alpha [rad]       " << fmt(p.alpha) << "\n"
              << "theta [rad]       " << fmt(p.theta) << "\n"
              << "cos(theta) check  " << fmt(check) << "\n";
    if (p.no_iteration) std::cout << "no-iteration search: every state is a target\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  int n = 3;
  std::string targets = "0";
  std::optional<std::size_t> count;
  std::string mode = "iterative";
  std::optional<int> k;
  std::optional<double> alpha;
  std::optional<double> theta;
  bool full = false;
  std::string output = "json";
  double tol = kDefaultTol;
};

TargetSet parse_targets(const SimulateArgs& a) {
  if (a.count.has_value()) return TargetSet::first(a.n, *a.count);
  std::vector<std::size_t> idx;
  std::stringstream ss(a.targets);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad target index '" + item + "'");
    }
    if (pos != item.size()) throw UsageError("bad target index '" + item + "'");
    idx.push_back(static_cast<std::size_t>(v));
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return TargetSet(a.n, std::move(idx));
}

SearchParams resolve_params(const SimulateArgs& a, double lambda) {
  if (!a.k && !a.alpha && !a.theta) return solve(lambda);
  const int k = a.k.value_or(optimal_iterations(lambda));
  if (k < 0) throw UsageError("--k must be non-negative");
  if (a.alpha) {
    SearchParams p = params_from_k_alpha(lambda, k, *a.alpha);
    if (a.theta) p.theta = *a.theta;
    return p;
  }
  if (a.theta) return params_from_k_theta(lambda, k, *a.theta);
  if (k == 0) {
    SearchParams p;
    p.lambda = lambda;
    return p;
  }
  return params_for_k(lambda, k);
}

struct SimulationResult {
  ComplexVector state;
  Diagnostics diag;
};

SimulationResult run_mode(const std::string& mode, const TargetSet& targets, const SearchParams& p) {
  SimulationResult r;
  if (mode == "iterative") {
    r.state = grover_iterate(initial_state(targets.qubits()), targets, p.alpha, p.k, &r.diag);
  } else if (mode == "decomposed-i") {
    r.state = reduced_state_I(targets, p.alpha, p.theta, p.k, &r.diag);
  } else if (mode == "decomposed-ii") {
    r.state = reduced_state_II(targets, p.alpha, p.theta, p.k, &r.diag);
  } else if (mode == "shortcut") {
    const ShortcutOperator c = build_shortcut(targets, p, &r.diag);
    r.state = multiply(c.matrix, initial_state(targets.qubits()));
  } else if (mode == "parallel") {
    const ParallelOperator op = build_parallel_operator(targets, p, std::nullopt, false, &r.diag);
    const ComplexVector out = multiply(op.matrix, op.input_state());
    // Project the second channel onto chi to read the search channel.
    const std::size_t dim = targets.dimension();
    r.state.assign(dim, Complex{});
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t q = 0; q < dim; ++q) r.state[i] += std::conj(op.chi[q]) * out[i * dim + q];
  } else {
    throw UsageError("unknown mode '" + mode + "'");
  }
  return r;
}

int cmd_simulate(const SimulateArgs& a) {
  const TargetSet targets = parse_targets(a);
  const SearchParams p = resolve_params(a, targets.lambda());
  const double residual = p.consistency_residual();
  const bool consistent = residual <= a.tol;

  const auto start = std::chrono::steady_clock::now();
  SimulationResult r = run_mode(a.mode, targets, p);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  double success = 0.0;
  for (std::size_t t : targets.indices()) success += std::norm(r.state[t]);
  const Complex v_t = r.state[targets.indices().front()];
  const std::size_t nt = targets.first_non_target();
  const std::optional<Complex> v_nt =
      nt < targets.dimension() ? std::optional<Complex>(r.state[nt]) : std::nullopt;

  if (a.output == "json") {
    json j{{"n", targets.qubits()},
           {"targets", targets.indices()},
           {"mode", a.mode},
           {"lambda", targets.lambda()},
           {"k", p.k},
           {"alpha", p.alpha},
           {"theta", p.theta},
           {"consistent", consistent},
           {"consistency_residual", residual},
           {"v_t", complex_to_json(v_t)},
           {"v_nt", v_nt ? complex_to_json(*v_nt) : json(nullptr)},
           {"success_probability", success},
           {"oracle_calls", r.diag.oracle_calls},
           {"wall_time_seconds", seconds},
           {"warnings", r.diag.warnings}};
    if (a.full) j["amplitudes"] = vector_to_json(r.state);
    std::cout << j.dump(2) << "\n";
  } else if (a.output == "csv") {
    std::cout << "n,m,mode,k,alpha,theta,consistent,v_t_re,v_t_im,v_nt_re,v_nt_im,"
                 "success_probability,oracle_calls,wall_time_seconds\n";
    const Complex vn = v_nt.value_or(Complex{});
    std::cout << targets.qubits() << "," << targets.count() << "," << a.mode << "," << p.k << ","
              << fmt(p.alpha) << "," << fmt(p.theta) << "," << (consistent ? "true" : "false")
              << "," << fmt(v_t.real()) << "," << fmt(v_t.imag()) << "," << fmt(vn.real()) << ","
              << fmt(vn.imag()) << "," << fmt(success) << "," << r.diag.oracle_calls << ","
              << fmt(seconds) << "\n";
    if (a.full) {
      std::cout << "index,re,im\n";
      for (std::size_t i = 0; i < r.state.size(); ++i)
        std::cout << i << "," << fmt(r.state[i].real()) << "," << fmt(r.state[i].imag()) << "\n";
    }
  } else {
    std::cout << "mode                " << a.mode << "\n"
              << "n, M                " << targets.qubits() << ", " << targets.count() << "\n"
              << "k, alpha, theta     " << p.k << ", " << fmt(p.alpha) << ", " << fmt(p.theta)
              << (consistent ? "" : "  (inconsistent)") << "\n"
              << "target amplitude    " << fmt(v_t) << "\n";
    if (v_nt) std::cout << "non-target amp.     " << fmt(*v_nt) << "\n";
    std::cout << "success probability " << fmt(success) << "\n"
              << "oracle calls        " << r.diag.oracle_calls << "\n"
              << "wall time [s]       " << fmt(seconds) << "\n";
    if (a.full)
      for (std::size_t i = 0; i < r.state.size(); ++i)
        std::cout << "  [" << i << "] " << fmt(r.state[i]) << "\n";
  }
  for (const auto& w : r.diag.warnings) std::cerr << "warning: " << w << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::uint64_t seed = 42;
  std::string suite = "all";
  std::string inject_fault;
  int cases = 200;
  std::string fixture_dir = GROVER_FIXTURE_DIR;
  std::string output = "json";
};

int cmd_verify(const VerifyArgs& a) {
  suites::SuiteOptions opt;
  opt.seed = a.seed;
  opt.cases = a.cases;
  opt.fixture_dir = a.fixture_dir;
  if (!a.inject_fault.empty()) {
    if (a.inject_fault != "theta-offset") throw UsageError("unknown fault '" + a.inject_fault + "'");
    opt.inject_theta_offset = true;
  }
  std::vector<std::string> names;
  if (a.suite == "all") {
    names = suites::suite_names();
  } else {
    const auto& known = suites::suite_names();
    if (std::find(known.begin(), known.end(), a.suite) == known.end())
      throw UsageError("unknown suite '" + a.suite + "'");
    names = {a.suite};
  }

  bool all_passed = true;
  json report{{"seed", a.seed}, {"cases", a.cases}, {"suites", json::array()}};
  if (!a.inject_fault.empty()) report["inject_fault"] = a.inject_fault;
  for (const auto& name : names) {
    const suites::SuiteResult r = suites::run_suite(name, opt);
    all_passed = all_passed && r.passed();
    json inv = json::array();
    for (const auto& i : r.invariants)
      inv.push_back({{"name", i.name}, {"passed", i.passed}, {"worst", i.worst}, {"tolerance", i.tolerance}});
    json s{{"name", r.name}, {"passed", r.passed()}, {"cases", r.cases}, {"invariants", inv}};
    if (!r.error.empty()) s["error"] = r.error;
    report["suites"].push_back(s);
  }
  report["passed"] = all_passed;

  if (a.output == "json") {
    std::cout << report.dump(2) << "\n";
  } else if (a.output == "csv") {
    std::cout << "suite,invariant,passed,worst,tolerance\n";
    for (const auto& s : report["suites"]) {
      for (const auto& i : s["invariants"])
        std::cout << s["name"].get<std::string>() << "," << i["name"].get<std::string>() << ","
                  << (i["passed"].get<bool>() ? "true" : "false") << ","
                  << fmt(i["worst"].get<double>()) << "," << fmt(i["tolerance"].get<double>())
                  << "\n";
    }
  } else {
    for (const auto& s : report["suites"]) {
      std::cout << (s["passed"].get<bool>() ? "PASS " : "FAIL ") << s["name"].get<std::string>()
                << " (" << s["cases"].get<int>() << " cases)\n";
      for (const auto& i : s["invariants"])
        std::cout << "  " << (i["passed"].get<bool>() ? "ok   " : "FAIL ")
                  << i["name"].get<std::string>() << "  worst=" << fmt(i["worst"].get<double>())
                  << "  tol=" << fmt(i["tolerance"].get<double>()) << "\n";
      if (s.contains("error")) std::cout << "  error: " << s["error"].get<std::string>() << "\n";
    }
  }
  if (!all_passed) {
    for (const auto& s : report["suites"])
      for (const auto& i : s["invariants"])
        if (!i["passed"].get<bool>())
          std::cerr << "failed: " << s["name"].get<std::string>() << "/"
                    << i["name"].get<std::string>() << "\n";
  }
  return all_passed ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// golden

struct GoldenArgs {
  std::string emit;
  std::string fixture_dir = GROVER_FIXTURE_DIR;
  double tol = kDefaultTol;
};

int cmd_golden(const GoldenArgs& a) {
  if (!a.emit.empty()) {
    std::cout << fixture_to_json(suites::golden_fixture(a.emit)).dump(1) << "\n";
    return kOk;
  }
  bool ok = true;
  json out = json::array();
  for (const auto& [which, file] : suites::golden_files()) {
    const Fixture expected = load_fixture(a.fixture_dir + "/" + file);
    const Fixture actual = suites::golden_fixture(which);
    const double dev = max_abs_diff(actual.data, expected.data);
    ok = ok && dev <= a.tol;
    out.push_back({{"data", which}, {"fixture", file}, {"max_abs_deviation", dev}, {"passed", dev <= a.tol}});
  }
  std::cout << out.dump(2) << "\n";
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-matched Grover search: exact parameters, decomposed simulation, shortcut operators"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"json", "csv", "pretty"};

  ParamsArgs params_args;
  auto* params = app.add_subcommand("params", "Exact-search parameters for a target fraction");
  params->add_option("--lambda", params_args.lambda, "Target fraction M/N in (0, 1]")->required();
  params->add_option("--output", params_args.output)->check(CLI::IsMember(formats));

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run a search in one of five modes");
  simulate->add_option("--n", sim_args.n, "Qubit count")->required();
  auto* targets_opt =
      simulate->add_option("--targets", sim_args.targets, "Comma-separated target indices");
  simulate->add_option("--count", sim_args.count, "Mark the first M states instead of --targets")
      ->excludes(targets_opt);
  simulate->add_option("--mode", sim_args.mode)
      ->check(CLI::IsMember({"iterative", "decomposed-i", "decomposed-ii", "shortcut", "parallel"}));
  simulate->add_option("--k", sim_args.k, "Iteration count override");
  simulate->add_option("--alpha", sim_args.alpha, "Matching phase override [rad]");
  simulate->add_option("--theta", sim_args.theta, "Rotation phase override [rad]");
  simulate->add_flag("--full", sim_args.full, "Emit every amplitude");
  simulate->add_option("--output", sim_args.output)->check(CLI::IsMember(formats));
  simulate->add_option("--tol", sim_args.tol, "Consistency tolerance");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the seeded invariant suites");
  verify->add_option("--seed", verify_args.seed);
  std::vector<std::string> suite_choices = suites::suite_names();
  suite_choices.push_back("all");
  verify->add_option("--suite", verify_args.suite)->check(CLI::IsMember(suite_choices));
  verify->add_option("--inject-fault", verify_args.inject_fault, "Negative control: theta-offset")
      ->check(CLI::IsMember({"theta-offset"}));
  verify->add_option("--cases", verify_args.cases, "Random cases for the identity suite")
      ->check(CLI::PositiveNumber);
  verify->add_option("--fixture-dir", verify_args.fixture_dir);
  verify->add_option("--output", verify_args.output)->check(CLI::IsMember(formats));

  GoldenArgs golden_args;
  auto* golden = app.add_subcommand("golden", "Reproduce the N=8 golden matrices");
  golden->add_option("--emit", golden_args.emit, "Print computed data in fixture format")
      ->check(CLI::IsMember({"final-state", "shortcut", "kernel-power"}));
  golden->add_option("--fixture-dir", golden_args.fixture_dir);
  golden->add_option("--tol", golden_args.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*params) return cmd_params(params_args);
    if (*simulate) return cmd_simulate(sim_args);
    if (*verify) return cmd_verify(verify_args);
    if (*golden) return cmd_golden(golden_args);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
