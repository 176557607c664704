#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bpe/errors.hpp"
#include "bpe/fomc.hpp"
#include "bpe/format.hpp"
#include "bpe/oracle.hpp"
#include "bpe/pop.hpp"
#include "bpe/reductions.hpp"

namespace bpe::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string format_ms(double ms) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << ms;
  return s.str();
}

void print_plan(const SasInstance& inst, const Plan& plan, std::ostream& out) {
  for (int step : plan.steps) out << inst.action(static_cast<std::size_t>(step)).name() << "\n";
}

// Engine run shared by solve and bench.
struct EngineRun {
  std::optional<Plan> plan;
  RunReport report;
};

EngineRun run_engine(const SasInstance& inst, int k, const std::string& engine, bool unsafe_mod) {
  EngineRun run;
  run.report.engine = engine;
  run.report.k = k;
  const auto start = Clock::now();
  if (engine == "bfs") {
    auto result = bfs_bounded_plan(inst, k);
    run.report.wall_ms = elapsed_ms(start);
    run.report.states = result.explored;
    run.plan = std::move(result.plan);
  } else if (engine == "mar" || engine == "mar-mod") {
    MarOptions options;
    options.unsafe_modified = unsafe_mod;
    auto result =
        mar_plan(inst, k, engine == "mar" ? Variant::original : Variant::modified, options);
    run.report.wall_ms = elapsed_ms(start);
    run.report.nodes = result.stats.nodes;
    run.report.line5_max = result.stats.max_line5_per_branch;
    run.report.establish_max = result.stats.max_establish_per_branch;
    if (result.structure) run.plan = linearize(*result.structure);
  } else {
    throw ParameterError("unknown engine '" + engine + "' (expected bfs, mar or mar-mod)");
  }
  run.report.outcome = run.plan ? "found" : "none";
  run.report.plan_len = run.plan ? static_cast<long long>(run.plan->length()) : -1;
  return run;
}

}  // namespace

std::string RunReport::solve_header() {
  return "command,input,engine,k,outcome,plan_len,nodes,line5_max,establish_max,states,wall_ms";
}

std::string RunReport::solve_row() const {
  std::ostringstream s;
  s << command << ',' << input << ',' << engine << ',' << k << ',' << outcome << ',' << plan_len
    << ',' << nodes << ',' << line5_max << ',' << establish_max << ',' << states << ','
    << format_ms(wall_ms);
  return s.str();
}

std::string RunReport::bench_header() {
  return "family,size,k,engine,outcome,plan_len,nodes,line5_max,establish_max,states,wall_ms";
}

std::string RunReport::bench_row() const {
  std::ostringstream s;
  s << input << ',' << size << ',' << k << ',' << engine << ',' << outcome << ',' << plan_len
    << ',' << nodes << ',' << line5_max << ',' << establish_max << ',' << states << ','
    << format_ms(wall_ms);
  return s.str();
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Plan parse_plan(const SasInstance& inst, const std::string& text) {
  Plan plan;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream tokens(line);
    std::string name;
    if (!(tokens >> name) || name.front() == '#') continue;
    std::string extra;
    if (tokens >> extra) throw ParseError(number, "expected one action name per line");
    auto index = inst.find_action(name);
    if (!index) throw ParseError(number, "unknown action '" + name + "'");
    plan.steps.push_back(static_cast<int>(*index));
  }
  return plan;
}

int cmd_validate(const std::string& sas_path, const std::optional<std::string>& plan_path,
                 std::ostream& out, std::ostream& err) {
  try {
    const SasInstance inst = parse_sas(read_file(sas_path));
    if (!plan_path) {
      out << "instance ok: " << inst.num_vars() << " variables, domain " << inst.domain().size()
          << ", " << inst.actions().size() << " actions\n";
      return kExitOk;
    }
    const Plan plan = parse_plan(inst, read_file(*plan_path));
    const PlanCheck check = check_plan(inst, plan);
    if (check.failed_step) {
      const std::size_t i = *check.failed_step;
      err << "plan invalid: step " << i + 1 << " ("
          << inst.action(static_cast<std::size_t>(plan.steps[i])).name()
          << ") is not applicable in state [" << format_state(check.final_state) << "]\n";
      return kExitInvalid;
    }
    if (!check.valid) {
      err << "plan invalid: final state [" << format_state(check.final_state)
          << "] does not satisfy the goal [" << format_state(inst.goal()) << "]\n";
      return kExitInvalid;
    }
    out << "plan ok: " << plan.length() << " steps\n";
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
  RunReport report;
  report.command = "solve";
  report.engine = options.engine;
  report.k = options.k;
  int code = kExitError;
  try {
    const std::string text = read_file(options.path);
    report.input = digest(text);
    const SasInstance inst = parse_sas(text);
    EngineRun run = run_engine(inst, options.k, options.engine, options.unsafe_mod);
    run.report.command = report.command;
    run.report.input = report.input;
    report = run.report;
    if (run.plan) {
      print_plan(inst, *run.plan, out);
      code = kExitOk;
    } else {
      code = kExitNoPlan;
    }
  } catch (const UnsafeVariantError& e) {
    err << "error: " << e.what() << "; pass --unsafe-mod to run anyway\n";
    report.outcome = "error";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    report.outcome = "error";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    report.outcome = "error";
  }

  err << RunReport::solve_header() << "\n" << report.solve_row() << "\n";
  if (options.report_path) {
    const bool fresh = !std::filesystem::exists(*options.report_path);
    std::ofstream csv(*options.report_path, std::ios::app);
    if (fresh) csv << RunReport::solve_header() << "\n";
    csv << report.solve_row() << "\n";
  }
  return code;
}

int cmd_classify(const std::string& sas_path, std::ostream& out, std::ostream& err) {
  try {
    const SasInstance inst = parse_sas(read_file(sas_path));
    const RestrictionProfile r = check_restrictions(inst);
    auto flag = [](bool b) { return b ? "true" : "false"; };
    out << "P=" << flag(r.p) << " U=" << flag(r.u) << " B=" << flag(r.b) << " S=" << flag(r.s)
        << " m_p=" << r.max_pre << " m_e=" << r.max_eff << "\n";
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

int cmd_reduce(const std::string& kind, const std::string& in_path, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  try {
    const std::string text = read_file(in_path);
    std::optional<ReductionOutput> reduced;
    if (kind == "hs") {
      reduced = hitting_set_to_planning(parse_hitting_set(text));
    } else if (kind == "pc") {
      reduced = partitioned_clique_to_planning(parse_partitioned_graph(text));
    } else {
      throw ParameterError("unknown source kind '" + kind + "' (expected hs or pc)");
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    file << trace_comments(*reduced) << serialize_sas(reduced->instance);
    out << "k'=" << reduced->k_prime << "\n";
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

int cmd_fomc(const FomcOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const SasInstance inst = parse_sas(read_file(options.path));
    if (options.dump) {
      const SasInstance padded = add_dummy(inst);
      out << build_structure(padded).dump();
      if (options.k >= 1) out << "phi: " << build_phi(options.k).to_sexpr() << "\n";
    }
    EvalOptions eval;
    eval.assignment_budget = options.budget;
    const FoDecision decision = decide_via_model_checking(inst, options.k, eval);
    if (!decision.plan_exists) {
      out << "UNSAT\n";
      return kExitNoPlan;
    }
    out << "SAT\n";
    print_plan(inst, *decision.plan, out);
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

SasInstance pad_p_instance(int padding) {
  if (padding < 0) throw ParameterError("padding must be non-negative");
  constexpr int kCore = 3;
  const auto n = static_cast<std::size_t>(kCore + padding);
  auto state = [n](std::vector<Assignment> entries) {
    return PartialState::from_assignments(n, entries);
  };
  std::vector<Action> actions;
  actions.emplace_back("step0", state({}), state({{0, 1}}));
  actions.emplace_back("step1", state({{0, 1}}), state({{1, 1}}));
  actions.emplace_back("step2", state({{1, 1}}), state({{2, 1}}));
  for (int i = 0; i < padding; ++i) {
    actions.emplace_back("pad" + std::to_string(i), state({{0, 1}}), state({{kCore + i, 1}}));
  }
  return SasInstance(static_cast<int>(n), DomainSpec(2), std::move(actions),
                     PartialState(std::vector<Value>(n, 0)), state({{0, 1}, {1, 1}, {2, 1}}));
}

std::vector<RunReport> run_bench(const BenchOptions& options) {
  if (options.family != "pad-p") throw ParameterError("unknown family '" + options.family + "'");
  if (options.repeat < 1) throw ParameterError("repeat must be at least 1");
  std::vector<RunReport> rows;
  for (int size : options.sizes) {
    const SasInstance inst = pad_p_instance(size);
    for (const char* engine : {"mar-mod", "bfs"}) {
      std::vector<double> times;
      EngineRun run;
      for (int r = 0; r < options.repeat; ++r) {
        run = run_engine(inst, options.k, engine, false);
        times.push_back(run.report.wall_ms);
      }
      std::nth_element(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(times.size() / 2),
                       times.end());
      run.report.wall_ms = times[times.size() / 2];
      run.report.command = "bench";
      run.report.input = options.family;
      run.report.size = size;
      rows.push_back(run.report);
    }
  }
  return rows;
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto rows = run_bench(options);
    out << RunReport::bench_header() << "\n";
    for (const auto& row : rows) out << row.bench_row() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded plan existence toolkit for SAS+ planning"};
  app.require_subcommand(1);

  std::string sas_path;
  std::optional<std::string> plan_path;
  auto* validate = app.add_subcommand("validate", "Check an instance and optionally a plan");
  validate->add_option("instance", sas_path, ".sas instance")->required();
  validate->add_option("plan", plan_path, "plan file, one action name per line");

  SolveOptions solve_opts;
  auto* solve = app.add_subcommand("solve", "Search for a plan of length at most k");
  solve->add_option("instance", solve_opts.path, ".sas instance")->required();
  solve->add_option("-k,--k", solve_opts.k, "plan length bound")->required()->check(CLI::NonNegativeNumber);
  solve->add_option("-e,--engine", solve_opts.engine, "bfs, mar or mar-mod")
      ->check(CLI::IsMember({"bfs", "mar", "mar-mod"}));
  solve->add_flag("--unsafe-mod", solve_opts.unsafe_mod,
                  "run mar-mod even when the instance violates restriction P");
  solve->add_option("--report", solve_opts.report_path, "append the CSV report row to this file");

  auto* classify = app.add_subcommand("classify", "Report restrictions P/U/B/S and m_p, m_e");
  classify->add_option("instance", sas_path, ".sas instance")->required();

  std::string kind, in_path, out_path;
  auto* reduce = app.add_subcommand("reduce", "Generate a planning instance by reduction");
  reduce->add_option("kind", kind, "hs (hitting set) or pc (partitioned clique)")
      ->required()
      ->check(CLI::IsMember({"hs", "pc"}));
  reduce->add_option("input", in_path, ".hs or .pc source")->required();
  reduce->add_option("output", out_path, ".sas destination")->required();

  FomcOptions fomc_opts;
  auto* fomc = app.add_subcommand("fomc", "Decide plan existence by first-order model checking");
  fomc->add_option("instance", fomc_opts.path, ".sas instance")->required();
  fomc->add_option("-k,--k", fomc_opts.k, "plan length bound")->required()->check(CLI::NonNegativeNumber);
  fomc->add_flag("--dump", fomc_opts.dump, "print the structure and the formula");
  fomc->add_option("--budget", fomc_opts.budget, "maximum number of variable assignments");

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Run the FPT scaling benchmark and print CSV");
  bench->add_option("--family", bench_opts.family, "instance family")->check(CLI::IsMember({"pad-p"}));
  bench->add_option("-k,--k", bench_opts.k, "plan length bound")->check(CLI::NonNegativeNumber);
  bench->add_option("--sizes", bench_opts.sizes, "padding sizes")->delimiter(',');
  bench->add_option("--repeat", bench_opts.repeat, "runs per cell; wall_ms is the median")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  if (*validate) return cmd_validate(sas_path, plan_path, out, err);
  if (*solve) return cmd_solve(solve_opts, out, err);
  if (*classify) return cmd_classify(sas_path, out, err);
  if (*reduce) return cmd_reduce(kind, in_path, out_path, out, err);
  if (*fomc) return cmd_fomc(fomc_opts, out, err);
  if (*bench) return cmd_bench(bench_opts, out, err);
  return kExitError;
}

}  // namespace bpe::cli
