#pragma once

// Subcommands of the `bpe` tool. Each takes its parsed options plus output
// and diagnostic streams and returns the process exit code, so the same
// code paths are exercised by the tests and by the binary.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bpe/core.hpp"

namespace bpe::cli {

inline constexpr int kExitOk = 0;        // plan found / instance valid
inline constexpr int kExitInvalid = 1;   // validate: plan rejected
inline constexpr int kExitError = 2;     // parse, parameter, resource or gate error
inline constexpr int kExitNoPlan = 10;   // proven: no plan within the bound

struct RunReport {
  std::string command;
  std::string input;  // content digest, or family name for bench rows
  long long size = 0;
  int k = 0;
  std::string engine;
  std::string outcome;  // found | none | error
  long long plan_len = -1;
  std::uint64_t nodes = 0;
  int line5_max = 0;
  int establish_max = 0;
  std::uint64_t states = 0;
  double wall_ms = 0.0;

  static std::string solve_header();
  std::string solve_row() const;
  static std::string bench_header();
  std::string bench_row() const;
};

// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string digest(const std::string& bytes);

std::string read_file(const std::string& path);

// One action name per line; blank lines and '#' comments are skipped.
// Throws ParseError on an unknown name.
Plan parse_plan(const SasInstance& inst, const std::string& text);

int cmd_validate(const std::string& sas_path, const std::optional<std::string>& plan_path,
                 std::ostream& out, std::ostream& err);

struct SolveOptions {
  std::string path;
  int k = 0;
  std::string engine = "bfs";  // bfs | mar | mar-mod
  bool unsafe_mod = false;
  std::optional<std::string> report_path;  // append the CSV row here
};
int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);

int cmd_classify(const std::string& sas_path, std::ostream& out, std::ostream& err);

// kind is "hs" or "pc".
int cmd_reduce(const std::string& kind, const std::string& in_path, const std::string& out_path,
               std::ostream& out, std::ostream& err);

struct FomcOptions {
  std::string path;
  int k = 0;
  bool dump = false;
  std::uint64_t budget = 100'000'000;
};
int cmd_fomc(const FomcOptions& options, std::ostream& out, std::ostream& err);

// Fixed 3-variable P instance needing a 3-step plan, padded with `padding`
// fresh variables that each have one action no plan ever needs.
SasInstance pad_p_instance(int padding);

struct BenchOptions {
  std::string family = "pad-p";
  int k = 3;
  std::vector<int> sizes{10, 100, 1000};
  int repeat = 1;  // wall_ms is the median over this many runs
};
// One row per (size, engine) with engines mar-mod then bfs.
std::vector<RunReport> run_bench(const BenchOptions& options);
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace bpe::cli
