#pragma once

// ncx <check|calc|fn|verify|reproduce|plot>: run() does the work, main() only parses arguments.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ncx::cli {

enum Exit : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kCqViolated = 3 };

struct RunConfig {
  std::string command;
  std::string target;               // reproduce target or verify suite
  std::vector<std::string> inputs;  // --in, repeatable
  std::string a, b, map;            // calc operands
  std::string op;                   // calc or fn operation
  std::vector<std::string> at;      // fn points, "x1,x2,..."
  std::string out;                  // report (or figure for plot); stdout when empty
  std::string svg;                  // figure path for reproduce
  std::optional<std::array<double, 4>> box;
  int grid = 0;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  bool color = false;
};

/// Writes JSON-lines records to `out` (or cfg.out) and a human summary to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11, honours NCX_COLOR, then calls run().
int main(int argc, char** argv);

}  // namespace ncx::cli
