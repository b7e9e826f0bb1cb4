#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "hilfer/analysis.hpp"
#include "hilfer/frac_integral.hpp"

namespace hilfer::cli {

enum class Command { solve, check_hypotheses, certify, verify_uhml, convergence_study };

std::string to_string(Command c);

struct RunManifest {
  Command command = Command::solve;
  std::filesystem::path config_path;  // either this or problem
  std::string problem;                // catalog name
  std::filesystem::path output_dir = ".";
  bool output_dir_set = false;
  std::size_t grid_n = 256;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  ZetaVariant zeta = ZetaVariant::derived;
  QuadratureScheme scheme = QuadratureScheme::product_trapezoid;
  double epsilon = 1e-3;

  // ConfigError naming the flag on violation.
  void validate() const;
};

enum ExitStatus : int { ok = 0, error = 1, verification_failed = 2 };

// Runs one command; messages go to out/err, files to manifest.output_dir.
int run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

// Parses argv with the subcommand layout and calls run().
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hilfer::cli
