#pragma once
// Command implementations behind the gqc executable. Qubit labels on the
// command line and in output are 1-based (A1..An).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gq/register.hpp"

namespace gq::cli {

enum class Command { Measure, Indicators, Audit, Figures, Roof };

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

inline constexpr std::uint64_t kFallbackSeed = 20240601;

struct CliConfig {
  Command command = Command::Measure;
  std::string input_path;            // JSON state file
  std::string family;                // "w", "ghz" or "werner" instead of a file
  int family_size = 3;               // qubits for w/ghz
  double werner_p = 1.0;
  std::vector<double> q_list;        // empty selects the command default
  std::uint64_t seed = kFallbackSeed;
  std::string output_path;           // CSV file (audit) or directory (figures)
  double grid_step = 0.01;
  int samples = 500;
  int n_qubits = 3;
  std::optional<std::string> cut;    // e.g. "1|23" or "1"
  std::optional<int> focus;          // 1-based
  std::vector<double> alphas{2.0};
  std::vector<std::string> kinds{"monogamy", "diagnostics"};
  std::optional<double> tolerance;   // overrides the audit residual tolerances
  bool maximize = false;
  int restarts = 32;
  int workers = 1;
};

/// Throws BadParameter unless q entries > 1, 0 < grid_step <= 0.1, samples >= 1.
void validate(const CliConfig& cfg);

/// Parses "1|23", "1,2|3" or a side-A list such as "1" into a cut of n qubits.
Bipartition parse_cut(const std::string& text, int n_qubits);
/// 1-based rendering, e.g. "1|23".
std::string cut_label(const Bipartition& cut);

int cmd_measure(const CliConfig& cfg, std::ostream& out);
int cmd_indicators(const CliConfig& cfg, std::ostream& out);
int cmd_audit(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_figures(const CliConfig& cfg, std::ostream& out);
int cmd_roof(const CliConfig& cfg, std::ostream& out);

/// Names of the files written by cmd_figures.
std::vector<std::string> figure_files();

/// Full front end: argument parsing, dispatch and error-to-exit-code mapping.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gq::cli
