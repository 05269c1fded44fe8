#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specgap/operator_config.hpp"

namespace specgap {

enum class OutputFormat { json_only, csv_only, both };

// Command parameters shared by every subcommand; defaults follow the module
// documentation (grid 2048, n doubling up to 1600, k_max 8, K 8).
struct RunConfig {
  std::string config_path;
  std::string out_dir;
  int grid_size = 2048;
  int n_max = 1600;
  int k_max = 8;
  std::optional<double> delta;
  int cap = 8;
  std::string scheme = "entry:1";
  std::optional<double> eps;
  OutputFormat format = OutputFormat::both;

  void validate() const;
  std::vector<int> n_list() const;  // n_max/8, n_max/4, n_max/2, n_max
};

int run_bands(const RunConfig& cfg);
int run_truncation(const RunConfig& cfg);
int run_gapdetect(const RunConfig& cfg);
int run_certify(const RunConfig& cfg);
int run_family(const RunConfig& cfg);

// Dispatch + uniform error reporting: 0 success, 1 numerical failure,
// 2 configuration error.
int run_command(const std::string& command, const RunConfig& cfg);

}  // namespace specgap
