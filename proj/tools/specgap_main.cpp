#include <string>

#include <CLI11.hpp>

#include "specgap/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"spectra and spectral gaps of banded self-adjoint operators via finite sections"};
  app.require_subcommand(1);

  specgap::RunConfig cfg;
  std::string format = "both";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", cfg.config_path, "operator configuration file (JSON)")->required();
    cmd->add_option("--out", cfg.out_dir, "output directory")->required();
    cmd->add_option("--grid", cfg.grid_size, "theta grid size for symbol sampling");
    cmd->add_option("--nmax", cfg.n_max, "largest truncation order (n list doubles up to it)");
    cmd->add_option("--kmax", cfg.k_max, "number of top/bottom trajectories");
    cmd->add_option("--delta", cfg.delta, "window half-width for the gap criterion");
    cmd->add_option("--cap", cfg.cap, "count bound K");
    cmd->add_option("--scheme", cfg.scheme, "weight scheme: uniform | entry:I | twopoint:T:L:M");
    cmd->add_option("--eps", cfg.eps, "gap margin for the stability radius");
    cmd->add_option("--format", format, "json | csv | both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
  };

  CLI::App* bands = app.add_subcommand("bands", "essential spectrum from the matrix symbol");
  CLI::App* trunc = app.add_subcommand("truncation", "eigenvalue trajectories and bound estimates");
  CLI::App* gapdetect = app.add_subcommand("gapdetect", "weighted-average gap evidence");
  CLI::App* certify = app.add_subcommand("certify", "perturbation-bound gap certificates");
  CLI::App* family = app.add_subcommand("family", "one-parameter family sweep and gap stability");
  for (CLI::App* cmd : {bands, trunc, gapdetect, certify, family}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  if (format == "json")
    cfg.format = specgap::OutputFormat::json_only;
  else if (format == "csv")
    cfg.format = specgap::OutputFormat::csv_only;
  else
    cfg.format = specgap::OutputFormat::both;

  std::string command = app.get_subcommands().front()->get_name();
  return specgap::run_command(command, cfg);
}
