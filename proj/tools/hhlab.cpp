#include <iostream>

#include "CLI11.hpp"
#include "hhlab/cli_reports.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hhlab: exact computations for quiver algebras, their duals, centers and Hochschild cohomology"};
  hhlab::CliOptions o;
  app.add_option("command", o.command, "koszul-check | dual-print | hh-dims | cup | center | resolution-check")
      ->required()
      ->check(CLI::IsMember({"koszul-check", "dual-print", "hh-dims", "cup", "center", "resolution-check"}));
  app.add_option("--family", o.family, "lambda_q | gamma_q | lambda_mn | gamma_mn");
  app.add_option("--m", o.m, "number of columns (m)");
  app.add_option("--n", o.n, "number of rows (n), two-index families only");
  app.add_option("--field", o.field, "Q, GF(p), Q(zeta<d>) or Q(t)");
  app.add_option("--q", o.q, "comma-separated q entries; a single entry is repeated");
  app.add_option("--max-degree", o.max_degree, "top cohomological degree (hh-dims, cup, resolution-check)");
  app.add_option("--max-length", o.max_length, "top path length (center)");
  app.add_option("--format", o.format, "table or machine")->check(CLI::IsMember({"table", "machine"}));
  app.add_option("--config", o.config_file, "family config file (key: value lines)");
  app.add_option("--presentation", o.presentation_file, "presentation file (koszul-check, dual-print)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    hhlab::CommandResult r = hhlab::run_command(hhlab::make_run_config(o));
    std::cout << r.output;
    return r.status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
