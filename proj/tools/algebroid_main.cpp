#include <iostream>

#include "CLI11.hpp"
#include "algebroid/commands.hpp"
#include "algebroid/errors.hpp"

using namespace algebroid;

int main(int argc, char** argv) {
  CLI::App app{
      "Exact feedback-linearization toolkit for single-input polynomial "
      "systems"};
  app.require_subcommand(1);

  std::string path, method = "both", json_path;
  CommandOptions opts;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--json", opts.json_path, "write the machine-readable report here");
  };

  CLI::App* check = app.add_subcommand("check", "classical linearizability conditions");
  check->add_option("file", path, "system file")->required();
  add_common(check);

  CLI::App* lin = app.add_subcommand("linearize", "compute a linearizing output");
  lin->add_option("file", path, "system file")->required();
  lin->add_option("--method", method, "algebroid1 | algebroid2 | both")
      ->check(CLI::IsMember({"algebroid1", "algebroid2", "both"}));
  lin->add_option("--max-ansatz-degree", opts.max_ansatz_degree,
                  "degree bound for the 1-form and first-integral ansatz");
  lin->add_flag("--force", opts.force, "run even if the classical check fails");
  add_common(lin);

  CLI::App* inv = app.add_subcommand("invert-map", "invert a polynomial map");
  inv->add_option("file", path, "map file")->required();
  add_common(inv);

  CLI::App* ex = app.add_subcommand("example", "run the bundled three-state example");
  add_common(ex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : exit_input_error;
  }

  Report report;
  int rc = exit_input_error;
  try {
    if (check->parsed()) rc = cmd_check(path, opts, report);
    if (lin->parsed()) rc = cmd_linearize(path, method, opts, report);
    if (inv->parsed()) rc = cmd_invert_map(path, opts, report);
    if (ex->parsed()) rc = cmd_example(opts, report);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input_error;
  }
  std::cout << report.to_text();
  return rc;
}
