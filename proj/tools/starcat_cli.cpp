#include <CLI11.hpp>

#include <cstdio>
#include <exception>

#include "starcat/tasks.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "starcat: exact verification lab for twisted subgroup-category algebras and "
      "biset-category deformations"};
  app.require_subcommand(0, 1);

  starcat::RunConfig config;
  std::string tasks_help = "Tasks to run (default: all). Available:";
  for (const auto& n : starcat::task_names()) tasks_help += " " + n;

  app.add_option("--groups", config.groups,
                 "Object groups, e.g. C2 C4 S3 V4 Q8 D8 C2xC2xC3. Note: D<n> names "
                 "the dihedral group of ORDER n (so D8 is the square's symmetry "
                 "group). A whitespace-separated Cayley document (order, identity "
                 "index, table rows) is also accepted.");
  app.add_option("--ell", config.ell,
                 "Weight spec: generic | unit | power:<d> | assign:2=1,3=5/2");
  app.add_option("--tasks", config.tasks, tasks_help);
  app.add_option("--output", config.output, "Write the report to this file");
  app.add_option("--format", config.format, "Report format: json | text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cache-dir", config.cache_dir,
                 "Directory for the optional on-disk lattice cache (default: "
                 "$STARCAT_CACHE_DIR)");
  app.add_option("--seed", config.seed, "Seed for randomized sub-checks");
  app.add_option("--order-cap", config.order_cap, "Maximum group order (default 64)");

  std::string explain_name;
  CLI::App* explain =
      app.add_subcommand("explain", "Describe what a named task checks");
  explain->add_option("task", explain_name, "Task name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (explain->parsed()) {
      std::puts(starcat::explain_task(explain_name).c_str());
      return 0;
    }
    if (config.groups.empty()) {
      std::fputs("error: --groups is required (try --help)\n", stderr);
      return 2;
    }
    starcat::RunResult result = starcat::run(config);
    starcat::write_run_result(result, config);
    return result.ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
