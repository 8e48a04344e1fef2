#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "arsurj/error.hpp"
#include "arsurj/problem_file.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pseudo-splitness, s-invariants, Kato-fan height bounds and the "
               "prime-by-prime oracle over problem files"};
  app.require_subcommand(1);

  std::string path;
  std::string out_path;
  arsurj::RunOptions options;

  CLI::App* run_cmd = app.add_subcommand("run", "execute the jobs of a problem file");
  run_cmd->add_option("file", path, "problem file (JSON)")->required();
  run_cmd->add_option("--jobs", options.jobs, "number of parallel job workers")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", out_path, "write the report to this file instead of stdout");
  run_cmd->add_option("--cap-group-order", options.cap_group_order,
                      "maximum group order for element enumeration");
  run_cmd->add_option("--cap-height", options.cap_height,
                      "default search cap for height-bound-m jobs");

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "parse and validate a problem file");
  validate_cmd->add_option("file", path, "problem file (JSON)")->required();
  validate_cmd->add_option("--cap-group-order", options.cap_group_order,
                           "maximum group order for element enumeration");
  validate_cmd->add_option("--cap-height", options.cap_height,
                           "default search cap for height-bound-m jobs");

  CLI11_PARSE(app, argc, argv);

  try {
    arsurj::ProblemFile problem = arsurj::ProblemFile::parse(path, options);
    if (validate_cmd->parsed()) {
      std::cout << "ok: " << problem.groups.size() << " groups, " << problem.algebras.size()
                << " algebras, " << problem.setups.size() << " setups, "
                << problem.fans.size() << " fans, " << problem.morphisms.size()
                << " morphisms, " << problem.families.size() << " families, "
                << problem.jobs.size() << " jobs\n";
      return 0;
    }
    arsurj::Report report = arsurj::run(problem, options);
    if (out_path.empty()) {
      std::cout << report.to_string();
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 1;
      }
      out << report.to_string();
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
