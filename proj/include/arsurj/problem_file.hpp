#ifndef ARSURJ_PROBLEM_FILE_HPP
#define ARSURJ_PROBLEM_FILE_HPP

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "arsurj/etale_algebra.hpp"
#include "arsurj/frobenian.hpp"
#include "arsurj/kato_fan.hpp"
#include "arsurj/padic_oracle.hpp"
#include "arsurj/perm_group.hpp"

namespace arsurj {

struct RunOptions {
  int jobs = 1;
  std::size_t cap_group_order = PermutationGroup::kDefaultOrderCap;
  long long cap_height = 8;
};

/// A fully validated problem file: named groups, algebras, setups, fans,
/// morphisms and polynomial families, plus the job list. Every reference is
/// resolved and every object validated before any job runs.
class ProblemFile {
public:
  static ProblemFile parse(const std::string& path, const RunOptions& options);
  static ProblemFile from_json(const nlohmann::json& doc, const RunOptions& options);

  std::map<std::string, PermutationGroup> groups;
  std::map<std::string, EtaleAlgebraDescriptor> algebras;
  std::map<std::string, GaloisSetup> setups;
  std::map<std::string, SmoothKatoFan> fans;
  std::map<std::string, FanMorphism> morphisms;
  std::map<std::string, PolynomialFamily> families;
  std::vector<nlohmann::json> jobs;
};

struct Report {
  nlohmann::ordered_json doc;
  std::string to_string() const { return doc.dump(2) + "\n"; }
};

/// Executes the jobs in order (or in parallel with deterministic report
/// ordering); a failing job is recorded in the report and never aborts or
/// contaminates the others.
Report run(const ProblemFile& problem, const RunOptions& options);

} // namespace arsurj

#endif
