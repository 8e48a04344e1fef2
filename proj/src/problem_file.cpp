#include "arsurj/problem_file.hpp"

#include <fstream>
#include <thread>

#include "arsurj/error.hpp"

namespace arsurj {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error("problem file: " + where + ": " + what);
}

const json& member(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, "missing field \"" + key + "\"");
  return obj.at(key);
}

Permutation parse_permutation(const json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected a permutation image array");
  std::vector<std::uint32_t> images;
  for (const auto& v : value) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      fail(where, "permutation entries must be nonnegative integers");
    images.push_back(v.get<std::uint32_t>());
  }
  try {
    return Permutation(std::move(images));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

// An element reference is either an explicit image array or an index into
// the group's canonical (sorted) element list.
Permutation parse_element(const json& value, const PermutationGroup& group,
                          const std::string& where) {
  if (value.is_number_integer()) {
    long long idx = value.get<long long>();
    const auto& els = group.elements();
    if (idx < 0 || idx >= static_cast<long long>(els.size()))
      fail(where, "element index " + std::to_string(idx) + " out of range (order " +
                      std::to_string(els.size()) + ")");
    return els[static_cast<std::size_t>(idx)];
  }
  Permutation p = parse_permutation(value, where);
  if (!group.contains(p))
    fail(where, "permutation " + p.cycle_string() + " is not in the group");
  return p;
}

SubgroupHandle parse_subgroup(const json& value, const PermutationGroup& parent,
                              const std::string& where) {
  if (!value.is_array()) fail(where, "expected a list of subgroup generators");
  std::vector<Permutation> gens;
  for (const auto& entry : value) gens.push_back(parse_element(entry, parent, where));
  try {
    return SubgroupHandle(parent, std::move(gens));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

template <typename T>
const T& resolve(const std::map<std::string, T>& table, const json& ref,
                 const std::string& where, const std::string& kind) {
  if (!ref.is_string()) fail(where, "expected a " + kind + " name");
  auto it = table.find(ref.get<std::string>());
  if (it == table.end())
    fail(where, "unresolved " + kind + " reference \"" + ref.get<std::string>() + "\"");
  return it->second;
}

// ---- JSON renderings ----

ordered_json rational_json(const Rational& r) { return r.to_string(); }

ordered_json permutation_json(const Permutation& p) {
  ordered_json arr = ordered_json::array();
  for (std::uint32_t i = 0; i < p.degree(); ++i) arr.push_back(p[i]);
  return arr;
}

ordered_json fan_json(const SmoothKatoFan& fan) {
  ordered_json out;
  out["dim"] = fan.dim;
  out["rays"] = fan.rays;
  out["cones"] = fan.cones;
  return out;
}

ordered_json point_json(const FanPoint& p) {
  ordered_json out;
  out["cone"] = p.cone;
  out["coords"] = p.coords;
  out["height"] = height(p);
  return out;
}

ordered_json estimate_json(const DensityEstimate& est) {
  ordered_json out;
  out["lower"] = est.lower;
  out["upper"] = est.upper;
  out["good_primes"] = est.good_primes;
  out["successes"] = est.successes;
  out["ratio"] = rational_json(est.ratio);
  out["ratio_decimal"] = est.ratio.to_double();
  out["excluded"] = est.excluded;
  return out;
}

} // namespace

ProblemFile ProblemFile::parse(const std::string& path, const RunOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("problem file: cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw Error("problem file: " + path + ": " + e.what());
  }
  return from_json(doc, options);
}

ProblemFile ProblemFile::from_json(const json& doc, const RunOptions& options) {
  if (!doc.is_object()) throw Error("problem file: top level must be an object");
  ProblemFile pf;

  if (doc.contains("groups")) {
    for (const auto& [name, spec] : doc.at("groups").items()) {
      std::string where = "groups." + name;
      long long degree = member(spec, where, "degree").get<long long>();
      if (degree < 1) fail(where, "degree must be positive");
      std::vector<Permutation> gens;
      for (const auto& g : member(spec, where, "generators"))
        gens.push_back(parse_permutation(g, where));
      for (const auto& g : gens)
        if (g.degree() != static_cast<std::uint32_t>(degree))
          fail(where, "generator degree does not match the declared degree");
      PermutationGroup group(static_cast<std::uint32_t>(degree), std::move(gens),
                             options.cap_group_order);
      group.elements();  // eager: apply the cap and canonicalize now
      pf.groups.emplace(name, std::move(group));
    }
  }

  if (doc.contains("algebras")) {
    for (const auto& [name, spec] : doc.at("algebras").items()) {
      std::string where = "algebras." + name;
      const PermutationGroup& group =
          resolve(pf.groups, member(spec, where, "group"), where, "group");
      std::vector<SubgroupHandle> components;
      for (const auto& comp : member(spec, where, "components"))
        components.push_back(parse_subgroup(comp, group, where));
      try {
        pf.algebras.emplace(name, EtaleAlgebraDescriptor(group, std::move(components)));
      } catch (const Error& e) {
        fail(where, e.what());
      }
    }
  }

  if (doc.contains("setups")) {
    for (const auto& [name, spec] : doc.at("setups").items()) {
      std::string where = "setups." + name;
      try {
        if (spec.contains("from_algebra")) {
          const EtaleAlgebraDescriptor& d =
              resolve(pf.algebras, spec.at("from_algebra"), where, "algebra");
          pf.setups.emplace(name, setup_from_descriptor(d));
          continue;
        }
        const PermutationGroup& lambda =
            resolve(pf.groups, member(spec, where, "lambda"), where, "group");
        const PermutationGroup& g_group =
            resolve(pf.groups, member(spec, where, "G"), where, "group");
        SubgroupHandle gamma = parse_subgroup(member(spec, where, "gamma"), lambda, where);
        SubgroupHandle n = parse_subgroup(member(spec, where, "N"), g_group, where);
        std::vector<Permutation> quotient_images;
        for (const auto& q : member(spec, where, "quotient"))
          quotient_images.push_back(parse_element(q, lambda, where));
        std::uint32_t fiber_size = 0;
        std::vector<Permutation> fiber_images;
        const json& fiber = member(spec, where, "fiber_action");
        for (const auto& f : fiber) fiber_images.push_back(parse_permutation(f, where));
        if (spec.contains("fiber_size"))
          fiber_size = spec.at("fiber_size").get<std::uint32_t>();
        else if (!fiber_images.empty())
          fiber_size = fiber_images.front().degree();
        else if (!g_group.generators().empty())
          fail(where, "fiber_size is required when fiber_action is empty");
        pf.setups.emplace(name, GaloisSetup(lambda, std::move(gamma), g_group, std::move(n),
                                            std::move(quotient_images), fiber_size,
                                            std::move(fiber_images)));
      } catch (const Error& e) {
        fail(where, e.what());
      }
    }
  }

  if (doc.contains("fans")) {
    for (const auto& [name, spec] : doc.at("fans").items()) {
      std::string where = "fans." + name;
      SmoothKatoFan fan;
      fan.dim = member(spec, where, "dim").get<int>();
      for (const auto& ray : member(spec, where, "rays"))
        fan.rays.push_back(ray.get<std::vector<long long>>());
      for (const auto& cone : member(spec, where, "cones"))
        fan.cones.push_back(cone.get<std::vector<int>>());
      auto report = validate_smooth_fan(fan);
      if (!report.valid) fail(where, "invalid fan: " + report.violations.front());
      pf.fans.emplace(name, std::move(fan));
    }
  }

  if (doc.contains("morphisms")) {
    for (const auto& [name, spec] : doc.at("morphisms").items()) {
      std::string where = "morphisms." + name;
      FanMorphism m;
      m.source = resolve(pf.fans, member(spec, where, "source"), where, "fan");
      m.target = resolve(pf.fans, member(spec, where, "target"), where, "fan");
      m.cone_map = member(spec, where, "cone_map").get<std::vector<int>>();
      for (const auto& mat : member(spec, where, "matrices"))
        m.matrices.push_back(mat.get<std::vector<std::vector<long long>>>());
      try {
        validate_morphism(m);
      } catch (const Error& e) {
        fail(where, e.what());
      }
      pf.morphisms.emplace(name, std::move(m));
    }
  }

  if (doc.contains("families")) {
    for (const auto& [name, spec] : doc.at("families").items()) {
      std::string where = "families." + name;
      std::vector<std::vector<long long>> members;
      for (const auto& poly : member(spec, where, "members"))
        members.push_back(poly.get<std::vector<long long>>());
      try {
        pf.families.emplace(name, PolynomialFamily(std::move(members)));
      } catch (const Error& e) {
        fail(where, e.what());
      }
    }
  }

  if (doc.contains("jobs")) {
    const json& jobs = doc.at("jobs");
    if (!jobs.is_array()) throw Error("problem file: jobs must be an array");
    for (const auto& job : jobs) {
      member(job, "jobs", "command");
      pf.jobs.push_back(job);
    }
  }
  return pf;
}

namespace {

ordered_json run_job(const ProblemFile& pf, const json& job, const RunOptions& options) {
  std::string command = job.at("command").get<std::string>();
  std::string where = "job " + command;
  ordered_json result;

  if (command == "pseudosplit" || command == "split") {
    const EtaleAlgebraDescriptor& d =
        resolve(pf.algebras, member(job, where, "algebra"), where, "algebra");
    if (command == "split") {
      result["split"] = is_split(d);
    } else {
      SplitnessReport report = is_pseudo_split(d);
      result["pseudo_split"] = report.is_pseudo_split;
      result["split"] = report.is_split;
      ordered_json uncovered = ordered_json::array();
      for (const auto& g : report.uncovered) uncovered.push_back(permutation_json(g));
      result["uncovered"] = std::move(uncovered);
      if (report.fixed_component)
        result["component_fixed_by_all"] = *report.fixed_component;
      else
        result["component_fixed_by_all"] = nullptr;
      result["component_degrees"] = component_degrees(d);
    }
  } else if (command == "s-profile") {
    const GaloisSetup& setup = resolve(pf.setups, member(job, where, "setup"), where, "setup");
    SInvariantProfile profile = s_profile(setup);
    ordered_json classes = ordered_json::array();
    for (std::size_t i = 0; i < profile.values.classes().size(); ++i) {
      ordered_json entry;
      entry["representative"] = permutation_json(profile.values.classes()[i].representative);
      entry["size"] = profile.values.classes()[i].members.size();
      entry["value"] = rational_json(profile.values.values()[i]);
      classes.push_back(std::move(entry));
    }
    result["classes"] = std::move(classes);
    result["empty_fiber"] = profile.empty_fiber;
    result["mean"] = rational_json(profile.values.mean());
  } else if (command == "density-s1") {
    const GaloisSetup& setup = resolve(pf.setups, member(job, where, "setup"), where, "setup");
    result["density"] = rational_json(density_s_eq_1(setup));
  } else if (command == "delta") {
    const GaloisSetup& setup = resolve(pf.setups, member(job, where, "setup"), where, "setup");
    result["delta"] = rational_json(delta(setup));
  } else if (command == "predict-surjectivity" || command == "surjectivity-set") {
    const PermutationGroup& lambda =
        resolve(pf.groups, member(job, where, "lambda"), where, "group");
    std::vector<GaloisSetup> strata;
    for (const auto& ref : member(job, where, "strata"))
      strata.push_back(resolve(pf.setups, ref, where, "setup"));
    if (command == "predict-surjectivity") {
      Permutation rep = parse_element(member(job, where, "class"), lambda, where);
      result["class"] = permutation_json(rep);
      result["surjective"] = predict_surjectivity(strata, lambda, rep);
    } else {
      SurjectivitySet set = surjectivity_set(lambda, strata);
      ordered_json reps = ordered_json::array();
      for (const auto& rep : set.class_representatives) reps.push_back(permutation_json(rep));
      result["classes"] = std::move(reps);
      result["density"] = rational_json(set.density);
    }
  } else if (command == "fan-validate") {
    const SmoothKatoFan& fan = resolve(pf.fans, member(job, where, "fan"), where, "fan");
    FanValidationReport report = validate_smooth_fan(fan);
    result["valid"] = report.valid;
    result["violations"] = report.violations;
  } else if (command == "fan-subdivide") {
    const SmoothKatoFan& fan = resolve(pf.fans, member(job, where, "fan"), where, "fan");
    std::string kind = member(job, where, "kind").get<std::string>();
    Subdivision sub = [&] {
      if (kind == "barycentric") return barycentric_subdivision(fan);
      if (kind == "star")
        return star_subdivision(fan, member(job, where, "cone").get<std::vector<int>>());
      if (kind == "iterated-barycentric")
        return iterated_barycentric(fan, member(job, where, "m").get<int>());
      fail(where, "unknown subdivision kind \"" + kind + "\"");
    }();
    result["refined"] = fan_json(sub.refined);
  } else if (command == "fan-points") {
    const SmoothKatoFan& fan = resolve(pf.fans, member(job, where, "fan"), where, "fan");
    long long max_height = member(job, where, "max_height").get<long long>();
    ordered_json points = ordered_json::array();
    for (const auto& p : enumerate_points(fan, max_height)) points.push_back(point_json(p));
    result["points"] = std::move(points);
  } else if (command == "height-bound-m") {
    const FanMorphism& phi =
        resolve(pf.morphisms, member(job, where, "morphism"), where, "morphism");
    long long cap = options.cap_height;
    if (job.contains("cap")) cap = job.at("cap").get<long long>();
    HeightBoundResult hb = height_bound_m(phi, cap);
    result["m"] = hb.m;
    result["complete"] = hb.complete;
    result["search_cap"] = hb.search_cap;
    ordered_json table = ordered_json::array();
    for (const auto& entry : hb.table) {
      ordered_json row;
      row["kind"] = entry.is_source ? "source" : "target";
      row["cone"] = entry.cone;
      if (entry.is_source) row["target_cone"] = entry.target_cone;
      row["value"] = entry.value;
      row["complete"] = entry.complete;
      if (entry.witness) row["witness"] = point_json(*entry.witness);
      table.push_back(std::move(row));
    }
    result["table"] = std::move(table);
  } else if (command == "oracle-root") {
    const PolynomialFamily& family =
        resolve(pf.families, member(job, where, "family"), where, "family");
    long long p = member(job, where, "prime").get<long long>();
    result["prime"] = p;
    result["has_root"] = has_qp_root(family, p);
  } else if (command == "oracle-density") {
    const PolynomialFamily& family =
        resolve(pf.families, member(job, where, "family"), where, "family");
    long long lower = member(job, where, "lower").get<long long>();
    long long upper = member(job, where, "upper").get<long long>();
    result = estimate_json(empirical_density(family, lower, upper));
  } else if (command == "oracle-compare") {
    const PolynomialFamily& family =
        resolve(pf.families, member(job, where, "family"), where, "family");
    Rational predicted = Rational::from_string(member(job, where, "predicted").get<std::string>());
    Rational tolerance = Rational::from_string(member(job, where, "tolerance").get<std::string>());
    long long lower = member(job, where, "lower").get<long long>();
    long long upper = member(job, where, "upper").get<long long>();
    ComparisonReport report = compare_with_prediction(family, predicted, lower, upper, tolerance);
    result["estimate"] = estimate_json(report.estimate);
    result["predicted"] = rational_json(report.predicted);
    result["deviation"] = rational_json(report.deviation);
    result["tolerance"] = rational_json(report.tolerance);
    result["pass"] = report.pass;
  } else {
    fail(where, "unknown command \"" + command + "\"");
  }
  return result;
}

} // namespace

Report run(const ProblemFile& problem, const RunOptions& options) {
  std::vector<ordered_json> slots(problem.jobs.size());
  auto execute = [&](std::size_t i) {
    const json& job = problem.jobs[i];
    ordered_json entry;
    entry["index"] = i;
    entry["command"] = job.at("command").get<std::string>();
    try {
      ordered_json res = run_job(problem, job, options);
      entry["ok"] = true;
      entry["result"] = std::move(res);
    } catch (const std::exception& e) {
      entry["ok"] = false;
      entry["error"] = std::string(e.what());
    }
    slots[i] = std::move(entry);
  };

  int workers = std::max(1, options.jobs);
  if (workers == 1 || slots.size() <= 1) {
    for (std::size_t i = 0; i < slots.size(); ++i) execute(i);
  } else {
    std::vector<std::thread> pool;
    std::size_t stripe = static_cast<std::size_t>(workers);
    for (std::size_t w = 0; w < stripe; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < slots.size(); i += stripe) execute(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  Report report;
  report.doc["schema"] = "arsurj-report/1";
  report.doc["jobs"] = ordered_json::array();
  for (auto& slot : slots) report.doc["jobs"].push_back(std::move(slot));
  return report;
}

} // namespace arsurj
