#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "matchfield/survey.hpp"

namespace {

using nlohmann::json;

json read_json_input(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

// Result JSON goes to stdout (and optionally to a file); humans read stderr.
bool emit(const json& out, const std::string& json_path) {
  std::cout << out.dump(2) << "\n";
  if (json_path.empty()) return true;
  std::ofstream f(json_path);
  f << out.dump(2) << "\n";
  if (!f) {
    std::cerr << "error: cannot write " << json_path << "\n";
    return false;
  }
  return true;
}

void describe_outcome(const json& out) {
  if (out.contains("error")) {
    std::cerr << "error: " << out["error"].get<std::string>() << "\n";
  } else if (out.value("kind", "") == "match") {
    std::cerr << "matched: target basis constructed and verified\n";
  } else if (out.value("kind", "") == "violation") {
    std::cerr << "violation: J=" << out["J"].dump() << " has dim "
              << out["vdim"] << " > " << out["bound"] << "\n";
  } else if (out.contains("exists")) {
    std::cerr << (out["exists"].get<bool>()
                      ? "strong matching exists (every isomorphism works)\n"
                      : "no strong matching exists\n");
  }
}

int run_instance_command(int (*fn)(const json&, json&),
                         const std::string& in_path,
                         const std::string& json_path) {
  json out;
  int rc;
  try {
    json inst = read_json_input(in_path);
    rc = fn(inst, out);
  } catch (const std::exception& e) {
    out = json{{"error", e.what()}};
    rc = 2;
  }
  if (!emit(out, json_path)) rc = 2;
  describe_outcome(out);
  return rc;
}

// --field accepts "p,k" or "p,k,c0:c1:...:ck" (modulus constant term first).
void apply_field_flag(const std::string& s, matchfield::SweepParams& sp) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  try {
    if (parts.size() == 2 || parts.size() == 3) {
      sp.p = std::stoull(parts[0]);
      sp.k = static_cast<unsigned>(std::stoul(parts[1]));
      if (parts.size() == 3) {
        matchfield::fpm::Row mod;
        std::stringstream ms(parts[2]);
        while (std::getline(ms, item, ':'))
          mod.push_back(static_cast<uint32_t>(std::stoul(item)));
        sp.modulus = std::move(mod);
      }
      return;
    }
  } catch (const std::logic_error&) {
    // fall through to the shared error
  }
  throw std::invalid_argument("--field expects p,k or p,k,c0:c1:...:ck");
}

int run_sweep_command(matchfield::SweepParams sp, const std::string& field_flag,
                      const std::string& json_path) {
  json out;
  int rc;
  try {
    if (!field_flag.empty()) apply_field_flag(field_flag, sp);
    matchfield::SweepReport report = matchfield::run_sweep(sp);
    out = matchfield::report_to_json(report);
    std::cerr << matchfield::report_summary(report);
    rc = report.failures == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    out = json{{"error", e.what()}};
    std::cerr << "error: " << e.what() << "\n";
    rc = 2;
  }
  if (!emit(out, json_path)) rc = 2;
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact matchings between F_p-subspaces of a finite field extension"};
  app.require_subcommand(1);

  std::string in_path;
  std::string json_path;
  std::string field_flag;
  matchfield::SweepParams sp;
  std::string group_name;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("instance", in_path,
                    "instance JSON file, or - for standard input")
        ->required();
    cmd->add_option("--json", json_path, "also write the result to this file");
  };
  CLI::App* match_cmd = app.add_subcommand(
      "match", "construct a matched basis of B or report a violating subset");
  add_io(match_cmd);
  CLI::App* auto_cmd =
      app.add_subcommand("automatch", "match a subspace against itself");
  add_io(auto_cmd);
  CLI::App* strong_cmd = app.add_subcommand(
      "strong", "decide whether a strong matching A -> B exists");
  add_io(strong_cmd);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a theorem-probing sweep");
  sweep_cmd
      ->add_option("task", sp.task,
                   "automatch | matchingProperty | strongMatching | "
                   "refinement | olson | groups")
      ->required();
  sweep_cmd->add_option("--field", field_flag,
                        "p,k or p,k,c0:c1:...:ck (constant term first)");
  sweep_cmd->add_option("--dim", sp.dim, "subspace dimension (default 2)");
  sweep_cmd->add_option("--dim-b", sp.dim_b, "dimension of B (olson)");
  sweep_cmd->add_option("--samples", sp.samples,
                        "random instances to draw; 0 = exhaustive");
  sweep_cmd->add_option("--seed", sp.seed, "RNG seed (default 0)");
  sweep_cmd->add_option("--cap", sp.cap, "enumeration guard cap");
  sweep_cmd->add_option("--phi-samples", sp.phi_samples,
                        "isomorphisms sampled per pair (strongMatching)");
  sweep_cmd->add_option("--group", group_name, "group name, e.g. Z6 (groups)");
  sweep_cmd->add_option("--max-size", sp.max_size,
                        "largest subset size scanned (groups)");
  sweep_cmd->add_option("--json", json_path,
                        "also write the report to this file");

  CLI::App* groups_cmd =
      app.add_subcommand("groups", "matchings in abelian groups");
  groups_cmd->require_subcommand(1);
  CLI::App* scan_cmd = groups_cmd->add_subcommand(
      "scan", "scan all subset pairs for the matching property");
  scan_cmd->add_option("--group", group_name, "group name, e.g. Z6")
      ->required();
  scan_cmd->add_option("--max-size", sp.max_size,
                       "largest subset size scanned (default 2)");
  scan_cmd->add_option("--cap", sp.cap, "enumeration guard cap");
  scan_cmd->add_option("--json", json_path,
                       "also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!group_name.empty()) sp.group = group_name;
  if (*match_cmd)
    return run_instance_command(matchfield::cmd_match, in_path, json_path);
  if (*auto_cmd)
    return run_instance_command(matchfield::cmd_automatch, in_path, json_path);
  if (*strong_cmd)
    return run_instance_command(matchfield::cmd_strong, in_path, json_path);
  if (*sweep_cmd) return run_sweep_command(sp, field_flag, json_path);
  if (*groups_cmd) {
    sp.task = "groups";
    return run_sweep_command(sp, "", json_path);
  }
  return 2;
}
