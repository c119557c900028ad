// Copyright 2026 The mpstruct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mpstruct: synthesize, validate, evaluate, export and verify multi-input
// computation structures.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpstruct/cost_model.hpp"
#include "mpstruct/errors.hpp"
#include "mpstruct/iso_drt.hpp"
#include "mpstruct/oracles.hpp"
#include "mpstruct/star_optimizer.hpp"
#include "mpstruct/star_tree.hpp"
#include "mpstruct/structure.hpp"
#include "mpstruct/structure_io.hpp"

#ifndef MPSTRUCT_VERSION
#define MPSTRUCT_VERSION "0.0.0"
#endif

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace mpstruct;

enum Exit : int { kOk = 0, kUsage = 1, kInfeasible = 2, kMismatch = 3 };

struct Options {
  std::string costs_path;
  std::string out_dir;
  std::string format = "json";
  bool all_optima = false;
  bool prune = false;
  int budget_leaves = 0;
  std::string seed_policy = "largest-first";
  std::vector<int> level_order;

  std::string mode;
  int n = 0;
  std::string path;
};

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int k = 0; k < length; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", digest[k]);
    hex += buf;
  }
  return hex;
}

// Collects artifacts and the run manifest. Files go under --out when it is
// set; otherwise the primary artifact goes to stdout.
class Run {
 public:
  Run(std::string command, const Options& opts)
      : command_(std::move(command)), opts_(opts), start_(std::chrono::steady_clock::now()) {
    if (!opts_.out_dir.empty()) fs::create_directories(opts_.out_dir);
  }

  void param(const std::string& key, json value) { params_[key] = std::move(value); }
  void cost_model(const CostModel& cm) { digest_ = "sha256:" + sha256_hex(serialize_cost_model(cm)); }

  /// Writes `body` to <out>/<name>; without --out, the primary artifact is
  /// printed to stdout and secondary ones are dropped.
  void emit(const std::string& name, const std::string& body, bool primary) {
    if (opts_.out_dir.empty()) {
      if (primary) {
        std::cout << body;
        outputs_.push_back("<stdout>");
      }
      return;
    }
    const fs::path file = fs::path(opts_.out_dir) / name;
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << body;
    outputs_.push_back(file.string());
  }

  /// Summary lines go to stdout when artifacts go to files, else stderr.
  std::ostream& summary() { return opts_.out_dir.empty() ? std::cerr : std::cout; }

  void finish(int exit_code) {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json manifest;
    manifest["command"] = command_;
    manifest["parameters"] = params_;
    manifest["cost_model_digest"] = digest_.empty() ? json(nullptr) : json(digest_);
    manifest["tool_version"] = MPSTRUCT_VERSION;
    manifest["outputs"] = outputs_;
    manifest["exit_code"] = exit_code;
    manifest["wall_time_seconds"] = seconds;
    const std::string text = manifest.dump(2) + "\n";
    if (opts_.out_dir.empty()) {
      std::cerr << text;
    } else {
      std::ofstream(fs::path(opts_.out_dir) / "manifest.json", std::ios::binary) << text;
    }
  }

 private:
  std::string command_;
  const Options& opts_;
  std::chrono::steady_clock::time_point start_;
  json params_ = json::object();
  std::string digest_;
  std::vector<std::string> outputs_;
};

std::string extension(Format f) { return f == Format::json ? "json" : "dot"; }

std::string compact(const std::vector<int>& counts) {
  std::string out;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (k) out += '-';
    out += std::to_string(counts[k]);
  }
  return out;
}

CostModel require_costs(const Options& opts) {
  if (opts.costs_path.empty()) throw ConfigError("--costs", "a cost model file is required");
  return load_cost_model_file(opts.costs_path);
}

void print_row(std::ostream& os, const std::string& key, const std::string& value) {
  os << key << std::string(key.size() < 10 ? 10 - key.size() : 1, ' ') << value << "\n";
}

int cmd_synthesize(const Options& opts, Run& run) {
  const CostModel costs = require_costs(opts);
  const Format format = parse_format(opts.format);
  run.cost_model(costs);
  run.param("mode", opts.mode);
  run.param("n", opts.n);
  run.param("format", opts.format);
  run.param("all_optima", opts.all_optima);

  auto& out = run.summary();
  if (opts.mode == "star") {
    const GrowthPolicy policy = parse_growth_policy(opts.seed_policy);
    run.param("seed_policy", to_string(policy));
    const StarSynthesis s = complexity_then_latency(opts.n, costs);
    run.emit("structure." + extension(format), export_structure(s.structure, format), true);
    run.emit("star_tree.json", star_tree_to_json(s.tree), false);

    // The policy-grown tree for the same degree vector, for comparison.
    const StarTree seed = star_tree_from_degree_vector(s.degree_vector, opts.n, policy);
    run.emit("seed_structure." + extension(format), export_structure(structure_from_star_tree(seed), format), false);

    if (opts.all_optima) {
      for (const DegreeVector& q : s.optimal_degree_vectors) {
        const StarLatencyResult r = min_star_latency(q, costs);
        run.emit("structure_q" + compact(q.counts) + "." + extension(format),
                 export_structure(structure_from_star_tree(r.tree), format), false);
        print_row(out, "optimum", q.to_string() + " L=" + to_string(r.value));
      }
    }
    print_row(out, "mode", "star");
    print_row(out, "n", std::to_string(opts.n));
    print_row(out, "C", to_string(s.complexity));
    print_row(out, "L", to_string(s.latency));
    print_row(out, "q", s.degree_vector.to_string());
    print_row(out, "seed L", to_string(star_tree_latency(seed, costs)));
    return kOk;
  }

  if (opts.mode != "isom") throw ConfigError("mode", "expected 'star' or 'isom', got '" + opts.mode + "'");
  run.param("prune", opts.prune);
  if (!opts.level_order.empty()) run.param("level_order", opts.level_order);

  IsoSynthesis s;
  std::vector<TypeVector> optimal;
  if (opts.prune) {
    if (!opts.level_order.empty()) throw ConfigError("--level-order", "not supported together with --prune");
    s = min_latency_pruned(opts.n, costs);
    optimal = {s.type_vector};
  } else {
    const std::optional<std::vector<int>> order =
        opts.level_order.empty() ? std::nullopt : std::optional<std::vector<int>>(opts.level_order);
    s = synthesize_isomorphic(opts.n, costs, order);
    optimal = min_iso_latency(opts.n, costs).optimal;
  }
  run.emit("structure." + extension(format), export_structure(s.structure, format), true);
  if (!s.prune_log.empty()) {
    std::string log;
    for (const auto& line : s.prune_log) log += line + "\n";
    run.emit("prune_log.txt", log, false);
  }
  if (opts.all_optima && !opts.prune) {
    for (const TypeVector& w : optimal) {
      const IsoDrt d = iso_drt_from_type_vector(w);
      run.emit("structure_w" + compact(w.counts) + "." + extension(format),
               export_structure(structure_from_iso_drt(d, consecutive_labeling(d, opts.n)), format), false);
      print_row(out, "optimum", w.to_string() + " C=" + to_string(iso_complexity(w, opts.n, costs)));
    }
  }
  print_row(out, "mode", opts.prune ? "isom (pruned)" : "isom");
  print_row(out, "n", std::to_string(opts.n));
  print_row(out, "C", to_string(complexity(s.structure, costs)));
  print_row(out, "L", to_string(s.latency));
  print_row(out, "w", s.type_vector.to_string());
  print_row(out, "n'", std::to_string(s.expanded_size));
  return kOk;
}

int cmd_validate(const Options& opts, Run& run) {
  run.param("path", opts.path);
  const Dag g = parse_structure_json(read_file(opts.path));
  const ValidationReport report = validate(g);
  run.emit("validation.json", report.to_json(g), true);
  return report.ok() ? kOk : kMismatch;
}

int cmd_eval(const Options& opts, Run& run) {
  const CostModel costs = require_costs(opts);
  run.cost_model(costs);
  run.param("path", opts.path);
  const Dag g = parse_structure_json(read_file(opts.path));
  const ValidationReport report = validate(g);

  json doc;
  doc["valid"] = report.ok();
  doc["n"] = g.input_size();
  doc["nodes"] = g.node_count();
  const auto histogram = fan_in_histogram(g);
  json by_fan_in = json::object();
  for (std::size_t k = 2; k < histogram.size(); ++k) {
    if (histogram[k]) by_fan_in[std::to_string(k)] = histogram[k];
  }
  doc["fan_in_counts"] = std::move(by_fan_in);
  if (report.passed(Check::acyclic) && report.passed(Check::fan_in)) {
    doc["complexity"] = to_string(complexity(g, costs));
    doc["latency"] = to_string(latency(g, costs));
  }
  if (!report.ok()) {
    json failed = json::array();
    for (const auto& v : report.violations) failed.push_back(to_string(v.check));
    doc["failed_checks"] = std::move(failed);
  }
  run.emit("eval.json", doc.dump(2) + "\n", true);
  return report.ok() ? kOk : kMismatch;
}

int cmd_export(const Options& opts, Run& run) {
  const Format format = parse_format(opts.format);
  run.param("path", opts.path);
  run.param("format", opts.format);
  const Dag g = parse_structure_json(read_file(opts.path));
  const std::string stem = fs::path(opts.path).stem().string();
  run.emit(stem + "." + extension(format), export_structure(g, format), true);
  return kOk;
}

int cmd_verify(const Options& opts, Run& run) {
  const CostModel costs = require_costs(opts);
  run.cost_model(costs);
  run.param("n", opts.n);
  EnumerationBudget budget;
  if (opts.budget_leaves > 0) {
    budget.max_star_leaves = opts.budget_leaves;
    budget.max_drt_leaves = opts.budget_leaves;
    run.param("budget_leaves", opts.budget_leaves);
  }
  const VerifyReport report = verify_report(opts.n, costs, budget);
  run.emit("verify.json", report.to_json(), true);
  std::size_t skipped = 0;
  for (const auto& c : report.checks) skipped += c.skipped.empty() ? 0 : 1;
  run.summary() << "checks " << report.checks.size() << ", failed " << report.failures() << ", skipped "
                << skipped << "\n";
  return report.all_passed() ? kOk : kMismatch;
}

void diagnostic(const std::string& kind, const std::string& message, const json& extra = json::object()) {
  json doc;
  doc["error"] = kind;
  doc["message"] = message;
  for (const auto& [k, v] : extra.items()) doc[k] = v;
  std::cerr << doc.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesize, validate and evaluate multi-input computation structures", "mpstruct"};
  app.set_version_flag("--version", std::string(MPSTRUCT_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  app.add_option("--costs", opts.costs_path, "Cost model JSON file");
  app.add_option("--out", opts.out_dir, "Directory for artifacts and manifest.json");
  app.add_option("--format", opts.format, "Structure format")->check(CLI::IsMember({"json", "dot"}));
  app.add_flag("--all-optima", opts.all_optima, "Emit every optimal degree or type vector");
  app.add_flag("--prune", opts.prune, "Isomorphic mode: synthesize a larger n' and prune to n");
  app.add_option("--budget-leaves", opts.budget_leaves, "Leaf cap for oracle enumerations")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed-policy", opts.seed_policy, "Growth policy for the seed star tree")
      ->check(CLI::IsMember({"largest-first", "smallest-first", "balanced"}));
  app.add_option("--level-order", opts.level_order, "Isomorphic mode: per-level fan-ins, top-down")
      ->delimiter(',');

  auto* synth = app.add_subcommand("synthesize", "Build an optimal structure");
  synth->add_option("mode", opts.mode, "star or isom")->required()->check(CLI::IsMember({"star", "isom"}));
  synth->add_option("n", opts.n, "Input size")->required()->check(CLI::Range(2, 100000));
  auto* val = app.add_subcommand("validate", "Check the structure properties of a JSON file");
  val->add_option("path", opts.path)->required();
  auto* ev = app.add_subcommand("eval", "Complexity and latency of a JSON structure");
  ev->add_option("path", opts.path)->required();
  auto* ex = app.add_subcommand("export", "Convert a JSON structure to --format");
  ex->add_option("path", opts.path)->required();
  auto* ver = app.add_subcommand("verify", "Compare every optimizer with its brute-force oracle");
  ver->add_option("n", opts.n, "Input size")->required()->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::optional<Run> run;
  int code = kOk;
  try {
    run.emplace(command, opts);
    if (command == "synthesize") code = cmd_synthesize(opts, *run);
    else if (command == "validate") code = cmd_validate(opts, *run);
    else if (command == "eval") code = cmd_eval(opts, *run);
    else if (command == "export") code = cmd_export(opts, *run);
    else code = cmd_verify(opts, *run);
  } catch (const ConfigError& e) {
    diagnostic("config", e.what(), {{"field", e.field()}});
    code = kUsage;
  } catch (const ParseError& e) {
    diagnostic("parse", e.what(), {{"path", opts.path}, {"location", e.location()}});
    code = kUsage;
  } catch (const InfeasibleError& e) {
    diagnostic("infeasible", e.what());
    code = kInfeasible;
  } catch (const StructureError& e) {
    diagnostic("structure", e.what(), {{"path", opts.path}});
    code = kMismatch;
  } catch (const std::exception& e) {
    diagnostic("error", e.what());
    code = kUsage;
  }
  if (run) run->finish(code);
  return code;
}
