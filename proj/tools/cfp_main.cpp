// Copyright 2026 The cfprelease Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: dataset bookkeeping, true counts, single releases
// and seeded MAE/MRE evaluations.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cfp/cfp_engine.hpp"
#include "cfp/dataset.hpp"
#include "cfp/errors.hpp"
#include "cfp/graph.hpp"
#include "cfp/harness.hpp"
#include "cfp/mechanisms.hpp"
#include "cfp/noise.hpp"
#include "cfp/pdp.hpp"

namespace {

namespace fs = std::filesystem;

// Config files are key=value (TOML/INI syntax). Keys outside a section apply
// to the subcommand being run; "[release]"-style sections still work.
class ScopedConfig : public CLI::ConfigTOML {
 public:
  explicit ScopedConfig(std::string subcommand)
      : subcommand_(std::move(subcommand)) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    std::vector<CLI::ConfigItem> items = CLI::ConfigTOML::from_config(in);
    if (subcommand_.empty()) return items;
    for (CLI::ConfigItem& item : items) {
      if (item.parents.empty()) item.parents = {subcommand_};
    }
    return items;
  }

 private:
  std::string subcommand_;
};

// Output stream that is either a file or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw cfp::ValidationError("cannot write " + path);
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// "1/3" or "0.25".
double ParseFraction(std::string_view text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return std::stod(std::string(text));
    const double num = std::stod(std::string(text.substr(0, slash)));
    const double den = std::stod(std::string(text.substr(slash + 1)));
    if (den == 0.0) throw cfp::ConfigError("zero denominator");
    return num / den;
  } catch (const std::logic_error&) {
    throw cfp::ConfigError(fmt::format("bad fraction '{}'", text));
  }
}

std::array<double, 3> ParseTriple(const std::vector<std::string>& tokens,
                                  std::string_view what) {
  if (tokens.size() != 3) {
    throw cfp::ConfigError(
        fmt::format("{} needs exactly three values, got {}", what,
                    tokens.size()));
  }
  return {ParseFraction(tokens[0]), ParseFraction(tokens[1]),
          ParseFraction(tokens[2])};
}

cfp::LadderSource ParseLadderSource(const std::string& name) {
  if (name == "sampled") return cfp::LadderSource::kSampledGraph;
  if (name == "input") return cfp::LadderSource::kInputGraph;
  throw cfp::ConfigError("ladder source must be 'sampled' or 'input'");
}

struct Loaded {
  cfp::Graph graph;
  cfp::PublicLabeling labeling;
};

Loaded LoadLabeled(const cfp::DatasetDir& dir) {
  Loaded d;
  d.graph = dir.ReadGraph();
  if (!dir.HasPublic()) {
    throw cfp::ValidationError(
        fmt::format("{} has no public users; run select-public first",
                    dir.root().string()));
  }
  d.labeling = dir.ReadPublic(d.graph);
  return d;
}

// ---------------------------------------------------------------------------

struct IngestArgs {
  std::string edgelist;
  std::string out;
  std::string name;
};

int RunIngest(const IngestArgs& a) {
  std::ifstream in(a.edgelist);
  if (!in) throw cfp::ValidationError("cannot open " + a.edgelist);
  const cfp::LoadedGraph loaded = cfp::LoadEdgeList(in);
  const std::string name =
      a.name.empty() ? fs::path(a.edgelist).stem().string() : a.name;
  cfp::DatasetDir(a.out).WriteGraph(name, loaded);
  std::cerr << fmt::format(
      "ingested {}: {} nodes, {} edges ({} self-loops, {} duplicates, {} "
      "isolated dropped)\n",
      name, loaded.graph.node_count(), loaded.graph.edge_count(),
      loaded.stats.self_loops_dropped, loaded.stats.duplicates_dropped,
      loaded.stats.isolated_pruned);
  return 0;
}

struct SynthArgs {
  std::string out;
  std::string name = "synthetic";
  cfp::SyntheticGraphParams params;
};

int RunSynth(const SynthArgs& a) {
  cfp::LoadedGraph loaded;
  loaded.graph = cfp::SyntheticSocialGraph(a.params);
  cfp::DatasetDir(a.out).WriteGraph(a.name, loaded);
  std::cerr << fmt::format("wrote {}: {} nodes, {} edges\n", a.name,
                           loaded.graph.node_count(),
                           loaded.graph.edge_count());
  return 0;
}

int RunSelectPublic(const std::string& dataset, double fraction) {
  const cfp::DatasetDir dir(dataset);
  const cfp::Graph g = dir.ReadGraph();
  const cfp::PublicLabeling lab = cfp::SelectPublicTopDegree(g, fraction);
  dir.WritePublic(g, lab);
  std::cerr << fmt::format("{} public, {} private\n", lab.m_p(), lab.m());
  return 0;
}

struct GenSpecArgs {
  std::string dataset;
  std::vector<std::string> fractions{"1/3", "1/3", "1/3"};
  std::vector<std::string> levels{"1", "4", "16"};
  std::uint64_t seed = 0;
};

int RunGenSpec(const GenSpecArgs& a) {
  const cfp::DatasetDir dir(a.dataset);
  const Loaded d = LoadLabeled(dir);
  cfp::GroupSpec groups;
  groups.fractions = ParseTriple(a.fractions, "--fractions");
  groups.levels = ParseTriple(a.levels, "--levels");
  cfp::NoiseSource rng(a.seed);
  const cfp::PrivacySpec spec =
      cfp::GeneratePrivacySpec(d.labeling, groups, rng);
  dir.WriteSpec(d.graph, spec);
  std::cerr << fmt::format("{} private users, mean preference {:.6g}\n",
                           spec.m(), spec.mean());
  return 0;
}

int RunCount(const std::string& dataset, int c, const std::string& out) {
  const Loaded d = LoadLabeled(cfp::DatasetDir(dataset));
  const cfp::CfpMatrix cfp = cfp::ComputeCfpMatrix(d.graph, d.labeling, c);
  Sink sink(out);
  cfp::WriteCfpCsv(sink.get(), cfp, d.graph);
  return 0;
}

int RunStats(const std::string& dataset) {
  const cfp::DatasetDir dir(dataset);
  const Loaded d = LoadLabeled(dir);
  const cfp::DatasetStats s = cfp::ComputeDatasetStats(d.graph, d.labeling);
  std::cout << fmt::format(
      "dataset,nodes,edges,diameter,density,public_users\n{},{},{},{},{:.6g},"
      "{}\n",
      dir.ReadName(), s.nodes, s.edges, s.diameter, s.density,
      s.public_users);
  return 0;
}

struct ReleaseArgs {
  std::string dataset;
  std::string mechanism = "duba-lf";
  int c = 4;
  std::optional<double> t;
  std::uint64_t seed = 0;
  std::string ladder_source = "sampled";
  std::string out;
  std::string report;
  std::string ledger;
};

int RunRelease(const ReleaseArgs& a) {
  const cfp::DatasetDir dir(a.dataset);
  const Loaded d = LoadLabeled(dir);
  if (!dir.HasSpec()) {
    throw cfp::ValidationError(fmt::format(
        "{} has no privacy spec; run gen-spec first", dir.root().string()));
  }
  const cfp::PrivacySpec spec = dir.ReadSpec(d.graph, d.labeling);

  cfp::MechanismConfig cfg;
  cfg.c = a.c;
  cfg.t = a.t.value_or(spec.mean());
  cfg.mechanism = cfp::ParseMechanism(a.mechanism);
  cfg.seed = a.seed;
  cfg.ladder_source = ParseLadderSource(a.ladder_source);

  cfp::NoiseSource rng(a.seed);
  const cfp::ReleaseReport report =
      cfp::RunMechanism(d.graph, d.labeling, spec, cfg, rng);
  for (const std::string& w : report.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  if (const cfp::LedgerVerdict verdict =
          cfp::CheckLedgerWithinSpec(report.ledger, spec);
      !verdict) {
    throw cfp::ContractViolation("budget ledger exceeds the privacy spec");
  }

  Sink sink(a.out);
  cfp::WriteReleaseCsv(sink.get(), cfp::FillNulls(report), d.labeling,
                       d.graph);
  if (!a.report.empty()) {
    Sink side(a.report);
    cfp::WriteReleaseSidecar(side.get(), report, cfg);
  }
  if (!a.ledger.empty()) {
    Sink ledger(a.ledger);
    cfp::WriteLedgerCsv(ledger.get(), report.ledger);
  }
  return 0;
}

struct EvaluateArgs {
  std::string dataset;
  std::vector<std::string> mechanisms{"uniform", "exponential", "deba",
                                      "duba-lf"};
  std::vector<int> c_list{4};
  std::vector<double> t_list{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  int trials = 100;
  std::uint64_t seed = 0;
  std::vector<std::string> fractions{"1/3", "1/3", "1/3"};
  std::vector<std::string> levels{"1", "4", "16"};
  bool resample_groups = false;
  std::string ladder_source = "sampled";
  unsigned workers = 0;
  bool runtime = false;
  std::string out;
};

int RunEvaluate(const EvaluateArgs& a) {
  const cfp::DatasetDir dir(a.dataset);
  Loaded d = LoadLabeled(dir);
  cfp::Dataset dataset{dir.ReadName(), std::move(d.graph),
                       std::move(d.labeling)};

  cfp::EvaluationConfig cfg;
  cfg.mechanisms.clear();
  for (const std::string& m : a.mechanisms) {
    cfg.mechanisms.push_back(cfp::ParseMechanism(m));
  }
  cfg.c_values = a.c_list;
  cfg.t_values = a.t_list;
  cfg.trials = a.trials;
  cfg.master_seed = a.seed;
  cfg.groups.fractions = ParseTriple(a.fractions, "--fractions");
  cfg.groups.levels = ParseTriple(a.levels, "--levels");
  cfg.resample_groups = a.resample_groups;
  cfg.ladder_source = ParseLadderSource(a.ladder_source);
  cfg.workers = a.workers;

  const cfp::EvaluationReport report = cfp::RunTrials(dataset, cfg);
  Sink sink(a.out);
  cfp::WriteEvaluationCsv(sink.get(), report, a.runtime);
  return 0;
}

// First argument naming a subcommand, so flat config keys can be scoped.
std::string FindSubcommand(const CLI::App& app, int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    for (const CLI::App* sub : app.get_subcommands({})) {
      if (sub->check_name(arg)) return sub->get_name();
    }
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Personalized-DP release of k-th-hop connection fingerprint counts"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags win");
  app.allow_config_extras(CLI::config_extras_mode::ignore);

  std::function<int()> action;

  IngestArgs ingest;
  auto* ingest_cmd =
      app.add_subcommand("ingest", "Load an edge list into a dataset dir");
  ingest_cmd->add_option("edgelist", ingest.edgelist, "Whitespace edge list")
      ->required()
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--out", ingest.out, "Dataset directory")
      ->required();
  ingest_cmd->add_option("--name", ingest.name,
                         "Dataset name (default: file stem)");
  ingest_cmd->callback([&] { action = [&] { return RunIngest(ingest); }; });

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand(
      "synth", "Write a synthetic two-community social graph dataset");
  synth_cmd->add_option("--out", synth.out, "Dataset directory")->required();
  synth_cmd->add_option("--name", synth.name)->capture_default_str();
  synth_cmd->add_option("--nodes", synth.params.nodes)->capture_default_str();
  synth_cmd->add_option("--edges", synth.params.edges)->capture_default_str();
  synth_cmd->add_option("--seed", synth.params.seed)->required();
  synth_cmd->callback([&] { action = [&] { return RunSynth(synth); }; });

  std::string select_dataset;
  double fraction = 0.05;
  auto* select_cmd = app.add_subcommand(
      "select-public", "Mark the top-degree fraction of users public");
  select_cmd->add_option("--dataset", select_dataset)->required();
  select_cmd->add_option("--fraction", fraction)->capture_default_str();
  select_cmd->callback([&] {
    action = [&] { return RunSelectPublic(select_dataset, fraction); };
  });

  GenSpecArgs gen;
  auto* gen_cmd = app.add_subcommand(
      "gen-spec", "Assign private users to privacy groups");
  gen_cmd->add_option("--dataset", gen.dataset)->required();
  gen_cmd->add_option("--fractions", gen.fractions,
                      "Conservative,moderate,liberal shares (a/b allowed)")
      ->delimiter(',')
      ->capture_default_str();
  gen_cmd->add_option("--levels", gen.levels, "Group privacy levels")
      ->delimiter(',')
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->callback([&] { action = [&] { return RunGenSpec(gen); }; });

  std::string count_dataset;
  std::string count_out;
  int count_c = 4;
  auto* count_cmd =
      app.add_subcommand("count", "Write the true fingerprint counts as CSV");
  count_cmd->add_option("--dataset", count_dataset)->required();
  count_cmd->add_option("--c", count_c)->capture_default_str();
  count_cmd->add_option("--out", count_out, "CSV path (default: stdout)");
  count_cmd->callback([&] {
    action = [&] { return RunCount(count_dataset, count_c, count_out); };
  });

  std::string stats_dataset;
  auto* stats_cmd =
      app.add_subcommand("stats", "Print node, edge and diameter statistics");
  stats_cmd->add_option("--dataset", stats_dataset)->required();
  stats_cmd->callback([&] {
    action = [&] { return RunStats(stats_dataset); };
  });

  ReleaseArgs release;
  auto* release_cmd =
      app.add_subcommand("release", "Run one private release");
  release_cmd->add_option("--dataset", release.dataset)->required();
  release_cmd
      ->add_option("--mechanism", release.mechanism,
                   "uniform, exponential, deba or duba-lf")
      ->capture_default_str();
  release_cmd->add_option("--c", release.c)->capture_default_str();
  release_cmd->add_option("--t", release.t,
                          "Sampling threshold (default: mean preference)");
  release_cmd->add_option("--seed", release.seed)->required();
  release_cmd->add_option("--ladder-source", release.ladder_source,
                          "sampled or input")
      ->capture_default_str();
  release_cmd->add_option("--out", release.out, "CSV path (default: stdout)");
  release_cmd->add_option("--report", release.report,
                          "Per-step JSON sidecar path");
  release_cmd->add_option("--ledger", release.ledger, "Budget ledger CSV path");
  release_cmd->callback([&] { action = [&] { return RunRelease(release); }; });

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand(
      "evaluate", "Seeded MAE/MRE trials over mechanisms, c and t");
  eval_cmd->add_option("--dataset", eval.dataset)->required();
  eval_cmd->add_option("--mechanisms", eval.mechanisms)
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_option("--c-list", eval.c_list)
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_option("--t-list", eval.t_list)
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_option("--trials", eval.trials)->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed)->required();
  eval_cmd->add_option("--fractions", eval.fractions)
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_option("--levels", eval.levels)
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_flag("--resample-groups", eval.resample_groups,
                     "Draw a new group assignment for every trial");
  eval_cmd->add_option("--ladder-source", eval.ladder_source)
      ->capture_default_str();
  eval_cmd->add_option("--workers", eval.workers, "0 = all cores")
      ->capture_default_str();
  eval_cmd->add_flag("--runtime", eval.runtime,
                     "Append a mean_runtime_ms column");
  eval_cmd->add_option("--out", eval.out, "CSV path (default: stdout)");
  eval_cmd->callback([&] { action = [&] { return RunEvaluate(eval); }; });

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  app.config_formatter(
      std::make_shared<ScopedConfig>(FindSubcommand(app, argc, argv)));

  CLI11_PARSE(app, argc, argv);

  try {
    return action();
  } catch (const cfp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
  } catch (const cfp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 1;
}
