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

#include "cfp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "cfp/errors.hpp"
#include "json.hpp"

namespace cfp {
namespace {

using nlohmann::json;

std::ifstream OpenIn(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::uint64_t ParseId(std::string_view token, std::size_t line) {
  token = Trim(token);
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, fmt::format("bad node id '{}'", token));
  }
  return v;
}

double ParseReal(std::string_view token, std::size_t line) {
  token = Trim(token);
  try {
    std::size_t used = 0;
    const std::string s(token);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, fmt::format("bad number '{}'", token));
  }
}

}  // namespace

NodeId DenseId(const Graph& g, std::uint64_t original) {
  const auto ids = g.original_ids();
  if (std::is_sorted(ids.begin(), ids.end())) {
    const auto it = std::lower_bound(ids.begin(), ids.end(), original);
    if (it != ids.end() && *it == original) {
      return static_cast<NodeId>(it - ids.begin());
    }
  } else {
    const auto it = std::find(ids.begin(), ids.end(), original);
    if (it != ids.end()) return static_cast<NodeId>(it - ids.begin());
  }
  throw ValidationError(fmt::format("node {} is not in the graph", original));
}

void DatasetDir::WriteGraph(const std::string& name,
                            const LoadedGraph& loaded) const {
  std::filesystem::create_directories(root_);
  {
    auto out = OpenOut(graph_path());
    WriteEdgeList(out, loaded.graph);
  }
  json meta = {
      {"name", name},
      {"nodes", loaded.graph.node_count()},
      {"edges", loaded.graph.edge_count()},
      {"self_loops_dropped", loaded.stats.self_loops_dropped},
      {"duplicates_dropped", loaded.stats.duplicates_dropped},
      {"isolated_pruned", loaded.stats.isolated_pruned},
  };
  auto out = OpenOut(meta_path());
  out << meta.dump(2) << '\n';
}

Graph DatasetDir::ReadGraph() const {
  auto in = OpenIn(graph_path());
  return LoadEdgeList(in).graph;
}

std::string DatasetDir::ReadName() const {
  if (!std::filesystem::exists(meta_path())) return root_.filename().string();
  auto in = OpenIn(meta_path());
  const json meta = json::parse(in);
  return meta.value("name", root_.filename().string());
}

void DatasetDir::WritePublic(const Graph& g, const PublicLabeling& lab) const {
  auto out = OpenOut(public_path());
  out << "# public users (" << lab.m_p() << " of " << lab.node_count()
      << ")\n";
  for (NodeId v : lab.public_ids()) out << g.original_id(v) << '\n';
}

bool DatasetDir::HasPublic() const {
  return std::filesystem::exists(public_path());
}

PublicLabeling DatasetDir::ReadPublic(const Graph& g) const {
  auto in = OpenIn(public_path());
  std::vector<NodeId> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view s = Trim(line);
    if (s.empty() || s.front() == '#') continue;
    ids.push_back(DenseId(g, ParseId(s, line_no)));
  }
  return PublicLabeling::FromPublicSet(g.node_count(), ids);
}

void DatasetDir::WriteSpec(const Graph& g, const PrivacySpec& spec) const {
  auto out = OpenOut(spec_path());
  out << "node,epsilon\n";
  for (std::size_t row = 0; row < spec.m(); ++row) {
    out << fmt::format("{},{:.17g}\n", g.original_id(spec.private_ids()[row]),
                       spec.row_preference(row));
  }
}

bool DatasetDir::HasSpec() const { return std::filesystem::exists(spec_path()); }

PrivacySpec DatasetDir::ReadSpec(const Graph& g,
                                 const PublicLabeling& lab) const {
  auto in = OpenIn(spec_path());
  std::unordered_map<NodeId, double> prefs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view s = Trim(line);
    if (s.empty() || s.front() == '#' || s.starts_with("node")) continue;
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError(line_no, "expected 'node,epsilon'");
    }
    const NodeId v = DenseId(g, ParseId(s.substr(0, comma), line_no));
    prefs[v] = ParseReal(s.substr(comma + 1), line_no);
  }
  return PrivacySpec::FromMap(lab, prefs);
}

void WriteReleaseCsv(std::ostream& out, const DenseMatrix<double>& filled,
                     const PublicLabeling& lab, const Graph& g) {
  out << "node";
  for (std::size_t k = 1; k <= filled.cols(); ++k) out << ",k" << k;
  out << '\n';
  for (std::size_t row = 0; row < filled.rows(); ++row) {
    out << g.original_id(lab.private_ids()[row]);
    for (double v : filled.row(row)) out << fmt::format(",{:.10g}", v);
    out << '\n';
  }
}

void WriteReleaseSidecar(std::ostream& out, const ReleaseReport& report,
                         const MechanismConfig& cfg) {
  json steps = json::array();
  for (const StepRecord& s : report.steps) {
    json j = {{"k", s.k},
              {"published", s.published},
              {"epsilon_m1", s.epsilon_m1},
              {"epsilon_m2", s.epsilon_m2},
              {"share", s.share},
              {"noisy_dist", nullptr},
              {"threshold", nullptr}};
    if (s.noisy_dist) j["noisy_dist"] = *s.noisy_dist;
    if (s.threshold) j["threshold"] = *s.threshold;
    if (s.laplace_scale) j["laplace_scale"] = *s.laplace_scale;
    if (s.ladder_ls) j["ladder_ls"] = *s.ladder_ls;
    steps.push_back(std::move(j));
  }
  json doc = {
      {"mechanism", std::string(ToString(report.mechanism))},
      {"c", report.c},
      {"t", report.t},
      {"seed", cfg.seed},
      {"ladder_source", cfg.ladder_source == LadderSource::kSampledGraph
                            ? "sampled"
                            : "input"},
      {"private_users", report.m},
      {"steps", std::move(steps)},
      {"distance_fraction", report.ledger.PhaseFraction(Phase::kDistance)},
      {"publication_fraction",
       report.ledger.PhaseFraction(Phase::kPublication)},
      {"warnings", report.warnings},
  };
  out << doc.dump(2) << '\n';
}

}  // namespace cfp
