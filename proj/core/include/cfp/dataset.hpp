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

#ifndef CFP_DATASET_HPP_
#define CFP_DATASET_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cfp/graph.hpp"
#include "cfp/harness.hpp"
#include "cfp/matrix.hpp"
#include "cfp/mechanisms.hpp"
#include "cfp/pdp.hpp"

namespace cfp {

// On-disk dataset directory used by the command-line tool:
//
//   graph.edges    canonical edge list (original ids)
//   dataset.json   name and ingest statistics
//   public.txt     one public original id per line
//   spec.csv       "node,epsilon" per private user
class DatasetDir {
 public:
  explicit DatasetDir(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path graph_path() const { return root_ / "graph.edges"; }
  std::filesystem::path meta_path() const { return root_ / "dataset.json"; }
  std::filesystem::path public_path() const { return root_ / "public.txt"; }
  std::filesystem::path spec_path() const { return root_ / "spec.csv"; }

  // Creates the directory and writes graph.edges and dataset.json.
  void WriteGraph(const std::string& name, const LoadedGraph& loaded) const;
  Graph ReadGraph() const;
  std::string ReadName() const;

  void WritePublic(const Graph& g, const PublicLabeling& lab) const;
  bool HasPublic() const;
  PublicLabeling ReadPublic(const Graph& g) const;

  void WriteSpec(const Graph& g, const PrivacySpec& spec) const;
  bool HasSpec() const;
  PrivacySpec ReadSpec(const Graph& g, const PublicLabeling& lab) const;

 private:
  std::filesystem::path root_;
};

// Maps an original id back to its dense id. Throws ValidationError if the id
// is not in the graph.
NodeId DenseId(const Graph& g, std::uint64_t original);

// Filled release matrix: "node,k1,...,kc" with original ids.
void WriteReleaseCsv(std::ostream& out, const DenseMatrix<double>& filled,
                     const PublicLabeling& lab, const Graph& g);

// Per-k metadata of a release as JSON.
void WriteReleaseSidecar(std::ostream& out, const ReleaseReport& report,
                         const MechanismConfig& cfg);

}  // namespace cfp

#endif  // CFP_DATASET_HPP_
