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

#ifndef CFP_CFP_ENGINE_HPP_
#define CFP_CFP_ENGINE_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cfp/graph.hpp"
#include "cfp/matrix.hpp"

namespace cfp {

using Count = std::int64_t;

// m x c matrix of k-th-hop connection fingerprint counts. Row i belongs to
// the i-th private user of the labeling it was computed for; column k - 1
// holds the number of public users at exact hop distance k.
class CfpMatrix {
 public:
  CfpMatrix() = default;
  CfpMatrix(std::vector<NodeId> private_ids, int c);

  int c() const noexcept { return c_; }
  std::size_t m() const noexcept { return counts_.rows(); }
  std::span<const NodeId> private_ids() const { return private_ids_; }

  // k is 1-based.
  Count count(std::size_t row, int k) const { return counts_(row, k - 1); }
  Count& count(std::size_t row, int k) { return counts_(row, k - 1); }
  std::vector<Count> column(int k) const { return counts_.column(k - 1); }

  const DenseMatrix<Count>& counts() const noexcept { return counts_; }

  friend bool operator==(const CfpMatrix&, const CfpMatrix&) = default;

 private:
  std::vector<NodeId> private_ids_;
  int c_ = 0;
  DenseMatrix<Count> counts_;
};

// One BFS per public user, to depth c, accumulating into private rows.
// Throws ArgumentError if c < 1 or the labeling does not match the graph.
CfpMatrix ComputeCfpMatrix(const Graph& g, const PublicLabeling& lab, int c);

// Column k of the CFP matrix alone (BFS to depth k). For k == 1 this is a
// neighbor count with no BFS.
std::vector<Count> ComputeCfpColumn(const Graph& g, const PublicLabeling& lab,
                                    int k);

// 1 for k == 1, m_p otherwise.
Count GlobalSensitivity(int k, std::size_t m_p);

// max_i p_i, where p_i is the number of public neighbors of private user i.
Count LocalSensitivity(const CfpMatrix& cfp);
Count LocalSensitivity(const Graph& g, const PublicLabeling& lab);

// I_x = min{m_p, ls + x}.
class Ladder {
 public:
  // Throws ArgumentError unless 0 <= ls <= m_p and m_p >= 1.
  Ladder(Count m_p, Count ls);

  Count m_p() const noexcept { return m_p_; }
  Count ls() const noexcept { return ls_; }
  // Number of rungs before the ladder saturates at m_p.
  Count saturation() const noexcept { return m_p_ - ls_; }

  // Throws ArgumentError for x < 0.
  Count value(Count x) const;

  friend bool operator==(const Ladder&, const Ladder&) = default;

 private:
  Count m_p_;
  Count ls_;
};

// CSV: header "node,k1,...,kc", one row per private user, original ids.
void WriteCfpCsv(std::ostream& out, const CfpMatrix& cfp, const Graph& g);

}  // namespace cfp

#endif  // CFP_CFP_ENGINE_HPP_
