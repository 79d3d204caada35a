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

#include "cfp/cfp_engine.hpp"

#include <algorithm>
#include <ostream>

#include "cfp/errors.hpp"

namespace cfp {
namespace {

void CheckLabeling(const Graph& g, const PublicLabeling& lab) {
  if (lab.node_count() != g.node_count()) {
    throw ArgumentError("labeling node count does not match graph");
  }
}

}  // namespace

CfpMatrix::CfpMatrix(std::vector<NodeId> private_ids, int c)
    : private_ids_(std::move(private_ids)),
      c_(c),
      counts_(private_ids_.size(), static_cast<std::size_t>(c), 0) {}

CfpMatrix ComputeCfpMatrix(const Graph& g, const PublicLabeling& lab, int c) {
  if (c < 1) throw ArgumentError("counting range c must be >= 1");
  CheckLabeling(g, lab);
  CfpMatrix out(std::vector<NodeId>(lab.private_ids().begin(),
                                    lab.private_ids().end()),
                c);
  BfsWorkspace ws(g.node_count());
  for (NodeId source : lab.public_ids()) {
    ws.Run(g, source, c, [&](NodeId v, int d) {
      if (d == 0) return;
      const std::size_t row = lab.private_row(v);
      if (row != PublicLabeling::kNoRow) ++out.count(row, d);
    });
  }
  return out;
}

std::vector<Count> ComputeCfpColumn(const Graph& g, const PublicLabeling& lab,
                                    int k) {
  if (k < 1) throw ArgumentError("hop distance k must be >= 1");
  CheckLabeling(g, lab);
  std::vector<Count> col(lab.m(), 0);
  if (k == 1) {
    for (std::size_t row = 0; row < lab.m(); ++row) {
      for (NodeId w : g.neighbors(lab.private_ids()[row])) {
        col[row] += lab.is_public(w) ? 1 : 0;
      }
    }
    return col;
  }
  BfsWorkspace ws(g.node_count());
  for (NodeId source : lab.public_ids()) {
    ws.Run(g, source, k, [&](NodeId v, int d) {
      if (d != k) return;
      const std::size_t row = lab.private_row(v);
      if (row != PublicLabeling::kNoRow) ++col[row];
    });
  }
  return col;
}

Count GlobalSensitivity(int k, std::size_t m_p) {
  if (k < 1) throw ArgumentError("hop distance k must be >= 1");
  if (m_p < 1) throw ArgumentError("m_p must be >= 1");
  return k == 1 ? 1 : static_cast<Count>(m_p);
}

Count LocalSensitivity(const CfpMatrix& cfp) {
  if (cfp.c() < 1) throw ArgumentError("CFP matrix has no columns");
  Count best = 0;
  for (std::size_t row = 0; row < cfp.m(); ++row) {
    best = std::max(best, cfp.count(row, 1));
  }
  return best;
}

Count LocalSensitivity(const Graph& g, const PublicLabeling& lab) {
  const std::vector<Count> first = ComputeCfpColumn(g, lab, 1);
  return first.empty() ? 0 : *std::max_element(first.begin(), first.end());
}

Ladder::Ladder(Count m_p, Count ls) : m_p_(m_p), ls_(ls) {
  if (m_p < 1) throw ArgumentError("ladder requires m_p >= 1");
  if (ls < 0 || ls > m_p) {
    throw ArgumentError("ladder local sensitivity must lie in [0, m_p]");
  }
}

Count Ladder::value(Count x) const {
  if (x < 0) throw ArgumentError("ladder index must be non-negative");
  return std::min(m_p_, ls_ + x);
}

void WriteCfpCsv(std::ostream& out, const CfpMatrix& cfp, const Graph& g) {
  out << "node";
  for (int k = 1; k <= cfp.c(); ++k) out << ",k" << k;
  out << '\n';
  for (std::size_t row = 0; row < cfp.m(); ++row) {
    out << g.original_id(cfp.private_ids()[row]);
    for (int k = 1; k <= cfp.c(); ++k) out << ',' << cfp.count(row, k);
    out << '\n';
  }
}

}  // namespace cfp
