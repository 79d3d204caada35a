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

#include <cstdint>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "cfp/cfp_engine.hpp"
#include "cfp/graph.hpp"
#include "cfp/harness.hpp"
#include "cfp/ladder_sampler.hpp"
#include "cfp/mechanisms.hpp"
#include "cfp/noise.hpp"
#include "cfp/pdp.hpp"

namespace {

struct Fixture {
  cfp::Graph graph;
  cfp::PublicLabeling labeling;
  cfp::PrivacySpec spec;
};

Fixture MakeFixture(std::size_t nodes) {
  cfp::SyntheticGraphParams params;
  params.nodes = nodes;
  params.edges = nodes * 14;
  Fixture f;
  f.graph = cfp::SyntheticSocialGraph(params);
  f.labeling = cfp::SelectPublicTopDegree(f.graph, 0.05);
  cfp::NoiseSource rng(1);
  f.spec = cfp::GeneratePrivacySpec(f.labeling, cfp::GroupSpec{}, rng);
  return f;
}

void BM_CfpMatrix(benchmark::State& state) {
  const Fixture f = MakeFixture(static_cast<std::size_t>(state.range(0)));
  const int c = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfp::ComputeCfpMatrix(f.graph, f.labeling, c));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(f.labeling.m_p()));
}
BENCHMARK(BM_CfpMatrix)
    ->Args({1222, 4})
    ->Args({1222, 7})
    ->Args({5000, 4})
    ->Unit(benchmark::kMillisecond);

void BM_BfsHopDistances(benchmark::State& state) {
  const Fixture f = MakeFixture(static_cast<std::size_t>(state.range(0)));
  const cfp::NodeId source = f.labeling.public_ids().front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfp::BfsHopDistances(f.graph, source, 7));
  }
}
BENCHMARK(BM_BfsHopDistances)->Arg(1222)->Arg(5000);

void BM_SampleGraph(benchmark::State& state) {
  const Fixture f = MakeFixture(1222);
  cfp::NoiseSource rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cfp::SampleGraph(f.graph, f.labeling, f.spec, 0.25, 7.0 / 4, rng));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(f.graph.edge_count()));
}
BENCHMARK(BM_SampleGraph)->Unit(benchmark::kMicrosecond);

void BM_LfNoising(benchmark::State& state) {
  const cfp::Count m_p = state.range(0);
  const cfp::Ladder ladder(m_p, state.range(1));
  const std::vector<cfp::Count> base(1000, m_p / 2);
  cfp::NoiseSource rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfp::LfNoising(base, 0.5, ladder, rng));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(base.size()));
}
BENCHMARK(BM_LfNoising)->Args({61, 30})->Args({1000, 40});

void BM_Mechanism(benchmark::State& state) {
  const Fixture f = MakeFixture(1222);
  cfp::MechanismConfig cfg;
  cfg.mechanism = static_cast<cfp::Mechanism>(state.range(0));
  const cfp::CfpMatrix truth =
      cfp::ComputeCfpMatrix(f.graph, f.labeling, cfg.c);
  cfp::NoiseSource rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cfp::RunMechanism(f.graph, f.labeling, f.spec, cfg, rng, &truth));
  }
  state.SetLabel(std::string(cfp::ToString(cfg.mechanism)));
}
BENCHMARK(BM_Mechanism)
    ->DenseRange(0, 3)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
