#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "eigenform/graphs.hpp"
#include "eigenform/solver.hpp"
#include "eigenform/uniqueness.hpp"

using namespace eigenform;

namespace {

struct Workload {
  FractalTriple triple;
  HarmonicStructure hs;
  std::vector<ComponentData> comps;
};

// The level-1 eigenform of a corpus triple is an eigenform of its level-n triple.
Workload make_workload(const std::string& name, int level) {
  const FractalTriple base = builtin(name);
  const Weights r = Weights::uniform(base.k);
  const DirichletForm form = name == "tree_gasket" ? DirichletForm::from_packed(3, {1.0, 2.0, 0.0})
                                                   : find_eigenform(base, r).form;
  FractalTriple t = level_triple(base, level);
  HarmonicStructure hs(t, form, level_weights(base, r, level));
  std::vector<ComponentData> comps = all_components(t, hat_graph(t));
  return {std::move(t), std::move(hs), std::move(comps)};
}

const std::vector<std::pair<std::string, int>> kCases{{"gasket", 1},      {"tree_gasket", 1}, {"vicsek", 1},
                                                      {"tree_gasket", 2}, {"vicsek", 2},      {"tree_gasket", 3},
                                                      {"vicsek", 3}};

template <bool Parallel>
void BM_StabilityDigraph(benchmark::State& state) {
  const auto& [name, level] = kCases[static_cast<std::size_t>(state.range(0))];
  const Workload w = make_workload(name, level);
  const int nodes = stability_digraph_serial(w.hs, w.comps).size();
  for (auto _ : state) {
    StabilityDigraph dg = Parallel ? stability_digraph(w.hs, w.comps) : stability_digraph_serial(w.hs, w.comps);
    benchmark::DoNotOptimize(dg.adjacency.data());
  }
  state.SetLabel(name + "^" + std::to_string(level) + " nodes=" + std::to_string(nodes));
}

void cases(benchmark::internal::Benchmark* b) {
  for (int i = 0; i < static_cast<int>(kCases.size()); ++i) b->Arg(i);
}

}  // namespace

BENCHMARK(BM_StabilityDigraph<false>)->Name("stability_digraph/serial")->Apply(cases)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_StabilityDigraph<true>)->Name("stability_digraph/openmp")->Apply(cases)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
