// Serial reference vs OpenMP mapping on a synthetic dictionary.

#include <benchmark/benchmark.h>

#include <random>

#include "medlex/pipeline.hpp"

namespace {

std::vector<medlex::Entry> synthetic_dictionary(std::size_t n) {
  static const char* heads[] = {"sykdom", "behandling", "tjeneste", "instrument", "lege", "stoff",
                                "bakterie", "refleks", "muskel", "studium", "hoste", "feber"};
  static const char* roots[] = {"lever", "nyre", "hjerte", "blod", "hals", "mage", "lunge", "tarm", "hud"};
  static const char* endings[] = {"itis", "biopsi", "skop", "emi", "tjeneste", "sykdom", "logi", "", "", ""};
  std::mt19937 rng(1);
  std::vector<medlex::Entry> entries;
  entries.reserve(n);
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < n; ++i) {
    std::string term = std::string(roots[rng() % 9]) + roots[rng() % 9] + endings[rng() % 10] + std::to_string(i % 97);
    std::string head = (i > 10 && rng() % 4 == 0) ? terms[rng() % terms.size()] : heads[rng() % 12];
    std::string def = "form av " + head + " i " + roots[rng() % 9] + " hos voksne pasienter";
    terms.push_back(term);
    entries.push_back({"e" + std::to_string(i), term, {{def, std::nullopt}}, std::nullopt});
  }
  return entries;
}

void BM_MapSerial(benchmark::State& state) {
  const auto entries = synthetic_dictionary(static_cast<std::size_t>(state.range(0)));
  medlex::MapConfig config;
  config.iter_rounds = 2;
  for (auto _ : state) benchmark::DoNotOptimize(medlex::reference::map_dictionary(entries, config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MapParallel(benchmark::State& state) {
  const auto entries = synthetic_dictionary(static_cast<std::size_t>(state.range(0)));
  medlex::MapConfig config;
  config.iter_rounds = 2;
  for (auto _ : state) benchmark::DoNotOptimize(medlex::map_dictionary(entries, config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_MapSerial)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MapParallel)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
