#pragma once

#include <cstdint>
#include <vector>

#include "wlansim/config.hpp"
#include "wlansim/metrics.hpp"

namespace wlansim {

struct BatchResult {
  std::vector<RunReport> runs;  // in seed-list order
  BatchSummary summary;
};

// Runs one realization per seed (parallel up to `jobs` threads; each run is
// fully isolated) and aggregates the KPIs. Requires >= 2 distinct seeds; a
// failing run aborts the batch naming the failing seed.
BatchResult run_batch(const ScenarioConfig& config, const std::vector<std::uint64_t>& seeds,
                      int jobs = 0);

}  // namespace wlansim
