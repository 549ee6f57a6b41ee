#include "wlansim/batch.hpp"

#include <atomic>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "wlansim/simulation.hpp"

namespace wlansim {

BatchResult run_batch(const ScenarioConfig& config, const std::vector<std::uint64_t>& seeds,
                      int jobs) {
  if (seeds.size() < 2) throw std::invalid_argument("a batch needs at least 2 seeds");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
    throw std::invalid_argument("duplicate seeds in batch");
  config.validate();

  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(seeds.size())));

  BatchResult result;
  result.runs.resize(seeds.size());

  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::string error;

  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      try {
        Simulation sim(config, seeds[i]);
        result.runs[i] = sim.run().report;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (error.empty()) {
          error = "run with seed " + std::to_string(seeds[i]) + " failed: " + e.what();
        }
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (!error.empty()) throw std::runtime_error(error);

  result.summary = summarize(result.runs);
  return result;
}

}  // namespace wlansim
