#ifndef HEMOPRIOR_STATS_BOOTSTRAP_H_
#define HEMOPRIOR_STATS_BOOTSTRAP_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

namespace hemoprior {

enum class BootstrapStratify {
  kByClass,  // resample within each true class, preserving class support
  kNone,     // resample frames uniformly from the whole set
};

BootstrapStratify ParseStratify(std::string_view s);

struct BootstrapOptions {
  int n_resamples = 1000;
  double level = 0.95;
  std::uint64_t seed = 0;
  BootstrapStratify stratify = BootstrapStratify::kByClass;
  // Redraws allowed per resample when the statistic is undefined on it.
  int max_retries = 100;
  // 0 = hardware concurrency. Results do not depend on this value.
  unsigned threads = 0;
};

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
  int n_resamples = 0;
  int n_redrawn = 0;
};

// Statistic evaluated on a multiset of frame indices; nullopt = undefined.
// Must be safe to call concurrently.
using IndexStatistic = std::function<std::optional<double>(std::span<const std::size_t>)>;

// Percentile bootstrap interval at (1 -/+ level) / 2. `strata` holds the
// stratum (true class) of every frame. Resample r draws from its own
// substream StreamSeed(seed, r, attempt), so the interval is a pure function
// of the inputs and seed.
// Throws DegeneracyError if the statistic is undefined on the full set or a
// resample stays undefined after max_retries redraws.
ConfidenceInterval BootstrapCi(std::span<const int> strata, const IndexStatistic& statistic,
                               const BootstrapOptions& options = {});

}  // namespace hemoprior

#endif  // HEMOPRIOR_STATS_BOOTSTRAP_H_
