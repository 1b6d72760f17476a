#include "hemoprior/stats/bootstrap.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "hemoprior/errors.h"
#include "hemoprior/stats/rng.h"

namespace hemoprior {

BootstrapStratify ParseStratify(std::string_view s) {
  if (s == "class") return BootstrapStratify::kByClass;
  if (s == "none") return BootstrapStratify::kNone;
  throw ValidationError("stratify must be 'class' or 'none', got '" + std::string(s) + "'");
}

namespace {

double SortedQuantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto k = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(k);
  if (k + 1 >= sorted.size() || frac == 0.0) return sorted[k];
  return sorted[k] + frac * (sorted[k + 1] - sorted[k]);
}

}  // namespace

ConfidenceInterval BootstrapCi(std::span<const int> strata, const IndexStatistic& statistic,
                               const BootstrapOptions& options) {
  if (strata.empty()) throw ValidationError("bootstrap over an empty set");
  if (options.n_resamples < 1) throw ValidationError("bootstrap needs >= 1 resample");
  if (!(options.level > 0.0 && options.level < 1.0)) {
    throw ValidationError("confidence level must be in (0,1)");
  }
  std::vector<std::size_t> all(strata.size());
  std::iota(all.begin(), all.end(), 0);
  if (!statistic(all)) {
    throw DegeneracyError("bootstrap statistic is undefined on the full set");
  }

  // Groups in ascending stratum order; kNone uses one group.
  std::vector<std::vector<std::size_t>> groups;
  if (options.stratify == BootstrapStratify::kByClass) {
    std::map<int, std::vector<std::size_t>> by_stratum;
    for (std::size_t i = 0; i < strata.size(); ++i) by_stratum[strata[i]].push_back(i);
    for (auto& [key, members] : by_stratum) groups.push_back(std::move(members));
  } else {
    groups.push_back(all);
  }

  const int n = options.n_resamples;
  std::vector<double> stats(static_cast<std::size_t>(n));
  std::vector<int> redraws(static_cast<std::size_t>(n), 0);
  std::vector<int> failed(static_cast<std::size_t>(n), 0);

  auto run_range = [&](int begin, int end) {
    std::vector<std::size_t> sample(strata.size());
    for (int r = begin; r < end; ++r) {
      bool done = false;
      for (int attempt = 0; attempt <= options.max_retries && !done; ++attempt) {
        Xoshiro256StarStar rng(StreamSeed(options.seed, static_cast<std::uint64_t>(r),
                                          static_cast<std::uint64_t>(attempt)));
        std::size_t k = 0;
        for (const auto& members : groups) {
          for (std::size_t i = 0; i < members.size(); ++i) {
            sample[k++] = members[rng.Below(members.size())];
          }
        }
        if (auto value = statistic(sample)) {
          stats[static_cast<std::size_t>(r)] = *value;
          redraws[static_cast<std::size_t>(r)] = attempt;
          done = true;
        }
      }
      if (!done) failed[static_cast<std::size_t>(r)] = 1;
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(n));
  if (threads == 1) {
    run_range(0, n);
  } else {
    std::vector<std::jthread> pool;
    const int chunk = (n + static_cast<int>(threads) - 1) / static_cast<int>(threads);
    for (int begin = 0; begin < n; begin += chunk) {
      pool.emplace_back(run_range, begin, std::min(n, begin + chunk));
    }
  }

  if (std::any_of(failed.begin(), failed.end(), [](int f) { return f != 0; })) {
    throw DegeneracyError("bootstrap statistic stayed undefined after " +
                          std::to_string(options.max_retries) + " redraws");
  }
  std::sort(stats.begin(), stats.end());
  ConfidenceInterval ci;
  ci.lo = SortedQuantile(stats, (1.0 - options.level) / 2.0);
  ci.hi = SortedQuantile(stats, (1.0 + options.level) / 2.0);
  ci.n_resamples = n;
  ci.n_redrawn = std::accumulate(redraws.begin(), redraws.end(), 0);
  return ci;
}

}  // namespace hemoprior
