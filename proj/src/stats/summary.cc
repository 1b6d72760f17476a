#include "hemoprior/stats/summary.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hemoprior/errors.h"

namespace hemoprior {

std::vector<double> Bonferroni(std::span<const double> p_values, int m) {
  if (m < static_cast<int>(p_values.size()) || m < 1) {
    throw ValidationError("Bonferroni m must be >= the number of tests");
  }
  std::vector<double> out;
  out.reserve(p_values.size());
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p-value outside [0,1]");
    out.push_back(std::min(1.0, m * p));
  }
  return out;
}

double Mean(std::span<const double> values) {
  if (values.empty()) throw ValidationError("mean of empty sample");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double PopulationSd(std::span<const double> values) {
  const double mu = Mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

EffectSize CohensD(std::span<const double> group_pos, std::span<const double> group_neg) {
  if (group_pos.size() < 2 || group_neg.size() < 2) {
    throw ValidationError("Cohen's d needs at least two values per group");
  }
  const double n1 = static_cast<double>(group_pos.size());
  const double n0 = static_cast<double>(group_neg.size());
  const double m1 = Mean(group_pos);
  const double m0 = Mean(group_neg);
  double ss1 = 0.0, ss0 = 0.0;
  for (double v : group_pos) ss1 += (v - m1) * (v - m1);
  for (double v : group_neg) ss0 += (v - m0) * (v - m0);
  // (n-1) s^2 is the sum of squares.
  const double pooled = std::sqrt((ss1 + ss0) / (n1 + n0 - 2.0));
  const double diff = m1 - m0;
  if (diff == 0.0) return {0.0, false};
  if (pooled == 0.0) {
    return {diff > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity(),
            true};
  }
  return {diff / pooled, false};
}

SeedSweep CrossSeedAggregate(const SeedTable& table, std::string_view baseline) {
  if (table.values.size() < 2) throw ValidationError("cross-seed aggregation needs >= 2 seeds");
  if (table.arms.empty()) throw ValidationError("cross-seed aggregation needs at least one arm");
  if (std::find(table.arms.begin(), table.arms.end(), baseline) == table.arms.end()) {
    throw ValidationError("baseline arm '" + std::string(baseline) + "' not in the table");
  }
  SeedSweep sweep;
  for (const auto& [seed, row] : table.values) {
    sweep.seeds.push_back(seed);
    for (const auto& arm : table.arms) {
      if (!row.count(arm)) {
        throw ValidationError("seed " + std::to_string(seed) + " is missing arm '" + arm + "'");
      }
    }
  }
  auto column = [&](const std::string& arm) {
    std::vector<double> v;
    for (const auto& [seed, row] : table.values) v.push_back(row.at(arm));
    return v;
  };
  for (const auto& arm : table.arms) {
    ArmAggregate agg{arm, column(arm), 0.0, 0.0};
    agg.mean = Mean(agg.values);
    agg.sd_population = PopulationSd(agg.values);
    sweep.arms.push_back(std::move(agg));
  }
  const auto base = column(std::string(baseline));
  for (const auto& arm : table.arms) {
    if (arm == baseline) continue;
    PairedDeltaAggregate d{arm, std::string(baseline), {}, 0.0, 0, 0};
    const auto values = column(arm);
    for (std::size_t i = 0; i < values.size(); ++i) {
      d.deltas.push_back(values[i] - base[i]);
      if (d.deltas.back() > 0.0) ++d.sign_positive;
    }
    d.n_seeds = static_cast<int>(d.deltas.size());
    d.mean_delta = Mean(d.deltas);
    sweep.deltas.push_back(std::move(d));
  }
  return sweep;
}

}  // namespace hemoprior
