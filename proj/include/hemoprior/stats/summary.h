#ifndef HEMOPRIOR_STATS_SUMMARY_H_
#define HEMOPRIOR_STATS_SUMMARY_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hemoprior {

// p_adj = min(1, m * p). Requires p in [0,1] and m >= p_values.size().
std::vector<double> Bonferroni(std::span<const double> p_values, int m);

struct EffectSize {
  double d = 0.0;
  // Zero pooled SD with different means; d is +/-inf.
  bool degenerate = false;
};

// (mean_pos - mean_neg) / pooled sample SD. Both groups need >= 2 values.
EffectSize CohensD(std::span<const double> group_pos, std::span<const double> group_neg);

double Mean(std::span<const double> values);
// Divisor n.
double PopulationSd(std::span<const double> values);

// metric value per seed per arm.
struct SeedTable {
  std::vector<std::string> arms;  // display order
  std::map<int, std::map<std::string, double>> values;
};

struct ArmAggregate {
  std::string arm;
  std::vector<double> values;  // seed order
  double mean = 0.0;
  double sd_population = 0.0;
};

struct PairedDeltaAggregate {
  std::string arm;
  std::string baseline;
  std::vector<double> deltas;  // arm - baseline, seed order
  double mean_delta = 0.0;
  int sign_positive = 0;  // seeds with delta > 0
  int n_seeds = 0;
};

struct SeedSweep {
  std::vector<int> seeds;
  std::vector<ArmAggregate> arms;
  std::vector<PairedDeltaAggregate> deltas;  // every non-baseline arm
};

// Throws ValidationError naming the seed/arm when a cell is missing, and
// when fewer than two seeds or an unknown baseline are given.
SeedSweep CrossSeedAggregate(const SeedTable& table, std::string_view baseline);

}  // namespace hemoprior

#endif  // HEMOPRIOR_STATS_SUMMARY_H_
