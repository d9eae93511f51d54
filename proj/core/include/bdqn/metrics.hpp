#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bdqn {

inline constexpr int kMetricsFormatVersion = 1;

// One episode. phase is "train" for training episodes, "eval" for periodic
// greedy evaluations during training and "final" for the evaluation run after
// training ends.
struct MetricsRecord {
  std::string phase = "train";
  std::uint64_t seed = 0;
  long episode = 0;
  // Training decisions taken so far (for eval phases: when the evaluation ran).
  long decisions_total = 0;
  // Sum of undiscounted per-frame rewards.
  double score = 0.0;
  long frames = 0;
  long decisions = 0;
  double mean_td_loss = 0.0;
  long td_updates = 0;
  // Count of decisions per duration 1..d_max; sums to `decisions`.
  std::vector<long> duration_histogram;
  double epsilon = 0.0;
  // TD updates skipped because replay held fewer than a batch.
  long skipped_updates = 0;
  // Transitions dropped from TD updates because their target was non-finite.
  long dropped_transitions = 0;
  // Updates rejected because of non-finite gradients (TD or bandit).
  long rejected_updates = 0;

  bool operator==(const MetricsRecord&) const = default;
};

nlohmann::ordered_json to_json(const MetricsRecord& r);
MetricsRecord metrics_from_json(const nlohmann::json& j);

// JSONL: one record per line, keys in a fixed order.
void write_jsonl_line(std::ostream& os, const MetricsRecord& r);
std::vector<MetricsRecord> read_metrics_file(const std::filesystem::path& path);

// CSV projection "format_version,phase,episode,score".
void write_scores_csv(std::ostream& os, const std::vector<MetricsRecord>& records);

}  // namespace bdqn
