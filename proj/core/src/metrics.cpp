#include "bdqn/metrics.hpp"

#include <fstream>
#include <ostream>

#include "bdqn/error.hpp"

namespace bdqn {

nlohmann::ordered_json to_json(const MetricsRecord& r) {
  nlohmann::ordered_json j;
  j["format_version"] = kMetricsFormatVersion;
  j["phase"] = r.phase;
  j["seed"] = r.seed;
  j["episode"] = r.episode;
  j["decisions_total"] = r.decisions_total;
  j["score"] = r.score;
  j["frames"] = r.frames;
  j["decisions"] = r.decisions;
  j["mean_td_loss"] = r.mean_td_loss;
  j["td_updates"] = r.td_updates;
  j["duration_histogram"] = r.duration_histogram;
  j["epsilon"] = r.epsilon;
  j["skipped_updates"] = r.skipped_updates;
  j["dropped_transitions"] = r.dropped_transitions;
  j["rejected_updates"] = r.rejected_updates;
  return j;
}

MetricsRecord metrics_from_json(const nlohmann::json& j) {
  const int version = j.at("format_version").get<int>();
  if (version != kMetricsFormatVersion) {
    throw FormatError("metrics: unsupported format_version " + std::to_string(version));
  }
  MetricsRecord r;
  r.phase = j.at("phase").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.episode = j.at("episode").get<long>();
  r.decisions_total = j.at("decisions_total").get<long>();
  r.score = j.at("score").get<double>();
  r.frames = j.at("frames").get<long>();
  r.decisions = j.at("decisions").get<long>();
  r.mean_td_loss = j.at("mean_td_loss").get<double>();
  r.td_updates = j.at("td_updates").get<long>();
  r.duration_histogram = j.at("duration_histogram").get<std::vector<long>>();
  r.epsilon = j.at("epsilon").get<double>();
  r.skipped_updates = j.at("skipped_updates").get<long>();
  r.dropped_transitions = j.at("dropped_transitions").get<long>();
  r.rejected_updates = j.at("rejected_updates").get<long>();
  return r;
}

void write_jsonl_line(std::ostream& os, const MetricsRecord& r) { os << to_json(r).dump() << '\n'; }

std::vector<MetricsRecord> read_metrics_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open metrics file " + path.string());
  std::vector<MetricsRecord> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(metrics_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_scores_csv(std::ostream& os, const std::vector<MetricsRecord>& records) {
  os << "format_version,phase,episode,score\n";
  for (const auto& r : records) {
    os << kMetricsFormatVersion << ',' << r.phase << ',' << r.episode << ',' << nlohmann::json(r.score).dump() << '\n';
  }
}

}  // namespace bdqn
