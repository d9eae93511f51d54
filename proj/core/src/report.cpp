#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bdqn/error.hpp"
#include "bdqn/harness.hpp"
#include "bdqn/metrics.hpp"

namespace bdqn {

std::vector<BucketRange> default_buckets(int d_max) {
  if (d_max < 1) throw ConfigError("d_max must be at least 1");
  const int s = std::max(1, (3 * d_max) / 10);
  const int m = std::max(s, (6 * d_max) / 10);
  return {{"short", 1, s}, {"medium", s + 1, m}, {"long", m + 1, d_max}};
}

void validate_buckets(const std::vector<BucketRange>& buckets, int d_max) {
  if (buckets.empty()) throw ConfigError("bucket list is empty");
  std::vector<int> hits(static_cast<std::size_t>(d_max) + 1, 0);
  for (const auto& b : buckets) {
    if (b.lo < 1) throw ConfigError("bucket '" + b.name + "' starts below 1");
    for (int d = b.lo; d <= b.hi; ++d) {
      if (d > d_max) {
        throw ConfigError("bucket '" + b.name + "' extends past d_max " + std::to_string(d_max));
      }
      if (++hits[static_cast<std::size_t>(d)] > 1) {
        throw ConfigError("buckets overlap at duration " + std::to_string(d));
      }
    }
  }
  for (int d = 1; d <= d_max; ++d) {
    if (hits[static_cast<std::size_t>(d)] == 0) {
      throw ConfigError("duration " + std::to_string(d) + " is not covered by any bucket");
    }
  }
}

DurationBuckets bucketize(const std::vector<long>& histogram, const std::vector<BucketRange>& buckets,
                          std::string label) {
  DurationBuckets out;
  out.label = std::move(label);
  out.counts.assign(buckets.size(), 0);
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    for (int d = buckets[i].lo; d <= buckets[i].hi; ++d) {
      const auto idx = static_cast<std::size_t>(d - 1);
      if (idx < histogram.size()) out.counts[i] += histogram[idx];
    }
    out.total += out.counts[i];
  }
  out.percentages.assign(buckets.size(), 0.0);
  if (out.total > 0) {
    for (std::size_t i = 0; i < buckets.size(); ++i) {
      out.percentages[i] = 100.0 * static_cast<double>(out.counts[i]) / static_cast<double>(out.total);
    }
  }
  return out;
}

DurationReport duration_report(const std::vector<std::filesystem::path>& metrics_files,
                               const std::vector<BucketRange>& buckets, const std::string& phase) {
  if (metrics_files.empty()) throw ConfigError("no metrics files given");
  DurationReport report;
  report.buckets = buckets;
  std::vector<long> pooled;
  int d_max = 0;
  for (const auto& path : metrics_files) {
    const auto records = read_metrics_file(path);
    std::vector<long> hist;
    bool any = false;
    for (const auto& r : records) {
      if (r.phase != phase) continue;
      any = true;
      if (hist.empty()) hist.assign(r.duration_histogram.size(), 0);
      if (r.duration_histogram.size() != hist.size()) {
        throw FormatError(path.string() + ": inconsistent duration histogram length");
      }
      for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += r.duration_histogram[i];
    }
    if (!any) throw FormatError(path.string() + ": no records with phase '" + phase + "'");
    if (d_max == 0) {
      d_max = static_cast<int>(hist.size());
      validate_buckets(buckets, d_max);
      pooled.assign(hist.size(), 0);
    } else if (static_cast<int>(hist.size()) != d_max) {
      throw FormatError(path.string() + ": d_max differs from the other runs");
    }
    for (std::size_t i = 0; i < hist.size(); ++i) pooled[i] += hist[i];
    report.runs.push_back(bucketize(hist, buckets, path.filename().string()));
  }
  report.pooled = bucketize(pooled, buckets, "pooled");
  return report;
}

std::vector<std::filesystem::path> metrics_files_in(const std::filesystem::path& run_dir) {
  const auto summary = load_summary(run_dir);
  std::vector<std::filesystem::path> out;
  for (const auto& r : summary.at("runs")) {
    if (r.value("ok", false)) out.push_back(run_dir / r.at("metrics_file").get<std::string>());
  }
  if (out.empty()) throw FormatError(run_dir.string() + ": no completed runs");
  return out;
}

nlohmann::json load_summary(const std::filesystem::path& run_dir) {
  const auto path = run_dir / kSummaryFileName;
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (!j.contains("format_version") || j.at("format_version").get<int>() != kSummaryFormatVersion) {
    throw FormatError(path.string() + ": unsupported format_version");
  }
  return j;
}

CompareTable compare_report(const std::vector<nlohmann::json>& summaries) {
  if (summaries.empty()) throw ConfigError("nothing to compare");
  const auto& protocol = summaries.front().at("protocol");
  CompareTable table;
  for (const auto& s : summaries) {
    if (s.at("protocol") != protocol) {
      throw ConfigError("run '" + s.value("label", std::string("?")) +
                        "' uses a different environment or evaluation protocol");
    }
    CompareRow row;
    row.label = s.value("label", std::string("?"));
    std::vector<double> bests;
    for (const auto& r : s.at("runs")) {
      if (!r.value("ok", false)) continue;
      row.final_scores.push_back(r.at("final_score").get<double>());
      bests.push_back(r.at("best_score").get<double>());
    }
    row.mean = mean_of(row.final_scores);
    row.stddev = sample_stddev(row.final_scores);
    row.mean_best = mean_of(bests);
    table.rows.push_back(std::move(row));
  }
  const auto n = table.rows.size();
  table.diff.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table.diff[i][j] = table.rows[i].mean - table.rows[j].mean;
  }
  return table;
}

std::string render(const DurationReport& report) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1);
  auto line = [&](const DurationBuckets& b) {
    os << std::left << std::setw(28) << b.label;
    for (double p : b.percentages) os << std::right << std::setw(14) << p;
    os << std::right << std::setw(14) << b.total << '\n';
  };
  os << std::left << std::setw(28) << "run";
  for (const auto& b : report.buckets) {
    os << std::right << std::setw(14)
       << (b.name + " " + std::to_string(b.lo) + "-" + std::to_string(b.hi));
  }
  os << std::right << std::setw(14) << "n" << '\n';
  for (const auto& r : report.runs) line(r);
  line(report.pooled);
  return os.str();
}

std::string render(const CompareTable& table) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << std::left << std::setw(20) << "agent" << std::right << std::setw(6) << "n" << std::setw(18)
     << "final (mean+-sd)" << std::setw(12) << "mean best" << '\n';
  for (const auto& r : table.rows) {
    std::ostringstream ms;
    ms << std::fixed << std::setprecision(3) << r.mean << "+-" << r.stddev;
    os << std::left << std::setw(20) << r.label << std::right << std::setw(6) << r.final_scores.size()
       << std::setw(18) << ms.str() << std::setw(12) << r.mean_best << '\n';
  }
  if (table.rows.size() > 1) {
    os << "\ndifferences (row - column)\n" << std::setw(20) << "";
    for (const auto& r : table.rows) os << std::setw(16) << r.label;
    os << '\n';
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      os << std::left << std::setw(20) << table.rows[i].label << std::right;
      for (double d : table.diff[i]) os << std::setw(16) << d;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace bdqn
