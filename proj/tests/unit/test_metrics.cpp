#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bdqn/error.hpp"
#include "bdqn/metrics.hpp"

using namespace bdqn;

namespace {

MetricsRecord sample_record(long episode) {
  MetricsRecord r;
  r.phase = "train";
  r.seed = 7;
  r.episode = episode;
  r.decisions_total = 40 + episode;
  r.score = 0.1 + 1.0 / 3.0;
  r.frames = 19;
  r.decisions = 6;
  r.mean_td_loss = 2.5e-7;
  r.td_updates = 5;
  r.duration_histogram = {1, 2, 0, 3};
  r.epsilon = 0.3;
  r.skipped_updates = 1;
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bdqn_test_" + name);
}

}  // namespace

TEST(Metrics, JsonlRoundTripIsExact) {
  const auto path = temp_file("metrics.jsonl");
  {
    std::ofstream out(path);
    for (long e = 0; e < 3; ++e) write_jsonl_line(out, sample_record(e));
  }
  const auto back = read_metrics_file(path);
  ASSERT_EQ(back.size(), 3u);
  for (long e = 0; e < 3; ++e) EXPECT_EQ(back[static_cast<std::size_t>(e)], sample_record(e));
  std::filesystem::remove(path);
}

TEST(Metrics, KeyOrderIsFixed) {
  std::ostringstream os;
  write_jsonl_line(os, sample_record(0));
  const std::string line = os.str();
  EXPECT_EQ(line.rfind("{\"format_version\":1,\"phase\":\"train\",\"seed\":7,", 0), 0u) << line;
  EXPECT_EQ(line.back(), '\n');
  EXPECT_EQ(line.find('\n'), line.size() - 1);
}

TEST(Metrics, UnsupportedVersionRejected) {
  auto j = to_json(sample_record(0));
  j["format_version"] = 99;
  EXPECT_THROW(metrics_from_json(j), FormatError);
}

TEST(Metrics, MalformedLineNamesTheLine) {
  const auto path = temp_file("bad.jsonl");
  {
    std::ofstream out(path);
    write_jsonl_line(out, sample_record(0));
    out << "{\"format_version\":1,\"phase\":\n";
  }
  try {
    read_metrics_file(path);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
  std::filesystem::remove(path);
}

TEST(Metrics, MissingFieldRejected) {
  auto j = to_json(sample_record(0));
  j.erase("score");
  EXPECT_ANY_THROW(metrics_from_json(j));
}

TEST(Metrics, MissingFileRejected) {
  EXPECT_THROW(read_metrics_file("/nonexistent/run.jsonl"), FormatError);
}

TEST(Metrics, ScoresCsv) {
  std::ostringstream os;
  auto a = sample_record(0);
  a.score = 1.5;
  auto b = sample_record(1);
  b.phase = "final";
  b.score = -2.0;
  write_scores_csv(os, {a, b});
  EXPECT_EQ(os.str(), "format_version,phase,episode,score\n1,train,0,1.5\n1,final,1,-2.0\n");
}
