#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "rampsvm/dataset_io.hpp"
#include "rampsvm/error.hpp"
#include "rampsvm/fixtures.hpp"
#include "rampsvm/prox.hpp"
#include "rampsvm/report.hpp"
#include "rampsvm/synthetic.hpp"

namespace rampsvm {
namespace {

Dataset parse(const std::string& text, DataFormat f) {
  std::istringstream in(text);
  return parse_dataset(in, f);
}

std::size_t parse_error_line(const std::string& text, DataFormat f) {
  try {
    parse(text, f);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(ParseCsv, Examples) {
  const Dataset d = parse("+1,3,3\n", DataFormat::Csv);
  EXPECT_EQ(d.m(), 1);
  EXPECT_EQ(d.features.row(0), Eigen::RowVector2d(3, 3));
  EXPECT_EQ(d.labels(0), 1.0);

  const Dataset e = parse("# header\n-1, 0.5, -2e3\n\n1,1,1\n", DataFormat::Csv);
  EXPECT_EQ(e.m(), 2);
  EXPECT_EQ(e.features(0, 1), -2000.0);
  EXPECT_EQ(e.labels(0), -1.0);
}

TEST(ParseCsv, Errors) {
  EXPECT_EQ(parse_error_line("1,2,3\n-1,1,2,3\n", DataFormat::Csv), 2u);
  EXPECT_EQ(parse_error_line("1,2,3\n\n-1,1\n", DataFormat::Csv), 3u);
  EXPECT_EQ(parse_error_line("0,2,3\n", DataFormat::Csv), 1u);
  EXPECT_EQ(parse_error_line("2,2,3\n", DataFormat::Csv), 1u);
  EXPECT_EQ(parse_error_line("1,abc,3\n", DataFormat::Csv), 1u);
  EXPECT_EQ(parse_error_line("1\n", DataFormat::Csv), 1u);
  EXPECT_EQ(parse_error_line("1,nan,3\n", DataFormat::Csv), 1u);
  EXPECT_THROW(parse("", DataFormat::Csv), InvalidInput);
}

TEST(ParseLibsvm, Examples) {
  const Dataset d = parse("-1 1:1 2:1\n+1 3:2.5\n", DataFormat::Libsvm);
  EXPECT_EQ(d.m(), 2);
  EXPECT_EQ(d.n(), 3);
  EXPECT_EQ(d.features.row(0), Eigen::RowVector3d(1, 1, 0));
  EXPECT_EQ(d.features.row(1), Eigen::RowVector3d(0, 0, 2.5));
  EXPECT_EQ(d.labels, Eigen::Vector2d(-1, 1));
}

TEST(ParseLibsvm, Errors) {
  EXPECT_EQ(parse_error_line("1 0:1\n", DataFormat::Libsvm), 1u);
  EXPECT_EQ(parse_error_line("1 1:1\n1 2:1 2:3\n", DataFormat::Libsvm), 2u);
  EXPECT_EQ(parse_error_line("1 1-1\n", DataFormat::Libsvm), 1u);
  EXPECT_EQ(parse_error_line("3 1:1\n", DataFormat::Libsvm), 1u);
}

TEST(ParseFormat, Names) {
  EXPECT_EQ(parse_format("csv"), DataFormat::Csv);
  EXPECT_EQ(parse_format("libsvm"), DataFormat::Libsvm);
  EXPECT_THROW(parse_format("arff"), InvalidInput);
}

TEST(ParseDataset, MissingFile) {
  EXPECT_THROW(parse_dataset(std::filesystem::path("/nonexistent/data.csv"), DataFormat::Csv), InvalidInput);
}

TEST(Synthetic, Examples) {
  SyntheticSpec spec{10, 4.0, 0.0, 7, 2};
  const Dataset clean = gen_synthetic(spec);
  EXPECT_EQ(clean.m(), 20);
  EXPECT_EQ((clean.labels.array() > 0).count(), 10);
  EXPECT_EQ(outlier_count(spec), 0);

  spec.outlier_fraction = 0.1;
  EXPECT_EQ(outlier_count(spec), 2);
  const Dataset noisy = gen_synthetic(spec);
  int relocated = 0;
  for (Eigen::Index i = 0; i < noisy.m(); ++i)
    if (noisy.features(i, 0) == -noisy.labels(i) * 40.0) ++relocated;
  EXPECT_EQ(relocated, 2);

  const Dataset again = gen_synthetic(spec);
  EXPECT_EQ(noisy.features, again.features);
  EXPECT_EQ(noisy.labels, again.labels);
}

TEST(Synthetic, OutlierCounts) {
  SyntheticSpec spec;
  spec.n_per_class = 50;
  for (auto [f, want] : std::vector<std::pair<double, int>>{{0.55, 55}, {0.01, 1}, {0.011, 2}, {1.0, 100}}) {
    spec.outlier_fraction = f;
    EXPECT_EQ(outlier_count(spec), want) << f;
  }
  spec.outlier_fraction = 1.5;
  EXPECT_THROW(gen_synthetic(spec), InvalidInput);
  spec.outlier_fraction = -0.1;
  EXPECT_THROW(gen_synthetic(spec), InvalidInput);
}

TEST(Synthetic, CsvRoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SyntheticSpec spec{7, 3.3, 0.2, seed, static_cast<int>(1 + seed % 4)};
    const Dataset d = gen_synthetic(spec);
    std::stringstream buf;
    write_csv(buf, d);
    const Dataset back = parse_dataset(buf, DataFormat::Csv);
    EXPECT_EQ(back.features, d.features);
    EXPECT_EQ(back.labels, d.labels);
    EXPECT_EQ(dataset_digest(back), dataset_digest(d));
  }
}

TEST(Report, Sha256) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Report, CounterexampleIsStable) {
  const nlohmann::json a = cmd_counterexample();
  const nlohmann::json b = cmd_counterexample();
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["result"]["verdict"], "KKT_ONLY");
  const auto& certs = a["result"]["certificates"];
  ASSERT_EQ(certs.size(), 4u);
  const std::vector<double> want = {0.1, 1.0, 1.0, 1.0};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(certs[k]["prox_distance"][1].get<double>(), want[k], 1e-12);
    EXPECT_EQ(certs[k]["verdict"], "NEITHER");
  }
  EXPECT_LE(a["result"]["kkt"]["max_residual"].get<double>(), 1e-12);
  EXPECT_TRUE(a["result"]["kkt"]["satisfied"].get<bool>());
}

TEST(Report, ProxEvalMatchesLibrary) {
  const std::vector<double> s = {-1.0, 0.5, 2.0, 1.5, 4.0, 3.0, 0.1 + 0.2};
  for (auto [gamma, C] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {2.0, 4.0}, {0.3, 0.7}}) {
    const nlohmann::json r = cmd_prox_eval(s, gamma, C);
    const auto lib = prox_vector(Eigen::Map<const Eigen::VectorXd>(s.data(), s.size()), ProxParams(gamma, C));
    ASSERT_EQ(r["result"]["prox"].size(), lib.size());
    for (std::size_t i = 0; i < lib.size(); ++i) {
      const auto& entry = r["result"]["prox"][i];
      ASSERT_EQ(entry["values"].size(), lib[i].size());
      for (std::size_t k = 0; k < lib[i].size(); ++k) EXPECT_EQ(entry["values"][k].get<double>(), lib[i][k]);
      EXPECT_EQ(entry["tie"].get<bool>(), lib[i].tie());
    }
    const auto round = nlohmann::json::parse(r.dump());
    for (std::size_t i = 0; i < lib.size(); ++i)
      EXPECT_EQ(round["result"]["prox"][i]["values"][0].get<double>(), lib[i][0]);
  }
}

TEST(Report, Envelope) {
  const ProblemData p = build_problem(fixtures::single_sample());
  const nlohmann::json r = make_report("x", "abc", 3, &p, {{"k", 1}});
  EXPECT_EQ(r["command"], "x");
  EXPECT_EQ(r["seed"], 3);
  EXPECT_EQ(r["problem"]["m"], 1);
  EXPECT_FALSE(r["problem"]["full_column_rank"].get<bool>());
  EXPECT_TRUE(r["problem"]["lambda_h"].is_null());
  EXPECT_EQ(r["version"], std::string(version()));
  const nlohmann::json bare = make_report("y", "abc", std::nullopt, nullptr, nlohmann::json::object());
  EXPECT_FALSE(bare.contains("seed"));
  EXPECT_FALSE(bare.contains("problem"));
}

}  // namespace
}  // namespace rampsvm
