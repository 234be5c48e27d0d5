#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "brcycle/harness.hpp"

using namespace brcycle;

namespace {

ExperimentConfig walk_config() {
  ExperimentConfig c;
  c.dist = Distribution::BRSimple;
  c.algo = Algorithm::Walk;
  c.sizes = {200, 800};
  c.outdeg = 3;
  c.trials = 6;
  c.base_seed = 50;
  return c;
}

std::string csv(const std::vector<TrialRecord>& rs) {
  std::ostringstream os;
  write_csv(os, rs);
  return os.str();
}

TrialRecord success_at(std::size_t n, std::uint64_t q) {
  TrialRecord r;
  r.n = n;
  r.queries = q;
  r.success = true;
  return r;
}

}  // namespace

TEST(Harness, ParsesNames) {
  EXPECT_EQ(parse_distribution("br"), Distribution::BR);
  EXPECT_EQ(parse_distribution("brsimple"), Distribution::BRSimple);
  EXPECT_EQ(parse_algorithm("alg2"), Algorithm::Alg2);
  EXPECT_THROW(parse_algorithm("nope"), Error);
  EXPECT_THROW(parse_distribution("x"), Error);
}

TEST(Harness, ZeroTrialsNoRecords) {
  auto c = walk_config();
  c.trials = 0;
  EXPECT_TRUE(run_experiment(c).empty());
}

TEST(Harness, RecordsOrderedAndSeeded) {
  const auto rs = run_experiment(walk_config());
  ASSERT_EQ(rs.size(), 12u);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    EXPECT_EQ(rs[i].n, i < 6 ? 200u : 800u);
    EXPECT_EQ(rs[i].seed, 50 + i % 6);
    EXPECT_TRUE(rs[i].error.empty()) << rs[i].error;
    EXPECT_FALSE(rs[i].claim_rejected);
    EXPECT_EQ(rs[i].ms, 0u);
  }
}

TEST(Harness, DeterministicAndThreadIndependent) {
  auto c = walk_config();
  const auto a = csv(run_experiment(c));
  EXPECT_EQ(a, csv(run_experiment(c)));
  c.threads = 3;
  EXPECT_EQ(a, csv(run_experiment(c)));
}

TEST(Harness, LayeredRunFillsEpochColumns) {
  ExperimentConfig c;
  c.dist = Distribution::BR;
  c.algo = Algorithm::Alg1;
  c.sizes = {1024};
  c.layers = 8;
  c.outdeg = 4;
  c.trials = 2;
  const auto rs = run_experiment(c);
  ASSERT_EQ(rs.size(), 2u);
  for (const auto& r : rs) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_EQ(r.layers, 8u);
    EXPECT_EQ(r.width, 256u);
    EXPECT_GT(r.epochs, 0u);
    if (r.success) {
      EXPECT_TRUE(r.cycle_len);
    }
  }
}

TEST(Harness, BirthdayUsesAdjacencyCounts) {
  auto c = walk_config();
  c.algo = Algorithm::Birthday;
  c.budget = 50;
  for (const auto& r : run_experiment(c)) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_LE(r.queries, 50u);
  }
}

TEST(Harness, CsvShape) {
  const auto text = csv(run_experiment(walk_config()));
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, kCsvHeader);
  const auto cols = std::count(line.begin(), line.end(), ',');
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_EQ(line.rfind("v1,brsimple,walk,", 0), 0u);
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), cols);
  }
  EXPECT_EQ(rows, 12u);
}

TEST(Harness, ConfigErrors) {
  auto c = walk_config();
  c.sizes.clear();
  EXPECT_THROW(validate_config(c), Error);
  c = walk_config();
  c.sizes = {201};
  EXPECT_THROW(validate_config(c), Error);
  c = walk_config();
  c.algo = Algorithm::Alg1;
  EXPECT_THROW(validate_config(c), Error);
  c = walk_config();
  c.dist = Distribution::BR;
  c.sizes = {64};
  c.layers = 6;
  EXPECT_THROW(validate_config(c), Error);
  c.layers = 8;
  EXPECT_NO_THROW(validate_config(c));
  c.threads = 0;
  EXPECT_THROW(validate_config(c), Error);
  try {
    c.threads = 1;
    c.sizes = {3};
    c.layers = 0;
    validate_config(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Config);
  }
}

TEST(Fit, PowerLawRecovered) {
  std::vector<TrialRecord> rs;
  for (std::size_t n : {100, 1000, 10000, 100000})
    for (int t = 0; t < 10; ++t) rs.push_back(success_at(n, static_cast<std::uint64_t>(std::llround(7 * std::sqrt(n)))));
  const auto f = fit_scaling(rs);
  EXPECT_NEAR(f.exponent, 0.5, 1e-3);
  EXPECT_NEAR(f.intercept, std::log(7.0), 1e-2);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-6);
}

TEST(Fit, ConstantHasZeroSlope) {
  const auto f = fit_line({{1, 3}, {2, 3}, {3, 3}});
  EXPECT_DOUBLE_EQ(f.exponent, 0.0);
  EXPECT_DOUBLE_EQ(f.r_squared, 1.0);
}

TEST(Fit, InsufficientData) {
  std::vector<TrialRecord> rs;
  for (std::size_t n : {100, 1000})
    for (int t = 0; t < 10; ++t) rs.push_back(success_at(n, 10));
  for (int t = 0; t < 9; ++t) rs.push_back(success_at(10000, 10));
  try {
    fit_scaling(rs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InsufficientData);
  }
  EXPECT_THROW(fit_line({{1, 1}}), Error);
  EXPECT_THROW(fit_line({{1, 1}, {1, 2}}), Error);
  EXPECT_THROW(median({}), Error);
  EXPECT_DOUBLE_EQ(median({3, 1, 2, 10}), 2.5);
}
