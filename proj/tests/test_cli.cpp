#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "weibull_mix/report_io.hpp"

namespace wmix {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "weibullmix");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Report parse(const std::string& text, OutputFormat f = OutputFormat::csv) {
  std::istringstream in(text);
  return read_report(in, f);
}

TEST(Cli, SampleReproducible) {
  const auto a = run({"sample", "--law", "weibull", "--gamma", "0.5", "--n", "1000", "--seed", "7"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto rep = parse(a.out);
  EXPECT_EQ(rep.rows.size(), 1000u);
  ASSERT_NE(rep.meta("seed"), nullptr);
  EXPECT_EQ(*rep.meta("seed"), "7");
  EXPECT_EQ(a.out, run({"sample", "--law", "weibull", "--gamma", "0.5", "--n", "1000", "--seed", "7"}).out);
  EXPECT_NE(a.out, run({"sample", "--law", "weibull", "--gamma", "0.5", "--n", "1000", "--seed", "8"}).out);
  EXPECT_EQ(a.out, run({"sample", "--law", "weibull", "--gamma", "0.5", "--n", "1000", "--seed", "7", "--workers", "3"}).out);
}

TEST(Cli, SampleSecondKind) {
  const auto a = run({"sample", "--law", "asym-weibull2", "--mu", "1", "--sigma", "1", "--gamma", "0.5", "--n", "50",
                      "--format", "json"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(parse(a.out, OutputFormat::json).rows.size(), 50u);
}

TEST(Cli, InvalidParameters) {
  const auto a = run({"sample", "--law", "weibull", "--gamma", "-1", "--n", "10"});
  EXPECT_EQ(a.code, 2);
  EXPECT_NE(a.err.find("gamma > 0"), std::string::npos) << a.err;
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"sample", "--law", "nope"}).code, 2);
  EXPECT_EQ(run({"sample", "--law", "asym-weibull1", "--a1", "1", "--a2", "1", "--gamma", "1.5", "--n", "5"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, CdfPdfQuantile) {
  const auto c = run({"cdf", "--law", "two-sided", "--gamma", "0.7", "--lo", "-2", "--hi", "2", "--count", "5"});
  ASSERT_EQ(c.code, 0) << c.err;
  const auto rep = parse(c.out);
  ASSERT_EQ(rep.rows.size(), 5u);
  EXPECT_DOUBLE_EQ(std::get<double>(rep.rows[2][1]), 0.5);
  const auto p = run({"pdf", "--law", "asym-laplace", "--a1", "1", "--a2", "2", "--count", "11"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(parse(p.out).rows.size(), 11u);
  const auto q = run({"quantile", "--law", "weibull", "--gamma", "1", "--lo", "0.25", "--hi", "0.5", "--count", "2"});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_NEAR(std::get<double>(parse(q.out).rows[1][1]), std::log(2.0), 1e-12);
  const auto f = run({"cdf", "--law", "asym-weibull1", "--a1", "1", "--a2", "1", "--gamma", "1.5", "--formal", "--count", "3"});
  EXPECT_EQ(f.code, 0) << f.err;
}

TEST(Cli, Moments) {
  const auto m = run({"moments", "--law", "weibull", "--gamma", "0.5", "--order", "1,2", "--n", "100000"});
  ASSERT_EQ(m.code, 0) << m.err;
  const auto rep = parse(m.out);
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_NEAR(std::get<double>(rep.rows[0][rep.column("analytic")]), 2.0, 1e-12);
}

TEST(Cli, VerifyOnlyAndDeterminism) {
  const std::vector<std::string> args{"verify", "--only", "asym-laplace,moments", "--seed", "11"};
  const auto a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  const auto rep = parse(a.out);
  EXPECT_EQ(rep.rows.size(), 7u);
  for (const auto& row : rep.rows) {
    const auto& g = std::get<std::string>(row[rep.column("group")]);
    EXPECT_TRUE(g == "asym-laplace" || g == "moments") << g;
  }
  EXPECT_EQ(a.out, run(args).out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--workers", "4"});
  EXPECT_EQ(a.out, run(threaded).out);
  EXPECT_EQ(run({"verify", "--only", "nonexistent"}).code, 2);
  const auto list = run({"verify", "--list"});
  EXPECT_EQ(list.code, 0);
  EXPECT_NE(list.out.find("random-sum"), std::string::npos);
}

TEST(Cli, VerifyDefaultRunPasses) {
  const auto a = run({"verify", "--format", "json"});
  EXPECT_EQ(a.code, 0) << a.err;
  const auto rep = parse(a.out, OutputFormat::json);
  EXPECT_GE(rep.rows.size(), 20u);
  for (const auto& row : rep.rows) {
    EXPECT_EQ(std::get<std::string>(row[rep.column("pass")]), "true")
        << std::get<std::string>(row[rep.column("group")]) << "/" << std::get<std::string>(row[rep.column("name")]);
  }
}

TEST(Cli, RandsumClosedFormAndSweep) {
  const auto a = run({"randsum", "--gamma", "1", "--mu", "1", "--sweep", "25,100,400", "--ensemble", "5000"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto rep = parse(a.out);
  ASSERT_EQ(rep.rows.size(), 3u);
  const auto col = rep.column("closed_form_ks");
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(std::get<double>(rep.rows[i][col]), 0.05);
  EXPECT_DOUBLE_EQ(std::get<double>(rep.rows[2][rep.column("k_n")]), 400.0);
  const auto b = run({"randsum", "--gamma", "0.8", "--k", "50", "--ensemble", "2000", "--family", "normal"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_THROW(parse(b.out).column("closed_form_ks"), DomainError);
}

TEST(Cli, RandsumValidation) {
  EXPECT_EQ(run({"randsum", "--sweep", "25,x,400"}).code, 2);
  EXPECT_EQ(run({"randsum", "--sweep", ""}).code, 2);
  EXPECT_EQ(run({"randsum", "--gamma", "1.5"}).code, 2);
  EXPECT_EQ(run({"randsum", "--ensemble", "10"}).code, 2);
  EXPECT_EQ(run({"randsum", "--family", "poisson"}).code, 2);
}

}  // namespace
}  // namespace wmix
