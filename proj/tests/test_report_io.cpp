#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "weibull_mix/errors.hpp"
#include "weibull_mix/report_io.hpp"

namespace wmix {
namespace {

Report sample_report() {
  Report r;
  r.metadata = {{"tool", "test"}, {"seed", "7"}};
  r.columns = {"name", "value", "note"};
  r.add_row({std::string("plain"), 0.1, std::string("a, \"quoted\" note")});
  r.add_row({std::string("123"), -2.5e-300, std::string("")});
  r.add_row({std::string("inf"), 1.0 / 3.0, std::string("x")});
  return r;
}

TEST(ReportIo, CsvRoundTrip) {
  const auto r = sample_report();
  std::istringstream in(to_string(r, OutputFormat::csv));
  EXPECT_EQ(read_csv(in), r);
}

TEST(ReportIo, JsonRoundTrip) {
  const auto r = sample_report();
  std::istringstream in(to_string(r, OutputFormat::json));
  EXPECT_EQ(read_json(in), r);
}

TEST(ReportIo, CsvLayout) {
  const auto text = to_string(sample_report(), OutputFormat::csv);
  EXPECT_EQ(text.substr(0, 27), "# tool: test\n# seed: 7\nname");
  EXPECT_NE(text.find("\"plain\",0.1,\"a, \"\"quoted\"\" note\""), std::string::npos);
}

TEST(ReportIo, NonFinite) {
  Report r;
  r.columns = {"v"};
  r.add_row({std::numeric_limits<double>::quiet_NaN()});
  r.add_row({std::numeric_limits<double>::infinity()});
  r.add_row({-std::numeric_limits<double>::infinity()});
  std::istringstream csv(to_string(r, OutputFormat::csv));
  const auto c = read_csv(csv);
  EXPECT_TRUE(std::isnan(std::get<double>(c.rows[0][0])));
  EXPECT_EQ(std::get<double>(c.rows[1][0]), INFINITY);
  EXPECT_EQ(std::get<double>(c.rows[2][0]), -INFINITY);
  std::istringstream json(to_string(r, OutputFormat::json));
  const auto j = read_json(json);
  for (const auto& row : j.rows) EXPECT_TRUE(std::isnan(std::get<double>(row[0])));
}

TEST(ReportIo, Errors) {
  Report r;
  r.columns = {"a", "b"};
  EXPECT_THROW(r.add_row({1.0}), DomainError);
  EXPECT_THROW(r.column("c"), DomainError);
  EXPECT_EQ(r.column("b"), 1u);
  std::istringstream bad("a\n\"open\n");
  EXPECT_THROW(read_csv(bad), DomainError);
  std::istringstream bad_num("a\n1.2.3\n");
  EXPECT_THROW(read_csv(bad_num), DomainError);
  std::istringstream bad_json("[1, 2]");
  EXPECT_THROW(read_json(bad_json), DomainError);
  EXPECT_THROW(output_format_from_string("xml"), DomainError);
}

TEST(ReportIo, Meta) {
  const auto r = sample_report();
  ASSERT_NE(r.meta("seed"), nullptr);
  EXPECT_EQ(*r.meta("seed"), "7");
  EXPECT_EQ(r.meta("missing"), nullptr);
}

}  // namespace
}  // namespace wmix
