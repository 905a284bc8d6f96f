#include <gtest/gtest.h>

#include <sstream>

#include "medea/timeseries.hpp"

namespace medea {
namespace {

TimeSeriesFile parse(const std::string& text) {
  std::istringstream in(text);
  return read_time_series(in, "mem.csv");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const TimeSeriesError& e) {
    return e.what();
  }
  return {};
}

TEST(Timestamp, AcceptedFormsRoundTrip) {
  const auto t = parse_timestamp("2016-02-29T13:45:10Z");
  EXPECT_EQ(format_timestamp(t), "2016-02-29T13:45:10Z");
  EXPECT_EQ(parse_timestamp("2016-02-29T13:45"), parse_timestamp("2016-02-29T13:45:00Z"));
  EXPECT_EQ(format_timestamp(parse_timestamp("2016-01-04")), "2016-01-04T00:00:00Z");
  EXPECT_EQ(parse_timestamp("1970-01-01T00:00:00Z").time_since_epoch().count(), 0);
}

TEST(Timestamp, RejectsMalformed) {
  for (const char* bad : {"2016-02-30", "2016-13-01", "2016-01-01T24:00", "2016-1-01", "2016-01-01T00:00Zx", ""}) {
    EXPECT_THROW(parse_timestamp(bad), std::invalid_argument) << bad;
  }
}

TEST(TimeSeries, ConvertsUnitsAndKeepsOrder) {
  const auto f = parse(
      "unit,MW,ratio,MWh\n"
      "timestamp,load,cf,energy\n"
      "2016-01-01T00:00:00Z,1500,0.5,2000\n"
      "2016-01-01T01:00:00Z,2500,0.25,0\n");
  EXPECT_EQ(f.frequency, Frequency::Hourly);
  EXPECT_EQ(f.order, (std::vector<std::string>{"load", "cf", "energy"}));
  EXPECT_EQ(f.column("load").unit, Unit::GW);
  EXPECT_EQ(f.column("load").values, (std::vector<double>{1.5, 2.5}));
  EXPECT_EQ(f.column("energy").unit, Unit::GWh);
  EXPECT_DOUBLE_EQ(f.column("energy").values[0], 2.0);
  EXPECT_THROW(f.column("missing"), TimeSeriesError);
}

TEST(TimeSeries, InfersWeeklyAndMonthly) {
  EXPECT_EQ(parse("unit,GWh\ntimestamp,fill\n2016-01-04,1\n2016-01-11,2\n2016-01-18,3\n").frequency,
            Frequency::Weekly);
  EXPECT_EQ(parse("unit,EUR/MWh\ntimestamp,p\n2016-01-01,20\n2016-02-01,21\n2016-03-01,22\n").frequency,
            Frequency::Monthly);
}

TEST(TimeSeries, ReportsDefectsWithLine) {
  EXPECT_NE(error_of("unit,GW\ntimestamp,a\n2016-01-01T00:00Z,1\n2016-01-01T01:00Z,1\n2016-01-01T03:00Z,1\n")
                .find("mem.csv:5"),
            std::string::npos);
  EXPECT_NE(error_of("unit,furlong\ntimestamp,a\n").find("unknown unit"), std::string::npos);
  EXPECT_NE(error_of("unit,GW\ntimestamp,a\n2016-01-01T01:00Z,1\n2016-01-01T00:00Z,1\n").find("strictly increasing"),
            std::string::npos);
  EXPECT_NE(error_of("unit,GW\ntimestamp,a\n2016-01-01T00:00Z,nan\n").find("mem.csv:3"), std::string::npos);
  EXPECT_NE(error_of("unit,GW\ntimestamp,a\n2016-01-01T00:00Z,1,2\n").find("expected 2 fields"), std::string::npos);
  EXPECT_NE(error_of("").find("empty file"), std::string::npos);
}

TEST(TimeSeries, WriteReadRoundTrip) {
  const auto f = parse(
      "unit,GW,ratio\n"
      "timestamp,a,b\n"
      "2016-01-01T00:00:00Z,0.1,0.3333333333333333\n"
      "2016-01-01T01:00:00Z,1e-7,1\n");
  std::ostringstream out;
  write_time_series(out, f);
  const auto g = parse(out.str());
  EXPECT_EQ(g.timestamps, f.timestamps);
  EXPECT_EQ(g.column("a").values, f.column("a").values);
  EXPECT_EQ(g.column("b").values, f.column("b").values);
}

TEST(TimeSeries, HourlyStamps) {
  const auto s = hourly_stamps(parse_timestamp("2016-12-31T23:00Z"), 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(format_timestamp(s[2]), "2017-01-01T01:00:00Z");
}

}  // namespace
}  // namespace medea
