#include <gtest/gtest.h>

#include <sstream>

#include "lockperiod/arrivals.hpp"
#include "oracles.hpp"

using namespace lockperiod;
using namespace std::chrono;

namespace {

ArrivalDataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_arrivals(in);
}

constexpr Date kDay{year{2019}, month{1}, day{2}};

}  // namespace

TEST(Arrivals, TruncatesToMinute) {
  const auto ds = parse("timestamp,direction\n2019-01-02T06:30:12,U\n");
  ASSERT_EQ(ds.size(), 1u);
  const auto& r = ds.records()[0];
  EXPECT_EQ(r.date, kDay);
  EXPECT_EQ(r.minute_index(), 390);
  EXPECT_EQ(r.direction, Direction::Up);
}

TEST(Arrivals, EmptyInput) {
  EXPECT_TRUE(parse("").empty());
  EXPECT_TRUE(parse("timestamp,direction\n").empty());
}

TEST(Arrivals, SortsRows) {
  const auto ds = parse("timestamp,direction\n2019-01-02T10:00,D\n2019-01-02T09:00:00Z,U\n2019-01-01 23:59,D\n");
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.records()[0].date, (Date{year{2019}, month{1}, day{1}}));
  EXPECT_EQ(ds.records()[1].minute_of_day, 540);
  EXPECT_EQ(ds.records()[2].minute_of_day, 600);
  EXPECT_EQ(ds.days().size(), 2u);
}

TEST(Arrivals, FirstMinuteMapsToOne) {
  const auto ds = parse("timestamp,direction\n2019-01-02T00:00:30,D\n");
  EXPECT_EQ(ds.records()[0].minute_index(), 1);
}

TEST(Arrivals, ReportsLineOfMalformedRow) {
  try {
    parse("timestamp,direction\n2019-01-02T06:30,U\n\n2019-01-02T6:30,U\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse("timestamp,direction\n2019-01-02T06:30,X\n"), ParseError);
  EXPECT_THROW(parse("time,dir\n"), ParseError);
  EXPECT_THROW(parse("timestamp,direction\n2019-02-30T06:30,U\n"), ParseError);
  EXPECT_THROW(parse("timestamp,direction\n2019-01-02T24:00,U\n"), ParseError);
  EXPECT_THROW(parse("timestamp,direction\n2019-01-02T06:30,U,extra\n"), ParseError);
}

TEST(Arrivals, AcceptsCrLf) {
  const auto ds = parse("timestamp,direction\r\n2019-01-02T06:30:00.250,d\r\n");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds.records()[0].direction, Direction::Down);
}

TEST(Arrivals, RoundTripProperty) {
  oracle::Gen g(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ArrivalRecord> recs;
    const auto n = g.range(0, 40);
    for (std::int64_t i = 0; i < n; ++i) {
      const Date d{sys_days(kDay) + days(g.range(0, 3))};
      recs.push_back({d, static_cast<int>(g.range(1, 1439)), g.coin() ? Direction::Up : Direction::Down});
    }
    const ArrivalDataset ds(recs);
    std::ostringstream out;
    write_arrivals(out, ds);
    EXPECT_EQ(parse(out.str()), ds);
  }
}

TEST(Arrivals, ExtractPrefix) {
  const ArrivalDataset ds({{kDay, 12, Direction::Down}, {kDay, 40, Direction::Down}, {kDay, 95, Direction::Down}});
  const auto two = extract_instance(ds, kDay, Direction::Down, 2);
  EXPECT_EQ(two.arrivals, (std::vector<std::int64_t>{12, 40}));
  EXPECT_EQ(two.horizon, 40);
  const auto all = extract_instance(ds, kDay, Direction::Down, 10);
  EXPECT_EQ(all.size(), 3);
  EXPECT_EQ(all.horizon, 95);
  EXPECT_THROW(extract_instance(ds, kDay, Direction::Up, 5), std::invalid_argument);
}

TEST(Arrivals, ExtractSatisfiesInvariants) {
  oracle::Gen g(5);
  std::vector<ArrivalRecord> recs;
  for (int i = 0; i < 500; ++i) {
    recs.push_back({Date{sys_days(kDay) + days(g.range(0, 6))}, static_cast<int>(g.range(0, 1439)),
                    g.coin() ? Direction::Up : Direction::Down});
  }
  const ArrivalDataset ds(recs);
  for (const auto& d : ds.days()) {
    for (auto dir : {Direction::Down, Direction::Up}) {
      const auto inst = extract_instance(ds, d, dir, 30);
      EXPECT_NO_THROW(inst.validate());
      EXPECT_EQ(inst.horizon, inst.arrivals.back());
      EXPECT_LE(inst.size(), 30);
    }
  }
}

TEST(Arrivals, BucketsWithCeiling) {
  const ArrivalDataset ds({{kDay, 1, Direction::Down},
                           {kDay, 21, Direction::Down},
                           {kDay, 22, Direction::Up},
                           {kDay, 5, Direction::Down},
                           {kDay, 5, Direction::Down},
                           {kDay, 30, Direction::Down},
                           {kDay, 1439, Direction::Up}});
  const auto p = bucket_to_periods(ds, kDay, 21, 10);
  EXPECT_EQ(p.at(1).down, 4);
  EXPECT_EQ(p.at(2).down, 1);
  EXPECT_EQ(p.at(2).up, 1);
  EXPECT_EQ(p.total(), 6);  // minute 1439 is beyond period 10
}

TEST(Arrivals, BucketingPreservesCount) {
  oracle::Gen g(9);
  std::vector<ArrivalRecord> recs;
  for (int i = 0; i < 300; ++i) {
    recs.push_back({kDay, static_cast<int>(g.range(0, 1439)), g.coin() ? Direction::Up : Direction::Down});
  }
  const ArrivalDataset ds(recs);
  for (std::int64_t pm : {1, 7, 21, 60}) {
    const auto h = (1440 + pm - 1) / pm;
    EXPECT_EQ(bucket_to_periods(ds, kDay, pm, h).total(), 300);
  }
}
