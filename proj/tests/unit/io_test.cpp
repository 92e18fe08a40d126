#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include "concav/dataset_io.hpp"
#include "concav/delimited.hpp"
#include "concav/error.hpp"

namespace fs = std::filesystem;

TEST(FormatDouble, ShortestRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 5000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(i % 40) - 20);
    EXPECT_EQ(concav::parse_double(concav::format_double(v)), v);
  }
  EXPECT_EQ(concav::format_double(0.1), "0.1");
  EXPECT_EQ(concav::format_double(3.0), "3");
}

TEST(FormatDouble, SpecialValues) {
  EXPECT_EQ(concav::format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(concav::format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(concav::format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_TRUE(std::isnan(concav::parse_double("nan")));
  EXPECT_EQ(concav::parse_double("-inf"), -std::numeric_limits<double>::infinity());
}

TEST(ParseDouble, StrictFields) {
  EXPECT_EQ(concav::parse_double(" 2.5 "), 2.5);
  EXPECT_EQ(concav::parse_double("+1e3"), 1000.0);
  EXPECT_THROW(concav::parse_double(""), concav::InvalidInput);
  EXPECT_THROW(concav::parse_double("1.5x"), concav::InvalidInput);
  EXPECT_THROW(concav::parse_double("one"), concav::InvalidInput);
}

TEST(SplitFields, KeepsEmptyFields) {
  EXPECT_EQ(concav::split_fields("a,,b,"),
            (std::vector<std::string>{"a", "", "b", ""}));
  EXPECT_EQ(concav::split_fields("x\r"), (std::vector<std::string>{"x"}));
}

TEST(CsvWriter, FieldKinds) {
  std::ostringstream os;
  concav::CsvWriter csv(os);
  csv.field("name").field(1.5).field(-3LL).field(7ULL).field(true).field(false);
  csv.end_row();
  EXPECT_EQ(os.str(), "name,1.5,-3,7,1,0\n");
}

TEST(NextDataLine, SkipsCommentsAndBlankLines) {
  std::istringstream is("# header\n\nrow1\r\n# x\nrow2\n");
  std::string line;
  ASSERT_TRUE(concav::next_data_line(is, line));
  EXPECT_EQ(line, "row1");
  ASSERT_TRUE(concav::next_data_line(is, line));
  EXPECT_EQ(line, "row2");
  EXPECT_FALSE(concav::next_data_line(is, line));
}

TEST(DatasetIo, StreamRoundTripIsExact) {
  const auto data = concav::generate_dataset({3, 4, 25, 123});
  std::stringstream ds, ts;
  concav::write_dataset(ds, data);
  concav::write_teacher(ts, data);
  EXPECT_EQ(concav::read_dataset(ds, ts), data);
}

TEST(DatasetIo, HeaderLayout) {
  const auto data = concav::generate_dataset({2, 1, 1, 0});
  std::stringstream ds, ts;
  concav::write_dataset(ds, data);
  concav::write_teacher(ts, data);
  std::string line;
  std::getline(ds, line);
  EXPECT_EQ(line, "x0,x1,y");
  std::getline(ts, line);
  EXPECT_EQ(line, "# k=1 d=2 seed=0");
  std::getline(ts, line);
  EXPECT_EQ(line, "w");
}

TEST(DatasetIo, FileRoundTripAndPathContext) {
  const auto dir = fs::temp_directory_path() / "concav_io_test";
  fs::create_directories(dir);
  const auto data = concav::generate_dataset({2, 2, 10, 9});
  concav::save_dataset(dir / "data.csv", dir / "teacher.csv", data);
  EXPECT_EQ(concav::load_dataset(dir / "data.csv", dir / "teacher.csv"), data);
  try {
    concav::load_dataset(dir / "missing.csv", dir / "teacher.csv");
    FAIL() << "expected IoError";
  } catch (const concav::IoError& e) {
    EXPECT_NE(std::string(e.what()).find("missing.csv"), std::string::npos);
  }
  fs::remove_all(dir);
}

TEST(DatasetIo, MalformedInputsRejected) {
  std::stringstream ds("x0,y\n1,2\n"), ts("# k=1 d=2 seed=0\nw\n1\n2\n");
  EXPECT_THROW(concav::read_dataset(ds, ts), concav::InvalidInput);
  std::stringstream ds2("x0,y\n1,2,3\n"), ts2("# k=1 d=1 seed=0\nw\n1\n");
  EXPECT_THROW(concav::read_dataset(ds2, ts2), concav::InvalidInput);
}
