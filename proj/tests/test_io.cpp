#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "eephnd/io.hpp"

using namespace eephnd;

namespace {

// writes content to a fresh temp file and returns its path
class TempCsv {
  public:
    explicit TempCsv(const std::string& content) {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("eephnd_io_test_" + std::to_string(counter++) + ".csv"))
                    .string();
        std::ofstream out(path_);
        out << content;
    }
    ~TempCsv() { std::remove(path_.c_str()); }
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

}  // namespace

TEST_CASE("load_csv: basic parse, both status codings") {
    TempCsv f("time,status,age\n10,2,60\n20,1,55\n30,2,70\n");

    CsvSchema s12;  // default: 1 = censored, 2 = event
    Dataset ds = load_csv(f.path(), s12);
    REQUIRE(ds.rows.size() == 3);
    CHECK(ds.raw_row_count == 3);
    CHECK(ds.dropped_rows == 0);
    CHECK(ds.rows[0].time == 10.0);
    CHECK(ds.rows[0].event);
    CHECK_FALSE(ds.rows[1].event);
    CHECK(ds.rows[2].event);
    CHECK(ds.source_path == f.path());
    CHECK_FALSE(ds.rescale_factor.has_value());
    CHECK(ds.times() == std::vector<double>{10.0, 20.0, 30.0});

    CsvSchema s01 = s12;
    s01.status_coding = StatusCoding::ZeroOne;
    Dataset d01 = load_csv(f.path(), s01);
    CHECK_FALSE(d01.rows[0].event);  // 2 is not an event under 0/1 coding
    CHECK(d01.rows[1].event);
}

TEST_CASE("load_csv: covariate extraction and renamed columns") {
    TempCsv f("t,evt,age,sex\n5,1,60,1\n8,0,70,2\n");
    CsvSchema s;
    s.time_col = "t";
    s.status_col = "evt";
    s.status_coding = StatusCoding::ZeroOne;
    s.covariate_cols = {"age", "sex"};
    Dataset ds = load_csv(f.path(), s);
    REQUIRE(ds.rows.size() == 2);
    CHECK(ds.rows[0].covariates.at("age") == 60.0);
    CHECK(ds.rows[1].covariates.at("sex") == 2.0);
}

TEST_CASE("load_csv: missing values are dropped and counted") {
    TempCsv f("time,status,age\n10,2,60\nNA,2,61\n20,,62\n30,1,NA\n40,2,64\n");
    CsvSchema s;
    s.covariate_cols = {"age"};
    Dataset ds = load_csv(f.path(), s);
    CHECK(ds.raw_row_count == 5);
    CHECK(ds.dropped_rows == 3);
    REQUIRE(ds.rows.size() == 2);
    CHECK(ds.rows[0].time == 10.0);
    CHECK(ds.rows[1].time == 40.0);

    // a column not requested can stay missing without dropping the row
    CsvSchema no_cov;
    Dataset keep = load_csv(f.path(), no_cov);
    CHECK(keep.dropped_rows == 2);  // only the bad time / status rows go
    CHECK(keep.rows.size() == 3);
}

TEST_CASE("load_csv: malformed input produces located errors") {
    TempCsv bad_number("time,status\n10,2\nabc,2\n");
    CsvSchema s;
    try {
        load_csv(bad_number.path(), s);
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("time") != std::string::npos);
    }

    TempCsv short_row("time,status\n10,2\n20\n");
    CHECK_THROWS_WITH_AS(load_csv(short_row.path(), s),
                         doctest::Contains("line 3"), std::runtime_error);

    TempCsv fine("time,status\n10,2\n");
    CsvSchema missing_col;
    missing_col.time_col = "duration";
    CHECK_THROWS_WITH_AS(load_csv(fine.path(), missing_col),
                         doctest::Contains("duration"), std::runtime_error);

    CHECK_THROWS_AS(load_csv("/nonexistent/nope.csv", s), std::runtime_error);

    TempCsv all_missing("time,status\nNA,2\n,1\n");
    CHECK_THROWS_AS(load_csv(all_missing.path(), s), std::runtime_error);
}

TEST_CASE("load_csv: no status column means every row is an event") {
    TempCsv f("time\n1\n2\n3\n");
    CsvSchema s;
    s.status_col = std::nullopt;
    Dataset ds = load_csv(f.path(), s);
    for (const auto& r : ds.rows) CHECK(r.event);
}

TEST_CASE("rescale_time: divides by the maximum, idempotent, tracks factor") {
    TempCsv f("time,status\n100,2\n250,1\n1000,2\n");
    Dataset ds = load_csv(f.path(), CsvSchema{});
    Dataset r = rescale_time(ds);
    CHECK(r.rows[0].time == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(r.rows[2].time == 1.0);
    REQUIRE(r.rescale_factor.has_value());
    CHECK(*r.rescale_factor == doctest::Approx(1.0 / 1000.0).epsilon(1e-15));
    // event flags untouched
    CHECK(r.rows[0].event);
    CHECK_FALSE(r.rows[1].event);

    Dataset twice = rescale_time(r);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        CHECK(twice.rows[i].time == r.rows[i].time);
    }
    CHECK(*twice.rescale_factor == doctest::Approx(*r.rescale_factor).epsilon(1e-15));
}

TEST_CASE("bundled clinical dataset loads with the expected shape") {
    std::string path = std::string(EEPHND_DATA_DIR) + "/lung.csv";
    CsvSchema s;
    s.covariate_cols = {"age", "sex"};
    Dataset ds = load_csv(path, s);
    CHECK(ds.raw_row_count == 228);
    CHECK(ds.rows.size() == 228);  // age and sex are complete
    int events = 0;
    for (const auto& r : ds.rows) events += r.event ? 1 : 0;
    CHECK(events == 165);
    double max_t = 0.0;
    for (const auto& r : ds.rows) max_t = std::max(max_t, r.time);
    CHECK(max_t == 1022.0);

    Dataset r = rescale_time(ds);
    CHECK(*r.rescale_factor == doctest::Approx(1.0 / 1022.0).epsilon(1e-15));
}
