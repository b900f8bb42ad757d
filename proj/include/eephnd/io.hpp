#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eephnd/survival.hpp"

namespace eephnd {

enum class StatusCoding {
    ZeroOne,  // 0 = censored, 1 = event
    OneTwo    // 1 = censored, 2 = event
};

struct CsvSchema {
    std::string time_col = "time";
    std::optional<std::string> status_col = "status";
    StatusCoding status_coding = StatusCoding::OneTwo;
    std::vector<std::string> covariate_cols;
};

struct Dataset {
    std::vector<SurvivalSample> rows;
    std::string source_path;
    int raw_row_count = 0;
    int dropped_rows = 0;
    std::optional<double> rescale_factor;  // 1 / max(raw time) once rescaled

    std::vector<double> times() const;
};

// Parses a comma-separated file with a header row.  Rows missing a
// requested column (empty field or "NA") are dropped and counted.
Dataset load_csv(const std::string& path, const CsvSchema& schema);

// time_i <- time_i / max(time); idempotent, event flags untouched.
Dataset rescale_time(const Dataset& ds);

}  // namespace eephnd
