#include "eephnd/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace eephnd {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

bool is_missing(const std::string& s) { return s.empty() || s == "NA"; }

double parse_number(const std::string& s, const std::string& col, int line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                 ", column '" + col + "': '" + s + "'");
    }
}

}  // namespace

std::vector<double> Dataset::times() const {
    std::vector<double> t;
    t.reserve(rows.size());
    for (const auto& r : rows) t.push_back(r.time);
    return t;
}

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
    std::vector<std::string> header = split_line(line);

    auto column_index = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw std::runtime_error("unknown column '" + name + "' in " + path);
        }
        return static_cast<std::size_t>(it - header.begin());
    };

    std::size_t time_idx = column_index(schema.time_col);
    std::optional<std::size_t> status_idx;
    if (schema.status_col) status_idx = column_index(*schema.status_col);
    std::vector<std::size_t> cov_idx;
    for (const auto& c : schema.covariate_cols) cov_idx.push_back(column_index(c));

    Dataset ds;
    ds.source_path = path;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ++ds.raw_row_count;
        std::vector<std::string> f = split_line(line);
        if (f.size() != header.size()) {
            throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                     ": expected " + std::to_string(header.size()) +
                                     " fields, got " + std::to_string(f.size()));
        }
        bool missing = is_missing(f[time_idx]);
        if (status_idx) missing = missing || is_missing(f[*status_idx]);
        for (std::size_t ci : cov_idx) missing = missing || is_missing(f[ci]);
        if (missing) {
            ++ds.dropped_rows;
            continue;
        }
        SurvivalSample s;
        s.time = parse_number(f[time_idx], schema.time_col, line_no);
        if (status_idx) {
            double raw = parse_number(f[*status_idx], *schema.status_col, line_no);
            s.event = (schema.status_coding == StatusCoding::OneTwo) ? raw == 2.0
                                                                     : raw == 1.0;
        } else {
            s.event = true;
        }
        for (std::size_t j = 0; j < cov_idx.size(); ++j) {
            s.covariates[schema.covariate_cols[j]] =
                parse_number(f[cov_idx[j]], schema.covariate_cols[j], line_no);
        }
        ds.rows.push_back(std::move(s));
    }
    if (ds.rows.empty()) throw std::runtime_error("no usable rows in " + path);
    return ds;
}

Dataset rescale_time(const Dataset& ds) {
    Dataset out = ds;
    double max_t = 0.0;
    for (const auto& r : out.rows) max_t = std::max(max_t, r.time);
    for (auto& r : out.rows) r.time /= max_t;
    double prior = ds.rescale_factor.value_or(1.0);
    out.rescale_factor = prior / max_t;
    return out;
}

}  // namespace eephnd
