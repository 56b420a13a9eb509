#pragma once

#include "paclab/exact/rational.hpp"
#include "paclab/exact/real_value.hpp"
#include "paclab/io/json_report.hpp"
#include "paclab/serversim/simulation.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace paclab {

/// Truncated decimal rendering of a nonnegative rational for plot data.
inline std::string csv_decimal(const Rational& r, std::size_t digits) {
    return decimal_string(RealValue(r), digits);
}

/// Sampled trajectory as CSV with a header row; written atomically.
inline void write_trajectory_csv(const std::filesystem::path& path,
                                 const std::vector<SampleRow>& rows, std::size_t digits = 12) {
    std::string text = "t,v1,v2,v3,served_tank\n";
    for (const SampleRow& row : rows) {
        text += csv_decimal(row.t, digits);
        text += ',';
        text += csv_decimal(row.v1, digits);
        text += ',';
        text += csv_decimal(row.v2, digits);
        text += ',';
        text += csv_decimal(row.v3, digits);
        text += ',';
        text += std::to_string(row.served);
        text += '\n';
    }
    atomic_write_text(path, text);
}

}  // namespace paclab
