#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kickrot/observables.hpp"

namespace kickrot {

inline constexpr const char* artifact_version = "0.3.0";

/// `#`-prefixed block written above every CSV table.
struct CsvHeader {
    std::vector<std::pair<std::string, std::string>> entries;

    CsvHeader& add(std::string key, std::string value);
    CsvHeader& add(std::string key, double value);
    void write(std::ostream& out) const;
};

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// Opens `path` for writing, creating parent directories. Throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

void write_trace_csv(std::ostream& out, const OrientationTrace& trace, const CsvHeader& header,
                     const std::string& value_column = "O");

/// One row per first index, comma separated.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& values, const CsvHeader& header);

/// |psi|^2 on the (xi, eta) grid, row = xi index.
void write_state_density_csv(std::ostream& out, const QuantumState& state, const CsvHeader& header);

/// Linear grayscale heatmap, white at the maximum. Row i is drawn at the
/// bottom for i = 0 so that the first index runs along x and the second up y.
void write_heatmap_svg(std::ostream& out, const Eigen::MatrixXd& values, const std::string& title,
                       int cell_px = 3);

}  // namespace kickrot
