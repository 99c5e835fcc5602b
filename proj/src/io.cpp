#include "kickrot/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <system_error>

namespace kickrot {

CsvHeader& CsvHeader::add(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
    return *this;
}

CsvHeader& CsvHeader::add(std::string key, double value) { return add(std::move(key), format_double(value)); }

void CsvHeader::write(std::ostream& out) const {
    out << "# kickrot " << artifact_version << '\n';
    for (const auto& [k, v] : entries) out << "# " << k << " = " << v << '\n';
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::out | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void write_trace_csv(std::ostream& out, const OrientationTrace& trace, const CsvHeader& header,
                     const std::string& value_column) {
    header.write(out);
    out << "t," << value_column << '\n';
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << format_double(trace.times[i]) << ',' << format_double(trace.values[i]) << '\n';
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& values, const CsvHeader& header) {
    header.write(out);
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            if (j) out << ',';
            out << format_double(values(i, j));
        }
        out << '\n';
    }
}

void write_state_density_csv(std::ostream& out, const QuantumState& state, const CsvHeader& header) {
    write_matrix_csv(out, state.amplitudes.cwiseAbs2(), header);
}

void write_heatmap_svg(std::ostream& out, const Eigen::MatrixXd& values, const std::string& title, int cell_px) {
    const auto rows = values.rows(), cols = values.cols();
    const double peak = values.size() ? values.maxCoeff() : 0.0;
    const auto width = rows * cell_px, height = cols * cell_px;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" shape-rendering=\"crispEdges\">\n";
    out << "<title>" << title << "</title>\n";
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double level = peak > 0.0 ? std::clamp(values(i, j) / peak, 0.0, 1.0) : 0.0;
            const int g = static_cast<int>(std::lround(255.0 * level));
            out << "<rect x=\"" << i * cell_px << "\" y=\"" << (cols - 1 - j) * cell_px << "\" width=\"" << cell_px
                << "\" height=\"" << cell_px << "\" fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
        }
    out << "</svg>\n";
}

}  // namespace kickrot
