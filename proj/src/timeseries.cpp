#include "conslaw/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "conslaw/errors.hpp"

namespace conslaw {

void TimeSeries::validate() const {
    const Eigen::Index N = times.size();
    if (states.rows() != N)
        throw ValidationError("times/states row mismatch: " + std::to_string(N) + " vs " +
                              std::to_string(states.rows()));
    if (derivatives && derivatives->rows() != N)
        throw ValidationError("derivatives row count " + std::to_string(derivatives->rows()) +
                              " does not match N=" + std::to_string(N));
    if (derivatives && derivatives->cols() != states.cols())
        throw ValidationError("derivatives column count does not match states");
    for (Eigen::Index i = 1; i < N; ++i)
        if (!(times[i] > times[i - 1]))
            throw ValidationError("times not strictly increasing at row " + std::to_string(i + 1));
    if (static_cast<Eigen::Index>(labels.size()) != states.cols())
        throw ValidationError("label count does not match state dimension");
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (static_cast<Eigen::Index>(distinct.size()) != states.cols())
        throw ValidationError("labels are not distinct");
}

namespace {

double parseField(const std::string& field, Eigen::Index row, Eigen::Index col) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw FormatError("non-numeric field '" + field + "' at row " + std::to_string(row) +
                          ", column " + std::to_string(col));
    return value;
}

std::vector<std::string> splitCsvLine(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

// 17 significant digits: lossless for 64-bit floats, so save/load round-trips.
std::string formatValue(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

TimeSeries loadCsv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");

    std::string line;
    if (!std::getline(in, line))
        throw FormatError("'" + path + "' is empty, expected a header row");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();

    auto header = splitCsvLine(line);
    if (header.empty() || header[0] != "t")
        throw FormatError("header must start with 't', got '" + line + "'");
    const Eigen::Index n = static_cast<Eigen::Index>(header.size()) - 1;
    if (n < 1)
        throw FormatError("header declares no state columns");

    std::vector<double> times;
    std::vector<double> values;
    Eigen::Index row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto fields = splitCsvLine(line);
        if (static_cast<Eigen::Index>(fields.size()) != n + 1)
            throw FormatError("row " + std::to_string(row) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(n + 1));
        times.push_back(parseField(fields[0], row, 1));
        for (Eigen::Index j = 0; j < n; ++j)
            values.push_back(parseField(fields[j + 1], row, j + 2));
    }

    const Eigen::Index N = static_cast<Eigen::Index>(times.size());
    TimeSeries series;
    series.times = Eigen::Map<Eigen::VectorXd>(times.data(), N);
    series.states = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                             Eigen::RowMajor>>(values.data(), N, n);
    series.labels.assign(header.begin() + 1, header.end());
    series.validate();
    return series;
}

void saveCsv(const TimeSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << "t";
    for (const auto& label : series.labels)
        out << ',' << label;
    out << '\n';
    for (Eigen::Index i = 0; i < series.rows(); ++i) {
        out << formatValue(series.times[i]);
        for (Eigen::Index j = 0; j < series.cols(); ++j)
            out << ',' << formatValue(series.states(i, j));
        out << '\n';
    }
    if (!out)
        throw IoError("write failure on '" + path + "'");
}

std::pair<TimeSeries, NoiseReport> addNoise(const TimeSeries& series, const NoiseSpec& spec) {
    if (spec.scale < 0.0)
        throw ValidationError("noise scale must be nonnegative");

    TimeSeries noisy;
    noisy.times = series.times;
    noisy.labels = series.labels;
    noisy.states = series.states;
    // derivatives intentionally dropped

    NoiseReport report;
    if (spec.scale > 0.0) {
        std::mt19937_64 rng(spec.seed);
        std::normal_distribution<double> normal(0.0, spec.scale);
        for (Eigen::Index i = 0; i < noisy.states.rows(); ++i)
            for (Eigen::Index j = 0; j < noisy.states.cols(); ++j) {
                const double eps = normal(rng);
                noisy.states(i, j) += eps;
                report.max_abs = std::max(report.max_abs, std::abs(eps));
                report.frobenius += eps * eps;
            }
        report.frobenius = std::sqrt(report.frobenius);
    }
    return {std::move(noisy), report};
}

TimeSeries trimInterior(const TimeSeries& series, Eigen::Index keep) {
    const Eigen::Index N = series.rows();
    if (keep < 1 || keep > N)
        throw ValidationError("keep=" + std::to_string(keep) + " out of range for N=" +
                              std::to_string(N));
    const Eigen::Index front = (N - keep) / 2;
    TimeSeries trimmed;
    trimmed.times = series.times.segment(front, keep);
    trimmed.states = series.states.middleRows(front, keep);
    if (series.derivatives)
        trimmed.derivatives = series.derivatives->middleRows(front, keep);
    trimmed.labels = series.labels;
    return trimmed;
}

} // namespace conslaw
