#ifndef CONSLAW_TIMESERIES_HPP
#define CONSLAW_TIMESERIES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conslaw {

/// Sampled trajectory: strictly increasing time grid, N x n state matrix,
/// optional N x n derivative matrix. Immutable by convention after construction.
struct TimeSeries {
    Eigen::VectorXd times;
    Eigen::MatrixXd states;
    std::optional<Eigen::MatrixXd> derivatives;
    std::vector<std::string> labels;

    Eigen::Index rows() const { return states.rows(); }
    Eigen::Index cols() const { return states.cols(); }

    // Throws ValidationError when an invariant is violated.
    void validate() const;
};

struct NoiseSpec {
    double scale = 0.0;     // the paper's "variance" knob; see addNoise
    std::uint64_t seed = 0;
};

struct NoiseReport {
    double max_abs = 0.0;   // ||eps_x||_max, entrywise
    double frobenius = 0.0; // ||eps_x||_2
};

TimeSeries loadCsv(const std::string& path);
void saveCsv(const TimeSeries& series, const std::string& path);

/// Perturbs each state entry with an independent Gaussian draw of standard
/// deviation spec.scale. The tabulated noise levels in the source experiments
/// (entrywise errors of the same order as the nominal "variance") are only
/// reproduced with this scaling, so the knob multiplies standard normal draws
/// directly. Derivatives are dropped: they must be re-estimated from the
/// noisy states.
std::pair<TimeSeries, NoiseReport> addNoise(const TimeSeries& series, const NoiseSpec& spec);

/// Keeps the centered `keep` consecutive samples: drop floor((N-keep)/2)
/// rows from the front, the remainder from the back.
TimeSeries trimInterior(const TimeSeries& series, Eigen::Index keep);

} // namespace conslaw

#endif
