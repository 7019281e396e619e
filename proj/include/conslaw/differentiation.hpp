#ifndef CONSLAW_DIFFERENTIATION_HPP
#define CONSLAW_DIFFERENTIATION_HPP

#include <string>

#include "conslaw/timeseries.hpp"

namespace conslaw {

enum class DiffKind { CentralFd, Tikhonov, SavitzkyGolay };

struct DiffMethod {
    DiffKind kind = DiffKind::CentralFd;
    double tikhonov_lambda = 0.0; // <= 0 means the default 1e-6*N
    int sg_window = 11;           // odd, >= 5
    int sg_order = 5;             // in [2, sg_window-1]

    static DiffMethod centralFd();
    static DiffMethod tikhonov(double lambda = 0.0);
    static DiffMethod savitzkyGolay(int window = 11, int order = 5);
};

DiffKind parseDiffKind(const std::string& text); // throws ValidationError

/// Fills the derivative column from the states; states untouched.
///   central_fd      second-order central differences, one-sided at the ends
///   tikhonov        per column, minimize ||A u - (x - x0)||^2 + lambda ||D u||^2
///                   with A the cumulative trapezoid operator, D first differences
///   savitzky_golay  local least-squares polynomial fit, derivative at the
///                   center; window truncated one-sidedly near the boundaries
/// Requires N >= 5 and a uniform grid (1e-12 relative tolerance).
TimeSeries differentiate(const TimeSeries& series, const DiffMethod& method);

struct NormReport {
    double frobenius = 0.0;
    double max_abs = 0.0;
};

/// Norms of the derivative difference between two same-shape series.
NormReport derivativeError(const TimeSeries& estimated, const TimeSeries& truth);

} // namespace conslaw

#endif
