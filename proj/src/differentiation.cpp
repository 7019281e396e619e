#include "conslaw/differentiation.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "conslaw/errors.hpp"

namespace conslaw {

DiffMethod DiffMethod::centralFd() { return DiffMethod{DiffKind::CentralFd, 0.0, 11, 3}; }

DiffMethod DiffMethod::tikhonov(double lambda) {
    return DiffMethod{DiffKind::Tikhonov, lambda, 11, 3};
}

DiffMethod DiffMethod::savitzkyGolay(int window, int order) {
    return DiffMethod{DiffKind::SavitzkyGolay, 0.0, window, order};
}

DiffKind parseDiffKind(const std::string& text) {
    if (text == "central_fd") return DiffKind::CentralFd;
    if (text == "tikhonov") return DiffKind::Tikhonov;
    if (text == "savitzky_golay") return DiffKind::SavitzkyGolay;
    throw ValidationError("unknown differentiation method '" + text +
                          "', expected central_fd, tikhonov, or savitzky_golay");
}

namespace {

double uniformStep(const Eigen::VectorXd& times) {
    const Eigen::Index N = times.size();
    const double h = (times[N - 1] - times[0]) / static_cast<double>(N - 1);
    for (Eigen::Index i = 1; i < N; ++i) {
        const double step = times[i] - times[i - 1];
        if (std::abs(step - h) > 1e-12 * std::max(std::abs(h), 1.0))
            throw ValidationError("non-uniform time grid at row " + std::to_string(i + 1));
    }
    return h;
}

Eigen::MatrixXd centralFd(const Eigen::MatrixXd& X, double h) {
    const Eigen::Index N = X.rows();
    Eigen::MatrixXd dX(N, X.cols());
    dX.row(0) = (-3.0 * X.row(0) + 4.0 * X.row(1) - X.row(2)) / (2.0 * h);
    for (Eigen::Index i = 1; i + 1 < N; ++i)
        dX.row(i) = (X.row(i + 1) - X.row(i - 1)) / (2.0 * h);
    dX.row(N - 1) = (3.0 * X.row(N - 1) - 4.0 * X.row(N - 2) + X.row(N - 3)) / (2.0 * h);
    return dX;
}

// min_u ||A u - (x - x_0)||^2 + lambda ||D u||^2 with A the cumulative
// trapezoid operator and D the first-difference operator; solved per column
// through the normal equations.
Eigen::MatrixXd tikhonovDiff(const Eigen::MatrixXd& X, double h, double lambda) {
    const Eigen::Index N = X.rows();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    for (Eigen::Index i = 1; i < N; ++i) {
        A.row(i) = A.row(i - 1);
        A(i, i - 1) += 0.5 * h;
        A(i, i) += 0.5 * h;
    }
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N - 1, N);
    for (Eigen::Index i = 0; i + 1 < N; ++i) {
        D(i, i) = -1.0;
        D(i, i + 1) = 1.0;
    }
    const Eigen::MatrixXd M = A.transpose() * A + lambda * D.transpose() * D;
    Eigen::LDLT<Eigen::MatrixXd> solver(M);
    if (solver.info() != Eigen::Success)
        throw NumericalError("Tikhonov normal equations failed to factorize");

    Eigen::MatrixXd dX(N, X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const Eigen::VectorXd b = X.col(j).array() - X(0, j);
        dX.col(j) = solver.solve(A.transpose() * b);
    }
    return dX;
}

// Least-squares polynomial fit over the window in local coordinates
// (t - t_i); the linear coefficient is the derivative at the center.
Eigen::MatrixXd savitzkyGolayDiff(const Eigen::MatrixXd& X, double h, int window, int order) {
    const Eigen::Index N = X.rows();
    const int half = window / 2;
    Eigen::MatrixXd dX(N, X.cols());
    for (Eigen::Index i = 0; i < N; ++i) {
        const Eigen::Index lo = std::max<Eigen::Index>(0, i - half);
        const Eigen::Index hi = std::min<Eigen::Index>(N - 1, i + half);
        const Eigen::Index m = hi - lo + 1;
        const int deg = std::min<int>(order, static_cast<int>(m) - 1);
        Eigen::MatrixXd vand(m, deg + 1);
        for (Eigen::Index r = 0; r < m; ++r) {
            const double tau = static_cast<double>(lo + r - i) * h;
            double pw = 1.0;
            for (int c = 0; c <= deg; ++c) {
                vand(r, c) = pw;
                pw *= tau;
            }
        }
        const auto qr = vand.colPivHouseholderQr();
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            const Eigen::VectorXd coef = qr.solve(X.col(j).segment(lo, m));
            dX(i, j) = coef[1];
        }
    }
    return dX;
}

} // namespace

TimeSeries differentiate(const TimeSeries& series, const DiffMethod& method) {
    const Eigen::Index N = series.rows();
    if (N < 5)
        throw ValidationError("differentiation requires N >= 5");
    const double h = uniformStep(series.times);

    TimeSeries out = series;
    switch (method.kind) {
        case DiffKind::CentralFd:
            out.derivatives = centralFd(series.states, h);
            break;
        case DiffKind::Tikhonov: {
            const double lambda =
                method.tikhonov_lambda > 0.0 ? method.tikhonov_lambda : 1e-6 * static_cast<double>(N);
            out.derivatives = tikhonovDiff(series.states, h, lambda);
            break;
        }
        case DiffKind::SavitzkyGolay: {
            if (method.sg_window < 5 || method.sg_window % 2 == 0)
                throw ValidationError("Savitzky-Golay window must be odd and >= 5");
            if (method.sg_order < 2 || method.sg_order > method.sg_window - 1)
                throw ValidationError("Savitzky-Golay order must be in [2, window-1]");
            if (N < method.sg_window)
                throw ValidationError("N=" + std::to_string(N) + " smaller than window " +
                                      std::to_string(method.sg_window));
            out.derivatives = savitzkyGolayDiff(series.states, h, method.sg_window, method.sg_order);
            break;
        }
    }
    return out;
}

NormReport derivativeError(const TimeSeries& estimated, const TimeSeries& truth) {
    if (!estimated.derivatives || !truth.derivatives)
        throw ValidationError("both series need derivative data");
    if (estimated.derivatives->rows() != truth.derivatives->rows() ||
        estimated.derivatives->cols() != truth.derivatives->cols())
        throw ValidationError("derivative shapes differ");
    const Eigen::MatrixXd diff = *estimated.derivatives - *truth.derivatives;
    NormReport report;
    report.frobenius = diff.norm();
    report.max_abs = diff.size() > 0 ? diff.array().abs().maxCoeff() : 0.0;
    return report;
}

} // namespace conslaw
