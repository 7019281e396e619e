#include "conslaw/nullspace.hpp"

#include <algorithm>
#include <cmath>

#include "conslaw/errors.hpp"

namespace conslaw {

SvdAnalysis analyze(const Eigen::MatrixXd& Gamma, double cutoff) {
    if (Gamma.rows() < 1 || Gamma.cols() < 1)
        throw ValidationError("Gamma must be nonempty");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Gamma, Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("SVD failed to converge");

    SvdAnalysis result;
    result.singular_values = svd.singularValues();
    result.V = svd.matrixV();
    result.cutoff = cutoff;

    // Deterministic sign convention: largest-magnitude entry of each right
    // singular vector is positive.
    const int p = static_cast<int>(result.V.cols());
    for (int j = 0; j < p; ++j) {
        Eigen::Index imax = 0;
        result.V.col(j).cwiseAbs().maxCoeff(&imax);
        if (result.V(imax, j) < 0.0)
            result.V.col(j) = -result.V.col(j);
    }

    // sigma_j is implicitly zero for j >= min(N,p).
    const int stored = static_cast<int>(result.singular_values.size());
    for (int j = 0; j < p; ++j) {
        const double sigma = j < stored ? result.singular_values[j] : 0.0;
        if (sigma < cutoff)
            result.null_indices.push_back(j);
    }
    result.count = static_cast<int>(result.null_indices.size());
    if (result.count > 0) {
        const int first = result.null_indices.front();
        if (first > 0) {
            const double below = first < stored ? result.singular_values[first] : 0.0;
            result.delta = result.singular_values[first - 1] - below;
        }
        for (int j : result.null_indices)
            result.residuals.push_back((Gamma * result.V.col(j)).norm());
    }
    return result;
}

double cutoffFromNoise(int N, int p, double eps_x_max, double floor_value) {
    const double noise_term =
        std::sqrt(static_cast<double>(N) * p) * std::pow(eps_x_max, 2.0 / 3.0);
    return std::max(noise_term, floor_value);
}

double spectralNorm(const Eigen::MatrixXd& A) {
    if (A.size() == 0)
        return 0.0;
    return Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues()[0];
}

BoundReport bounds(const Eigen::MatrixXd& Gamma_clean, const Eigen::MatrixXd& Gamma_noisy,
                   double eps_x_max, double eps_dx_max, double h, double k1, double k2,
                   double c_gap) {
    if (Gamma_clean.rows() != Gamma_noisy.rows() || Gamma_clean.cols() != Gamma_noisy.cols())
        throw ValidationError("Gamma shapes differ");

    const double np = static_cast<double>(Gamma_clean.rows()) * Gamma_clean.cols();
    BoundReport report;
    report.weyl = spectralNorm(Gamma_noisy - Gamma_clean);
    report.gamma_bound = std::sqrt(np) * std::max(eps_x_max, eps_dx_max);
    report.tikhonov_bound =
        std::sqrt(np) * (k1 * h * h + 2.0 * k2 * std::pow(eps_x_max, 2.0 / 3.0));

    const Eigen::VectorXd sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(Gamma_clean).singularValues();
    report.sigma_r = 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma[i] >= 1e-10)
            report.sigma_r = sigma[i]; // descending: last one above the floor
    const double rhs = c_gap * (std::sqrt(np) + Gamma_clean.rows());
    report.gap_ok = report.sigma_r * report.sigma_r >= rhs;
    return report;
}

double subspaceDistance(const Eigen::MatrixXd& V1, const Eigen::MatrixXd& V2) {
    if (V1.rows() != V2.rows() || V1.cols() != V2.cols())
        throw ValidationError("subspace bases must have matching shapes");
    for (const auto* V : {&V1, &V2})
        for (Eigen::Index j = 0; j < V->cols(); ++j)
            if (std::abs(V->col(j).norm() - 1.0) > 1e-8)
                throw ValidationError("basis column " + std::to_string(j + 1) +
                                      " is not unit norm");

    const Eigen::VectorXd sigma =
        Eigen::JacobiSVD<Eigen::MatrixXd>(V1.transpose() * V2).singularValues();
    const double smin = std::min(sigma.minCoeff(), 1.0);
    return std::sqrt(std::max(0.0, 1.0 - smin * smin));
}

} // namespace conslaw
