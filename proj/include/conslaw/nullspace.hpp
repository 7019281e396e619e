#ifndef CONSLAW_NULLSPACE_HPP
#define CONSLAW_NULLSPACE_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace conslaw {

/// SVD of a Gamma matrix plus the cutoff bookkeeping: which singular values
/// count as numerically zero, how many (count), and the gap delta between the
/// smallest retained and largest discarded singular value.
struct SvdAnalysis {
    Eigen::VectorXd singular_values; // descending, length min(N,p)
    Eigen::MatrixXd V;               // p x p right singular vectors
    double cutoff = 0.0;
    std::vector<int> null_indices;   // {j : sigma_j < cutoff}
    int count = 0;
    std::optional<double> delta;     // sigma_{j-1} - sigma_j at j = min(null_indices)
    std::vector<double> residuals;   // ||Gamma v_j||_2 per null index
};

/// Full SVD with right singular vectors sign-normalized so the
/// largest-magnitude entry of each column is positive.
SvdAnalysis analyze(const Eigen::MatrixXd& Gamma, double cutoff);

/// Noise-based cutoff rule: max(sqrt(N*p) * eps_x_max^(2/3), floor).
/// The floor covers the noiseless regime.
double cutoffFromNoise(int N, int p, double eps_x_max, double floor_value = 1e-10);

/// Largest singular value.
double spectralNorm(const Eigen::MatrixXd& A);

struct BoundReport {
    double weyl = 0.0;           // ||E_Gamma||_2
    double gamma_bound = 0.0;    // sqrt(Np) * max(||eps_x||_inf, ||eps_dx||_inf)
    double tikhonov_bound = 0.0; // sqrt(Np) * (k1 h^2 + 2 k2 ||eps_x||_inf^(2/3))
    bool gap_ok = false;         // sigma_r^2 >= C_gap (sqrt(Np) + N)
    double sigma_r = 0.0;        // smallest singular value above the null floor
};

BoundReport bounds(const Eigen::MatrixXd& Gamma_clean, const Eigen::MatrixXd& Gamma_noisy,
                   double eps_x_max, double eps_dx_max, double h, double k1, double k2,
                   double c_gap);

/// ||sin Theta(V1, V2)||_2 = sqrt(1 - sigma_min(V1^T V2)^2) for orthonormal
/// same-shape V1, V2. Throws ValidationError when a column norm is off by
/// more than 1e-8.
double subspaceDistance(const Eigen::MatrixXd& V1, const Eigen::MatrixXd& V2);

} // namespace conslaw

#endif
