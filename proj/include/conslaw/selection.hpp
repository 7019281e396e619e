#ifndef CONSLAW_SELECTION_HPP
#define CONSLAW_SELECTION_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "conslaw/library.hpp"
#include "conslaw/nullspace.hpp"

namespace conslaw {

struct CutoffPolicy {
    enum class Kind { Fixed, NoiseBased };
    Kind kind = Kind::Fixed;
    double value = 1e-10;    // fixed cutoff, or the floor when noise-based
    double eps_x_max = 0.0;  // noise-based only

    static CutoffPolicy fixed(double cutoff);
    static CutoffPolicy noiseBased(double eps_x_max, double floor_value = 1e-10);

    double cutoffFor(int N, int p) const;
};

struct CandidateReport {
    LibrarySpec spec;
    int p = 0;
    std::optional<SvdAnalysis> analysis; // absent when skipped
    std::string skip_reason;             // nonempty when skipped
    double cutoff = 0.0;
    bool eligible = false;               // 0 < count <= n
    std::optional<double> delta;
};

struct DiscoveryResult {
    std::optional<LibrarySpec> optimal;
    TermList terms;               // of the optimal candidate
    Eigen::MatrixXd raw_laws;     // p x count right singular vectors
    Eigen::MatrixXd reduced_laws; // count x p RREF rows
    double residual_raw = 0.0;    // sum_j ||Gamma xi_j||
    double residual_reduced = 0.0;
    std::vector<CandidateReport> candidates;

    bool found() const { return optimal.has_value(); }
};

/// The full library-selection sweep: for each candidate build Gamma, analyze
/// with its own cutoff, keep candidates with 0 < count <= n, pick the one
/// with the largest delta (ties: smaller p, then candidate order), and reduce
/// its null vectors to canonical RREF rows. An empty eligible set is a
/// successful none-found result. Candidates with p > N, or with log terms on
/// nonpositive data, are skipped with a recorded reason; if every candidate
/// is skipped a ConfigError lists the reasons.
DiscoveryResult discover(const Eigen::MatrixXd& X, const Eigen::MatrixXd& dX,
                         const std::vector<LibrarySpec>& candidates,
                         const CutoffPolicy& cutoff_policy);

/// RREF of the coefficient columns: row-pivoted Gauss-Jordan on Xi^T, pivots
/// exactly 1, entries below 1e-10 * (row max) snapped to zero. Input is p x m
/// (m coefficient columns), output m x p reduced rows.
/// Throws NumericalError when Xi is numerically rank-deficient.
Eigen::MatrixXd rrefReduce(const Eigen::MatrixXd& Xi);

/// "x1 + x2 - 2.5*ln(x3) = C": 5 significant digits, zero coefficients
/// omitted, unit coefficients implicit, leading sign absorbed.
std::string formatLaw(const TermList& terms, const Eigen::VectorXd& coefficients,
                      const std::string& conserved_name = "C");

/// The 12-triple menu used throughout the experiments:
/// a in {1,2,3} x b in {0,1} x c in {0,1}.
std::vector<LibrarySpec> allCandidates();

/// Parses "all" or a list "(1,0,0),(2,0,1)".
std::vector<LibrarySpec> parseCandidates(const std::string& text);

} // namespace conslaw

#endif
