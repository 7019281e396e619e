#include "conslaw/selection.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string_view>

#include "conslaw/errors.hpp"

namespace conslaw {

CutoffPolicy CutoffPolicy::fixed(double cutoff) {
    return CutoffPolicy{Kind::Fixed, cutoff, 0.0};
}

CutoffPolicy CutoffPolicy::noiseBased(double eps_x_max, double floor_value) {
    return CutoffPolicy{Kind::NoiseBased, floor_value, eps_x_max};
}

double CutoffPolicy::cutoffFor(int N, int p) const {
    if (kind == Kind::Fixed)
        return value;
    return cutoffFromNoise(N, p, eps_x_max, value);
}

std::vector<LibrarySpec> allCandidates() {
    std::vector<LibrarySpec> menu;
    for (int a = 1; a <= 3; ++a)
        for (int b = 0; b <= 1; ++b)
            for (int c = 0; c <= 1; ++c)
                menu.push_back(LibrarySpec{a, b != 0, c != 0});
    return menu;
}

std::vector<LibrarySpec> parseCandidates(const std::string& text) {
    if (text == "all")
        return allCandidates();
    std::vector<LibrarySpec> specs;
    std::string::size_type pos = 0;
    while (pos < text.size()) {
        const auto open = text.find('(', pos);
        if (open == std::string::npos)
            break;
        const auto close = text.find(')', open);
        if (close == std::string::npos)
            throw ValidationError("unbalanced parenthesis in candidate list '" + text + "'");
        specs.push_back(parseLibrarySpec(text.substr(open, close - open + 1)));
        pos = close + 1;
    }
    if (specs.empty())
        throw ValidationError("no candidates parsed from '" + text + "'");
    return specs;
}

Eigen::MatrixXd rrefReduce(const Eigen::MatrixXd& Xi) {
    const Eigen::Index p = Xi.rows();
    const Eigen::Index m = Xi.cols();
    if (m < 1)
        throw ValidationError("rrefReduce needs at least one coefficient column");

    // Gauss-Jordan on Xi^T with row pivoting: columns are scanned in term
    // order so the leading library terms become the pivots.
    Eigen::MatrixXd B = Xi.transpose();
    Eigen::Index rank = 0;
    for (Eigen::Index col = 0; col < p && rank < m; ++col) {
        Eigen::Index pivot_row = rank;
        double best = std::abs(B(rank, col));
        for (Eigen::Index r = rank + 1; r < m; ++r)
            if (std::abs(B(r, col)) > best) {
                best = std::abs(B(r, col));
                pivot_row = r;
            }
        // Relative acceptance keeps noise-level entries from becoming pivots
        // (a tiny pivot would blow the remaining rows up by its reciprocal).
        const double scale = B.bottomRows(m - rank).cwiseAbs().maxCoeff();
        if (best < 1e-12 || best < 1e-6 * scale)
            continue;
        B.row(rank).swap(B.row(pivot_row));
        B.row(rank) /= B(rank, col);
        B(rank, col) = 1.0; // exact pivot
        for (Eigen::Index r = 0; r < m; ++r)
            if (r != rank && B(r, col) != 0.0) {
                B.row(r) -= B(r, col) * B.row(rank);
                B(r, col) = 0.0;
            }
        ++rank;
    }
    if (rank < m)
        throw NumericalError("coefficient columns are numerically rank-deficient");

    // Snap entries below 1e-10 of the row max to zero.
    for (Eigen::Index r = 0; r < m; ++r) {
        const double row_max = B.row(r).cwiseAbs().maxCoeff();
        for (Eigen::Index c = 0; c < p; ++c)
            if (std::abs(B(r, c)) < 1e-10 * row_max)
                B(r, c) = 0.0;
    }
    return B;
}

std::string formatLaw(const TermList& terms, const Eigen::VectorXd& coefficients,
                      const std::string& conserved_name) {
    if (coefficients.size() != terms.p())
        throw ValidationError("coefficient length does not match term list");
    if ((coefficients.array() == 0.0).all())
        throw ValidationError("all-zero coefficient vector");

    std::ostringstream out;
    bool first = true;
    for (int j = 0; j < terms.p(); ++j) {
        const double c = coefficients[j];
        if (c == 0.0)
            continue;
        if (first) {
            if (c < 0.0)
                out << '-';
            first = false;
        } else {
            out << (c < 0.0 ? " - " : " + ");
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.5g", std::abs(c));
        if (std::string_view(buf) != "1")
            out << buf << '*';
        out << terms.terms[j].str();
    }
    out << " = " << conserved_name;
    return out.str();
}

DiscoveryResult discover(const Eigen::MatrixXd& X, const Eigen::MatrixXd& dX,
                         const std::vector<LibrarySpec>& candidates,
                         const CutoffPolicy& cutoff_policy) {
    if (candidates.empty())
        throw ConfigError("candidate list is empty");
    if (X.rows() != dX.rows() || X.cols() != dX.cols())
        throw ValidationError("X and dX shapes differ");

    const int N = static_cast<int>(X.rows());
    const int n = static_cast<int>(X.cols());
    const bool positive_data = (X.array() > 0.0).all();

    DiscoveryResult result;
    int best = -1;
    for (const auto& spec : candidates) {
        CandidateReport report;
        report.spec = spec;
        report.p = termCount(spec, n);
        if (report.p > N) {
            report.skip_reason = "p=" + std::to_string(report.p) + " exceeds N=" +
                                 std::to_string(N);
            result.candidates.push_back(std::move(report));
            continue;
        }
        if (spec.log && !positive_data) {
            report.skip_reason = "log terms require strictly positive data";
            result.candidates.push_back(std::move(report));
            continue;
        }
        const TermList terms = expand(spec, n);
        const Eigen::MatrixXd gamma = evalGamma(terms, X, dX);
        report.cutoff = cutoff_policy.cutoffFor(N, report.p);
        report.analysis = analyze(gamma, report.cutoff);
        report.eligible = report.analysis->count > 0 && report.analysis->count <= n;
        report.delta = report.analysis->delta;
        result.candidates.push_back(std::move(report));

        const auto& current = result.candidates.back();
        if (!current.eligible)
            continue;
        if (best < 0) {
            best = static_cast<int>(result.candidates.size()) - 1;
            continue;
        }
        const auto& incumbent = result.candidates[best];
        const double d_new = current.delta.value_or(-std::numeric_limits<double>::infinity());
        const double d_old = incumbent.delta.value_or(-std::numeric_limits<double>::infinity());
        if (d_new > d_old || (d_new == d_old && current.p < incumbent.p))
            best = static_cast<int>(result.candidates.size()) - 1;
    }

    bool all_skipped = true;
    for (const auto& c : result.candidates)
        if (c.skip_reason.empty())
            all_skipped = false;
    if (all_skipped) {
        std::string reasons;
        for (const auto& c : result.candidates)
            reasons += "\n  " + c.spec.str() + ": " + c.skip_reason;
        throw ConfigError("all candidates skipped:" + reasons);
    }

    if (best < 0)
        return result; // none-found is a successful outcome

    const auto& winner = result.candidates[best];
    result.optimal = winner.spec;
    result.terms = expand(winner.spec, n);
    const auto& analysis = *winner.analysis;

    result.raw_laws.resize(winner.p, analysis.count);
    for (int k = 0; k < analysis.count; ++k)
        result.raw_laws.col(k) = analysis.V.col(analysis.null_indices[k]);
    result.reduced_laws = rrefReduce(result.raw_laws);

    const Eigen::MatrixXd gamma = evalGamma(result.terms, X, dX);
    for (int k = 0; k < analysis.count; ++k) {
        result.residual_raw += (gamma * result.raw_laws.col(k)).norm();
        result.residual_reduced += (gamma * result.reduced_laws.row(k).transpose()).norm();
    }
    return result;
}

} // namespace conslaw
