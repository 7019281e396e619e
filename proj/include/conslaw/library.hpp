#ifndef CONSLAW_LIBRARY_HPP
#define CONSLAW_LIBRARY_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace conslaw {

/// A candidate function library encoded as the triple (a, b, c):
/// monomials up to degree a, trig terms iff b, log terms iff c.
/// The constant term is always excluded (its derivative column would be
/// identically zero and produce a spurious null vector).
struct LibrarySpec {
    int poly_degree = 1; // a in [1,3]
    bool trig = false;   // b
    bool log = false;    // c

    bool operator==(const LibrarySpec&) const = default;
    std::string str() const; // "(1,0,1)"
};

/// Parses "(a,b,c)"; throws ValidationError on malformed input.
LibrarySpec parseLibrarySpec(const std::string& text);

enum class TermKind { Monomial, Sin, Cos, Ln };

struct Term {
    TermKind kind = TermKind::Monomial;
    Eigen::VectorXi exponents; // monomial only, length n
    int var = -1;              // sin/cos/ln: 0-based variable index

    std::string str() const; // "x1^2*x2", "sin(x3)", "ln(x2)"
};

/// Ordered expansion of a LibrarySpec: degree-1 monomials, degree-2, degree-3
/// (graded lexicographic within a grade, x1 highest), then sin(x1..xn),
/// cos(x1..xn), then ln(x1..xn).
struct TermList {
    std::vector<Term> terms;
    int n = 0;

    int p() const { return static_cast<int>(terms.size()); }
    int indexOf(const Term& t) const; // -1 when absent
};

/// p = sum_{k=1..a} C(n+k-1,k) + b*2n + c*n
int termCount(const LibrarySpec& spec, int n);

TermList expand(const LibrarySpec& spec, int n);

/// Theta(X): column j is theta_j evaluated at every row of X.
/// Throws DomainError (naming row and variable) for ln of a nonpositive entry.
Eigen::MatrixXd evalTheta(const TermList& terms, const Eigen::MatrixXd& X);

/// Gamma(X, dX): column j is grad(theta_j)(x) . xdot per row — the chain rule.
Eigen::MatrixXd evalGamma(const TermList& terms, const Eigen::MatrixXd& X,
                          const Eigen::MatrixXd& dX);

} // namespace conslaw

#endif
