#include "conslaw/library.hpp"

#include <cmath>
#include <sstream>

#include "conslaw/errors.hpp"

namespace conslaw {

std::string LibrarySpec::str() const {
    std::ostringstream out;
    out << '(' << poly_degree << ',' << (trig ? 1 : 0) << ',' << (log ? 1 : 0) << ')';
    return out.str();
}

LibrarySpec parseLibrarySpec(const std::string& text) {
    int a = 0, b = 0, c = 0;
    char l = 0, c1 = 0, c2 = 0, r = 0;
    std::istringstream in(text);
    in >> l >> a >> c1 >> b >> c2 >> c >> r;
    if (!in || l != '(' || c1 != ',' || c2 != ',' || r != ')')
        throw ValidationError("malformed library triple '" + text + "', expected \"(a,b,c)\"");
    if (a < 1 || a > 3 || b < 0 || b > 1 || c < 0 || c > 1)
        throw ValidationError("library triple out of range: " + text);
    return LibrarySpec{a, b != 0, c != 0};
}

std::string Term::str() const {
    switch (kind) {
        case TermKind::Sin:
            return "sin(x" + std::to_string(var + 1) + ")";
        case TermKind::Cos:
            return "cos(x" + std::to_string(var + 1) + ")";
        case TermKind::Ln:
            return "ln(x" + std::to_string(var + 1) + ")";
        case TermKind::Monomial:
            break;
    }
    std::string out;
    for (int i = 0; i < exponents.size(); ++i) {
        if (exponents[i] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += "x" + std::to_string(i + 1);
        if (exponents[i] > 1)
            out += '^' + std::to_string(exponents[i]);
    }
    return out;
}

int TermList::indexOf(const Term& t) const {
    for (int j = 0; j < p(); ++j) {
        const Term& u = terms[j];
        if (u.kind != t.kind)
            continue;
        if (t.kind == TermKind::Monomial) {
            if (u.exponents == t.exponents)
                return j;
        } else if (u.var == t.var) {
            return j;
        }
    }
    return -1;
}

namespace {

int binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

// Degree-k exponent vectors in lexicographic order with x1 highest.
void monomialsOfDegree(int n, int k, int var, Eigen::VectorXi& current,
                       std::vector<Term>& out) {
    if (var == n - 1) {
        current[var] = k;
        out.push_back(Term{TermKind::Monomial, current, -1});
        current[var] = 0;
        return;
    }
    for (int e = k; e >= 0; --e) {
        current[var] = e;
        monomialsOfDegree(n, k - e, var + 1, current, out);
    }
    current[var] = 0;
}

} // namespace

int termCount(const LibrarySpec& spec, int n) {
    int p = 0;
    for (int k = 1; k <= spec.poly_degree; ++k)
        p += binomial(n + k - 1, k);
    if (spec.trig)
        p += 2 * n;
    if (spec.log)
        p += n;
    return p;
}

TermList expand(const LibrarySpec& spec, int n) {
    if (n < 1)
        throw ValidationError("dimension must be positive");
    TermList list;
    list.n = n;
    Eigen::VectorXi current = Eigen::VectorXi::Zero(n);
    for (int k = 1; k <= spec.poly_degree; ++k)
        monomialsOfDegree(n, k, 0, current, list.terms);
    if (spec.trig) {
        for (int i = 0; i < n; ++i)
            list.terms.push_back(Term{TermKind::Sin, {}, i});
        for (int i = 0; i < n; ++i)
            list.terms.push_back(Term{TermKind::Cos, {}, i});
    }
    if (spec.log)
        for (int i = 0; i < n; ++i)
            list.terms.push_back(Term{TermKind::Ln, {}, i});
    return list;
}

namespace {

void checkLnDomain(const Term& t, const Eigen::MatrixXd& X, Eigen::Index row) {
    if (X(row, t.var) <= 0.0)
        throw DomainError("ln requires positive data: x" + std::to_string(t.var + 1) +
                          " = " + std::to_string(X(row, t.var)) + " at row " +
                          std::to_string(row + 1));
}

double evalMonomial(const Term& t, const Eigen::MatrixXd& X, Eigen::Index row) {
    double v = 1.0;
    for (int i = 0; i < t.exponents.size(); ++i)
        for (int e = 0; e < t.exponents[i]; ++e)
            v *= X(row, i);
    return v;
}

// Product rule: sum_i e_i xdot_i x_i^(e_i - 1) prod_{j != i} x_j^(e_j).
double evalMonomialDot(const Term& t, const Eigen::MatrixXd& X, const Eigen::MatrixXd& dX,
                       Eigen::Index row) {
    double total = 0.0;
    for (int i = 0; i < t.exponents.size(); ++i) {
        if (t.exponents[i] == 0)
            continue;
        double v = t.exponents[i] * dX(row, i);
        for (int j = 0; j < t.exponents.size(); ++j) {
            const int e = t.exponents[j] - (j == i ? 1 : 0);
            for (int k = 0; k < e; ++k)
                v *= X(row, j);
        }
        total += v;
    }
    return total;
}

} // namespace

Eigen::MatrixXd evalTheta(const TermList& terms, const Eigen::MatrixXd& X) {
    if (X.cols() != terms.n)
        throw ValidationError("state dimension mismatch with term list");
    Eigen::MatrixXd theta(X.rows(), terms.p());
    for (int j = 0; j < terms.p(); ++j) {
        const Term& t = terms.terms[j];
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            switch (t.kind) {
                case TermKind::Monomial:
                    theta(i, j) = evalMonomial(t, X, i);
                    break;
                case TermKind::Sin:
                    theta(i, j) = std::sin(X(i, t.var));
                    break;
                case TermKind::Cos:
                    theta(i, j) = std::cos(X(i, t.var));
                    break;
                case TermKind::Ln:
                    checkLnDomain(t, X, i);
                    theta(i, j) = std::log(X(i, t.var));
                    break;
            }
        }
    }
    return theta;
}

Eigen::MatrixXd evalGamma(const TermList& terms, const Eigen::MatrixXd& X,
                          const Eigen::MatrixXd& dX) {
    if (X.rows() != dX.rows() || X.cols() != dX.cols())
        throw ValidationError("X and dX shapes differ");
    if (X.cols() != terms.n)
        throw ValidationError("state dimension mismatch with term list");
    Eigen::MatrixXd gamma(X.rows(), terms.p());
    for (int j = 0; j < terms.p(); ++j) {
        const Term& t = terms.terms[j];
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            switch (t.kind) {
                case TermKind::Monomial:
                    gamma(i, j) = evalMonomialDot(t, X, dX, i);
                    break;
                case TermKind::Sin:
                    gamma(i, j) = dX(i, t.var) * std::cos(X(i, t.var));
                    break;
                case TermKind::Cos:
                    gamma(i, j) = -dX(i, t.var) * std::sin(X(i, t.var));
                    break;
                case TermKind::Ln:
                    checkLnDomain(t, X, i);
                    gamma(i, j) = dX(i, t.var) / X(i, t.var);
                    break;
            }
        }
    }
    return gamma;
}

} // namespace conslaw
