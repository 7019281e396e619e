#ifndef CONSLAW_BENCHMARKS_HPP
#define CONSLAW_BENCHMARKS_HPP

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "conslaw/library.hpp"
#include "conslaw/timeseries.hpp"

namespace conslaw {

enum class SystemName { Volpert, TwoLaws, Oxidation, NoLaws, Mapk };

SystemName parseSystemName(const std::string& text); // throws ConfigError
std::string systemNameString(SystemName name);
std::vector<std::string> allSystemNames();

/// A conservation law known in closed form: coefficients over a TermList.
struct ExactLaw {
    TermList terms;
    Eigen::VectorXd coeffs;
};

struct BenchmarkSystem {
    std::string name;
    int dimension = 0;
    std::map<std::string, double> parameters;
    Eigen::VectorXd initial_state;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> rhs;
    std::vector<ExactLaw> exact_laws;
    double default_t_end = 1.0;
};

BenchmarkSystem makeSystem(SystemName name);

/// Fixed-step classical RK4 with `substeps` internal steps per output
/// interval. Samples at t_j = j*dt, j = 0..N-1, dt = t_end/N; the derivative
/// column holds rhs evaluated exactly at each sample.
/// Throws NumericalError naming the blow-up time if a state goes non-finite.
TimeSeries simulate(const BenchmarkSystem& system, double t_end, int N, int substeps = 32);

/// Per-law max_t |L(x(t)) - L(x(0))|. Throws DomainError when a ln-term law
/// meets a nonpositive state.
std::vector<double> lawResidual(const BenchmarkSystem& system, const TimeSeries& series);

} // namespace conslaw

#endif
