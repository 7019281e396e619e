#ifndef CONSLAW_HARNESS_HPP
#define CONSLAW_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conslaw/benchmarks.hpp"
#include "conslaw/differentiation.hpp"
#include "conslaw/selection.hpp"

namespace conslaw {

struct ExperimentPlan {
    SystemName system = SystemName::Volpert;
    std::vector<int> n_values{20, 100};
    std::vector<double> variances{0.0, 1e-10, 1e-5};
    int trials = 100;
    std::uint64_t base_seed = 0;
    std::optional<DiffMethod> diff_method; // default: per-system assignment
    std::vector<LibrarySpec> candidates = allCandidates();
    double t_end = 0.0; // <= 0 means the system default
};

struct ExperimentRow {
    int N = 0;
    double variance = 0.0;
    double eps_x = 0.0;          // mean ||eps_x||_max
    double eps_dx = 0.0;         // mean ||eps_dx||_F
    double e_gamma = 0.0;        // mean ||E_Gamma||_2 against the clean Gamma
    double residual_opt = 0.0;   // mean sum_j ||Gamma xi_opt,j||
    double residual_rref = 0.0;  // mean sum_j ||Gamma xi_rref,j||
    std::optional<double> xi_error; // mean ||xi_exact - xi_rref||, absent on count mismatch
    double accuracy = 0.0;
};

struct SingularValueRecord {
    int N = 0;
    double variance = 0.0;
    LibrarySpec spec;
    int index = 0;
    double sigma = 0.0;
    double cutoff = 0.0;
};

struct ExperimentReport {
    std::string system;
    std::vector<ExperimentRow> rows;
    std::vector<SingularValueRecord> singular_values; // first trial of each cell
};

/// Per-system defaults from the experiments: Tikhonov everywhere except the
/// oxidation network, which uses Savitzky-Golay.
DiffMethod defaultMethodFor(SystemName system);

/// The library triple a trial must select to count as accurate (none for the
/// law-free system).
std::optional<LibrarySpec> expectedSpecFor(SystemName system);

ExperimentReport runPlan(const ExperimentPlan& plan);

enum class ReportFormat { Json, Csv, Markdown };

ReportFormat parseReportFormat(const std::string& text);

std::string renderReport(const ExperimentReport& report, ReportFormat format);

/// Long-format CSV of the singular-value dump (triple, index, sigma, cutoff).
std::string renderSingularValues(const ExperimentReport& report);

} // namespace conslaw

#endif
