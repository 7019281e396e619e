#include "conslaw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "conslaw/errors.hpp"
#include "conslaw/json.hpp"

namespace conslaw {

DiffMethod defaultMethodFor(SystemName system) {
    if (system == SystemName::Oxidation)
        return DiffMethod::savitzkyGolay();
    return DiffMethod::tikhonov();
}

std::optional<LibrarySpec> expectedSpecFor(SystemName system) {
    switch (system) {
    case SystemName::Volpert:
    case SystemName::TwoLaws:
    case SystemName::Mapk:
        return LibrarySpec{1, false, false};
    case SystemName::Oxidation:
        return LibrarySpec{1, false, true};
    case SystemName::NoLaws:
        return std::nullopt;
    }
    throw ConfigError("unknown system");
}

namespace {

// Noise-free runs sit on the RREF zero-snap floor for the linear systems; the
// oxidation network carries Savitzky-Golay truncation error, so its noiseless
// cutoff follows the spectra (1e-5 at N=20, 1e-7 from N=100 on).
double noiselessCutoff(SystemName system, int N) {
    if (system == SystemName::Oxidation)
        return N <= 20 ? 1e-5 : 1e-7;
    return 1e-10;
}

int threadBudget() {
    if (const char* env = std::getenv("CONSLAW_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct TrialOutcome {
    double eps_x = 0.0;
    double eps_dx = 0.0;
    double e_gamma = 0.0;
    double residual_opt = 0.0;
    double residual_rref = 0.0;
    std::optional<double> xi_error;
    bool success = false;
    DiscoveryResult discovery; // kept for the singular-value dump (trial 0)
};

// Exact laws embedded into the term list of the selected library, reduced to
// the same canonical form as the discovered rows.
Eigen::MatrixXd exactReducedRows(const BenchmarkSystem& system, const TermList& terms) {
    const auto m = static_cast<Eigen::Index>(system.exact_laws.size());
    Eigen::MatrixXd Xi = Eigen::MatrixXd::Zero(terms.p(), m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const auto& law = system.exact_laws[k];
        for (int j = 0; j < law.terms.p(); ++j) {
            const int idx = terms.indexOf(law.terms.terms[j]);
            if (idx < 0)
                throw ConfigError("exact law term " + law.terms.terms[j].str() +
                                  " missing from the selected library");
            Xi(idx, k) = law.coeffs[j];
        }
    }
    return rrefReduce(Xi);
}

TrialOutcome runTrial(const BenchmarkSystem& system, SystemName name,
                      const TimeSeries& clean, double variance, std::uint64_t seed,
                      const DiffMethod& method, const std::vector<LibrarySpec>& candidates) {
    const auto [noisy, noise] = addNoise(clean, NoiseSpec{variance, seed});
    const TimeSeries est = differentiate(noisy, method);

    TrialOutcome out;
    out.eps_x = noise.max_abs;
    out.eps_dx = derivativeError(est, clean).frobenius;

    const int N = static_cast<int>(clean.rows());
    const CutoffPolicy policy =
        variance == 0.0
            ? CutoffPolicy::fixed(noiselessCutoff(name, N))
            : CutoffPolicy::noiseBased(noise.max_abs, noiselessCutoff(name, N));
    out.discovery = discover(est.states, *est.derivatives, candidates, policy);
    out.residual_opt = out.discovery.residual_raw;
    out.residual_rref = out.discovery.residual_reduced;

    const auto expected = expectedSpecFor(name);
    const TermList ref_terms =
        out.discovery.found()
            ? out.discovery.terms
            : expand(expected.value_or(LibrarySpec{1, false, false}), system.dimension);
    const Eigen::MatrixXd gamma_clean =
        evalGamma(ref_terms, clean.states, *clean.derivatives);
    const Eigen::MatrixXd gamma_noisy = evalGamma(ref_terms, est.states, *est.derivatives);
    out.e_gamma = spectralNorm(gamma_noisy - gamma_clean);

    // A trial is accurate when the selected library matches the known-correct
    // one (the source experiments score the oxidation cell that returns two
    // laws as accurate, so the law count is not part of the criterion); the
    // count still gates the xi-error column below.
    const auto found_count = out.discovery.found() ? out.discovery.reduced_laws.rows() : 0;
    if (!expected)
        out.success = !out.discovery.found();
    else
        out.success = out.discovery.found() && *out.discovery.optimal == *expected;

    const bool counts_match = found_count == static_cast<Eigen::Index>(system.exact_laws.size());
    if (out.success && expected && counts_match && found_count > 0) {
        const Eigen::MatrixXd exact = exactReducedRows(system, out.discovery.terms);
        double total = 0.0;
        for (Eigen::Index r = 0; r < found_count; ++r) {
            const Eigen::RowVectorXd row = out.discovery.reduced_laws.row(r);
            Eigen::Index match = 0;
            double best = -1.0;
            for (Eigen::Index e = 0; e < exact.rows(); ++e) {
                const double cosine = std::abs(row.dot(exact.row(e))) /
                                      (row.norm() * exact.row(e).norm());
                if (cosine > best) {
                    best = cosine;
                    match = e;
                }
            }
            total += (row - exact.row(match)).norm();
        }
        out.xi_error = total / static_cast<double>(found_count);
    }
    return out;
}

std::string formatDouble(double v, const char* fmt = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

} // namespace

ExperimentReport runPlan(const ExperimentPlan& plan) {
    if (plan.trials < 1)
        throw ConfigError("trials must be positive");
    const BenchmarkSystem system = makeSystem(plan.system);
    const double t_end = plan.t_end > 0.0 ? plan.t_end : system.default_t_end;
    const DiffMethod method = plan.diff_method.value_or(defaultMethodFor(plan.system));
    const int budget = threadBudget();

    ExperimentReport report;
    report.system = systemNameString(plan.system);

    for (const int N : plan.n_values) {
        const TimeSeries clean = simulate(system, t_end, N);
        for (const double variance : plan.variances) {
            const int trials = variance == 0.0 ? 1 : plan.trials;
            std::vector<TrialOutcome> outcomes(trials);
            std::vector<std::exception_ptr> errors(trials);

            const int workers = std::min(budget, trials);
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    for (int t = w; t < trials; t += workers) {
                        try {
                            outcomes[t] = runTrial(system, plan.system, clean, variance,
                                                   plan.base_seed + static_cast<std::uint64_t>(t),
                                                   method, plan.candidates);
                        } catch (...) {
                            errors[t] = std::current_exception();
                        }
                    }
                });
            for (auto& th : pool)
                th.join();
            for (const auto& err : errors)
                if (err)
                    std::rethrow_exception(err);

            ExperimentRow row;
            row.N = N;
            row.variance = variance;
            int successes = 0;
            int xi_samples = 0;
            double xi_total = 0.0;
            for (const auto& o : outcomes) {
                row.eps_x += o.eps_x;
                row.eps_dx += o.eps_dx;
                row.e_gamma += o.e_gamma;
                row.residual_opt += o.residual_opt;
                row.residual_rref += o.residual_rref;
                successes += o.success ? 1 : 0;
                if (o.xi_error) {
                    xi_total += *o.xi_error;
                    ++xi_samples;
                }
            }
            const double inv = 1.0 / static_cast<double>(trials);
            row.eps_x *= inv;
            row.eps_dx *= inv;
            row.e_gamma *= inv;
            row.residual_opt *= inv;
            row.residual_rref *= inv;
            row.accuracy = static_cast<double>(successes) * inv;
            if (xi_samples > 0)
                row.xi_error = xi_total / static_cast<double>(xi_samples);
            report.rows.push_back(row);

            for (const auto& candidate : outcomes.front().discovery.candidates) {
                if (!candidate.analysis)
                    continue;
                const auto& sv = candidate.analysis->singular_values;
                for (Eigen::Index i = 0; i < sv.size(); ++i)
                    report.singular_values.push_back(SingularValueRecord{
                        N, variance, candidate.spec, static_cast<int>(i), sv[i],
                        candidate.cutoff});
            }
        }
    }
    return report;
}

ReportFormat parseReportFormat(const std::string& text) {
    if (text == "json")
        return ReportFormat::Json;
    if (text == "csv")
        return ReportFormat::Csv;
    if (text == "markdown" || text == "md")
        return ReportFormat::Markdown;
    throw ConfigError("unknown report format '" + text + "' (json|csv|markdown)");
}

std::string renderReport(const ExperimentReport& report, ReportFormat format) {
    if (format == ReportFormat::Json)
        return toJson(report).dump(2) + "\n";

    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << "system,N,variance,eps_x,eps_dx,e_gamma,residual_opt,residual_rref,"
               "xi_error,accuracy\n";
        for (const auto& r : report.rows) {
            out << report.system << ',' << r.N << ',' << formatDouble(r.variance, "%.17g")
                << ',' << formatDouble(r.eps_x, "%.17g") << ','
                << formatDouble(r.eps_dx, "%.17g") << ','
                << formatDouble(r.e_gamma, "%.17g") << ','
                << formatDouble(r.residual_opt, "%.17g") << ','
                << formatDouble(r.residual_rref, "%.17g") << ','
                << (r.xi_error ? formatDouble(*r.xi_error, "%.17g") : std::string()) << ','
                << formatDouble(r.accuracy, "%.17g") << '\n';
        }
        return out.str();
    }

    out << "## " << report.system << "\n\n"
        << "| N | variance | eps_x | eps_dx | E_Gamma | residual (opt) | "
           "residual (rref) | xi error | accuracy |\n"
        << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : report.rows) {
        out << "| " << r.N << " | " << formatDouble(r.variance) << " | "
            << formatDouble(r.eps_x) << " | " << formatDouble(r.eps_dx) << " | "
            << formatDouble(r.e_gamma) << " | " << formatDouble(r.residual_opt) << " | "
            << formatDouble(r.residual_rref) << " | "
            << (r.xi_error ? formatDouble(*r.xi_error) : std::string("-")) << " | "
            << formatDouble(r.accuracy, "%.2f") << " |\n";
    }
    return out.str();
}

std::string renderSingularValues(const ExperimentReport& report) {
    std::ostringstream out;
    out << "system,N,variance,library,index,sigma,cutoff\n";
    for (const auto& rec : report.singular_values)
        out << report.system << ',' << rec.N << ',' << formatDouble(rec.variance, "%.17g")
            << ',' << '"' << rec.spec.str() << '"' << ',' << rec.index << ','
            << formatDouble(rec.sigma, "%.17g") << ','
            << formatDouble(rec.cutoff, "%.17g") << '\n';
    return out.str();
}

} // namespace conslaw
