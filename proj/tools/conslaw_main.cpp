#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "conslaw/benchmarks.hpp"
#include "conslaw/differentiation.hpp"
#include "conslaw/errors.hpp"
#include "conslaw/harness.hpp"
#include "conslaw/json.hpp"
#include "conslaw/nullspace.hpp"
#include "conslaw/selection.hpp"
#include "conslaw/timeseries.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNoneFound = 3;
constexpr int kExitNumerical = 4;

struct SimulateArgs {
    std::string system;
    int n_points = 20;
    double t_end = 0.0; // <= 0: the system default
    double noise_var = 0.0;
    std::uint64_t seed = 0;
    std::string output;
    std::string derivatives_output; // optional CSV of the true derivatives
};

struct DifferentiateArgs {
    std::string data;
    std::string method = "tikhonov";
    double lambda = 0.0;
    int window = 11;
    int order = 5;
    std::string output;
};

struct DiscoverArgs {
    std::string data;
    std::string derivatives; // CSV path or method name
    std::string candidates = "all";
    std::string cutoff = "auto";
    double eps_x = -1.0;
    std::string output; // empty: stdout only
};

struct BenchArgs {
    std::string plan_path;
    std::string system;
    std::vector<int> n_points{20, 100};
    std::vector<double> variances{0.0, 1e-10, 1e-5};
    int trials = 100;
    std::uint64_t seed = 0;
    std::string method; // empty: per-system default
    std::string candidates = "all";
    double t_end = 0.0;
    std::string format = "md";
    std::string output;
    std::string singvals = "singvals.csv";
};

struct BoundsArgs {
    std::string data;
    std::string noisy_data;
    std::string derivatives = "central_fd";
    std::string library = "(1,0,0)";
    double eps_x = 0.0;
    double eps_dx = 0.0;
    double h = 0.0;
    double k1 = 1.0;
    double k2 = 1.0;
    double c_gap = 1.0;
    std::string output;
};

conslaw::DiffMethod makeMethod(const std::string& name, double lambda, int window, int order) {
    conslaw::DiffMethod method;
    method.kind = conslaw::parseDiffKind(name);
    method.tikhonov_lambda = lambda;
    method.sg_window = window;
    method.sg_order = order;
    return method;
}

void writeText(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw conslaw::IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw conslaw::IoError("write failure on '" + path + "'");
}

int runSimulate(const SimulateArgs& args) {
    const auto system = conslaw::makeSystem(conslaw::parseSystemName(args.system));
    const double t_end = args.t_end > 0.0 ? args.t_end : system.default_t_end;
    conslaw::TimeSeries series = conslaw::simulate(system, t_end, args.n_points);
    if (!args.derivatives_output.empty()) {
        conslaw::TimeSeries derivs;
        derivs.times = series.times;
        derivs.states = *series.derivatives;
        for (const auto& label : series.labels)
            derivs.labels.push_back("d" + label);
        conslaw::saveCsv(derivs, args.derivatives_output);
    }
    if (args.noise_var > 0.0)
        series = conslaw::addNoise(series, conslaw::NoiseSpec{args.noise_var, args.seed}).first;
    conslaw::saveCsv(series, args.output);
    return 0;
}

int runDifferentiate(const DifferentiateArgs& args) {
    const conslaw::TimeSeries series = conslaw::loadCsv(args.data);
    const auto method = makeMethod(args.method, args.lambda, args.window, args.order);
    const conslaw::TimeSeries with = conslaw::differentiate(series, method);
    conslaw::TimeSeries out;
    out.times = with.times;
    out.states = *with.derivatives;
    for (const auto& label : with.labels)
        out.labels.push_back("d" + label);
    conslaw::saveCsv(out, args.output);
    return 0;
}

int runDiscover(const DiscoverArgs& args) {
    const conslaw::TimeSeries series = conslaw::loadCsv(args.data);

    Eigen::MatrixXd dX;
    if (args.derivatives.size() > 4 &&
        args.derivatives.substr(args.derivatives.size() - 4) == ".csv") {
        const conslaw::TimeSeries derivs = conslaw::loadCsv(args.derivatives);
        if (derivs.rows() != series.rows() || derivs.cols() != series.cols())
            throw conslaw::ValidationError("derivative CSV shape does not match the data");
        dX = derivs.states;
    } else {
        const auto method = makeMethod(args.derivatives, 0.0, 11, 5);
        dX = *conslaw::differentiate(series, method).derivatives;
    }

    conslaw::CutoffPolicy policy;
    if (args.cutoff == "auto") {
        if (args.eps_x < 0.0)
            throw conslaw::ConfigError("--cutoff auto requires --eps-x");
        policy = conslaw::CutoffPolicy::noiseBased(args.eps_x);
    } else {
        policy = conslaw::CutoffPolicy::fixed(std::stod(args.cutoff));
    }

    const auto candidates = conslaw::parseCandidates(args.candidates);
    const auto result = conslaw::discover(series.states, dX, candidates, policy);

    for (const auto& c : result.candidates)
        if (!c.skip_reason.empty())
            std::cerr << "warning: skipped " << c.spec.str() << ": " << c.skip_reason << "\n";

    const std::string json = conslaw::toJson(result).dump(2) + "\n";
    if (!args.output.empty())
        writeText(args.output, json);

    if (!result.found()) {
        std::cout << "no conservation law found\n";
        if (args.output.empty())
            std::cout << json;
        return kExitNoneFound;
    }
    std::cout << "optimal library " << result.optimal->str() << "\n";
    for (Eigen::Index r = 0; r < result.reduced_laws.rows(); ++r)
        std::cout << conslaw::formatLaw(result.terms, result.reduced_laws.row(r).transpose(),
                                        "C" + std::to_string(r + 1))
                  << "\n";
    if (args.output.empty())
        std::cout << json;
    return 0;
}

conslaw::ExperimentPlan planFromJson(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw conslaw::IoError("cannot open plan '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw conslaw::FormatError("plan '" + path + "': " + e.what());
    }
    conslaw::ExperimentPlan plan;
    plan.system = conslaw::parseSystemName(j.at("system").get<std::string>());
    if (j.contains("n_values"))
        plan.n_values = j["n_values"].get<std::vector<int>>();
    if (j.contains("variances"))
        plan.variances = j["variances"].get<std::vector<double>>();
    if (j.contains("trials"))
        plan.trials = j["trials"].get<int>();
    if (j.contains("seed"))
        plan.base_seed = j["seed"].get<std::uint64_t>();
    if (j.contains("method"))
        plan.diff_method = makeMethod(j["method"].get<std::string>(), 0.0, 11, 5);
    if (j.contains("candidates"))
        plan.candidates = conslaw::parseCandidates(j["candidates"].get<std::string>());
    if (j.contains("t_end"))
        plan.t_end = j["t_end"].get<double>();
    return plan;
}

int runBench(const BenchArgs& args) {
    conslaw::ExperimentPlan plan;
    if (!args.plan_path.empty()) {
        plan = planFromJson(args.plan_path);
    } else {
        if (args.system.empty())
            throw conslaw::ConfigError("bench needs --system or --plan");
        plan.system = conslaw::parseSystemName(args.system);
        plan.n_values = args.n_points;
        plan.variances = args.variances;
        plan.trials = args.trials;
        plan.base_seed = args.seed;
        if (!args.method.empty())
            plan.diff_method = makeMethod(args.method, 0.0, 11, 5);
        plan.candidates = conslaw::parseCandidates(args.candidates);
        plan.t_end = args.t_end;
    }

    const auto format = conslaw::parseReportFormat(args.format);
    const auto report = conslaw::runPlan(plan);
    const std::string rendered = conslaw::renderReport(report, format);

    std::string output = args.output;
    if (output.empty()) {
        const char* ext = format == conslaw::ReportFormat::Json
                              ? "json"
                              : (format == conslaw::ReportFormat::Csv ? "csv" : "md");
        output = "report." + std::string(ext);
    }
    writeText(output, rendered);
    writeText(args.singvals, conslaw::renderSingularValues(report));
    std::cout << rendered;
    std::cout << "report written to " << output << ", singular values to " << args.singvals
              << "\n";
    return 0;
}

int runBounds(const BoundsArgs& args) {
    const conslaw::TimeSeries clean = conslaw::loadCsv(args.data);
    const conslaw::TimeSeries noisy = conslaw::loadCsv(args.noisy_data);
    if (clean.rows() != noisy.rows() || clean.cols() != noisy.cols())
        throw conslaw::ValidationError("data and noisy-data shapes differ");

    const auto method = makeMethod(args.derivatives, 0.0, 11, 5);
    const auto clean_d = conslaw::differentiate(clean, method);
    const auto noisy_d = conslaw::differentiate(noisy, method);

    const auto spec = conslaw::parseLibrarySpec(args.library);
    const auto terms = conslaw::expand(spec, static_cast<int>(clean.cols()));
    const Eigen::MatrixXd gamma_clean =
        conslaw::evalGamma(terms, clean_d.states, *clean_d.derivatives);
    const Eigen::MatrixXd gamma_noisy =
        conslaw::evalGamma(terms, noisy_d.states, *noisy_d.derivatives);

    const auto report = conslaw::bounds(gamma_clean, gamma_noisy, args.eps_x, args.eps_dx,
                                        args.h, args.k1, args.k2, args.c_gap);
    const std::string json = conslaw::toJson(report).dump(2) + "\n";
    if (!args.output.empty())
        writeText(args.output, json);
    std::cout << json;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conslaw: discover symbolic conservation laws from time-series data"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "integrate a benchmark system to CSV");
    simulate->add_option("--system", sim.system, "benchmark name")->required();
    simulate->add_option("--n-points", sim.n_points, "samples on the grid");
    simulate->add_option("--t-end", sim.t_end, "horizon (default: system-specific)");
    simulate->add_option("--noise-var", sim.noise_var, "additive Gaussian noise level");
    simulate->add_option("--seed", sim.seed, "noise seed");
    simulate->add_option("--output", sim.output, "output CSV")->required();
    simulate->add_option("--derivatives-output", sim.derivatives_output,
                         "also write the true derivatives (pre-noise) to this CSV");

    DifferentiateArgs diff;
    auto* differentiate =
        app.add_subcommand("differentiate", "estimate derivatives from a CSV");
    differentiate->add_option("--data", diff.data, "input CSV")->required();
    differentiate->add_option("--method", diff.method,
                              "central_fd | tikhonov | savitzky_golay");
    differentiate->add_option("--lambda", diff.lambda, "Tikhonov lambda (0: default)");
    differentiate->add_option("--window", diff.window, "Savitzky-Golay window");
    differentiate->add_option("--order", diff.order, "Savitzky-Golay order");
    differentiate->add_option("--output", diff.output, "derivative CSV")->required();

    DiscoverArgs disc;
    auto* discover = app.add_subcommand("discover", "find conservation laws in a CSV");
    discover->add_option("--data", disc.data, "state CSV")->required();
    discover->add_option("--derivatives", disc.derivatives,
                         "derivative CSV path (*.csv) or a method name")
        ->required();
    discover->add_option("--candidates", disc.candidates, "all | \"(a,b,c),(a,b,c),...\"");
    discover->add_option("--cutoff", disc.cutoff, "auto | numeric value");
    discover->add_option("--eps-x", disc.eps_x, "max-abs noise level for --cutoff auto");
    discover->add_option("--output", disc.output, "JSON result file (default stdout)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "run the Monte Carlo experiment grid");
    bench_cmd->add_option("--plan", bench.plan_path, "JSON plan file");
    bench_cmd->add_option("--system", bench.system, "benchmark name");
    bench_cmd->add_option("--n-points", bench.n_points, "grid sizes");
    bench_cmd->add_option("--variances", bench.variances, "noise levels");
    bench_cmd->add_option("--trials", bench.trials, "trials per noisy cell");
    bench_cmd->add_option("--seed", bench.seed, "base seed");
    bench_cmd->add_option("--method", bench.method, "derivative method override");
    bench_cmd->add_option("--candidates", bench.candidates, "candidate libraries");
    bench_cmd->add_option("--t-end", bench.t_end, "horizon override");
    bench_cmd->add_option("--format", bench.format, "json | csv | md");
    bench_cmd->add_option("--output", bench.output, "report file");
    bench_cmd->add_option("--singvals", bench.singvals, "singular-value CSV");

    BoundsArgs bnd;
    auto* bounds_cmd = app.add_subcommand("bounds", "perturbation-bound calculator");
    bounds_cmd->set_help_flag("--help", "print help"); // frees -h/--h for the grid spacing
    bounds_cmd->add_option("--data", bnd.data, "clean CSV")->required();
    bounds_cmd->add_option("--noisy-data", bnd.noisy_data, "perturbed CSV")->required();
    bounds_cmd->add_option("--derivatives", bnd.derivatives, "derivative method");
    bounds_cmd->add_option("--library", bnd.library, "library triple for Gamma");
    bounds_cmd->add_option("--eps-x", bnd.eps_x, "||eps_x||_inf");
    bounds_cmd->add_option("--eps-dx", bnd.eps_dx, "||eps_dx||_inf");
    bounds_cmd->add_option("--h", bnd.h, "grid spacing for the Tikhonov bound");
    bounds_cmd->add_option("--k1", bnd.k1, "Tikhonov bound constant k1");
    bounds_cmd->add_option("--k2", bnd.k2, "Tikhonov bound constant k2");
    bounds_cmd->add_option("--c-gap", bnd.c_gap, "gap-condition constant");
    bounds_cmd->add_option("--output", bnd.output, "JSON file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (simulate->parsed())
            return runSimulate(sim);
        if (differentiate->parsed())
            return runDifferentiate(diff);
        if (discover->parsed())
            return runDiscover(disc);
        if (bench_cmd->parsed())
            return runBench(bench);
        if (bounds_cmd->parsed())
            return runBounds(bnd);
    } catch (const conslaw::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const conslaw::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
