#include "conslaw/benchmarks.hpp"

#include <cmath>

#include "conslaw/errors.hpp"

namespace conslaw {

SystemName parseSystemName(const std::string& text) {
    if (text == "volpert") return SystemName::Volpert;
    if (text == "two_laws") return SystemName::TwoLaws;
    if (text == "oxidation") return SystemName::Oxidation;
    if (text == "no_laws") return SystemName::NoLaws;
    if (text == "mapk") return SystemName::Mapk;
    std::string names;
    for (const auto& n : allSystemNames())
        names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("unknown system '" + text + "', valid names: " + names);
}

std::string systemNameString(SystemName name) {
    switch (name) {
        case SystemName::Volpert: return "volpert";
        case SystemName::TwoLaws: return "two_laws";
        case SystemName::Oxidation: return "oxidation";
        case SystemName::NoLaws: return "no_laws";
        case SystemName::Mapk: return "mapk";
    }
    return "?";
}

std::vector<std::string> allSystemNames() {
    return {"volpert", "two_laws", "oxidation", "no_laws", "mapk"};
}

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values)
        v[i++] = x;
    return v;
}

ExactLaw linearLaw(int n, std::initializer_list<double> coeffs) {
    ExactLaw law;
    law.terms = expand(LibrarySpec{1, false, false}, n);
    law.coeffs = vec(coeffs);
    return law;
}

BenchmarkSystem makeVolpert() {
    BenchmarkSystem s;
    s.name = "volpert";
    s.dimension = 3;
    s.parameters = {{"k1", 1.0}, {"k2", 1.0}, {"k3", 1.0}};
    s.initial_state = vec({1.0, 2.0, 0.5});
    const double k1 = 1.0, k2 = 1.0, k3 = 1.0;
    s.rhs = [=](const Eigen::VectorXd& x) {
        return vec({k3 * x[0] * x[2] - k1 * x[0] * x[1],
                    k1 * x[0] * x[1] - k2 * x[1] * x[2],
                    k2 * x[1] * x[2] - k3 * x[0] * x[2]});
    };
    s.exact_laws = {linearLaw(3, {1.0, 1.0, 1.0})};
    return s;
}

BenchmarkSystem makeTwoLaws() {
    BenchmarkSystem s;
    s.name = "two_laws";
    s.dimension = 4;
    s.parameters = {{"k1", 1.0}, {"k2", 1.0}, {"k3", 1.0}};
    s.initial_state = vec({1.0, 2.0, 0.5, 0.3});
    const double k1 = 1.0, k2 = 1.0, k3 = 1.0;
    s.rhs = [=](const Eigen::VectorXd& x) {
        return vec({-k1 * x[0] * x[1] + k2 * x[2] + k3 * x[2],
                    -k1 * x[0] * x[1] + k2 * x[2],
                    k1 * x[0] * x[1] - k2 * x[2] - k3 * x[2],
                    k3 * x[2]});
    };
    s.exact_laws = {linearLaw(4, {1.0, 0.0, 1.0, 0.0}), linearLaw(4, {0.0, 1.0, 1.0, 1.0})};
    return s;
}

BenchmarkSystem makeOxidation() {
    BenchmarkSystem s;
    s.name = "oxidation";
    s.dimension = 3;
    s.parameters = {{"k1", 2.0}, {"k2", 0.4}, {"k3", 1.0}};
    s.initial_state = vec({0.75, 0.5, 2.0});
    const double k1 = 2.0, k2 = 0.4, k3 = 1.0;
    s.rhs = [=](const Eigen::VectorXd& x) {
        return vec({-k1 * x[0] + k2 * x[1] * x[2],
                    k1 * x[0] - k2 * x[1] * x[2] - k3 * x[1],
                    -k2 * x[1] * x[2]});
    };
    // x + y - (k3/k2) ln(S) = C over the (1,0,1) term list
    ExactLaw law;
    law.terms = expand(LibrarySpec{1, false, true}, 3);
    law.coeffs = vec({1.0, 1.0, 0.0, 0.0, 0.0, -k3 / k2});
    s.exact_laws = {law};
    return s;
}

BenchmarkSystem makeNoLaws() {
    BenchmarkSystem s;
    s.name = "no_laws";
    s.dimension = 2;
    s.parameters = {{"k1", 1.0}, {"k2", 2.0}, {"k3", 2.0}};
    s.initial_state = vec({1.0, 2.0});
    const double k1 = 1.0, k2 = 2.0, k3 = 2.0;
    s.rhs = [=](const Eigen::VectorXd& x) {
        return vec({-k1 * x[0] + k2 * x[0] * x[1] - k3 * x[0] * x[0],
                    -k2 * x[0] * x[1] + k3 * x[0] * x[0]});
    };
    return s;
}

// MAPK cascade with Michaelis-Menten kinetics and negative feedback:
// states [Raf, pRaf, ppRaf, MEK, pMEK, ppMEK, ERK, pERK, ppERK].
// Each phosphorylation tier cancels in a block, so the three block sums are
// conserved regardless of the rate-law denominators.
BenchmarkSystem makeMapk() {
    BenchmarkSystem s;
    s.name = "mapk";
    s.dimension = 9;
    s.default_t_end = 1000.0;
    s.parameters = {
        {"V3", 2.5},   {"V4", 3.75},  {"V7", 3.0},   {"V8", 3.75},  {"V11", 3.75},
        {"V12", 5.0},  {"Km1", 100.0}, {"Km2", 200.0}, {"Km3", 50.0}, {"Km4", 100.0},
        {"Km5", 250.0}, {"Km6", 250.0}, {"Km7", 80.0},  {"Km8", 250.0}, {"Km9", 250.0},
        {"Km10", 120.0}, {"Km11", 20.0}, {"Km12", 300.0}, {"k1", 1.0},  {"k2", 0.25},
        {"k5", 2.5},   {"k6", 0.5},   {"k9", 0.125}, {"k10", 0.125}, {"I", 10.0},
        {"F", 0.17},   {"Kf", 15.0}};
    s.initial_state = vec({298.0, 1.0, 1.0, 298.0, 1.0, 1.0, 298.0, 1.0, 1.0});
    const auto prm = s.parameters;
    s.rhs = [prm](const Eigen::VectorXd& x) {
        const double raf = x[0], praf = x[1], ppraf = x[2];
        const double mek = x[3], pmek = x[4], ppmek = x[5];
        const double erk = x[6], perk = x[7], pperk = x[8];
        const double I = prm.at("I"), F = prm.at("F"), Kf = prm.at("Kf");

        const double feedback = (1.0 + F * pperk / Kf) / (1.0 + pperk / Kf);
        const double den1 = 1.0 + raf / prm.at("Km1") + praf / prm.at("Km2");
        const double r1 = prm.at("k1") * I * (raf / prm.at("Km1")) / den1 * feedback;
        const double r2 = prm.at("k2") * I * (praf / prm.at("Km2")) / den1 * feedback;
        const double den2 = 1.0 + ppraf / prm.at("Km3") + praf / prm.at("Km4");
        const double r3 = prm.at("V3") * (ppraf / prm.at("Km3")) / den2;
        const double r4 = prm.at("V4") * (praf / prm.at("Km4")) / den2;

        const double den3 = 1.0 + mek / prm.at("Km5") + pmek / prm.at("Km6");
        const double r5 = prm.at("k5") * ppraf * (mek / prm.at("Km5")) / den3;
        const double r6 = prm.at("k6") * ppraf * (pmek / prm.at("Km6")) / den3;
        const double den4 = 1.0 + ppmek / prm.at("Km7") + pmek / prm.at("Km8");
        const double r7 = prm.at("V7") * (ppmek / prm.at("Km7")) / den4;
        const double r8 = prm.at("V8") * (pmek / prm.at("Km8")) / den4;

        const double den5 = 1.0 + erk / prm.at("Km9") + perk / prm.at("Km10");
        const double r9 = prm.at("k9") * ppmek * (erk / prm.at("Km9")) / den5;
        const double r10 = prm.at("k10") * ppmek * (perk / prm.at("Km10")) / den5;
        const double den6 = 1.0 + pperk / prm.at("Km11") + perk / prm.at("Km12");
        const double r11 = prm.at("V11") * (pperk / prm.at("Km11")) / den6;
        const double r12 = prm.at("V12") * (perk / prm.at("Km12")) / den6;

        Eigen::VectorXd dx(9);
        dx[0] = r4 - r1;
        dx[1] = r1 + r3 - r2 - r4;
        dx[2] = r2 - r3;
        dx[3] = r8 - r5;
        dx[4] = r5 - r6 + r7 - r8;
        dx[5] = r6 - r7;
        dx[6] = r12 - r9;
        dx[7] = r9 - r10 + r11 - r12;
        dx[8] = r10 - r11;
        return dx;
    };
    s.exact_laws = {linearLaw(9, {1, 1, 1, 0, 0, 0, 0, 0, 0}),
                    linearLaw(9, {0, 0, 0, 1, 1, 1, 0, 0, 0}),
                    linearLaw(9, {0, 0, 0, 0, 0, 0, 1, 1, 1})};
    return s;
}

} // namespace

BenchmarkSystem makeSystem(SystemName name) {
    switch (name) {
        case SystemName::Volpert: return makeVolpert();
        case SystemName::TwoLaws: return makeTwoLaws();
        case SystemName::Oxidation: return makeOxidation();
        case SystemName::NoLaws: return makeNoLaws();
        case SystemName::Mapk: return makeMapk();
    }
    throw ConfigError("unknown system enum value");
}

TimeSeries simulate(const BenchmarkSystem& system, double t_end, int N, int substeps) {
    if (N < 2)
        throw ValidationError("N must be >= 2");
    if (t_end <= 0.0)
        throw ValidationError("t_end must be positive");
    const double dt = t_end / N;
    const double h = dt / substeps;

    TimeSeries series;
    series.times.resize(N);
    series.states.resize(N, system.dimension);
    Eigen::MatrixXd derivs(N, system.dimension);
    series.labels.resize(system.dimension);
    for (int j = 0; j < system.dimension; ++j)
        series.labels[j] = "x" + std::to_string(j + 1);

    Eigen::VectorXd x = system.initial_state;
    for (int i = 0; i < N; ++i) {
        const double t = i * dt;
        if (!x.allFinite())
            throw NumericalError("state became non-finite at t=" + std::to_string(t));
        series.times[i] = t;
        series.states.row(i) = x.transpose();
        derivs.row(i) = system.rhs(x).transpose();
        if (i + 1 < N) {
            for (int s = 0; s < substeps; ++s) {
                const Eigen::VectorXd k1 = system.rhs(x);
                const Eigen::VectorXd k2 = system.rhs(x + 0.5 * h * k1);
                const Eigen::VectorXd k3 = system.rhs(x + 0.5 * h * k2);
                const Eigen::VectorXd k4 = system.rhs(x + h * k3);
                x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
    }
    series.derivatives = std::move(derivs);
    return series;
}

std::vector<double> lawResidual(const BenchmarkSystem& system, const TimeSeries& series) {
    if (system.exact_laws.empty())
        throw ValidationError("system '" + system.name + "' has no exact laws");
    std::vector<double> residuals;
    residuals.reserve(system.exact_laws.size());
    for (const auto& law : system.exact_laws) {
        const Eigen::VectorXd values = evalTheta(law.terms, series.states) * law.coeffs;
        residuals.push_back((values.array() - values[0]).abs().maxCoeff());
    }
    return residuals;
}

} // namespace conslaw
