#include "conslaw/json.hpp"

namespace conslaw {

namespace {

nlohmann::json vectorToJson(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back(v[i]);
    return arr;
}

nlohmann::json matrixToJson(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

nlohmann::json toJson(const SvdAnalysis& analysis) {
    nlohmann::json j;
    j["singular_values"] = vectorToJson(analysis.singular_values);
    j["cutoff"] = analysis.cutoff;
    j["null_indices"] = analysis.null_indices;
    j["count"] = analysis.count;
    if (analysis.delta)
        j["delta"] = *analysis.delta;
    else
        j["delta"] = nullptr;
    j["residuals"] = analysis.residuals;
    return j;
}

nlohmann::json toJson(const BoundReport& report) {
    return nlohmann::json{{"weyl", report.weyl},
                          {"gamma_bound", report.gamma_bound},
                          {"tikhonov_bound", report.tikhonov_bound},
                          {"gap_ok", report.gap_ok},
                          {"sigma_r", report.sigma_r}};
}

nlohmann::json toJson(const CandidateReport& report) {
    nlohmann::json j;
    j["library"] = report.spec.str();
    j["p"] = report.p;
    j["cutoff"] = report.cutoff;
    j["eligible"] = report.eligible;
    if (!report.skip_reason.empty())
        j["skipped"] = report.skip_reason;
    if (report.delta)
        j["delta"] = *report.delta;
    if (report.analysis)
        j["analysis"] = toJson(*report.analysis);
    return j;
}

nlohmann::json toJson(const DiscoveryResult& result) {
    nlohmann::json j;
    j["found"] = result.found();
    if (result.found()) {
        j["optimal"] = result.optimal->str();
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : result.terms.terms)
            terms.push_back(t.str());
        j["terms"] = std::move(terms);
        j["raw_laws"] = matrixToJson(result.raw_laws);
        j["reduced_laws"] = matrixToJson(result.reduced_laws);
        nlohmann::json laws = nlohmann::json::array();
        for (Eigen::Index r = 0; r < result.reduced_laws.rows(); ++r)
            laws.push_back(formatLaw(result.terms, result.reduced_laws.row(r).transpose()));
        j["laws"] = std::move(laws);
        j["residual_raw"] = result.residual_raw;
        j["residual_reduced"] = result.residual_reduced;
    }
    nlohmann::json candidates = nlohmann::json::array();
    for (const auto& c : result.candidates)
        candidates.push_back(toJson(c));
    j["candidates"] = std::move(candidates);
    return j;
}

nlohmann::json toJson(const ExperimentReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json row{{"N", r.N},
                           {"variance", r.variance},
                           {"eps_x", r.eps_x},
                           {"eps_dx", r.eps_dx},
                           {"e_gamma", r.e_gamma},
                           {"residual_opt", r.residual_opt},
                           {"residual_rref", r.residual_rref},
                           {"accuracy", r.accuracy}};
        if (r.xi_error)
            row["xi_error"] = *r.xi_error;
        rows.push_back(std::move(row));
    }
    nlohmann::json sv = nlohmann::json::array();
    for (const auto& rec : report.singular_values)
        sv.push_back(nlohmann::json{{"N", rec.N},
                                    {"variance", rec.variance},
                                    {"library", rec.spec.str()},
                                    {"index", rec.index},
                                    {"sigma", rec.sigma},
                                    {"cutoff", rec.cutoff}});
    return nlohmann::json{
        {"system", report.system}, {"rows", std::move(rows)}, {"singular_values", std::move(sv)}};
}

} // namespace conslaw
