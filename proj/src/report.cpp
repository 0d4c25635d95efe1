#include "meshecon/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "meshecon/scenario_io.hpp"
#include "meshecon/version.hpp"

namespace meshecon {

namespace {

using nlohmann::json;

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

json index_set_json(const std::set<std::size_t>& s) {
    json arr = json::array();
    for (std::size_t i : s) arr.push_back(i);
    return arr;
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

ReportMetadata make_metadata(const std::string& input_bytes) {
    ReportMetadata m;
    m.tool_version = kToolVersion;
    m.input_digest = content_digest(input_bytes);
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    m.generated_at = buf;
    return m;
}

json to_json(const ReportMetadata& m) {
    return {{"tool_version", m.tool_version},
            {"input_digest", m.input_digest},
            {"generated_at", m.generated_at}};
}

json to_json(const Profile& p) { return {{"q", p.q}, {"g", p.g}}; }

json to_json(const EquilibriumResult& r) {
    return {{"profile", to_json(r.profile)},
            {"iterations", r.iterations},
            {"residual", r.residual},
            {"corner_domains", index_set_json(r.corner_domains)},
            {"converged", r.converged}};
}

json to_json(const TrapDiagnosis& t) {
    json per = json::array();
    for (const DomainTrap& d : t.per_domain)
        per.push_back({{"private_synergy", d.private_synergy},
                       {"effective_fixed_cost",
                        std::isfinite(d.effective_fixed_cost)
                            ? json(d.effective_fixed_cost)
                            : json("inf")},
                       {"trapped", d.trapped}});
    return {{"per_domain", std::move(per)},
            {"organization_trapped", t.organization_trapped}};
}

json to_json(const GapReport& g) {
    return {{"closed_form", g.closed_form},
            {"realized", g.realized},
            {"nash", to_json(g.nash)},
            {"social", to_json(g.social)}};
}

json to_json(const WelfareLossReport& w) {
    return {{"closed_form", w.closed_form},
            {"direct", w.direct},
            {"discrepancy", w.discrepancy},
            {"per_domain_terms", w.per_domain_terms}};
}

json to_json(const DebtReport& d) {
    json out = {{"pairwise", d.pairwise}, {"total", d.total}};
    if (d.symmetric_closed_form)
        out["symmetric_closed_form"] = *d.symmetric_closed_form;
    return out;
}

json to_json(const DebtScalingCurve& c) {
    json rows = json::array();
    for (const DebtScalingRow& r : c.rows)
        rows.push_back({{"n_domains", r.n_domains}, {"td_total", r.td_total}});
    json out = {{"rows", std::move(rows)}};
    if (std::isfinite(c.fitted_exponent))
        out["fitted_exponent"] = c.fitted_exponent;
    else
        out["fitted_exponent"] = nullptr;
    return out;
}

json to_json(const RegimeReport& r) {
    json out = {{"regime", regime_name(r.regime)},
                {"profile", to_json(r.profile)},
                {"q_mean", mean(r.profile.q)},
                {"g_mean", mean(r.profile.g)},
                {"welfare", r.welfare},
                {"rank", r.rank},
                {"welfare_tied", r.welfare_tied},
                {"coordination_cost", r.coordination_cost},
                {"friction", r.friction}};
    if (r.subsidy_schedule) out["subsidy_schedule"] = *r.subsidy_schedule;
    if (r.g_standard) out["g_standard"] = *r.g_standard;
    if (r.central_cost) out["central_cost"] = *r.central_cost;
    return out;
}

json to_json(const BaselineReport& r) {
    return {{"nash", to_json(r.nash)},
            {"social", to_json(r.social)},
            {"trap", to_json(r.trap)},
            {"g_so_unclamped", r.g_so_unclamped},
            {"g_so_clamped", r.g_so_clamped},
            {"g_so_reference", r.g_so_reference},
            {"note", r.note}};
}

json to_json(const DollarReport& r) {
    json out = {{"n_domains", r.n_domains},
                {"per_domain", r.per_domain},
                {"total", r.total},
                {"label", r.label}};
    if (!r.note.empty()) {
        out["note"] = r.note;
        out["reference_total_20_plus"] = r.reference_total_20_plus;
        out["alternative_per_domain"] = r.alternative_per_domain;
    }
    return out;
}

json to_json(const ThresholdResult& r) {
    return {{"param", sweep_param_name(r.param)},
            {"value", r.value},
            {"fixed_q_estimate", r.fixed_q_estimate},
            {"deviation", r.deviation}};
}

json sweep_rows_json(const std::vector<SweepRow>& rows, SweepParam param) {
    json arr = json::array();
    for (const SweepRow& r : rows)
        arr.push_back({{"param", sweep_param_name(param)},
                       {"param_value", r.param_value},
                       {"g_nash", r.g_nash},
                       {"g_social", r.g_social},
                       {"gap", r.gap},
                       {"trapped", r.trapped},
                       {"welfare_loss", r.welfare_loss_direct}});
    return arr;
}

std::string sweep_rows_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "param_value,g_nash,g_social,gap,trapped,welfare_loss\n";
    for (const SweepRow& r : rows)
        out << format_double(r.param_value) << ',' << format_double(r.g_nash)
            << ',' << format_double(r.g_social) << ',' << format_double(r.gap)
            << ',' << (r.trapped ? "true" : "false") << ','
            << format_double(r.welfare_loss_direct) << '\n';
    return out.str();
}

std::string regimes_csv(const std::vector<RegimeReport>& reports) {
    std::ostringstream out;
    out << "regime,rank,welfare,q_mean,g_mean,g_standard,coordination_cost,"
           "friction,welfare_tied\n";
    for (const RegimeReport& r : reports) {
        out << regime_name(r.regime) << ',' << r.rank << ','
            << format_double(r.welfare) << ',' << format_double(mean(r.profile.q))
            << ',' << format_double(mean(r.profile.g)) << ','
            << (r.g_standard ? format_double(*r.g_standard) : "") << ',' << '"'
            << r.coordination_cost << '"' << ',' << '"' << r.friction << '"'
            << ',' << (r.welfare_tied ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string debt_scaling_csv(const DebtScalingCurve& curve) {
    std::ostringstream out;
    out << "n_domains,td_total,fitted_exponent\n";
    for (const DebtScalingRow& r : curve.rows)
        out << r.n_domains << ',' << format_double(r.td_total) << ','
            << format_double(curve.fitted_exponent) << '\n';
    return out.str();
}

}  // namespace meshecon
