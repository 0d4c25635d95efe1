#include "meshecon/scenario_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "meshecon/version.hpp"

namespace meshecon {

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, const char* where,
                           std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* name : allowed)
            if (it.key() == name) {
                known = true;
                break;
            }
        if (!known)
            throw ValidationError("unknown field '" + it.key() + "' in " +
                                  where);
    }
}

double get_number(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ValidationError(std::string("missing field '") + key + "' in " +
                              where);
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ValidationError(std::string("field '") + key + "' in " + where +
                              " must be a number");
    return v.get<double>();
}

double get_number_or(const json& obj, const char* where, const char* key,
                     double fallback) {
    if (!obj.contains(key)) return fallback;
    return get_number(obj, where, key);
}

long long get_integer(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ValidationError(std::string("missing field '") + key + "' in " +
                              where);
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw ValidationError(std::string("field '") + key + "' in " + where +
                              " must be an integer");
    return v.get<long long>();
}

Matrix get_matrix(const json& obj, const char* where, const char* key,
                  std::size_t rows, std::size_t cols) {
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != rows)
        throw ValidationError(std::string("field '") + key + "' in " + where +
                              " must be an array of " + std::to_string(rows) +
                              " rows");
    Matrix m;
    m.reserve(rows);
    for (const json& row : v) {
        if (!row.is_array() || row.size() != cols)
            throw ValidationError(std::string("field '") + key + "' in " +
                                  where + " must have rows of length " +
                                  std::to_string(cols));
        std::vector<double> r;
        r.reserve(cols);
        for (const json& x : row) {
            if (!x.is_number())
                throw ValidationError(std::string("field '") + key + "' in " +
                                      where + " must contain numbers");
            r.push_back(x.get<double>());
        }
        m.push_back(std::move(r));
    }
    return m;
}

Scenario parse_scenario_block(const json& sc) {
    reject_unknown_fields(sc, "scenario",
                          {"n_domains", "m_consumers", "symmetric", "domains",
                           "beta", "lambda_matrix", "omega", "switching_cost",
                           "tau", "p_matrix"});
    const long long n_ll = get_integer(sc, "scenario", "n_domains");
    if (n_ll < 2)
        throw ValidationError("n_domains must be >= 2 in scenario files");
    const auto n = static_cast<std::size_t>(n_ll);
    long long m_ll = 0;
    if (sc.contains("m_consumers")) m_ll = get_integer(sc, "scenario", "m_consumers");
    if (m_ll < 0) throw ValidationError("m_consumers must be >= 0");
    const auto m = static_cast<std::size_t>(m_ll);

    const bool has_symmetric = sc.contains("symmetric");
    const bool has_explicit =
        sc.contains("domains") || sc.contains("lambda_matrix") ||
        sc.contains("omega") || sc.contains("p_matrix");
    if (has_symmetric && has_explicit)
        throw ValidationError(
            "scenario mixes the symmetric shorthand with explicit matrices");

    try {
        if (has_symmetric) {
            const json& sym = sc.at("symmetric");
            if (!sym.is_object())
                throw ValidationError("field 'symmetric' must be an object");
            reject_unknown_fields(sym, "symmetric",
                                  {"alpha", "gamma_q", "gamma_g", "kappa",
                                   "beta", "lambda", "omega", "switching_cost",
                                   "tau", "p"});
            DomainParams d{get_number(sym, "symmetric", "alpha"),
                           get_number(sym, "symmetric", "gamma_q"),
                           get_number(sym, "symmetric", "gamma_g"),
                           get_number(sym, "symmetric", "kappa")};
            return Scenario::symmetric(
                n, m, d, get_number(sym, "symmetric", "beta"),
                get_number(sym, "symmetric", "lambda"),
                get_number_or(sym, "symmetric", "omega", 0.0),
                get_number_or(sym, "symmetric", "switching_cost", 0.0),
                get_number_or(sym, "symmetric", "tau", 1.0),
                get_number_or(sym, "symmetric", "p", 0.5));
        }

        if (!sc.contains("domains"))
            throw ValidationError(
                "scenario needs either a 'symmetric' block or explicit "
                "'domains'");
        const json& doms = sc.at("domains");
        if (!doms.is_array() || doms.size() != n)
            throw ValidationError("'domains' must list exactly n_domains entries");
        std::vector<DomainParams> domains;
        domains.reserve(n);
        for (const json& dj : doms) {
            if (!dj.is_object())
                throw ValidationError("'domains' entries must be objects");
            reject_unknown_fields(dj, "domains[]",
                                  {"alpha", "gamma_q", "gamma_g", "kappa"});
            domains.push_back({get_number(dj, "domains[]", "alpha"),
                               get_number(dj, "domains[]", "gamma_q"),
                               get_number(dj, "domains[]", "gamma_g"),
                               get_number(dj, "domains[]", "kappa")});
        }
        if (!sc.contains("lambda_matrix"))
            throw ValidationError("missing field 'lambda_matrix' in scenario");
        Matrix lambda = get_matrix(sc, "scenario", "lambda_matrix", n, n);
        Matrix omega;
        if (sc.contains("omega"))
            omega = get_matrix(sc, "scenario", "omega", m, n);
        else if (m > 0)
            throw ValidationError(
                "scenario declares consumers but provides no 'omega' matrix");
        Matrix p;
        if (sc.contains("p_matrix"))
            p = get_matrix(sc, "scenario", "p_matrix", n, n);
        else {
            p.assign(n, std::vector<double>(n, 0.5));
            for (std::size_t i = 0; i < n; ++i) p[i][i] = 0.0;
        }
        return Scenario(std::move(domains),
                        get_number(sc, "scenario", "beta"), std::move(lambda),
                        std::move(omega),
                        get_number_or(sc, "scenario", "switching_cost", 0.0),
                        get_number_or(sc, "scenario", "tau", 1.0),
                        std::move(p));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("invalid scenario: ") + e.what());
    }
}

}  // namespace

ScenarioFile parse_scenario_json(const std::string& text,
                                 const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!root.is_object())
        throw ValidationError(origin + ": top level must be an object");
    reject_unknown_fields(root, "top level",
                          {"schema_version", "scenario", "solver",
                           "dollar_config"});
    if (!root.contains("schema_version"))
        throw ValidationError(origin + ": missing field 'schema_version'");
    const long long version = get_integer(root, "top level", "schema_version");
    if (version != kScenarioSchemaVersion)
        throw ValidationError(origin + ": unsupported schema_version " +
                              std::to_string(version));
    if (!root.contains("scenario") || !root.at("scenario").is_object())
        throw ValidationError(origin + ": missing 'scenario' object");

    ScenarioFile file{static_cast<int>(version),
                      parse_scenario_block(root.at("scenario")),
                      SolverOptions{},
                      std::nullopt};

    if (root.contains("solver")) {
        const json& sv = root.at("solver");
        if (!sv.is_object())
            throw ValidationError(origin + ": 'solver' must be an object");
        reject_unknown_fields(sv, "solver", {"tol", "max_iter", "damping"});
        file.solver.tol = get_number_or(sv, "solver", "tol", file.solver.tol);
        if (sv.contains("max_iter"))
            file.solver.max_iter =
                static_cast<int>(get_integer(sv, "solver", "max_iter"));
        file.solver.damping =
            get_number_or(sv, "solver", "damping", file.solver.damping);
        if (!(file.solver.tol > 0.0) || file.solver.max_iter < 1 ||
            !(file.solver.damping > 0.0 && file.solver.damping <= 1.0))
            throw ValidationError(origin + ": solver overrides out of range");
    }
    if (root.contains("dollar_config")) {
        const json& dc = root.at("dollar_config");
        if (!dc.is_object())
            throw ValidationError(origin + ": 'dollar_config' must be an object");
        reject_unknown_fields(dc, "dollar_config",
                              {"duplicated_engineering", "integration_overhead",
                               "quality_issues"});
        DollarConfig cfg;
        cfg.duplicated_engineering =
            get_number_or(dc, "dollar_config", "duplicated_engineering",
                          cfg.duplicated_engineering);
        cfg.integration_overhead = get_number_or(
            dc, "dollar_config", "integration_overhead", cfg.integration_overhead);
        cfg.quality_issues =
            get_number_or(dc, "dollar_config", "quality_issues", cfg.quality_issues);
        file.dollar_config = cfg;
    }
    return file;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path.string());
    return parse_scenario_json(buffer.str(), path.string());
}

std::string serialize_scenario(const ScenarioFile& file) {
    json root;
    root["schema_version"] = file.schema_version;
    json sc;
    const Scenario& s = file.scenario;
    sc["n_domains"] = s.n_domains();
    sc["m_consumers"] = s.m_consumers();
    json domains = json::array();
    for (const DomainParams& d : s.domains())
        domains.push_back({{"alpha", d.alpha},
                           {"gamma_q", d.gamma_q},
                           {"gamma_g", d.gamma_g},
                           {"kappa", d.kappa}});
    sc["domains"] = std::move(domains);
    sc["beta"] = s.beta();
    sc["lambda_matrix"] = s.lambda_matrix();
    sc["omega"] = s.omega_matrix();
    sc["switching_cost"] = s.switching_cost();
    sc["tau"] = s.tau();
    sc["p_matrix"] = s.p_matrix();
    root["scenario"] = std::move(sc);
    root["solver"] = {{"tol", file.solver.tol},
                      {"max_iter", file.solver.max_iter},
                      {"damping", file.solver.damping}};
    if (file.dollar_config) {
        root["dollar_config"] = {
            {"duplicated_engineering", file.dollar_config->duplicated_engineering},
            {"integration_overhead", file.dollar_config->integration_overhead},
            {"quality_issues", file.dollar_config->quality_issues}};
    }
    return root.dump(2) + "\n";
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace meshecon
