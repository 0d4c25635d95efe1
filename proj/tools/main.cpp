// Command-line front end: solve / sweep / regimes / debt / threshold over
// scenario definition files (or the built-in baseline, or a seeded random
// instance). Human-readable text goes to stdout; machine-readable output is
// written only with an explicit --out path and --format.
//
// Exit codes: 0 success, 2 file parse error, 3 validation error,
// 4 solver failure, 5 I/O error. Command-line usage errors use the parser's
// own small codes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "meshecon/calibration.hpp"
#include "meshecon/equilibrium.hpp"
#include "meshecon/governance.hpp"
#include "meshecon/random_scenarios.hpp"
#include "meshecon/report.hpp"
#include "meshecon/scenario_io.hpp"
#include "meshecon/version.hpp"
#include "meshecon/welfare_debt.hpp"

namespace {

using namespace meshecon;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitSolver = 4;
constexpr int kExitIo = 5;

struct InputSpec {
    std::string path;
    bool baseline = false;
    std::optional<std::uint64_t> random_seed;
    std::size_t random_domains = 6;
};

struct LoadedInput {
    ScenarioFile file;
    std::string bytes;   // exact input bytes (or canonical form), for digests
    std::string origin;
};

void add_input_options(CLI::App* cmd, InputSpec& in) {
    cmd->add_option("scenario", in.path, "scenario definition file (JSON)");
    cmd->add_flag("--baseline", in.baseline,
                  "use the built-in 12-domain reference scenario");
    cmd->add_option("--random-seed", in.random_seed,
                    "generate a seeded random scenario instead of reading a "
                    "file (seed is mandatory; there is no default entropy)");
    cmd->add_option("--random-domains", in.random_domains,
                    "max domain count for --random-seed scenarios")
        ->default_val(6);
}

LoadedInput resolve_input(const InputSpec& in) {
    const int sources = (!in.path.empty() ? 1 : 0) + (in.baseline ? 1 : 0) +
                        (in.random_seed ? 1 : 0);
    if (sources != 1)
        throw ValidationError(
            "exactly one of <scenario file>, --baseline, or --random-seed is "
            "required");
    LoadedInput loaded{ScenarioFile{1, baseline_scenario(), SolverOptions{}, {}},
                       "", ""};
    if (in.baseline) {
        loaded.origin = "<baseline>";
        loaded.bytes = serialize_scenario(loaded.file);
        return loaded;
    }
    if (in.random_seed) {
        loaded.file.scenario = random_scenario(*in.random_seed, in.random_domains);
        loaded.origin = "<random seed=" + std::to_string(*in.random_seed) + ">";
        loaded.bytes = serialize_scenario(loaded.file);
        return loaded;
    }
    std::ifstream f(in.path, std::ios::binary);
    if (!f) throw IoError("cannot open " + in.path);
    std::ostringstream buf;
    buf << f.rdbuf();
    loaded.bytes = buf.str();
    loaded.origin = in.path;
    loaded.file = parse_scenario_json(loaded.bytes, in.path);
    return loaded;
}

struct OutputSpec {
    std::string path;
    std::string format;  // "csv" or "json"
};

void add_output_options(CLI::App* cmd, OutputSpec& out) {
    cmd->add_option("--out", out.path, "write a machine-readable report here");
    cmd->add_option("--format", out.format, "report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

void write_output(const OutputSpec& out, const std::string& csv,
                  const json& j) {
    if (out.path.empty()) return;
    if (out.format.empty())
        throw ValidationError("--out requires an explicit --format csv|json");
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw IoError("cannot open " + out.path + " for writing");
    if (out.format == "csv")
        f << csv;
    else
        f << j.dump(2) << '\n';
    if (!f) throw IoError("failed writing " + out.path);
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

void apply_solver_overrides(CLI::App* cmd, SolverOptions& opts,
                            const std::optional<double>& tol,
                            const std::optional<int>& max_iter,
                            const std::optional<double>& damping) {
    (void)cmd;
    if (tol) opts.tol = *tol;
    if (max_iter) opts.max_iter = *max_iter;
    if (damping) opts.damping = *damping;
    if (!(opts.tol > 0.0) || opts.max_iter < 1 ||
        !(opts.damping > 0.0 && opts.damping <= 1.0))
        throw ValidationError("solver overrides out of range");
}

// ---- solve ---------------------------------------------------------------

int run_solve(const InputSpec& in, const OutputSpec& out,
              std::optional<double> tol, std::optional<int> max_iter,
              std::optional<double> damping, std::optional<double> oracle_res) {
    LoadedInput loaded = resolve_input(in);
    const Scenario& s = loaded.file.scenario;
    SolverOptions opts = loaded.file.solver;
    apply_solver_overrides(nullptr, opts, tol, max_iter, damping);

    const EquilibriumResult nash = nash_equilibrium(s, opts);
    const EquilibriumResult social =
        social_optimum(s, PlannerMode::first_order, opts);
    const EquilibriumResult social_full =
        social_optimum(s, PlannerMode::full_objective, opts);
    const GapReport gap = [&] {
        GapReport g;
        g.nash = nash;
        g.social = social;
        g.closed_form.resize(s.n_domains());
        g.realized.resize(s.n_domains());
        for (std::size_t i = 0; i < s.n_domains(); ++i) {
            g.closed_form[i] = s.lambda_column_sum(i) / s.domain(i).gamma_g;
            g.realized[i] = social.profile.g[i] - nash.profile.g[i];
        }
        return g;
    }();
    const TrapDiagnosis trap = trap_check(s, nash);

    std::vector<double> unclamped(s.n_domains());
    for (std::size_t i = 0; i < s.n_domains(); ++i) {
        const DomainParams& d = s.domain(i);
        const double q = nash.profile.q[i];
        unclamped[i] = q > 0.0 ? (d.alpha * s.beta() + s.lambda_column_sum(i) +
                                  s.omega_column_sum(i) - d.kappa / q) /
                                     d.gamma_g
                               : 0.0;
    }

    json report;
    report["metadata"] = to_json(make_metadata(loaded.bytes));
    report["equilibrium"] = to_json(nash);
    report["optimum"] = {{"first_order", to_json(social)},
                         {"full_objective", to_json(social_full)},
                         {"g_unclamped", unclamped}};
    report["gap"] = {{"closed_form", gap.closed_form},
                     {"realized", gap.realized}};
    report["trap"] = to_json(trap);
    report["welfare"] = {
        {"nash", total_welfare(s, nash.profile)},
        {"social_first_order", total_welfare(s, social.profile)},
        {"social_full_objective", total_welfare(s, social_full.profile)}};
    if (in.baseline) report["baseline"] = to_json(baseline_report(opts));

    std::printf("scenario: N=%zu M=%zu (%s, digest %s)\n", s.n_domains(),
                s.m_consumers(), loaded.origin.c_str(),
                content_digest(loaded.bytes).c_str());
    std::printf(
        "nash: converged=%s iterations=%d residual=%.3g | q mean %.6g | g "
        "mean %.6g | corner domains %zu of %zu\n",
        nash.converged ? "yes" : "no", nash.iterations, nash.residual,
        mean(nash.profile.q), mean(nash.profile.g), nash.corner_domains.size(),
        s.n_domains());
    std::printf(
        "trap: organization_trapped=%s (synergy %.6g vs effective fixed cost "
        "%.6g at domain 0)\n",
        trap.organization_trapped ? "yes" : "no",
        trap.per_domain[0].private_synergy,
        trap.per_domain[0].effective_fixed_cost);
    std::printf(
        "optimum (first-order): q mean %.6g | g mean %.6g | unclamped g %.6g "
        "at domain 0\n",
        mean(social.profile.q), mean(social.profile.g), unclamped[0]);
    std::printf("optimum (full-objective): q mean %.6g | g mean %.6g\n",
                mean(social_full.profile.q), mean(social_full.profile.g));
    std::printf("gap: closed-form mean %.6g | realized mean %.6g\n",
                mean(gap.closed_form), mean(gap.realized));
    std::printf("welfare: nash %.6g | planner %.6g\n",
                total_welfare(s, nash.profile),
                total_welfare(s, social_full.profile));
    if (in.baseline) {
        const BaselineReport base = baseline_report(opts);
        std::printf(
            "baseline planner generality: clamped %.6g, reference ~%.2f "
            "(unreconciled; unclamped value %.6g)\n",
            base.g_so_clamped, base.g_so_reference, base.g_so_unclamped);
    }

    if (oracle_res) {
        const Profile oracle = grid_oracle(s, *oracle_res);
        double max_dev = 0.0;
        for (std::size_t i = 0; i < s.n_domains(); ++i) {
            max_dev = std::max(max_dev,
                               std::abs(oracle.q[i] - nash.profile.q[i]));
            max_dev = std::max(max_dev,
                               std::abs(oracle.g[i] - nash.profile.g[i]));
        }
        report["oracle"] = {{"resolution", *oracle_res},
                            {"profile", to_json(oracle)},
                            {"max_deviation_from_nash", max_dev}};
        std::printf("oracle (resolution %.4g): max deviation from nash %.3g\n",
                    *oracle_res, max_dev);
    }

    // CSV form: one row per domain.
    std::ostringstream csv;
    csv << "domain,q_nash,g_nash,q_social,g_social,gap_closed_form,"
           "gap_realized,trapped\n";
    for (std::size_t i = 0; i < s.n_domains(); ++i)
        csv << i << ',' << format_double(nash.profile.q[i]) << ','
            << format_double(nash.profile.g[i]) << ','
            << format_double(social.profile.q[i]) << ','
            << format_double(social.profile.g[i]) << ','
            << format_double(gap.closed_form[i]) << ','
            << format_double(gap.realized[i]) << ','
            << (trap.per_domain[i].trapped ? "true" : "false") << '\n';
    write_output(out, csv.str(), report);

    if (!nash.converged || !social.converged) {
        std::fprintf(stderr,
                     "solver did not converge within %d iterations "
                     "(residual %.3g)\n",
                     opts.max_iter,
                     nash.converged ? social.residual : nash.residual);
        return kExitSolver;
    }
    return kExitOk;
}

// ---- sweep ---------------------------------------------------------------

int run_sweep(const InputSpec& in, const OutputSpec& out,
              const std::string& param_name, double low, double high,
              std::size_t steps) {
    LoadedInput loaded = resolve_input(in);
    const SweepParam param = sweep_param_from_name(param_name);
    const std::vector<SweepRow> rows = sensitivity_sweep(
        loaded.file.scenario, param, low, high, steps, loaded.file.solver);
    const std::string csv = sweep_rows_csv(rows);
    write_output(out, csv, sweep_rows_json(rows, param));
    if (out.path.empty())
        std::fputs(csv.c_str(), stdout);
    else
        std::printf("wrote %zu sweep rows to %s\n", rows.size(),
                    out.path.c_str());
    return kExitOk;
}

// ---- regimes ---------------------------------------------------------------

int run_regimes(const InputSpec& in, const OutputSpec& out, double big_gamma,
                double correction) {
    LoadedInput loaded = resolve_input(in);
    const std::vector<RegimeReport> reports = regime_comparison(
        loaded.file.scenario, big_gamma, correction, loaded.file.solver);
    json j;
    j["metadata"] = to_json(make_metadata(loaded.bytes));
    j["regimes"] = json::array();
    for (const RegimeReport& r : reports) j["regimes"].push_back(to_json(r));
    write_output(out, regimes_csv(reports), j);

    std::printf("%-12s %4s %14s %10s %10s %s\n", "regime", "rank", "welfare",
                "q_mean", "g_mean", "notes");
    for (const RegimeReport& r : reports) {
        std::string notes = r.coordination_cost + " coordination";
        if (r.welfare_tied) notes += "; welfare-tied";
        std::printf("%-12s %4d %14.6g %10.6g %10.6g %s\n",
                    regime_name(r.regime).c_str(), r.rank, r.welfare,
                    mean(r.profile.q), mean(r.profile.g), notes.c_str());
    }
    return kExitOk;
}

// ---- debt ---------------------------------------------------------------

int run_debt(const InputSpec& in, const OutputSpec& out,
             const std::string& n_list, std::optional<double> override_g) {
    LoadedInput loaded = resolve_input(in);
    const Scenario& s = loaded.file.scenario;
    const EquilibriumResult nash = nash_equilibrium(s, loaded.file.solver);
    Profile profile = nash.profile;
    if (override_g) {
        if (!(*override_g >= 0.0 && *override_g <= 1.0))
            throw ValidationError("--override-g must lie in [0, 1]");
        std::fill(profile.g.begin(), profile.g.end(), *override_g);
    }
    const DebtReport debt = total_debt(s, profile);

    json j;
    j["metadata"] = to_json(make_metadata(loaded.bytes));
    j["debt"] = to_json(debt);
    std::string csv;

    std::printf("total technical debt: %.10g\n", debt.total);
    if (debt.symmetric_closed_form)
        std::printf("symmetric closed form: %.10g\n",
                    *debt.symmetric_closed_form);

    if (!n_list.empty()) {
        std::vector<std::size_t> n_values;
        std::stringstream ss(n_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                const long v = std::stol(tok);
                if (v < 2) throw std::invalid_argument("n < 2");
                n_values.push_back(static_cast<std::size_t>(v));
            } catch (const std::exception&) {
                throw ValidationError("bad --n entry '" + tok +
                                      "': need integers >= 2");
            }
        }
        const DebtScalingCurve curve =
            debt_scaling_curve(s, n_values, loaded.file.solver);
        j["scaling"] = to_json(curve);
        csv = debt_scaling_csv(curve);
        for (const DebtScalingRow& row : curve.rows)
            std::printf("N=%zu TD=%.10g\n", row.n_domains, row.td_total);
        std::printf("fitted log-log exponent: %.6g\n", curve.fitted_exponent);
    } else {
        std::ostringstream c;
        c << "i,j,pairwise_debt\n";
        for (std::size_t i = 0; i < s.n_domains(); ++i)
            for (std::size_t k = 0; k < s.n_domains(); ++k)
                c << i << ',' << k << ',' << format_double(debt.pairwise[i][k])
                  << '\n';
        csv = c.str();
    }
    write_output(out, csv, j);
    return kExitOk;
}

// ---- threshold ---------------------------------------------------------------

int run_threshold(const InputSpec& in, const OutputSpec& out,
                  const std::string& param_name) {
    LoadedInput loaded = resolve_input(in);
    const SweepParam param = sweep_param_from_name(param_name);
    const ThresholdResult t =
        corner_threshold(loaded.file.scenario, param, loaded.file.solver);
    json j;
    j["metadata"] = to_json(make_metadata(loaded.bytes));
    j["threshold"] = to_json(t);
    std::ostringstream csv;
    csv << "param,value,fixed_q_estimate,deviation\n"
        << sweep_param_name(t.param) << ',' << format_double(t.value) << ','
        << format_double(t.fixed_q_estimate) << ','
        << format_double(t.deviation) << '\n';
    write_output(out, csv.str(), j);
    std::printf("corner threshold for %s: %.8g (fixed-q estimate %.8g, "
                "deviation %.3g)\n",
                sweep_param_name(t.param).c_str(), t.value, t.fixed_q_estimate,
                t.deviation);
    return kExitOk;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitParse;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitSolver;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"data-product game: equilibrium, welfare, debt, and "
                 "governance analysis"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand(
        "solve", "equilibrium + optimum + gap + trap report");
    InputSpec solve_in;
    OutputSpec solve_out;
    std::optional<double> tol, damping, oracle_res;
    std::optional<int> max_iter;
    add_input_options(solve, solve_in);
    add_output_options(solve, solve_out);
    solve->add_option("--tol", tol, "solver tolerance");
    solve->add_option("--max-iter", max_iter, "solver iteration cap");
    solve->add_option("--damping", damping, "best-response damping in (0, 1]");
    solve->add_option("--oracle", oracle_res,
                      "also run the brute-force grid oracle at this resolution");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "one-parameter sensitivity sweep");
    InputSpec sweep_in;
    OutputSpec sweep_out;
    std::string sweep_param;
    double sweep_low = 0.0, sweep_high = 0.0;
    std::size_t sweep_steps = 0;
    add_input_options(sweep, sweep_in);
    add_output_options(sweep, sweep_out);
    sweep->add_option("--param", sweep_param,
                      "lambda|kappa|gamma_g|n_domains|beta|alpha")
        ->required();
    sweep->add_option("--low", sweep_low, "range start")->required();
    sweep->add_option("--high", sweep_high, "range end")->required();
    sweep->add_option("--steps", sweep_steps, "grid points (>= 2)")->required();

    // regimes
    auto* regimes =
        app.add_subcommand("regimes", "four-regime welfare comparison");
    InputSpec regimes_in;
    OutputSpec regimes_out;
    double big_gamma = 10.0, correction = 0.7;
    add_input_options(regimes, regimes_in);
    add_output_options(regimes, regimes_out);
    regimes->add_option("--gamma", big_gamma,
                        "central generality cost coefficient")
        ->default_val(10.0);
    regimes->add_option("--correction", correction,
                        "hybrid correction fraction in [0, 1]")
        ->default_val(0.7);

    // debt
    auto* debt = app.add_subcommand(
        "debt", "technical-debt report (pairwise + total, or a scaling curve)");
    InputSpec debt_in;
    OutputSpec debt_out;
    std::string debt_n;
    std::optional<double> debt_override_g;
    add_input_options(debt, debt_in);
    add_output_options(debt, debt_out);
    debt->add_option("--n", debt_n,
                     "comma-separated domain counts for the scaling curve, "
                     "e.g. 4,8,16,32");
    debt->add_option("--override-g", debt_override_g,
                     "evaluate debt with every generality forced to this value");

    // threshold
    auto* threshold = app.add_subcommand(
        "threshold", "corner-break threshold for kappa, beta, or lambda");
    InputSpec threshold_in;
    OutputSpec threshold_out;
    std::string threshold_param;
    add_input_options(threshold, threshold_in);
    add_output_options(threshold, threshold_out);
    threshold->add_option("--param", threshold_param, "kappa|beta|lambda")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (solve->parsed())
        return guarded([&] {
            return run_solve(solve_in, solve_out, tol, max_iter, damping,
                             oracle_res);
        });
    if (sweep->parsed())
        return guarded([&] {
            return run_sweep(sweep_in, sweep_out, sweep_param, sweep_low,
                             sweep_high, sweep_steps);
        });
    if (regimes->parsed())
        return guarded(
            [&] { return run_regimes(regimes_in, regimes_out, big_gamma,
                                     correction); });
    if (debt->parsed())
        return guarded(
            [&] { return run_debt(debt_in, debt_out, debt_n, debt_override_g); });
    if (threshold->parsed())
        return guarded([&] {
            return run_threshold(threshold_in, threshold_out, threshold_param);
        });
    return kExitOk;
}
