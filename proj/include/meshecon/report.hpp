#pragma once

// Machine-readable report assembly. Sweep outputs carry rows only, so
// re-running a sweep reproduces the file byte for byte; solve/regime/debt
// bundles carry metadata (tool version, input digest, timestamp). Every
// number printed here is taken verbatim from a library result -- the
// reporting layer performs no arithmetic beyond means for display.

#include <string>
#include <vector>

#include "json.hpp"
#include "meshecon/calibration.hpp"
#include "meshecon/equilibrium.hpp"
#include "meshecon/governance.hpp"
#include "meshecon/welfare_debt.hpp"

namespace meshecon {

struct ReportMetadata {
    std::string tool_version;
    std::string input_digest;
    std::string generated_at;  // ISO-8601 UTC
};

ReportMetadata make_metadata(const std::string& input_bytes);

/// %.17g rendering: shortest form that round-trips a double.
std::string format_double(double x);

nlohmann::json to_json(const ReportMetadata& m);
nlohmann::json to_json(const Profile& p);
nlohmann::json to_json(const EquilibriumResult& r);
nlohmann::json to_json(const TrapDiagnosis& t);
nlohmann::json to_json(const GapReport& g);
nlohmann::json to_json(const WelfareLossReport& w);
nlohmann::json to_json(const DebtReport& d);
nlohmann::json to_json(const DebtScalingCurve& c);
nlohmann::json to_json(const RegimeReport& r);
nlohmann::json to_json(const BaselineReport& r);
nlohmann::json to_json(const DollarReport& r);
nlohmann::json to_json(const ThresholdResult& r);

nlohmann::json sweep_rows_json(const std::vector<SweepRow>& rows,
                               SweepParam param);
std::string sweep_rows_csv(const std::vector<SweepRow>& rows);

std::string regimes_csv(const std::vector<RegimeReport>& reports);
std::string debt_scaling_csv(const DebtScalingCurve& curve);

}  // namespace meshecon
