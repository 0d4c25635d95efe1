#pragma once

namespace meshecon {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kScenarioSchemaVersion = 1;

}  // namespace meshecon
