#pragma once

#include <string>

#include "json.hpp"
#include "satset/construction.hpp"
#include "satset/verify.hpp"

namespace satset {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kRunRecordSchema = 1;

nlohmann::json to_json(const ConstructionConfig& c);
nlohmann::json to_json(const StepTrace& s);
nlohmann::json to_json(const InvariantLog& log);

/// Full record of one construction run. Everything except wall_time_ms is a
/// function of the config.
nlohmann::json run_record(const ConstructionConfig& config, const ProjectiveSpace& space,
                          const SaturatingSetResult& result, const verify::VerificationCertificate& cert,
                          double wall_time_ms);

}  // namespace satset
