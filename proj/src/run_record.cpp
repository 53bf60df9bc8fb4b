#include "satset/run_record.hpp"

namespace satset {

using nlohmann::json;

json to_json(const ConstructionConfig& c) {
  return json{{"R", c.R},
              {"q", c.q},
              {"leading", to_string(c.leading)},
              {"tail", to_string(c.tail)},
              {"hyperplane", to_string(c.hyperplane)},
              {"seed", c.seed},
              {"max_steps", c.max_steps},
              {"check_invariants", c.check_invariants}};
}

json to_json(const StepTrace& s) {
  return json{{"w", s.w},
              {"pi", s.pi.dual},
              {"frak_B", s.frak_B},
              {"frak_T_sizes", s.frak_T_sizes},
              {"pi_wi_sizes", s.pi_wi_sizes},
              {"chosen", s.chosen},
              {"delta_leading", s.delta_leading},
              {"S_w", s.S_w},
              {"gamma_union_min", s.gamma_union_min},
              {"uncovered_off_pi", s.uncovered_off_pi},
              {"uncovered_on_pi", s.uncovered_on_pi},
              {"U_before", s.U_before},
              {"U_after", s.U_after},
              {"Delta", s.Delta},
              {"completed", s.completed}};
}

json to_json(const InvariantLog& log) {
  json v = json::array();
  for (const auto& x : log.violations) v.push_back(json{{"w", x.w}, {"i", x.i}, {"what", x.what}});
  return json{{"general_position_checks", log.general_position_checks},
              {"window_checks", log.window_checks},
              {"nesting_checks", log.nesting_checks},
              {"hyperplane_cover_checks", log.hyperplane_cover_checks},
              {"leading_average_checks", log.leading_average_checks},
              {"gamma_bound_checks", log.gamma_bound_checks},
              {"trajectory_checks", log.trajectory_checks},
              {"violations", v}};
}

json run_record(const ConstructionConfig& config, const ProjectiveSpace& space, const SaturatingSetResult& result,
                const verify::VerificationCertificate& cert, double wall_time_ms) {
  json points = json::array();
  for (PointId p : result.points) {
    auto c = space.coords(p);
    points.push_back(json{{"id", p}, {"coords", std::vector<int>(c.begin(), c.end())}});
  }
  json trace = json::array();
  for (const auto& s : result.trace) trace.push_back(to_json(s));
  return json{{"schema", kRunRecordSchema},
              {"tool_version", kToolVersion},
              {"config", to_json(config)},
              {"n", result.n()},
              {"points", points},
              {"phase", to_string(result.phase)},
              {"fallback_reason", result.fallback_reason},
              {"final_additions", result.final_additions},
              {"certificate", verify::to_json(cert)},
              {"trace", trace},
              {"invariants", to_json(result.invariants)},
              {"wall_time_ms", wall_time_ms}};
}

}  // namespace satset
