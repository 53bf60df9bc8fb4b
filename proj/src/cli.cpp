#include "satset/cli.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "satset/bounds.hpp"
#include "satset/construction.hpp"
#include "satset/lift.hpp"
#include "satset/matrix_io.hpp"
#include "satset/run_record.hpp"
#include "satset/verify.hpp"

namespace satset::cli {

namespace {

using nlohmann::json;

struct ConstructArgs {
  ConstructionConfig cfg;
  std::string prefix;
  std::string matrix_path;
  std::string json_path;
  bool no_invariants = false;
};

struct VerifyArgs {
  std::string path;
  std::optional<int> saturation;
  std::optional<int> radius;
  std::optional<int> distance;
  bool amds = false;
  int threads = 0;
  std::string json_path;
};

struct BoundsArgs {
  bool table1 = false;
  bool table2 = false;
  bool report = false;
  int R = 3;
  std::optional<long long> q;
  std::optional<int> t;
  std::string out_path;
};

struct LiftArgs {
  std::string base;
  std::optional<long long> n0;
  std::optional<int> r0;
  std::optional<long long> q;
  std::optional<int> R;
  std::optional<int> m;
  std::optional<int> t_max;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    io::write_file(path, text);
}

int cmd_construct(ConstructArgs& a, std::ostream& out, std::ostream& err) {
  ConstructionConfig& cfg = a.cfg;
  cfg.check_invariants = !a.no_invariants;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  const std::string prefix = a.prefix.empty() ? "satset_R" + std::to_string(cfg.R) + "_q" + std::to_string(cfg.q) : a.prefix;
  const std::string matrix_path = a.matrix_path.empty() ? prefix + ".pchk" : a.matrix_path;
  const std::string json_path = a.json_path.empty() ? prefix + ".json" : a.json_path;

  const auto start = std::chrono::steady_clock::now();
  std::unique_ptr<ProjectiveSpace> space;
  SaturatingSetResult result;
  verify::VerificationCertificate cert;
  try {
    space = std::make_unique<ProjectiveSpace>(Field(cfg.q), cfg.R);
    result = run(cfg);
  } catch (const MaxStepsExceeded& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const GeometryError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const ConstructionError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kMismatch;
  }
  try {
    cert = verify::certify(*space, result.points, cfg.threads);
  } catch (const std::exception& e) {
    err << "verification failed: " << e.what() << '\n';
    return kMismatch;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  json record = run_record(cfg, *space, result, cert, ms);
  const double bound = bounds::length_bound(cfg.q, cfg.R, 1).convert_to<double>();
  record["monitoring"] = json{{"n", result.n()},
                              {"length_bound_t1", bound},
                              {"n_within_bound", static_cast<double>(result.n()) <= bound},
                              {"n_over_q_plus_1", static_cast<double>(result.n()) / (cfg.q + 1)}};

  const verify::ParityCheckMatrix H = verify::matrix_from_points(*space, result.points);
  try {
    io::write_file(matrix_path, io::write_pchk(H, {"saturating set R=" + std::to_string(cfg.R) + " q=" + std::to_string(cfg.q) +
                                                       " n=" + std::to_string(result.n()) + " phase=" + to_string(result.phase)}));
    io::write_file(json_path, record.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }

  out << "R=" << cfg.R << " q=" << cfg.q << " n=" << result.n() << " phase=" << to_string(result.phase)
      << " saturation=" << cert.saturation_level << " radius=" << cert.covering_radius << " d="
      << (cert.min_distance ? std::to_string(*cert.min_distance) : "undefined") << " AMDS=" << (cert.is_AMDS ? "yes" : "no")
      << " violations=" << result.invariants.violations.size() << '\n';
  out << "wrote " << matrix_path << " and " << json_path << '\n';
  if (!result.fallback_reason.empty()) err << "fallback: " << result.fallback_reason << '\n';
  for (const auto& v : result.invariants.violations) err << "invariant violation (w=" << v.w << ", i=" << v.i << "): " << v.what << '\n';

  if (cert.saturation_level != cfg.R - 1 || cert.covering_radius != cfg.R) {
    err << "verification failed: saturation level " << cert.saturation_level << ", expected " << cfg.R - 1 << '\n';
    return kMismatch;
  }
  return kOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  verify::ParityCheckMatrix H;
  try {
    H = io::read_pchk_file(a.path);
  } catch (const io::ParseError& e) {
    err << a.path << ": " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  const Field field(H.q);
  json j{{"q", H.q}, {"n", H.n}, {"r", H.r}, {"criterion", "span of at most rho+1 points"}};
  verify::CoveringRadius cr;
  try {
    cr = verify::covering_radius(field, H);
  } catch (const verify::VerifyError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  j["covering_radius"] = cr.radius;
  j["farthest_syndrome"] = cr.farthest_syndrome;

  std::optional<verify::SaturationLevel> sat;
  try {
    const ProjectiveSpace space(field, H.r - 1);
    const auto pts = verify::points_from_matrix(space, H);
    sat = verify::saturation_level(space, pts, -1, a.threads);
    j["saturation_level"] = sat->level;
    if (sat->uncovered_below) j["uncovered_at_lower_level"] = space.vec(*sat->uncovered_below);
  } catch (const std::exception& e) {
    j["saturation_level"] = nullptr;
    j["saturation_note"] = e.what();
  }

  std::optional<verify::MinDistance> md;
  try {
    md = verify::min_distance(field, H);
    j["min_distance"] = md->distance;
    j["dependent_columns"] = md->dependent_columns;
    j["is_AMDS"] = md->distance == H.r;
  } catch (const verify::VerifyError& e) {
    j["min_distance"] = nullptr;
    j["is_AMDS"] = false;
    j["distance_note"] = e.what();
  }
  const std::string text = j.dump(2) + "\n";
  try {
    emit(text, a.json_path, out);
    if (!a.json_path.empty()) out << text;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }

  auto vec_text = [](const Vec& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
    return "(" + s + ")";
  };
  int code = kOk;
  if (a.radius && *a.radius != cr.radius) {
    err << "MISMATCH covering radius: expected " << *a.radius << ", got " << cr.radius << "; syndrome " << vec_text(cr.farthest_syndrome)
        << " needs " << cr.radius << " columns\n";
    code = kMismatch;
  }
  if (a.saturation) {
    if (!sat) {
      err << "MISMATCH saturation level: expected " << *a.saturation << ", not computable\n";
      code = kMismatch;
    } else if (*a.saturation != sat->level) {
      err << "MISMATCH saturation level: expected " << *a.saturation << ", got " << sat->level;
      if (sat->uncovered_below) err << "; point id " << *sat->uncovered_below << " is not covered one level lower";
      err << '\n';
      code = kMismatch;
    }
  }
  if (a.distance || a.amds) {
    const std::string cols = md ? [&] {
      std::string s;
      for (int c : md->dependent_columns) s += " " + std::to_string(c);
      return s;
    }() : std::string();
    if (!md) {
      err << "MISMATCH minimum distance undefined\n";
      code = kMismatch;
    } else {
      if (a.distance && *a.distance != md->distance) {
        err << "MISMATCH minimum distance: expected " << *a.distance << ", got " << md->distance << "; dependent columns" << cols << '\n';
        code = kMismatch;
      }
      if (a.amds && md->distance != H.r) {
        err << "MISMATCH AMDS: d = " << md->distance << ", r = " << H.r << "; dependent columns" << cols << '\n';
        code = kMismatch;
      }
    }
  }
  return code;
}

int cmd_bounds(const BoundsArgs& a, std::ostream& out, std::ostream& err) {
  const int chosen = int(a.table1) + int(a.table2) + int(a.report);
  if (chosen != 1) {
    err << "error: give exactly one of --table1, --table2, --report\n";
    return kPrecondition;
  }
  try {
    std::string text;
    if (a.table1) text = bounds::emit_table1();
    if (a.table2) text = bounds::emit_table2();
    if (a.report) text = bounds::report(bounds::BoundReport{a.R, a.q, a.t}).dump(2) + "\n";
    emit(text, a.out_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  return kOk;
}

int cmd_lift(const LiftArgs& a, std::ostream& out, std::ostream& err) {
  try {
    if (!a.base.empty()) {
      if (!a.t_max) {
        err << "error: --base needs --t-max\n";
        return kPrecondition;
      }
      verify::ParityCheckMatrix H;
      try {
        H = io::read_pchk_file(a.base);
      } catch (const io::ParseError& e) {
        err << a.base << ": " << e.what() << '\n';
        return kPrecondition;
      }
      const int R = H.r - 1;
      const verify::CoveringRadius cr = verify::covering_radius(Field(H.q), H);
      if (cr.radius != R) {
        err << "base code has covering radius " << cr.radius << ", expected r0 - 1 = " << R << '\n';
        return kMismatch;
      }
      const lift::Family fam = lift::family(H.n, H.q, R, *a.t_max);
      out << lift::to_json(fam).dump(2) << '\n';
      if (!fam.diagnostic.empty()) {
        err << "precondition: " << fam.diagnostic << '\n';
        return kPrecondition;
      }
      return kOk;
    }
    if (!a.n0 || !a.r0 || !a.q || !a.R || (!a.m && !a.t_max)) {
      err << "error: give --base FILE --t-max T, or --n0 --r0 --q --R with --m or --t-max\n";
      return kPrecondition;
    }
    if (a.m) {
      out << lift::to_json(lift::lift_params(*a.n0, *a.r0, *a.q, *a.R, *a.m)).dump(2) << '\n';
      return kOk;
    }
    json j = json::array();
    for (int m = 1; m <= *a.t_max - 1; ++m) j.push_back(lift::to_json(lift::lift_params(*a.n0, *a.r0, *a.q, *a.R, m)));
    out << j.dump(2) << '\n';
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Saturating sets in PG(R,q), covering codes and bounds"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build and verify an (R-1)-saturating set of PG(R,q)");
  construct->add_option("--R", ca.cfg.R, "projective dimension (>= 3)");
  construct->add_option("--q", ca.cfg.q, "field order (prime power <= 256)");
  const std::map<std::string, LeadingStrategy> leading{{"argmax", LeadingStrategy::argmax},
                                                       {"average", LeadingStrategy::first_above_average}};
  const std::map<std::string, TailStrategy> tail{{"first", TailStrategy::first_valid}, {"greedy", TailStrategy::greedy}};
  const std::map<std::string, HyperplaneOrder> order{{"lex", HyperplaneOrder::lexicographic},
                                                     {"random", HyperplaneOrder::seeded_random}};
  construct->add_option("--leading", ca.cfg.leading, "leading point rule")->transform(CLI::CheckedTransformer(leading));
  construct->add_option("--tail", ca.cfg.tail, "rule for the other points of a step")->transform(CLI::CheckedTransformer(tail));
  construct->add_option("--hyperplane", ca.cfg.hyperplane, "skew hyperplane choice")->transform(CLI::CheckedTransformer(order));
  construct->add_option("--seed", ca.cfg.seed, "seed for --hyperplane random");
  construct->add_option("--max-steps", ca.cfg.max_steps, "step cap");
  construct->add_option("--threads", ca.cfg.threads, "worker cap (default: SATSET_THREADS or 1)");
  construct->add_option("--out", ca.prefix, "output prefix for .pchk and .json");
  construct->add_option("--matrix", ca.matrix_path, "matrix output path");
  construct->add_option("--json", ca.json_path, "run record output path");
  construct->add_flag("--no-invariants", ca.no_invariants, "skip per-step invariant checks");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "verify a parity check matrix");
  verify_cmd->add_option("matrix", va.path, "matrix file")->required();
  verify_cmd->add_option("--saturation", va.saturation, "expected saturation level");
  verify_cmd->add_option("--covering-radius", va.radius, "expected covering radius");
  verify_cmd->add_option("--distance", va.distance, "expected minimum distance");
  verify_cmd->add_flag("--amds", va.amds, "expect d = r");
  verify_cmd->add_option("--threads", va.threads, "worker cap");
  verify_cmd->add_option("--json", va.json_path, "also write the certificate here");

  BoundsArgs ba;
  auto* bounds_cmd = app.add_subcommand("bounds", "constant tables and bound reports");
  bounds_cmd->add_flag("--table1", ba.table1, "constant and its Stirling bounds");
  bounds_cmd->add_flag("--table2", ba.table2, "comparison with known constants");
  bounds_cmd->add_flag("--report", ba.report, "JSON report for R, q, t");
  bounds_cmd->add_option("--R", ba.R, "R >= 3");
  bounds_cmd->add_option("--q", ba.q, "field order");
  bounds_cmd->add_option("--t", ba.t, "r = tR + 1");
  bounds_cmd->add_option("--out", ba.out_path, "write here instead of stdout");

  LiftArgs la;
  auto* lift_cmd = app.add_subcommand("lift", "lifted code parameters");
  lift_cmd->add_option("--base", la.base, "base matrix file (r0 = R + 1)");
  lift_cmd->add_option("--n0", la.n0, "base code length");
  lift_cmd->add_option("--r0", la.r0, "base codimension");
  lift_cmd->add_option("--q", la.q, "field order");
  lift_cmd->add_option("--R", la.R, "covering radius of the lifted codes");
  lift_cmd->add_option("--m", la.m, "single lift exponent");
  lift_cmd->add_option("--t-max", la.t_max, "list m = 1..t_max-1");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }

  if (construct->parsed()) return cmd_construct(ca, out, err);
  if (verify_cmd->parsed()) return cmd_verify(va, out, err);
  if (bounds_cmd->parsed()) return cmd_bounds(ba, out, err);
  if (lift_cmd->parsed()) return cmd_lift(la, out, err);
  return kPrecondition;
}

}  // namespace satset::cli
