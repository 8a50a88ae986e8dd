// orthoglide: trajectory -> kinematics -> dynamics command-line front end.
//
// Exit codes: 0 success, 1 model/trace error, 2 config or usage error, 3 audit failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "orthoglide/orthoglide.hpp"

namespace og = orthoglide;

namespace {

constexpr int kExitModel = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAudit = 3;

constexpr double kRateTolerance = 1e-4;

struct Options {
  std::string config;
  std::string traj = "I";
  double phi_deg = 90.0;
  double gamma_deg = 45.0;
  double delta_start_deg = 30.0;
  double delta_end_deg = 150.0;
  double radius = 0.2;
  double vp = 1.0;
  int samples = 2000;
  std::string out;
  bool all_reference = false;
  std::vector<double> phi_list, gamma_list, radius_list;
};

void add_model_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "machine config file (default: $ORTHOGLIDE_CONFIG, else built-in)");
}

void add_traj_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--traj", o.traj, "trajectory family")->check(CLI::IsMember({"I", "II"}));
  cmd->add_option("--phi", o.phi_deg, "Traj I plane angle [deg]");
  cmd->add_option("--gamma", o.gamma_deg, "Traj II tilt [deg]");
  cmd->add_option("--delta-start", o.delta_start_deg, "Traj I tool-angle start [deg]");
  cmd->add_option("--delta-end", o.delta_end_deg, "Traj I tool-angle end [deg]");
  cmd->add_option("--radius", o.radius, "path radius [m]")->check(CLI::PositiveNumber);
  cmd->add_option("--vp", o.vp, "path speed [m/s]")->check(CLI::PositiveNumber);
  cmd->add_option("--samples", o.samples, "samples per trajectory")->check(CLI::Range(2, 10000000));
}

og::MachineModel resolve_model(const Options& o) {
  if (!o.config.empty()) return og::load_model_file(o.config);
  if (const char* env = std::getenv("ORTHOGLIDE_CONFIG"); env != nullptr && *env != '\0') {
    return og::load_model_file(env);
  }
  return og::default_model();
}

og::TrajectorySpec make_spec(const Options& o, og::TrajectoryFamily family, double angle_deg, double radius) {
  og::TrajectorySpec s;
  s.family = family;
  s.radius = radius;
  s.path_speed = o.vp;
  s.sample_count = o.samples;
  s.delta_start = og::deg2rad(o.delta_start_deg);
  s.delta_end = og::deg2rad(o.delta_end_deg);
  if (family == og::TrajectoryFamily::TrajI) {
    s.plane_angle = og::deg2rad(angle_deg);
  } else {
    s.tilt = og::deg2rad(angle_deg);
  }
  return s;
}

og::TrajectorySpec make_spec(const Options& o) {
  const bool traj_i = o.traj == "I";
  return make_spec(o, traj_i ? og::TrajectoryFamily::TrajI : og::TrajectoryFamily::TrajII,
                   traj_i ? o.phi_deg : o.gamma_deg, o.radius);
}

int cmd_simulate(const Options& o) {
  const auto model = resolve_model(o);
  const auto spec = make_spec(o);
  const auto r = og::run_pipeline(model, spec, o.out);
  std::cout << "wrote " << o.out << "\n\n" << og::format_run_report(r);
  return (r.translation_audit.passed && r.wrist_audit.passed) ? 0 : kExitAudit;
}

int cmd_report(const Options& o) {
  const auto model = resolve_model(o);
  const auto r = og::run_simulation(model, make_spec(o));
  std::cout << og::format_run_report(r);
  return 0;
}

int cmd_validate(const Options& o) {
  const auto model = resolve_model(o);
  std::vector<og::TrajectorySpec> specs;
  if (o.all_reference) {
    for (const auto& s : og::reference_trajectories(o.samples)) specs.push_back(s);
  } else {
    specs.push_back(make_spec(o));
  }

  bool ok = true;
  auto check = [&](bool pass, const std::string& what) {
    std::cout << "  [" << (pass ? "pass" : "FAIL") << "] " << what << '\n';
    ok = ok && pass;
  };
  for (const auto& spec : specs) {
    const auto r = og::run_simulation(model, spec);
    std::cout << og::describe(spec) << '\n';
    check(r.translation_audit.passed, og::format_audit_line(r.translation_audit));
    check(r.wrist_audit.passed, og::format_audit_line(r.wrist_audit));
    const double traj_dev = og::finite_difference_check(r.trajectory);
    check(traj_dev <= kRateTolerance, "trajectory derivatives vs central differences: " + og::format_sig(traj_dev, 3));
    const auto jd = og::rate_deviation(r.joints);
    check(jd.rate <= kRateTolerance && jd.accel <= kRateTolerance,
          "prismatic rates vs central differences: " + og::format_sig(jd.rate, 3) + " / " +
              og::format_sig(jd.accel, 3));
    const auto wd = og::rate_deviation(r.wrist);
    check(wd.rate <= kRateTolerance && wd.accel <= kRateTolerance,
          "wrist rates vs central differences: " + og::format_sig(wd.rate, 3) + " / " + og::format_sig(wd.accel, 3));
  }
  std::cout << (ok ? "validation passed\n" : "validation FAILED\n");
  return ok ? 0 : kExitAudit;
}

int cmd_sweep(const Options& o) {
  const auto model = resolve_model(o);
  const bool traj_i = o.traj == "I";
  const auto family = traj_i ? og::TrajectoryFamily::TrajI : og::TrajectoryFamily::TrajII;
  std::vector<double> angles = traj_i ? o.phi_list : o.gamma_list;
  if (angles.empty()) angles.push_back(traj_i ? o.phi_deg : o.gamma_deg);
  std::vector<double> radii = o.radius_list;
  if (radii.empty()) radii.push_back(o.radius);

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary | std::ios::trunc);
    if (!file) throw og::Error("cannot write " + o.out);
  }
  std::ostream& out = o.out.empty() ? std::cout : file;
  og::csv::write_peaks_header(out, traj_i ? "phi_deg,radius" : "gamma_deg,radius");
  for (double angle : angles) {
    for (double radius : radii) {
      const auto r = og::run_simulation(model, make_spec(o, family, angle, radius));
      og::csv::write_peaks_row(out, {angle, radius}, r.peaks);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthoglide 5-axis trajectory, kinematics, dynamics and motor-sizing tool"};
  app.require_subcommand(1);
  Options o;

  auto* simulate = app.add_subcommand("simulate", "run the full pipeline and write a run directory");
  add_model_options(simulate, o);
  add_traj_options(simulate, o);
  simulate->add_option("--out", o.out, "output directory")->default_val("run");

  auto* report = app.add_subcommand("report", "print peaks, audits and motor sizing");
  add_model_options(report, o);
  add_traj_options(report, o);

  auto* validate = app.add_subcommand("validate", "energy audits and derivative cross-checks");
  add_model_options(validate, o);
  add_traj_options(validate, o);
  validate->add_flag("--reference", o.all_reference, "check the three reference trajectories");

  auto* sweep = app.add_subcommand("sweep", "peak table over a grid of plane angles / tilts and radii");
  add_model_options(sweep, o);
  add_traj_options(sweep, o);
  sweep->add_option("--phi-list", o.phi_list, "Traj I plane angles [deg], comma separated")->delimiter(',');
  sweep->add_option("--gamma-list", o.gamma_list, "Traj II tilts [deg], comma separated")->delimiter(',');
  sweep->add_option("--radius-list", o.radius_list, "radii [m], comma separated")->delimiter(',');
  sweep->add_option("--out", o.out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(o);
    if (report->parsed()) return cmd_report(o);
    if (validate->parsed()) return cmd_validate(o);
    return cmd_sweep(o);
  } catch (const og::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const og::AuditFailure& e) {
    std::cerr << "audit failure: " << e.what() << '\n';
    return kExitAudit;
  } catch (const og::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitModel;
  } catch (const std::exception& e) {  // filesystem and I/O failures
    std::cerr << "error: " << e.what() << '\n';
    return kExitModel;
  }
}
