#pragma once

// trajectory -> kinematics -> dynamics -> audits -> peaks/sizing, plus
// writing a run directory.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "orthoglide/csv.hpp"
#include "orthoglide/dyn_translation.hpp"
#include "orthoglide/dyn_wrist.hpp"
#include "orthoglide/energy_audit.hpp"
#include "orthoglide/format.hpp"
#include "orthoglide/kin_translation.hpp"
#include "orthoglide/kin_wrist.hpp"
#include "orthoglide/model.hpp"
#include "orthoglide/report.hpp"
#include "orthoglide/trajectory.hpp"
#include "orthoglide/validation.hpp"

namespace orthoglide {

struct RunResult {
  TrajectorySpec spec;
  Trajectory trajectory;
  PrismaticTrace joints;
  WristTrace wrist;
  TranslationEffortTrace forces;
  WristEffortTrace torques;
  AuditResult translation_audit;
  AuditResult wrist_audit;
  PeakTable peaks;
  std::optional<SizingReport> sizing;  // present when every actuator has a motor
};

inline RunResult run_simulation(const MachineModel& model, const TrajectorySpec& spec,
                                GimbalPolicy gimbal = GimbalPolicy::Throw) {
  RunResult r;
  r.spec = spec;
  r.trajectory = sample_trajectory(spec, model);
  r.joints = joint_kinematics_translation(r.trajectory, model);
  r.wrist = wrist_rates(r.trajectory, model, gimbal);
  r.forces = effort_translation(r.trajectory, r.joints, model);
  r.torques = effort_wrist(r.wrist, model);
  r.translation_audit = audit(r.joints, r.forces, model);
  r.wrist_audit = audit(r.wrist, r.torques, model);
  r.peaks = extract_peaks(r.joints, r.wrist, r.forces, r.torques);
  if (model.assignment.size() == kAllActuators.size()) r.sizing = motor_check(r.peaks, model);
  return r;
}

inline std::string describe(const TrajectorySpec& spec) {
  std::ostringstream out;
  if (spec.family == TrajectoryFamily::TrajI) {
    out << "Traj I, phi=" << format_sig(rad2deg(spec.plane_angle), 10) << " deg, delta "
        << format_sig(rad2deg(spec.delta_start), 10) << ".." << format_sig(rad2deg(spec.delta_end), 10)
        << " deg";
  } else {
    out << "Traj II, gamma=" << format_sig(rad2deg(spec.tilt), 10) << " deg";
  }
  out << ", R=" << format_shortest(spec.radius) << " m, Vp=" << format_shortest(spec.path_speed)
      << " m/s, samples=" << spec.sample_count;
  return out.str();
}

inline std::string format_audit_line(const AuditResult& a) {
  std::ostringstream out;
  out << subsystem_name(a.subsystem) << ": max|dW|=" << format_sig(a.max_abs_residual, 4)
      << " J, threshold=" << format_sig(a.threshold(), 4) << " J (1e-6 x scale " << format_sig(a.energy_scale, 4)
      << " J + quadrature " << format_sig(a.quadrature_allowance, 4) << " J), sum|dW|="
      << format_sig(a.total_abs_residual, 4) << " J -> " << (a.passed ? "pass" : "FAIL");
  return out.str();
}

inline std::string format_run_report(const RunResult& r) {
  std::ostringstream out;
  out << "trajectory: " << describe(r.spec) << "\n\n";

  const auto& p = r.peaks;
  out << "prismatic joints  max|V| [m/s]: " << format_3sig(p[0].peak_speed) << ' ' << format_3sig(p[1].peak_speed)
      << ' ' << format_3sig(p[2].peak_speed) << "   max|A| [m/s^2]: " << format_3sig(p[0].peak_accel) << ' '
      << format_3sig(p[1].peak_accel) << ' ' << format_3sig(p[2].peak_accel) << '\n';
  out << "wrist joints      max|w| [rad/s]: " << format_3sig(p[3].peak_speed) << ' ' << format_3sig(p[4].peak_speed)
      << "   max|a| [rad/s^2]: " << format_3sig(p[3].peak_accel) << ' ' << format_3sig(p[4].peak_accel) << "\n\n";

  out << "energy audit\n  " << format_audit_line(r.translation_audit) << "\n  " << format_audit_line(r.wrist_audit)
      << "\n\n";

  std::size_t limit_hits = limit_violations(r.joints).size();
  out << "joint-limit violations: " << limit_hits << "\n\n";

  if (r.sizing) {
    out << "motor sizing\n" << format_report(*r.sizing);
  } else {
    out << "motor sizing: skipped (not every actuator has a motor assigned)\n";
  }
  return out.str();
}

/// Writes every CSV plus report.txt into `dir` (created if needed).
inline void write_run(const RunResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(std::string("cannot write ") + (dir / name).string());
    return f;
  };
  {
    auto f = open("trajectory.csv");
    csv::write_trajectory(f, r.trajectory);
  }
  {
    auto f = open("joints_translation.csv");
    csv::write_joints_translation(f, r.joints);
  }
  {
    auto f = open("joints_wrist.csv");
    csv::write_joints_wrist(f, r.wrist);
  }
  {
    auto f = open("effort_translation.csv");
    csv::write_effort_translation(f, r.forces);
  }
  {
    auto f = open("effort_wrist.csv");
    csv::write_effort_wrist(f, r.torques);
  }
  {
    auto f = open("audit_translation.csv");
    csv::write_audit(f, r.translation_audit);
  }
  {
    auto f = open("audit_wrist.csv");
    csv::write_audit(f, r.wrist_audit);
  }
  {
    auto f = open("report.txt");
    f << format_run_report(r);
  }
}

/// run_simulation + write_run.
inline RunResult run_pipeline(const MachineModel& model, const TrajectorySpec& spec,
                              const std::filesystem::path& out_dir) {
  RunResult r = run_simulation(model, spec);
  write_run(r, out_dir);
  return r;
}

/// The three reference trajectories: Traj I at phi = 90 and 45 deg, Traj II at gamma = 45 deg.
inline std::array<TrajectorySpec, 3> reference_trajectories(int samples = 2000) {
  TrajectorySpec a;
  a.family = TrajectoryFamily::TrajI;
  a.plane_angle = deg2rad(90.0);
  a.sample_count = samples;
  TrajectorySpec b = a;
  b.plane_angle = deg2rad(45.0);
  TrajectorySpec c;
  c.family = TrajectoryFamily::TrajII;
  c.tilt = deg2rad(45.0);
  c.sample_count = samples;
  return {a, b, c};
}

}  // namespace orthoglide
