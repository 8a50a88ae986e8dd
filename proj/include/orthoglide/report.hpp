#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "orthoglide/dyn_translation.hpp"
#include "orthoglide/dyn_wrist.hpp"
#include "orthoglide/errors.hpp"
#include "orthoglide/format.hpp"
#include "orthoglide/kin_translation.hpp"
#include "orthoglide/kin_wrist.hpp"
#include "orthoglide/model.hpp"

namespace orthoglide {

/// Peak requirements of one actuator over a run.
struct PeakRow {
  Actuator actuator = Actuator::X;
  double peak_speed = 0.0;
  double peak_accel = 0.0;
  double peak_effort = 0.0;
  double rms_effort = 0.0;
  double peak_power = 0.0;
};

using PeakTable = std::array<PeakRow, 5>;

inline bool is_linear(Actuator a) { return static_cast<int>(a) < 3; }

inline PeakTable extract_peaks(const PrismaticTrace& joints, const WristTrace& wrist,
                               const TranslationEffortTrace& forces, const WristEffortTrace& torques) {
  if (joints.empty() || wrist.empty() || forces.empty() || torques.empty()) throw EmptyTrace();
  if (joints.size() != forces.size() || wrist.size() != torques.size()) {
    throw MisalignedTraces("peak extraction needs effort traces aligned with joint traces");
  }

  PeakTable rows;
  for (int i = 0; i < 5; ++i) rows[i].actuator = kAllActuators[i];
  std::array<double, 5> sum_sq{};

  for (std::size_t n = 0; n < joints.size(); ++n) {
    for (int i = 0; i < 3; ++i) {
      auto& r = rows[i];
      r.peak_speed = std::max(r.peak_speed, std::abs(joints[n].rho_dot[i]));
      r.peak_accel = std::max(r.peak_accel, std::abs(joints[n].rho_ddot[i]));
      r.peak_effort = std::max(r.peak_effort, std::abs(forces[n].force[i]));
      r.peak_power = std::max(r.peak_power, forces[n].power[i]);
      sum_sq[i] += forces[n].force[i] * forces[n].force[i];
    }
  }
  for (std::size_t n = 0; n < wrist.size(); ++n) {
    for (int i = 0; i < 2; ++i) {
      auto& r = rows[3 + i];
      r.peak_speed = std::max(r.peak_speed, std::abs(wrist[n].theta_dot[i]));
      r.peak_accel = std::max(r.peak_accel, std::abs(wrist[n].theta_ddot[i]));
      r.peak_effort = std::max(r.peak_effort, std::abs(torques[n].torque[i]));
      r.peak_power = std::max(r.peak_power, torques[n].power[i]);
      sum_sq[3 + i] += torques[n].torque[i] * torques[n].torque[i];
    }
  }
  for (int i = 0; i < 5; ++i) {
    const double count = static_cast<double>(i < 3 ? joints.size() : wrist.size());
    rows[i].rms_effort = std::sqrt(sum_sq[i] / count);
  }
  return rows;
}

struct Margins {
  double speed = 1.0;
  double peak_effort = 1.0;
  double continuous_effort = 1.0;
  double power = 1.0;

  bool all_non_negative() const {
    return speed >= 0.0 && peak_effort >= 0.0 && continuous_effort >= 0.0 && power >= 0.0;
  }
};

inline double margin(double limit, double demand) { return (limit - demand) / limit; }

struct SizingRow {
  PeakRow peaks;
  MotorSpec motor;
  Margins margins;
  bool pass = true;
};

struct SizingReport {
  std::array<SizingRow, 5> rows;

  bool all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const SizingRow& r) { return r.pass; });
  }
};

inline SizingReport motor_check(const PeakTable& peaks, const std::map<std::string, MotorSpec>& motors,
                                const std::map<Actuator, std::string>& assignment) {
  SizingReport report;
  for (int i = 0; i < 5; ++i) {
    const auto& p = peaks[i];
    auto a = assignment.find(p.actuator);
    if (a == assignment.end()) throw UnassignedActuator(actuator_name(p.actuator));
    auto m = motors.find(a->second);
    if (m == motors.end()) throw UnassignedActuator(actuator_name(p.actuator));

    SizingRow& row = report.rows[i];
    row.peaks = p;
    row.motor = m->second;
    row.margins.speed = margin(row.motor.max_speed, p.peak_speed);
    row.margins.peak_effort = margin(row.motor.peak_effort, p.peak_effort);
    row.margins.continuous_effort = margin(row.motor.continuous_effort, p.rms_effort);
    row.margins.power = margin(row.motor.rated_power, p.peak_power);
    row.pass = row.margins.all_non_negative();
  }
  return report;
}

inline SizingReport motor_check(const PeakTable& peaks, const MachineModel& model) {
  return motor_check(peaks, model.motors, model.assignment);
}

/// Human-readable table, 3 significant digits.
inline std::string format_report(const SizingReport& report) {
  std::ostringstream out;
  out << "actuator  motor       speed     accel     effort    rms       power[W]  "
         "m_speed  m_peak   m_cont   m_power  verdict\n";
  auto col = [&](const std::string& s, std::size_t w) {
    out << s;
    for (std::size_t i = s.size(); i < w; ++i) out << ' ';
  };
  for (const auto& r : report.rows) {
    col(actuator_name(r.peaks.actuator), 10);
    col(r.motor.name, 12);
    col(format_3sig(r.peaks.peak_speed), 10);
    col(format_3sig(r.peaks.peak_accel), 10);
    col(format_3sig(r.peaks.peak_effort), 10);
    col(format_3sig(r.peaks.rms_effort), 10);
    col(format_3sig(r.peaks.peak_power), 10);
    col(format_3sig(r.margins.speed), 9);
    col(format_3sig(r.margins.peak_effort), 9);
    col(format_3sig(r.margins.continuous_effort), 9);
    col(format_3sig(r.margins.power), 9);
    out << (r.pass ? "pass" : "FAIL") << '\n';
  }
  out << "units: linear axes m/s, m/s^2, N; wrist rad/s, rad/s^2, N*m\n";
  out << "overall: " << (report.all_pass() ? "pass" : "FAIL") << '\n';
  return out.str();
}

}  // namespace orthoglide
