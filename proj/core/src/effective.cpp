#include "mollow/effective.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "mollow/rwa.hpp"

namespace mollow {

namespace {

void require_resonant_zero_detuning(const DriveConfig& cfg, bool need_resonance) {
  require_valid(cfg);
  if (cfg.delta_mhz != 0.0)
    throw std::invalid_argument(
        "effective model: only valid at zero detuning (delta = 0)");
  if (!(cfg.omega_main_mhz > 0))
    throw std::invalid_argument("effective model: requires omega_main > 0");
  if (need_resonance &&
      std::abs(cfg.omega_main_mhz - cfg.omega_mod_mhz) >
          1e-12 * cfg.omega_mod_mhz)
    throw std::invalid_argument(
        "effective model: this correction assumes omega_main == omega_mod");
}

}  // namespace

Mat2 effective_hamiltonian(const DriveConfig& cfg) {
  require_resonant_zero_detuning(cfg, false);
  const double eps = cfg.eps_mod();
  const double omega = cfg.omega_main();
  return 0.5 * eps * sigma_y() +
         (eps * eps / (8.0 * omega) + 0.5 * (omega - cfg.omega_mod())) * sigma_x();
}

double splitting_shift(const DriveConfig& cfg) {
  require_resonant_zero_detuning(cfg, true);
  const double eps = cfg.eps_mod();
  const double omega = cfg.omega_main();
  return eps * eps * eps / (32.0 * omega * omega);
}

double resonance_compensation(const DriveConfig& cfg) {
  require_resonant_zero_detuning(cfg, false);
  const double wm = cfg.omega_mod();
  const double eps = cfg.eps_mod();
  const double disc = wm * wm - eps * eps;
  if (disc < 0)
    throw std::invalid_argument(
        "resonance_compensation: no real root (eps_mod >= omega_mod)");
  return 0.5 * (wm + std::sqrt(disc));
}

TiltAngle tilt_angle(const DriveConfig& cfg) {
  require_resonant_zero_detuning(cfg, true);
  TiltAngle t;
  t.small_angle = cfg.eps_mod() / (4.0 * cfg.omega_main());
  t.radians = std::atan(t.small_angle);
  return t;
}

double AmpShiftPredictions::center_for(InitAxis axis) const {
  switch (axis) {
    case InitAxis::X: return center_x;
    case InitAxis::Y: return center_y;
    default: return center_z_perp;
  }
}

AmpShiftPredictions amplitude_shift_predictions(const DriveConfig& cfg) {
  require_resonant_zero_detuning(cfg, true);
  const double ratio = cfg.eps_mod() / cfg.omega_main();
  const double rt_pi = std::sqrt(pi);
  const double rt2 = std::sqrt(2.0);
  AmpShiftPredictions p;
  p.center_x = rt_pi / (8.0 * rt2) * ratio;
  p.center_y = rt_pi / (32.0 * rt2) * ratio * ratio;
  p.center_z_perp = 0.0;
  p.side_plus = rt_pi / (16.0 * rt2) * ratio;
  p.side_minus = -p.side_plus;
  return p;
}

CorrectionReport correction_report(const DriveConfig& cfg) {
  CorrectionReport r;
  r.h_eff = effective_hamiltonian(cfg);
  if (std::abs(cfg.omega_main_mhz - cfg.omega_mod_mhz) <=
      1e-12 * cfg.omega_mod_mhz) {
    r.delta_eps = splitting_shift(cfg);
    r.tilt = tilt_angle(cfg).radians;
    r.amp_shifts = amplitude_shift_predictions(cfg);
  } else {
    // off resonance only the splitting of h_eff vs the RWA value is defined
    const PauliDecomp d = pauli_decompose(r.h_eff);
    r.delta_eps = 2.0 * d.v.norm() -
                  std::hypot(cfg.eps_mod(), cfg.omega_main() - cfg.omega_mod());
    r.tilt = std::atan2(d.v.x(), d.v.y());
  }
  r.omega_star = resonance_compensation(cfg);
  return r;
}

std::string report_to_json(const CorrectionReport& report) {
  nlohmann::json j;
  const PauliDecomp d = pauli_decompose(report.h_eff);
  j["h_eff"] = {{"x_MHz", to_mhz(d.v.x())},
                {"y_MHz", to_mhz(d.v.y())},
                {"z_MHz", to_mhz(d.v.z())}};
  j["delta_eps_MHz"] = to_mhz(report.delta_eps);
  j["tilt_rad"] = report.tilt;
  j["omega_star_MHz"] = to_mhz(report.omega_star);
  j["amp_shifts"] = {{"center_x", report.amp_shifts.center_x},
                     {"center_y", report.amp_shifts.center_y},
                     {"center_z", report.amp_shifts.center_z_perp},
                     {"side_plus", report.amp_shifts.side_plus},
                     {"side_minus", report.amp_shifts.side_minus}};
  return j.dump(2) + "\n";
}

ModeSpectrum effective_mode_spectrum(const DriveConfig& cfg,
                                     const InitialState& psi0) {
  const Mat2 h = effective_hamiltonian(cfg);
  return static_frame_mode_spectrum(h, Vec3(1, 0, 0), cfg.omega_mod(), psi0);
}

}  // namespace mollow
