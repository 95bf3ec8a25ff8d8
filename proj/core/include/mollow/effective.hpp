#pragma once

#include <string>

#include "mollow/floquet.hpp"
#include "mollow/model.hpp"
#include "mollow/pauli.hpp"

namespace mollow {

// First-order static correction to the second-frame Hamiltonian at zero
// detuning: (eps_m/2) sigma_y + (eps_m^2 / 8 Omega) sigma_x
//         + ((Omega - w_m)/2) sigma_x.
// Throws unless delta == 0 (the stated validity domain).
Mat2 effective_hamiltonian(const DriveConfig& cfg);

// Splitting shift eps_m^3 / (32 Omega^2) at the resonance w_m == Omega.
double splitting_shift(const DriveConfig& cfg);

// Larger positive root of Omega^2 - w_m Omega + eps_m^2/4 = 0: the main-drive
// strength at which the first-order correction cancels the detuning term.
double resonance_compensation(const DriveConfig& cfg);

struct TiltAngle {
  double radians = 0.0;      // atan(eps_m / 4 Omega)
  double small_angle = 0.0;  // eps_m / 4 Omega
};
TiltAngle tilt_angle(const DriveConfig& cfg);

enum class InitAxis { X, Y, ZPerp };

// Predicted first-order shifts of |a_{i,1}| relative to the RWA values, for
// initial states along x, y, or perpendicular to both (z).
struct AmpShiftPredictions {
  double center_x = 0.0;
  double center_y = 0.0;
  double center_z_perp = 0.0;
  double side_plus = 0.0;   // opposite signs: the correction breaks the
  double side_minus = 0.0;  // sideband symmetry
  double center_for(InitAxis axis) const;
};
AmpShiftPredictions amplitude_shift_predictions(const DriveConfig& cfg);

struct CorrectionReport {
  Mat2 h_eff;
  double delta_eps = 0.0;   // splitting shift
  double tilt = 0.0;        // eigenaxis rotation away from y, in the xy plane
  double omega_star = 0.0;  // compensating main-drive strength
  AmpShiftPredictions amp_shifts;
};
CorrectionReport correction_report(const DriveConfig& cfg);
std::string report_to_json(const CorrectionReport& report);

// Mode spectrum of the evolution generated by the effective Hamiltonian
// (same two-rotation structure as the RWA solution).
ModeSpectrum effective_mode_spectrum(const DriveConfig& cfg,
                                     const InitialState& psi0);

}  // namespace mollow
