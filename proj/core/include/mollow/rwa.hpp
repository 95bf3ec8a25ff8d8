#pragma once

#include "mollow/floquet.hpp"
#include "mollow/model.hpp"
#include "mollow/pauli.hpp"

namespace mollow {

// Closed-form rotating-wave treatment in the second rotating frame. The
// static field of the first frame points along x' (tilted by beta when the
// carrier is detuned); the co-rotating half of the modulation survives as a
// static transverse field of strength eps_eff/2.
struct RwaSolution {
  double omega_R = 0.0;       // sqrt(Omega^2 + delta^2)
  double beta = 0.0;          // tilt angle, sin(beta) = delta / Omega_R
  double eps_eff = 0.0;       // amplitude scheme: eps_m; phase: eps_m*w_m/Omega_R
  double delta_lambda = 0.0;  // sqrt(eps_eff^2 + (w_m - Omega_R)^2)
  Vec3 x_axis;                // sigma_x' direction
  Vec3 y_axis;                // sigma_y
  Vec3 z_axis;                // sigma_z' direction
  Mat2 h2;                    // static second-frame Hamiltonian
};

RwaSolution rwa_solve(const DriveConfig& cfg);

// The three RWA mode frequencies {w_m - dl, w_m, w_m + dl} (rad/us).
std::array<double, 3> rwa_triplet(const DriveConfig& cfg);

Mat2 second_frame_hamiltonian(const DriveConfig& cfg);

// Exact composition of the two closed-form rotations; unitary by construction.
TimeTrace rwa_evolution(const DriveConfig& cfg, const InitialState& psi0,
                        const TraceGrid& grid);

// Closed-form mode amplitudes of the RWA evolution (lines at 0, dl, w_m,
// w_m +- dl only).
ModeSpectrum rwa_mode_spectrum(const DriveConfig& cfg, const InitialState& psi0);

// The paper-style comparison baseline: same Floquet pipeline, but with the
// counter-rotating parts of the Fourier blocks zeroed after rotating to the
// frame whose static field lies along z. Block-diagonal by construction, so
// amplitudes vanish for n >= 2.
ModeSpectrum rwa_floquet_spectrum(const DriveConfig& cfg, const InitialState& psi0,
                                  int K);

// Mode spectrum generated by evolving under an arbitrary static second-frame
// Hamiltonian (used by both the RWA and the first-order effective model).
ModeSpectrum static_frame_mode_spectrum(const Mat2& h_static, const Vec3& rot_axis,
                                        double omega_mod, const InitialState& psi0);

}  // namespace mollow
