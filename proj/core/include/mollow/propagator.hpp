#pragma once

#include "mollow/model.hpp"
#include "mollow/pauli.hpp"

namespace mollow {

enum class FrameTag { Rotating, Lab };

const char* to_string(FrameTag f);

// Sampled drive amplitude. Lab frame: the full transverse waveform (carrier
// included). Rotating frame: the time-dependent coefficient of the modulation
// term in the interaction Hamiltonian.
struct Waveform {
  double t0_us = 0.0;
  double dt_us = 0.0;
  std::vector<double> samples;  // rad/us
  FrameTag frame = FrameTag::Lab;

  double time(int k) const { return t0_us + dt_us * k; }
};

// Drive value at an arbitrary time, clipping applied (lab frame).
double lab_drive(const DriveConfig& cfg, double t);

// Full 2x2 lab-frame Hamiltonian (omega0/2 sigma_z + drive sigma_x).
Mat2 lab_hamiltonian(const DriveConfig& cfg, double t);

// Throws when the grid undersamples the drive (dt > 1/(20 f_max)).
Waveform synthesize_waveform(const DriveConfig& cfg, const TraceGrid& grid,
                             FrameTag frame);

struct TrotterOptions {
  double dt_step_us = 2e-4;
  FrameTag frame = FrameTag::Rotating;
  // Phase-modulated drives enter the interaction frame through a
  // transformation that is not the identity at t = 0. When true (default)
  // psi0 is taken to be the interaction-frame state of that convention and a
  // lab run starts from U(0) psi0; when false the lab run starts from psi0
  // unchanged.
  bool compensate_phase_frame = true;
};

// Piecewise-constant exact evolution: per step, the closed-form exponential
// of the midpoint-sampled Hamiltonian. Unitary by construction; second-order
// accurate in dt_step.
TimeTrace trotter_evolve(const DriveConfig& cfg, const InitialState& psi0,
                         const TraceGrid& grid, const TrotterOptions& opts = {});

struct TraceDistance {
  double sup_norm = 0.0;
  double rms = 0.0;
};

// Throws on grid mismatch.
TraceDistance compare_traces(const TimeTrace& a, const TimeTrace& b);

std::string trace_to_csv(const TimeTrace& trace);
std::string waveform_to_csv(const Waveform& w);

}  // namespace mollow
