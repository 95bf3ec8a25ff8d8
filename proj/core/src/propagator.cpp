#include "mollow/propagator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mollow/floquet.hpp"

namespace mollow {

const char* to_string(FrameTag f) {
  return f == FrameTag::Rotating ? "rotating" : "lab";
}

namespace {

double clip(double x, const std::optional<double>& level_mhz) {
  if (!level_mhz) return x;
  const double c = rad_per_us(*level_mhz);
  return std::clamp(x, -c, c);
}

double unclipped_lab_drive(const DriveConfig& cfg, double t) {
  const LabFrame& lab = *cfg.lab_frame;
  const double w = lab.omega();
  double drive;
  if (cfg.scheme == Scheme::AmplitudeMod) {
    drive = cfg.omega_main() * std::cos(w * t) -
            2.0 * cfg.eps_mod() * std::sin(w * t) *
                std::cos(cfg.omega_mod() * t + cfg.phase);
  } else {
    drive = cfg.omega_main() *
            std::cos(w * t + 2.0 * cfg.eps_mod() / cfg.omega_main() *
                                 std::cos(cfg.omega_mod() * t + cfg.phase));
  }
  if (cfg.extra_tone && cfg.extra_tone->eps2_mhz > 0) {
    const ExtraTone& tone = *cfg.extra_tone;
    const double mod = std::cos(tone.harmonic * cfg.omega_mod() * t);
    if (tone.axis == Axis::Y)
      drive += -2.0 * tone.eps2() * std::sin(w * t) * mod;
    else if (tone.axis == Axis::X)
      drive += 2.0 * tone.eps2() * std::cos(w * t) * mod;
    else
      throw std::invalid_argument(
          "lab waveform: a sigma_z extra tone cannot be produced by the "
          "transverse drive");
  }
  return drive;
}

// Highest drive frequency (linear MHz) present in the synthesized waveform.
double max_frequency_mhz(const DriveConfig& cfg, FrameTag frame) {
  const int h = cfg.extra_tone ? cfg.extra_tone->harmonic : 1;
  const double mod_mhz = h * cfg.omega_mod_mhz;
  if (frame == FrameTag::Rotating) return std::max(mod_mhz, 1e-9);
  return cfg.lab_frame->omega_mhz + mod_mhz;
}

}  // namespace

double lab_drive(const DriveConfig& cfg, double t) {
  return clip(unclipped_lab_drive(cfg, t), cfg.clip_level_mhz);
}

Mat2 lab_hamiltonian(const DriveConfig& cfg, double t) {
  if (!cfg.lab_frame)
    throw std::invalid_argument("lab_hamiltonian: config has no lab_frame");
  return 0.5 * cfg.lab_frame->omega0() * sigma_z() + lab_drive(cfg, t) * sigma_x();
}

Waveform synthesize_waveform(const DriveConfig& cfg, const TraceGrid& grid,
                             FrameTag frame) {
  require_valid(cfg);
  if (frame == FrameTag::Lab && !cfg.lab_frame)
    throw std::invalid_argument("synthesize_waveform: config has no lab_frame");
  if (!(grid.dt_us > 0) || grid.samples < 1)
    throw std::invalid_argument("synthesize_waveform: bad grid");

  const double fmax = max_frequency_mhz(cfg, frame);
  if (grid.dt_us > 1.0 / (20.0 * fmax)) {
    std::ostringstream msg;
    msg << "synthesize_waveform: grid dt " << grid.dt_us
        << " us undersamples the drive (need dt <= " << 1.0 / (20.0 * fmax)
        << " us)";
    throw std::invalid_argument(msg.str());
  }

  Waveform w;
  w.t0_us = grid.t0_us;
  w.dt_us = grid.dt_us;
  w.frame = frame;
  w.samples.resize(grid.samples);
  for (int k = 0; k < grid.samples; ++k) {
    const double t = grid.time(k);
    if (frame == FrameTag::Lab) {
      w.samples[k] = lab_drive(cfg, t);
    } else {
      // the Eq.-(1)/(2) modulation coefficient; tones on the same axis add
      double c;
      if (cfg.scheme == Scheme::AmplitudeMod)
        c = cfg.eps_mod() * std::cos(cfg.omega_mod() * t + cfg.phase);
      else
        c = cfg.eps_mod() * (cfg.omega_mod() / cfg.omega_main()) *
            std::sin(cfg.omega_mod() * t + cfg.phase);
      const Axis main_axis =
          cfg.scheme == Scheme::AmplitudeMod ? Axis::Y : Axis::Z;
      if (cfg.extra_tone && cfg.extra_tone->axis == main_axis)
        c += cfg.extra_tone->eps2() *
             std::cos(cfg.extra_tone->harmonic * cfg.omega_mod() * t);
      w.samples[k] = clip(c, cfg.clip_level_mhz);
    }
  }
  return w;
}

TimeTrace trotter_evolve(const DriveConfig& cfg, const InitialState& psi0,
                         const TraceGrid& grid, const TrotterOptions& opts) {
  require_valid(cfg);
  if (!(grid.dt_us > 0) || grid.samples < 1)
    throw std::invalid_argument("trotter_evolve: bad grid");
  if (!(opts.dt_step_us > 0) || opts.dt_step_us > grid.dt_us)
    throw std::invalid_argument("trotter_evolve: dt_step must be in (0, dt_grid]");
  if (opts.frame == FrameTag::Lab && !cfg.lab_frame)
    throw std::invalid_argument("trotter_evolve: config has no lab_frame");

  const double fmax_mhz =
      opts.frame == FrameTag::Lab
          ? cfg.lab_frame->omega0_mhz + max_frequency_mhz(cfg, FrameTag::Lab)
          : std::max({cfg.omega_main_mhz, std::abs(cfg.delta_mhz),
                      max_frequency_mhz(cfg, FrameTag::Rotating),
                      cfg.eps_mod_mhz, 1e-9});
  if (opts.dt_step_us > 1.0 / (50.0 * fmax_mhz)) {
    std::ostringstream msg;
    msg << "trotter_evolve: dt_step " << opts.dt_step_us
        << " us too coarse (need dt_step <= " << 1.0 / (50.0 * fmax_mhz)
        << " us)";
    throw std::invalid_argument(msg.str());
  }

  Vec2 psi = psi0.amplitudes();
  if (opts.frame == FrameTag::Lab && cfg.scheme == Scheme::PhaseMod &&
      opts.compensate_phase_frame) {
    // U(0) = exp(-i (eps_m cos(phi) / Omega) sigma_z)
    const double c = cfg.eps_mod() * std::cos(cfg.phase) / cfg.omega_main();
    psi(0) *= std::exp(cplx(0, -c));
    psi(1) *= std::exp(cplx(0, c));
  }

  auto hamiltonian = [&](double t) {
    return opts.frame == FrameTag::Lab ? lab_hamiltonian(cfg, t)
                                       : interaction_hamiltonian(cfg, t);
  };

  TimeTrace trace;
  trace.t0_us = grid.t0_us;
  trace.dt_us = grid.dt_us;
  trace.values.resize(grid.samples);
  trace.values[0] = std::norm(psi(0));

  const int nsub = std::max(1, (int)std::ceil(grid.dt_us / opts.dt_step_us));
  const double h = grid.dt_us / nsub;
  for (int k = 1; k < grid.samples; ++k) {
    const double t_start = grid.time(k - 1);
    for (int s = 0; s < nsub; ++s) {
      const double t_mid = t_start + (s + 0.5) * h;
      psi = pauli_exp(hamiltonian(t_mid), h) * psi;
    }
    trace.values[k] = std::norm(psi(0));
  }
  return trace;
}

TraceDistance compare_traces(const TimeTrace& a, const TimeTrace& b) {
  const double scale = std::max(
      {std::abs(a.t0_us), std::abs(b.t0_us), a.dt_us, b.dt_us, 1e-30});
  if (a.size() != b.size() || std::abs(a.t0_us - b.t0_us) > 1e-12 * scale ||
      std::abs(a.dt_us - b.dt_us) > 1e-12 * scale)
    throw std::invalid_argument("compare_traces: grids differ");
  TraceDistance d;
  double acc = 0.0;
  for (int k = 0; k < a.size(); ++k) {
    const double diff = std::abs(a.values[k] - b.values[k]);
    d.sup_norm = std::max(d.sup_norm, diff);
    acc += diff * diff;
  }
  d.rms = a.size() ? std::sqrt(acc / a.size()) : 0.0;
  return d;
}

std::string trace_to_csv(const TimeTrace& trace) {
  std::ostringstream out;
  out << "t_us,value\n";
  char buf[128];
  for (int k = 0; k < trace.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", trace.time(k),
                  trace.values[k]);
    out << buf;
  }
  return out.str();
}

std::string waveform_to_csv(const Waveform& w) {
  std::ostringstream out;
  out << "t_us,value\n";
  char buf[128];
  for (size_t k = 0; k < w.samples.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n",
                  w.t0_us + w.dt_us * static_cast<double>(k), w.samples[k]);
    out << buf;
  }
  return out.str();
}

}  // namespace mollow
