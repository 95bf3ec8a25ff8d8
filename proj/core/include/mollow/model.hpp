#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mollow/pauli.hpp"
#include "mollow/units.hpp"

namespace mollow {

enum class Scheme { AmplitudeMod, PhaseMod };
enum class Axis { X, Y, Z };

const char* to_string(Scheme s);
const char* to_string(Axis a);

// Optional second modulation tone eps2*cos(harmonic*omega_mod*t) along `axis`,
// used to model drive-chain saturation.
struct ExtraTone {
  double eps2_mhz = 0.0;
  int harmonic = 2;
  Axis axis = Axis::Y;

  double eps2() const { return rad_per_us(eps2_mhz); }
  bool operator==(const ExtraTone&) const = default;
};

struct LabFrame {
  double omega0_mhz = 0.0;  // static splitting
  double omega_mhz = 0.0;   // carrier frequency
  double omega0() const { return rad_per_us(omega0_mhz); }
  double omega() const { return rad_per_us(omega_mhz); }
  bool operator==(const LabFrame&) const = default;
};

// Full drive parameter set. Frequencies are stored as entered (linear MHz) so
// that file round trips are bit exact; all physics goes through the angular
// accessors (rad/us).
struct DriveConfig {
  double delta_mhz = 0.0;       // detuning delta = omega - omega0
  double omega_main_mhz = 0.0;  // Omega >= 0
  double omega_mod_mhz = 0.0;   // omega_m > 0
  double eps_mod_mhz = 0.0;     // eps_m >= 0
  double phase = 0.0;           // phi, radians in [0, 2*pi)
  Scheme scheme = Scheme::AmplitudeMod;
  std::optional<ExtraTone> extra_tone;
  std::optional<double> clip_level_mhz;  // lab waveform ceiling, same units as drive
  std::optional<LabFrame> lab_frame;

  double delta() const { return rad_per_us(delta_mhz); }
  double omega_main() const { return rad_per_us(omega_main_mhz); }
  double omega_mod() const { return rad_per_us(omega_mod_mhz); }
  double eps_mod() const { return rad_per_us(eps_mod_mhz); }
  double clip_level() const { return rad_per_us(*clip_level_mhz); }

  double rabi_effective() const;  // Omega_R = sqrt(Omega^2 + delta^2)

  // Set when omega0 < 10*max(Omega, eps_m): the first rotating-wave step is
  // questionable but deliberately not rejected.
  bool lab_frame_rwa_warning() const;

  bool operator==(const DriveConfig&) const = default;
};

struct Violation {
  std::string field;
  std::string rule;
};

// Empty iff all DriveConfig invariants hold. Never throws.
std::vector<Violation> validate(const DriveConfig& cfg);

// Throws std::invalid_argument listing all violations.
void require_valid(const DriveConfig& cfg);

// State cos(theta/2)|0> + e^{i phi_s} sin(theta/2)|1>, given in the first
// rotating frame.
struct InitialState {
  double theta = 0.0;
  double phi_s = 0.0;

  Vec2 amplitudes() const;
  Vec3 bloch() const;
  bool operator==(const InitialState&) const = default;
};

InitialState bloch_to_state(const Vec3& b);  // throws on non-unit vector
Vec3 state_to_bloch(const InitialState& s);

enum class Envelope { None, Gaussian, Exponential };

const char* to_string(Envelope e);

// Phenomenological per-mode decay, applied multiplicatively to each frequency
// component of the reconstructed population.
struct DecayModel {
  Envelope envelope = Envelope::None;
  double default_tau_us = 1.0;
  std::map<std::pair<int, int>, double> tau_us;  // (i, n) -> tau

  double tau_for(int i, int n) const;
  double envelope_at(double t, int i, int n) const;  // envelope_at(0,.,.) == 1
  std::vector<Violation> validate() const;
};

// Uniform time grid, times in us.
struct TraceGrid {
  double t0_us = 0.0;
  double dt_us = 1e-3;
  int samples = 0;

  double time(int k) const { return t0_us + dt_us * k; }
};

// Sampled population P0(t) on a uniform grid.
struct TimeTrace {
  double t0_us = 0.0;
  double dt_us = 0.0;
  std::vector<double> values;

  double time(int k) const { return t0_us + dt_us * k; }
  int size() const { return static_cast<int>(values.size()); }
  TraceGrid grid() const {
    return TraceGrid{t0_us, dt_us, static_cast<int>(values.size())};
  }
};

// ---------------------------------------------------------------------------
// Config document I/O (flat JSON, linear MHz at the boundary, unknown keys
// rejected). See README for the schema.

struct ConfigDocument {
  DriveConfig drive;
  InitialState initial_state;
  bool operator==(const ConfigDocument&) const = default;
};

ConfigDocument parse_config(const std::string& json_text);
ConfigDocument load_config(const std::string& path);
std::string config_to_json(const ConfigDocument& doc);

// Apply dotted-key overrides ("eps_mod_MHz=1.0", "extra_tone.eps2_MHz=0.2")
// on top of a config document's JSON form, then re-parse (re-validated).
ConfigDocument apply_overrides(const ConfigDocument& doc,
                               const std::vector<std::string>& overrides);

}  // namespace mollow
