#include "mollow/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mollow {

double wrap_angle(double phi) {
  double w = std::fmod(phi, two_pi);
  if (w < 0) w += two_pi;
  // fmod can return exactly two_pi after the correction when phi is a tiny
  // negative number; fold that back to zero.
  if (w >= two_pi) w = 0.0;
  return w;
}

const char* to_string(Scheme s) {
  return s == Scheme::AmplitudeMod ? "amplitude" : "phase";
}

const char* to_string(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    default: return "z";
  }
}

const char* to_string(Envelope e) {
  switch (e) {
    case Envelope::None: return "none";
    case Envelope::Gaussian: return "gaussian";
    default: return "exponential";
  }
}

double DriveConfig::rabi_effective() const {
  return std::hypot(omega_main(), delta());
}

bool DriveConfig::lab_frame_rwa_warning() const {
  if (!lab_frame) return false;
  return lab_frame->omega0() < 10.0 * std::max(omega_main(), eps_mod());
}

std::vector<Violation> validate(const DriveConfig& cfg) {
  std::vector<Violation> out;
  auto finite = [&](double v, const char* field) {
    if (!std::isfinite(v)) out.push_back({field, "must be finite"});
  };
  finite(cfg.delta_mhz, "delta_MHz");
  finite(cfg.omega_main_mhz, "omega_main_MHz");
  finite(cfg.omega_mod_mhz, "omega_mod_MHz");
  finite(cfg.eps_mod_mhz, "eps_mod_MHz");
  finite(cfg.phase, "phase_rad");

  if (cfg.omega_main_mhz < 0)
    out.push_back({"omega_main_MHz", "omega_main must be non-negative"});
  if (!(cfg.omega_mod_mhz > 0))
    out.push_back({"omega_mod_MHz", "omega_mod must be positive"});
  if (cfg.eps_mod_mhz < 0)
    out.push_back({"eps_mod_MHz", "eps_mod must be non-negative"});
  if (cfg.phase < 0 || cfg.phase >= two_pi)
    out.push_back({"phase_rad", "phase must lie in [0, 2*pi)"});
  if (cfg.scheme == Scheme::PhaseMod && cfg.omega_main_mhz == 0)
    out.push_back({"omega_main_MHz", "phase modulation requires omega_main > 0"});

  if (cfg.extra_tone) {
    finite(cfg.extra_tone->eps2_mhz, "extra_tone.eps2_MHz");
    if (cfg.extra_tone->eps2_mhz < 0)
      out.push_back({"extra_tone.eps2_MHz", "eps2 must be non-negative"});
    if (cfg.extra_tone->harmonic < 2)
      out.push_back({"extra_tone.harmonic", "harmonic must be an integer >= 2"});
  }
  if (cfg.clip_level_mhz) {
    finite(*cfg.clip_level_mhz, "clip_level");
    if (!(*cfg.clip_level_mhz > 0))
      out.push_back({"clip_level", "clip_level positive"});
  }
  if (cfg.lab_frame) {
    finite(cfg.lab_frame->omega0_mhz, "lab_frame.omega0_MHz");
    finite(cfg.lab_frame->omega_mhz, "lab_frame.omega_MHz");
    if (!(cfg.lab_frame->omega0_mhz > 0))
      out.push_back({"lab_frame.omega0_MHz", "omega0 must be positive"});
    if (!(cfg.lab_frame->omega_mhz > 0))
      out.push_back({"lab_frame.omega_MHz", "omega must be positive"});
  }
  return out;
}

void require_valid(const DriveConfig& cfg) {
  const auto v = validate(cfg);
  if (v.empty()) return;
  std::ostringstream msg;
  msg << "invalid drive config:";
  for (const auto& x : v) msg << " [" << x.field << ": " << x.rule << "]";
  throw std::invalid_argument(msg.str());
}

Vec2 InitialState::amplitudes() const {
  return Vec2(std::cos(0.5 * theta),
              std::exp(cplx(0, phi_s)) * std::sin(0.5 * theta));
}

Vec3 InitialState::bloch() const {
  return Vec3(std::sin(theta) * std::cos(phi_s),
              std::sin(theta) * std::sin(phi_s), std::cos(theta));
}

InitialState bloch_to_state(const Vec3& b) {
  if (std::abs(b.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("bloch_to_state: vector is not unit length");
  const Vec3 u = b / b.norm();
  InitialState s;
  const double rho = std::hypot(u.x(), u.y());
  s.theta = std::atan2(rho, u.z());
  s.phi_s = rho > 0 ? std::atan2(u.y(), u.x()) : 0.0;
  if (s.phi_s < 0) s.phi_s += two_pi;
  return s;
}

Vec3 state_to_bloch(const InitialState& s) { return s.bloch(); }

double DecayModel::tau_for(int i, int n) const {
  auto it = tau_us.find({i, n});
  return it != tau_us.end() ? it->second : default_tau_us;
}

double DecayModel::envelope_at(double t, int i, int n) const {
  if (envelope == Envelope::None) return 1.0;
  const double tau = tau_for(i, n);
  if (envelope == Envelope::Gaussian) return std::exp(-(t * t) / (tau * tau));
  return std::exp(-std::abs(t) / tau);
}

std::vector<Violation> DecayModel::validate() const {
  std::vector<Violation> out;
  if (envelope == Envelope::None) return out;
  if (!(default_tau_us > 0))
    out.push_back({"decay.default_tau_us", "tau must be positive"});
  for (const auto& [key, tau] : tau_us) {
    if (!(tau > 0)) {
      std::ostringstream f;
      f << "decay.tau[" << key.first << "," << key.second << "]";
      out.push_back({f.str(), "tau must be positive"});
    }
  }
  return out;
}

}  // namespace mollow
