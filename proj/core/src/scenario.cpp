#include <cmath>
#include <stdexcept>

#include "mollow/experiments.hpp"

namespace mollow {

namespace {

std::vector<double> linspace_step(double start, double step, int count) {
  std::vector<double> g(count);
  for (int k = 0; k < count; ++k) g[k] = start + step * k;
  return g;
}

DriveConfig drive_375() {
  DriveConfig cfg;
  cfg.omega_main_mhz = 3.75;
  cfg.omega_mod_mhz = 3.75;
  cfg.eps_mod_mhz = 2.08;
  cfg.scheme = Scheme::AmplitudeMod;
  return cfg;
}

SweepSpec phase_sweep_375() {
  SweepSpec spec;
  spec.base = drive_375();
  spec.psi0 = InitialState{0.0, 0.0};
  spec.axis = SweepAxis::Phase;
  spec.grid = linspace_step(0.0, two_pi / 48.0, 48);
  spec.models = {ModelTag::Floquet, ModelTag::Rwa, ModelTag::RwaFloquet};
  spec.convention = ZoneConvention::FirstZone;
  return spec;
}

SweepSpec state_sweep_375(ThetaPlane plane) {
  SweepSpec spec;
  spec.base = drive_375();
  spec.base.phase = 0.0;
  spec.psi0 = InitialState{0.0, 0.0};
  spec.axis = SweepAxis::Theta;
  spec.plane = plane;
  spec.grid = linspace_step(0.0, two_pi / 48.0, 48);
  spec.models = {ModelTag::Floquet, ModelTag::Rwa, ModelTag::RwaFloquet};
  spec.convention = ZoneConvention::FirstZone;
  return spec;
}

SweepSpec omega_sweep(double phase) {
  SweepSpec spec;
  spec.base = drive_375();
  spec.base.phase = phase;
  spec.base.extra_tone = ExtraTone{0.2, 2, Axis::Y};
  spec.psi0 = InitialState{0.0, 0.0};
  spec.axis = SweepAxis::OmegaMain;
  spec.grid = linspace_step(0.5, 0.125, 60);
  spec.models = {ModelTag::Floquet, ModelTag::Rwa, ModelTag::RwaFloquet};
  spec.convention = ZoneConvention::FirstZone;
  return spec;
}

SweepSpec eps_sweep(double phase) {
  SweepSpec spec;
  spec.base.omega_main_mhz = 3.0;
  spec.base.omega_mod_mhz = 3.0;
  spec.base.scheme = Scheme::PhaseMod;
  spec.base.phase = phase;
  spec.psi0 = InitialState{0.0, 0.0};
  spec.axis = SweepAxis::EpsMod;
  spec.grid = linspace_step(0.0, 0.15, 61);  // 0 .. 3*Omega
  spec.models = {ModelTag::Floquet, ModelTag::Rwa};
  spec.convention = ZoneConvention::Smooth;
  return spec;
}

}  // namespace

SweepSpec scenario(const std::string& name) {
  if (name == "fig1") {
    SweepSpec spec = phase_sweep_375();
    spec.grid = {0.0, 0.25 * pi, 0.5 * pi};
    spec.models = {ModelTag::Floquet, ModelTag::Rwa};
    return spec;
  }
  if (name == "fig2_phase") return phase_sweep_375();
  if (name == "fig2_state_zy") return state_sweep_375(ThetaPlane::ZY);
  if (name == "figB1_zx") return state_sweep_375(ThetaPlane::ZX);
  if (name == "figB1_xy") return state_sweep_375(ThetaPlane::XY);
  if (name == "fig3_phi0") return omega_sweep(0.0);
  if (name == "fig3_phiPiOver2") return omega_sweep(0.5 * pi);
  if (name == "fig4_phi0") return eps_sweep(0.0);
  if (name == "fig4_phiPiOver2") return eps_sweep(0.5 * pi);
  if (name == "figS1_saturation") {
    SweepSpec spec;
    spec.base.omega_main_mhz = 3.0;
    spec.base.omega_mod_mhz = 3.0;
    spec.base.scheme = Scheme::AmplitudeMod;
    spec.base.extra_tone = ExtraTone{0.0, 2, Axis::Y};
    spec.psi0 = InitialState{0.0, 0.0};
    spec.axis = SweepAxis::EpsMod;
    spec.grid = linspace_step(0.0, 0.1, 61);
    spec.models = {ModelTag::Floquet};
    spec.convention = ZoneConvention::Smooth;
    spec.extra_tone_eps2_ratio = 0.4;
    return spec;
  }
  throw std::invalid_argument("unknown scenario: " + name);
}

std::vector<std::string> scenario_names() {
  return {"fig1",           "fig2_phase",     "fig2_state_zy", "figB1_zx",
          "figB1_xy",       "fig3_phi0",      "fig3_phiPiOver2",
          "fig4_phi0",      "fig4_phiPiOver2", "figS1_saturation"};
}

}  // namespace mollow
