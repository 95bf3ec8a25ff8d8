#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mollow/effective.hpp"
#include "mollow/floquet.hpp"
#include "mollow/model.hpp"
#include "mollow/propagator.hpp"
#include "mollow/rwa.hpp"
#include "mollow/spectral.hpp"

namespace mollow {

enum class SweepAxis { Phase, Theta, OmegaMain, EpsMod };
enum class ThetaPlane { ZY, ZX, XY };
enum class ModelTag { Floquet, Rwa, RwaFloquet, Effective, Trotter };

const char* to_string(SweepAxis a);
const char* to_string(ThetaPlane p);
const char* to_string(ModelTag m);
ModelTag model_tag_from_string(const std::string& s);

struct SweepOutputs {
  bool spectrum = true;
  bool fit = false;
  bool modes = true;
};

struct SweepSpec {
  DriveConfig base;
  InitialState psi0;
  SweepAxis axis = SweepAxis::Phase;
  ThetaPlane plane = ThetaPlane::ZY;  // used by the Theta axis
  std::vector<double> grid;           // MHz for frequency axes, rad for angles
  std::vector<ModelTag> models;
  SweepOutputs outputs;
  ZoneConvention convention = ZoneConvention::FirstZone;
  int n_max = 5;
  int K = -1;  // -1: converged per sweep (max over probe points)
  DecayModel decay;
  // Fig-S1-style saturation tone that scales with the swept eps_m:
  // eps2 = ratio * eps_mod at every grid point.
  std::optional<double> extra_tone_eps2_ratio;
  TraceGrid trace{0.0, 0.004, 1001};
  double trotter_dt_us = 2e-4;
  int fit_components = 3;
};

std::vector<Violation> validate(const SweepSpec& spec);

// The per-point drive/initial state a sweep axis value resolves to.
DriveConfig config_at(const SweepSpec& spec, double value);
InitialState state_at(const SweepSpec& spec, double value);

struct TraceDigest {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct PointRecord {
  double sweep_value = 0.0;
  int K_used = 0;
  std::map<ModelTag, ModeSpectrum> spectra;
  std::map<ModelTag, FitResult> fits;
  std::map<ModelTag, TraceDigest> digests;
  std::map<ModelTag, Spectrum> ffts;  // in memory only (heatmap export)
  std::map<ModelTag, std::string> errors;
  double runtime_ms = 0.0;  // never exported
};

struct SweepResult {
  SweepSpec spec;
  std::vector<PointRecord> points;
};

// Run every requested model at every grid point. Heavy per-point work may run
// on `jobs` threads; results are assembled in grid order and the Smooth
// quasienergy continuation is a final serial left-to-right pass, so the
// output is independent of the job count. Per-point failures are recorded
// and the sweep continues.
SweepResult run_sweep(const SweepSpec& spec, int jobs = 1);

// Single-point multi-model evaluation (the `compare` pipeline).
PointRecord solve_point(const DriveConfig& cfg, const InitialState& psi0,
                        const std::vector<ModelTag>& models,
                        const SweepOutputs& outputs, ZoneConvention convention,
                        int K, int n_max, const DecayModel& decay,
                        const TraceGrid& trace, double trotter_dt_us,
                        int fit_components);

struct ModeDeviation {
  int i = 0;
  int n = 0;
  double freq_dev = 0.0;  // |w_a - w_b|, rad/us
  double amp_dev = 0.0;   // |amp_a - amp_b|
};

struct ModelComparison {
  ModelTag model_a;
  ModelTag model_b;
  std::vector<ModeDeviation> modes;
  double asymmetry_a = 0.0;
  double asymmetry_b = 0.0;
};

// A = (|a_{+1,1}| - |a_{-1,1}|) / (|a_{+1,1}| + |a_{-1,1}|); 0 when empty.
double sideband_asymmetry(const ModeSpectrum& spec);

ModelComparison compare_models(const PointRecord& point, ModelTag a, ModelTag b);

// Scenario presets reproducing the published figures.
SweepSpec scenario(const std::string& name);
std::vector<std::string> scenario_names();

// Long CSV: sweep_value,model,i,n,freq_MHz,amp,phase_rad
std::string sweep_to_csv(const SweepResult& result);
// Heatmap CSV for one model: sweep_value,f_MHz,abs
std::string sweep_to_heatmap_csv(const SweepResult& result, ModelTag model);
// Nested JSON; import(export(x)) re-exports byte-identically.
std::string sweep_to_json(const SweepResult& result);
SweepResult sweep_from_json(const std::string& text);
std::string spec_to_json(const SweepSpec& spec);
SweepSpec spec_from_json(const std::string& text);

}  // namespace mollow
