#include "mollow/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mollow {

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::Phase: return "phase";
    case SweepAxis::Theta: return "theta";
    case SweepAxis::OmegaMain: return "omega_main";
    default: return "eps_mod";
  }
}

const char* to_string(ThetaPlane p) {
  switch (p) {
    case ThetaPlane::ZY: return "ZY";
    case ThetaPlane::ZX: return "ZX";
    default: return "XY";
  }
}

const char* to_string(ModelTag m) {
  switch (m) {
    case ModelTag::Floquet: return "floquet";
    case ModelTag::Rwa: return "rwa";
    case ModelTag::RwaFloquet: return "rwa_floquet";
    case ModelTag::Effective: return "effective";
    default: return "trotter";
  }
}

ModelTag model_tag_from_string(const std::string& s) {
  if (s == "floquet") return ModelTag::Floquet;
  if (s == "rwa") return ModelTag::Rwa;
  if (s == "rwa_floquet") return ModelTag::RwaFloquet;
  if (s == "effective") return ModelTag::Effective;
  if (s == "trotter") return ModelTag::Trotter;
  throw std::invalid_argument("unknown model tag: " + s);
}

std::vector<Violation> validate(const SweepSpec& spec) {
  std::vector<Violation> out = validate(spec.base);
  if (spec.grid.size() < 2)
    out.push_back({"grid", "need at least 2 points"});
  for (size_t k = 1; k < spec.grid.size(); ++k)
    if (!(spec.grid[k] > spec.grid[k - 1])) {
      out.push_back({"grid", "grid must be strictly increasing"});
      break;
    }
  if (spec.models.empty()) out.push_back({"models", "need at least one model"});
  if (spec.n_max < 1) out.push_back({"n_max", "must be >= 1"});
  const auto dv = spec.decay.validate();
  out.insert(out.end(), dv.begin(), dv.end());
  if (spec.extra_tone_eps2_ratio) {
    if (*spec.extra_tone_eps2_ratio < 0)
      out.push_back({"extra_tone_eps2_ratio", "must be non-negative"});
    if (spec.axis != SweepAxis::EpsMod)
      out.push_back({"extra_tone_eps2_ratio", "only meaningful for eps_mod sweeps"});
  }
  // axis-resolved configs are checked per point in run_sweep; here just the
  // obviously broken axis values
  if (spec.axis == SweepAxis::OmegaMain || spec.axis == SweepAxis::EpsMod)
    for (double v : spec.grid)
      if (v < 0) {
        out.push_back({"grid", "frequency axis values must be non-negative"});
        break;
      }
  return out;
}

DriveConfig config_at(const SweepSpec& spec, double value) {
  DriveConfig cfg = spec.base;
  switch (spec.axis) {
    case SweepAxis::Phase: cfg.phase = wrap_angle(value); break;
    case SweepAxis::OmegaMain: cfg.omega_main_mhz = value; break;
    case SweepAxis::EpsMod: cfg.eps_mod_mhz = value; break;
    case SweepAxis::Theta: break;
  }
  if (spec.extra_tone_eps2_ratio) {
    ExtraTone tone = cfg.extra_tone.value_or(ExtraTone{});
    tone.eps2_mhz = *spec.extra_tone_eps2_ratio * cfg.eps_mod_mhz;
    cfg.extra_tone = tone;
  }
  return cfg;
}

InitialState state_at(const SweepSpec& spec, double value) {
  if (spec.axis != SweepAxis::Theta) return spec.psi0;
  switch (spec.plane) {
    case ThetaPlane::ZY: return InitialState{wrap_angle(value), 0.5 * pi};
    case ThetaPlane::ZX: return InitialState{wrap_angle(value), 0.0};
    default: return InitialState{0.5 * pi, wrap_angle(value)};
  }
}

namespace {

TraceDigest digest_of(const TimeTrace& trace) {
  TraceDigest d;
  if (trace.values.empty()) return d;
  d.min = d.max = trace.values.front();
  double acc = 0.0;
  for (double v : trace.values) {
    d.min = std::min(d.min, v);
    d.max = std::max(d.max, v);
    acc += v;
  }
  d.mean = acc / trace.size();
  return d;
}

FitEnvelope fit_envelope_for(const DecayModel& decay) {
  return decay.envelope == Envelope::Exponential ? FitEnvelope::Exponential
                                                 : FitEnvelope::Gaussian;
}

// Everything downstream of a model's time trace.
void attach_trace_outputs(PointRecord& rec, ModelTag tag, const TimeTrace& trace,
                          const SweepOutputs& outputs, int fit_components,
                          FitEnvelope fit_env) {
  rec.digests[tag] = digest_of(trace);
  if (outputs.spectrum)
    rec.ffts[tag] = fft_spectrum(trace, Window::Rect, 4, false);
  if (outputs.fit)
    rec.fits[tag] = fit_modes(trace, fit_components, fit_env);
}

}  // namespace

PointRecord solve_point(const DriveConfig& cfg, const InitialState& psi0,
                        const std::vector<ModelTag>& models,
                        const SweepOutputs& outputs, ZoneConvention convention,
                        int K, int n_max, const DecayModel& decay,
                        const TraceGrid& trace, double trotter_dt_us,
                        int fit_components) {
  PointRecord rec;
  const FitEnvelope fit_env = fit_envelope_for(decay);
  for (ModelTag tag : models) {
    try {
      switch (tag) {
        case ModelTag::Floquet: {
          SolveOptions opts;
          opts.K = K;
          opts.n_max = n_max;
          opts.convention = convention;
          const SolveResult res = solve_floquet(cfg, psi0, opts);
          rec.K_used = res.solution.K;
          rec.spectra[tag] = res.spectrum;
          break;
        }
        case ModelTag::Rwa:
          rec.spectra[tag] = rwa_mode_spectrum(cfg, psi0);
          break;
        case ModelTag::RwaFloquet:
          rec.spectra[tag] = rwa_floquet_spectrum(cfg, psi0, std::max(K, 8));
          break;
        case ModelTag::Effective:
          rec.spectra[tag] = effective_mode_spectrum(cfg, psi0);
          break;
        case ModelTag::Trotter: {
          TrotterOptions topts;
          topts.dt_step_us = trotter_dt_us;
          const TimeTrace tr = trotter_evolve(cfg, psi0, trace, topts);
          attach_trace_outputs(rec, tag, tr, outputs, fit_components, fit_env);
          break;
        }
      }
      if (tag != ModelTag::Trotter && rec.spectra.count(tag) &&
          (outputs.spectrum || outputs.fit)) {
        const TimeTrace tr =
            reconstruct_population(rec.spectra.at(tag), trace, decay);
        attach_trace_outputs(rec, tag, tr, outputs, fit_components, fit_env);
      }
    } catch (const std::exception& e) {
      rec.errors[tag] = e.what();
    }
  }
  return rec;
}

SweepResult run_sweep(const SweepSpec& spec, int jobs) {
  {
    const auto v = validate(spec);
    if (!v.empty()) {
      std::ostringstream msg;
      msg << "invalid sweep spec:";
      for (const auto& x : v) msg << " [" << x.field << ": " << x.rule << "]";
      throw std::invalid_argument(msg.str());
    }
  }
  const int npts = static_cast<int>(spec.grid.size());

  const bool wants_floquet =
      std::count(spec.models.begin(), spec.models.end(), ModelTag::Floquet) > 0;

  // One truncation order for the whole sweep (Smooth continuation compares
  // eigenvectors across points, so a common dimension keeps that exact).
  int K = spec.K;
  if (K < 0 && wants_floquet) {
    int best = 1;
    for (int probe : {0, npts / 2, npts - 1}) {
      const DriveConfig cfg = config_at(spec, spec.grid[probe]);
      try {
        best = std::max(best, converge_truncation(cfg, 1e-8));
      } catch (const std::exception&) {
        best = std::max(best, 64);
      }
    }
    K = best;
  }
  if (K < 0) K = 8;

  SweepResult result;
  result.spec = spec;
  result.spec.K = K;
  result.points.resize(npts);

  const bool smooth = spec.convention == ZoneConvention::Smooth;

  // Phase A: per-point work, parallel over grid points. Under the Smooth
  // convention the floquet spectra are deferred to the serial pass below, but
  // the eigendecompositions (the heavy part) are computed here.
  std::vector<std::unique_ptr<EigenSystem>> eigensystems(npts);
  std::vector<ModelTag> phase_a_models = spec.models;
  if (smooth && wants_floquet) {
    phase_a_models.erase(std::remove(phase_a_models.begin(), phase_a_models.end(),
                                     ModelTag::Floquet),
                         phase_a_models.end());
  }

  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int idx = next.fetch_add(1);
      if (idx >= npts) return;
      const auto t_start = std::chrono::steady_clock::now();
      const double value = spec.grid[idx];
      const DriveConfig cfg = config_at(spec, value);
      const InitialState psi0 = state_at(spec, value);
      PointRecord rec =
          solve_point(cfg, psi0, phase_a_models, spec.outputs, spec.convention,
                      K, spec.n_max, spec.decay, spec.trace, spec.trotter_dt_us,
                      spec.fit_components);
      rec.sweep_value = value;
      if (wants_floquet) {
        try {
          eigensystems[idx] = std::make_unique<EigenSystem>(
              eigensolve(assemble(fourier_components(cfg), K)));
          rec.K_used = K;
        } catch (const std::exception& e) {
          rec.errors[ModelTag::Floquet] = e.what();
        }
      }
      rec.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t_start)
                           .count();
      result.points[idx] = std::move(rec);
    }
  };

  const int nthreads = std::max(1, std::min(jobs, npts));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Phase B: serial left-to-right pass for the floquet spectra. FirstZone
  // points are independent; Smooth points continue the branch tracked at the
  // previous grid point.
  if (wants_floquet) {
    FloquetSolution previous;
    bool have_previous = false;
    for (int idx = 0; idx < npts; ++idx) {
      PointRecord& rec = result.points[idx];
      if (!eigensystems[idx]) continue;
      try {
        const DriveConfig cfg = config_at(spec, spec.grid[idx]);
        const InitialState psi0 = state_at(spec, spec.grid[idx]);
        const FloquetSolution sol = select_quasienergies(
            *eigensystems[idx], cfg.omega_mod(), spec.convention,
            smooth && have_previous ? &previous : nullptr);
        const InitialMatch match = match_initial_state(sol, psi0);
        rec.spectra[ModelTag::Floquet] = mode_amplitudes(sol, match, spec.n_max);
        if (spec.outputs.spectrum || spec.outputs.fit) {
          const TimeTrace tr = reconstruct_population(
              rec.spectra.at(ModelTag::Floquet), spec.trace, spec.decay);
          attach_trace_outputs(rec, ModelTag::Floquet, tr, spec.outputs,
                               spec.fit_components, fit_envelope_for(spec.decay));
        }
        previous = sol;
        have_previous = true;
      } catch (const std::exception& e) {
        rec.errors[ModelTag::Floquet] = e.what();
      }
      eigensystems[idx].reset();
    }
  }
  return result;
}

double sideband_asymmetry(const ModeSpectrum& spec) {
  const double ap = spec.amp_of(+1, 1);
  const double am = spec.amp_of(-1, 1);
  const double sum = ap + am;
  return sum > 0 ? (ap - am) / sum : 0.0;
}

ModelComparison compare_models(const PointRecord& point, ModelTag a, ModelTag b) {
  if (!point.spectra.count(a) || !point.spectra.count(b))
    throw std::invalid_argument("compare_models: both models need mode spectra");
  const ModeSpectrum& sa = point.spectra.at(a);
  const ModeSpectrum& sb = point.spectra.at(b);
  ModelComparison cmp;
  cmp.model_a = a;
  cmp.model_b = b;
  for (const auto& ea : sa.entries) {
    ModeDeviation d;
    d.i = ea.i;
    d.n = ea.n;
    const ModeEntry* eb = sb.find(ea.i, ea.n);
    d.freq_dev = eb ? std::abs(ea.omega - eb->omega) : std::abs(ea.omega);
    d.amp_dev = std::abs(ea.amp - (eb ? eb->amp : 0.0));
    cmp.modes.push_back(d);
  }
  cmp.asymmetry_a = sideband_asymmetry(sa);
  cmp.asymmetry_b = sideband_asymmetry(sb);
  return cmp;
}

}  // namespace mollow
