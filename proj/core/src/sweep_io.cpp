#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mollow/experiments.hpp"

namespace mollow {

using nlohmann::json;

namespace {

json spectrum_json(const ModeSpectrum& spec) {
  json j;
  j["c_plus"] = {spec.c_plus.real(), spec.c_plus.imag()};
  j["c_minus"] = {spec.c_minus.real(), spec.c_minus.imag()};
  j["omega_mod_rad_us"] = spec.omega_mod;
  j["delta_lambda_rad_us"] = spec.delta_lambda;
  j["convention"] = to_string(spec.convention);
  j["K"] = spec.K;
  j["residual"] = spec.residual;
  json entries = json::array();
  for (const auto& e : spec.entries)
    entries.push_back({{"i", e.i},
                       {"n", e.n},
                       {"omega_rad_us", e.omega},
                       {"amp", e.amp},
                       {"phase_rad", e.phase}});
  j["modes"] = entries;
  return j;
}

ModeSpectrum spectrum_from_json(const json& j) {
  ModeSpectrum spec;
  spec.c_plus = cplx(j.at("c_plus")[0].get<double>(), j.at("c_plus")[1].get<double>());
  spec.c_minus =
      cplx(j.at("c_minus")[0].get<double>(), j.at("c_minus")[1].get<double>());
  spec.omega_mod = j.at("omega_mod_rad_us").get<double>();
  spec.delta_lambda = j.at("delta_lambda_rad_us").get<double>();
  spec.convention = j.at("convention").get<std::string>() == "smooth"
                        ? ZoneConvention::Smooth
                        : ZoneConvention::FirstZone;
  spec.K = j.at("K").get<int>();
  spec.residual = j.at("residual").get<double>();
  for (const auto& e : j.at("modes")) {
    ModeEntry m;
    m.i = e.at("i").get<int>();
    m.n = e.at("n").get<int>();
    m.omega = e.at("omega_rad_us").get<double>();
    m.amp = e.at("amp").get<double>();
    m.phase = e.at("phase_rad").get<double>();
    spec.entries.push_back(m);
  }
  return spec;
}

json fit_json(const FitResult& fit) {
  json j;
  j["a0"] = fit.a0;
  j["envelope"] = to_string(fit.envelope);
  j["residual_rms"] = fit.residual_rms;
  j["converged"] = fit.converged;
  j["degenerate_freqs"] = fit.degenerate_freqs;
  j["iterations"] = fit.iterations;
  json comps = json::array();
  for (const auto& c : fit.components)
    comps.push_back({{"a", c.a},
                     {"f_MHz", c.freq_mhz},
                     {"phi_rad", c.phi},
                     {"tau_us", c.tau_us}});
  j["components"] = comps;
  return j;
}

FitResult fit_from_json(const json& j) {
  FitResult fit;
  fit.a0 = j.at("a0").get<double>();
  fit.envelope = j.at("envelope").get<std::string>() == "exponential"
                     ? FitEnvelope::Exponential
                     : FitEnvelope::Gaussian;
  fit.residual_rms = j.at("residual_rms").get<double>();
  fit.converged = j.at("converged").get<bool>();
  fit.degenerate_freqs = j.at("degenerate_freqs").get<bool>();
  fit.iterations = j.at("iterations").get<int>();
  for (const auto& c : j.at("components")) {
    FitComponent fc;
    fc.a = c.at("a").get<double>();
    fc.freq_mhz = c.at("f_MHz").get<double>();
    fc.phi = c.at("phi_rad").get<double>();
    fc.tau_us = c.at("tau_us").get<double>();
    fit.components.push_back(fc);
  }
  return fit;
}

json decay_json(const DecayModel& decay) {
  json j;
  j["envelope"] = to_string(decay.envelope);
  j["default_tau_us"] = decay.default_tau_us;
  json taus = json::array();
  for (const auto& [key, tau] : decay.tau_us)
    taus.push_back({{"i", key.first}, {"n", key.second}, {"tau_us", tau}});
  j["tau_us"] = taus;
  return j;
}

DecayModel decay_from_json(const json& j) {
  DecayModel d;
  const std::string env = j.at("envelope").get<std::string>();
  d.envelope = env == "gaussian"      ? Envelope::Gaussian
               : env == "exponential" ? Envelope::Exponential
                                      : Envelope::None;
  d.default_tau_us = j.at("default_tau_us").get<double>();
  for (const auto& t : j.at("tau_us"))
    d.tau_us[{t.at("i").get<int>(), t.at("n").get<int>()}] =
        t.at("tau_us").get<double>();
  return d;
}

SweepAxis axis_from_string(const std::string& s) {
  if (s == "phase") return SweepAxis::Phase;
  if (s == "theta") return SweepAxis::Theta;
  if (s == "omega_main") return SweepAxis::OmegaMain;
  if (s == "eps_mod") return SweepAxis::EpsMod;
  throw std::invalid_argument("unknown sweep axis: " + s);
}

ThetaPlane plane_from_string(const std::string& s) {
  if (s == "ZY") return ThetaPlane::ZY;
  if (s == "ZX") return ThetaPlane::ZX;
  if (s == "XY") return ThetaPlane::XY;
  throw std::invalid_argument("unknown theta plane: " + s);
}

json spec_json(const SweepSpec& spec) {
  json j;
  ConfigDocument doc{spec.base, spec.psi0};
  j["base"] = json::parse(config_to_json(doc));
  j["axis"] = to_string(spec.axis);
  j["plane"] = to_string(spec.plane);
  j["grid"] = spec.grid;
  json models = json::array();
  for (ModelTag m : spec.models) models.push_back(to_string(m));
  j["models"] = models;
  j["outputs"] = {{"spectrum", spec.outputs.spectrum},
                  {"fit", spec.outputs.fit},
                  {"modes", spec.outputs.modes}};
  j["convention"] = to_string(spec.convention);
  j["n_max"] = spec.n_max;
  j["K"] = spec.K;
  j["decay"] = decay_json(spec.decay);
  if (spec.extra_tone_eps2_ratio)
    j["extra_tone_eps2_ratio"] = *spec.extra_tone_eps2_ratio;
  j["trace"] = {{"t0_us", spec.trace.t0_us},
                {"dt_us", spec.trace.dt_us},
                {"samples", spec.trace.samples}};
  j["trotter_dt_us"] = spec.trotter_dt_us;
  j["fit_components"] = spec.fit_components;
  return j;
}

SweepSpec spec_from_json_obj(const json& j) {
  SweepSpec spec;
  const ConfigDocument doc = parse_config(j.at("base").dump());
  spec.base = doc.drive;
  spec.psi0 = doc.initial_state;
  spec.axis = axis_from_string(j.at("axis").get<std::string>());
  if (j.contains("plane"))
    spec.plane = plane_from_string(j.at("plane").get<std::string>());
  spec.grid = j.at("grid").get<std::vector<double>>();
  spec.models.clear();
  for (const auto& m : j.at("models"))
    spec.models.push_back(model_tag_from_string(m.get<std::string>()));
  if (j.contains("outputs")) {
    spec.outputs.spectrum = j.at("outputs").value("spectrum", true);
    spec.outputs.fit = j.at("outputs").value("fit", false);
    spec.outputs.modes = j.at("outputs").value("modes", true);
  }
  if (j.contains("convention"))
    spec.convention = j.at("convention").get<std::string>() == "smooth"
                          ? ZoneConvention::Smooth
                          : ZoneConvention::FirstZone;
  spec.n_max = j.value("n_max", 5);
  spec.K = j.value("K", -1);
  if (j.contains("decay")) spec.decay = decay_from_json(j.at("decay"));
  if (j.contains("extra_tone_eps2_ratio"))
    spec.extra_tone_eps2_ratio = j.at("extra_tone_eps2_ratio").get<double>();
  if (j.contains("trace")) {
    spec.trace.t0_us = j.at("trace").at("t0_us").get<double>();
    spec.trace.dt_us = j.at("trace").at("dt_us").get<double>();
    spec.trace.samples = j.at("trace").at("samples").get<int>();
  }
  spec.trotter_dt_us = j.value("trotter_dt_us", 2e-4);
  spec.fit_components = j.value("fit_components", 3);
  return spec;
}

}  // namespace

std::string spec_to_json(const SweepSpec& spec) {
  return spec_json(spec).dump(2) + "\n";
}

SweepSpec spec_from_json(const std::string& text) {
  return spec_from_json_obj(json::parse(text));
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "sweep_value,model,i,n,freq_MHz,amp,phase_rad\n";
  char buf[256];
  for (const auto& point : result.points) {
    for (ModelTag tag : result.spec.models) {
      const auto it = point.spectra.find(tag);
      if (it == point.spectra.end()) continue;
      for (const auto& e : it->second.entries) {
        std::snprintf(buf, sizeof(buf), "%.17g,%s,%d,%d,%.17g,%.17g,%.17g\n",
                      point.sweep_value, to_string(tag), e.i, e.n,
                      to_mhz(e.omega), e.amp, e.phase);
        out << buf;
      }
    }
  }
  return out.str();
}

std::string sweep_to_heatmap_csv(const SweepResult& result, ModelTag model) {
  std::ostringstream out;
  out << "sweep_value,f_MHz,abs\n";
  char buf[160];
  for (const auto& point : result.points) {
    const auto it = point.ffts.find(model);
    if (it == point.ffts.end()) continue;
    const Spectrum& spec = it->second;
    const int half = spec.size() / 2;
    for (int k = 0; k < half; ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", point.sweep_value,
                    spec.freq_mhz[k], std::abs(spec.amp[k]));
      out << buf;
    }
  }
  return out.str();
}

std::string sweep_to_json(const SweepResult& result) {
  json j;
  j["spec"] = spec_json(result.spec);
  json points = json::array();
  for (const auto& point : result.points) {
    json p;
    p["sweep_value"] = point.sweep_value;
    p["K_used"] = point.K_used;
    json spectra = json::object();
    for (const auto& [tag, spec] : point.spectra)
      spectra[to_string(tag)] = spectrum_json(spec);
    p["spectra"] = spectra;
    json fits = json::object();
    for (const auto& [tag, fit] : point.fits) fits[to_string(tag)] = fit_json(fit);
    p["fits"] = fits;
    json digests = json::object();
    for (const auto& [tag, d] : point.digests)
      digests[to_string(tag)] = {{"mean", d.mean}, {"min", d.min}, {"max", d.max}};
    p["digests"] = digests;
    json errors = json::object();
    for (const auto& [tag, msg] : point.errors) errors[to_string(tag)] = msg;
    p["errors"] = errors;
    points.push_back(p);
  }
  j["points"] = points;
  return j.dump(2) + "\n";
}

SweepResult sweep_from_json(const std::string& text) {
  const json j = json::parse(text);
  SweepResult result;
  result.spec = spec_from_json_obj(j.at("spec"));
  for (const auto& p : j.at("points")) {
    PointRecord rec;
    rec.sweep_value = p.at("sweep_value").get<double>();
    rec.K_used = p.at("K_used").get<int>();
    for (auto it = p.at("spectra").begin(); it != p.at("spectra").end(); ++it)
      rec.spectra[model_tag_from_string(it.key())] = spectrum_from_json(it.value());
    for (auto it = p.at("fits").begin(); it != p.at("fits").end(); ++it)
      rec.fits[model_tag_from_string(it.key())] = fit_from_json(it.value());
    for (auto it = p.at("digests").begin(); it != p.at("digests").end(); ++it) {
      TraceDigest d;
      d.mean = it.value().at("mean").get<double>();
      d.min = it.value().at("min").get<double>();
      d.max = it.value().at("max").get<double>();
      rec.digests[model_tag_from_string(it.key())] = d;
    }
    for (auto it = p.at("errors").begin(); it != p.at("errors").end(); ++it)
      rec.errors[model_tag_from_string(it.key())] = it.value().get<std::string>();
    result.points.push_back(std::move(rec));
  }
  return result;
}

}  // namespace mollow
