#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mollow/model.hpp"

namespace mollow {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      throw std::invalid_argument("unknown key '" + where + it.key() +
                                  "' in config");
  }
}

double get_number(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw std::invalid_argument("config key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

Scheme parse_scheme(const std::string& s) {
  if (s == "amplitude") return Scheme::AmplitudeMod;
  if (s == "phase") return Scheme::PhaseMod;
  throw std::invalid_argument("scheme must be \"amplitude\" or \"phase\"");
}

Axis parse_axis(const std::string& s) {
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  if (s == "z") return Axis::Z;
  throw std::invalid_argument("extra_tone.axis must be \"x\", \"y\" or \"z\"");
}

}  // namespace

ConfigDocument parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  reject_unknown_keys(j,
                      {"delta_MHz", "omega_main_MHz", "omega_mod_MHz",
                       "eps_mod_MHz", "phase_rad", "scheme", "extra_tone",
                       "clip_level", "lab_frame", "initial_state"},
                      "");

  ConfigDocument doc;
  DriveConfig& cfg = doc.drive;
  cfg.delta_mhz = get_number(j, "delta_MHz", 0.0);
  cfg.omega_main_mhz = get_number(j, "omega_main_MHz", 0.0);
  cfg.omega_mod_mhz = get_number(j, "omega_mod_MHz", 0.0);
  cfg.eps_mod_mhz = get_number(j, "eps_mod_MHz", 0.0);
  cfg.phase = wrap_angle(get_number(j, "phase_rad", 0.0));
  if (j.contains("scheme")) cfg.scheme = parse_scheme(j.at("scheme").get<std::string>());

  if (j.contains("extra_tone")) {
    const json& t = j.at("extra_tone");
    reject_unknown_keys(t, {"eps2_MHz", "harmonic", "axis"}, "extra_tone.");
    ExtraTone tone;
    tone.eps2_mhz = get_number(t, "eps2_MHz", 0.0);
    if (t.contains("harmonic")) {
      if (!t.at("harmonic").is_number_integer())
        throw std::invalid_argument("extra_tone.harmonic must be an integer");
      tone.harmonic = t.at("harmonic").get<int>();
    }
    if (t.contains("axis")) tone.axis = parse_axis(t.at("axis").get<std::string>());
    cfg.extra_tone = tone;
  }
  if (j.contains("clip_level")) cfg.clip_level_mhz = get_number(j, "clip_level", 0.0);
  if (j.contains("lab_frame")) {
    const json& l = j.at("lab_frame");
    reject_unknown_keys(l, {"omega0_MHz", "omega_MHz"}, "lab_frame.");
    LabFrame lab;
    lab.omega0_mhz = get_number(l, "omega0_MHz", 0.0);
    lab.omega_mhz = get_number(l, "omega_MHz", 0.0);
    cfg.lab_frame = lab;
  }
  if (j.contains("initial_state")) {
    const json& s = j.at("initial_state");
    reject_unknown_keys(s, {"theta_rad", "phi_s_rad"}, "initial_state.");
    doc.initial_state.theta = get_number(s, "theta_rad", 0.0);
    doc.initial_state.phi_s = get_number(s, "phi_s_rad", 0.0);
  }
  return doc;
}

ConfigDocument load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const ConfigDocument& doc) {
  const DriveConfig& cfg = doc.drive;
  json j;
  j["delta_MHz"] = cfg.delta_mhz;
  j["omega_main_MHz"] = cfg.omega_main_mhz;
  j["omega_mod_MHz"] = cfg.omega_mod_mhz;
  j["eps_mod_MHz"] = cfg.eps_mod_mhz;
  j["phase_rad"] = cfg.phase;
  j["scheme"] = to_string(cfg.scheme);
  if (cfg.extra_tone) {
    j["extra_tone"] = {{"eps2_MHz", cfg.extra_tone->eps2_mhz},
                       {"harmonic", cfg.extra_tone->harmonic},
                       {"axis", to_string(cfg.extra_tone->axis)}};
  }
  if (cfg.clip_level_mhz) j["clip_level"] = *cfg.clip_level_mhz;
  if (cfg.lab_frame) {
    j["lab_frame"] = {{"omega0_MHz", cfg.lab_frame->omega0_mhz},
                      {"omega_MHz", cfg.lab_frame->omega_mhz}};
  }
  j["initial_state"] = {{"theta_rad", doc.initial_state.theta},
                        {"phi_s_rad", doc.initial_state.phi_s}};
  return j.dump(2) + "\n";
}

ConfigDocument apply_overrides(const ConfigDocument& doc,
                               const std::vector<std::string>& overrides) {
  json j = json::parse(config_to_json(doc));
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("override must look like key=value: " + ov);
    const std::string key = ov.substr(0, eq);
    const std::string value = ov.substr(eq + 1);
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error&) {
      parsed = value;  // bare strings (e.g. scheme=phase)
    }
    // dotted path into nested objects
    json* node = &j;
    std::string rest = key;
    for (auto dot = rest.find('.'); dot != std::string::npos; dot = rest.find('.')) {
      const std::string head = rest.substr(0, dot);
      rest = rest.substr(dot + 1);
      if (!node->contains(head)) (*node)[head] = json::object();
      node = &(*node)[head];
    }
    (*node)[rest] = parsed;
  }
  return parse_config(j.dump());
}

}  // namespace mollow
