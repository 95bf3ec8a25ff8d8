// Command-line front end: scenario runs, ad-hoc solves, spectra, fits.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mollow/experiments.hpp"

namespace fs = std::filesystem;
using namespace mollow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out;
  std::string format = "csv";
  std::string convention = "first-zone";
  int n_max = 5;
  std::string K = "auto";
  int jobs = 1;
  std::string decay = "none";
  double decay_tau = 3.0;
};

ZoneConvention parse_convention(const std::string& s) {
  if (s == "first-zone") return ZoneConvention::FirstZone;
  if (s == "smooth") return ZoneConvention::Smooth;
  throw std::invalid_argument("--convention must be first-zone or smooth");
}

int parse_K(const std::string& s) {
  if (s == "auto") return -1;
  return std::stoi(s);
}

DecayModel parse_decay(const std::string& kind, double tau) {
  DecayModel d;
  if (kind == "none") {
    d.envelope = Envelope::None;
  } else if (kind == "gauss") {
    d.envelope = Envelope::Gaussian;
  } else if (kind == "exp") {
    d.envelope = Envelope::Exponential;
  } else {
    throw std::invalid_argument("--decay must be none, gauss or exp");
  }
  d.default_tau_us = tau;
  return d;
}

std::vector<ModelTag> parse_models(const std::string& csv) {
  std::vector<ModelTag> models;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) models.push_back(model_tag_from_string(item));
  }
  if (models.empty()) throw std::invalid_argument("--models list is empty");
  return models;
}

ConfigDocument load_with_overrides(const CommonOpts& opt) {
  ConfigDocument doc = load_config(opt.config_path);
  if (!opt.overrides.empty()) doc = apply_overrides(doc, opt.overrides);
  const auto violations = validate(doc.drive);
  if (!violations.empty()) {
    for (const auto& v : violations)
      std::cerr << "config error: " << v.field << ": " << v.rule << "\n";
    throw std::invalid_argument("config validation failed");
  }
  if (doc.drive.lab_frame_rwa_warning())
    std::cerr << "warning: omega0 < 10*max(Omega, eps_m); the first "
                 "rotating-wave step is questionable\n";
  return doc;
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string out_path(const CommonOpts& opt, const std::string& name) {
  if (opt.out.empty()) return name;
  return (fs::path(opt.out) / name).string();
}

void print_modes(const ModeSpectrum& spec, int top) {
  std::vector<const ModeEntry*> order;
  for (const auto& e : spec.entries) order.push_back(&e);
  std::sort(order.begin(), order.end(),
            [](const ModeEntry* a, const ModeEntry* b) { return a->amp > b->amp; });
  std::printf("  %3s %3s %12s %12s %10s\n", "i", "n", "freq_MHz", "amp", "phase");
  const int rows = std::min<int>(top, order.size());
  for (int r = 0; r < rows; ++r) {
    const ModeEntry* e = order[r];
    std::printf("  %+3d %3d %12.6f %12.6g %10.4f\n", e->i, e->n, to_mhz(e->omega),
                e->amp, e->phase);
  }
}

int cmd_solve(const CommonOpts& opt) {
  const ConfigDocument doc = load_with_overrides(opt);
  SolveOptions sopts;
  sopts.K = parse_K(opt.K);
  sopts.n_max = opt.n_max;
  sopts.convention = parse_convention(opt.convention);
  const SolveResult res = solve_floquet(doc.drive, doc.initial_state, sopts);

  std::printf("quasienergies (%s, K=%d):\n", to_string(res.solution.convention),
              res.solution.K);
  std::printf("  lambda+ = %.6f MHz   lambda- = %.6f MHz   delta = %.6f MHz\n",
              to_mhz(res.solution.lambda_plus), to_mhz(res.solution.lambda_minus),
              to_mhz(res.solution.delta_lambda()));
  std::printf("  |c+| = %.6f  |c-| = %.6f  match residual = %.3g\n",
              std::abs(res.match.c_plus), std::abs(res.match.c_minus),
              res.match.residual);
  if (res.solution.degenerate)
    std::printf("  note: quasienergy pair flagged degenerate\n");
  std::printf("modes:\n");
  print_modes(res.spectrum, 10);

  if (opt.format == "json") {
    write_file(out_path(opt, "solution.json"), solution_to_json(res.solution));
  }
  write_file(out_path(opt, "modes.csv"), spectrum_to_csv(res.spectrum));
  return kExitOk;
}

int cmd_evolve(const CommonOpts& opt, const std::string& model, double tmax,
               double dt, double dt_step) {
  const ConfigDocument doc = load_with_overrides(opt);
  TraceGrid grid{0.0, dt, static_cast<int>(std::llround(tmax / dt)) + 1};
  const DecayModel decay = parse_decay(opt.decay, opt.decay_tau);

  TimeTrace trace;
  if (model == "trotter") {
    TrotterOptions topts;
    topts.dt_step_us = dt_step;
    trace = trotter_evolve(doc.drive, doc.initial_state, grid, topts);
  } else if (model == "rwa") {
    trace = rwa_evolution(doc.drive, doc.initial_state, grid);
  } else if (model == "floquet") {
    SolveOptions sopts;
    sopts.K = parse_K(opt.K);
    sopts.n_max = std::max(opt.n_max, 5);
    sopts.convention = parse_convention(opt.convention);
    const SolveResult res = solve_floquet(doc.drive, doc.initial_state, sopts);
    trace = reconstruct_population(res.spectrum, grid, decay);
  } else {
    throw std::invalid_argument("--model must be floquet, rwa or trotter");
  }

  double lo = trace.values.front(), hi = lo;
  for (double v : trace.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::printf("evolved %s: %d samples over %.4f us, P0 range [%.6f, %.6f]\n",
              model.c_str(), trace.size(), tmax, lo, hi);
  write_file(out_path(opt, "trace.csv"), trace_to_csv(trace));
  return kExitOk;
}

void write_sweep_outputs(const CommonOpts& opt, const SweepResult& result) {
  write_file(out_path(opt, "sweep.csv"), sweep_to_csv(result));
  write_file(out_path(opt, "sweep.json"), sweep_to_json(result));
  if (result.spec.outputs.spectrum) {
    for (ModelTag tag : result.spec.models) {
      bool any = false;
      for (const auto& p : result.points) any = any || p.ffts.count(tag);
      if (any)
        write_file(out_path(opt, std::string("heatmap_") + to_string(tag) + ".csv"),
                   sweep_to_heatmap_csv(result, tag));
    }
  }
}

void print_sweep_summary(const SweepResult& result) {
  std::printf("sweep: axis=%s points=%zu K=%d convention=%s\n",
              to_string(result.spec.axis), result.spec.grid.size(), result.spec.K,
              to_string(result.spec.convention));
  int failures = 0;
  for (const auto& p : result.points) failures += p.errors.size();
  if (failures) std::printf("  %d per-point model failures recorded\n", failures);
}

int cmd_sweep(const CommonOpts& opt, const std::string& spec_path) {
  std::ifstream in(spec_path);
  if (!in) throw std::invalid_argument("cannot open sweep spec: " + spec_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const SweepSpec spec = spec_from_json(buf.str());
  const SweepResult result = run_sweep(spec, opt.jobs);
  print_sweep_summary(result);
  write_sweep_outputs(opt, result);
  return kExitOk;
}

int cmd_scenario(const CommonOpts& opt, const std::string& name) {
  SweepSpec spec = scenario(name);
  if (opt.K != "auto") spec.K = parse_K(opt.K);
  const SweepResult result = run_sweep(spec, opt.jobs);
  std::printf("scenario %s\n", name.c_str());
  print_sweep_summary(result);
  write_sweep_outputs(opt, result);
  return kExitOk;
}

TimeTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open trace: " + path);
  std::string line;
  std::vector<double> t, v;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.find("t_us") != std::string::npos) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("trace CSV needs two columns: " + line);
    t.push_back(std::stod(line.substr(0, comma)));
    v.push_back(std::stod(line.substr(comma + 1)));
  }
  if (t.size() < 2) throw std::invalid_argument("trace CSV too short");
  TimeTrace trace;
  trace.t0_us = t.front();
  trace.dt_us = t[1] - t[0];
  for (size_t k = 1; k < t.size(); ++k) {
    const double expected = trace.t0_us + k * trace.dt_us;
    if (std::abs(t[k] - expected) > 1e-6 * std::max(1.0, std::abs(expected)))
      throw std::invalid_argument("trace CSV grid is not uniform");
  }
  trace.values = std::move(v);
  return trace;
}

int cmd_fit(const CommonOpts& opt, const std::string& trace_path, int components,
            const std::string& envelope) {
  const TimeTrace trace = read_trace_csv(trace_path);
  const FitEnvelope env = envelope == "exp" ? FitEnvelope::Exponential
                                            : FitEnvelope::Gaussian;
  const FitResult fit = fit_modes(trace, components, env);
  std::printf("fit (%s envelope): a0 = %.6f, rms residual = %.3g, %s after %d "
              "iterations\n",
              to_string(fit.envelope), fit.a0, fit.residual_rms,
              fit.converged ? "converged" : "NOT converged", fit.iterations);
  std::printf("  %12s %12s %10s %10s\n", "f_MHz", "a", "phi_rad", "tau_us");
  for (const auto& c : fit.components)
    std::printf("  %12.6f %12.6g %10.4f %10.4g\n", c.freq_mhz, c.a, c.phi,
                c.tau_us);
  if (fit.degenerate_freqs)
    std::printf("  warning: nearly degenerate fitted frequencies\n");
  write_file(out_path(opt, "fit.csv"), fit_to_csv(fit));
  return fit.converged ? kExitOk : kExitSolver;
}

int cmd_compare(const CommonOpts& opt, const std::string& models_csv) {
  const ConfigDocument doc = load_with_overrides(opt);
  const std::vector<ModelTag> models = parse_models(models_csv);
  if (models.size() < 2)
    throw std::invalid_argument("compare needs at least two models");

  SweepOutputs outputs;
  outputs.spectrum = false;
  outputs.modes = true;
  const DecayModel decay = parse_decay(opt.decay, opt.decay_tau);
  const PointRecord point = solve_point(
      doc.drive, doc.initial_state, models, outputs,
      parse_convention(opt.convention), parse_K(opt.K), opt.n_max, decay,
      TraceGrid{0.0, 0.004, 1001}, 2e-4, 3);

  for (const auto& [tag, err] : point.errors)
    std::printf("model %s failed: %s\n", to_string(tag), err.c_str());

  const ModelTag ref = models.front();
  if (!point.spectra.count(ref))
    throw std::runtime_error("reference model produced no spectrum");
  std::printf("reference model: %s (sideband asymmetry %.6f)\n", to_string(ref),
              sideband_asymmetry(point.spectra.at(ref)));
  for (size_t m = 1; m < models.size(); ++m) {
    if (!point.spectra.count(models[m])) continue;
    const ModelComparison cmp = compare_models(point, ref, models[m]);
    std::printf("vs %s (asymmetry %.6f):\n", to_string(models[m]), cmp.asymmetry_b);
    std::printf("  %3s %3s %14s %14s\n", "i", "n", "dfreq_MHz", "damp");
    for (const auto& d : cmp.modes) {
      if (d.n > opt.n_max) continue;
      std::printf("  %+3d %3d %14.6g %14.6g\n", d.i, d.n, to_mhz(d.freq_dev),
                  d.amp_dev);
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mollow-triplet mode structure of a driven two-level system: "
               "Floquet, RWA and effective-model solvers"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::string model = "floquet";
  std::string spec_path;
  std::string scenario_name;
  std::string trace_path;
  std::string models_csv = "floquet,rwa";
  double tmax = 4.0, dt = 0.004, dt_step = 2e-4;
  int components = 3;
  std::string envelope = "gauss";

  auto add_common = [&](CLI::App* cmd, bool with_config) {
    if (with_config)
      cmd->add_option("--config", opt.config_path, "JSON config file")->required();
    cmd->add_option("--set", opt.overrides,
                    "config override key=value (dotted keys allowed)");
    cmd->add_option("--out", opt.out, "output directory");
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--convention", opt.convention, "first-zone or smooth")
        ->check(CLI::IsMember({"first-zone", "smooth"}));
    cmd->add_option("--nmax", opt.n_max, "highest reported harmonic");
    cmd->add_option("--K", opt.K, "truncation order or 'auto'");
    cmd->add_option("--jobs", opt.jobs, "worker threads for sweeps");
    cmd->add_option("--decay", opt.decay, "none, gauss or exp")
        ->check(CLI::IsMember({"none", "gauss", "exp"}));
    cmd->add_option("--decay-tau", opt.decay_tau, "default tau (us)");
  };

  CLI::App* solve = app.add_subcommand("solve", "quasienergies and mode table");
  add_common(solve, true);

  CLI::App* evolve = app.add_subcommand("evolve", "time evolution P0(t)");
  add_common(evolve, true);
  evolve->add_option("--model", model, "floquet, rwa or trotter")
      ->check(CLI::IsMember({"floquet", "rwa", "trotter"}));
  evolve->add_option("--tmax", tmax, "duration (us)");
  evolve->add_option("--dt", dt, "grid step (us)");
  evolve->add_option("--dt-step", dt_step, "trotter substep (us)");

  CLI::App* sweep = app.add_subcommand("sweep", "run a sweep spec file");
  add_common(sweep, false);
  sweep->add_option("--spec", spec_path, "SweepSpec JSON file")->required();

  CLI::App* scen = app.add_subcommand("scenario", "run a named preset");
  add_common(scen, false);
  scen->add_option("name", scenario_name, "scenario name")->required();

  CLI::App* fit = app.add_subcommand("fit", "fit damped cosines to a trace");
  add_common(fit, false);
  fit->add_option("--trace", trace_path, "trace CSV (t_us,value)")->required();
  fit->add_option("--components", components, "number of cosine components");
  fit->add_option("--envelope", envelope, "gauss or exp")
      ->check(CLI::IsMember({"gauss", "exp"}));

  CLI::App* compare = app.add_subcommand("compare", "multi-model deviations");
  add_common(compare, true);
  compare->add_option("--models", models_csv, "comma list of models");

  CLI::App* list = app.add_subcommand("list-scenarios", "print preset names");
  (void)list;

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (evolve->parsed()) return cmd_evolve(opt, model, tmax, dt, dt_step);
    if (sweep->parsed()) return cmd_sweep(opt, spec_path);
    if (scen->parsed()) return cmd_scenario(opt, scenario_name);
    if (fit->parsed()) return cmd_fit(opt, trace_path, components, envelope);
    if (compare->parsed()) return cmd_compare(opt, models_csv);
    if (list->parsed()) {
      for (const auto& name : scenario_names()) std::printf("%s\n", name.c_str());
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
