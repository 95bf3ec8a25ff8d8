#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mollow/spectral.hpp"
#include "mollow/units.hpp"

namespace mollow {

namespace {

struct EnvelopeFn {
  FitEnvelope kind;
  double value(double t, double tau) const {
    return kind == FitEnvelope::Gaussian ? std::exp(-(t * t) / (tau * tau))
                                         : std::exp(-std::abs(t) / tau);
  }
  double dtau(double t, double tau) const {
    const double e = value(t, tau);
    return kind == FitEnvelope::Gaussian
               ? e * 2.0 * t * t / (tau * tau * tau)
               : e * std::abs(t) / (tau * tau);
  }
};

// parameter layout: [a0, (a, f_mhz, phi, tau)_1, ...]
int param_count(int m) { return 1 + 4 * m; }

double model_value(const Eigen::VectorXd& p, const EnvelopeFn& env, double t) {
  double y = p(0);
  const int m = (p.size() - 1) / 4;
  for (int i = 0; i < m; ++i) {
    const double a = p(1 + 4 * i);
    const double f = p(2 + 4 * i);
    const double phi = p(3 + 4 * i);
    const double tau = p(4 + 4 * i);
    y += a * env.value(t, tau) * std::cos(two_pi * f * t + phi);
  }
  return y;
}

void fill_jacobian_row(const Eigen::VectorXd& p, const EnvelopeFn& env, double t,
                       Eigen::VectorXd& row) {
  row(0) = 1.0;
  const int m = (p.size() - 1) / 4;
  for (int i = 0; i < m; ++i) {
    const double a = p(1 + 4 * i);
    const double f = p(2 + 4 * i);
    const double phi = p(3 + 4 * i);
    const double tau = p(4 + 4 * i);
    const double e = env.value(t, tau);
    const double theta = two_pi * f * t + phi;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    row(1 + 4 * i) = e * c;
    row(2 + 4 * i) = -a * e * s * two_pi * t;
    row(3 + 4 * i) = -a * e * s;
    row(4 + 4 * i) = a * env.dtau(t, tau) * c;
  }
}

}  // namespace

double FitResult::evaluate(double t) const {
  const EnvelopeFn env{envelope};
  double y = a0;
  for (const auto& c : components)
    y += c.a * env.value(t, c.tau_us) * std::cos(two_pi * c.freq_mhz * t + c.phi);
  return y;
}

FitResult fit_modes(const TimeTrace& trace, int n_components,
                    FitEnvelope envelope, const std::vector<FitComponent>* init) {
  if (n_components < 1 || n_components > 6)
    throw std::invalid_argument("fit_modes: n_components must be in 1..6");
  const int n = trace.size();
  if (n < param_count(n_components) + 2)
    throw std::invalid_argument("fit_modes: trace too short for the model");

  const EnvelopeFn env{envelope};
  const double t_total = trace.dt_us * (n - 1);
  const double mean =
      std::accumulate(trace.values.begin(), trace.values.end(), 0.0) / n;

  // seeds
  std::vector<FitComponent> seeds;
  if (init) {
    seeds = *init;
    if (static_cast<int>(seeds.size()) != n_components)
      throw std::invalid_argument("fit_modes: init size mismatch");
  } else {
    const Spectrum spec = fft_spectrum(trace, Window::Rect, 4, true);
    const auto peaks = detect_peaks(spec, 0.01);
    double top = peaks.empty() ? 0.0 : peaks.front().height;
    for (int i = 0; i < n_components; ++i) {
      FitComponent c;
      if (i < static_cast<int>(peaks.size())) {
        c.freq_mhz = peaks[i].freq_mhz;
        c.a = 2.0 * peaks[i].height / n;
        const int bin = std::clamp(
            (int)std::llround(peaks[i].freq_mhz / spec.df_mhz), 0, spec.size() - 1);
        c.phi = std::arg(spec.amp[bin]);
      } else {
        // no visible peak left; park the component at a distinct frequency
        c.freq_mhz = (i + 1) * 0.5 / trace.dt_us / (n_components + 1);
        c.a = top > 0 ? 0.02 * top / n : 1e-6;
        c.phi = 0.0;
      }
      c.tau_us = 0.7 * t_total;
      seeds.push_back(c);
    }
  }

  const int np = param_count(n_components);
  Eigen::VectorXd p(np);
  p(0) = mean;
  std::vector<double> seed_freq(n_components);
  for (int i = 0; i < n_components; ++i) {
    p(1 + 4 * i) = seeds[i].a;
    p(2 + 4 * i) = seeds[i].freq_mhz;
    p(3 + 4 * i) = seeds[i].phi;
    p(4 + 4 * i) = seeds[i].tau_us > 0 ? seeds[i].tau_us : 0.7 * t_total;
    seed_freq[i] = seeds[i].freq_mhz;
  }

  auto clamp_params = [&](Eigen::VectorXd& q) {
    for (int i = 0; i < n_components; ++i) {
      if (seed_freq[i] > 0)
        q(2 + 4 * i) = std::clamp(q(2 + 4 * i), 0.8 * seed_freq[i],
                                  1.2 * seed_freq[i]);
      q(4 + 4 * i) =
          std::clamp(std::abs(q(4 + 4 * i)), trace.dt_us, 1e6 * t_total);
    }
  };
  clamp_params(p);

  auto cost_of = [&](const Eigen::VectorXd& q, Eigen::VectorXd* resid) {
    double cost = 0.0;
    for (int k = 0; k < n; ++k) {
      const double r = model_value(q, env, trace.time(k)) - trace.values[k];
      if (resid) (*resid)(k) = r;
      cost += r * r;
    }
    return 0.5 * cost;
  };

  Eigen::VectorXd resid(n), row(np);
  Eigen::MatrixXd jac(n, np);
  double cost = cost_of(p, &resid);
  double lambda = 1e-3;
  bool converged = false;
  int iter = 0;

  for (; iter < 500; ++iter) {
    for (int k = 0; k < n; ++k) {
      fill_jacobian_row(p, env, trace.time(k), row);
      jac.row(k) = row;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * resid;

    bool stepped = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      for (int d = 0; d < np; ++d)
        damped(d, d) += lambda * std::max(jtj(d, d), 1e-12);
      const Eigen::VectorXd delta = damped.ldlt().solve(-g);
      Eigen::VectorXd trial = p + delta;
      clamp_params(trial);
      Eigen::VectorXd trial_resid(n);
      const double trial_cost = cost_of(trial, &trial_resid);
      if (trial_cost < cost) {
        const double rel = (cost - trial_cost) / std::max(cost, 1e-300);
        p = trial;
        resid = trial_resid;
        cost = trial_cost;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        if (rel < 1e-10) converged = true;
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e14) break;
    }
    if (converged || !stepped) {
      if (!stepped && cost <= 1e-24 * n) converged = true;  // already exact
      break;
    }
  }

  FitResult out;
  out.envelope = envelope;
  out.converged = converged;
  out.iterations = iter;
  out.a0 = p(0);
  out.residual_rms = std::sqrt(2.0 * cost / n);
  for (int i = 0; i < n_components; ++i) {
    FitComponent c;
    c.a = p(1 + 4 * i);
    c.freq_mhz = p(2 + 4 * i);
    c.phi = p(3 + 4 * i);
    c.tau_us = p(4 + 4 * i);
    if (c.a < 0) {
      c.a = -c.a;
      c.phi += pi;
    }
    c.phi = std::remainder(c.phi, two_pi);
    if (c.phi <= -pi) c.phi += two_pi;
    out.components.push_back(c);
  }
  std::sort(out.components.begin(), out.components.end(),
            [](const FitComponent& a, const FitComponent& b) {
              return a.freq_mhz < b.freq_mhz;
            });

  const double bin = 1.0 / (n * trace.dt_us);
  for (size_t i = 0; i < out.components.size(); ++i)
    for (size_t j = i + 1; j < out.components.size(); ++j)
      if (std::abs(out.components[i].freq_mhz - out.components[j].freq_mhz) < bin)
        out.degenerate_freqs = true;

  // parameter covariance from the final Jacobian
  for (int k = 0; k < n; ++k) {
    fill_jacobian_row(p, env, trace.time(k), row);
    jac.row(k) = row;
  }
  const double dof = std::max(1, n - np);
  const double sigma2 = 2.0 * cost / dof;
  out.covariance =
      sigma2 *
      (jac.transpose() * jac).completeOrthogonalDecomposition().pseudoInverse();
  return out;
}

}  // namespace mollow
