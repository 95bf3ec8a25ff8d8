#include "mollow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace mollow {

const char* to_string(Window w) { return w == Window::Rect ? "rect" : "hann"; }

const char* to_string(FitEnvelope e) {
  return e == FitEnvelope::Gaussian ? "gaussian" : "exponential";
}

Spectrum fft_spectrum(const TimeTrace& trace, Window window, int pad_factor,
                      bool subtract_mean) {
  const int n = trace.size();
  if (n < 16)
    throw std::invalid_argument("fft_spectrum: need at least 16 samples");
  if (!(trace.dt_us > 0))
    throw std::invalid_argument("fft_spectrum: grid must be uniform with dt > 0");
  if (pad_factor < 1)
    throw std::invalid_argument("fft_spectrum: pad_factor must be >= 1");

  std::vector<double> x(trace.values);
  if (subtract_mean) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    for (double& v : x) v -= mean;
  }
  if (window == Window::Hann) {
    for (int k = 0; k < n; ++k)
      x[k] *= 0.5 * (1.0 - std::cos(two_pi * k / (n - 1)));
  }

  const int nfft = n * pad_factor;
  std::vector<cplx> in(nfft, cplx(0, 0));
  for (int k = 0; k < n; ++k) in[k] = x[k];

  Spectrum out;
  out.amp.resize(nfft);
  Eigen::FFT<double> fft;
  fft.fwd(out.amp, in);

  out.window = window;
  out.pad_factor = pad_factor;
  out.signal_samples = n;
  out.df_mhz = 1.0 / (nfft * trace.dt_us);  // 1/us == MHz
  out.freq_mhz.resize(nfft);
  for (int k = 0; k < nfft; ++k) {
    const int signed_k = k < (nfft + 1) / 2 ? k : k - nfft;
    out.freq_mhz[k] = signed_k * out.df_mhz;
  }
  return out;
}

std::vector<Peak> detect_peaks(const Spectrum& spec, double min_rel_height) {
  if (!(min_rel_height > 0) || !(min_rel_height < 1))
    throw std::invalid_argument("detect_peaks: min_rel_height must be in (0,1)");
  const int half = spec.size() / 2;
  double global = 0.0;
  for (int k = 1; k < half; ++k) global = std::max(global, std::abs(spec.amp[k]));
  std::vector<Peak> peaks;
  if (global == 0.0) return peaks;
  const double floor = min_rel_height * global;
  for (int k = 1; k + 1 < half; ++k) {
    const double ym = std::abs(spec.amp[k - 1]);
    const double y0 = std::abs(spec.amp[k]);
    const double yp = std::abs(spec.amp[k + 1]);
    if (y0 < floor || y0 <= ym || y0 < yp) continue;
    // three-point parabolic refinement
    const double denom = ym - 2.0 * y0 + yp;
    double shift = 0.0, height = y0;
    if (denom < 0) {
      shift = 0.5 * (ym - yp) / denom;
      height = y0 - 0.25 * (ym - yp) * shift;
    }
    peaks.push_back({(k + shift) * spec.df_mhz, height});
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    return a.height != b.height ? a.height > b.height : a.freq_mhz < b.freq_mhz;
  });
  return peaks;
}

std::string spectrum_to_csv(const Spectrum& spec) {
  std::ostringstream out;
  out << "f_MHz,re,im,abs\n";
  char buf[256];
  for (int k = 0; k < spec.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n",
                  spec.freq_mhz[k], spec.amp[k].real(), spec.amp[k].imag(),
                  std::abs(spec.amp[k]));
    out << buf;
  }
  return out.str();
}

std::string fit_to_csv(const FitResult& fit) {
  std::ostringstream out;
  out << "a0";
  for (size_t i = 1; i <= fit.components.size(); ++i)
    out << ",a" << i << ",f" << i << "_MHz,phi" << i << "_rad,tau" << i << "_us";
  out << "\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.17g", fit.a0);
  out << buf;
  for (const auto& c : fit.components) {
    std::snprintf(buf, sizeof(buf), ",%.17g,%.17g,%.17g,%.17g", c.a, c.freq_mhz,
                  c.phi, c.tau_us);
    out << buf;
  }
  out << "\n";
  return out.str();
}

}  // namespace mollow
