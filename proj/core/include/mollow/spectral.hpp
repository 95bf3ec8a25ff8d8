#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mollow/model.hpp"

namespace mollow {

enum class Window { Rect, Hann };
enum class FitEnvelope { Gaussian, Exponential };

const char* to_string(Window w);
const char* to_string(FitEnvelope e);

// Full (two-sided) DFT of the optionally windowed, optionally mean-subtracted
// trace, zero padded by an integer factor. Frequencies in MHz; bins k >= N/2
// carry the negative frequencies.
struct Spectrum {
  std::vector<double> freq_mhz;
  std::vector<cplx> amp;
  Window window = Window::Rect;
  int pad_factor = 1;
  int signal_samples = 0;  // before padding
  double df_mhz = 0.0;

  int size() const { return static_cast<int>(amp.size()); }
};

Spectrum fft_spectrum(const TimeTrace& trace, Window window = Window::Rect,
                      int pad_factor = 4, bool subtract_mean = false);

struct Peak {
  double freq_mhz = 0.0;
  double height = 0.0;
};

// Local maxima of |X| on the positive-frequency half above
// min_rel_height * max, refined by three-point parabolic interpolation and
// sorted by height.
std::vector<Peak> detect_peaks(const Spectrum& spec, double min_rel_height);

struct FitComponent {
  double a = 0.0;        // >= 0 after canonicalization
  double freq_mhz = 0.0;
  double phi = 0.0;      // rad, in (-pi, pi]
  double tau_us = 0.0;   // > 0
};

struct FitResult {
  double a0 = 0.0;
  std::vector<FitComponent> components;  // sorted by frequency
  FitEnvelope envelope = FitEnvelope::Gaussian;
  double residual_rms = 0.0;
  Eigen::MatrixXd covariance;  // parameter order: a0, then (a,f,phi,tau) per component
  bool converged = false;
  bool degenerate_freqs = false;
  int iterations = 0;

  double evaluate(double t) const;  // model value
};

// Damped least squares (Levenberg-style) fit of
//   a0 + sum_i a_i env(t; tau_i) cos(2 pi f_i t + phi_i).
// Initial guesses default to the strongest FFT peaks. Frequencies are kept
// within +-20% of their seeds to prevent component swapping. Non-convergence
// is flagged on the returned best-so-far result, never thrown.
FitResult fit_modes(const TimeTrace& trace, int n_components,
                    FitEnvelope envelope,
                    const std::vector<FitComponent>* init = nullptr);

std::string spectrum_to_csv(const Spectrum& spec);  // f_MHz,re,im,abs
std::string fit_to_csv(const FitResult& fit);       // a0, then per component

}  // namespace mollow
