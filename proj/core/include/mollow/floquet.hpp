#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mollow/model.hpp"
#include "mollow/pauli.hpp"

namespace mollow {

// Fourier components of the periodic Hamiltonian with the sign convention
// H(t) = sum_n H_n exp(-i n omega_mod t). Only n >= 0 is stored; H_{-n} is
// the adjoint of H_n, so Hermiticity of H(t) holds by construction.
class FourierBlocks {
 public:
  FourierBlocks(double omega_mod, std::vector<Mat2> nonneg);

  double omega_mod() const { return omega_mod_; }
  int bandwidth() const { return static_cast<int>(nonneg_.size()) - 1; }
  Mat2 block(int n) const;           // any n; zero outside the bandwidth
  Mat2 at_time(double t) const;      // reconstruct H(t)

 private:
  double omega_mod_;
  std::vector<Mat2> nonneg_;  // H_0 .. H_N
};

FourierBlocks fourier_components(const DriveConfig& cfg);

// Time-domain Hamiltonians; fourier_components(cfg).at_time(t) must match
// interaction_hamiltonian(cfg, t) pointwise (the sign-convention self test).
Mat2 interaction_hamiltonian(const DriveConfig& cfg, double t);

// Truncated Floquet matrix of dimension 2*(2K+1). Block (r, c) holds
// H_{r-c} plus the diagonal shift -r*omega_mod (block index r runs -K..K
// from the top, matching the usual ladder layout).
Eigen::MatrixXcd assemble(const FourierBlocks& blocks, int K);

struct EigenSystem {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // orthonormal columns
  Eigen::MatrixXcd matrix;   // the assembled H_F (kept for residual checks)
  double norm = 0.0;         // max |eigenvalue|
};

// Dense Hermitian eigendecomposition. Throws if M is not Hermitian to 1e-12.
EigenSystem eigensolve(const Eigen::MatrixXcd& m);

enum class ZoneConvention { FirstZone, Smooth };

const char* to_string(ZoneConvention c);

struct FloquetSolution {
  int K = 0;
  double omega_mod = 0.0;
  ZoneConvention convention = ZoneConvention::FirstZone;

  // Reported quasienergies. FirstZone: both folded into [0, omega_mod) with
  // lambda_plus >= lambda_minus. Smooth: continued values that may leave the
  // first zone.
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;

  // Raw eigenvalues of the truncated matrix behind the two branches, and the
  // integer zone shifts with lambda_{pm} = raw + shift*omega_mod.
  double raw_plus = 0.0;
  double raw_minus = 0.0;
  int shift_plus = 0;
  int shift_minus = 0;

  // Eigenvector Fourier blocks, index n+K for n in -K..K.
  std::vector<Vec2> blocks_plus;
  std::vector<Vec2> blocks_minus;

  double residual = 0.0;  // max ||H_F v - lambda v|| / ||H_F||
  bool degenerate = false;

  double delta_lambda() const { return lambda_plus - lambda_minus; }
  Vec2 block_of(int alpha, int n) const;  // alpha: +1 or -1
  Vec2 sum_blocks(int alpha) const;       // Phi(t=0)
};

// Pick the two physical quasienergies out of the truncated spectrum.
// FirstZone: maximal central-block weight, edge-of-truncation vectors
// excluded, values folded to [0, omega_mod). Smooth: maximal eigenvector
// overlap with `ref` (falls back to FirstZone when ref is null).
FloquetSolution select_quasienergies(const EigenSystem& eig, double omega_mod,
                                     ZoneConvention convention,
                                     const FloquetSolution* ref = nullptr);

struct InitialMatch {
  cplx c_plus;
  cplx c_minus;
  double residual = 0.0;       // || psi0 - (c+ Phi+(0) + c- Phi-(0)) ||
  double condition = 0.0;      // condition number of the 2x2 system
  double orthonormality = 0.0; // || M^H M - I ||, truncation quality
};

// Solve psi(0) = c+ sum_n Phi_n^+ + c- sum_n Phi_n^-. Throws when the two
// reconstructed eigenstates are nearly parallel (condition > 1e8).
InitialMatch match_initial_state(const FloquetSolution& sol,
                                 const InitialState& psi0);

struct ModeEntry {
  int i = 0;       // -1, 0, +1
  int n = 0;       // >= 0
  double omega = 0.0;  // n*omega_mod + i*delta_lambda (may be negative under Smooth)
  double amp = 0.0;    // |a_{i,n}|
  double phase = 0.0;  // arg(a_{i,n})
};

struct ModeSpectrum {
  std::vector<ModeEntry> entries;  // sorted by (n, i)
  cplx c_plus;
  cplx c_minus;
  double omega_mod = 0.0;
  double delta_lambda = 0.0;
  ZoneConvention convention = ZoneConvention::FirstZone;
  int K = 0;
  double residual = 0.0;

  const ModeEntry* find(int i, int n) const;
  double amp_of(int i, int n) const;  // 0 when absent
  double dc() const { return amp_of(0, 0); }
};

ModeSpectrum mode_amplitudes(const FloquetSolution& sol, const InitialMatch& match,
                             int n_max);

TimeTrace reconstruct_population(const ModeSpectrum& spec, const TraceGrid& grid,
                                 const DecayModel& decay = {});

// Smallest truncation order K (doubling search, K then 2K) such that the
// quasienergies and all |a_{i,n}| with n <= 3 move by less than tol.
// Throws on non-convergence by K = 512.
int converge_truncation(const DriveConfig& cfg, double tol);

// Convenience pipeline: components -> assemble -> eigensolve -> select ->
// match -> amplitudes.
struct SolveOptions {
  int K = -1;  // -1: converge_truncation(tol)
  double tol = 1e-8;
  int n_max = 5;
  ZoneConvention convention = ZoneConvention::FirstZone;
  const FloquetSolution* continuation_ref = nullptr;
};

struct SolveResult {
  FloquetSolution solution;
  InitialMatch match;
  ModeSpectrum spectrum;
};

SolveResult solve_floquet(const DriveConfig& cfg, const InitialState& psi0,
                          const SolveOptions& opts = {});

// FloquetSolution JSON round trip (used for continuation across sweep points).
std::string solution_to_json(const FloquetSolution& sol);
FloquetSolution solution_from_json(const std::string& text);

// ModeSpectrum CSV: i,n,freq_MHz,amp,phase_rad,convention,K,residual
std::string spectrum_to_csv(const ModeSpectrum& spec);

}  // namespace mollow
