#include "mollow/rwa.hpp"

#include <cmath>
#include <stdexcept>

namespace mollow {

RwaSolution rwa_solve(const DriveConfig& cfg) {
  require_valid(cfg);
  RwaSolution s;
  s.omega_R = cfg.rabi_effective();
  const double cb = s.omega_R > 0 ? cfg.omega_main() / s.omega_R : 1.0;
  const double sb = s.omega_R > 0 ? cfg.delta() / s.omega_R : 0.0;
  s.beta = std::atan2(sb, cb);
  s.x_axis = Vec3(cb, 0, -sb);
  s.y_axis = Vec3(0, 1, 0);
  s.z_axis = Vec3(sb, 0, cb);

  if (cfg.scheme == Scheme::AmplitudeMod) {
    s.eps_eff = cfg.eps_mod();
  } else {
    // the drive sits on sigma_z; only its projection onto z' co-rotates
    const double amp = cfg.eps_mod() * cfg.omega_mod() / cfg.omega_main();
    s.eps_eff = amp * cb;
  }
  s.delta_lambda = std::hypot(s.eps_eff, cfg.omega_mod() - s.omega_R);

  const Vec3 field = 0.5 * (s.omega_R - cfg.omega_mod()) * s.x_axis +
                     0.5 * s.eps_eff *
                         (std::cos(cfg.phase) * s.y_axis +
                          std::sin(cfg.phase) * s.z_axis);
  s.h2 = pauli(field);
  return s;
}

std::array<double, 3> rwa_triplet(const DriveConfig& cfg) {
  const RwaSolution s = rwa_solve(cfg);
  const double w = cfg.omega_mod();
  return {w - s.delta_lambda, w, w + s.delta_lambda};
}

Mat2 second_frame_hamiltonian(const DriveConfig& cfg) {
  return rwa_solve(cfg).h2;
}

TimeTrace rwa_evolution(const DriveConfig& cfg, const InitialState& psi0,
                        const TraceGrid& grid) {
  const RwaSolution s = rwa_solve(cfg);
  const Mat2 hx = 0.5 * cfg.omega_mod() * pauli(s.x_axis);
  const Vec2 psi = psi0.amplitudes();
  TimeTrace trace;
  trace.t0_us = grid.t0_us;
  trace.dt_us = grid.dt_us;
  trace.values.resize(grid.samples);
  for (int k = 0; k < grid.samples; ++k) {
    const double t = grid.time(k);
    const Vec2 v = pauli_exp(hx, t) * (pauli_exp(s.h2, t) * psi);
    trace.values[k] = std::norm(v(0));
  }
  return trace;
}

ModeSpectrum static_frame_mode_spectrum(const Mat2& h_static, const Vec3& rot_axis,
                                        double omega_mod, const InitialState& psi0) {
  const PauliDecomp d = pauli_decompose(h_static);
  const double half_split = d.v.norm();
  const Vec3 h_axis = half_split > 0 ? Vec3(d.v / half_split) : Vec3(0, 1, 0);

  const Vec2 psi = psi0.amplitudes();
  const Mat2 sx = pauli(rot_axis);
  const Mat2 sh = pauli(h_axis);

  // <0| [cos u - i sin u sx][cos v - i sin v sh] |psi0>, expanded over the
  // four exponentials e^{i(pu + qv)}.
  const cplx A = psi(0);
  const cplx B = (sh * psi)(0);
  const cplx C = (sx * psi)(0);
  const cplx D = (sx * sh * psi)(0);
  auto F = [&](int p, int q) {
    return 0.25 * (A - double(q) * B - double(p) * C + double(p) * double(q) * D);
  };
  const cplx Fpp = F(+1, +1), Fpm = F(+1, -1), Fmp = F(-1, +1), Fmm = F(-1, -1);

  ModeSpectrum spec;
  spec.omega_mod = omega_mod;
  spec.delta_lambda = 2.0 * half_split;
  spec.convention = ZoneConvention::FirstZone;
  spec.K = 0;
  spec.residual = 0.0;

  // coefficients of psi0 on the two dressed states
  Eigen::SelfAdjointEigenSolver<Mat2> es(sh);
  spec.c_plus = es.eigenvectors().col(1).dot(psi);
  spec.c_minus = es.eigenvectors().col(0).dot(psi);

  const double dc =
      std::norm(Fpp) + std::norm(Fpm) + std::norm(Fmp) + std::norm(Fmm);
  auto push = [&](int i, int n, cplx a) {
    ModeEntry e;
    e.i = i;
    e.n = n;
    e.omega = n * omega_mod + i * spec.delta_lambda;
    e.amp = std::abs(a);
    e.phase = std::arg(a);
    spec.entries.push_back(e);
  };
  push(0, 0, dc);
  push(+1, 0, 2.0 * (Fpp * std::conj(Fpm) + Fmp * std::conj(Fmm)));
  push(-1, 1, 2.0 * (Fpm * std::conj(Fmp)));
  push(0, 1, 2.0 * (Fpp * std::conj(Fmp) + Fpm * std::conj(Fmm)));
  push(+1, 1, 2.0 * (Fpp * std::conj(Fmm)));
  return spec;
}

ModeSpectrum rwa_mode_spectrum(const DriveConfig& cfg, const InitialState& psi0) {
  const RwaSolution s = rwa_solve(cfg);
  return static_frame_mode_spectrum(s.h2, s.x_axis, cfg.omega_mod(), psi0);
}

ModeSpectrum rwa_floquet_spectrum(const DriveConfig& cfg, const InitialState& psi0,
                                  int K) {
  const RwaSolution s = rwa_solve(cfg);
  const FourierBlocks blocks = fourier_components(cfg);

  // Basis change aligning the static field with z: columns are the sigma_x'
  // eigenvectors, so R^H sigma_x' R = sigma_z.
  const double half = 0.5 * (0.5 * pi + s.beta);
  Mat2 R;
  R << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);

  std::vector<Mat2> aligned(2, Mat2::Zero());
  aligned[0] = R.adjoint() * blocks.block(0) * R;
  // keep only the co-rotating raising part of the first harmonic
  const Mat2 h1 = R.adjoint() * blocks.block(1) * R;
  aligned[1](0, 1) = h1(0, 1);

  const FourierBlocks rwa_blocks(cfg.omega_mod(), std::move(aligned));
  const int k_use = std::max(K, rwa_blocks.bandwidth());
  const auto eig = eigensolve(assemble(rwa_blocks, k_use));
  FloquetSolution sol =
      select_quasienergies(eig, cfg.omega_mod(), ZoneConvention::FirstZone);

  // back to the measurement frame
  for (auto& b : sol.blocks_plus) b = R * b;
  for (auto& b : sol.blocks_minus) b = R * b;

  const InitialMatch match = match_initial_state(sol, psi0);
  ModeSpectrum spec = mode_amplitudes(sol, match, std::max(5, k_use));
  return spec;
}

}  // namespace mollow
