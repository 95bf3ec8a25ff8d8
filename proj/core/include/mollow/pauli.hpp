#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace mollow {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using Vec3 = Eigen::Vector3d;

inline const Mat2& sigma_x() {
  static const Mat2 m = (Mat2() << 0, 1, 1, 0).finished();
  return m;
}

inline const Mat2& sigma_y() {
  static const Mat2 m = (Mat2() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
  return m;
}

inline const Mat2& sigma_z() {
  static const Mat2 m = (Mat2() << 1, 0, 0, -1).finished();
  return m;
}

// v . sigma
inline Mat2 pauli(const Vec3& v) {
  Mat2 m;
  m << v.z(), cplx(v.x(), -v.y()), cplx(v.x(), v.y()), -v.z();
  return m;
}

// Pauli decomposition of a Hermitian 2x2 matrix: H = c0*I + v.sigma.
struct PauliDecomp {
  double c0;
  Vec3 v;
};

inline PauliDecomp pauli_decompose(const Mat2& h) {
  PauliDecomp d;
  d.c0 = 0.5 * std::real(h(0, 0) + h(1, 1));
  d.v.x() = std::real(h(0, 1));
  d.v.y() = -std::imag(h(0, 1));
  d.v.z() = 0.5 * std::real(h(0, 0) - h(1, 1));
  return d;
}

// exp(-i H t) for Hermitian H, via the closed-form Pauli rotation.
// Exactly unitary up to rounding; no series truncation.
inline Mat2 pauli_exp(const Mat2& h, double t) {
  const PauliDecomp d = pauli_decompose(h);
  const double r = d.v.norm();
  const cplx global = std::exp(cplx(0, -d.c0 * t));
  if (r == 0.0) return global * Mat2::Identity();
  const double ang = r * t;
  Mat2 u = std::cos(ang) * Mat2::Identity() -
           cplx(0, 1) * (std::sin(ang) / r) * pauli(d.v);
  return global * u;
}

}  // namespace mollow
