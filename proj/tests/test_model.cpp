#include <doctest.h>

#include <cmath>
#include <random>

#include "mollow/model.hpp"

using namespace mollow;

namespace {

DriveConfig fig2_config() {
  DriveConfig cfg;
  cfg.delta_mhz = 0.0;
  cfg.omega_main_mhz = 3.75;
  cfg.omega_mod_mhz = 3.75;
  cfg.eps_mod_mhz = 2.08;
  cfg.phase = 0.0;
  cfg.scheme = Scheme::AmplitudeMod;
  return cfg;
}

}  // namespace

TEST_CASE("unit conversion applies 2*pi exactly once") {
  DriveConfig cfg = fig2_config();
  CHECK(cfg.omega_main() == doctest::Approx(2.0 * pi * 3.75).epsilon(1e-15));
  // MHz in, MHz out
  CHECK(to_mhz(cfg.omega_main()) == doctest::Approx(3.75).epsilon(1e-12));
}

TEST_CASE("validate: omega_mod must be positive") {
  DriveConfig cfg = fig2_config();
  cfg.omega_mod_mhz = 0.0;
  const auto v = validate(cfg);
  REQUIRE_FALSE(v.empty());
  bool found = false;
  for (const auto& x : v)
    if (x.field == "omega_mod_MHz" && x.rule.find("positive") != std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("validate: reference parameters are clean") {
  CHECK(validate(fig2_config()).empty());
}

TEST_CASE("validate: negative clip level rejected") {
  DriveConfig cfg = fig2_config();
  cfg.clip_level_mhz = -1.0;
  const auto v = validate(cfg);
  REQUIRE_FALSE(v.empty());
  bool found = false;
  for (const auto& x : v)
    if (x.field == "clip_level" && x.rule.find("positive") != std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("lab frame warning flag") {
  DriveConfig cfg = fig2_config();
  CHECK_FALSE(cfg.lab_frame_rwa_warning());
  cfg.lab_frame = LabFrame{30.0, 30.0};
  CHECK(cfg.lab_frame_rwa_warning());  // 30 < 10*3.75
  cfg.lab_frame = LabFrame{100.0, 100.0};
  CHECK_FALSE(cfg.lab_frame_rwa_warning());
}

TEST_CASE("bloch/state conversions on the axes") {
  auto s = bloch_to_state(Vec3(0, 0, 1));
  CHECK(s.theta == doctest::Approx(0.0).epsilon(1e-14));

  s = bloch_to_state(Vec3(0, 1, 0));
  CHECK(s.theta == doctest::Approx(0.5 * pi));
  CHECK(s.phi_s == doctest::Approx(0.5 * pi));

  s = bloch_to_state(Vec3(1, 0, 0));
  CHECK(s.theta == doctest::Approx(0.5 * pi));
  CHECK(s.phi_s == doctest::Approx(0.0));
}

TEST_CASE("bloch/state round trip is an involution") {
  std::mt19937 rng(1234);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 200; ++trial) {
    Vec3 b(gauss(rng), gauss(rng), gauss(rng));
    if (b.norm() < 1e-3) continue;
    b.normalize();
    const InitialState s = bloch_to_state(b);
    const Vec3 back = state_to_bloch(s);
    CHECK((back - b).norm() < 1e-12);
    const InitialState s2 = bloch_to_state(back);
    CHECK((state_to_bloch(s2) - b).norm() < 1e-12);
  }
}

TEST_CASE("bloch_to_state rejects non-unit vectors") {
  CHECK_THROWS_AS(bloch_to_state(Vec3(0, 0, 1.1)), std::invalid_argument);
}

TEST_CASE("initial state amplitudes normalized") {
  const InitialState s{1.1, 0.7};
  CHECK(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("decay envelopes are 1 at t=0 and validated") {
  DecayModel d;
  d.envelope = Envelope::Gaussian;
  d.default_tau_us = 2.0;
  d.tau_us[{0, 1}] = 0.5;
  CHECK(d.envelope_at(0.0, 0, 1) == doctest::Approx(1.0));
  CHECK(d.envelope_at(0.5, 0, 1) == doctest::Approx(std::exp(-1.0)));
  CHECK(d.envelope_at(1.0, 1, 1) == doctest::Approx(std::exp(-0.25)));
  CHECK(d.validate().empty());

  d.tau_us[{-1, 1}] = -1.0;
  CHECK_FALSE(d.validate().empty());

  DecayModel e;
  e.envelope = Envelope::Exponential;
  e.default_tau_us = 2.0;
  CHECK(e.envelope_at(0.0, 0, 0) == doctest::Approx(1.0));
  CHECK(e.envelope_at(2.0, 0, 0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("config json round trip is bit exact") {
  ConfigDocument doc;
  doc.drive = fig2_config();
  doc.drive.extra_tone = ExtraTone{0.2, 2, Axis::Y};
  doc.drive.clip_level_mhz = 8.0;
  doc.drive.lab_frame = LabFrame{100.0, 100.0};
  doc.initial_state = InitialState{1.1, 0.7};

  const std::string text = config_to_json(doc);
  const ConfigDocument back = parse_config(text);
  CHECK(back == doc);
  CHECK(config_to_json(back) == text);  // byte-identical re-export
}

TEST_CASE("config parser rejects unknown keys at every level") {
  CHECK_THROWS_AS(parse_config(R"({"delta_MHz": 0, "bogus": 1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_config(R"({"extra_tone": {"eps2_MHz": 1, "oops": 2}})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_config(R"({"initial_state": {"theta_rad": 0, "phi": 0}})"),
      std::invalid_argument);
}

TEST_CASE("config parser normalizes the drive phase") {
  const auto doc = parse_config(R"({"omega_mod_MHz": 1, "phase_rad": -1.0})");
  CHECK(doc.drive.phase == doctest::Approx(two_pi - 1.0));
  CHECK(doc.drive.phase >= 0.0);
  CHECK(doc.drive.phase < two_pi);
}

TEST_CASE("MHz ingestion round trip within 1e-12 relative") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> uni(1e-3, 1e3);
  for (int trial = 0; trial < 500; ++trial) {
    const double f = uni(rng);
    const double again = to_mhz(rad_per_us(f));
    CHECK(std::abs(again - f) <= 1e-12 * f);
  }
}

TEST_CASE("overrides with dotted keys") {
  ConfigDocument doc;
  doc.drive = fig2_config();
  const ConfigDocument out = apply_overrides(
      doc, {"eps_mod_MHz=1.0", "extra_tone.eps2_MHz=0.2",
            "extra_tone.harmonic=3", "extra_tone.axis=x", "scheme=phase"});
  CHECK(out.drive.eps_mod_mhz == 1.0);
  REQUIRE(out.drive.extra_tone.has_value());
  CHECK(out.drive.extra_tone->eps2_mhz == 0.2);
  CHECK(out.drive.extra_tone->harmonic == 3);
  CHECK(out.drive.extra_tone->axis == Axis::X);
  CHECK(out.drive.scheme == Scheme::PhaseMod);
  CHECK_THROWS_AS(apply_overrides(doc, {"not_a_key=1"}), std::invalid_argument);
}
