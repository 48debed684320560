#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "mobius_aug/sampler.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace mobius_aug {
namespace {

const ImageGeometry kP32 = ImageGeometry::square(32);

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  Rng a = Rng::stream(7, 0), b = Rng::stream(7, 0), c = Rng::stream(7, 1), d = Rng::stream(8, 0);
  const auto x = a.next_u64();
  EXPECT_EQ(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
  EXPECT_NE(x, d.next_u64());
}

TEST(Rng, UniformIntCoversRange) {
  Rng rng(3);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.uniform_int(0, 8);
    ASSERT_GE(v, 0);
    ASSERT_LE(v, 8);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 9u);
  EXPECT_EQ(rng.uniform_int(5, 5), 5);
}

TEST(SampleAdmissible, EveryDrawPassesIndependentRecheck) {
  Rng rng(42);
  SampleStats total;
  for (int i = 0; i < 10000; ++i) {
    const SampleResult s = sample_admissible(kP32, 2.0, rng);
    ASSERT_TRUE(oracle::admissible_by_definition(s.transform, 2.0, 32.0)) << "draw " << i;
    ASSERT_TRUE(check(s.transform, {2.0, kP32}).passed);
    EXPECT_EQ(s.stats.accepted, 1u);
    EXPECT_GE(s.stats.attempts, 1u);
    total.attempts += s.stats.attempts;
    total.accepted += s.stats.accepted;
  }
  EXPECT_LE(total.accepted, total.attempts);
  EXPECT_GT(total.acceptance_rate(), 0.0);
}

TEST(SampleAdmissible, SweepOfBounds) {
  for (double M : {1.5, 2.0, 4.0, 8.0}) {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
      const SampleResult s = sample_admissible(kP32, M, rng);
      EXPECT_TRUE(oracle::admissible_by_definition(s.transform, M, 32.0));
    }
  }
}

TEST(SampleAdmissible, SeedDeterminism) {
  Rng a(123), b(123);
  for (int i = 0; i < 50; ++i) {
    const SampleResult x = sample_admissible(kP32, 2.0, a);
    const SampleResult y = sample_admissible(kP32, 2.0, b);
    EXPECT_EQ(x.transform, y.transform);
    EXPECT_EQ(x.stats.attempts, y.stats.attempts);
  }
}

TEST(SampleAdmissible, NearOneBoundExhausts) {
  Rng rng(9);
  try {
    sample_admissible(kP32, 1.000001, rng);
    FAIL() << "expected ExhaustionError";
  } catch (const ExhaustionError& e) {
    EXPECT_EQ(e.attempts(), 10000u);
  }
}

TEST(SampleAdmissible, RejectsInvalidBound) {
  Rng rng(1);
  EXPECT_THROW(sample_admissible(kP32, 1.0, rng), ConfigError);
  EXPECT_THROW(sample_admissible(ImageGeometry::square(1), 2.0, rng), ConfigError);
}

TEST(SampleAdmissible, NonSquareGeometry) {
  Rng rng(4);
  const ImageGeometry g{48, 32};
  for (int i = 0; i < 100; ++i) {
    EXPECT_TRUE(check(sample_admissible(g, 2.0, rng).transform, {2.0, g}).passed);
  }
}

TEST(SampleUnconstrained, NonDegenerateAndSometimesAdmissible) {
  Rng rng(77);
  int admissible = 0;
  for (int i = 0; i < 10000; ++i) {
    const MobiusTransform t = sample_unconstrained(kP32, rng);
    ASSERT_FALSE(t.is_degenerate());
    admissible += is_admissible(t, {2.0, kP32});
  }
  EXPECT_GT(admissible, 0);
  EXPECT_LT(admissible, 10000);
}

TEST(SampleUnconstrained, SeedDeterminism) {
  Rng a(5), b(5);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(sample_unconstrained(kP32, a), sample_unconstrained(kP32, b));
}

TEST(Presets, NamesRoundTrip) {
  std::set<std::string_view> names;
  for (Preset p : kAllPresets) {
    names.insert(preset_name(p));
    EXPECT_EQ(parse_preset(preset_name(p)), p);
  }
  EXPECT_EQ(names.size(), 8u);
  EXPECT_EQ(parse_preset("clockwise-twist"), Preset::ClockwiseTwist);
  EXPECT_FALSE(parse_preset("Clockwise-Twist").has_value());
}

TEST(Presets, ClockwiseTwistPointsAt32) {
  // Independent evaluation of the published table at x = y = 32.
  const double x = 32, y = 32;
  const double s4 = std::sin(0.4 * std::numbers::pi), c4 = std::cos(0.4 * std::numbers::pi);
  const double c1 = std::cos(0.1 * std::numbers::pi), s1 = std::sin(0.1 * std::numbers::pi);
  const auto corr = preset_correspondence(Preset::ClockwiseTwist, kP32);
  EXPECT_EQ(corr.sources[0], Complex(1, 16));
  EXPECT_EQ(corr.sources[1], Complex(16, 25.6));
  EXPECT_NEAR(corr.sources[2].real(), 19.2, 1e-12);
  EXPECT_EQ(corr.sources[2].imag(), 16);
  EXPECT_EQ(corr.targets[0], Complex(16, 31));
  EXPECT_NEAR(std::abs(corr.targets[1] - Complex(x / 2 + 0.3 * s4 * y, y / 2 + 0.3 * c4 * y)), 0, 1e-12);
  EXPECT_NEAR(std::abs(corr.targets[2] - Complex(x / 2 + 0.1 * c1 * y, y / 2 - 0.1 * s1 * x)), 0, 1e-12);
  // Rounded values.
  EXPECT_NEAR(corr.targets[1].real(), 25.13, 0.005);
  EXPECT_NEAR(corr.targets[1].imag(), 18.97, 0.005);
  EXPECT_NEAR(corr.targets[2].real(), 19.04, 0.005);
  EXPECT_NEAR(corr.targets[2].imag(), 15.01, 0.005);
}

TEST(Presets, InversePointsAt32) {
  const auto corr = preset_correspondence(Preset::Inverse, kP32);
  const std::array<Complex, 3> src = {Complex(1, 16), Complex(16, 28.8), Complex(31, 16)};
  const std::array<Complex, 3> dst = {Complex(31, 16), Complex(16, 3.2), Complex(1, 16)};
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(std::abs(corr.sources[k] - src[k]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(corr.targets[k] - dst[k]), 0.0, 1e-12);
  }
}

TEST(Presets, AxisConventionOnNonSquare) {
  // x = height feeds Re, y = width feeds Im.
  const auto corr = preset_correspondence(Preset::Spread, {100, 50});
  EXPECT_NEAR(std::abs(corr.sources[0] - Complex(0.3 * 50, 0.5 * 100)), 0.0, 1e-12);
}

TEST(Presets, TotalAndExactAcrossSizes) {
  for (int p : {32, 64, 224}) {
    for (Preset preset : kAllPresets) {
      const ImageGeometry g = ImageGeometry::square(p);
      const auto corr = preset_correspondence(preset, g);
      const MobiusTransform t = preset_transform(preset, g);
      EXPECT_FALSE(t.is_degenerate());
      for (int k = 0; k < 3; ++k) {
        EXPECT_LE(std::abs(apply(t, corr.sources[k]) - corr.targets[k]), 1e-9 * (1 + std::abs(corr.targets[k])))
            << preset_name(preset) << " p=" << p;
      }
    }
  }
}

TEST(Sample, DispatchesOnMode) {
  Rng rng(1);
  EXPECT_TRUE(check(sample(MAdmissible{2.0}, kP32, rng).transform, {2.0, kP32}).passed);
  EXPECT_EQ(sample(Defined{Preset::Spread}, kP32, rng).transform, preset_transform(Preset::Spread, kP32));
  EXPECT_FALSE(sample(Unconstrained{}, kP32, rng).transform.is_degenerate());
  EXPECT_EQ(mode_name(Defined{Preset::InverseSpread}), "defined:inverse-spread");
}

}  // namespace
}  // namespace mobius_aug
