#include <gtest/gtest.h>

#include <cmath>

#include "mobius_aug/augment.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace mobius_aug {
namespace {

using test::gradient_image;
using test::pattern_image;

std::size_t zero_pixels(const ImageBuffer& img) {
  std::size_t n = 0;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      bool all = true;
      for (int ch = 0; ch < img.channels(); ++ch) all = all && img.at(r, c, ch) == 0;
      n += all;
    }
  }
  return n;
}

ImageBuffer mirrored(const ImageBuffer& img) {
  ImageBuffer out(img.width(), img.height(), img.channels());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      for (int ch = 0; ch < img.channels(); ++ch) out.at(r, c, ch) = img.at(r, img.width() - 1 - c, ch);
    }
  }
  return out;
}

TEST(CropFlip, NoPadNoFlipIsIdentity) {
  const ImageBuffer img = pattern_image(32, 32);
  Rng rng(1);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(crop_flip(img, 0, 0.0, rng), img);
}

TEST(CropFlip, AlwaysFlipMirrors) {
  const ImageBuffer img = pattern_image(31, 17);
  Rng rng(2);
  AppliedOps ops;
  EXPECT_EQ(crop_flip(img, 0, 1.0, rng, &ops), mirrored(img));
  EXPECT_TRUE(ops.flipped);
}

TEST(CropFlip, OffsetsStayInRangeAndAreReproducible) {
  const ImageBuffer img = pattern_image(32, 32);
  Rng a(3), b(3);
  std::array<int, 9> hist{};
  for (int i = 0; i < 2000; ++i) {
    AppliedOps oa, ob;
    const ImageBuffer x = crop_flip(img, 4, 0.5, a, &oa);
    const ImageBuffer y = crop_flip(img, 4, 0.5, b, &ob);
    ASSERT_EQ(x, y);
    ASSERT_GE(oa.crop_x, 0);
    ASSERT_LE(oa.crop_x, 8);
    ASSERT_GE(oa.crop_y, 0);
    ASSERT_LE(oa.crop_y, 8);
    ++hist[oa.crop_x];
    EXPECT_TRUE(x.same_shape(img));
  }
  for (int v : hist) EXPECT_GT(v, 0);
}

TEST(CropFlip, MatchesPaddedCropOracle) {
  const ImageBuffer img = pattern_image(12, 9, 3);
  const int pad = 3;
  for (int x = 0; x <= 2 * pad; ++x) {
    for (int y = 0; y <= 2 * pad; ++y) {
      for (bool flip : {false, true}) {
        // Build the padded canvas explicitly, crop, then mirror.
        ImageBuffer padded(12 + 2 * pad, 9 + 2 * pad, 3);
        for (int r = 0; r < 9; ++r) {
          for (int c = 0; c < 12; ++c) {
            for (int ch = 0; ch < 3; ++ch) padded.at(r + pad, c + pad, ch) = img.at(r, c, ch);
          }
        }
        ImageBuffer want(12, 9, 3);
        for (int r = 0; r < 9; ++r) {
          for (int c = 0; c < 12; ++c) {
            for (int ch = 0; ch < 3; ++ch) want.at(r, c, ch) = padded.at(r + y, c + x, ch);
          }
        }
        if (flip) want = mirrored(want);
        EXPECT_EQ(crop_flip_at(img, pad, x, y, flip), want) << x << "," << y << "," << flip;
      }
    }
  }
}

TEST(Cutout, SizeZeroIsIdentity) {
  const ImageBuffer img = pattern_image(32, 32);
  Rng rng(4);
  EXPECT_EQ(cutout(img, 0, rng), img);
}

TEST(Cutout, FullSizeAtCenterZeroesEverything) {
  const ImageBuffer img(32, 32, 3, std::uint8_t{255});
  EXPECT_EQ(zero_pixels(cutout_at(img, 32, 16, 16)), 32u * 32u);
  EXPECT_EQ(zero_pixels(cutout_at(img, 16, 16, 16)), 16u * 16u);
  EXPECT_EQ(zero_pixels(cutout_at(img, 16, 0, 0)), 8u * 8u);
}

TEST(Cutout, RandomSquareAreaIsBoundedAndReproducible) {
  const ImageBuffer img(32, 32, 3, std::uint8_t{255});
  Rng a(5), b(5);
  for (int i = 0; i < 500; ++i) {
    AppliedOps ops;
    const ImageBuffer x = cutout(img, 16, a, &ops);
    const std::size_t zeros = zero_pixels(x);
    EXPECT_GE(zeros, 64u);
    EXPECT_LE(zeros, 256u);
    ASSERT_TRUE(ops.cutout.has_value());
    EXPECT_EQ(zeros, zero_pixels(cutout_at(img, 16, ops.cutout->row, ops.cutout->col)));
    EXPECT_EQ(x, cutout(img, 16, b));
  }
}

TEST(Cutout, RejectsOversize) {
  Rng rng(6);
  EXPECT_THROW(cutout(ImageBuffer(8, 8, 1), 9, rng), ConfigError);
}

TEST(AugmentImage, ZeroProbabilityOnlyCropsAndFlips) {
  const ImageBuffer img = gradient_image(32, 32);
  AugmentConfig cfg;
  cfg.mobius_prob = 0.0;
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const AugmentResult res = augment_image(img, cfg, rng);
    EXPECT_FALSE(res.ops.mobius.has_value());
    EXPECT_FALSE(res.ops.cutout.has_value());
    const auto names = res.ops.names();
    EXPECT_EQ(names[0].rfind("crop(", 0), 0u);
    EXPECT_EQ(res.image, crop_flip_at(img, 4, res.ops.crop_x, res.ops.crop_y, res.ops.flipped));
  }
}

TEST(AugmentImage, DefinedPresetCarriesCoefficients) {
  const ImageBuffer img = gradient_image(32, 32);
  AugmentConfig cfg;
  cfg.mobius_prob = 1.0;
  cfg.mode = Defined{Preset::ClockwiseTwist};
  cfg.crop_pad = 0;
  cfg.flip_prob = 0.0;
  Rng rng(8);
  const AugmentResult res = augment_image(img, cfg, rng);
  ASSERT_TRUE(res.ops.mobius.has_value());
  EXPECT_EQ(*res.ops.mobius, preset_transform(Preset::ClockwiseTwist, ImageGeometry::square(32)));
  EXPECT_EQ(res.ops.names()[0], "mobius:defined:clockwise-twist");
  EXPECT_EQ(res.image, warp_inverse(img, *res.ops.mobius, Interpolation::Bicubic));
}

TEST(AugmentImage, AdmissibleDrawsPassRecheck) {
  const ImageBuffer img = gradient_image(32, 32);
  AugmentConfig cfg;
  cfg.mobius_prob = 1.0;
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const AugmentResult res = augment_image(img, cfg, rng);
    ASSERT_TRUE(res.ops.mobius.has_value());
    EXPECT_TRUE(oracle::admissible_by_definition(*res.ops.mobius, 2.0, 32.0));
    EXPECT_GE(res.ops.sampler_attempts, 1u);
  }
}

TEST(AugmentImage, InclusionRateMatchesProbability) {
  const ImageBuffer img(8, 8, 1);
  for (double q : {0.1, 0.2, 0.3, 0.5}) {
    AugmentConfig cfg;
    cfg.mobius_prob = q;
    cfg.mode = Defined{Preset::Spread};
    cfg.interp = Interpolation::Nearest;
    Rng rng(10);
    const int n = 10000;
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += augment_image(img, cfg, rng).ops.mobius.has_value();
    EXPECT_LE(std::abs(double(hits) / n - q), oracle::binomial_3sigma(q, n)) << "q = " << q;
  }
}

TEST(AugmentImage, ExclusiveSkipsCutoutAfterWarp) {
  const ImageBuffer img = gradient_image(32, 32);
  AugmentConfig cfg;
  cfg.mobius_prob = 0.5;
  cfg.mode = Defined{Preset::SpreadTwist};
  cfg.cutout_size = 8;
  cfg.exclusive = true;
  Rng rng(11);
  int warped = 0, cut = 0;
  for (int i = 0; i < 400; ++i) {
    const AppliedOps ops = augment_image(img, cfg, rng).ops;
    EXPECT_FALSE(ops.mobius && ops.cutout);
    EXPECT_TRUE(ops.mobius || ops.cutout);
    warped += ops.mobius.has_value();
    cut += ops.cutout.has_value();
  }
  EXPECT_GT(warped, 0);
  EXPECT_GT(cut, 0);

  cfg.exclusive = false;
  cfg.mobius_prob = 1.0;
  EXPECT_TRUE(augment_image(img, cfg, rng).ops.cutout.has_value());
}

TEST(AugmentImage, SameSeedSameResult) {
  const ImageBuffer img = gradient_image(32, 32);
  AugmentConfig cfg;
  cfg.mobius_prob = 0.5;
  cfg.cutout_size = 8;
  Rng a(12), b(12);
  for (int i = 0; i < 50; ++i) {
    const AugmentResult x = augment_image(img, cfg, a);
    const AugmentResult y = augment_image(img, cfg, b);
    EXPECT_EQ(x.image, y.image);
    EXPECT_EQ(x.ops.names(), y.ops.names());
  }
}

TEST(AugmentConfig, Validation) {
  const ImageBuffer img(16, 16, 3);
  Rng rng(13);
  auto bad = [&](auto mutate) {
    AugmentConfig cfg;
    mutate(cfg);
    EXPECT_THROW(augment_image(img, cfg, rng), ConfigError);
  };
  bad([](AugmentConfig& c) { c.mobius_prob = 1.5; });
  bad([](AugmentConfig& c) { c.mobius_prob = std::nan(""); });
  bad([](AugmentConfig& c) { c.flip_prob = -0.1; });
  bad([](AugmentConfig& c) { c.crop_pad = -1; });
  bad([](AugmentConfig& c) { c.cutout_size = 17; });
  bad([](AugmentConfig& c) { c.count_per_image = 0; });
  bad([](AugmentConfig& c) { c.mode = MAdmissible{1.0}; });
  AugmentConfig ok;
  ok.cutout_size = 16;
  EXPECT_NO_THROW(augment_image(img, ok, rng));
}

}  // namespace
}  // namespace mobius_aug
