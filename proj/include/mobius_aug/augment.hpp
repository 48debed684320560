#pragma once

// The augmentation policy: probabilistic Mobius warp, then crop-and-flip, then cutout.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mobius_aug/admissibility.hpp"
#include "mobius_aug/errors.hpp"
#include "mobius_aug/image.hpp"
#include "mobius_aug/random.hpp"
#include "mobius_aug/raster.hpp"
#include "mobius_aug/sampler.hpp"

namespace mobius_aug {

struct AugmentConfig {
  double mobius_prob = 0.2;
  SamplerMode mode = MAdmissible{2.0};
  Interpolation interp = Interpolation::Bicubic;
  FillPolicy fill = FillPolicy::black();
  int crop_pad = 4;
  double flip_prob = 0.5;
  int cutout_size = 0;  ///< 0 disables cutout
  /// When set, cutout is skipped on samples that received a Mobius warp.
  bool exclusive = false;
  std::uint64_t seed = 0;
  int count_per_image = 1;
  SamplerOptions sampler;

  void validate() const {
    auto probability = [](double p, const char* name) {
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must be in [0, 1]");
    };
    probability(mobius_prob, "mobius_prob");
    probability(flip_prob, "flip_prob");
    if (crop_pad < 0) throw ConfigError("crop_pad must be >= 0");
    if (cutout_size < 0) throw ConfigError("cutout_size must be >= 0");
    if (count_per_image < 1) throw ConfigError("count_per_image must be >= 1");
    if (const auto* m = std::get_if<MAdmissible>(&mode); m && !(m->M > 1.0 && std::isfinite(m->M))) {
      throw ConfigError("M must be > 1");
    }
    if (sampler.max_attempts == 0) throw ConfigError("max_attempts must be >= 1");
  }

  /// Checks the size-dependent invariant cutout_size <= min(W, H).
  void validate_for(const ImageBuffer& img) const {
    validate();
    if (cutout_size > std::min(img.width(), img.height())) {
      throw ConfigError("cutout_size " + std::to_string(cutout_size) + " exceeds image size " +
                        std::to_string(img.width()) + "x" + std::to_string(img.height()));
    }
  }
};

/// What augment_image did to one sample, in application order.
struct AppliedOps {
  std::optional<MobiusTransform> mobius;
  std::string mobius_mode;
  std::uint64_t sampler_attempts = 0;
  int crop_x = 0;  ///< offset of the crop window inside the padded image
  int crop_y = 0;
  bool flipped = false;
  struct Cutout {
    int row = 0;
    int col = 0;
    int size = 0;
  };
  std::optional<Cutout> cutout;

  /// e.g. {"mobius", "crop(4,2)", "flip", "cutout(10,3,16)"}.
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    if (mobius) out.push_back("mobius:" + mobius_mode);
    out.push_back("crop(" + std::to_string(crop_x) + "," + std::to_string(crop_y) + ")");
    if (flipped) out.push_back("flip");
    if (cutout) {
      out.push_back("cutout(" + std::to_string(cutout->row) + "," + std::to_string(cutout->col) +
                    "," + std::to_string(cutout->size) + ")");
    }
    return out;
  }
};

/// Crop window (x, y) into the image zero-padded by `pad` on every side, optionally mirrored.
inline ImageBuffer crop_flip_at(const ImageBuffer& img, int pad, int crop_x, int crop_y, bool flip) {
  const int w = img.width();
  const int h = img.height();
  const int nc = img.channels();
  ImageBuffer out(w, h, nc);
  for (int r = 0; r < h; ++r) {
    const int sr = r + crop_y - pad;
    if (sr < 0 || sr >= h) continue;
    for (int c = 0; c < w; ++c) {
      const int sc = (flip ? (w - 1 - c) : c) + crop_x - pad;
      if (sc < 0 || sc >= w) continue;
      std::copy(img.pixel(sr, sc), img.pixel(sr, sc) + nc, out.pixel(r, c));
    }
  }
  return out;
}

/// Pads by `pad`, takes a uniform W x H crop, and mirrors horizontally with probability flip_prob.
inline ImageBuffer crop_flip(const ImageBuffer& img, int pad, double flip_prob, Rng& rng,
                             AppliedOps* ops = nullptr) {
  if (pad < 0) throw ConfigError("crop pad must be >= 0");
  const int x = static_cast<int>(rng.uniform_int(0, 2 * pad));
  const int y = static_cast<int>(rng.uniform_int(0, 2 * pad));
  const bool flip = rng.bernoulli(flip_prob);
  if (ops) {
    ops->crop_x = x;
    ops->crop_y = y;
    ops->flipped = flip;
  }
  return crop_flip_at(img, pad, x, y, flip);
}

/// Zeroes the size x size square centered on (row, col), clipped to the image.
inline ImageBuffer cutout_at(const ImageBuffer& img, int size, int row, int col) {
  ImageBuffer out = img;
  if (size <= 0) return out;
  const int r0 = std::max(0, row - size / 2);
  const int r1 = std::min(img.height(), row - size / 2 + size);
  const int c0 = std::max(0, col - size / 2);
  const int c1 = std::min(img.width(), col - size / 2 + size);
  for (int r = r0; r < r1; ++r) {
    for (int c = c0; c < c1; ++c) {
      std::fill(out.pixel(r, c), out.pixel(r, c) + img.channels(), std::uint8_t{0});
    }
  }
  return out;
}

/// Cutout centered at a uniform random pixel. size = 0 returns the input unchanged.
inline ImageBuffer cutout(const ImageBuffer& img, int size, Rng& rng, AppliedOps* ops = nullptr) {
  if (size < 0 || size > std::min(img.width(), img.height())) {
    throw ConfigError("cutout size must be in [0, min(W, H)]");
  }
  if (size == 0) return img;
  const int row = static_cast<int>(rng.uniform_int(0, img.height() - 1));
  const int col = static_cast<int>(rng.uniform_int(0, img.width() - 1));
  if (ops) ops->cutout = AppliedOps::Cutout{row, col, size};
  return cutout_at(img, size, row, col);
}

struct AugmentResult {
  ImageBuffer image;
  AppliedOps ops;
};

/// One draw of the policy. The order of random draws is part of the reproducibility
/// contract: inclusion coin, sampler, crop offsets, flip coin, cutout center.
inline AugmentResult augment_image(const ImageBuffer& img, const AugmentConfig& cfg, Rng& rng) {
  cfg.validate_for(img);
  AugmentResult result;
  const ImageBuffer* current = &img;
  ImageBuffer warped;
  if (rng.bernoulli(cfg.mobius_prob)) {
    const SampleResult s = sample(cfg.mode, ImageGeometry{img.width(), img.height()}, rng, cfg.sampler);
    warped = warp_inverse(img, s.transform, cfg.interp, cfg.fill);
    current = &warped;
    result.ops.mobius = s.transform;
    result.ops.mobius_mode = mode_name(cfg.mode);
    result.ops.sampler_attempts = s.stats.attempts;
  }
  result.image = crop_flip(*current, cfg.crop_pad, cfg.flip_prob, rng, &result.ops);
  if (cfg.cutout_size > 0 && !(cfg.exclusive && result.ops.mobius)) {
    result.image = cutout(result.image, cfg.cutout_size, rng, &result.ops);
  }
  return result;
}

}  // namespace mobius_aug
