#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mobius_aug/errors.hpp"

namespace mobius_aug {

/// 8-bit raster, row-major, channels interleaved (1 = gray, 3 = RGB).
class ImageBuffer {
 public:
  ImageBuffer() = default;

  ImageBuffer(int width, int height, int channels, std::uint8_t value = 0)
      : width_(width), height_(height), channels_(channels) {
    validate();
    samples_.assign(sample_count(), value);
  }

  ImageBuffer(int width, int height, int channels, std::vector<std::uint8_t> samples)
      : width_(width), height_(height), channels_(channels), samples_(std::move(samples)) {
    validate();
    if (samples_.size() != sample_count()) {
      throw ConfigError("image sample count " + std::to_string(samples_.size()) +
                        " does not match " + std::to_string(width) + "x" +
                        std::to_string(height) + "x" + std::to_string(channels));
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return samples_.empty(); }

  std::size_t sample_count() const noexcept {
    return static_cast<std::size_t>(width_) * height_ * channels_;
  }
  std::size_t index(int row, int col, int ch = 0) const noexcept {
    return (static_cast<std::size_t>(row) * width_ + col) * channels_ + ch;
  }

  std::uint8_t at(int row, int col, int ch = 0) const noexcept { return samples_[index(row, col, ch)]; }
  std::uint8_t& at(int row, int col, int ch = 0) noexcept { return samples_[index(row, col, ch)]; }

  std::span<const std::uint8_t> samples() const noexcept { return samples_; }
  std::span<std::uint8_t> samples() noexcept { return samples_; }
  const std::uint8_t* pixel(int row, int col) const noexcept { return &samples_[index(row, col)]; }
  std::uint8_t* pixel(int row, int col) noexcept { return &samples_[index(row, col)]; }

  bool same_shape(const ImageBuffer& o) const noexcept {
    return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
  }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  void validate() const {
    if (width_ < 1 || height_ < 1) throw ConfigError("image dimensions must be positive");
    if (channels_ != 1 && channels_ != 3) throw ConfigError("image must have 1 or 3 channels");
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> samples_;
};

/// Gray images are replicated to three channels; RGB images are copied.
inline ImageBuffer to_rgb(const ImageBuffer& img) {
  if (img.channels() == 3) return img;
  ImageBuffer out(img.width(), img.height(), 3);
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      for (int ch = 0; ch < 3; ++ch) out.at(r, c, ch) = img.at(r, c);
    }
  }
  return out;
}

}  // namespace mobius_aug
