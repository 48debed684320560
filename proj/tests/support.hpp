#pragma once

// Shared fixtures and random generators for the test suites.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "mobius_aug/mobius_aug.hpp"

namespace mobius_aug::test {

/// Generators for property tests. Independent of mobius_aug::Rng on purpose.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  Complex complex(double half_width) { return {real(-half_width, half_width), real(-half_width, half_width)}; }
  Complex in_box(double w, double h) { return {real(0.0, w), real(0.0, h)}; }

  /// Coefficients uniform in the unit box; re-drawn until |ad - bc| is comfortably nonzero.
  MobiusTransform transform() {
    for (;;) {
      MobiusTransform t{complex(1.0), complex(1.0), complex(1.0), complex(1.0)};
      if (std::abs(t.determinant()) > 1e-3) return t;
    }
  }

  /// A point at least `margin` away from the pole of t.
  Complex point_away_from_pole(const MobiusTransform& t, double half_width, double margin) {
    for (;;) {
      const Complex z = complex(half_width);
      if (std::abs(t.c()) < 1e-300 || std::abs(z + t.d() / t.c()) > margin) return z;
    }
  }

  /// Three points in the w x h box with pairwise distance above min_sep.
  std::array<Complex, 3> separated_points(double w, double h, double min_sep) {
    for (;;) {
      std::array<Complex, 3> p{in_box(w, h), in_box(w, h), in_box(w, h)};
      if (std::abs(p[0] - p[1]) > min_sep && std::abs(p[0] - p[2]) > min_sep &&
          std::abs(p[1] - p[2]) > min_sep) {
        return p;
      }
    }
  }

  PointCorrespondence correspondence(double size = 32.0, double min_sep = 1.0) {
    return {separated_points(size, size, min_sep), separated_points(size, size, min_sep)};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Smooth RGB (or gray) ramp: red along columns, green along rows, blue diagonal.
inline ImageBuffer gradient_image(int w, int h, int channels = 3) {
  ImageBuffer img(w, h, channels);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double u = w > 1 ? double(c) / (w - 1) : 0.0;
      const double v = h > 1 ? double(r) / (h - 1) : 0.0;
      const std::uint8_t vals[3] = {static_cast<std::uint8_t>(std::lround(40 + 180 * u)),
                                    static_cast<std::uint8_t>(std::lround(40 + 180 * v)),
                                    static_cast<std::uint8_t>(std::lround(40 + 90 * (u + v)))};
      for (int ch = 0; ch < channels; ++ch) img.at(r, c, ch) = vals[ch];
    }
  }
  return img;
}

/// High-frequency content: every sample distinct-ish, so permutations are detectable.
inline ImageBuffer pattern_image(int w, int h, int channels = 3) {
  ImageBuffer img(w, h, channels);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int ch = 0; ch < channels; ++ch) {
        img.at(r, c, ch) = static_cast<std::uint8_t>((r * 31 + c * 7 + ch * 85 + ((r / 4 + c / 4) % 2) * 60) % 256);
      }
    }
  }
  return img;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("mobius_aug_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace mobius_aug::test
