#pragma once

// Rasterizing a Mobius transform over an image.
//
// warp_inverse is the production path: every output pixel z samples the source at
// f^-1(z), so the result has no holes. warp_forward_scatter pushes source pixels
// through f and reports the holes that leaves.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mobius_aug/image.hpp"
#include "mobius_aug/mobius.hpp"

namespace mobius_aug {

enum class Interpolation { Nearest, Bilinear, Bicubic };

struct FillPolicy {
  enum class Kind { Constant, EdgeClamp };
  Kind kind = Kind::Constant;
  std::array<std::uint8_t, 3> color{0, 0, 0};

  static FillPolicy constant(std::array<std::uint8_t, 3> color) { return {Kind::Constant, color}; }
  static FillPolicy black() { return {}; }
  static FillPolicy edge_clamp() { return {Kind::EdgeClamp, {0, 0, 0}}; }
};

namespace detail {

// Preimages this close outside the pixel grid are snapped onto it.
inline constexpr double kEdgeSlack = 1e-9;

inline std::uint8_t to_sample(double v) noexcept {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

/// Catmull-Rom (Keys, a = -0.5) weights for taps at -1, 0, 1, 2 around t in [0, 1).
inline std::array<double, 4> catmull_rom_weights(double t) noexcept {
  return {((-0.5 * t + 1.0) * t - 0.5) * t, (1.5 * t - 2.5) * t * t + 1.0,
          ((-1.5 * t + 2.0) * t + 0.5) * t, (0.5 * t - 0.5) * t * t};
}

/// Samples img at (x, y), which must lie inside [0, W-1] x [0, H-1].
inline void sample_at(const ImageBuffer& img, double x, double y, Interpolation interp,
                      std::uint8_t* out) noexcept {
  const int w = img.width();
  const int h = img.height();
  const int nc = img.channels();
  switch (interp) {
    case Interpolation::Nearest: {
      const int c = std::clamp(static_cast<int>(std::floor(x + 0.5)), 0, w - 1);
      const int r = std::clamp(static_cast<int>(std::floor(y + 0.5)), 0, h - 1);
      const std::uint8_t* p = img.pixel(r, c);
      std::copy(p, p + nc, out);
      return;
    }
    case Interpolation::Bilinear: {
      const int c0 = std::min(static_cast<int>(std::floor(x)), w - 1);
      const int r0 = std::min(static_cast<int>(std::floor(y)), h - 1);
      const int c1 = std::min(c0 + 1, w - 1);
      const int r1 = std::min(r0 + 1, h - 1);
      const double fx = x - c0;
      const double fy = y - r0;
      for (int ch = 0; ch < nc; ++ch) {
        const double top = (1.0 - fx) * img.at(r0, c0, ch) + fx * img.at(r0, c1, ch);
        const double bottom = (1.0 - fx) * img.at(r1, c0, ch) + fx * img.at(r1, c1, ch);
        out[ch] = to_sample((1.0 - fy) * top + fy * bottom);
      }
      return;
    }
    case Interpolation::Bicubic: {
      const int c0 = std::min(static_cast<int>(std::floor(x)), w - 1);
      const int r0 = std::min(static_cast<int>(std::floor(y)), h - 1);
      const auto wx = catmull_rom_weights(x - c0);
      const auto wy = catmull_rom_weights(y - r0);
      std::array<int, 4> cols, rows;
      for (int k = 0; k < 4; ++k) {
        cols[k] = std::clamp(c0 - 1 + k, 0, w - 1);
        rows[k] = std::clamp(r0 - 1 + k, 0, h - 1);
      }
      for (int ch = 0; ch < nc; ++ch) {
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) {
          double row_acc = 0.0;
          for (int k = 0; k < 4; ++k) row_acc += wx[k] * img.at(rows[j], cols[k], ch);
          acc += wy[j] * row_acc;
        }
        out[ch] = to_sample(acc);
      }
      return;
    }
  }
}

inline bool inside(double v, int extent) noexcept {
  return v >= -kEdgeSlack && v <= (extent - 1) + kEdgeSlack;
}

inline void write_color(std::uint8_t* dst, const std::array<std::uint8_t, 3>& color, int nc) noexcept {
  for (int ch = 0; ch < nc; ++ch) dst[ch] = color[nc == 1 ? 0 : ch];
}

}  // namespace detail

/// Output pixel z takes the source value at f^-1(z). Preimages off the pixel grid
/// [0, W-1] x [0, H-1] take the fill policy; a preimage at infinity always takes the
/// constant color.
inline ImageBuffer warp_inverse(const ImageBuffer& img, const MobiusTransform& t,
                                Interpolation interp = Interpolation::Bicubic,
                                const FillPolicy& fill = FillPolicy::black()) {
  const MobiusTransform inv = inverse(t);
  const int w = img.width();
  const int h = img.height();
  const int nc = img.channels();
  ImageBuffer out(w, h, nc);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      std::uint8_t* dst = out.pixel(r, c);
      Complex src;
      if (!try_apply(inv, Complex(c, r), src) || !is_finite(src)) {
        detail::write_color(dst, fill.color, nc);
        continue;
      }
      double x = src.real();
      double y = src.imag();
      if (!detail::inside(x, w) || !detail::inside(y, h)) {
        if (fill.kind == FillPolicy::Kind::Constant) {
          detail::write_color(dst, fill.color, nc);
          continue;
        }
      }
      x = std::clamp(x, 0.0, w - 1.0);
      y = std::clamp(y, 0.0, h - 1.0);
      detail::sample_at(img, x, y, interp, dst);
    }
  }
  return out;
}

struct ScatterResult {
  ImageBuffer image;
  /// Output pixels no source pixel landed on, counted before any gap filling.
  std::size_t gap_count = 0;
};

/// Pushes each source pixel z to round(f(z)); later writes in row-major source order win.
///
/// With fill_gaps, unhit pixels whose preimage lies on the source grid are filled by
/// inverse-distance weighting of the hit pixels in the smallest square window that
/// contains any. Everything else unhit takes fill_color.
inline ScatterResult warp_forward_scatter(const ImageBuffer& img, const MobiusTransform& t,
                                          bool fill_gaps,
                                          std::array<std::uint8_t, 3> fill_color = {0, 0, 0}) {
  t.require_nondegenerate();
  const int w = img.width();
  const int h = img.height();
  const int nc = img.channels();
  ImageBuffer out(w, h, nc);
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(w) * h, 0);

  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      Complex dst;
      if (!try_apply(t, Complex(c, r), dst) || !is_finite(dst)) continue;
      const double fx = std::floor(dst.real() + 0.5);
      const double fy = std::floor(dst.imag() + 0.5);
      if (fx < 0 || fy < 0 || fx > w - 1 || fy > h - 1) continue;
      const int qc = static_cast<int>(fx);
      const int qr = static_cast<int>(fy);
      std::copy(img.pixel(r, c), img.pixel(r, c) + nc, out.pixel(qr, qc));
      hit[static_cast<std::size_t>(qr) * w + qc] = 1;
    }
  }

  ScatterResult result;
  result.gap_count = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 0));
  if (result.gap_count == 0) {
    result.image = std::move(out);
    return result;
  }

  const MobiusTransform inv = inverse(t);
  const int max_radius = std::max(w, h);
  std::array<double, 3> acc{};
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (hit[static_cast<std::size_t>(r) * w + c]) continue;
      std::uint8_t* dst = out.pixel(r, c);
      Complex src;
      const bool covered = fill_gaps && try_apply(inv, Complex(c, r), src) && is_finite(src) &&
                           detail::inside(src.real(), w) && detail::inside(src.imag(), h);
      if (!covered) {
        detail::write_color(dst, fill_color, nc);
        continue;
      }
      bool filled = false;
      for (int radius = 1; radius <= max_radius && !filled; ++radius) {
        acc.fill(0.0);
        double weight_sum = 0.0;
        for (int rr = std::max(0, r - radius); rr <= std::min(h - 1, r + radius); ++rr) {
          for (int cc = std::max(0, c - radius); cc <= std::min(w - 1, c + radius); ++cc) {
            if (!hit[static_cast<std::size_t>(rr) * w + cc]) continue;
            const double d2 = double(rr - r) * (rr - r) + double(cc - c) * (cc - c);
            const double wt = 1.0 / d2;
            weight_sum += wt;
            for (int ch = 0; ch < nc; ++ch) acc[ch] += wt * out.at(rr, cc, ch);
          }
        }
        if (weight_sum > 0.0) {
          for (int ch = 0; ch < nc; ++ch) dst[ch] = detail::to_sample(acc[ch] / weight_sum);
          filled = true;
        }
      }
      if (!filled) detail::write_color(dst, fill_color, nc);
    }
  }
  result.image = std::move(out);
  return result;
}

}  // namespace mobius_aug
