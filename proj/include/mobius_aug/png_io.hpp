#pragma once

// PNG interchange through libpng's simplified API. Alpha is composited away on read;
// 16-bit and palette images are reduced to 8-bit gray or RGB.

#include <png.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "mobius_aug/errors.hpp"
#include "mobius_aug/image.hpp"

namespace mobius_aug {

namespace detail {

struct PngImage {
  png_image image;
  PngImage() {
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

inline ImageBuffer finish_png_read(PngImage& png, const std::string& what) {
  const bool color = (png.image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = color ? 3 : 1;
  if (png.image.width == 0 || png.image.height == 0) throw DecodeError(what + ": empty PNG");
  std::vector<std::uint8_t> samples(PNG_IMAGE_SIZE(png.image));
  // Composite any alpha over black.
  png_color background{0, 0, 0};
  if (!png_image_finish_read(&png.image, &background, samples.data(), 0, nullptr)) {
    throw DecodeError(what + ": " + png.image.message);
  }
  return {static_cast<int>(png.image.width), static_cast<int>(png.image.height), channels,
          std::move(samples)};
}

inline std::uint32_t png_format(const ImageBuffer& img) {
  return img.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
}

}  // namespace detail

inline ImageBuffer read_png(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw IoError("cannot open " + path.string());
  detail::PngImage png;
  if (!png_image_begin_read_from_file(&png.image, path.c_str())) {
    throw DecodeError(path.string() + ": " + png.image.message);
  }
  return detail::finish_png_read(png, path.string());
}

inline ImageBuffer decode_png(const std::vector<std::uint8_t>& bytes) {
  detail::PngImage png;
  if (!png_image_begin_read_from_memory(&png.image, bytes.data(), bytes.size())) {
    throw DecodeError(std::string("in-memory PNG: ") + png.image.message);
  }
  return detail::finish_png_read(png, "in-memory PNG");
}

inline std::vector<std::uint8_t> encode_png(const ImageBuffer& img) {
  detail::PngImage png;
  png.image.width = static_cast<png_uint_32>(img.width());
  png.image.height = static_cast<png_uint_32>(img.height());
  png.image.format = detail::png_format(img);
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(png.image, size, 0, img.samples().data(), 0, nullptr)) {
    throw IoError(std::string("PNG encode failed: ") + png.image.message);
  }
  std::vector<std::uint8_t> bytes(size);
  if (!png_image_write_to_memory(&png.image, bytes.data(), &size, 0, img.samples().data(), 0,
                                 nullptr)) {
    throw IoError(std::string("PNG encode failed: ") + png.image.message);
  }
  bytes.resize(size);
  return bytes;
}

inline void write_png(const std::filesystem::path& path, const ImageBuffer& img) {
  detail::PngImage png;
  png.image.width = static_cast<png_uint_32>(img.width());
  png.image.height = static_cast<png_uint_32>(img.height());
  png.image.format = detail::png_format(img);
  if (!png_image_write_to_file(&png.image, path.c_str(), 0, img.samples().data(), 0, nullptr)) {
    throw IoError("cannot write " + path.string() + ": " + png.image.message);
  }
}

}  // namespace mobius_aug
