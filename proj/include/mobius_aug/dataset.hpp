#pragma once

// Dataset ingestion: a folder of class subdirectories holding PNGs, or the CIFAR-10
// binary format (3073-byte records: label byte, then 32x32 R, G and B planes).

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "mobius_aug/errors.hpp"
#include "mobius_aug/image.hpp"
#include "mobius_aug/png_io.hpp"

namespace mobius_aug {

enum class DatasetFormat { Folder, Cifar };

struct DatasetSource {
  DatasetFormat format = DatasetFormat::Folder;
  std::filesystem::path path;
};

struct Sample {
  std::string id;
  std::string label;
  ImageBuffer image;
};

inline constexpr std::size_t kCifarSide = 32;
inline constexpr std::size_t kCifarPlane = kCifarSide * kCifarSide;
inline constexpr std::size_t kCifarRecordBytes = 1 + 3 * kCifarPlane;

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

/// Record i becomes sample id "%06d" with its label byte as the class.
inline std::vector<Sample> decode_cifar(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  if (bytes.empty()) throw DecodeError(name + ": empty CIFAR file");
  const std::size_t whole = bytes.size() / kCifarRecordBytes;
  if (bytes.size() % kCifarRecordBytes != 0) {
    throw DecodeError(name + ": truncated CIFAR record at byte offset " +
                      std::to_string(whole * kCifarRecordBytes) + " (file length " +
                      std::to_string(bytes.size()) + " is not a multiple of 3073)");
  }
  std::vector<Sample> out;
  out.reserve(whole);
  char id[32];
  for (std::size_t i = 0; i < whole; ++i) {
    const std::uint8_t* rec = bytes.data() + i * kCifarRecordBytes;
    std::vector<std::uint8_t> samples(3 * kCifarPlane);
    for (std::size_t px = 0; px < kCifarPlane; ++px) {
      for (std::size_t ch = 0; ch < 3; ++ch) samples[px * 3 + ch] = rec[1 + ch * kCifarPlane + px];
    }
    std::snprintf(id, sizeof id, "%06zu", i);
    out.push_back({id, std::to_string(rec[0]), ImageBuffer(32, 32, 3, std::move(samples))});
  }
  return out;
}

inline std::vector<Sample> load_cifar_binary(const std::filesystem::path& path) {
  return decode_cifar(read_file_bytes(path), path.string());
}

/// Inverse of decode_cifar for RGB 32x32 samples with numeric labels.
inline std::vector<std::uint8_t> encode_cifar(const std::vector<Sample>& samples) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(samples.size() * kCifarRecordBytes);
  for (const Sample& s : samples) {
    if (s.image.width() != 32 || s.image.height() != 32 || s.image.channels() != 3) {
      throw ConfigError("CIFAR records must be 32x32 RGB");
    }
    bytes.push_back(static_cast<std::uint8_t>(std::stoi(s.label)));
    for (std::size_t ch = 0; ch < 3; ++ch) {
      for (std::size_t px = 0; px < kCifarPlane; ++px) bytes.push_back(s.image.samples()[px * 3 + ch]);
    }
  }
  return bytes;
}

/// Every *.png in each immediate subdirectory; the subdirectory name is the label.
/// Ordering is lexicographic so sample indices are stable.
inline std::vector<Sample> load_image_folder(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("not a directory: " + root.string());
  std::vector<fs::path> classes;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) classes.push_back(entry.path());
  }
  std::sort(classes.begin(), classes.end());
  std::vector<Sample> out;
  for (const fs::path& dir : classes) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      std::string ext = entry.path().extension().string();
      std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
      if (entry.is_regular_file() && ext == ".png") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
      out.push_back({f.stem().string(), dir.filename().string(), read_png(f)});
    }
  }
  if (out.empty()) throw IoError("no PNG images found under " + root.string());
  return out;
}

inline std::vector<Sample> load_dataset(const DatasetSource& src) {
  return src.format == DatasetFormat::Cifar ? load_cifar_binary(src.path) : load_image_folder(src.path);
}

}  // namespace mobius_aug
