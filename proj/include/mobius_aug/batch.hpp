#pragma once

// Batch augmentation of a dataset into a PNG tree plus manifest, and the preview
// contact sheet.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "mobius_aug/augment.hpp"
#include "mobius_aug/dataset.hpp"
#include "mobius_aug/errors.hpp"
#include "mobius_aug/manifest.hpp"
#include "mobius_aug/png_io.hpp"

namespace mobius_aug {

inline constexpr const char* kManifestFileName = "manifest.tsv";

/// hardware_concurrency, capped by MOBIUS_AUG_THREADS when that is a positive integer.
inline unsigned default_worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MOBIUS_AUG_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Stream index of output k of sample i. A single image augmented outside a batch uses stream 0.
inline std::uint64_t stream_index(std::size_t sample_index, int k, int count_per_image) {
  return static_cast<std::uint64_t>(sample_index) * static_cast<std::uint64_t>(count_per_image) +
         static_cast<std::uint64_t>(k);
}

struct BatchOptions {
  unsigned workers = 0;  ///< 0 = default_worker_count()
};

/// Writes count_per_image PNGs per sample as <label>/<id>_<k>.png under out_dir plus
/// manifest.tsv. Output is identical for any worker count.
inline AugmentManifest run_batch(const std::vector<Sample>& samples, const AugmentConfig& cfg,
                                 const std::filesystem::path& out_dir, BatchOptions options = {}) {
  namespace fs = std::filesystem;
  cfg.validate();
  if (samples.empty()) throw ConfigError("dataset is empty");
  for (const Sample& s : samples) cfg.validate_for(s.image);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::set<std::string> labels;
  for (const Sample& s : samples) labels.insert(s.label);
  for (const std::string& label : labels) {
    fs::create_directories(out_dir / label, ec);
    if (ec || !fs::is_directory(out_dir / label)) {
      throw IoError("cannot create output directory " + (out_dir / label).string());
    }
  }

  const int count = cfg.count_per_image;
  std::vector<ManifestRecord> records(samples.size() * count);
  std::vector<std::exception_ptr> errors(samples.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto work = [&] {
    // A claimed index is always finished, so every index below a failing one is too and
    // the lowest failing index is reported regardless of scheduling.
    while (!failed) {
      const std::size_t i = next++;
      if (i >= samples.size()) break;
      const Sample& s = samples[i];
      try {
        for (int k = 0; k < count; ++k) {
          const std::uint64_t stream = stream_index(i, k, count);
          Rng rng = Rng::stream(cfg.seed, stream);
          AugmentResult res;
          try {
            res = augment_image(s.image, cfg, rng);
          } catch (const ExhaustionError& e) {
            throw ExhaustionError(e.what(), e.attempts(), s.id);
          }
          ManifestRecord& r = records[stream];
          r.output = s.label + "/" + s.id + "_" + std::to_string(k) + ".png";
          write_png(out_dir / r.output, res.image);
          r.source_id = s.id;
          r.label = s.label;
          r.stream = stream;
          r.ops = res.ops.names();
          r.mobius = res.ops.mobius;
        }
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };

  const unsigned workers = std::min<std::size_t>(
      options.workers ? options.workers : default_worker_count(), samples.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  AugmentManifest manifest{describe(cfg), std::move(records)};
  write_manifest(out_dir / kManifestFileName, manifest);
  return manifest;
}

inline AugmentManifest run_batch(const DatasetSource& src, const AugmentConfig& cfg,
                                 const std::filesystem::path& out_dir, BatchOptions options = {}) {
  return run_batch(load_dataset(src), cfg, out_dir, options);
}

struct PreviewOptions {
  /// Row i uses preset i mod 8 regardless of cfg.mode.
  bool cycle_presets = false;
};

/// n rows of [original | augmented] in RGB; cells are sized to the largest image and
/// padded with black. Samples repeat when n exceeds the dataset. Row i uses stream i.
inline ImageBuffer render_preview_grid(const std::vector<Sample>& samples, const AugmentConfig& cfg,
                                       int n, PreviewOptions options = {}) {
  if (n < 1) throw ConfigError("preview needs n >= 1");
  if (samples.empty()) throw ConfigError("dataset is empty");
  int cell_w = 0, cell_h = 0;
  for (int i = 0; i < n; ++i) {
    const ImageBuffer& img = samples[i % samples.size()].image;
    cell_w = std::max(cell_w, img.width());
    cell_h = std::max(cell_h, img.height());
  }
  ImageBuffer sheet(2 * cell_w, n * cell_h, 3);
  auto blit = [&](const ImageBuffer& src, int top, int left) {
    const ImageBuffer rgb = to_rgb(src);
    for (int r = 0; r < rgb.height(); ++r) {
      std::copy(rgb.pixel(r, 0), rgb.pixel(r, 0) + 3 * rgb.width(), sheet.pixel(top + r, left));
    }
  };
  for (int i = 0; i < n; ++i) {
    const Sample& s = samples[i % samples.size()];
    AugmentConfig row_cfg = cfg;
    if (options.cycle_presets) row_cfg.mode = Defined{kAllPresets[i % kAllPresets.size()]};
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(i));
    const AugmentResult res = augment_image(s.image, row_cfg, rng);
    blit(s.image, i * cell_h, 0);
    blit(res.image, i * cell_h, cell_w);
  }
  return sheet;
}

inline ImageBuffer preview_grid(const DatasetSource& src, const AugmentConfig& cfg, int n,
                                const std::filesystem::path& out_file, PreviewOptions options = {}) {
  ImageBuffer sheet = render_preview_grid(load_dataset(src), cfg, n, options);
  if (out_file.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(out_file.parent_path(), ec);
  }
  write_png(out_file, sheet);
  return sheet;
}

}  // namespace mobius_aug
