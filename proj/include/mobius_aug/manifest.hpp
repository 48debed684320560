#pragma once

// Augmentation manifest: a tab-separated text file with a versioned header and one
// record per emitted image. Coefficients use 17 significant digits so they round-trip
// exactly.

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mobius_aug/augment.hpp"
#include "mobius_aug/errors.hpp"
#include "mobius_aug/mobius.hpp"

namespace mobius_aug {

inline constexpr const char* kManifestMagic = "#mobius-aug-manifest";
inline constexpr int kManifestVersion = 1;

struct ManifestRecord {
  std::string output;  ///< relative to the output directory
  std::string source_id;
  std::string label;
  std::uint64_t stream = 0;
  std::vector<std::string> ops;
  std::optional<MobiusTransform> mobius;
};

struct AugmentManifest {
  std::string config;  ///< describe(cfg) of the producing run
  std::vector<ManifestRecord> records;
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string describe(const AugmentConfig& cfg) {
  std::string s = "mobius_prob=" + format_double(cfg.mobius_prob) + " mode=" + mode_name(cfg.mode);
  if (const auto* m = std::get_if<MAdmissible>(&cfg.mode)) s += " M=" + format_double(m->M);
  static constexpr const char* kInterp[] = {"nearest", "bilinear", "bicubic"};
  s += std::string(" interp=") + kInterp[static_cast<int>(cfg.interp)];
  s += cfg.fill.kind == FillPolicy::Kind::EdgeClamp ? " fill=edge" : " fill=constant";
  s += " crop_pad=" + std::to_string(cfg.crop_pad) + " flip_prob=" + format_double(cfg.flip_prob) +
       " cutout_size=" + std::to_string(cfg.cutout_size) +
       " exclusive=" + (cfg.exclusive ? "1" : "0") + " seed=" + std::to_string(cfg.seed) +
       " count=" + std::to_string(cfg.count_per_image) +
       " proposal=v" + std::to_string(ProposalParams::kVersion);
  return s;
}

inline std::string format_manifest(const AugmentManifest& m) {
  std::ostringstream out;
  out << kManifestMagic << "\tv" << kManifestVersion << "\n";
  out << "#config\t" << m.config << "\n";
  out << "#output\tsource_id\tlabel\tstream\tops\ta_re\ta_im\tb_re\tb_im\tc_re\tc_im\td_re\td_im\n";
  for (const ManifestRecord& r : m.records) {
    out << r.output << '\t' << r.source_id << '\t' << r.label << '\t' << r.stream << '\t';
    for (std::size_t i = 0; i < r.ops.size(); ++i) out << (i ? ";" : "") << r.ops[i];
    if (r.mobius) {
      for (const Complex& k : {r.mobius->a(), r.mobius->b(), r.mobius->c(), r.mobius->d()}) {
        out << '\t' << format_double(k.real()) << '\t' << format_double(k.imag());
      }
    } else {
      for (int i = 0; i < 8; ++i) out << "\t-";
    }
    out << '\n';
  }
  return out.str();
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace detail

inline AugmentManifest parse_manifest(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != std::string(kManifestMagic) + "\tv" + std::to_string(kManifestVersion)) {
    throw DecodeError("manifest: missing or unsupported version header");
  }
  AugmentManifest m;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("#config\t", 0) == 0) {
      m.config = line.substr(8);
      continue;
    }
    if (line[0] == '#') continue;
    const auto f = detail::split(line, '\t');
    if (f.size() != 13) throw DecodeError("manifest line " + std::to_string(lineno) + ": expected 13 fields");
    ManifestRecord r;
    r.output = f[0];
    r.source_id = f[1];
    r.label = f[2];
    if (!f[4].empty()) r.ops = detail::split(f[4], ';');
    try {
      r.stream = std::stoull(f[3]);
      if (f[5] != "-") {
        std::array<double, 8> v{};
        for (int i = 0; i < 8; ++i) v[i] = std::stod(f[5 + i]);
        r.mobius = MobiusTransform({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
        r.mobius->require_nondegenerate();
      }
    } catch (const std::logic_error&) {
      throw DecodeError("manifest line " + std::to_string(lineno) + ": bad number");
    } catch (const DegenerateError&) {
      throw DecodeError("manifest line " + std::to_string(lineno) + ": degenerate coefficients");
    }
    m.records.push_back(std::move(r));
  }
  return m;
}

inline void write_manifest(const std::filesystem::path& path, const AugmentManifest& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << format_manifest(m);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace mobius_aug
