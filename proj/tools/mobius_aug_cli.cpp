// mobius-aug: batch Mobius augmentation, preview sheets, admissibility checks and sampling.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O or decode error, 4 sampler exhaustion.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mobius_aug/mobius_aug.hpp"

namespace ma = mobius_aug;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitExhausted = 4;

struct CommonFlags {
  std::string input;
  std::string format = "folder";
  std::string output;
  double mobius_prob = 0.2;
  std::string mode = "admissible";
  double M = 2.0;
  std::string interp = "bicubic";
  std::string fill = "black";
  int crop_pad = 4;
  double flip_prob = 0.5;
  int cutout_size = 0;
  int count = 1;
  std::uint64_t seed = 0;
  bool exclusive = false;
  bool explain = false;
  int size = 32;
  int width = 0;
  int height = 0;
  std::string transform;
};

void add_policy_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--mobius-prob", f.mobius_prob, "Probability of applying a Mobius warp")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--interp", f.interp, "nearest | bilinear | bicubic")
      ->check(CLI::IsMember({"nearest", "bilinear", "bicubic"}));
  cmd->add_option("--fill", f.fill, "black | edge")->check(CLI::IsMember({"black", "edge"}));
  cmd->add_option("--crop-pad", f.crop_pad, "Zero padding before the random crop")->check(CLI::NonNegativeNumber);
  cmd->add_option("--flip-prob", f.flip_prob, "Horizontal flip probability")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--cutout-size", f.cutout_size, "Cutout square side, 0 disables")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--exclusive", f.exclusive, "Skip cutout on samples that were Mobius-warped");
}

void add_mode_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--mode", f.mode, "admissible | unconstrained | defined:<preset>");
  cmd->add_option("--M", f.M, "Admissibility bound M > 1");
  cmd->add_option("--seed", f.seed, "Root random seed");
}

void add_geometry_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--size", f.size, "Square image side p");
  cmd->add_option("--width", f.width, "Image width (overrides --size)");
  cmd->add_option("--height", f.height, "Image height (overrides --size)");
}

ma::SamplerMode parse_mode(const std::string& text, double M, bool* cycle = nullptr) {
  if (text == "admissible") return ma::MAdmissible{M};
  if (text == "unconstrained") return ma::Unconstrained{};
  const std::string prefix = "defined:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string name = text.substr(prefix.size());
    if (cycle && name == "cycle") {
      *cycle = true;
      return ma::Defined{ma::kAllPresets[0]};
    }
    if (auto p = ma::parse_preset(name)) return ma::Defined{*p};
    std::string known;
    for (ma::Preset p : ma::kAllPresets) known += " " + std::string(ma::preset_name(p));
    throw ma::ConfigError("unknown preset '" + name + "'; known:" + known);
  }
  throw ma::ConfigError("unknown mode '" + text + "'");
}

ma::Interpolation parse_interp(const std::string& s) {
  if (s == "nearest") return ma::Interpolation::Nearest;
  if (s == "bilinear") return ma::Interpolation::Bilinear;
  return ma::Interpolation::Bicubic;
}

ma::AugmentConfig make_config(const CommonFlags& f, bool* cycle = nullptr) {
  ma::AugmentConfig cfg;
  cfg.mobius_prob = f.mobius_prob;
  cfg.mode = parse_mode(f.mode, f.M, cycle);
  cfg.interp = parse_interp(f.interp);
  cfg.fill = f.fill == "edge" ? ma::FillPolicy::edge_clamp() : ma::FillPolicy::black();
  cfg.crop_pad = f.crop_pad;
  cfg.flip_prob = f.flip_prob;
  cfg.cutout_size = f.cutout_size;
  cfg.exclusive = f.exclusive;
  cfg.seed = f.seed;
  cfg.count_per_image = f.count;
  cfg.validate();
  return cfg;
}

ma::DatasetSource make_source(const CommonFlags& f) {
  return {f.format == "cifar" ? ma::DatasetFormat::Cifar : ma::DatasetFormat::Folder, f.input};
}

ma::ImageGeometry make_geometry(const CommonFlags& f) {
  ma::ImageGeometry g{f.width ? f.width : f.size, f.height ? f.height : f.size};
  g.require_valid();
  return g;
}

ma::MobiusTransform parse_transform(const std::string& text) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ma::ConfigError("--transform: cannot parse '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (v.size() != 8) throw ma::ConfigError("--transform expects 8 comma-separated numbers a_re,a_im,...,d_im");
  return {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
}

void print_transform(const ma::MobiusTransform& t) {
  std::string line;
  for (const ma::Complex& k : {t.a(), t.b(), t.c(), t.d()}) {
    line += ma::format_double(k.real()) + " " + ma::format_double(k.imag()) + " ";
  }
  line.pop_back();
  std::cout << line << "\n";
}

int run_augment(const CommonFlags& f) {
  const ma::AugmentConfig cfg = make_config(f);
  const ma::AugmentManifest m = ma::run_batch(make_source(f), cfg, f.output);
  std::cerr << "wrote " << m.records.size() << " images and " << ma::kManifestFileName << " to "
            << f.output << "\n";
  return 0;
}

int run_preview(const CommonFlags& f) {
  bool cycle = false;
  const ma::AugmentConfig cfg = make_config(f, &cycle);
  ma::preview_grid(make_source(f), cfg, f.count, f.output, {cycle});
  return 0;
}

int run_check(const CommonFlags& f) {
  const ma::ImageGeometry g = make_geometry(f);
  std::optional<ma::MobiusTransform> t;
  if (!f.transform.empty()) {
    t = parse_transform(f.transform);
  } else {
    const ma::SamplerMode mode = parse_mode(f.mode, f.M);
    const auto* d = std::get_if<ma::Defined>(&mode);
    if (!d) throw ma::ConfigError("check needs --transform or --mode defined:<preset>");
    t = ma::preset_transform(d->preset, g);
  }
  const ma::AdmissibilityReport report = ma::check(*t, {f.M, g});
  if (f.explain) {
    std::cout << ma::to_text(report);
  } else {
    std::cout << (report.passed ? "admissible" : "not admissible") << "\n";
  }
  return 0;
}

int run_sample(const CommonFlags& f) {
  const ma::ImageGeometry g = make_geometry(f);
  const ma::SamplerMode mode = parse_mode(f.mode, f.M);
  if (f.count < 1) throw ma::ConfigError("--count must be >= 1");
  for (int i = 0; i < f.count; ++i) {
    ma::Rng rng = ma::Rng::stream(f.seed, static_cast<std::uint64_t>(i));
    const ma::SampleResult s = ma::sample(mode, g, rng);
    print_transform(s.transform);
    if (f.explain) {
      std::cout << "# attempts " << s.stats.attempts << "\n";
      std::cout << ma::to_text(ma::check(s.transform, {f.M, g}));
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobius transform image augmentation"};
  app.require_subcommand(1);
  CommonFlags f;

  auto* augment = app.add_subcommand("augment", "Augment a dataset into a PNG tree with a manifest");
  augment->add_option("--input", f.input, "Image folder or CIFAR binary file")->required();
  augment->add_option("--format", f.format, "folder | cifar")->check(CLI::IsMember({"folder", "cifar"}));
  augment->add_option("--output", f.output, "Output directory")->required();
  augment->add_option("--count", f.count, "Augmented copies per source image")->check(CLI::PositiveNumber);
  add_mode_flags(augment, f);
  add_policy_flags(augment, f);

  auto* preview = app.add_subcommand("preview-grid", "Render originals beside augmented versions");
  preview->add_option("--input", f.input, "Image folder or CIFAR binary file")->required();
  preview->add_option("--format", f.format, "folder | cifar")->check(CLI::IsMember({"folder", "cifar"}));
  preview->add_option("--output", f.output, "Output PNG")->required();
  preview->add_option("--count", f.count, "Number of rows")->check(CLI::PositiveNumber);
  add_mode_flags(preview, f);
  add_policy_flags(preview, f);

  auto* check = app.add_subcommand("check", "Test a transform for M-admissibility");
  check->add_option("--transform", f.transform, "a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im");
  check->add_flag("--explain", f.explain, "Print every check with its bounds");
  add_mode_flags(check, f);
  add_geometry_flags(check, f);

  auto* sample = app.add_subcommand("sample", "Print sampled transform coefficients");
  sample->add_option("--count", f.count, "Number of transforms")->check(CLI::PositiveNumber);
  sample->add_flag("--explain", f.explain, "Also print attempts and the admissibility report");
  add_mode_flags(sample, f);
  add_geometry_flags(sample, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (*augment) return run_augment(f);
    if (*preview) return run_preview(f);
    if (*check) return run_check(f);
    return run_sample(f);
  } catch (const ma::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ma::ExhaustionError& e) {
    std::cerr << "sampler exhausted: " << e.what() << "\n";
    return kExitExhausted;
  } catch (const ma::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ma::DecodeError& e) {
    std::cerr << "decode error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ma::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}
