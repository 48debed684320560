#pragma once

// Producing Mobius transforms: rejection sampling from the M-admissible class,
// unconstrained random transforms, and the eight named presets.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "mobius_aug/admissibility.hpp"
#include "mobius_aug/errors.hpp"
#include "mobius_aug/mobius.hpp"
#include "mobius_aug/random.hpp"
#include "mobius_aug/solver.hpp"

namespace mobius_aug {

enum class Preset {
  ClockwiseTwist,
  ClockwiseHalfTwist,
  Spread,
  SpreadTwist,
  CounterClockwiseTwist,
  CounterClockwiseHalfTwist,
  Inverse,
  InverseSpread,
};

inline constexpr std::array<Preset, 8> kAllPresets = {
    Preset::ClockwiseTwist,        Preset::ClockwiseHalfTwist,        Preset::Spread,
    Preset::SpreadTwist,           Preset::CounterClockwiseTwist,     Preset::CounterClockwiseHalfTwist,
    Preset::Inverse,               Preset::InverseSpread,
};

inline std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::ClockwiseTwist: return "clockwise-twist";
    case Preset::ClockwiseHalfTwist: return "clockwise-half-twist";
    case Preset::Spread: return "spread";
    case Preset::SpreadTwist: return "spread-twist";
    case Preset::CounterClockwiseTwist: return "counter-clockwise-twist";
    case Preset::CounterClockwiseHalfTwist: return "counter-clockwise-half-twist";
    case Preset::Inverse: return "inverse";
    case Preset::InverseSpread: return "inverse-spread";
  }
  return "unknown";
}

inline std::optional<Preset> parse_preset(std::string_view name) {
  for (Preset p : kAllPresets) {
    if (preset_name(p) == name) return p;
  }
  return std::nullopt;
}

struct MAdmissible {
  double M = 2.0;
};
struct Unconstrained {};
struct Defined {
  Preset preset = Preset::ClockwiseTwist;
};

using SamplerMode = std::variant<MAdmissible, Unconstrained, Defined>;

/// "admissible", "unconstrained" or "defined:<preset>".
inline std::string mode_name(const SamplerMode& mode) {
  if (std::holds_alternative<MAdmissible>(mode)) return "admissible";
  if (std::holds_alternative<Unconstrained>(mode)) return "unconstrained";
  return "defined:" + std::string(preset_name(std::get<Defined>(mode).preset));
}

/// Proposal distribution for the rejection sampler. Changing any field changes the
/// sampled stream, so the version travels with it into manifests.
struct ProposalParams {
  static constexpr int kVersion = 1;
  /// Sources are uniform in the disk of radius source_radius * p about the center.
  double source_radius = 0.5;
  /// Each target is its source plus a uniform offset in the disk of radius target_radius * p.
  double target_radius = 0.5;
};

struct SamplerOptions {
  std::uint64_t max_attempts = 10000;
  ProposalParams proposal;
};

struct SampleStats {
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  double acceptance_rate() const noexcept {
    return attempts == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(attempts);
  }
};

struct SampleResult {
  MobiusTransform transform;
  SampleStats stats;
};

/// Draws correspondences from the proposal until one is M-admissible.
inline SampleResult sample_admissible(const ImageGeometry& geometry, double M, Rng& rng,
                                      const SamplerOptions& options = {}) {
  const AdmissibilityParams params{M, geometry};
  params.require_valid();
  const double p = geometry.side();
  const Complex center = geometry.center();
  SampleStats stats;
  while (stats.attempts < options.max_attempts) {
    ++stats.attempts;
    PointCorrespondence corr;
    for (int i = 0; i < 3; ++i) {
      corr.sources[i] = rng.in_disk(center, options.proposal.source_radius * p);
      corr.targets[i] = rng.in_disk(corr.sources[i], options.proposal.target_radius * p);
    }
    try {
      MobiusTransform t = solve(corr);
      if (check(t, params).passed) {
        stats.accepted = 1;
        return {t, stats};
      }
    } catch (const CoincidentPointsError&) {
    } catch (const DegenerateError&) {
    }
  }
  throw ExhaustionError("no M-admissible transform found after " +
                            std::to_string(stats.attempts) + " attempts (M = " +
                            std::to_string(M) + ")",
                        stats.attempts);
}

/// A random non-degenerate transform from points uniform over the whole image.
inline MobiusTransform sample_unconstrained(const ImageGeometry& geometry, Rng& rng,
                                            const SamplerOptions& options = {}) {
  geometry.require_valid();
  const double w = geometry.width;
  const double h = geometry.height;
  for (std::uint64_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    PointCorrespondence corr;
    for (auto* points : {&corr.sources, &corr.targets}) {
      for (Complex& z : *points) z = Complex(rng.uniform(0.0, w), rng.uniform(0.0, h));
    }
    try {
      return solve(corr);
    } catch (const CoincidentPointsError&) {
    } catch (const DegenerateError&) {
    }
  }
  throw DegenerateError("unconstrained sampler drew only degenerate correspondences");
}

/// The preset's three point pairs, with x = image height and y = image width as in the
/// published parameter table. Re is the column axis, Im the row axis.
inline PointCorrespondence preset_correspondence(Preset preset, const ImageGeometry& geometry) {
  geometry.require_valid();
  const double x = geometry.height;
  const double y = geometry.width;
  constexpr double pi = std::numbers::pi;
  const double s4 = std::sin(0.4 * pi), c4 = std::cos(0.4 * pi);
  const double c1 = std::cos(0.1 * pi), s1 = std::sin(0.1 * pi);

  using Triple = std::array<double, 3>;
  Triple zr{}, zi{}, wr{}, wi{};
  switch (preset) {
    case Preset::ClockwiseTwist:
      zr = {1, 0.5 * x, 0.6 * x};
      zi = {0.5 * y, 0.8 * y, 0.5 * y};
      wr = {0.5 * x, 0.5 * x + 0.3 * s4 * y, 0.5 * x + 0.1 * c1 * y};
      wi = {y - 1, 0.5 * y + 0.3 * c4 * y, 0.5 * y - 0.1 * s1 * x};
      break;
    case Preset::ClockwiseHalfTwist:
    case Preset::CounterClockwiseTwist:
      zr = {1, 0.5 * x, 0.6 * x};
      zi = {0.5 * y, 0.8 * y, 0.5 * y};
      wr = {0.5 * x, 0.5 * x + 0.4 * y, 0.5 * x};
      wi = {y - 1, 0.5 * y, 0.5 * y - 0.1 * x};
      break;
    case Preset::Spread:
      zr = {0.3 * x, 0.5 * x, 0.7 * x};
      zi = {0.5 * y, 0.7 * y, 0.5 * y};
      wr = {0.2 * x, 0.5 * x, 0.8 * x};
      wi = {0.5 * y, 0.8 * y, 0.5 * y};
      break;
    case Preset::SpreadTwist:
      zr = {0.3 * x, 0.6 * x, 0.7 * x};
      zi = {0.3 * y, 0.8 * y, 0.3 * y};
      wr = {0.2 * x, 0.6 * x, 0.8 * x};
      wi = {0.3 * y, 0.9 * y, 0.2 * y};
      break;
    case Preset::CounterClockwiseHalfTwist:
      zr = {1, 0.5 * x, 0.6 * x};
      zi = {0.5 * y, 0.8 * y, 0.5 * y};
      wr = {0.5 * x, 0.5 * x + 0.3 * s4 * y, 0.5 * x + 0.1 * c1 * x};
      wi = {y - 1, 0.5 * y + 0.3 * c4 * y, 0.5 * y - 0.1 * s1 * x};
      break;
    case Preset::Inverse:
      zr = {1, 0.5 * x, x - 1};
      zi = {0.5 * y, 0.9 * y, 0.5 * y};
      wr = {x - 1, 0.5 * x, 1};
      wi = {0.5 * y, 0.1 * y, 0.5 * y};
      break;
    case Preset::InverseSpread:
      zr = {0.1 * x, 0.5 * x, 0.9 * x};
      zi = {0.5 * y, 0.8 * y, 0.5 * y};
      wr = {x - 1, 0.5 * x, 1};
      wi = {0.5 * y, 0.1 * y, 0.5 * y};
      break;
  }
  PointCorrespondence corr;
  for (int k = 0; k < 3; ++k) {
    corr.sources[k] = {zr[k], zi[k]};
    corr.targets[k] = {wr[k], wi[k]};
  }
  return corr;
}

inline MobiusTransform preset_transform(Preset preset, const ImageGeometry& geometry) {
  return solve(preset_correspondence(preset, geometry));
}

/// Dispatch on mode. Presets report one attempt.
inline SampleResult sample(const SamplerMode& mode, const ImageGeometry& geometry, Rng& rng,
                           const SamplerOptions& options = {}) {
  if (const auto* m = std::get_if<MAdmissible>(&mode)) {
    return sample_admissible(geometry, m->M, rng, options);
  }
  if (std::holds_alternative<Unconstrained>(mode)) {
    return {sample_unconstrained(geometry, rng, options), {1, 1}};
  }
  return {preset_transform(std::get<Defined>(mode).preset, geometry), {1, 1}};
}

}  // namespace mobius_aug
