#pragma once

// Membership test for the class of M-admissible Mobius transforms.
//
// The local scale |f'| is bounded to (1/M, M) at five probe points of the square
// [0,p] x [0,p]i, using f'(f^-1(z)) = (a - cz)^2 / (ad - bc), and the preimage of the
// center must stay within p/4 of the center.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>

#include "mobius_aug/errors.hpp"
#include "mobius_aug/mobius.hpp"

namespace mobius_aug {

/// Image size in pixels.
///
/// Constraints are evaluated on the centered square of side p = min(width, height);
/// for square images that square is the whole image.
struct ImageGeometry {
  int width = 0;
  int height = 0;

  static ImageGeometry square(int p) { return {p, p}; }

  bool valid() const noexcept { return width >= 2 && height >= 2; }
  bool is_square() const noexcept { return width == height; }
  double side() const noexcept { return static_cast<double>(std::min(width, height)); }
  Complex origin() const noexcept {
    return {(width - std::min(width, height)) / 2.0, (height - std::min(width, height)) / 2.0};
  }
  Complex center() const noexcept { return origin() + 0.5 * side() * Complex(1.0, 1.0); }

  void require_valid() const {
    if (!valid()) {
      throw ConfigError("image geometry must be at least 2x2, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
  }
};

struct AdmissibilityParams {
  double M = 2.0;
  ImageGeometry geometry;

  void require_valid() const {
    if (!(M > 1.0) || !std::isfinite(M)) throw ConfigError("admissibility bound M must be > 1");
    geometry.require_valid();
  }
};

/// 0, p, pi, p(1+i), p(1+i)/2, shifted to the centered square.
inline std::array<Complex, 5> probe_points(const ImageGeometry& g) {
  const double p = g.side();
  const Complex o = g.origin();
  return {o, o + Complex(p, 0.0), o + Complex(0.0, p), o + Complex(p, p),
          o + Complex(p / 2.0, p / 2.0)};
}

struct CheckRecord {
  std::string name;
  double value = 0.0;
  double lower = 0.0;  ///< exclusive; -inf when there is no lower bound
  double upper = 0.0;  ///< exclusive
  bool passed = false;
};

struct AdmissibilityReport {
  bool passed = false;
  /// Five derivative-modulus ratios (probe order above) followed by the center-preimage distance.
  std::array<CheckRecord, 6> checks;
};

inline AdmissibilityReport check(const MobiusTransform& t, const AdmissibilityParams& params) {
  params.require_valid();
  t.require_nondegenerate();
  const MobiusTransform n = t.normalized();
  const double det = std::abs(n.determinant());
  const double M = params.M;
  const auto probes = probe_points(params.geometry);
  static constexpr std::array<std::string_view, 5> kNames = {
      "ratio@0", "ratio@p", "ratio@pi", "ratio@p(1+i)", "ratio@p(1+i)/2"};

  AdmissibilityReport report;
  report.passed = true;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const double value = std::norm(n.a() - n.c() * probes[k]) / det;
    CheckRecord& r = report.checks[k];
    r = {std::string(kNames[k]), value, 1.0 / M, M, value > 1.0 / M && value < M};
    report.passed = report.passed && r.passed;
  }

  // f^-1(center) = (center*d - b) / (a - center*c); a pole here counts as a failure.
  const Complex center = probes[4];
  const Complex den = n.a() - center * n.c();
  const double bound = params.geometry.side() / 4.0;
  CheckRecord& centre = report.checks[5];
  centre.name = "center-preimage";
  centre.lower = -std::numeric_limits<double>::infinity();
  centre.upper = bound;
  if (std::abs(den) <= kPoleEpsilon * n.scale()) {
    centre.value = std::numeric_limits<double>::infinity();
    centre.passed = false;
  } else {
    centre.value = std::abs(divide(center * n.d() - n.b(), den) - center);
    centre.passed = centre.value < bound;
  }
  report.passed = report.passed && centre.passed;
  return report;
}

inline bool is_admissible(const MobiusTransform& t, const AdmissibilityParams& params) {
  return check(t, params).passed;
}

/// One line per check: name, value, (lower, upper), pass|fail; then the verdict.
inline std::string to_text(const AdmissibilityReport& report) {
  std::string out;
  char line[256];
  for (const CheckRecord& r : report.checks) {
    std::snprintf(line, sizeof line, "%-16s %.17g\t(%.17g, %.17g)\t%s\n", r.name.c_str(), r.value,
                  r.lower, r.upper, r.passed ? "pass" : "fail");
    out += line;
  }
  out += report.passed ? "admissible: yes\n" : "admissible: no\n";
  return out;
}

}  // namespace mobius_aug
