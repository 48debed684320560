#pragma once

// Three-point construction of a Mobius transform and the anharmonic (cross) ratio.

#include <array>
#include <cmath>

#include "mobius_aug/errors.hpp"
#include "mobius_aug/mobius.hpp"

namespace mobius_aug {

inline constexpr double kSeparationEpsilon = 1e-9;

/// Three source points and the three targets they must be sent to.
struct PointCorrespondence {
  std::array<Complex, 3> sources;
  std::array<Complex, 3> targets;
};

namespace detail {

inline double min_pairwise_distance(const std::array<Complex, 3>& p) {
  return std::min({std::abs(p[0] - p[1]), std::abs(p[0] - p[2]), std::abs(p[1] - p[2])});
}

/// Laplace expansion along the first column.
inline Complex det3(Complex m00, Complex m01, Complex m02,
                    Complex m10, Complex m11, Complex m12,
                    Complex m20, Complex m21, Complex m22) {
  return m00 * (m11 * m22 - m12 * m21) - m10 * (m01 * m22 - m02 * m21) +
         m20 * (m01 * m12 - m02 * m11);
}

inline void require_separated(const PointCorrespondence& corr, double eps_sep) {
  if (min_pairwise_distance(corr.sources) <= eps_sep) {
    throw CoincidentPointsError("source points are not pairwise distinct");
  }
  if (min_pairwise_distance(corr.targets) <= eps_sep) {
    throw CoincidentPointsError("target points are not pairwise distinct");
  }
}

}  // namespace detail

/// Coefficients from the four 3x3 determinants
///
///   a = |z1w1 w1 1|   b = |z1w1 z1 w1|   c = |z1 w1 1|   d = |z1w1 z1 1|
///       |z2w2 w2 1|       |z2w2 z2 w2|       |z2 w2 1|       |z2w2 z2 1|
///       |z3w3 w3 1|       |z3w3 z3 w3|       |z3 w3 1|       |z3w3 z3 1|
///
/// Not validated; see solve().
inline std::array<Complex, 4> determinant_coefficients(const PointCorrespondence& corr) {
  const auto& [z1, z2, z3] = corr.sources;
  const auto& [w1, w2, w3] = corr.targets;
  const Complex p1 = z1 * w1, p2 = z2 * w2, p3 = z3 * w3;
  const Complex one{1.0, 0.0};
  return {detail::det3(p1, w1, one, p2, w2, one, p3, w3, one),
          detail::det3(p1, z1, w1, p2, z2, w2, p3, z3, w3),
          detail::det3(z1, w1, one, z2, w2, one, z3, w3, one),
          detail::det3(p1, z1, one, p2, z2, one, p3, z3, one)};
}

/// The same coefficients written out as six-term polynomials in z_i, w_i.
inline std::array<Complex, 4> expanded_coefficients(const PointCorrespondence& corr) {
  const auto& [z1, z2, z3] = corr.sources;
  const auto& [w1, w2, w3] = corr.targets;
  const Complex a = w1 * w2 * z1 - w1 * w3 * z1 - w1 * w2 * z2 + w2 * w3 * z2 + w1 * w3 * z3 -
                    w2 * w3 * z3;
  const Complex b = w1 * w3 * z1 * z2 - w2 * w3 * z1 * z2 - w1 * w2 * z1 * z3 +
                    w2 * w3 * z1 * z3 + w1 * w2 * z2 * z3 - w1 * w3 * z2 * z3;
  const Complex c = w2 * z1 - w3 * z1 - w1 * z2 + w3 * z2 + w1 * z3 - w2 * z3;
  const Complex d = w1 * z1 * z2 - w2 * z1 * z2 - w1 * z1 * z3 + w3 * z1 * z3 + w2 * z2 * z3 -
                    w3 * z2 * z3;
  return {a, b, c, d};
}

/// The unique Mobius transform with f(z_i) = w_i.
///
/// Near-degenerate but valid correspondences are let through; filtering for image
/// quality is the sampler's job.
inline MobiusTransform solve(const PointCorrespondence& corr, double eps_sep = kSeparationEpsilon) {
  detail::require_separated(corr, eps_sep);
  const auto [a, b, c, d] = determinant_coefficients(corr);
  for (const Complex& k : {a, b, c, d}) {
    if (!is_finite(k)) throw DegenerateError("correspondence produced non-finite coefficients");
  }
  MobiusTransform t{a, b, c, d};
  t.require_nondegenerate();
  return t;
}

/// ((z - z1)(z2 - z3)) / ((z - z3)(z2 - z1)).
inline Complex cross_ratio(Complex z, Complex z1, Complex z2, Complex z3,
                           double eps_sep = kSeparationEpsilon) {
  if (std::abs(z - z3) <= eps_sep) throw CoincidentPointsError("cross ratio: z coincides with z3");
  if (std::abs(z2 - z1) <= eps_sep) throw CoincidentPointsError("cross ratio: z2 coincides with z1");
  return divide((z - z1) * (z2 - z3), (z - z3) * (z2 - z1));
}

}  // namespace mobius_aug
