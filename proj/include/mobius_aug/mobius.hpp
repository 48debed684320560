#pragma once

// Complex arithmetic and the Mobius transform group f(z) = (az + b) / (cz + d).

#include <algorithm>
#include <cmath>
#include <complex>

#include "mobius_aug/errors.hpp"

namespace mobius_aug {

/// A point of the pixel plane. Pixel (row r, col c) sits at z = c + r*i.
using Complex = std::complex<double>;

inline constexpr double kPoleEpsilon = 1e-12;
inline constexpr double kDegenerateEpsilon = 1e-12;

inline bool is_finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Division without the libgcc scaling path; callers guarantee den != 0.
inline Complex divide(Complex num, Complex den) noexcept {
  const double n = den.real() * den.real() + den.imag() * den.imag();
  return {(num.real() * den.real() + num.imag() * den.imag()) / n,
          (num.imag() * den.real() - num.real() * den.imag()) / n};
}

/// f(z) = (az + b) / (cz + d) stored by its four (unnormalized) coefficients.
///
/// Degeneracy and pole tests are relative to the largest coefficient modulus, so
/// multiplying all four coefficients by a nonzero scalar never changes a decision.
class MobiusTransform {
 public:
  MobiusTransform(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
    if (!is_finite(a) || !is_finite(b) || !is_finite(c) || !is_finite(d)) {
      throw DegenerateError("Mobius coefficients must be finite");
    }
    scale_ = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  }

  static MobiusTransform identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }

  /// Largest coefficient modulus; the unit for all epsilon comparisons.
  double scale() const noexcept { return scale_; }

  Complex determinant() const noexcept { return a_ * d_ - b_ * c_; }

  bool is_degenerate(double eps = kDegenerateEpsilon) const noexcept {
    return scale_ == 0.0 || std::abs(determinant()) <= eps * scale_ * scale_;
  }

  /// The representative with ad - bc = 1.
  MobiusTransform normalized() const {
    require_nondegenerate();
    const Complex s = std::sqrt(determinant());
    return {a_ / s, b_ / s, c_ / s, d_ / s};
  }

  void require_nondegenerate(double eps = kDegenerateEpsilon) const {
    if (is_degenerate(eps)) throw DegenerateError("Mobius transform is degenerate (ad - bc ~ 0)");
  }

  friend bool operator==(const MobiusTransform&, const MobiusTransform&) = default;

 private:
  Complex a_, b_, c_, d_;
  double scale_ = 0.0;
};

/// (az + b) / (cz + d). Throws PoleError when z is within eps of -d/c.
// t by value, otherwise std::apply (reachable by ADL through Complex) wins for rvalue transforms.
inline Complex apply(MobiusTransform t, Complex z, double eps_pole = kPoleEpsilon) {
  const Complex den = t.c() * z + t.d();
  if (std::abs(den) <= eps_pole * t.scale()) throw PoleError("point maps to infinity");
  return divide(t.a() * z + t.b(), den);
}

/// Non-throwing variant for pixel loops: returns false at a pole.
inline bool try_apply(const MobiusTransform& t, Complex z, Complex& out,
                      double eps_pole = kPoleEpsilon) noexcept {
  const Complex den = t.c() * z + t.d();
  if (std::abs(den) <= eps_pole * t.scale()) return false;
  out = divide(t.a() * z + t.b(), den);
  return true;
}

/// f^-1(z) = -(dz - b) / (cz - a), i.e. coefficients (d, -b, -c, a).
inline MobiusTransform inverse(const MobiusTransform& t) {
  t.require_nondegenerate();
  return {t.d(), -t.b(), -t.c(), t.a()};
}

/// f'(z) = (ad - bc) / (cz + d)^2.
inline Complex derivative_at(const MobiusTransform& t, Complex z, double eps_pole = kPoleEpsilon) {
  const Complex den = t.c() * z + t.d();
  if (std::abs(den) <= eps_pole * t.scale()) throw PoleError("derivative evaluated at the pole");
  return divide(t.determinant(), den * den);
}

/// f'(f^-1(z)) = (a - cz)^2 / (ad - bc). Defined for every finite z.
inline Complex derivative_at_preimage(const MobiusTransform& t, Complex z) {
  t.require_nondegenerate();
  const Complex u = t.a() - t.c() * z;
  return divide(u * u, t.determinant());
}

/// outer o inner, i.e. z -> outer(inner(z)).
inline MobiusTransform compose(const MobiusTransform& outer, const MobiusTransform& inner) {
  outer.require_nondegenerate();
  inner.require_nondegenerate();
  MobiusTransform out{outer.a() * inner.a() + outer.b() * inner.c(),
                      outer.a() * inner.b() + outer.b() * inner.d(),
                      outer.c() * inner.a() + outer.d() * inner.c(),
                      outer.c() * inner.b() + outer.d() * inner.d()};
  out.require_nondegenerate();
  return out;
}

/// Reflection in the unit circle, z -> z / |z|^2.
inline Complex circle_inversion(Complex z, double eps_pole = kPoleEpsilon) {
  const double n = std::norm(z);
  if (std::sqrt(n) <= eps_pole) throw PoleError("circle inversion of the origin");
  return z / n;
}

}  // namespace mobius_aug
