#pragma once

#include <string>

#include "avk/scalar.hpp"

namespace avk {

/// Element re + im*i of Q(i). Used for complex loop parameters a, b when the
/// build enables AVK_GAUSSIAN; the normalization 0 <= Re a < 1 acts on `re`.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Scalar re, Scalar im = Scalar(0)) : re_(std::move(re)), im_(std::move(im)) {}  // NOLINT

  /// Parses "p/q", "p/q+r/si", "r/si", "-i".
  static GaussianRational parse(const std::string& text);

  const Scalar& re() const { return re_; }
  const Scalar& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }
  Scalar norm() const { return re_ * re_ + im_ * im_; }
  /// Shifts the real part into [0, 1).
  GaussianRational normalized_shift() const { return {re_.frac(), im_}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  GaussianRational operator-() const { return {-re_, -im_}; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  std::string to_string() const;

 private:
  Scalar re_, im_;
};

}  // namespace avk
