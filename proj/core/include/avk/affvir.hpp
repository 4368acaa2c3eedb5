#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "avk/lie_algebra.hpp"
#include "avk/scalar.hpp"

namespace avk {

/// One basis element of the affine-Virasoro algebra: x_i(m), d_m, K or C.
struct Gen {
  enum class Kind : std::uint8_t { kLoop, kVir, kK, kC };

  Kind kind = Kind::kLoop;
  std::uint32_t index = 0;  // basis index of x for kLoop
  std::int32_t mode = 0;    // loop degree m or Virasoro index

  static Gen loop(std::size_t i, long m) { return {Kind::kLoop, static_cast<std::uint32_t>(i), static_cast<std::int32_t>(m)}; }
  static Gen vir(long m) { return {Kind::kVir, 0, static_cast<std::int32_t>(m)}; }
  static Gen central_k() { return {Kind::kK, 0, 0}; }
  static Gen central_c() { return {Kind::kC, 0, 0}; }

  bool is_loop() const { return kind == Kind::kLoop; }
  bool is_vir() const { return kind == Kind::kVir; }
  bool is_central() const { return kind == Kind::kK || kind == Kind::kC; }
  /// Eigenvalue of ad d_0.
  long degree() const { return is_central() ? 0 : mode; }

  friend auto operator<=>(const Gen&, const Gen&) = default;
};

/// Finite linear combination of generators; zero coefficients are never stored.
class AffVirElement {
 public:
  AffVirElement() = default;
  AffVirElement(const Gen& g, Scalar c = Scalar(1));  // NOLINT(google-explicit-constructor)

  const std::map<Gen, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(const Gen& g) const;
  void add(const Gen& g, const Scalar& c);

  AffVirElement& operator+=(const AffVirElement& o);
  AffVirElement& operator*=(const Scalar& s);
  friend AffVirElement operator+(AffVirElement a, const AffVirElement& b) { return a += b; }
  friend AffVirElement operator-(AffVirElement a, const AffVirElement& b) {
    for (const auto& [g, c] : b.terms_) a.add(g, -c);
    return a;
  }
  friend AffVirElement operator*(const Scalar& s, AffVirElement a) { return a *= s; }
  friend bool operator==(const AffVirElement&, const AffVirElement&) = default;

 private:
  std::map<Gen, Scalar> terms_;
};

/// The affine-Virasoro algebra over a finite-dimensional simple Lie algebra.
class AffVirAlgebra {
 public:
  explicit AffVirAlgebra(std::shared_ptr<const SimpleLieAlgebra> g);

  const SimpleLieAlgebra& g() const { return *g_; }
  std::shared_ptr<const SimpleLieAlgebra> g_ptr() const { return g_; }

  AffVirElement bracket(const Gen& a, const Gen& b) const;
  AffVirElement bracket(const AffVirElement& a, const AffVirElement& b) const;
  /// m with [d_0, x] = m x, if x is homogeneous.
  std::optional<long> degree(const AffVirElement& x) const;

  /// x(m) for the basis element named `name`.
  Gen loop(const std::string& name, long m) const;

  /// "e(-1)", "f", "d(-3)", "K", "C".
  std::string to_string(const Gen& g) const;
  std::string to_string(const AffVirElement& x) const;
  /// Inverse of to_string for a single generator; throws kParse.
  Gen parse_gen(const std::string& text) const;

 private:
  std::shared_ptr<const SimpleLieAlgebra> g_;
};

}  // namespace avk
