#pragma once

#include <string>
#include <utility>
#include <vector>

#include "avk/scalar.hpp"

namespace avk {

/// Univariate polynomial over Q in the indeterminate nu.
/// Coefficients are indexed by degree; the leading coefficient is nonzero
/// unless the polynomial is zero (empty coefficient list).
class NuPoly {
 public:
  NuPoly() = default;
  NuPoly(Scalar constant);  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  NuPoly(I constant) : NuPoly(Scalar(constant)) {}  // NOLINT(google-explicit-constructor)
  explicit NuPoly(std::vector<Scalar> coeffs);

  /// The polynomial nu.
  static NuPoly nu();
  /// c0 + c1*nu.
  static NuPoly linear(const Scalar& c0, const Scalar& c1);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  Scalar coeff(int d) const;
  const Scalar& leading() const { return coeffs_.back(); }

  Scalar eval(const Scalar& x) const;

  NuPoly& operator+=(const NuPoly& o);
  NuPoly& operator-=(const NuPoly& o);
  NuPoly& operator*=(const NuPoly& o);
  NuPoly& operator*=(const Scalar& s);
  friend NuPoly operator+(NuPoly a, const NuPoly& b) { return a += b; }
  friend NuPoly operator-(NuPoly a, const NuPoly& b) { return a -= b; }
  friend NuPoly operator*(const NuPoly& a, const NuPoly& b);
  friend NuPoly operator*(NuPoly a, const Scalar& s) { return a *= s; }
  NuPoly operator-() const;
  friend bool operator==(const NuPoly&, const NuPoly&) = default;

  /// Quotient and remainder of Euclidean division; divisor must be nonzero.
  std::pair<NuPoly, NuPoly> divmod(const NuPoly& divisor) const;
  /// Exact division; throws kNotExact if the remainder is nonzero.
  NuPoly divexact(const NuPoly& divisor) const;

  NuPoly monic() const;
  NuPoly derivative() const;

  /// Integer-coefficient primitive part (content removed, positive leading coefficient).
  std::vector<mpz_class> primitive_integer_coeffs() const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Scalar> coeffs_;
};

NuPoly gcd(NuPoly a, NuPoly b);

/// Rational roots of a nonzero polynomial (distinct, ascending), found by
/// rational-root enumeration on the square-free primitive part. The second
/// member is the cofactor left after dividing out all rational linear factors
/// (degree > 0 means a factor without rational roots is present).
struct RationalRoots {
  std::vector<Scalar> roots;
  NuPoly irrational_part;
};
RationalRoots rational_roots(const NuPoly& p);

}  // namespace avk
