#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "avk/affvir.hpp"

namespace avk {

/// Ordered product of generators with exponents, in PBW canonical order.
struct PBWMonomial {
  std::vector<std::pair<Gen, int>> factors;

  bool empty() const { return factors.empty(); }
  /// Sum of d_0-degrees of the factors.
  long degree() const;
  /// Total number of factors counted with multiplicity.
  int length() const;
  friend auto operator<=>(const PBWMonomial&, const PBWMonomial&) = default;
};

/// Element of the universal enveloping algebra as a combination of canonical monomials.
class UEnvElement {
 public:
  UEnvElement() = default;
  explicit UEnvElement(PBWMonomial m, Scalar c = Scalar(1));
  static UEnvElement one() { return UEnvElement(PBWMonomial{}); }

  const std::map<PBWMonomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(const PBWMonomial& m) const;
  void add(const PBWMonomial& m, const Scalar& c);

  UEnvElement& operator+=(const UEnvElement& o);
  UEnvElement& operator*=(const Scalar& s);
  friend UEnvElement operator+(UEnvElement a, const UEnvElement& b) { return a += b; }
  friend UEnvElement operator-(UEnvElement a, const UEnvElement& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, -c);
    return a;
  }
  friend UEnvElement operator*(const Scalar& s, UEnvElement a) { return a *= s; }
  friend bool operator==(const UEnvElement&, const UEnvElement&) = default;

 private:
  std::map<PBWMonomial, Scalar> terms_;
};

/// Straightening context for U(L). Canonical order of generators:
/// negative loop modes (most negative first, then basis index), negative
/// Virasoro modes (most negative first), degree-zero negative root vectors,
/// then the zero-degree Cartan and central part, then raising generators.
/// The memo table is owned by the context; use one context per thread.
class PBW {
 public:
  enum class Mode { kGeneral, kNegative };

  explicit PBW(std::shared_ptr<const AffVirAlgebra> alg);

  const AffVirAlgebra& algebra() const { return *alg_; }
  std::shared_ptr<const AffVirAlgebra> algebra_ptr() const { return alg_; }

  /// Sort key realizing the canonical order.
  std::tuple<int, long, long> key(const Gen& g) const;
  bool precedes(const Gen& a, const Gen& b) const { return key(a) < key(b); }
  /// Generator of the negative part (strictly negative degree, or degree 0 and a negative root).
  bool is_negative(const Gen& g) const;
  /// Generator of the positive part.
  bool is_positive(const Gen& g) const;

  UEnvElement straighten(const std::vector<Gen>& word, Mode mode = Mode::kGeneral) const;
  UEnvElement multiply(const UEnvElement& p, const UEnvElement& q) const;
  /// g * q in normal form.
  UEnvElement left_multiply(const Gen& g, const UEnvElement& q) const;
  UEnvElement from_element(const AffVirElement& x) const;

  /// Builds a monomial from factors already in canonical order; throws kParse otherwise.
  PBWMonomial monomial(const std::vector<std::pair<Gen, int>>& factors) const;
  /// The three blocks x (negative loop modes), y (negative Virasoro modes), z (degree-zero lowering).
  struct Split {
    PBWMonomial loop_neg, vir_neg, fin_neg;
  };
  Split split(const PBWMonomial& m) const;

  /// "e(-1)^2 d(-3) f", or "1" for the empty monomial.
  std::string to_string(const PBWMonomial& m) const;
  std::string to_string(const UEnvElement& x) const;
  PBWMonomial parse_monomial(const std::string& text) const;

  std::size_t memo_size() const { return memo_.size(); }

 private:
  const UEnvElement& insert(const Gen& g, const PBWMonomial& m) const;
  UEnvElement compute_insert(const Gen& g, const PBWMonomial& m) const;

  std::shared_ptr<const AffVirAlgebra> alg_;
  mutable std::map<std::pair<Gen, PBWMonomial>, UEnvElement> memo_;
};

}  // namespace avk
