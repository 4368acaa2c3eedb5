#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "avk/highest_weight.hpp"
#include "avk/linalg.hpp"

namespace avk {

/// Loop module L_{a,b}(mu) = L(mu) (x) C[t, 1/t]: d_m (v t^n) = (a + b m + n) v t^{m+n},
/// x(m) (v t^n) = (x v) t^{m+n}, K and C act by zero.
class LoopModule {
 public:
  /// `a` is reduced into [0, 1).
  LoopModule(const SimpleLieAlgebra& lie, const GWeight& mu, const Scalar& a, const Scalar& b);

  using Vector = std::map<long, FiniteModule::Vec>;

  const FiniteModule& finite() const { return mu_; }
  const Scalar& a() const { return a_; }
  const Scalar& b() const { return b_; }
  Vector act(const AffVirElement& x, const Vector& w) const;

 private:
  FiniteModule mu_;
  Scalar a_, b_;
};

struct TensorParams {
  HWParams hw;
  GWeight mu;
  Scalar a, b;
};

/// Component n holds sum_j v[j] (x) v_j (x) t^n, with v[j] a normalized vector of the
/// truncated L(lambda, l, k, c) and v_j the weight basis of L(mu).
struct TensorVector {
  std::map<long, std::vector<ModVec>> comps;
  /// Drops zero components.
  TensorVector normalized() const;
  bool is_zero() const { return normalized().comps.empty(); }
  friend bool operator==(const TensorVector& a, const TensorVector& b) {
    return a.normalized().comps == b.normalized().comps;
  }
};

/// Truncated shifted tensor module L^{mu,a,b}_{lambda,l,k,c}: slices n in [-W, W], each the
/// product of the truncated irreducible quotient with L(mu).
class TensorModule {
 public:
  /// window < 0 selects W = depth + 4.
  TensorModule(std::shared_ptr<const PBW> pbw, const TensorParams& params, long depth, long charge, long window = -1);
  /// Uses an already built truncated module (Verma or quotient) as the first factor.
  TensorModule(HWModule top, const GWeight& mu, const Scalar& a, const Scalar& b, long window = -1);

  const HWModule& top() const { return top_; }
  const FiniteModule& mu_module() const { return mu_; }
  const Scalar& a() const { return a_; }
  const Scalar& b() const { return b_; }
  long window() const { return window_; }
  const SimpleLieAlgebra& lie() const { return top_.lie(); }

  /// Flat basis of the truncated first factor.
  std::size_t top_dim() const { return top_basis_.size(); }
  const PBWMonomial& top_monomial(std::size_t i) const { return top_basis_[i]; }
  long top_depth(std::size_t i) const { return top_depth_[i]; }
  std::size_t slice_dim() const { return top_dim() * mu_.dim(); }
  std::size_t index(std::size_t top_index, std::size_t mu_index) const { return top_index * mu_.dim() + mu_index; }
  /// h-weight of the slice basis vector with index i.
  const GWeight& weight(std::size_t i) const { return weights_[i]; }

  SparseVector coords(const std::vector<ModVec>& slice) const;
  std::vector<ModVec> from_coords(const SparseVector& x) const;
  /// The vector u-bar (x) v_mu in slice coordinates.
  SparseVector seed() const;

  /// The shifted action; throws kTruncationEscape.
  TensorVector shifted_act(const AffVirElement& x, const TensorVector& w) const;
  /// The action on L(lambda, l, k, c) (x) L_{a,b}(mu) in the same storage.
  TensorVector plain_act(const AffVirElement& x, const TensorVector& w) const;
  /// P u (x) v (x) t^n -> P u (x) v (x) t^{n + deg P} and its inverse.
  TensorVector unshift(const TensorVector& w) const;
  TensorVector shift(const TensorVector& w) const;
  /// Product basis of the slice of d_0-eigenvalue a + l + n.
  std::vector<TensorVector> weight_basis(long n) const;

  /// Generators x(m), d_m with 0 < |m| <= max_mode and x(0), used by closures.
  std::vector<Gen> moves(long max_mode) const;
  /// Image of slice-n coordinates under g in slice n + mode(g). With `truncate` the
  /// components leaving the window are dropped; otherwise the result is empty when any does.
  std::optional<SparseVector> apply(const Gen& g, long n, const SparseVector& x, bool truncate) const;
  /// safe[i]: g maps top basis vector i into the window.
  const std::vector<bool>& safe(const Gen& g) const;

 private:
  void init();
  struct MoveTable {
    std::vector<std::optional<std::vector<std::pair<std::size_t, Scalar>>>> top;
    std::vector<bool> safe;
  };
  const MoveTable& table(const Gen& g) const;

  HWModule top_;
  FiniteModule mu_;
  Scalar a_, b_;
  long window_ = 0;
  std::vector<PBWMonomial> top_basis_;
  std::vector<long> top_depth_;
  std::map<PBWMonomial, std::size_t> top_index_;
  std::vector<GWeight> weights_;
  mutable std::map<Gen, MoveTable> tables_;
};

}  // namespace avk
