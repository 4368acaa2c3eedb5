#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "avk/linalg.hpp"
#include "avk/pbw.hpp"

namespace avk {

/// Highest weight data (lambda, l, k, c): u has h-weight lambda, d_0 u = l u, K u = k u, C u = c u.
struct HWParams {
  GWeight lambda;
  Scalar l, k, c;
};

/// Weight of a vector P u: depth = -deg P, drop = lambda minus the h-weight in simple-root coordinates.
struct WeightKey {
  long depth = 0;
  std::vector<long> drop;
  friend auto operator<=>(const WeightKey&, const WeightKey&) = default;
};

/// Vectors of a highest weight module are stored as P with the vector P u;
/// monomials are canonical and lie in U(L_-).
using ModVec = UEnvElement;

/// Exact action of U(L) on the Verma module M(lambda, l, k, c), memoized on
/// (generator, monomial). Shared by all truncations of the same Verma module.
class VermaActor {
 public:
  VermaActor(std::shared_ptr<const PBW> pbw, HWParams params, bool virasoro_only);

  const PBW& pbw() const { return *pbw_; }
  const HWParams& params() const { return params_; }
  bool virasoro_only() const { return virasoro_only_; }

  WeightKey weight_of(const PBWMonomial& m) const;
  const ModVec& act(const Gen& g, const PBWMonomial& m) const;
  ModVec act(const Gen& g, const ModVec& v) const;

 private:
  ModVec compute(const Gen& g, const PBWMonomial& m) const;

  std::shared_ptr<const PBW> pbw_;
  HWParams params_;
  bool virasoro_only_;
  mutable std::map<std::pair<Gen, PBWMonomial>, ModVec> memo_;
};

/// Truncated highest weight module: a Verma module or its irreducible quotient.
/// The window holds the weights with depth <= N and affine height
/// ht(drop) + depth (1 + ht theta) <= C + N (1 + ht theta); every raising
/// generator maps the window into itself.
class HWModule {
 public:
  enum class Kind { kVerma, kQuotient };

  static constexpr std::size_t kDefaultBudget = 4'000'000;

  /// Enumerates all canonical monomials in the window. Throws kBoundsTooLargeForMemory
  /// when more than `budget` monomials would be needed.
  static HWModule build_verma(std::shared_ptr<const PBW> pbw, const HWParams& params, long depth_bound,
                              long charge_bound, std::size_t budget = kDefaultBudget);
  /// Verma module of the Virasoro algebra alone (g acts by zero, lambda = 0, k = 0).
  static HWModule build_virasoro_verma(std::shared_ptr<const PBW> pbw, const Scalar& l, const Scalar& c,
                                       long depth_bound, std::size_t budget = kDefaultBudget);

  Kind kind() const { return kind_; }
  bool virasoro_only() const { return actor_->virasoro_only(); }
  const HWParams& params() const { return actor_->params(); }
  long depth_bound() const { return depth_bound_; }
  long charge_bound() const { return charge_bound_; }
  const PBW& pbw() const { return actor_->pbw(); }
  const AffVirAlgebra& algebra() const { return actor_->pbw().algebra(); }
  const SimpleLieAlgebra& lie() const { return actor_->pbw().algebra().g(); }
  std::shared_ptr<const VermaActor> actor() const { return actor_; }

  WeightKey top_weight() const;
  WeightKey weight_of(const PBWMonomial& m) const { return actor_->weight_of(m); }
  /// Weight of g . v relative to v.
  WeightKey shifted(const WeightKey& w, const Gen& g) const;
  long affine_height(const WeightKey& w) const;
  bool in_window(const WeightKey& w) const;
  GWeight h_weight(const WeightKey& w) const;
  Scalar d0_eigenvalue(const WeightKey& w) const;

  /// Weights with a nonzero Verma space, by affine height, then depth, then drop.
  const std::vector<WeightKey>& weights() const { return weights_; }
  const std::vector<PBWMonomial>& verma_basis(const WeightKey& w) const;
  std::size_t verma_dim(const WeightKey& w) const { return verma_basis(w).size(); }
  /// Basis monomials of the module (pivot monomials for a quotient).
  std::vector<PBWMonomial> basis(const WeightKey& w) const;
  std::size_t dim(const WeightKey& w) const;
  std::size_t total_dim() const;
  /// Rows of the reduced projection onto the quotient, in Verma monomial coordinates.
  /// Empty for the Verma kind.
  const std::vector<SparseVector>& projection(const WeightKey& w) const;

  /// Index of monomial m in verma_basis(weight_of(m)).
  std::size_t monomial_index(const PBWMonomial& m) const;
  /// Verma coordinates of a homogeneous vector of weight w.
  SparseVector verma_coords(const WeightKey& w, const ModVec& v) const;
  /// Module coordinates with respect to basis(w).
  SparseVector coords(const WeightKey& w, const ModVec& v) const;
  ModVec from_coords(const WeightKey& w, const SparseVector& x) const;
  /// Canonical representative modulo the maximal submodule; throws kTruncationEscape
  /// if v has components outside the window.
  ModVec normalize(const ModVec& v) const;
  /// Splits v into weight components.
  std::map<WeightKey, ModVec> components(const ModVec& v) const;

  /// Exact action in the Verma module, ignoring the window.
  ModVec act_exact(const Gen& g, const ModVec& v) const { return actor_->act(g, v); }
  /// Action in this module; throws kTruncationEscape when the image leaves the window.
  ModVec act(const Gen& g, const ModVec& v) const;
  ModVec act(const AffVirElement& x, const ModVec& v) const;
  /// P v for P in U(L), applying factors right to left.
  ModVec act(const UEnvElement& p, const ModVec& v) const;
  ModVec act_exact(const UEnvElement& p, const ModVec& v) const;

  /// Raising generators {simple e_i, x(1) for all basis x, d_1, d_2}.
  std::vector<Gen> raising_set() const;
  /// Negative generators whose shift keeps some weight in the window.
  std::vector<Gen> lowering_set() const;

  /// Joint kernel of the raising set on the weight space w; requires depth <= N.
  std::vector<ModVec> singular_vectors(const WeightKey& w) const;
  /// All singular vectors at a given depth with charge drop height at most max_charge.
  std::vector<std::pair<WeightKey, ModVec>> singular_vectors(long depth, long max_charge) const;

  /// The irreducible quotient, computed weight by weight from the top down.
  HWModule irreducible_quotient() const;
  /// Gram matrix of the contravariant form on the Verma space w.
  std::vector<SparseVector> shapovalov_gram(const WeightKey& w) const;
  /// Radical of the contravariant form on the Verma space w.
  std::vector<SparseVector> shapovalov_radical(const WeightKey& w) const;
  /// Anti-involution omega on a generator, as an element of L.
  AffVirElement omega(const Gen& g) const;

  std::string to_string(const ModVec& v) const { return pbw().to_string(v); }

 private:
  HWModule() = default;
  static HWModule build(std::shared_ptr<const PBW> pbw, const HWParams& params, long depth_bound, long charge_bound,
                        bool virasoro_only, std::size_t budget);
  void enumerate(std::size_t budget);

  std::shared_ptr<const VermaActor> actor_;
  Kind kind_ = Kind::kVerma;
  long depth_bound_ = 0;
  long charge_bound_ = 0;
  std::vector<WeightKey> weights_;
  struct Space {
    std::vector<PBWMonomial> monos;
    std::map<PBWMonomial, std::size_t> index;
    std::vector<SparseVector> proj;
  };
  std::map<WeightKey, Space> spaces_;
};

/// Exact (depth, charge) description of a dumped module.
std::string dump_module_json(const HWModule& m);
/// Rebuilds a module from a dump and verifies that bases and projections agree.
HWModule load_module_json(const std::string& text, std::shared_ptr<const PBW> pbw);

}  // namespace avk
