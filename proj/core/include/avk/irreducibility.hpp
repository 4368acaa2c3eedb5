#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avk/ann.hpp"
#include "avk/linalg.hpp"
#include "avk/loop_tensor.hpp"

namespace avk {

/// Which factor of d(-k_r) ... d(-k_1) is k_1: the rightmost (default) or the leftmost.
enum class PsiConvention { kRight, kLeft };

/// psi(d(-k_r) ... d(-k_1)) = prod_j (k_j b - a - nu - sum_{i <= j} k_i) as a polynomial in nu.
NuPoly psi(const PBWMonomial& y, const Scalar& a, const Scalar& b, PsiConvention conv = PsiConvention::kRight);
Scalar psi_at(const PBWMonomial& y, const Scalar& a, const Scalar& b, long n,
              PsiConvention conv = PsiConvention::kRight);

/// (g_1 ... g_s) o v = (-1)^s g_s ... g_1 v.
FiniteModule::Vec circ(const FiniteModule& m, const std::vector<std::size_t>& word, const FiniteModule::Vec& v);

struct IrredOptions {
  PsiConvention psi = PsiConvention::kRight;
  /// Degree bound for the left multipliers P; <= 0 selects the default.
  long p_degree_bound = 0;
  /// Charge bound for the truncated L(lambda, l, k, c)_0 when lambda + k Lambda_0 is not dominant.
  long top_charge = 4;
  /// Window [-W, W] for the fallback method and for spot checks.
  long window = 10;
  bool force_window = false;
  AnnOptions ann;
};

/// The maps phi_n : U(L_-) (x) L(mu) -> L(lambda, l, k, c)_0 (x) L(mu) for one parameter set.
class PhiContext {
 public:
  PhiContext(std::shared_ptr<const PBW> pbw, const TensorParams& params, const IrredOptions& opts = {});

  bool dominant() const { return dominant_; }
  const TensorParams& params() const { return params_; }
  const IrredOptions& options() const { return opts_; }
  const PBW& pbw() const { return *pbw_; }
  std::shared_ptr<const PBW> pbw_ptr() const { return pbw_; }
  /// Truncated L(lambda, l, k, c)_0 (all of L(lambda) in the dominant case).
  const HWModule& top() const { return top_; }
  std::size_t top_dim() const { return top_basis_.size(); }
  const PBWMonomial& top_monomial(std::size_t i) const { return top_basis_[i]; }
  const FiniteModule& mu() const { return mu_; }
  std::size_t rows() const { return top_dim() * mu_.dim(); }
  std::size_t row(std::size_t top_index, std::size_t mu_index) const { return top_index * mu_.dim() + mu_index; }
  /// Row coordinates of z u-bar for z in U(n_-); nullopt when it leaves the truncation.
  std::optional<SparseVector> top_vector(const PBWMonomial& z) const;
  /// Action of a g-basis element on the top space in row coordinates of L(lambda, l, k, c)_0.
  SparseVector top_act(std::size_t x, const SparseVector& v) const;

  /// phi_nu(P (x) v) with polynomial coefficients. Throws kNonNegativePart and, for a
  /// non-dominant context, kNotDominantContext.
  std::vector<NuPoly> phi(const UEnvElement& p, const FiniteModule::Vec& v) const;
  std::vector<Scalar> phi_at(const UEnvElement& p, const FiniteModule::Vec& v, long n) const;
  /// Same as phi without the dominance check; nullopt when a term leaves the truncation.
  std::optional<std::vector<NuPoly>> phi_truncated(const UEnvElement& p, const FiniteModule::Vec& v) const;

 private:
  std::shared_ptr<const PBW> pbw_;
  TensorParams params_;
  IrredOptions opts_;
  bool dominant_;
  HWModule top_;
  FiniteModule mu_;
  std::vector<PBWMonomial> top_basis_;
  std::map<PBWMonomial, std::size_t> top_index_;
};

struct PhiColumn {
  std::size_t generator;
  PBWMonomial multiplier;
  std::size_t mu_index;
};

/// Columns phi_nu(P g_i (x) v) over an enumerated set of multipliers P.
struct PhiImage {
  PolyMatrix matrix{0, 0};
  std::vector<PhiColumn> columns;
  std::size_t generic_rank = 0;
  /// Integers n where the rank at nu = n is below the generic rank.
  std::vector<long> exceptional;
  /// Non-integral rational points of rank drop (irrelevant for the verdict).
  std::vector<Scalar> rational_exceptional;
  /// Full rank with no integral exceptions was reached, which certifies surjectivity.
  bool surjective_certificate = false;
  long p_degree_bound = 0;
  bool bound_below_default = false;
  std::size_t multipliers_examined = 0;
};

/// Default P-degree bound: nilpotency of n_- on L(lambda) + nilpotency of g on L(mu) + max generator depth.
long default_p_degree_bound(const PhiContext& ctx, const AnnGenerators& gens);

/// Enumerates multipliers P by increasing depth and stops once surjectivity is certified.
PhiImage phi_image_rank(const PhiContext& ctx, const AnnGenerators& gens, long p_degree_bound = 0);

/// Rank of the image matrix at nu = n.
std::size_t rank_at(const PhiImage& img, long n);

struct IrredVerdict {
  enum class Method { kSymbolicRank, kWindow };
  Method method = Method::kSymbolicRank;
  bool irreducible = false;
  bool generic_surjective = false;
  std::vector<long> exceptional_n;
  std::optional<std::pair<long, long>> window_checked;
  bool truncation_certified = false;
  std::size_t rows = 0, cols = 0;
  std::vector<std::string> generators;
  std::string reason;
  std::vector<std::string> warnings;
  double seconds = 0;

  /// With `timing` false the output is byte-identical across runs.
  std::string to_json(bool timing = false) const;
};

/// Decision procedure: empty Ann -> reducible; dominant -> symbolic rank over Q(nu);
/// otherwise rank at every n of the window, uncertified.
IrredVerdict is_irreducible(const PhiContext& ctx, const AnnGenerators& gens);
IrredVerdict is_irreducible(const PhiContext& ctx);

/// Per-slice subspaces of a truncated tensor module (or of a direct sum of copies).
struct SliceFamily {
  long lo = 0, hi = 0;
  std::size_t slice_dim = 0;
  std::vector<Subspace> slices;
  const Subspace& slice(long n) const { return slices.at(static_cast<std::size_t>(n - lo)); }
  bool full(long n) const { return slice(n).dim() == slice_dim; }
};

struct ClosureOptions {
  long max_mode = 2;
  std::size_t copies = 1;
};

/// Least family of slice subspaces containing the seeds and closed under the moves
/// x(m), d_m (|m| <= max_mode) applied to vectors whose image stays inside the window.
SliceFamily submodule_closure(const TensorModule& t, const std::vector<std::pair<long, SparseVector>>& seeds,
                              const ClosureOptions& opts = {});
/// Seeds u-bar (x) v_mu (x) t^m for every m of the window (in every copy).
std::vector<std::pair<long, SparseVector>> top_seeds(const TensorModule& t, std::size_t copies = 1);

struct EndoResult {
  std::size_t dimension = 0;
  std::size_t unknowns = 0;
  /// Every slice was reached from the seeds, so maps are determined by their seed values.
  bool determined = false;
  std::size_t lower_bound = 0;
};

/// Dimension of the weight-preserving maps commuting with the window-truncated moves.
EndoResult endo_dimension(const TensorModule& t, const ClosureOptions& opts = {});

struct IsoParams {
  GWeight lambda;
  Scalar l, k, c;
  GWeight mu;
  Scalar a, b;
};

struct IsoReport {
  bool isomorphic = false;
  /// Name of the first differing component, empty when isomorphic.
  std::string differs;
};

/// Compares (lambda, l, k, c, mu, a mod 1, b) componentwise.
IsoReport iso_params_check(const IsoParams& p1, const IsoParams& p2);

}  // namespace avk
