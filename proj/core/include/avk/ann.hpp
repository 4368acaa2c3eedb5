#pragma once

#include <memory>
#include <string>
#include <vector>

#include "avk/highest_weight.hpp"

namespace avk {

enum class AnnProvenance { kDominantFormula, kComputedSingular };

/// Generators of the left ideal Ann(u-bar) in U(L_-).
struct AnnGenerators {
  std::vector<UEnvElement> generators;
  std::vector<std::string> labels;
  AnnProvenance provenance = AnnProvenance::kDominantFormula;
  /// Virasoro singular vectors F(d) of M_V(l', c') used for the E_j (dominant path only).
  std::vector<UEnvElement> virasoro_singular;
  /// verified[i]: generator i was checked to vanish in the truncated quotient.
  std::vector<bool> verified;
  /// Search depth; generators deeper than this are not known.
  long search_depth = 0;

  std::string to_json(const PBW& pbw) const;
};

struct AnnOptions {
  enum class Path { kAuto, kDominant, kComputed };
  Path path = Path::kAuto;
  /// Virasoro depth for the E_j search.
  long virasoro_depth = 6;
  /// Bounds for the singular-vector search of the fallback path.
  long depth = 3;
  long charge = 2;
  /// Generators up to this depth are checked against the irreducible quotient.
  long verify_depth = 3;
};

/// Singular vectors of M_V(l, c) up to `depth` that are not in the submodule
/// generated by shallower ones, as elements F of U(V_-) with F u the singular vector.
std::vector<UEnvElement> virasoro_singular_generators(std::shared_ptr<const PBW> pbw, const Scalar& l,
                                                      const Scalar& c, long depth);

/// Singular vectors of the Verma module M that are not in the submodule generated
/// by previously found ones, in window order.
std::vector<UEnvElement> singular_generators(const HWModule& verma, long depth, long charge);

/// Dominant path: f_i^{<lambda + k Lambda_0, alpha_i^vee> + 1} for i = 0..r and the E_j
/// obtained from Virasoro singular vectors of M_V(l', c') under d(-m) -> D(-m).
/// Fallback path: generators read off computed singular vectors.
/// Throws kNotDominant (dominant path requested) and kLevelIsMinusDualCoxeter.
AnnGenerators ann_generators(std::shared_ptr<const PBW> pbw, const HWParams& params, const AnnOptions& opts = {});

}  // namespace avk
