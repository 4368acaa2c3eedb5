#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "avk/highest_weight.hpp"

namespace avk {

/// Sugawara operators T_n = -1/2 sum_j sum_i :x_i(-j) y_i(j+n): and the coset
/// operators D_n = d_n - T_n / (k + g) acting on a highest weight module.
class SugawaraContext {
 public:
  /// Throws kLevelIsMinusDualCoxeter when k = -g.
  explicit SugawaraContext(const HWModule& module);

  const Scalar& k_plus_g() const { return k_plus_g_; }
  /// c - k dim g / (k + g)
  Scalar c_prime() const;
  /// l + c_lambda / (2 (k + g))
  Scalar l_prime() const;

  /// T_n v computed exactly in the Verma module. With `swap_ties` the terms with
  /// -j = j + n are evaluated in the opposite order.
  ModVec apply_T(long n, const ModVec& v, bool swap_ties = false) const;
  ModVec apply_D(long n, const ModVec& v) const;
  /// Applies D(-i_t) ... D(-i_1) for the Virasoro monomial d(-i_t) ... d(-i_1), rightmost first.
  ModVec apply_D_word(const PBWMonomial& vir_word, const ModVec& v) const;

  const HWModule& module() const { return module_; }

 private:
  const ModVec& apply_T_mono(long n, const PBWMonomial& m, bool swap_ties) const;

  const HWModule& module_;
  Scalar k_plus_g_;
  std::vector<GVec> dual_;
  mutable std::map<std::tuple<long, bool, PBWMonomial>, ModVec> memo_;
};

struct IdentityCheck {
  std::string name;
  bool pass = true;
  std::string witness;  ///< first failing vector and modes, empty when passing
};

struct FactorizationReport {
  Scalar l_prime, c_prime;
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
  std::string to_json() const;
};

/// Checks [D_m, D_n] = (n-m) D_{m+n} + delta_{m+n,0} (m^3-m)/12 c', [D_n, x(m)] = 0 and
/// D_0 u = l' u on every module basis vector of depth <= depth, for |m|, |n| <= max_mode.
FactorizationReport factorization_report(const SugawaraContext& ctx, long depth, long max_mode = 2);

}  // namespace avk
