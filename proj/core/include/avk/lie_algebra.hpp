#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avk/scalar.hpp"

namespace avk {

/// Element of a finite-dimensional Lie algebra as dense coordinates in its basis.
using GVec = std::vector<Scalar>;

/// Weight of the Cartan subalgebra stored as coroot values <lambda, alpha_i^vee>.
struct GWeight {
  std::vector<Scalar> coords;

  GWeight() = default;
  explicit GWeight(std::vector<Scalar> c) : coords(std::move(c)) {}
  std::size_t rank() const { return coords.size(); }
  friend GWeight operator+(GWeight a, const GWeight& b);
  friend GWeight operator-(GWeight a, const GWeight& b);
  friend GWeight operator*(const Scalar& s, GWeight a);
  friend bool operator==(const GWeight&, const GWeight&) = default;
  friend auto operator<=>(const GWeight& a, const GWeight& b) { return a.coords <=> b.coords; }
  std::string to_string() const;
};

/// Raw algebra description as read from a config file or preset.
struct AlgebraConfig {
  std::string name;
  std::vector<std::string> basis;
  std::vector<std::size_t> cartan;
  /// Optional explicit positive root vectors; otherwise a lexicographic positive system is used.
  std::optional<std::vector<std::size_t>> positive;
  /// Nonzero structure constants [b_i, b_j] = sum_k c_k b_k; (j, i) is filled by antisymmetry.
  struct Bracket {
    std::size_t i, j;
    std::vector<std::pair<std::size_t, Scalar>> terms;
  };
  std::vector<Bracket> brackets;
  std::vector<std::vector<Scalar>> form;
  /// Rescale the form so that (theta|theta) = 2. When false the form is used as given.
  bool normalize = true;
};

/// Finite-dimensional simple Lie algebra with a root-vector basis, an
/// invariant form normalized by (theta|theta) = 2, and derived root data.
/// Immutable after construction; every invariant is checked at load.
class SimpleLieAlgebra {
 public:
  explicit SimpleLieAlgebra(const AlgebraConfig& config);

  static SimpleLieAlgebra sl2();
  static AlgebraConfig sl2_config();
  static AlgebraConfig sl3_config();

  const std::string& name() const { return name_; }
  std::size_t dim() const { return names_.size(); }
  std::size_t rank() const { return cartan_.size(); }
  const std::string& basis_name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> basis_index(const std::string& name) const;

  /// [b_i, b_j] in sparse form.
  const std::vector<std::pair<std::size_t, Scalar>>& bracket(std::size_t i, std::size_t j) const {
    return brackets_[i][j];
  }
  GVec bracket(const GVec& x, const GVec& y) const;
  const Scalar& form(std::size_t i, std::size_t j) const { return form_[i][j]; }
  Scalar form(const GVec& x, const GVec& y) const;
  GVec unit(std::size_t i) const;

  const std::vector<std::size_t>& cartan() const { return cartan_; }
  bool is_cartan(std::size_t b) const { return root_height_[b] == 0; }
  bool is_positive(std::size_t b) const { return root_height_[b] > 0; }
  bool is_negative(std::size_t b) const { return root_height_[b] < 0; }
  /// Root of basis element b in simple-root coordinates (zero for Cartan elements).
  const std::vector<long>& root_coords(std::size_t b) const { return root_coords_[b]; }
  long height(std::size_t b) const { return root_height_[b]; }
  /// The weight of b as coroot values <alpha_b, alpha_i^vee>.
  const GWeight& root_weight(std::size_t b) const { return root_weight_[b]; }
  /// Negative root vectors, ordered by basis index.
  const std::vector<std::size_t>& negative_roots() const { return negative_; }
  const std::vector<std::size_t>& positive_roots() const { return positive_; }
  /// Positive / negative simple root vectors e_i, f_i for i = 1..rank.
  const std::vector<std::size_t>& simple_e() const { return simple_e_; }
  const std::vector<std::size_t>& simple_f() const { return simple_f_; }
  std::size_t theta_vector() const { return theta_e_; }
  std::size_t minus_theta_vector() const { return theta_f_; }
  /// The root vector of weight -alpha for the root vector b (root alpha).
  std::size_t opposite(std::size_t b) const { return opposite_[b]; }
  long theta_height() const { return root_height_[theta_e_]; }

  /// <lambda, theta^vee>
  Scalar theta_coroot_value(const GWeight& lambda) const;
  /// <lambda, 2 rho^vee>
  Scalar two_rho_coroot_value(const GWeight& lambda) const;
  /// lambda(h_j) for the Cartan basis element with basis index b.
  Scalar cartan_value(const GWeight& lambda, std::size_t b) const;

  GWeight zero_weight() const { return GWeight(std::vector<Scalar>(rank())); }
  GWeight theta() const { return root_weight(theta_e_); }
  GWeight rho() const { return GWeight(std::vector<Scalar>(rank(), Scalar(1))); }
  /// (lambda | mu) via the normalized form transported to h*.
  Scalar weight_form(const GWeight& lambda, const GWeight& mu) const;

  /// Dual basis: (b_i | dual_basis(j)) = delta_ij.
  const GVec& dual_basis(std::size_t j) const { return dual_[j]; }

  /// Anti-involution fixing h and sending e_alpha to a multiple of e_{-alpha}.
  const GVec& chevalley_anti(std::size_t b) const { return omega_[b]; }

  /// (lambda + 2 rho | lambda)
  Scalar casimir_eigenvalue(const GWeight& lambda) const;
  /// 1/2 c_theta, a positive integer.
  const Scalar& dual_coxeter() const { return dual_coxeter_; }
  /// Integral dominance of lambda + k Lambda_0.
  bool is_dominant(const GWeight& lambda, const Scalar& level) const;
  bool is_dominant_integral(const GWeight& lambda) const;

 private:
  void check_axioms() const;
  void derive_roots(const AlgebraConfig& config);
  void derive_form_data(bool normalize);
  void derive_anti_involution();

  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::size_t> cartan_;
  std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>> brackets_;
  std::vector<std::vector<Scalar>> form_;

  std::vector<std::vector<Scalar>> root_on_cartan_;  // alpha_b(h_j)
  std::vector<std::vector<long>> root_coords_;
  std::vector<long> root_height_;
  std::vector<GWeight> root_weight_;
  std::vector<std::size_t> positive_, negative_, simple_e_, simple_f_, opposite_;
  std::size_t theta_e_ = 0, theta_f_ = 0;

  std::vector<std::vector<Scalar>> coroot_in_cartan_;   // alpha_i^vee as combination of Cartan basis
  std::vector<std::vector<Scalar>> cartan_in_coroots_;  // h_j = sum_i c_ji alpha_i^vee
  std::vector<std::vector<Scalar>> fundamental_gram_;   // (omega_i | omega_j)
  std::vector<long> theta_coroot_coords_;               // theta^vee in simple coroots
  std::vector<long> two_rho_coroot_coords_;             // 2 rho^vee in simple coroots
  std::vector<GVec> dual_;
  std::vector<GVec> omega_;
  Scalar dual_coxeter_;
};

/// Finite-dimensional irreducible g-module L(mu) with a weight basis.
class FiniteModule {
 public:
  using Vec = std::vector<Scalar>;

  std::size_t dim() const { return weights_.size(); }
  const GWeight& highest_weight() const { return mu_; }
  std::size_t highest_vector_index() const { return 0; }
  const GWeight& weight(std::size_t i) const { return weights_[i]; }
  /// Action matrix of basis element x (dense, column j = x . b_j).
  const std::vector<Vec>& matrix(std::size_t x) const { return action_[x]; }
  /// Labels of the weight basis (lowering monomials applied to v_mu).
  const std::string& label(std::size_t i) const { return labels_[i]; }

  Vec apply(std::size_t x, const Vec& v) const;
  Vec apply(const GVec& x, const Vec& v) const;
  Vec unit(std::size_t i) const;
  /// Smallest n with x^n = 0 over all root vectors x (the nilpotency index).
  std::size_t nilpotency_index() const { return nilpotency_; }

  friend FiniteModule finite_irrep(const SimpleLieAlgebra& alg, const GWeight& mu);

 private:
  GWeight mu_;
  std::vector<GWeight> weights_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Vec>> action_;  // [x][row][col]
  std::size_t nilpotency_ = 1;
};

/// Builds L(mu) as the truncated g-Verma module modulo the radical of the
/// contravariant form. Throws kNotDominantIntegral.
FiniteModule finite_irrep(const SimpleLieAlgebra& alg, const GWeight& mu);

}  // namespace avk
