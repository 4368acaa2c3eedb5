#include "avk/lie_algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "avk/error.hpp"
#include "avk/linalg.hpp"

namespace avk {

namespace {

using Dense = std::vector<std::vector<Scalar>>;

// Gauss-Jordan inverse of a square matrix; throws when singular.
Dense inverse(const Dense& a) {
  const std::size_t n = a.size();
  Dense m = a;
  Dense inv(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Scalar(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) throw Error(ErrorCode::kInvalidArgument, "singular matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    const Scalar piv = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const Scalar f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

std::vector<Scalar> mat_vec(const Dense& a, const std::vector<Scalar>& x) {
  std::vector<Scalar> y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

Dense transpose(const Dense& a) {
  if (a.empty()) return {};
  Dense t(a[0].size(), std::vector<Scalar>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Dense mat_mul(const Dense& a, const Dense& b) {
  Dense c(a.size(), std::vector<Scalar>(b.empty() ? 0 : b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

long to_long_exact(const Scalar& s, const char* what) {
  auto v = s.to_long();
  if (!v) throw Error(ErrorCode::kInvalidArgument, std::string("expected an integer for ") + what);
  return *v;
}

bool is_zero_vec(const GVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

}  // namespace

// ---------------------------------------------------------------- GWeight

GWeight operator+(GWeight a, const GWeight& b) {
  for (std::size_t i = 0; i < a.coords.size(); ++i) a.coords[i] += b.coords[i];
  return a;
}

GWeight operator-(GWeight a, const GWeight& b) {
  for (std::size_t i = 0; i < a.coords.size(); ++i) a.coords[i] -= b.coords[i];
  return a;
}

GWeight operator*(const Scalar& s, GWeight a) {
  for (auto& c : a.coords) c *= s;
  return a;
}

std::string GWeight::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------- presets

AlgebraConfig SimpleLieAlgebra::sl2_config() {
  // Basis order f, h, e: lowering operators sort first in PBW monomials.
  AlgebraConfig c;
  c.name = "sl2";
  c.basis = {"f", "h", "e"};
  c.cartan = {1};
  c.positive = std::vector<std::size_t>{2};
  c.brackets = {
      {1, 2, {{2, Scalar(2)}}},   // [h,e] = 2e
      {1, 0, {{0, Scalar(-2)}}},  // [h,f] = -2f
      {2, 0, {{1, Scalar(1)}}},   // [e,f] = h
  };
  c.form = {{0, 0, 1}, {0, 2, 0}, {1, 0, 0}};
  return c;
}

AlgebraConfig SimpleLieAlgebra::sl3_config() {
  // Matrix units: f1=E21, f2=E32, f3=E31, h1, h2, e1=E12, e2=E23, e3=E13.
  AlgebraConfig c;
  c.name = "sl3";
  c.basis = {"f1", "f2", "f3", "h1", "h2", "e1", "e2", "e3"};
  c.cartan = {3, 4};
  c.positive = std::vector<std::size_t>{5, 6, 7};
  // Represent each element as a 3x3 matrix and take commutators.
  using M = std::array<std::array<long, 3>, 3>;
  auto unitm = [](int i, int j) {
    M m{};
    m[i][j] = 1;
    return m;
  };
  M h1{}, h2{};
  h1[0][0] = 1;
  h1[1][1] = -1;
  h2[1][1] = 1;
  h2[2][2] = -1;
  std::vector<M> mats = {unitm(1, 0), unitm(2, 1), unitm(2, 0), h1, h2, unitm(0, 1), unitm(1, 2), unitm(0, 2)};
  auto mul = [](const M& a, const M& b) {
    M r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
  };
  auto decompose = [&](const M& m) {
    // Off-diagonal entries map to root vectors, the diagonal to h1, h2.
    std::vector<std::pair<std::size_t, Scalar>> terms;
    const std::pair<int, int> pos[] = {{1, 0}, {2, 1}, {2, 0}, {0, 1}, {1, 2}, {0, 2}};
    const std::size_t idx[] = {0, 1, 2, 5, 6, 7};
    for (int t = 0; t < 6; ++t)
      if (m[pos[t].first][pos[t].second] != 0) terms.emplace_back(idx[t], Scalar(m[pos[t].first][pos[t].second]));
    // diag(a, b, -a-b) = a h1 + (a+b) h2
    const long a = m[0][0], b = m[1][1];
    if (a != 0) terms.emplace_back(3, Scalar(a));
    if (a + b != 0) terms.emplace_back(4, Scalar(a + b));
    return terms;
  };
  for (std::size_t i = 0; i < mats.size(); ++i) {
    for (std::size_t j = i + 1; j < mats.size(); ++j) {
      M ab = mul(mats[i], mats[j]), ba = mul(mats[j], mats[i]);
      M comm{};
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) comm[r][s] = ab[r][s] - ba[r][s];
      auto terms = decompose(comm);
      if (!terms.empty()) c.brackets.push_back({i, j, terms});
    }
  }
  // Trace form tr(xy).
  c.form.assign(8, std::vector<Scalar>(8));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      M p = mul(mats[i], mats[j]);
      c.form[i][j] = Scalar(p[0][0] + p[1][1] + p[2][2]);
    }
  return c;
}

SimpleLieAlgebra SimpleLieAlgebra::sl2() { return SimpleLieAlgebra(sl2_config()); }

// ---------------------------------------------------------------- construction

SimpleLieAlgebra::SimpleLieAlgebra(const AlgebraConfig& config)
    : name_(config.name), names_(config.basis), cartan_(config.cartan) {
  const std::size_t d = names_.size();
  if (d == 0) throw Error(ErrorCode::kInvalidArgument, "empty basis");
  if (config.form.size() != d) throw Error(ErrorCode::kInvalidArgument, "form has wrong size");
  for (const auto& row : config.form)
    if (row.size() != d) throw Error(ErrorCode::kInvalidArgument, "form has wrong size");
  form_ = config.form;

  brackets_.assign(d, std::vector<std::vector<std::pair<std::size_t, Scalar>>>(d));
  std::vector<std::vector<bool>> given(d, std::vector<bool>(d, false));
  for (const auto& br : config.brackets) {
    if (br.i >= d || br.j >= d) throw Error(ErrorCode::kInvalidArgument, "bracket index out of range");
    GVec v(d);
    for (const auto& [k, c] : br.terms) {
      if (k >= d) throw Error(ErrorCode::kInvalidArgument, "bracket term index out of range");
      v[k] += c;
    }
    std::vector<std::pair<std::size_t, Scalar>> sparse, neg;
    for (std::size_t k = 0; k < d; ++k) {
      if (v[k].is_zero()) continue;
      sparse.emplace_back(k, v[k]);
      neg.emplace_back(k, -v[k]);
    }
    if (given[br.j][br.i] && brackets_[br.j][br.i] != neg) {
      throw Error(ErrorCode::kJacobiViolation, "bracket table is not antisymmetric at (" + names_[br.i] + ", " +
                                                   names_[br.j] + ")");
    }
    if (br.i == br.j && !sparse.empty()) {
      throw Error(ErrorCode::kJacobiViolation, "[x,x] != 0 for " + names_[br.i]);
    }
    brackets_[br.i][br.j] = sparse;
    brackets_[br.j][br.i] = neg;
    given[br.i][br.j] = given[br.j][br.i] = true;
  }
  check_axioms();
  derive_roots(config);
  derive_form_data(config.normalize);
  derive_anti_involution();
}

std::optional<std::size_t> SimpleLieAlgebra::basis_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

GVec SimpleLieAlgebra::unit(std::size_t i) const {
  GVec v(dim());
  v.at(i) = Scalar(1);
  return v;
}

GVec SimpleLieAlgebra::bracket(const GVec& x, const GVec& y) const {
  GVec out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j].is_zero()) continue;
      const Scalar c = x[i] * y[j];
      for (const auto& [k, v] : brackets_[i][j]) out[k] += c * v;
    }
  }
  return out;
}

Scalar SimpleLieAlgebra::form(const GVec& x, const GVec& y) const {
  Scalar acc;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j)
      if (!y[j].is_zero()) acc += x[i] * form_[i][j] * y[j];
  }
  return acc;
}

void SimpleLieAlgebra::check_axioms() const {
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const GVec x = unit(i), y = unit(j), z = unit(k);
        GVec jac = bracket(bracket(x, y), z);
        const GVec t2 = bracket(bracket(y, z), x);
        const GVec t3 = bracket(bracket(z, x), y);
        for (std::size_t m = 0; m < d; ++m) jac[m] += t2[m] + t3[m];
        if (!is_zero_vec(jac)) {
          throw Error(ErrorCode::kJacobiViolation,
                      "Jacobi identity fails on (" + names_[i] + ", " + names_[j] + ", " + names_[k] + ")");
        }
      }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (form_[i][j] != form_[j][i]) throw Error(ErrorCode::kFormNotInvariant, "form is not symmetric");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const GVec x = unit(i), y = unit(j), z = unit(k);
        if (form(bracket(x, y), z) != form(x, bracket(y, z))) {
          throw Error(ErrorCode::kFormNotInvariant,
                      "([x,y]|z) != (x|[y,z]) on (" + names_[i] + ", " + names_[j] + ", " + names_[k] + ")");
        }
      }
}

void SimpleLieAlgebra::derive_roots(const AlgebraConfig& config) {
  const std::size_t d = dim(), r = rank();
  if (r == 0) throw Error(ErrorCode::kInvalidArgument, "no Cartan elements declared");
  std::vector<bool> in_cartan(d, false);
  for (auto h : cartan_) {
    if (h >= d) throw Error(ErrorCode::kInvalidArgument, "Cartan index out of range");
    in_cartan[h] = true;
  }
  for (auto h1 : cartan_)
    for (auto h2 : cartan_)
      if (!brackets_[h1][h2].empty()) throw Error(ErrorCode::kInvalidArgument, "Cartan elements do not commute");

  root_on_cartan_.assign(d, std::vector<Scalar>(r));
  std::vector<std::size_t> roots;
  for (std::size_t b = 0; b < d; ++b) {
    if (in_cartan[b]) continue;
    roots.push_back(b);
    for (std::size_t j = 0; j < r; ++j) {
      const auto& br = brackets_[cartan_[j]][b];
      if (br.size() > 1 || (br.size() == 1 && br[0].first != b)) {
        throw Error(ErrorCode::kInvalidArgument, "basis element " + names_[b] + " is not a root vector");
      }
      if (!br.empty()) root_on_cartan_[b][j] = br[0].second;
    }
    if (std::all_of(root_on_cartan_[b].begin(), root_on_cartan_[b].end(), [](const Scalar& s) { return s.is_zero(); })) {
      throw Error(ErrorCode::kInvalidArgument, "basis element " + names_[b] + " has zero weight but is not Cartan");
    }
  }

  std::vector<int> sign(d, 0);
  if (config.positive) {
    for (auto b : *config.positive) {
      if (b >= d || in_cartan[b]) throw Error(ErrorCode::kInvalidArgument, "bad positive root index");
      sign[b] = 1;
    }
    for (auto b : roots)
      if (sign[b] == 0) sign[b] = -1;
  } else {
    for (auto b : roots) {
      for (const auto& v : root_on_cartan_[b]) {
        if (!v.is_zero()) {
          sign[b] = v.sign();
          break;
        }
      }
    }
  }

  opposite_.assign(d, d);
  for (auto b : roots) {
    for (auto c : roots) {
      bool opp = true;
      for (std::size_t j = 0; j < r; ++j)
        if (root_on_cartan_[b][j] != -root_on_cartan_[c][j]) opp = false;
      if (opp) opposite_[b] = c;
    }
    if (opposite_[b] == d) throw Error(ErrorCode::kInvalidArgument, "root " + names_[b] + " has no opposite");
    if (sign[b] == sign[opposite_[b]]) throw Error(ErrorCode::kInvalidArgument, "inconsistent positive system");
  }
  for (auto b : roots) (sign[b] > 0 ? positive_ : negative_).push_back(b);

  auto is_sum_of_two = [&](std::size_t a) {
    for (auto b : positive_)
      for (auto c : positive_) {
        bool eq = true;
        for (std::size_t j = 0; j < r; ++j)
          if (root_on_cartan_[a][j] != root_on_cartan_[b][j] + root_on_cartan_[c][j]) eq = false;
        if (eq) return true;
      }
    return false;
  };
  for (auto a : positive_)
    if (!is_sum_of_two(a)) simple_e_.push_back(a);
  if (simple_e_.size() != r) throw Error(ErrorCode::kInvalidArgument, "number of simple roots differs from rank");
  for (auto e : simple_e_) simple_f_.push_back(opposite_[e]);

  // Simple-root coordinates: alpha(h_j) = sum_i n_i alpha_i(h_j).
  Dense s(r, std::vector<Scalar>(r));
  for (std::size_t i = 0; i < r; ++i) s[i] = root_on_cartan_[simple_e_[i]];
  const Dense st_inv = inverse(transpose(s));
  root_coords_.assign(d, std::vector<long>(r, 0));
  root_height_.assign(d, 0);
  for (auto b : roots) {
    const auto n = mat_vec(st_inv, root_on_cartan_[b]);
    long h = 0;
    for (std::size_t i = 0; i < r; ++i) {
      root_coords_[b][i] = to_long_exact(n[i], "root coordinate");
      h += root_coords_[b][i];
    }
    root_height_[b] = h;
    if ((h > 0) != (sign[b] > 0)) throw Error(ErrorCode::kInvalidArgument, "positive system is not compatible with simple roots");
  }
  theta_e_ = positive_.front();
  for (auto b : positive_)
    if (root_height_[b] > root_height_[theta_e_]) theta_e_ = b;
  theta_f_ = opposite_[theta_e_];
}

void SimpleLieAlgebra::derive_form_data(bool normalize) {
  const std::size_t r = rank(), d = dim();
  Dense bh(r, std::vector<Scalar>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) bh[i][j] = form_[cartan_[i]][cartan_[j]];
  Dense bh_inv;
  try {
    bh_inv = inverse(bh);
  } catch (const Error&) {
    throw Error(ErrorCode::kNormalizationImpossible, "form is degenerate on the Cartan subalgebra");
  }
  auto t_of = [&](std::size_t b) { return mat_vec(bh_inv, root_on_cartan_[b]); };
  auto pair = [&](std::size_t a, const std::vector<Scalar>& t) {
    Scalar acc;
    for (std::size_t k = 0; k < r; ++k) acc += root_on_cartan_[a][k] * t[k];
    return acc;
  };

  const Scalar theta_sq = pair(theta_e_, t_of(theta_e_));
  if (theta_sq.sign() <= 0) {
    throw Error(ErrorCode::kNormalizationImpossible, "(theta|theta) = " + theta_sq.to_string() + " cannot be scaled to 2");
  }
  if (normalize && theta_sq != Scalar(2)) {
    const Scalar s = theta_sq / Scalar(2);
    for (auto& row : form_)
      for (auto& v : row) v *= s;
    for (auto& row : bh_inv)
      for (auto& v : row) v /= s;
  }

  coroot_in_cartan_.assign(r, {});
  Dense k(r, std::vector<Scalar>(r));  // columns are simple coroots
  for (std::size_t i = 0; i < r; ++i) {
    auto t = t_of(simple_e_[i]);
    const Scalar sq = pair(simple_e_[i], t);
    for (auto& v : t) v *= Scalar(2) / sq;
    coroot_in_cartan_[i] = t;
    for (std::size_t j = 0; j < r; ++j) k[j][i] = t[j];
  }
  const Dense k_inv = inverse(k);
  cartan_in_coroots_.assign(r, std::vector<Scalar>(r));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i) cartan_in_coroots_[j][i] = k_inv[i][j];

  root_weight_.assign(d, zero_weight());
  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t i = 0; i < r; ++i) {
      Scalar acc;
      for (std::size_t m = 0; m < r; ++m) acc += root_on_cartan_[b][m] * coroot_in_cartan_[i][m];
      root_weight_[b].coords[i] = acc;
    }
  }

  // Cartan matrix A_ij = <alpha_j, alpha_i^vee>; alpha_j = sum_i A_ij omega_i.
  Dense a(r, std::vector<Scalar>(r)), galpha(r, std::vector<Scalar>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      a[i][j] = root_weight_[simple_e_[j]].coords[i];
      galpha[i][j] = pair(simple_e_[i], mat_vec(bh_inv, root_on_cartan_[simple_e_[j]]));
    }
  const Dense a_inv = inverse(a);
  fundamental_gram_ = mat_mul(mat_mul(transpose(a_inv), galpha), a_inv);

  auto coroot_coords = [&](const std::vector<Scalar>& t_cartan) {
    std::vector<long> out(r);
    const auto c = mat_vec(k_inv, t_cartan);
    for (std::size_t i = 0; i < r; ++i) out[i] = to_long_exact(c[i], "coroot coordinate");
    return out;
  };
  auto coroot_of = [&](std::size_t b) {
    auto t = mat_vec(bh_inv, root_on_cartan_[b]);
    const Scalar sq = pair(b, t);
    for (auto& v : t) v *= Scalar(2) / sq;
    return t;
  };
  theta_coroot_coords_ = coroot_coords(coroot_of(theta_e_));
  two_rho_coroot_coords_.assign(r, 0);
  for (auto b : positive_) {
    const auto c = coroot_coords(coroot_of(b));
    for (std::size_t i = 0; i < r; ++i) two_rho_coroot_coords_[i] += c[i];
  }

  const Dense f_inv = inverse(form_);
  dual_.assign(d, GVec(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) dual_[j][i] = f_inv[i][j];

  dual_coxeter_ = casimir_eigenvalue(theta()) / Scalar(2);
  const long comark_sum = 1 + std::accumulate(theta_coroot_coords_.begin(), theta_coroot_coords_.end(), 0L);
  if (!dual_coxeter_.is_integer() || dual_coxeter_.sign() <= 0 || dual_coxeter_ != Scalar(comark_sum)) {
    throw Error(ErrorCode::kNonIntegerDualCoxeter,
                "1/2 c_theta = " + dual_coxeter_.to_string() + " but the comark sum gives " + std::to_string(comark_sum) +
                    " (is the form normalized by (theta|theta) = 2?)");
  }
}

void SimpleLieAlgebra::derive_anti_involution() {
  const std::size_t d = dim();
  omega_.assign(d, GVec{});
  for (auto h : cartan_) omega_[h] = unit(h);
  for (std::size_t i = 0; i < simple_e_.size(); ++i) {
    const std::size_t e = simple_e_[i], f = simple_f_[i];
    const Scalar ef = form_[e][f];
    if (ef.is_zero()) throw Error(ErrorCode::kFormNotInvariant, "(e_i|f_i) = 0");
    omega_[e] = GVec(d);
    omega_[e][f] = Scalar(1) / ef;
    omega_[f] = GVec(d);
    omega_[f][e] = ef;
  }
  std::vector<std::size_t> by_height = positive_;
  std::sort(by_height.begin(), by_height.end(),
            [&](std::size_t a, std::size_t b) { return root_height_[a] < root_height_[b]; });
  for (auto a : by_height) {
    if (!omega_[a].empty()) continue;
    bool done = false;
    for (std::size_t i = 0; i < simple_e_.size() && !done; ++i) {
      for (auto b : positive_) {
        if (omega_[b].empty()) continue;
        const GVec br = bracket(unit(simple_e_[i]), unit(b));
        if (br[a].is_zero()) continue;
        // e_a = [e_i, e_b] / c, so omega(e_a) = [omega(e_b), omega(e_i)] / c.
        GVec w = bracket(omega_[b], omega_[simple_e_[i]]);
        for (auto& v : w) v /= br[a];
        omega_[a] = w;
        const std::size_t o = opposite_[a];
        omega_[o] = GVec(d);
        omega_[o][a] = Scalar(1) / w[o];
        done = true;
        break;
      }
    }
    if (!done) throw Error(ErrorCode::kInvalidArgument, "could not build the Chevalley anti-involution");
  }
  auto apply = [&](const GVec& x) {
    GVec out(d);
    for (std::size_t i = 0; i < d; ++i)
      if (!x[i].is_zero())
        for (std::size_t j = 0; j < d; ++j) out[j] += x[i] * omega_[i][j];
    return out;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (apply(bracket(unit(i), unit(j))) != bracket(omega_[j], omega_[i])) {
        throw Error(ErrorCode::kInvalidArgument, "anti-involution check failed");
      }
}

// ---------------------------------------------------------------- weights

Scalar SimpleLieAlgebra::theta_coroot_value(const GWeight& lambda) const {
  Scalar acc;
  for (std::size_t i = 0; i < rank(); ++i) acc += lambda.coords[i] * Scalar(theta_coroot_coords_[i]);
  return acc;
}

Scalar SimpleLieAlgebra::two_rho_coroot_value(const GWeight& lambda) const {
  Scalar acc;
  for (std::size_t i = 0; i < rank(); ++i) acc += lambda.coords[i] * Scalar(two_rho_coroot_coords_[i]);
  return acc;
}

Scalar SimpleLieAlgebra::cartan_value(const GWeight& lambda, std::size_t b) const {
  auto it = std::find(cartan_.begin(), cartan_.end(), b);
  if (it == cartan_.end()) throw Error(ErrorCode::kInvalidArgument, names_[b] + " is not a Cartan element");
  const auto& c = cartan_in_coroots_[static_cast<std::size_t>(it - cartan_.begin())];
  Scalar acc;
  for (std::size_t i = 0; i < rank(); ++i) acc += c[i] * lambda.coords[i];
  return acc;
}

Scalar SimpleLieAlgebra::weight_form(const GWeight& lambda, const GWeight& mu) const {
  Scalar acc;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) acc += lambda.coords[i] * fundamental_gram_[i][j] * mu.coords[j];
  return acc;
}

Scalar SimpleLieAlgebra::casimir_eigenvalue(const GWeight& lambda) const {
  return weight_form(lambda + Scalar(2) * rho(), lambda);
}

bool SimpleLieAlgebra::is_dominant_integral(const GWeight& lambda) const {
  return std::all_of(lambda.coords.begin(), lambda.coords.end(),
                     [](const Scalar& s) { return s.is_integer() && s.sign() >= 0; });
}

bool SimpleLieAlgebra::is_dominant(const GWeight& lambda, const Scalar& level) const {
  if (!is_dominant_integral(lambda)) return false;
  if (!level.is_integer() || level.sign() < 0) return false;
  return level >= theta_coroot_value(lambda);
}

// ---------------------------------------------------------------- finite irreps

namespace {

// Monomial in lowering root vectors: sorted (basis index, exponent) pairs.
using FinMono = std::vector<std::pair<std::size_t, int>>;
using FinVec = std::map<FinMono, Scalar>;

void add_to(FinVec& acc, const FinMono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

class GVermaActor {
 public:
  GVermaActor(const SimpleLieAlgebra& alg, GWeight mu) : alg_(alg), mu_(std::move(mu)) {}

  GWeight weight_of(const FinMono& m) const {
    GWeight w = mu_;
    for (const auto& [b, e] : m) w = w + Scalar(e) * alg_.root_weight(b);
    return w;
  }

  const FinVec& act(std::size_t x, const FinMono& m) {
    auto key = std::make_pair(x, m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    FinVec out = compute(x, m);
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  FinVec act(std::size_t x, const FinVec& v) {
    FinVec out;
    for (const auto& [m, c] : v)
      for (const auto& [m2, c2] : act(x, m)) add_to(out, m2, c * c2);
    return out;
  }

 private:
  FinVec compute(std::size_t x, const FinMono& m) {
    FinVec out;
    if (alg_.is_cartan(x)) {
      add_to(out, m, alg_.cartan_value(weight_of(m), x));
      return out;
    }
    if (m.empty()) {
      if (alg_.is_negative(x)) add_to(out, FinMono{{x, 1}}, Scalar(1));
      return out;
    }
    const std::size_t f = m.front().first;
    if (alg_.is_negative(x) && x <= f) {
      FinMono r = m;
      if (x == f) {
        ++r.front().second;
      } else {
        r.insert(r.begin(), {x, 1});
      }
      add_to(out, r, Scalar(1));
      return out;
    }
    FinMono rest = m;
    if (--rest.front().second == 0) rest.erase(rest.begin());
    // x f rest = f (x rest) + [x, f] rest
    FinVec xr = act(x, rest);
    for (const auto& [m2, c2] : act(f, xr)) add_to(out, m2, c2);
    for (const auto& [k, c] : alg_.bracket(x, f)) {
      FinVec tmp = act(k, rest);
      for (const auto& [m2, c2] : tmp) add_to(out, m2, c * c2);
    }
    return out;
  }

  const SimpleLieAlgebra& alg_;
  GWeight mu_;
  std::map<std::pair<std::size_t, FinMono>, FinVec> memo_;
};

std::string fin_label(const SimpleLieAlgebra& alg, const FinMono& m) {
  if (m.empty()) return "v";
  std::string s;
  for (const auto& [b, e] : m) {
    s += alg.basis_name(b);
    if (e > 1) s += "^" + std::to_string(e);
    s += " ";
  }
  return s + "v";
}

}  // namespace

FiniteModule::Vec FiniteModule::apply(std::size_t x, const Vec& v) const {
  Vec out(dim());
  const auto& m = action_.at(x);
  for (std::size_t j = 0; j < dim(); ++j) {
    if (v[j].is_zero()) continue;
    for (std::size_t i = 0; i < dim(); ++i)
      if (!m[i][j].is_zero()) out[i] += m[i][j] * v[j];
  }
  return out;
}

FiniteModule::Vec FiniteModule::apply(const GVec& x, const Vec& v) const {
  Vec out(dim());
  for (std::size_t b = 0; b < x.size(); ++b) {
    if (x[b].is_zero()) continue;
    const Vec t = apply(b, v);
    for (std::size_t i = 0; i < dim(); ++i) out[i] += x[b] * t[i];
  }
  return out;
}

FiniteModule::Vec FiniteModule::unit(std::size_t i) const {
  Vec v(dim());
  v.at(i) = Scalar(1);
  return v;
}

FiniteModule finite_irrep(const SimpleLieAlgebra& alg, const GWeight& mu) {
  if (mu.rank() != alg.rank() || !alg.is_dominant_integral(mu)) {
    throw Error(ErrorCode::kNotDominantIntegral, "highest weight " + mu.to_string() + " is not dominant integral");
  }
  const long max_height = *alg.two_rho_coroot_value(mu).to_long();

  // Enumerate lowering monomials by total height, grouped by weight.
  const auto& neg = alg.negative_roots();
  std::map<GWeight, std::vector<FinMono>> spaces;
  std::function<void(std::size_t, long, FinMono&)> rec = [&](std::size_t start, long height, FinMono& cur) {
    GWeight w = mu;
    for (const auto& [b, e] : cur) w = w + Scalar(e) * alg.root_weight(b);
    spaces[w].push_back(cur);
    for (std::size_t i = start; i < neg.size(); ++i) {
      const long h = -alg.height(neg[i]);
      if (height + h > max_height) continue;
      if (!cur.empty() && cur.back().first == neg[i]) {
        ++cur.back().second;
        rec(i, height + h, cur);
        --cur.back().second;
      } else {
        cur.emplace_back(neg[i], 1);
        rec(i, height + h, cur);
        cur.pop_back();
      }
    }
  };
  FinMono start;
  rec(0, 0, start);

  GVermaActor actor(alg, mu);
  struct Space {
    std::vector<FinMono> monos;
    std::map<FinMono, std::size_t> index;
    std::vector<SparseVector> proj;  // rref of the Gram matrix
    std::vector<std::size_t> basis_offset;
  };
  std::map<GWeight, Space> info;
  FiniteModule out;
  out.mu_ = mu;

  // Order weight spaces from the top down so v_mu gets index 0.
  std::vector<std::pair<long, GWeight>> order;
  for (const auto& [w, monos] : spaces) {
    long h = 0;
    for (const auto& [b, e] : monos.front()) h += -alg.height(b) * e;
    order.emplace_back(h, w);
  }
  std::sort(order.begin(), order.end());

  for (const auto& [h, w] : order) {
    Space sp;
    sp.monos = spaces[w];
    std::sort(sp.monos.begin(), sp.monos.end());
    for (std::size_t i = 0; i < sp.monos.size(); ++i) sp.index[sp.monos[i]] = i;
    // Gram matrix <P u, Q u> = coefficient of u in omega(P) Q u.
    std::vector<SparseVector> gram;
    for (const auto& p : sp.monos) {
      std::vector<SparseVector::Entry> row;
      for (std::size_t q = 0; q < sp.monos.size(); ++q) {
        FinVec v{{sp.monos[q], Scalar(1)}};
        for (const auto& [b, e] : p) {
          for (int t = 0; t < e; ++t) {
            FinVec nv;
            const GVec& om = alg.chevalley_anti(b);
            for (std::size_t k = 0; k < om.size(); ++k) {
              if (om[k].is_zero()) continue;
              for (const auto& [m2, c2] : actor.act(k, v)) add_to(nv, m2, om[k] * c2);
            }
            v = std::move(nv);
          }
        }
        auto it = v.find(FinMono{});
        if (it != v.end()) row.emplace_back(q, it->second);
      }
      gram.emplace_back(std::move(row));
    }
    sp.proj = rref(gram);
    for (const auto& row : sp.proj) {
      sp.basis_offset.push_back(out.weights_.size());
      out.weights_.push_back(w);
      out.labels_.push_back(fin_label(alg, sp.monos[row.leading_index()]));
    }
    info.emplace(w, std::move(sp));
  }

  const std::size_t n = out.weights_.size();
  out.action_.assign(alg.dim(), std::vector<FiniteModule::Vec>(n, FiniteModule::Vec(n)));
  for (const auto& [w, sp] : info) {
    for (std::size_t r = 0; r < sp.proj.size(); ++r) {
      const std::size_t col = sp.basis_offset[r];
      const FinMono& m = sp.monos[sp.proj[r].leading_index()];
      for (std::size_t x = 0; x < alg.dim(); ++x) {
        const FinVec& img = actor.act(x, m);
        if (img.empty()) continue;
        const GWeight tw = w + alg.root_weight(x);
        auto it = info.find(tw);
        if (it == info.end()) continue;
        const Space& tsp = it->second;
        std::vector<SparseVector::Entry> entries;
        for (const auto& [m2, c2] : img) {
          auto jt = tsp.index.find(m2);
          if (jt == tsp.index.end()) continue;
          entries.emplace_back(jt->second, c2);
        }
        const SparseVector v(std::move(entries));
        for (std::size_t rr = 0; rr < tsp.proj.size(); ++rr) {
          const Scalar c = tsp.proj[rr].dot(v);
          if (!c.is_zero()) out.action_[x][tsp.basis_offset[rr]][col] = c;
        }
      }
    }
  }

  // Nilpotency index over all root vectors.
  std::size_t nil = 1;
  for (std::size_t x = 0; x < alg.dim(); ++x) {
    if (alg.is_cartan(x)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      FiniteModule::Vec v = out.unit(j);
      std::size_t steps = 0;
      while (std::any_of(v.begin(), v.end(), [](const Scalar& s) { return !s.is_zero(); })) {
        v = out.apply(x, v);
        ++steps;
      }
      nil = std::max(nil, steps);
    }
  }
  out.nilpotency_ = nil;
  return out;
}

}  // namespace avk
