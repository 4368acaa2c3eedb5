#include "avk/error.hpp"
#include "avk/irreducibility.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace avk;
using testing::params;
using testing::sl2_pbw;
using testing::wt;

namespace {

constexpr std::size_t kF = 0, kE = 2;

TensorParams vacuum(long m, const Scalar& a, const Scalar& b) { return {params(0, 0, 1, 2), wt(m), a, b}; }
TensorParams level_two(const Scalar& a, const Scalar& b) {
  return {params(2, Scalar(3, 2), 2, Scalar(5, 2)), wt(3), a, b};
}
TensorParams generic() {
  return {params(Scalar(1, 3), Scalar(2, 7), Scalar(5, 11), Scalar(3, 13)), wt(1), Scalar(1, 3), Scalar(2, 7)};
}

UEnvElement el(const std::string& s) { return UEnvElement(sl2_pbw()->parse_monomial(s)); }

std::vector<NuPoly> constant_column(const PhiContext& ctx, std::size_t top, const FiniteModule::Vec& v) {
  std::vector<NuPoly> out(ctx.rows());
  for (std::size_t j = 0; j < v.size(); ++j) out[ctx.row(top, j)] = v[j];
  return out;
}

}  // namespace

TEST_CASE("psi") {
  const auto pbw = sl2_pbw();
  const Scalar a(1, 3), b(2, 5);
  const NuPoly nu = NuPoly::nu();
  CHECK(psi(PBWMonomial{}, a, b) == NuPoly(1));
  CHECK(psi(pbw->parse_monomial("d(-1)"), a, b) == NuPoly(b - a - 1) - nu);
  const auto y = pbw->parse_monomial("d(-2) d(-1)");
  CHECK(psi(y, a, b) == (NuPoly(b - a - 1) - nu) * (NuPoly(Scalar(2) * b - a - 3) - nu));
  CHECK(psi(y, a, b, PsiConvention::kLeft) == (NuPoly(Scalar(2) * b - a - 2) - nu) * (NuPoly(b - a - 3) - nu));
  for (long n = -5; n <= 5; ++n) CHECK(psi_at(y, a, b, n) == psi(y, a, b).eval(Scalar(n)));
  CHECK_THROWS_AS(psi(pbw->parse_monomial("e(-1)"), a, b), Error);
}

TEST_CASE("psi is multiplicative along the factor sequence") {
  const auto pbw = sl2_pbw();
  const Scalar a(2, 9), b(-3, 4);
  // d(-3) d(-1) with k_1 = 1, k_2 = 3: partial sums 1, 4.
  const auto y = pbw->parse_monomial("d(-3) d(-1)");
  for (long n = -4; n <= 4; ++n) {
    const Scalar expect = (b - a - n - 1) * (Scalar(3) * b - a - n - 4);
    CHECK(psi_at(y, a, b, n) == expect);
  }
}

TEST_CASE("circ") {
  const auto& lie = sl2_pbw()->algebra().g();
  const FiniteModule m = finite_irrep(lie, wt(2));
  const auto v = m.unit(1);
  CHECK(circ(m, {}, v) == v);
  auto minus_ev = m.apply(kE, v);
  for (auto& s : minus_ev) s = -s;
  CHECK(circ(m, {kE}, v) == minus_ev);
  CHECK(circ(m, {kE, kF}, v) == m.apply(kF, m.apply(kE, v)));
}

TEST_CASE("phi on simple elements") {
  const auto pbw = sl2_pbw();
  const PhiContext ctx(pbw, vacuum(1, Scalar(1, 3), Scalar(1, 2)));
  REQUIRE(ctx.top_dim() == 1);
  REQUIRE(ctx.rows() == 2);
  const auto v = ctx.mu().unit(0);
  CHECK(ctx.phi(UEnvElement::one(), v) == constant_column(ctx, 0, v));
  const auto d1 = ctx.phi(el("d(-1)"), v);
  CHECK(d1[0] == NuPoly::linear(Scalar(1, 2) - Scalar(1, 3) - 1, -1));
  CHECK(d1[1].is_zero());
  auto minus_ev = ctx.mu().apply(kE, ctx.mu().unit(1));
  for (auto& s : minus_ev) s = -s;
  CHECK(ctx.phi(el("e(-2)"), ctx.mu().unit(1)) == constant_column(ctx, 0, minus_ev));
  CHECK(ctx.phi(el("f"), v) == std::vector<NuPoly>(2));
  const auto at = ctx.phi_at(el("d(-1)"), v, 3);
  CHECK(at[0] == Scalar(1, 2) - Scalar(1, 3) - 4);
  CHECK_THROWS_AS(ctx.phi(el("e(1)"), v), Error);
}

TEST_CASE("phi requires a finite top space") {
  const auto pbw = sl2_pbw();
  const PhiContext ctx(pbw, generic());
  try {
    ctx.phi(UEnvElement::one(), ctx.mu().unit(0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotDominantContext);
  }
  CHECK_THROWS_AS(PhiContext(pbw, vacuum(0, 0, 1)), Error);
}

TEST_CASE("image rank for the level one vacuum") {
  const auto pbw = sl2_pbw();
  for (long m = 1; m <= 3; ++m) {
    const PhiContext ctx(pbw, vacuum(m, 0, Scalar(1, 2)));
    const auto gens = ann_generators(pbw, ctx.params().hw);
    const auto img = phi_image_rank(ctx, gens);
    CHECK(img.generic_rank == static_cast<std::size_t>(m + 1));
    CHECK(img.exceptional.empty());
    CHECK(img.surjective_certificate);
    for (long n = -10; n <= 10; ++n) CHECK(rank_at(img, n) == static_cast<std::size_t>(m + 1));
  }
  const PhiContext ctx(pbw, vacuum(1, 0, Scalar(1, 2)));
  const auto empty = phi_image_rank(ctx, AnnGenerators{});
  CHECK(empty.generic_rank == 0);
}

TEST_CASE("integral b - a gives an exceptional index") {
  const auto pbw = sl2_pbw();
  const PhiContext ctx(pbw, vacuum(1, 0, 1));
  const auto img = phi_image_rank(ctx, ann_generators(pbw, ctx.params().hw));
  CHECK(img.generic_rank == 2);
  REQUIRE(!img.exceptional.empty());
  CHECK(std::find(img.exceptional.begin(), img.exceptional.end(), 0) != img.exceptional.end());
  for (long n : img.exceptional) CHECK(rank_at(img, n) < 2);
  CHECK(rank_at(img, 1) == 2);
  const auto v = is_irreducible(ctx);
  CHECK(!v.irreducible);
  CHECK(v.generic_surjective);
}

TEST_CASE("column order is reproducible") {
  const auto pbw = sl2_pbw();
  const PhiContext ctx(pbw, vacuum(1, 0, 1));
  const auto gens = ann_generators(pbw, ctx.params().hw);
  const auto a = phi_image_rank(ctx, gens);
  const auto b = phi_image_rank(ctx, gens);
  REQUIRE(a.columns.size() == b.columns.size());
  for (std::size_t i = 1; i < a.columns.size(); ++i) {
    const auto& p = a.columns[i - 1];
    const auto& q = a.columns[i];
    CHECK(std::tie(p.generator, p.multiplier, p.mu_index) < std::tie(q.generator, q.multiplier, q.mu_index));
  }
  REQUIRE(a.matrix.cols() == b.matrix.cols());
  for (std::size_t r = 0; r < a.matrix.rows(); ++r)
    for (std::size_t c = 0; c < a.matrix.cols(); ++c) CHECK(a.matrix.at(r, c) == b.matrix.at(r, c));
}

TEST_CASE("verdicts") {
  const auto pbw = sl2_pbw();
  const auto v45 = is_irreducible(PhiContext(pbw, vacuum(1, 0, Scalar(1, 2))));
  CHECK(v45.irreducible);
  CHECK(v45.exceptional_n.empty());
  CHECK(v45.method == IrredVerdict::Method::kSymbolicRank);
  CHECK(v45.truncation_certified);
  for (const auto& [a, b] : std::vector<std::pair<Scalar, Scalar>>{{0, 0}, {Scalar(1, 3), Scalar(2, 7)}, {Scalar(1, 2), 1}}) {
    const auto v = is_irreducible(PhiContext(pbw, level_two(a, b)));
    CHECK(v.irreducible);
    CHECK(v.rows == 12);
  }
  const auto g = is_irreducible(PhiContext(pbw, generic()));
  CHECK(!g.irreducible);
  CHECK(g.generators.empty());
  CHECK(!g.truncation_certified);
}

TEST_CASE("verdict json is deterministic") {
  const auto pbw = sl2_pbw();
  const auto a = is_irreducible(PhiContext(pbw, vacuum(1, 0, Scalar(1, 2))));
  const auto b = is_irreducible(PhiContext(pbw, vacuum(1, 0, Scalar(1, 2))));
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_json().find("\"method\": \"symbolicRank\"") != std::string::npos);
  CHECK(a.to_json().find("seconds") == std::string::npos);
  CHECK(a.to_json(true).find("seconds") != std::string::npos);
}

TEST_CASE("window method for a non-dominant level") {
  const auto pbw = sl2_pbw();
  IrredOptions opts;
  opts.window = 3;
  opts.top_charge = 2;
  opts.ann.path = AnnOptions::Path::kComputed;
  opts.ann.depth = 1;
  opts.ann.charge = 1;
  const PhiContext ctx(pbw, {params(0, 0, Scalar(-1, 2), 1), wt(1), Scalar(1, 3), Scalar(1, 2)}, opts);
  CHECK(!ctx.dominant());
  const auto v = is_irreducible(ctx);
  CHECK(v.method == IrredVerdict::Method::kWindow);
  REQUIRE(v.window_checked);
  CHECK(v.window_checked->first == -3);
  CHECK(!v.truncation_certified);
  CHECK(!v.warnings.empty());
}

TEST_CASE("bridging identity at level two") {
  // phi(C[f] e(-1) (x) L(3)) = C[f](u (x) e L(3)) inside L(2) (x) L(3).
  const auto pbw = sl2_pbw();
  const PhiContext ctx(pbw, level_two(Scalar(1, 3), Scalar(2, 7)));
  REQUIRE(ctx.rows() == 12);
  Subspace lhs, rhs;
  for (int j = 0; j <= 6; ++j) {
    UEnvElement fj = UEnvElement::one();
    for (int i = 0; i < j; ++i) fj = pbw->multiply(fj, el("f"));
    const UEnvElement p = pbw->multiply(fj, el("e(-1)"));
    for (std::size_t v = 0; v < 4; ++v) {
      const auto col = ctx.phi(p, ctx.mu().unit(v));
      std::vector<SparseVector::Entry> e;
      for (std::size_t r = 0; r < col.size(); ++r) {
        REQUIRE(col[r].is_constant());
        if (!col[r].is_zero()) e.emplace_back(r, col[r].coeff(0));
      }
      lhs.add(SparseVector(std::move(e)));
    }
  }
  const std::size_t dm = ctx.mu().dim();
  auto act_f = [&](const SparseVector& x) {
    std::vector<SparseVector::Entry> e;
    for (const auto& [i, c] : x.entries()) {
      const std::size_t ti = i / dm, vj = i % dm;
      const SparseVector ft = ctx.top_act(kF, SparseVector({{ti, Scalar(1)}}));
      for (const auto& [k, ck] : ft.entries())
        e.emplace_back(ctx.row(k, vj), c * ck);
      const auto fv = ctx.mu().apply(kF, ctx.mu().unit(vj));
      for (std::size_t r = 0; r < dm; ++r)
        if (!fv[r].is_zero()) e.emplace_back(ctx.row(ti, r), c * fv[r]);
    }
    return SparseVector(std::move(e));
  };
  for (std::size_t v = 0; v < 4; ++v) {
    const auto ev = ctx.mu().apply(kE, ctx.mu().unit(v));
    std::vector<SparseVector::Entry> e;
    for (std::size_t r = 0; r < dm; ++r)
      if (!ev[r].is_zero()) e.emplace_back(ctx.row(0, r), ev[r]);
    SparseVector x(std::move(e));
    for (int j = 0; j <= 6 && !x.empty(); ++j) {
      rhs.add(x);
      x = act_f(x);
    }
  }
  CHECK(lhs.dim() == 12);
  CHECK(rhs.dim() == 12);
  for (const auto& [p, r] : rhs.rows()) CHECK(lhs.contains(r));
}

TEST_CASE("submodule closure") {
  const auto pbw = sl2_pbw();
  const TensorModule t(pbw, vacuum(1, 0, Scalar(1, 2)), 2, 2, 4);
  const auto fam = submodule_closure(t, top_seeds(t));
  for (long n = -4; n <= 4; ++n) CHECK(fam.full(n));
  const auto zero = submodule_closure(t, {{0, SparseVector{}}});
  for (long n = -4; n <= 4; ++n) CHECK(zero.slice(n).dim() == 0);
  CHECK_THROWS_AS(submodule_closure(t, {{9, t.seed()}}), Error);
}

TEST_CASE("closure from high slices of a generic module is proper") {
  const auto pbw = sl2_pbw();
  const TensorModule t(pbw, generic(), 1, 2, 4);
  std::vector<std::pair<long, SparseVector>> seeds;
  for (long n = 1; n <= 4; ++n)
    for (std::size_t i = 0; i < t.slice_dim(); ++i) seeds.emplace_back(n, SparseVector({{i, Scalar(1)}}));
  const auto fam = submodule_closure(t, seeds);
  CHECK(fam.slice(0).dim() > 0);
  CHECK(!fam.full(0));
}

TEST_CASE("endomorphisms") {
  const auto pbw = sl2_pbw();
  const TensorModule t(pbw, vacuum(1, 0, Scalar(1, 2)), 2, 2, 4);
  const auto one = endo_dimension(t);
  CHECK(one.dimension == 1);
  CHECK(one.determined);
  ClosureOptions two;
  two.copies = 2;
  const auto four = endo_dimension(t, two);
  CHECK(four.dimension == 4);
  CHECK(four.lower_bound == 4);
}

TEST_CASE("isomorphism parameters") {
  const IsoParams p{wt(2), Scalar(3, 2), 2, Scalar(5, 2), wt(3), Scalar(2, 3), Scalar(1, 2)};
  CHECK(iso_params_check(p, p).isomorphic);
  IsoParams q = p;
  q.b = 1;
  const auto r = iso_params_check(p, q);
  CHECK(!r.isomorphic);
  CHECK(r.differs == "b");
  q = p;
  q.a = Scalar(5, 3);
  CHECK(iso_params_check(p, q).isomorphic);
  q.a = Scalar(-1, 3);
  CHECK(iso_params_check(p, q).isomorphic);
  q.mu = wt(1);
  CHECK(iso_params_check(p, q).differs == "mu");
}
