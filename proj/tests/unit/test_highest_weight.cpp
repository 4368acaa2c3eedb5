#include <functional>
#include <set>
#include <random>

#include "avk/error.hpp"
#include "avk/highest_weight.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace avk;
using testing::params;
using testing::sl2_pbw;

namespace {

WeightKey wk(long depth, long drop) { return WeightKey{depth, {drop}}; }

std::set<std::string> basis_strings(const HWModule& m, const WeightKey& w) {
  std::set<std::string> out;
  for (const auto& b : m.basis(w)) out.insert(m.pbw().to_string(b));
  return out;
}

// Independent subspace equality test through ranks.
bool same_span(const std::vector<SparseVector>& a, const std::vector<SparseVector>& b) {
  Subspace sa, sb, sab;
  for (const auto& v : a) {
    sa.add(v);
    sab.add(v);
  }
  for (const auto& v : b) {
    sb.add(v);
    sab.add(v);
  }
  return sa.dim() == sb.dim() && sa.dim() == sab.dim();
}

}  // namespace

TEST_CASE("verma weight spaces") {
  const auto m = HWModule::build_verma(sl2_pbw(), params(Scalar(1, 3), Scalar(1), Scalar(1), Scalar(1)), 1, 1);
  CHECK(basis_strings(m, wk(1, 0)) == std::set<std::string>{"h(-1)", "d(-1)", "e(-1) f"});
  CHECK(basis_strings(m, wk(0, 0)) == std::set<std::string>{"1"});
  CHECK(basis_strings(m, wk(0, 1)) == std::set<std::string>{"f"});
  const auto z = HWModule::build_verma(sl2_pbw(), params(0, 0, 1, 2), 0, 0);
  CHECK(z.total_dim() == 1);
  CHECK_THROWS_AS(HWModule::build_verma(sl2_pbw(), params(0, 0, 1, 2), 30, 30, 1000), Error);
}

TEST_CASE("verma dimensions match brute-force counting") {
  // Count sl2 monomials directly: colored partitions with three loop colors and d, times powers of f.
  const auto m = HWModule::build_verma(sl2_pbw(), params(0, 0, 1, 2), 3, 2);
  std::map<WeightKey, std::size_t> count;
  // Generators of degree -j: e(-j) raises the drop by -1, h(-j) and d(-j) keep it, f(-j) adds 1; f adds 1.
  std::function<void(int, long, long, long)> rec = [&](int gen, long depth, long drop, long height) {
    if (gen == 4 * 3 + 1) {
      if (depth <= 3 && height <= 2 + 3 * 2) ++count[wk(depth, drop)];
      return;
    }
    long j = gen / 4 + 1, kind = gen % 4;
    long dd = j, ddrop = 0;
    if (gen == 12) {
      dd = 0;
      ddrop = 1;
    } else if (kind == 0) {
      ddrop = -1;
    } else if (kind == 3) {
      ddrop = 1;
    }
    for (long e = 0;; ++e) {
      const long nd = depth + e * dd, ndr = drop + e * ddrop, nh = height + e * (ddrop + 2 * dd);
      if (nd > 3 || nh > 8) break;
      rec(gen + 1, nd, ndr, nh);
    }
  };
  rec(0, 0, 0, 0);
  std::size_t checked = 0;
  for (const auto& [w, n] : count) {
    CHECK(m.verma_dim(w) == n);
    ++checked;
  }
  CHECK(checked == m.weights().size());
}

TEST_CASE("action basics") {
  const auto m = HWModule::build_verma(sl2_pbw(), params(2, Scalar(3, 2), 2, Scalar(5, 2)), 2, 2);
  const auto& a = m.algebra();
  const ModVec u = ModVec::one();
  CHECK(m.act(Gen::vir(0), u) == Scalar(3, 2) * u);
  CHECK(m.act(a.loop("e", 1), ModVec(m.pbw().parse_monomial("d(-1)"))).is_zero());
  const ModVec v(m.pbw().parse_monomial("h(-1) f"));
  CHECK(m.act(Gen::central_k(), v) == Scalar(2) * v);
  CHECK(m.act(a.loop("h", 0), u) == Scalar(2) * u);
  CHECK(m.act(a.loop("h", 0), ModVec(m.pbw().parse_monomial("f"))).is_zero());
  CHECK_THROWS_AS(m.act(Gen::vir(-3), u), Error);
}

TEST_CASE("representation property on sampled pairs") {
  const auto m = HWModule::build_verma(sl2_pbw(), params(Scalar(1, 3), Scalar(2, 5), Scalar(3, 7), Scalar(-1, 2)), 2, 2);
  std::vector<Gen> gens;
  for (long j = -2; j <= 2; ++j) {
    for (std::size_t i = 0; i < 3; ++i) gens.push_back(Gen::loop(i, j));
    gens.push_back(Gen::vir(j));
  }
  const auto& a = m.algebra();
  std::mt19937 rng(29);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::vector<PBWMonomial> vs;
  for (const auto& w : m.weights())
    for (const auto& b : m.verma_basis(w)) vs.push_back(b);
  std::uniform_int_distribution<std::size_t> pickv(0, vs.size() - 1);
  for (int t = 0; t < 300; ++t) {
    const Gen g = gens[pick(rng)], h = gens[pick(rng)];
    const ModVec v(vs[pickv(rng)]);
    ModVec lhs;
    const AffVirElement br = a.bracket(g, h);
    for (const auto& [x, c] : br.terms()) lhs += c * m.act_exact(x, v);
    CHECK(lhs == m.act_exact(g, m.act_exact(h, v)) - m.act_exact(h, m.act_exact(g, v)));
  }
}

TEST_CASE("contravariant form symmetry") {
  const auto m = HWModule::build_verma(sl2_pbw(), params(Scalar(1, 3), Scalar(2, 5), Scalar(3, 7), Scalar(-1, 2)), 2, 1);
  // <x P u, Q u> = <P u, omega(x) Q u> with <A u, B u> = u-coefficient of omega(A) B u.
  auto form = [&](const ModVec& p, const ModVec& q) {
    Scalar acc;
    for (const auto& [pm, pc] : p.terms()) {
      const auto w = m.weight_of(pm);
      const auto gram = m.shapovalov_gram(w);
      for (const auto& [qm, qc] : q.terms()) {
        if (m.weight_of(qm) != w) continue;
        acc += pc * qc * gram[m.monomial_index(pm)].get(m.monomial_index(qm));
      }
    }
    return acc;
  };
  const auto& a = m.algebra();
  std::vector<Gen> gens{a.loop("e", 0), a.loop("f", 0), a.loop("e", -1), a.loop("h", 1), Gen::vir(-1), Gen::vir(1)};
  for (const auto& x : gens)
    for (const auto& w1 : m.weights())
      for (const auto& w2 : m.weights()) {
        if (w1.depth > 1 || w2.depth > 1) continue;
        if (m.shifted(w1, x) != w2) continue;
        for (const auto& p : m.verma_basis(w1))
          for (const auto& q : m.verma_basis(w2)) {
            ModVec oq;
            const AffVirElement ox = m.omega(x);
            for (const auto& [y, c] : ox.terms()) oq += c * m.act_exact(y, ModVec(q));
            CHECK(form(m.act_exact(x, ModVec(p)), ModVec(q)) == form(ModVec(p), oq));
          }
      }
}

TEST_CASE("singular vectors") {
  const auto pbw = sl2_pbw();
  const auto vir = HWModule::build_virasoro_verma(pbw, 0, 1, 3);
  auto sv = vir.singular_vectors(wk(1, 0));
  REQUIRE(sv.size() == 1);
  CHECK(vir.to_string(sv[0]) == "d(-1)");

  const auto m = HWModule::build_verma(pbw, params(0, 0, 1, 2), 2, 2);
  auto f = m.singular_vectors(wk(0, 1));
  REQUIRE(f.size() == 1);
  CHECK(m.to_string(f[0]) == "f");

  const auto generic =
      HWModule::build_verma(pbw, params(Scalar(1, 3), Scalar(2, 7), Scalar(5, 11), Scalar(3, 13)), 3, 1);
  for (long d = 0; d <= 3; ++d) CHECK(generic.singular_vectors(d, 1).empty());
  CHECK_THROWS_AS(generic.singular_vectors(4, 0), Error);
}

TEST_CASE("dominant exponents give singular vectors exactly at the predicted power") {
  const auto pbw = sl2_pbw();
  struct Case {
    long lam, k;
  };
  for (const auto& cs : {Case{0, 1}, Case{2, 2}, Case{1, 3}}) {
    const auto m = HWModule::build_verma(pbw, params(cs.lam, Scalar(1, 2), cs.k, 1), 1, cs.lam + 1);
    const auto& a = m.algebra();
    auto singular = [&](const Gen& g, int e) {
      ModVec v = ModVec::one();
      for (int i = 0; i < e; ++i) v = m.act_exact(g, v);
      for (const auto& r : m.raising_set())
        if (!m.act_exact(r, v).is_zero()) return false;
      return true;
    };
    const Gen f = a.loop("f", 0), f0 = a.loop("e", -1);
    CHECK(singular(f, cs.lam + 1));
    if (cs.lam > 0) CHECK_FALSE(singular(f, cs.lam));
    CHECK(singular(f0, cs.k - cs.lam + 1));
    if (cs.k - cs.lam > 0) CHECK_FALSE(singular(f0, cs.k - cs.lam));
  }
}

TEST_CASE("irreducible quotient of L(0,0,1,2)") {
  const auto pbw = sl2_pbw();
  const auto m = HWModule::build_verma(pbw, params(0, 0, 1, 2), 2, 2);
  const auto q = m.irreducible_quotient();
  const auto& a = q.algebra();
  const ModVec u = ModVec::one();
  CHECK(q.act(a.loop("f", 0), u).is_zero());
  CHECK(q.act(a.loop("e", -1), q.act(a.loop("e", -1), u)).is_zero());
  CHECK_FALSE(q.act(a.loop("e", -1), u).is_zero());
  CHECK(q.act(Gen::vir(-1), u).is_zero());
  CHECK(q.dim(wk(0, 0)) == 1);
  CHECK(q.dim(wk(0, 1)) == 0);
}

TEST_CASE("radical of the contravariant form equals the recursive maximal submodule") {
  const auto pbw = sl2_pbw();
  for (const auto& p : {params(0, 0, 1, 2), params(2, Scalar(3, 2), 2, Scalar(5, 2)), params(1, 0, 1, Scalar(1, 2))}) {
    const auto m = HWModule::build_verma(pbw, p, 2, 1);
    const auto q = m.irreducible_quotient();
    for (const auto& w : m.weights()) {
      const auto rad = m.shapovalov_radical(w);
      SparseMatrix proj(0, m.verma_dim(w));
      for (const auto& r : q.projection(w)) proj.append_row(r);
      CHECK(same_span(rad, rank_and_kernel(proj).kernel));
    }
  }
}

TEST_CASE("depth-zero slice of a dominant quotient is L(lambda)") {
  const auto pbw = sl2_pbw();
  for (long lam = 0; lam <= 3; ++lam) {
    const auto q = HWModule::build_verma(pbw, params(lam, 0, 3, 1), 1, 4).irreducible_quotient();
    std::size_t dim0 = 0;
    for (const auto& w : q.weights())
      if (w.depth == 0) dim0 += q.dim(w);
    CHECK(dim0 == static_cast<std::size_t>(lam + 1));
  }
}

TEST_CASE("irreducible Verma parameters give a trivial radical") {
  const auto m = HWModule::build_verma(sl2_pbw(), params(Scalar(1, 3), Scalar(2, 7), Scalar(5, 11), Scalar(3, 13)), 2, 1);
  const auto q = m.irreducible_quotient();
  for (const auto& w : m.weights()) CHECK(q.dim(w) == m.verma_dim(w));
}

TEST_CASE("module dumps round-trip") {
  const auto pbw = sl2_pbw();
  const auto m = HWModule::build_verma(pbw, params(0, 0, 1, 2), 2, 1);
  const auto text = dump_module_json(m);
  const auto back = load_module_json(text, pbw);
  CHECK(dump_module_json(back) == text);
  const auto q = m.irreducible_quotient();
  const auto qtext = dump_module_json(q);
  CHECK(dump_module_json(load_module_json(qtext, pbw)) == qtext);
  CHECK_THROWS_AS(load_module_json("{\"algebra\": \"sl2\"}", pbw), Error);
}
