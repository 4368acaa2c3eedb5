#include "avk/error.hpp"
#include "avk/sugawara.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace avk;
using testing::params;
using testing::sl2_pbw;

namespace {

std::vector<ModVec> basis_upto(const HWModule& m, long depth) {
  std::vector<ModVec> out;
  for (const auto& w : m.weights())
    if (w.depth <= depth)
      for (const auto& b : m.basis(w)) out.emplace_back(b);
  return out;
}

}  // namespace

TEST_CASE("T on the highest weight vector") {
  for (long lam : {0, 1, 2, 3}) {
    const auto m = HWModule::build_verma(sl2_pbw(), params(lam, Scalar(3, 2), 2, Scalar(5, 2)), 2, 1);
    const SugawaraContext ctx(m);
    const ModVec u = ModVec::one();
    for (long n = 1; n <= 3; ++n) CHECK(ctx.apply_T(n, u).is_zero());
    const Scalar c_lam(lam * lam + 2 * lam, 2);
    CHECK(ctx.apply_T(0, u) == (-c_lam / Scalar(2)) * u);
    CHECK(ctx.apply_D(0, u) == ctx.l_prime() * u);
  }
}

TEST_CASE("coset constants") {
  const auto m45 = HWModule::build_verma(sl2_pbw(), params(0, 0, 1, 2), 1, 1);
  const SugawaraContext c45(m45);
  CHECK(c45.l_prime() == Scalar(0));
  CHECK(c45.c_prime() == Scalar(1));
  const auto m46 = HWModule::build_verma(sl2_pbw(), params(2, Scalar(3, 2), 2, Scalar(5, 2)), 1, 1);
  const SugawaraContext c46(m46);
  CHECK(c46.l_prime() == Scalar(2));
  CHECK(c46.c_prime() == Scalar(1));
  const auto bad = HWModule::build_verma(sl2_pbw(), params(0, 0, -2, 1), 1, 1);
  try {
    SugawaraContext ctx(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLevelIsMinusDualCoxeter);
  }
}

TEST_CASE("D_{-1} u in M(0,0,1,2)") {
  const auto pbw = sl2_pbw();
  const auto m = HWModule::build_verma(pbw, params(0, 0, 1, 2), 2, 2);
  const SugawaraContext ctx(m);
  const ModVec u = ModVec::one();
  const ModVec d = ctx.apply_D(-1, u);
  CHECK(d == ModVec(pbw->parse_monomial("d(-1)")) + Scalar(1, 3) * ModVec(pbw->parse_monomial("e(-1) f")));
  const auto q = m.irreducible_quotient();
  CHECK(q.normalize(d) == q.normalize(ModVec(pbw->parse_monomial("d(-1)"))));
  CHECK(q.normalize(d).is_zero());
}

TEST_CASE("commutators with loop generators") {
  const auto m = HWModule::build_verma(sl2_pbw(), params(2, Scalar(3, 2), 2, Scalar(5, 2)), 2, 2);
  const SugawaraContext ctx(m);
  const auto& a = m.algebra();
  for (const auto& v : basis_upto(m, 1)) {
    for (long n = -2; n <= 2; ++n)
      for (long mm = -2; mm <= 2; ++mm)
        for (std::size_t x = 0; x < 3; ++x) {
          const Gen g = Gen::loop(x, mm);
          const ModVec lhs = ctx.apply_T(n, m.act_exact(g, v)) - m.act_exact(g, ctx.apply_T(n, v));
          CHECK(lhs == Scalar(mm) * ctx.k_plus_g() * m.act_exact(Gen::loop(x, mm + n), v));
        }
    const ModVec t = ctx.apply_T(1, m.act_exact(a.loop("e", -1), v)) - m.act_exact(a.loop("e", -1), ctx.apply_T(1, v));
    CHECK(t == Scalar(-1) * ctx.k_plus_g() * m.act_exact(a.loop("e", 0), v));
  }
}

TEST_CASE("T_n relations, weight shift and tie independence") {
  const auto m = HWModule::build_verma(sl2_pbw(), params(1, Scalar(1, 2), 3, 1), 2, 1);
  const SugawaraContext ctx(m);
  const Scalar kg = ctx.k_plus_g(), k = m.params().k;
  for (const auto& v : basis_upto(m, 2)) {
    for (long a = -2; a <= 2; ++a)
      for (long b = -2; b <= 2; ++b) {
        ModVec rhs = Scalar(b - a) * kg * ctx.apply_T(a + b, v);
        if (a + b == 0) rhs += Scalar(a * a * a - a, 12) * Scalar(3) * kg * k * v;
        CHECK(ctx.apply_T(a, ctx.apply_T(b, v)) - ctx.apply_T(b, ctx.apply_T(a, v)) == rhs);
      }
    const WeightKey w = m.weight_of(v.terms().begin()->first);
    for (long n = -2; n <= 2; n += 2) {
      CHECK(ctx.apply_T(n, v) == ctx.apply_T(n, v, true));
      const ModVec tv = ctx.apply_T(n, v);
      for (const auto& [mono, c] : tv.terms()) {
        const WeightKey w2 = m.weight_of(mono);
        CHECK(w2.depth == w.depth - n);
        CHECK(w2.drop == w.drop);
      }
    }
  }
}

TEST_CASE("factorization reports") {
  const auto m46 = HWModule::build_verma(sl2_pbw(), params(2, Scalar(3, 2), 2, Scalar(5, 2)), 2, 1);
  const SugawaraContext ctx(m46);
  const auto rep = factorization_report(ctx, 1);
  CHECK(rep.all_pass());
  CHECK(rep.l_prime == Scalar(2));
  CHECK(rep.c_prime == Scalar(1));
  CHECK(rep.to_json().find("\"all_pass\": true") != std::string::npos);
}
