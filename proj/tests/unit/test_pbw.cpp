#include <random>

#include "avk/error.hpp"
#include "avk/highest_weight.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace avk;

namespace {

UEnvElement mono(const PBW& pbw, const std::string& s, Scalar c = Scalar(1)) {
  return UEnvElement(pbw.parse_monomial(s), c);
}

std::vector<Gen> negative_generators(const PBW& pbw) {
  std::vector<Gen> out;
  for (long m = -4; m <= -1; ++m) {
    for (std::size_t i = 0; i < 3; ++i) out.push_back(Gen::loop(i, m));
    out.push_back(Gen::vir(m));
  }
  out.push_back(pbw.algebra().loop("f", 0));
  return out;
}

}  // namespace

TEST_CASE("straighten examples") {
  const auto& pbw = *testing::sl2_pbw();
  CHECK(pbw.straighten({Gen::vir(-1), Gen::vir(-2)}) ==
        mono(pbw, "d(-2) d(-1)") + mono(pbw, "d(-3)", Scalar(-1)));
  CHECK(pbw.straighten({Gen::vir(-2), Gen::vir(-1)}) == mono(pbw, "d(-2) d(-1)"));
  const auto& a = pbw.algebra();
  CHECK(pbw.straighten({a.loop("e", -1), a.loop("f", -1)}) == mono(pbw, "f(-1) e(-1)") + mono(pbw, "h(-2)"));
  CHECK_THROWS_AS(pbw.straighten({a.loop("e", 0)}, PBW::Mode::kNegative), Error);
}

TEST_CASE("multiply examples") {
  const auto& pbw = *testing::sl2_pbw();
  const UEnvElement q = mono(pbw, "d(-2) d(-1)");
  CHECK(pbw.multiply(UEnvElement::one(), q) == q);
  CHECK(pbw.multiply(mono(pbw, "d(-1)"), mono(pbw, "d(-1)")) == mono(pbw, "d(-1)^2"));
  CHECK(pbw.multiply(mono(pbw, "d(-1)"), q) == mono(pbw, "d(-2) d(-1)^2") + mono(pbw, "d(-3) d(-1)", Scalar(-1)));
}

TEST_CASE("monomial strings") {
  const auto& pbw = *testing::sl2_pbw();
  const auto m = pbw.parse_monomial("e(-1)^2 d(-3) f");
  CHECK(pbw.to_string(m) == "e(-1)^2 d(-3) f");
  CHECK(m.degree() == -5);
  const auto s = pbw.split(m);
  CHECK(pbw.to_string(s.loop_neg) == "e(-1)^2");
  CHECK(pbw.to_string(s.vir_neg) == "d(-3)");
  CHECK(pbw.to_string(s.fin_neg) == "f");
  CHECK_THROWS_AS(pbw.parse_monomial("f e(-1)"), Error);
}

TEST_CASE("associativity and degree additivity") {
  const auto& pbw = *testing::sl2_pbw();
  const auto gens = negative_generators(pbw);
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(0, 2);
  auto random_elem = [&] {
    std::vector<Gen> w;
    for (int i = len(rng); i >= 0; --i) w.push_back(gens[pick(rng)]);
    return pbw.straighten(w);
  };
  for (int t = 0; t < 40; ++t) {
    const auto a = random_elem(), b = random_elem(), c = random_elem();
    CHECK(pbw.multiply(a, pbw.multiply(b, c)) == pbw.multiply(pbw.multiply(a, b), c));
  }
  for (int t = 0; t < 40; ++t) {
    std::vector<Gen> w1{gens[pick(rng)], gens[pick(rng)]}, w2{gens[pick(rng)]};
    long d = 0;
    for (const auto& g : w1) d += g.degree();
    for (const auto& g : w2) d += g.degree();
    const UEnvElement prod = pbw.multiply(pbw.straighten(w1), pbw.straighten(w2));
    for (const auto& [m, c] : prod.terms()) CHECK(m.degree() == d);
  }
}

TEST_CASE("straighten-then-act equals factor-by-factor action") {
  const auto pbw = testing::sl2_pbw();
  const auto verma = HWModule::build_verma(pbw, testing::params(Scalar(1, 3), Scalar(2, 5), Scalar(3, 7), Scalar(-1, 2)),
                                           2, 1);
  const auto gens = negative_generators(*pbw);
  std::mt19937 rng(23);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(1, 5);
  std::vector<ModVec> targets;
  for (const auto& w : verma.weights())
    if (w.depth <= 1)
      for (const auto& m : verma.verma_basis(w)) targets.emplace_back(m);
  std::uniform_int_distribution<std::size_t> pick_v(0, targets.size() - 1);
  for (int t = 0; t < 100; ++t) {
    std::vector<Gen> word;
    for (int i = len(rng); i > 0; --i) word.push_back(gens[pick(rng)]);
    const ModVec v = targets[pick_v(rng)];
    ModVec direct = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) direct = verma.act_exact(*it, direct);
    CHECK(verma.act_exact(pbw->straighten(word, PBW::Mode::kNegative), v) == direct);
  }
}
