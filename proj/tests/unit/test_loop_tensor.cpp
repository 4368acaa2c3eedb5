#include <random>

#include "avk/error.hpp"
#include "avk/loop_tensor.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace avk;
using testing::params;
using testing::sl2_pbw;
using testing::wt;

namespace {

constexpr std::size_t kF = 0, kH = 1, kE = 2;

FiniteModule::Vec vec(std::initializer_list<long> xs) {
  FiniteModule::Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

TensorVector single(const TensorModule& t, long n, const PBWMonomial& m, std::size_t j, const Scalar& c = 1) {
  TensorVector w;
  w.comps[n].resize(t.mu_module().dim());
  w.comps[n][j].add(m, c);
  return w;
}

}  // namespace

TEST_CASE("loop module action") {
  const auto pbw = sl2_pbw();
  const auto& lie = pbw->algebra().g();
  const LoopModule loop(lie, wt(1), 0, Scalar(1, 2));
  const LoopModule::Vector v3{{3, vec({1, 0})}};
  const auto out = loop.act(Gen::vir(2), v3);
  REQUIRE(out.size() == 1);
  CHECK(out.at(5) == vec({4, 0}));
  CHECK(loop.act(Gen::central_k(), v3).empty());
  CHECK(loop.act(Gen::central_c(), v3).empty());
  const LoopModule::Vector fv{{0, vec({0, 1})}};
  const auto ef = loop.act(Gen::loop(kE, 1), fv);
  REQUIRE(ef.size() == 1);
  CHECK(ef.at(1) == vec({1, 0}));
}

TEST_CASE("loop module normalization of a") {
  const auto& lie = sl2_pbw()->algebra().g();
  const Scalar a(1, 3), b(2, 5);
  const LoopModule plus(lie, wt(2), a + 1, b);
  CHECK(plus.a() == a);
  // v (x) t^n in L_{a,b} corresponds to v (x) t^{n-1} in L_{a+1,b}.
  for (long n = -3; n <= 3; ++n)
    for (long m = -2; m <= 2; ++m) {
      const auto x = plus.act(Gen::vir(m), {{n, vec({1, 0, 0})}});
      const Scalar coeff = (a + 1) + b * m + (n - 1);
      REQUIRE(x.size() == 1);
      CHECK(x.at(n + m)[0] == coeff);
    }
}

TEST_CASE("tensor slices and weight basis") {
  const auto pbw = sl2_pbw();
  const TensorModule t(pbw, {params(0, 0, 1, 2), wt(1), 0, Scalar(1, 2)}, 1, 1);
  CHECK(t.window() == 5);
  CHECK(t.slice_dim() == t.top_dim() * 2);
  CHECK(t.weight_basis(0).size() == t.slice_dim());
  CHECK(t.weight_basis(-3).size() == t.weight_basis(4).size());
  CHECK(t.top_monomial(0).factors.empty());
}

TEST_CASE("shifted action on the top vector") {
  const auto pbw = sl2_pbw();
  const Scalar a(1, 3), b(2, 5), l(3, 7);
  const TensorModule t(pbw, {params(1, l, 2, 1), wt(1), a, b}, 2, 2);
  const PBWMonomial one{};
  for (long n = -2; n <= 2; ++n) {
    const auto w = single(t, n, one, 0);
    CHECK(t.shifted_act(Gen::vir(0), w) == single(t, n, one, 0, a + l + n));
    CHECK(t.shifted_act(Gen::central_c(), w) == single(t, n, one, 0, 1));
    CHECK(t.shifted_act(Gen::central_k(), w) == single(t, n, one, 0, 2));
  }
  // x(m)(u (x) v (x) t^n) = x(m)u (x) v (x) t^{m+n} + u (x) x v (x) t^{m+n}
  const auto w = single(t, 0, one, 0);
  TensorVector expect = single(t, -1, pbw->parse_monomial("f(-1)"), 0);
  expect.comps[-1][1].add(one, 1);
  CHECK(t.shifted_act(Gen::loop(kF, -1), w) == expect);
  CHECK(t.shifted_act(Gen::loop(kH, 0), w) == single(t, 0, one, 0, 2));
}

TEST_CASE("unshift examples") {
  const auto pbw = sl2_pbw();
  const TensorModule t(pbw, {params(Scalar(1, 3), Scalar(2, 7), Scalar(5, 11), Scalar(3, 13)), wt(1), 0, 1}, 2, 0);
  const PBWMonomial one{};
  const PBWMonomial d2 = pbw->parse_monomial("d(-2)");
  const PBWMonomial d1 = pbw->parse_monomial("d(-1)");
  CHECK(t.unshift(single(t, 5, one, 0)) == single(t, 5, one, 0));
  CHECK(t.unshift(single(t, 5, d2, 0)) == single(t, 3, d2, 0));
  TensorVector sum = single(t, 0, one, 0);
  sum.comps[0][0].add(d1, 1);
  TensorVector expect = single(t, 0, one, 0);
  expect.comps[-1].resize(2);
  expect.comps[-1][0].add(d1, 1);
  CHECK(t.unshift(sum) == expect);
  CHECK(t.shift(t.unshift(sum)) == sum);
}

TEST_CASE("unshift intertwines the plain and shifted actions") {
  const auto pbw = sl2_pbw();
  const TensorModule t(pbw, {params(2, Scalar(3, 2), 2, Scalar(5, 2)), wt(3), Scalar(1, 3), Scalar(2, 7)}, 3, 3);
  std::mt19937 rng(7);
  std::vector<Gen> gens;
  for (long m = -1; m <= 1; ++m) {
    for (std::size_t x = 0; x < 3; ++x) gens.push_back(Gen::loop(x, m));
    gens.push_back(Gen::vir(m));
  }
  std::uniform_int_distribution<std::size_t> pick_top(0, t.top_dim() - 1), pick_mu(0, 3);
  std::uniform_int_distribution<long> pick_n(-3, 3), pick_c(-5, 5);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    TensorVector w;
    for (int k = 0; k < 3; ++k) {
      const std::size_t i = pick_top(rng);
      if (t.top_depth(i) > 2) continue;
      auto& c = w.comps[pick_n(rng)];
      c.resize(4);
      c[pick_mu(rng)].add(t.top_monomial(i), pick_c(rng));
    }
    for (const auto& g : gens) {
      try {
        const TensorVector lhs = t.unshift(t.plain_act(g, w));
        const TensorVector rhs = t.shifted_act(g, t.unshift(w));
        CHECK(lhs == rhs);
        ++checked;
      } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::kTruncationEscape);
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("shifted action is a representation") {
  const auto pbw = sl2_pbw();
  const auto& alg = pbw->algebra();
  const TensorModule t(pbw, {params(0, 0, 1, 2), wt(1), 0, Scalar(1, 2)}, 3, 3);
  std::vector<Gen> gens;
  for (long m = -1; m <= 1; ++m) {
    for (std::size_t x = 0; x < 3; ++x) gens.push_back(Gen::loop(x, m));
    gens.push_back(Gen::vir(m));
  }
  int checked = 0;
  for (std::size_t i = 0; i < t.top_dim(); ++i) {
    if (t.top_depth(i) > 1) continue;
    for (std::size_t j = 0; j < 2; ++j) {
      const auto w = single(t, 1, t.top_monomial(i), j);
      for (const auto& x : gens)
        for (const auto& y : gens) {
          TensorVector xy = t.shifted_act(x, t.shifted_act(y, w));
          const TensorVector yx = t.shifted_act(y, t.shifted_act(x, w));
          const TensorVector br = t.shifted_act(alg.bracket(x, y), w);
          for (const auto& [n, c] : yx.comps) {
            auto& dst = xy.comps[n];
            dst.resize(2);
            for (std::size_t k = 0; k < 2; ++k) dst[k] += Scalar(-1) * c[k];
          }
          CHECK(xy == br);
          ++checked;
        }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("coordinate moves agree with the shifted action") {
  const auto pbw = sl2_pbw();
  const TensorModule t(pbw, {params(0, 0, 1, 2), wt(1), 0, Scalar(1, 2)}, 2, 2, 4);
  for (const auto& g : t.moves(2)) {
    const auto& safe = t.safe(g);
    for (std::size_t i = 0; i < t.slice_dim(); ++i) {
      if (!safe[i / 2]) {
        CHECK(!t.apply(g, 0, SparseVector({{i, Scalar(1)}}), false));
        continue;
      }
      const auto y = t.apply(g, 0, SparseVector({{i, Scalar(1)}}), false);
      REQUIRE(y);
      const auto w = single(t, 0, t.top_monomial(i / 2), i % 2);
      const auto img = t.shifted_act(g, w);
      const long target = g.mode;
      if (img.comps.empty()) {
        CHECK(y->empty());
      } else {
        CHECK(t.coords(img.comps.at(target)) == *y);
      }
    }
  }
}
