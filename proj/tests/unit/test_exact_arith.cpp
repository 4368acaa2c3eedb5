#include <random>

#include "avk/error.hpp"
#include "avk/gaussian.hpp"
#include "avk/linalg.hpp"
#include "avk/nupoly.hpp"
#include "avk/scalar.hpp"
#include "doctest.h"

using namespace avk;

namespace {

SparseMatrix dense(const std::vector<std::vector<long>>& rows) {
  SparseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.set(i, j, Scalar(rows[i][j]));
  return m;
}

// Plain row reduction with first-nonzero pivoting, used as an independent rank oracle.
std::size_t naive_rank(std::vector<std::vector<Scalar>> a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][c].is_zero()) continue;
      const Scalar f = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("scalar parsing and canonical form") {
  CHECK(Scalar::parse("6/4") == Scalar(3, 2));
  CHECK(Scalar::parse("-3") == Scalar(-3));
  CHECK(Scalar::parse("0/7").to_string() == "0");
  CHECK(Scalar(3, -6).to_string() == "-1/2");
  CHECK_THROWS_AS(Scalar::parse("0.5"), Error);
  CHECK_THROWS_AS(Scalar::parse("1/0"), Error);
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), Error);
  CHECK(Scalar(5, 3).floor() == 1);
  CHECK(Scalar(-1, 3).frac() == Scalar(2, 3));
}

TEST_CASE("scalar field axioms on random triples") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
  for (int t = 0; t < 300; ++t) {
    Scalar a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("rank_and_kernel examples") {
  auto id = rank_and_kernel(dense({{1, 0}, {0, 1}}));
  CHECK(id.rank == 2);
  CHECK(id.kernel.empty());

  auto zero = rank_and_kernel(SparseMatrix(3, 4));
  CHECK(zero.rank == 0);
  CHECK(zero.kernel.size() == 4);

  auto m = dense({{1, 2}, {2, 4}});
  auto rk = rank_and_kernel(m);
  CHECK(rk.rank == 1);
  REQUIRE(rk.kernel.size() == 1);
  const auto& k = rk.kernel[0];
  // Proportional to (-2, 1).
  CHECK(k.get(0) == Scalar(-2) * k.get(1));
  CHECK(m.apply(k).empty());
}

TEST_CASE("rank agrees with an independent elimination on random matrices") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 7), val(-3, 3), sparse(0, 2);
  for (int t = 0; t < 200; ++t) {
    const int r = dim(rng), c = dim(rng);
    SparseMatrix m(r, c);
    std::vector<std::vector<Scalar>> a(r, std::vector<Scalar>(c));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (sparse(rng) != 0) {
          a[i][j] = Scalar(val(rng), 1 + sparse(rng));
          m.set(i, j, a[i][j]);
        }
    auto rk = rank_and_kernel(m);
    CHECK(rk.rank == naive_rank(a));
    CHECK(rk.rank + rk.kernel.size() == static_cast<std::size_t>(c));
    for (const auto& v : rk.kernel) CHECK(m.apply(v).empty());
  }
}

TEST_CASE("subspace membership and reduced basis") {
  Subspace s;
  CHECK(s.add(SparseVector({{0, Scalar(2)}, {1, Scalar(4)}})));
  CHECK_FALSE(s.add(SparseVector({{0, Scalar(1)}, {1, Scalar(2)}})));
  CHECK(s.add(SparseVector({{1, Scalar(1)}})));
  CHECK(s.dim() == 2);
  CHECK(s.contains(SparseVector({{0, Scalar(5)}, {1, Scalar(-1, 3)}})));
  auto rb = s.reduced_basis();
  REQUIRE(rb.size() == 2);
  CHECK(rb[0] == SparseVector({{0, Scalar(1)}}));
}

TEST_CASE("nupoly arithmetic") {
  const NuPoly nu = NuPoly::nu();
  const NuPoly p = (nu - NuPoly(Scalar(1))) * (nu + NuPoly(Scalar(2)));
  CHECK(p.degree() == 2);
  CHECK(p.eval(Scalar(1)).is_zero());
  CHECK(p.to_string() == "nu^2 + nu - 2");
  auto [q, r] = p.divmod(nu - NuPoly(Scalar(1)));
  CHECK(r.is_zero());
  CHECK((q == nu + NuPoly(Scalar(2))));
  CHECK((gcd(p, nu * nu - NuPoly(Scalar(1))) == nu - NuPoly(Scalar(1))));
  CHECK_THROWS_AS(p.divexact(nu), Error);
}

TEST_CASE("rational roots") {
  const NuPoly nu = NuPoly::nu();
  // (2nu - 3)(nu + 4)^2 nu (nu^2 + 1)
  NuPoly p = (nu * Scalar(2) - NuPoly(Scalar(3))) * (nu + NuPoly(Scalar(4))) * (nu + NuPoly(Scalar(4))) * nu *
             (nu * nu + NuPoly(Scalar(1)));
  auto rr = rational_roots(p);
  CHECK(rr.roots == std::vector<Scalar>{Scalar(-4), Scalar(0), Scalar(3, 2)});
  CHECK(rr.irrational_part.degree() == 2);
}

TEST_CASE("rank over the function field") {
  const NuPoly nu = NuPoly::nu();
  {
    PolyMatrix m(1, 1);
    m.at(0, 0) = nu;
    auto r = rank_over_function_field(m);
    CHECK(r.generic_rank == 1);
    CHECK(r.exceptional == std::vector<Scalar>{Scalar(0)});
  }
  {
    PolyMatrix m(2, 2);
    m.at(0, 0) = nu - NuPoly(Scalar(1));
    m.at(1, 1) = NuPoly(Scalar(1));
    auto r = rank_over_function_field(m);
    CHECK(r.generic_rank == 2);
    CHECK(r.exceptional == std::vector<Scalar>{Scalar(1)});
  }
  {
    PolyMatrix m(2, 2);
    m.at(0, 0) = nu;
    m.at(0, 1) = nu;
    m.at(1, 0) = NuPoly(Scalar(1));
    m.at(1, 1) = NuPoly(Scalar(1));
    auto r = rank_over_function_field(m);
    CHECK(r.generic_rank == 1);
    CHECK(r.exceptional.empty());
  }
  CHECK_THROWS_AS(rank_over_function_field(PolyMatrix(0, 3)), Error);
}

TEST_CASE("exceptional values re-check by substitution") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> val(-3, 3), dim(1, 4);
  const NuPoly nu = NuPoly::nu();
  for (int t = 0; t < 60; ++t) {
    const int r = dim(rng), c = dim(rng);
    PolyMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.at(i, j) = nu * Scalar(val(rng)) + NuPoly(Scalar(val(rng)));
    if (r == 0 || c == 0) continue;
    auto res = rank_over_function_field(m);
    for (const auto& x : res.exceptional) CHECK(rank_and_kernel(m.substitute(x)).rank < res.generic_rank);
    for (long x = -20; x <= 20; ++x) {
      const Scalar sx(x);
      const bool exc = std::find(res.exceptional.begin(), res.exceptional.end(), sx) != res.exceptional.end();
      const auto rk = rank_and_kernel(m.substitute(sx)).rank;
      if (exc)
        CHECK(rk < res.generic_rank);
      else
        CHECK(rk == res.generic_rank);
    }
  }
}

TEST_CASE("gaussian rationals") {
  auto z = GaussianRational::parse("1/2+3/4i");
  CHECK(z.re() == Scalar(1, 2));
  CHECK(z.im() == Scalar(3, 4));
  CHECK(GaussianRational::parse("-i").im() == Scalar(-1));
  CHECK((z * z.conj()).im().is_zero());
  CHECK((z / z) == GaussianRational(Scalar(1)));
  CHECK(GaussianRational::parse("7/3-2i").normalized_shift().re() == Scalar(1, 3));
  CHECK(z.to_string() == "1/2+3/4i");
}
