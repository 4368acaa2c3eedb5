#include "avk/nupoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "avk/error.hpp"

namespace avk {

NuPoly::NuPoly(Scalar constant) {
  if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
}

NuPoly::NuPoly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

NuPoly NuPoly::nu() { return NuPoly(std::vector<Scalar>{Scalar(0), Scalar(1)}); }

NuPoly NuPoly::linear(const Scalar& c0, const Scalar& c1) {
  return NuPoly(std::vector<Scalar>{c0, c1});
}

void NuPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar NuPoly::coeff(int d) const {
  if (d < 0 || d >= static_cast<int>(coeffs_.size())) return Scalar(0);
  return coeffs_[static_cast<std::size_t>(d)];
}

Scalar NuPoly::eval(const Scalar& x) const {
  Scalar acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

NuPoly& NuPoly::operator+=(const NuPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

NuPoly& NuPoly::operator-=(const NuPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

NuPoly operator*(const NuPoly& a, const NuPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return NuPoly(std::move(out));
}

NuPoly& NuPoly::operator*=(const NuPoly& o) { return *this = *this * o; }

NuPoly& NuPoly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

NuPoly NuPoly::operator-() const {
  NuPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

std::pair<NuPoly, NuPoly> NuPoly::divmod(const NuPoly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::kInvalidArgument, "polynomial division by zero");
  std::vector<Scalar> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {NuPoly(), *this};
  std::vector<Scalar> quot(static_cast<std::size_t>(degree() - dd + 1));
  const Scalar& lead = divisor.leading();
  for (int i = degree(); i >= dd; --i) {
    const Scalar c = rem[static_cast<std::size_t>(i)] / lead;
    if (c.is_zero()) continue;
    quot[static_cast<std::size_t>(i - dd)] = c;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(i - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  return {NuPoly(std::move(quot)), NuPoly(std::move(rem))};
}

NuPoly NuPoly::divexact(const NuPoly& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw Error(ErrorCode::kNotExact, "inexact polynomial division");
  return q;
}

NuPoly NuPoly::monic() const {
  if (is_zero()) return {};
  NuPoly r = *this;
  const Scalar inv = Scalar(1) / leading();
  r *= inv;
  return r;
}

NuPoly NuPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Scalar> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * Scalar(static_cast<long>(i));
  return NuPoly(std::move(out));
}

std::vector<mpz_class> NuPoly::primitive_integer_coeffs() const {
  if (is_zero()) return {};
  mpz_class den_lcm = 1;
  for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.raw().get_den_mpz_t());
  std::vector<mpz_class> ints;
  ints.reserve(coeffs_.size());
  mpz_class content = 0;
  for (const auto& c : coeffs_) {
    mpz_class v = c.raw().get_num() * (den_lcm / c.raw().get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  if (ints.back() < 0) content = -content;
  for (auto& v : ints) v /= content;
  return ints;
}

std::string NuPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const Scalar& c = coeffs_[static_cast<std::size_t>(d)];
    if (c.is_zero()) continue;
    Scalar mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == Scalar(1);
    if (d == 0) {
      os << mag;
    } else {
      if (!unit) os << mag << "*";
      os << "nu";
      if (d > 1) os << "^" << d;
    }
  }
  return os.str();
}

NuPoly gcd(NuPoly a, NuPoly b) {
  while (!b.is_zero()) {
    NuPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

// Trial division up to this bound; a cofactor above bound^2 is kept whole and
// treated as a single prime. Every candidate root is verified by evaluation,
// so this can only lose roots of polynomials with enormous coefficients.
constexpr unsigned long kTrialDivisionBound = 1000000;

std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<std::pair<mpz_class, int>> factors;
  for (unsigned long p = 2; p <= kTrialDivisionBound && mpz_class(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++e;
    }
    if (e > 0) factors.emplace_back(mpz_class(p), e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<mpz_class> divs{mpz_class(1)};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace

RationalRoots rational_roots(const NuPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::kInvalidArgument, "rational_roots of the zero polynomial");
  RationalRoots out;
  out.irrational_part = p.monic();
  if (p.is_constant()) return out;

  NuPoly squarefree = p.divexact(gcd(p, p.derivative()));
  std::set<Scalar> found;
  // Strip the root 0 first so the constant term is nonzero.
  if (squarefree.coeff(0).is_zero()) {
    found.insert(Scalar(0));
    squarefree = squarefree.divexact(NuPoly::nu());
  }
  if (squarefree.degree() > 0) {
    auto ints = squarefree.primitive_integer_coeffs();
    auto num_divs = positive_divisors(ints.front());
    auto den_divs = positive_divisors(ints.back());
    for (const auto& q : den_divs) {
      for (const auto& n : num_divs) {
        for (int s : {1, -1}) {
          mpq_class cand(n * s, q);
          cand.canonicalize();
          Scalar x(cand);
          if (found.count(x) == 0 && squarefree.eval(x).is_zero()) found.insert(x);
        }
      }
    }
  }
  out.roots.assign(found.begin(), found.end());
  NuPoly rest = p.monic();
  for (const auto& r : out.roots) {
    NuPoly lin = NuPoly::linear(-r, Scalar(1));
    while (true) {
      auto [q, rem] = rest.divmod(lin);
      if (!rem.is_zero()) break;
      rest = q;
    }
  }
  out.irrational_part = rest;
  return out;
}

}  // namespace avk
