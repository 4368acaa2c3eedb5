#include "avk/pbw.hpp"

#include <sstream>

#include "avk/error.hpp"

namespace avk {

long PBWMonomial::degree() const {
  long d = 0;
  for (const auto& [g, e] : factors) d += g.degree() * e;
  return d;
}

int PBWMonomial::length() const {
  int n = 0;
  for (const auto& f : factors) n += f.second;
  return n;
}

UEnvElement::UEnvElement(PBWMonomial m, Scalar c) {
  if (!c.is_zero()) terms_.emplace(std::move(m), std::move(c));
}

Scalar UEnvElement::coeff(const PBWMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void UEnvElement::add(const PBWMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

UEnvElement& UEnvElement::operator+=(const UEnvElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

UEnvElement& UEnvElement::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

PBW::PBW(std::shared_ptr<const AffVirAlgebra> alg) : alg_(std::move(alg)) {}

std::tuple<int, long, long> PBW::key(const Gen& g) const {
  const auto& lie = alg_->g();
  switch (g.kind) {
    case Gen::Kind::kK:
      return {3, 2, 0};
    case Gen::Kind::kC:
      return {3, 3, 0};
    case Gen::Kind::kVir:
      if (g.mode < 0) return {1, g.mode, 0};
      if (g.mode == 0) return {3, 1, 0};
      return {6, g.mode, 0};
    case Gen::Kind::kLoop:
      break;
  }
  if (g.mode < 0) return {0, g.mode, g.index};
  if (g.mode > 0) return {5, g.mode, g.index};
  if (lie.is_negative(g.index)) return {2, 0, g.index};
  if (lie.is_cartan(g.index)) return {3, 0, g.index};
  return {4, 0, g.index};
}

bool PBW::is_negative(const Gen& g) const { return std::get<0>(key(g)) <= 2; }
bool PBW::is_positive(const Gen& g) const { return std::get<0>(key(g)) >= 4; }

const UEnvElement& PBW::insert(const Gen& g, const PBWMonomial& m) const {
  auto key_pair = std::make_pair(g, m);
  auto it = memo_.find(key_pair);
  if (it != memo_.end()) return it->second;
  UEnvElement r = compute_insert(g, m);
  return memo_.emplace(std::move(key_pair), std::move(r)).first->second;
}

UEnvElement PBW::compute_insert(const Gen& g, const PBWMonomial& m) const {
  if (m.empty() || precedes(g, m.factors.front().first)) {
    PBWMonomial r;
    r.factors.reserve(m.factors.size() + 1);
    r.factors.emplace_back(g, 1);
    r.factors.insert(r.factors.end(), m.factors.begin(), m.factors.end());
    return UEnvElement(std::move(r));
  }
  const Gen f = m.factors.front().first;
  if (f == g) {
    PBWMonomial r = m;
    ++r.factors.front().second;
    return UEnvElement(std::move(r));
  }
  PBWMonomial rest = m;
  if (--rest.factors.front().second == 0) rest.factors.erase(rest.factors.begin());
  // g f rest = f (g rest) + [g, f] rest
  UEnvElement out;
  for (const auto& [n, c] : insert(g, rest).terms()) {
    for (const auto& [n2, c2] : insert(f, n).terms()) out.add(n2, c * c2);
  }
  const AffVirElement br = alg_->bracket(g, f);
  for (const auto& [h, c] : br.terms()) {
    for (const auto& [n2, c2] : insert(h, rest).terms()) out.add(n2, c * c2);
  }
  return out;
}

UEnvElement PBW::left_multiply(const Gen& g, const UEnvElement& q) const {
  UEnvElement out;
  for (const auto& [m, c] : q.terms())
    for (const auto& [m2, c2] : insert(g, m).terms()) out.add(m2, c * c2);
  return out;
}

UEnvElement PBW::straighten(const std::vector<Gen>& word, Mode mode) const {
  if (mode == Mode::kNegative) {
    for (const auto& g : word) {
      if (!is_negative(g)) {
        throw Error(ErrorCode::kPositiveFactorInNegativeMode,
                    "factor " + alg_->to_string(g) + " is not in the negative part");
      }
    }
  }
  UEnvElement acc = UEnvElement::one();
  for (auto it = word.rbegin(); it != word.rend(); ++it) acc = left_multiply(*it, acc);
  return acc;
}

UEnvElement PBW::multiply(const UEnvElement& p, const UEnvElement& q) const {
  UEnvElement out;
  for (const auto& [m, c] : p.terms()) {
    UEnvElement acc = q;
    for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it)
      for (int e = 0; e < it->second; ++e) acc = left_multiply(it->first, acc);
    acc *= c;
    out += acc;
  }
  return out;
}

UEnvElement PBW::from_element(const AffVirElement& x) const {
  UEnvElement out;
  for (const auto& [g, c] : x.terms()) out.add(PBWMonomial{{{g, 1}}}, c);
  return out;
}

PBWMonomial PBW::monomial(const std::vector<std::pair<Gen, int>>& factors) const {
  PBWMonomial m;
  for (const auto& [g, e] : factors) {
    if (e <= 0) throw Error(ErrorCode::kParse, "exponents must be positive");
    if (!m.factors.empty() && !precedes(m.factors.back().first, g)) {
      throw Error(ErrorCode::kParse, "factors are not in canonical order at " + alg_->to_string(g));
    }
    m.factors.emplace_back(g, e);
  }
  return m;
}

PBW::Split PBW::split(const PBWMonomial& m) const {
  Split s;
  for (const auto& f : m.factors) {
    const int block = std::get<0>(key(f.first));
    if (block == 0) {
      s.loop_neg.factors.push_back(f);
    } else if (block == 1) {
      s.vir_neg.factors.push_back(f);
    } else if (block == 2) {
      s.fin_neg.factors.push_back(f);
    } else {
      throw Error(ErrorCode::kNonNegativePart, "factor " + alg_->to_string(f.first) + " is not in the negative part");
    }
  }
  return s;
}

std::string PBW::to_string(const PBWMonomial& m) const {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& [g, e] : m.factors) {
    if (!s.empty()) s += " ";
    s += alg_->to_string(g);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string PBW::to_string(const UEnvElement& x) const {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : x.terms()) {
    if (!s.empty()) s += " + ";
    if (c != Scalar(1) || m.empty()) s += c.to_string() + (m.empty() ? "" : "*");
    if (!m.empty()) s += to_string(m);
  }
  return s;
}

PBWMonomial PBW::parse_monomial(const std::string& text) const {
  std::istringstream in(text);
  std::string tok;
  std::vector<std::pair<Gen, int>> factors;
  while (in >> tok) {
    if (tok == "1" && factors.empty()) continue;
    int e = 1;
    const auto caret = tok.find('^');
    if (caret != std::string::npos) {
      try {
        e = std::stoi(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kParse, "bad exponent in '" + tok + "'");
      }
      tok = tok.substr(0, caret);
    }
    factors.emplace_back(alg_->parse_gen(tok), e);
  }
  return monomial(factors);
}

}  // namespace avk
