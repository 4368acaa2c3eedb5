#include "avk/affvir.hpp"

#include "avk/error.hpp"

namespace avk {

AffVirElement::AffVirElement(const Gen& g, Scalar c) {
  if (!c.is_zero()) terms_.emplace(g, std::move(c));
}

Scalar AffVirElement::coeff(const Gen& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void AffVirElement::add(const Gen& g, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AffVirElement& AffVirElement::operator+=(const AffVirElement& o) {
  for (const auto& [g, c] : o.terms_) add(g, c);
  return *this;
}

AffVirElement& AffVirElement::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [g, c] : terms_) c *= s;
  return *this;
}

AffVirAlgebra::AffVirAlgebra(std::shared_ptr<const SimpleLieAlgebra> g) : g_(std::move(g)) {
  for (const char* reserved : {"d", "K", "C"}) {
    if (g_->basis_index(reserved)) {
      throw Error(ErrorCode::kInvalidArgument, std::string("basis name '") + reserved + "' is reserved");
    }
  }
}

AffVirElement AffVirAlgebra::bracket(const Gen& a, const Gen& b) const {
  AffVirElement out;
  if (a.is_central() || b.is_central()) return out;
  if (a.is_loop() && b.is_loop()) {
    // [x(m), y(n)] = [x,y](m+n) + m (x|y) delta_{m+n,0} K
    for (const auto& [k, c] : g_->bracket(a.index, b.index)) out.add(Gen::loop(k, a.mode + b.mode), c);
    if (a.mode + b.mode == 0) out.add(Gen::central_k(), Scalar(a.mode) * g_->form(a.index, b.index));
    return out;
  }
  if (a.is_vir() && b.is_vir()) {
    // [d_m, d_n] = (n-m) d_{m+n} + delta_{m+n,0} (m^3-m)/12 C
    const long m = a.mode, n = b.mode;
    out.add(Gen::vir(m + n), Scalar(n - m));
    if (m + n == 0) out.add(Gen::central_c(), Scalar(m * m * m - m, 12));
    return out;
  }
  if (a.is_vir()) {
    // [d_n, x(m)] = m x(m+n)
    out.add(Gen::loop(b.index, b.mode + a.mode), Scalar(b.mode));
    return out;
  }
  out.add(Gen::loop(a.index, a.mode + b.mode), Scalar(-a.mode));
  return out;
}

AffVirElement AffVirAlgebra::bracket(const AffVirElement& a, const AffVirElement& b) const {
  AffVirElement out;
  for (const auto& [ga, ca] : a.terms())
    for (const auto& [gb, cb] : b.terms()) {
      AffVirElement t = bracket(ga, gb);
      t *= ca * cb;
      out += t;
    }
  return out;
}

std::optional<long> AffVirAlgebra::degree(const AffVirElement& x) const {
  std::optional<long> deg;
  for (const auto& [g, c] : x.terms()) {
    if (deg && *deg != g.degree()) return std::nullopt;
    deg = g.degree();
  }
  return deg.value_or(0);
}

Gen AffVirAlgebra::loop(const std::string& name, long m) const {
  auto i = g_->basis_index(name);
  if (!i) throw Error(ErrorCode::kInvalidArgument, "unknown basis element " + name);
  return Gen::loop(*i, m);
}

std::string AffVirAlgebra::to_string(const Gen& g) const {
  switch (g.kind) {
    case Gen::Kind::kK:
      return "K";
    case Gen::Kind::kC:
      return "C";
    case Gen::Kind::kVir:
      return "d(" + std::to_string(g.mode) + ")";
    case Gen::Kind::kLoop:
      break;
  }
  const std::string& name = g_->basis_name(g.index);
  return g.mode == 0 ? name : name + "(" + std::to_string(g.mode) + ")";
}

std::string AffVirAlgebra::to_string(const AffVirElement& x) const {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [g, c] : x.terms()) {
    if (!s.empty()) s += " + ";
    if (c != Scalar(1)) s += c.to_string() + "*";
    s += to_string(g);
  }
  return s;
}

Gen AffVirAlgebra::parse_gen(const std::string& text) const {
  if (text == "K") return Gen::central_k();
  if (text == "C") return Gen::central_c();
  std::string name = text;
  long mode = 0;
  const auto open = text.find('(');
  if (open != std::string::npos) {
    if (text.back() != ')') throw Error(ErrorCode::kParse, "bad generator '" + text + "'");
    name = text.substr(0, open);
    try {
      std::size_t used = 0;
      const std::string inner = text.substr(open + 1, text.size() - open - 2);
      mode = std::stol(inner, &used);
      if (used != inner.size()) throw std::invalid_argument(inner);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "bad mode in '" + text + "'");
    }
  }
  if (name == "d") {
    if (open == std::string::npos) throw Error(ErrorCode::kParse, "Virasoro generator needs a mode");
    return Gen::vir(mode);
  }
  auto i = g_->basis_index(name);
  if (!i) throw Error(ErrorCode::kParse, "unknown generator '" + text + "'");
  return Gen::loop(*i, mode);
}

}  // namespace avk
