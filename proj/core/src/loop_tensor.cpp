#include "avk/loop_tensor.hpp"

#include "avk/error.hpp"

namespace avk {

namespace {

void add_scaled(FiniteModule::Vec& acc, const Scalar& s, const FiniteModule::Vec& v) {
  if (acc.empty()) acc.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) acc[i] += s * v[i];
}

std::vector<ModVec>& slot(TensorVector& t, long n, std::size_t dim) {
  auto& c = t.comps[n];
  if (c.empty()) c.resize(dim);
  return c;
}

}  // namespace

// ---------------------------------------------------------------- loop module

LoopModule::LoopModule(const SimpleLieAlgebra& lie, const GWeight& mu, const Scalar& a, const Scalar& b)
    : mu_(finite_irrep(lie, mu)), a_(a.frac()), b_(b) {}

LoopModule::Vector LoopModule::act(const AffVirElement& x, const Vector& w) const {
  Vector out;
  for (const auto& [g, coef] : x.terms()) {
    for (const auto& [n, v] : w) {
      switch (g.kind) {
        case Gen::Kind::kK:
        case Gen::Kind::kC:
          break;
        case Gen::Kind::kVir:
          add_scaled(out[n + g.mode], coef * (a_ + b_ * Scalar(g.mode) + Scalar(n)), v);
          break;
        case Gen::Kind::kLoop:
          add_scaled(out[n + g.mode], coef, mu_.apply(g.index, v));
          break;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    bool zero = true;
    for (const auto& s : it->second) zero = zero && s.is_zero();
    it = zero ? out.erase(it) : std::next(it);
  }
  return out;
}

// ---------------------------------------------------------------- tensor vectors

TensorVector TensorVector::normalized() const {
  TensorVector out;
  for (const auto& [n, c] : comps) {
    bool zero = true;
    for (const auto& v : c) zero = zero && v.is_zero();
    if (!zero) out.comps.emplace(n, c);
  }
  return out;
}

// ---------------------------------------------------------------- tensor module

TensorModule::TensorModule(std::shared_ptr<const PBW> pbw, const TensorParams& params, long depth, long charge,
                           long window)
    : TensorModule(HWModule::build_verma(std::move(pbw), params.hw, depth, charge).irreducible_quotient(), params.mu,
                   params.a, params.b, window) {}

TensorModule::TensorModule(HWModule top, const GWeight& mu, const Scalar& a, const Scalar& b, long window)
    : top_(std::move(top)),
      mu_(finite_irrep(top_.lie(), mu)),
      a_(a.frac()),
      b_(b),
      window_(window < 0 ? top_.depth_bound() + 4 : window) {
  init();
}

void TensorModule::init() {
  for (const auto& w : top_.weights()) {
    for (const auto& m : top_.basis(w)) {
      top_index_.emplace(m, top_basis_.size());
      top_basis_.push_back(m);
      top_depth_.push_back(w.depth);
      const GWeight hw = top_.h_weight(w);
      for (std::size_t j = 0; j < mu_.dim(); ++j) weights_.push_back(hw + mu_.weight(j));
    }
  }
}

SparseVector TensorModule::coords(const std::vector<ModVec>& slice) const {
  std::vector<SparseVector::Entry> e;
  for (std::size_t j = 0; j < slice.size(); ++j) {
    for (const auto& [m, c] : slice[j].terms()) {
      auto it = top_index_.find(m);
      if (it == top_index_.end()) {
        throw Error(ErrorCode::kTruncationEscape, "monomial " + top_.pbw().to_string(m) + " is not a basis vector");
      }
      e.emplace_back(index(it->second, j), c);
    }
  }
  return SparseVector(std::move(e));
}

std::vector<ModVec> TensorModule::from_coords(const SparseVector& x) const {
  std::vector<ModVec> out(mu_.dim());
  for (const auto& [i, c] : x.entries()) out[i % mu_.dim()].add(top_basis_[i / mu_.dim()], c);
  return out;
}

SparseVector TensorModule::seed() const { return SparseVector({{index(0, mu_.highest_vector_index()), Scalar(1)}}); }

TensorVector TensorModule::shifted_act(const AffVirElement& x, const TensorVector& w) const {
  TensorVector out;
  const std::size_t dm = mu_.dim();
  const auto& p = top_.params();
  for (const auto& [g, coef] : x.terms()) {
    for (const auto& [n, comp] : w.comps) {
      for (std::size_t j = 0; j < comp.size(); ++j) {
        const ModVec& v = comp[j];
        if (v.is_zero()) continue;
        switch (g.kind) {
          case Gen::Kind::kK:
            slot(out, n, dm)[j] += (coef * p.k) * v;
            break;
          case Gen::Kind::kC:
            slot(out, n, dm)[j] += (coef * p.c) * v;
            break;
          case Gen::Kind::kVir: {
            auto& dst = slot(out, n + g.mode, dm);
            dst[j] += coef * top_.act(g, v);
            for (const auto& [m, c] : v.terms())
              dst[j].add(m, coef * c * (a_ + Scalar(n - m.degree()) + b_ * Scalar(g.mode)));
            break;
          }
          case Gen::Kind::kLoop: {
            auto& dst = slot(out, n + g.mode, dm);
            dst[j] += coef * top_.act(g, v);
            const auto xv = mu_.apply(g.index, mu_.unit(j));
            for (std::size_t i = 0; i < dm; ++i)
              if (!xv[i].is_zero()) dst[i] += (coef * xv[i]) * v;
            break;
          }
        }
      }
    }
  }
  return out.normalized();
}

TensorVector TensorModule::plain_act(const AffVirElement& x, const TensorVector& w) const {
  TensorVector out;
  const std::size_t dm = mu_.dim();
  const auto& p = top_.params();
  for (const auto& [g, coef] : x.terms()) {
    for (const auto& [n, comp] : w.comps) {
      for (std::size_t j = 0; j < comp.size(); ++j) {
        const ModVec& v = comp[j];
        if (v.is_zero()) continue;
        switch (g.kind) {
          case Gen::Kind::kK:
            slot(out, n, dm)[j] += (coef * p.k) * v;
            break;
          case Gen::Kind::kC:
            slot(out, n, dm)[j] += (coef * p.c) * v;
            break;
          case Gen::Kind::kVir:
            slot(out, n, dm)[j] += coef * top_.act(g, v);
            slot(out, n + g.mode, dm)[j] += (coef * (a_ + b_ * Scalar(g.mode) + Scalar(n))) * v;
            break;
          case Gen::Kind::kLoop: {
            slot(out, n, dm)[j] += coef * top_.act(g, v);
            const auto xv = mu_.apply(g.index, mu_.unit(j));
            auto& dst = slot(out, n + g.mode, dm);
            for (std::size_t i = 0; i < dm; ++i)
              if (!xv[i].is_zero()) dst[i] += (coef * xv[i]) * v;
            break;
          }
        }
      }
    }
  }
  return out.normalized();
}

TensorVector TensorModule::unshift(const TensorVector& w) const {
  TensorVector out;
  for (const auto& [n, comp] : w.comps)
    for (std::size_t j = 0; j < comp.size(); ++j)
      for (const auto& [m, c] : comp[j].terms()) slot(out, n + m.degree(), mu_.dim())[j].add(m, c);
  return out.normalized();
}

TensorVector TensorModule::shift(const TensorVector& w) const {
  TensorVector out;
  for (const auto& [n, comp] : w.comps)
    for (std::size_t j = 0; j < comp.size(); ++j)
      for (const auto& [m, c] : comp[j].terms()) slot(out, n - m.degree(), mu_.dim())[j].add(m, c);
  return out.normalized();
}

std::vector<TensorVector> TensorModule::weight_basis(long n) const {
  std::vector<TensorVector> out;
  for (std::size_t i = 0; i < slice_dim(); ++i) {
    TensorVector t;
    t.comps[n] = from_coords(SparseVector({{i, Scalar(1)}}));
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Gen> TensorModule::moves(long max_mode) const {
  std::vector<Gen> out;
  for (long m = -max_mode; m <= max_mode; ++m) {
    if (!top_.virasoro_only())
      for (std::size_t x = 0; x < lie().dim(); ++x) out.push_back(Gen::loop(x, m));
    if (m != 0) out.push_back(Gen::vir(m));
  }
  return out;
}

const TensorModule::MoveTable& TensorModule::table(const Gen& g) const {
  auto it = tables_.find(g);
  if (it != tables_.end()) return it->second;
  MoveTable t;
  for (const auto& m : top_basis_) {
    try {
      const ModVec img = top_.act(g, ModVec(m));
      std::vector<std::pair<std::size_t, Scalar>> e;
      for (const auto& [m2, c] : img.terms()) e.emplace_back(top_index_.at(m2), c);
      t.top.emplace_back(std::move(e));
      t.safe.push_back(true);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kTruncationEscape) throw;
      t.top.emplace_back(std::nullopt);
      t.safe.push_back(false);
    }
  }
  return tables_.emplace(g, std::move(t)).first->second;
}

const std::vector<bool>& TensorModule::safe(const Gen& g) const { return table(g).safe; }

std::optional<SparseVector> TensorModule::apply(const Gen& g, long n, const SparseVector& x, bool truncate) const {
  if (g.is_central()) {
    SparseVector y = x;
    y.scale(g.kind == Gen::Kind::kK ? top_.params().k : top_.params().c);
    return y;
  }
  const MoveTable& t = table(g);
  const std::size_t dm = mu_.dim();
  std::vector<SparseVector::Entry> e;
  for (const auto& [idx, c] : x.entries()) {
    const std::size_t li = idx / dm, j = idx % dm;
    if (t.top[li]) {
      for (const auto& [lk, ck] : *t.top[li]) e.emplace_back(index(lk, j), c * ck);
    } else if (!truncate) {
      return std::nullopt;
    }
    switch (g.kind) {
      case Gen::Kind::kVir:
        e.emplace_back(idx, c * (a_ + Scalar(n + top_depth_[li]) + b_ * Scalar(g.mode)));
        break;
      case Gen::Kind::kLoop: {
        const auto& mat = mu_.matrix(g.index);
        for (std::size_t i = 0; i < dm; ++i)
          if (!mat[i][j].is_zero()) e.emplace_back(index(li, i), c * mat[i][j]);
        break;
      }
      default:
        break;
    }
  }
  return SparseVector(std::move(e));
}

}  // namespace avk
