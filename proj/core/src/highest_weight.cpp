#include "avk/highest_weight.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "avk/error.hpp"
#include "json.hpp"

namespace avk {

// ---------------------------------------------------------------- VermaActor

VermaActor::VermaActor(std::shared_ptr<const PBW> pbw, HWParams params, bool virasoro_only)
    : pbw_(std::move(pbw)), params_(std::move(params)), virasoro_only_(virasoro_only) {
  if (params_.lambda.rank() != pbw_->algebra().g().rank()) {
    throw Error(ErrorCode::kInvalidArgument, "highest weight has the wrong rank");
  }
}

WeightKey VermaActor::weight_of(const PBWMonomial& m) const {
  const auto& lie = pbw_->algebra().g();
  WeightKey w{-m.degree(), std::vector<long>(lie.rank(), 0)};
  for (const auto& [g, e] : m.factors) {
    if (!g.is_loop()) continue;
    const auto& rc = lie.root_coords(g.index);
    for (std::size_t i = 0; i < rc.size(); ++i) w.drop[i] -= rc[i] * e;
  }
  return w;
}

const ModVec& VermaActor::act(const Gen& g, const PBWMonomial& m) const {
  auto key = std::make_pair(g, m);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  ModVec r = compute(g, m);
  return memo_.emplace(std::move(key), std::move(r)).first->second;
}

ModVec VermaActor::act(const Gen& g, const ModVec& v) const {
  ModVec out;
  for (const auto& [m, c] : v.terms())
    for (const auto& [m2, c2] : act(g, m).terms()) out.add(m2, c * c2);
  return out;
}

ModVec VermaActor::compute(const Gen& g, const PBWMonomial& m) const {
  const PBW& pbw = *pbw_;
  const auto& lie = pbw.algebra().g();
  if (virasoro_only_ && g.is_loop()) return {};
  if (std::get<0>(pbw.key(g)) == 3) {
    Scalar s;
    switch (g.kind) {
      case Gen::Kind::kK:
        s = params_.k;
        break;
      case Gen::Kind::kC:
        s = params_.c;
        break;
      case Gen::Kind::kVir:
        s = params_.l + Scalar(m.degree());
        break;
      case Gen::Kind::kLoop: {
        GWeight w = params_.lambda;
        for (const auto& [f, e] : m.factors)
          if (f.is_loop()) w = w + Scalar(e) * lie.root_weight(f.index);
        s = lie.cartan_value(w, g.index);
        break;
      }
    }
    return ModVec(m, s);
  }
  const bool neg = pbw.is_negative(g);
  if (m.empty()) return neg ? ModVec(PBWMonomial{{{g, 1}}}) : ModVec();
  const Gen f = m.factors.front().first;
  if (neg && !pbw.precedes(f, g)) {
    PBWMonomial r = m;
    if (f == g) {
      ++r.factors.front().second;
    } else {
      r.factors.insert(r.factors.begin(), {g, 1});
    }
    return ModVec(std::move(r));
  }
  PBWMonomial rest = m;
  if (--rest.factors.front().second == 0) rest.factors.erase(rest.factors.begin());
  // g f rest = f (g rest) + [g, f] rest
  ModVec out = act(f, act(g, rest));
  const AffVirElement br = pbw.algebra().bracket(g, f);
  for (const auto& [h, c] : br.terms())
    for (const auto& [m2, c2] : act(h, rest).terms()) out.add(m2, c * c2);
  return out;
}

// ---------------------------------------------------------------- construction

HWModule HWModule::build_verma(std::shared_ptr<const PBW> pbw, const HWParams& params, long depth_bound,
                               long charge_bound, std::size_t budget) {
  return build(std::move(pbw), params, depth_bound, charge_bound, false, budget);
}

HWModule HWModule::build_virasoro_verma(std::shared_ptr<const PBW> pbw, const Scalar& l, const Scalar& c,
                                        long depth_bound, std::size_t budget) {
  HWParams p{pbw->algebra().g().zero_weight(), l, Scalar(0), c};
  return build(std::move(pbw), p, depth_bound, 0, true, budget);
}

HWModule HWModule::build(std::shared_ptr<const PBW> pbw, const HWParams& params, long depth_bound, long charge_bound,
                         bool virasoro_only, std::size_t budget) {
  if (depth_bound < 0 || charge_bound < 0) throw Error(ErrorCode::kInvalidArgument, "bounds must be nonnegative");
  HWModule m;
  m.actor_ = std::make_shared<VermaActor>(std::move(pbw), params, virasoro_only);
  m.depth_bound_ = depth_bound;
  m.charge_bound_ = charge_bound;
  m.enumerate(budget);
  return m;
}

void HWModule::enumerate(std::size_t budget) {
  const auto& lie = this->lie();
  const PBW& pbw = this->pbw();
  const long n = depth_bound_;
  std::vector<Gen> gens;
  for (long m = 1; m <= n; ++m) {
    gens.push_back(Gen::vir(-m));
    if (!virasoro_only())
      for (std::size_t i = 0; i < lie.dim(); ++i) gens.push_back(Gen::loop(i, -m));
  }
  if (!virasoro_only())
    for (auto b : lie.negative_roots()) gens.push_back(Gen::loop(b, 0));
  std::sort(gens.begin(), gens.end(), [&](const Gen& a, const Gen& b) { return pbw.precedes(a, b); });

  const WeightKey top = top_weight();
  struct Step {
    WeightKey shift;
    long height;
  };
  std::vector<Step> steps;
  for (const auto& g : gens) {
    WeightKey s = shifted(top, g);
    steps.push_back({s, affine_height(s)});
  }
  const long max_height = charge_bound_ + n * (1 + lie.theta_height());

  std::size_t count = 0;
  PBWMonomial cur;
  WeightKey w = top;
  std::function<void(std::size_t, long)> rec = [&](std::size_t start, long height) {
    if (++count > budget) {
      throw Error(ErrorCode::kBoundsTooLargeForMemory,
                  "more than " + std::to_string(budget) + " monomials in the window; lower depth or charge");
    }
    spaces_[w].monos.push_back(cur);
    for (std::size_t i = start; i < gens.size(); ++i) {
      const Step& st = steps[i];
      if (w.depth + st.shift.depth > n || height + st.height > max_height) continue;
      const WeightKey saved = w;
      w.depth += st.shift.depth;
      for (std::size_t j = 0; j < w.drop.size(); ++j) w.drop[j] += st.shift.drop[j];
      if (!cur.factors.empty() && cur.factors.back().first == gens[i]) {
        ++cur.factors.back().second;
        rec(i, height + st.height);
        --cur.factors.back().second;
      } else {
        cur.factors.emplace_back(gens[i], 1);
        rec(i, height + st.height);
        cur.factors.pop_back();
      }
      w = saved;
    }
  };
  rec(0, 0);

  for (auto& [key, sp] : spaces_) {
    std::sort(sp.monos.begin(), sp.monos.end());
    for (std::size_t i = 0; i < sp.monos.size(); ++i) sp.index.emplace(sp.monos[i], i);
    weights_.push_back(key);
  }
  std::sort(weights_.begin(), weights_.end(), [&](const WeightKey& a, const WeightKey& b) {
    const long ha = affine_height(a), hb = affine_height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
}

// ---------------------------------------------------------------- weights

WeightKey HWModule::top_weight() const { return WeightKey{0, std::vector<long>(lie().rank(), 0)}; }

WeightKey HWModule::shifted(const WeightKey& w, const Gen& g) const {
  WeightKey r = w;
  r.depth -= g.degree();
  if (g.is_loop()) {
    const auto& rc = lie().root_coords(g.index);
    for (std::size_t i = 0; i < rc.size(); ++i) r.drop[i] -= rc[i];
  }
  return r;
}

long HWModule::affine_height(const WeightKey& w) const {
  return std::accumulate(w.drop.begin(), w.drop.end(), 0L) + w.depth * (1 + lie().theta_height());
}

bool HWModule::in_window(const WeightKey& w) const {
  return w.depth >= 0 && w.depth <= depth_bound_ &&
         affine_height(w) <= charge_bound_ + depth_bound_ * (1 + lie().theta_height());
}

GWeight HWModule::h_weight(const WeightKey& w) const {
  const auto& lie = this->lie();
  GWeight out = params().lambda;
  for (std::size_t i = 0; i < w.drop.size(); ++i)
    out = out - Scalar(w.drop[i]) * lie.root_weight(lie.simple_e()[i]);
  return out;
}

Scalar HWModule::d0_eigenvalue(const WeightKey& w) const { return params().l - Scalar(w.depth); }

const std::vector<PBWMonomial>& HWModule::verma_basis(const WeightKey& w) const {
  static const std::vector<PBWMonomial> kEmpty;
  auto it = spaces_.find(w);
  return it == spaces_.end() ? kEmpty : it->second.monos;
}

std::vector<PBWMonomial> HWModule::basis(const WeightKey& w) const {
  auto it = spaces_.find(w);
  if (it == spaces_.end()) return {};
  if (kind_ == Kind::kVerma) return it->second.monos;
  std::vector<PBWMonomial> out;
  for (const auto& row : it->second.proj) out.push_back(it->second.monos[row.leading_index()]);
  return out;
}

std::size_t HWModule::dim(const WeightKey& w) const {
  auto it = spaces_.find(w);
  if (it == spaces_.end()) return 0;
  return kind_ == Kind::kVerma ? it->second.monos.size() : it->second.proj.size();
}

std::size_t HWModule::total_dim() const {
  std::size_t n = 0;
  for (const auto& w : weights_) n += dim(w);
  return n;
}

const std::vector<SparseVector>& HWModule::projection(const WeightKey& w) const {
  static const std::vector<SparseVector> kEmpty;
  auto it = spaces_.find(w);
  return it == spaces_.end() ? kEmpty : it->second.proj;
}

std::size_t HWModule::monomial_index(const PBWMonomial& m) const {
  auto it = spaces_.find(weight_of(m));
  if (it != spaces_.end()) {
    auto jt = it->second.index.find(m);
    if (jt != it->second.index.end()) return jt->second;
  }
  throw Error(ErrorCode::kTruncationEscape, "monomial " + pbw().to_string(m) + " is outside the window");
}

SparseVector HWModule::verma_coords(const WeightKey& w, const ModVec& v) const {
  auto it = spaces_.find(w);
  std::vector<SparseVector::Entry> entries;
  for (const auto& [m, c] : v.terms()) {
    if (it == spaces_.end()) throw Error(ErrorCode::kTruncationEscape, "weight outside the window");
    auto jt = it->second.index.find(m);
    if (jt == it->second.index.end()) {
      throw Error(ErrorCode::kInvalidArgument, "monomial " + pbw().to_string(m) + " has a different weight");
    }
    entries.emplace_back(jt->second, c);
  }
  return SparseVector(std::move(entries));
}

SparseVector HWModule::coords(const WeightKey& w, const ModVec& v) const {
  SparseVector y = verma_coords(w, v);
  if (kind_ == Kind::kVerma) return y;
  std::vector<SparseVector::Entry> entries;
  const auto& proj = spaces_.at(w).proj;
  for (std::size_t r = 0; r < proj.size(); ++r) {
    Scalar c = proj[r].dot(y);
    if (!c.is_zero()) entries.emplace_back(r, std::move(c));
  }
  return SparseVector(std::move(entries));
}

ModVec HWModule::from_coords(const WeightKey& w, const SparseVector& x) const {
  ModVec out;
  if (x.empty()) return out;
  const auto b = basis(w);
  for (const auto& [i, c] : x.entries()) out.add(b.at(i), c);
  return out;
}

std::map<WeightKey, ModVec> HWModule::components(const ModVec& v) const {
  std::map<WeightKey, ModVec> out;
  for (const auto& [m, c] : v.terms()) out[weight_of(m)].add(m, c);
  return out;
}

ModVec HWModule::normalize(const ModVec& v) const {
  ModVec out;
  for (const auto& [w, comp] : components(v)) {
    if (!in_window(w) || spaces_.find(w) == spaces_.end()) {
      throw Error(ErrorCode::kTruncationEscape, "vector component at depth " + std::to_string(w.depth) +
                                                    " lies outside the computed window");
    }
    if (kind_ == Kind::kVerma) {
      out += comp;
    } else {
      out += from_coords(w, coords(w, comp));
    }
  }
  return out;
}

ModVec HWModule::act(const Gen& g, const ModVec& v) const { return normalize(act_exact(g, v)); }

ModVec HWModule::act(const AffVirElement& x, const ModVec& v) const {
  ModVec out;
  for (const auto& [g, c] : x.terms()) {
    ModVec t = act_exact(g, v);
    t *= c;
    out += t;
  }
  return normalize(out);
}

ModVec HWModule::act_exact(const UEnvElement& p, const ModVec& v) const {
  ModVec out;
  for (const auto& [m, c] : p.terms()) {
    ModVec t = v;
    for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it)
      for (int e = 0; e < it->second; ++e) t = act_exact(it->first, t);
    t *= c;
    out += t;
  }
  return out;
}

ModVec HWModule::act(const UEnvElement& p, const ModVec& v) const { return normalize(act_exact(p, v)); }

std::vector<Gen> HWModule::raising_set() const {
  std::vector<Gen> out;
  if (!virasoro_only()) {
    for (auto e : lie().simple_e()) out.push_back(Gen::loop(e, 0));
    for (std::size_t i = 0; i < lie().dim(); ++i) out.push_back(Gen::loop(i, 1));
  }
  out.push_back(Gen::vir(1));
  out.push_back(Gen::vir(2));
  return out;
}

std::vector<Gen> HWModule::lowering_set() const {
  std::vector<Gen> out;
  for (long m = 1; m <= depth_bound_; ++m) {
    out.push_back(Gen::vir(-m));
    if (!virasoro_only())
      for (std::size_t i = 0; i < lie().dim(); ++i) out.push_back(Gen::loop(i, -m));
  }
  if (!virasoro_only())
    for (auto b : lie().negative_roots()) out.push_back(Gen::loop(b, 0));
  return out;
}

// ---------------------------------------------------------------- singular vectors and quotient

std::vector<ModVec> HWModule::singular_vectors(const WeightKey& w) const {
  if (!in_window(w)) {
    throw Error(ErrorCode::kInsufficientHeadroom, "weight at depth " + std::to_string(w.depth) +
                                                      " is outside the window; raise the depth or charge bound");
  }
  const auto b = basis(w);
  if (b.empty()) return {};
  SparseMatrix a(0, b.size());
  for (const auto& g : raising_set()) {
    const WeightKey tw = shifted(w, g);
    if (dim(tw) == 0) continue;
    std::vector<std::vector<SparseVector::Entry>> block(dim(tw));
    for (std::size_t j = 0; j < b.size(); ++j) {
      const SparseVector y = coords(tw, act_exact(g, ModVec(b[j])));
      for (const auto& [r, c] : y.entries()) block[r].emplace_back(j, c);
    }
    for (auto& row : block)
      if (!row.empty()) a.append_row(SparseVector(std::move(row)));
  }
  std::vector<ModVec> out;
  for (const auto& k : rank_and_kernel(a).kernel) out.push_back(from_coords(w, k));
  return out;
}

std::vector<std::pair<WeightKey, ModVec>> HWModule::singular_vectors(long depth, long max_charge) const {
  if (depth > depth_bound_) {
    throw Error(ErrorCode::kInsufficientHeadroom,
                "depth " + std::to_string(depth) + " exceeds the module depth bound " + std::to_string(depth_bound_));
  }
  std::vector<std::pair<WeightKey, ModVec>> out;
  for (const auto& w : weights_) {
    if (w.depth != depth || w == top_weight()) continue;
    if (std::accumulate(w.drop.begin(), w.drop.end(), 0L) > max_charge) continue;
    for (auto& v : singular_vectors(w)) out.emplace_back(w, std::move(v));
  }
  return out;
}

HWModule HWModule::irreducible_quotient() const {
  if (kind_ != Kind::kVerma) throw Error(ErrorCode::kInvalidArgument, "module is already a quotient");
  HWModule q = *this;
  q.kind_ = Kind::kQuotient;
  const WeightKey top = top_weight();
  const auto raising = raising_set();
  for (const auto& w : weights_) {
    Space& sp = q.spaces_.at(w);
    if (w == top) {
      sp.proj = {SparseVector({{0, Scalar(1)}})};
      continue;
    }
    Subspace rows;
    for (const auto& g : raising) {
      const WeightKey tw = shifted(w, g);
      auto it = q.spaces_.find(tw);
      if (it == q.spaces_.end() || it->second.proj.empty()) continue;
      const Space& tsp = it->second;
      std::vector<std::vector<SparseVector::Entry>> block(tsp.proj.size());
      for (std::size_t j = 0; j < sp.monos.size(); ++j) {
        const ModVec& img = actor_->act(g, sp.monos[j]);
        if (img.is_zero()) continue;
        std::vector<SparseVector::Entry> ye;
        for (const auto& [m, c] : img.terms()) ye.emplace_back(tsp.index.at(m), c);
        const SparseVector y(std::move(ye));
        for (std::size_t r = 0; r < tsp.proj.size(); ++r) {
          Scalar c = tsp.proj[r].dot(y);
          if (!c.is_zero()) block[r].emplace_back(j, std::move(c));
        }
      }
      for (auto& row : block)
        if (!row.empty()) rows.add(SparseVector(std::move(row)));
    }
    sp.proj = rows.reduced_basis();
  }
  return q;
}

AffVirElement HWModule::omega(const Gen& g) const {
  switch (g.kind) {
    case Gen::Kind::kK:
    case Gen::Kind::kC:
      return AffVirElement(g);
    case Gen::Kind::kVir:
      return AffVirElement(Gen::vir(-g.mode));
    case Gen::Kind::kLoop:
      break;
  }
  AffVirElement out;
  const GVec& om = lie().chevalley_anti(g.index);
  for (std::size_t k = 0; k < om.size(); ++k) out.add(Gen::loop(k, -g.mode), om[k]);
  return out;
}

std::vector<SparseVector> HWModule::shapovalov_gram(const WeightKey& w) const {
  const auto& monos = verma_basis(w);
  std::vector<SparseVector> gram;
  for (const auto& p : monos) {
    std::vector<SparseVector::Entry> row;
    for (std::size_t q = 0; q < monos.size(); ++q) {
      ModVec v(monos[q]);
      for (const auto& [g, e] : p.factors) {
        const AffVirElement og = omega(g);
        for (int t = 0; t < e; ++t) {
          ModVec nv;
          for (const auto& [h, c] : og.terms()) {
            ModVec part = act_exact(h, v);
            part *= c;
            nv += part;
          }
          v = std::move(nv);
        }
      }
      Scalar c = v.coeff(PBWMonomial{});
      if (!c.is_zero()) row.emplace_back(q, std::move(c));
    }
    gram.emplace_back(std::move(row));
  }
  return gram;
}

std::vector<SparseVector> HWModule::shapovalov_radical(const WeightKey& w) const {
  const auto gram = shapovalov_gram(w);
  SparseMatrix m(0, verma_dim(w));
  for (const auto& r : gram) m.append_row(r);
  return rank_and_kernel(m).kernel;
}

// ---------------------------------------------------------------- JSON dump

namespace {

nlohmann::json scalar_list(const std::vector<Scalar>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& s : v) a.push_back(s.to_string());
  return a;
}

}  // namespace

std::string dump_module_json(const HWModule& m) {
  nlohmann::json j;
  j["algebra"] = m.lie().name();
  j["kind"] = m.kind() == HWModule::Kind::kVerma ? "verma" : "quotient";
  j["virasoro_only"] = m.virasoro_only();
  j["params"] = {{"lambda", scalar_list(m.params().lambda.coords)},
                 {"l", m.params().l.to_string()},
                 {"k", m.params().k.to_string()},
                 {"c", m.params().c.to_string()}};
  j["bounds"] = {{"depth", m.depth_bound()}, {"charge", m.charge_bound()}};
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : m.weights()) {
    nlohmann::json e;
    e["depth"] = w.depth;
    e["drop"] = w.drop;
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& mono : m.verma_basis(w)) basis.push_back(m.pbw().to_string(mono));
    e["verma_basis"] = basis;
    if (m.kind() == HWModule::Kind::kQuotient) {
      nlohmann::json triplets = nlohmann::json::array();
      const auto& proj = m.projection(w);
      for (std::size_t r = 0; r < proj.size(); ++r)
        for (const auto& [c, v] : proj[r].entries()) triplets.push_back({r, c, v.to_string()});
      e["projection"] = triplets;
      e["dim"] = proj.size();
    } else {
      e["dim"] = m.verma_dim(w);
    }
    ws.push_back(e);
  }
  j["weights"] = ws;
  return j.dump(2) + "\n";
}

HWModule load_module_json(const std::string& text, std::shared_ptr<const PBW> pbw) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    if (j.at("algebra").get<std::string>() != pbw->algebra().g().name()) {
      throw Error(ErrorCode::kParse, "dump was made for algebra " + j.at("algebra").get<std::string>());
    }
    std::vector<Scalar> lam;
    for (const auto& s : j.at("params").at("lambda")) lam.push_back(Scalar::parse(s.get<std::string>()));
    const auto& p = j.at("params");
    const long depth = j.at("bounds").at("depth").get<long>();
    const long charge = j.at("bounds").at("charge").get<long>();
    HWModule m = j.at("virasoro_only").get<bool>()
                     ? HWModule::build_virasoro_verma(pbw, Scalar::parse(p.at("l").get<std::string>()),
                                                      Scalar::parse(p.at("c").get<std::string>()), depth)
                     : HWModule::build_verma(pbw,
                                             HWParams{GWeight(lam), Scalar::parse(p.at("l").get<std::string>()),
                                                      Scalar::parse(p.at("k").get<std::string>()),
                                                      Scalar::parse(p.at("c").get<std::string>())},
                                             depth, charge);
    if (j.at("kind").get<std::string>() == "quotient") m = m.irreducible_quotient();
    for (const auto& e : j.at("weights")) {
      const WeightKey w{e.at("depth").get<long>(), e.at("drop").get<std::vector<long>>()};
      const auto& basis = m.verma_basis(w);
      const auto& listed = e.at("verma_basis");
      if (listed.size() != basis.size()) throw Error(ErrorCode::kParse, "basis size mismatch in dump");
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (pbw->parse_monomial(listed[i].get<std::string>()) != basis[i]) {
          throw Error(ErrorCode::kParse, "basis monomial mismatch in dump");
        }
      }
      if (m.kind() == HWModule::Kind::kQuotient) {
        const auto& proj = m.projection(w);
        for (const auto& t : e.at("projection")) {
          const auto r = t.at(0).get<std::size_t>(), c = t.at(1).get<std::size_t>();
          if (r >= proj.size() || proj[r].get(c) != Scalar::parse(t.at(2).get<std::string>())) {
            throw Error(ErrorCode::kParse, "projection mismatch in dump");
          }
        }
      }
    }
    if (j.at("weights").size() != m.weights().size()) throw Error(ErrorCode::kParse, "weight count mismatch in dump");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed module dump: ") + e.what());
  }
}

}  // namespace avk
