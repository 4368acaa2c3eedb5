#include "avk/ann.hpp"

#include <algorithm>
#include <numeric>

#include "avk/error.hpp"
#include "avk/sugawara.hpp"
#include "json.hpp"

namespace avk {

namespace {

const std::vector<PBWMonomial>* monomials_of(const HWModule& m, const WeightKey& w) {
  if (!m.in_window(w)) return nullptr;
  const auto& ws = m.weights();
  if (std::find(ws.begin(), ws.end(), w) == ws.end()) return nullptr;
  return &m.verma_basis(w);
}

WeightKey difference(const WeightKey& a, const WeightKey& b) {
  WeightKey d{a.depth - b.depth, a.drop};
  for (std::size_t i = 0; i < d.drop.size(); ++i) d.drop[i] -= b.drop[i];
  return d;
}

// Singular vectors of a Verma module that are new modulo the submodule generated by earlier ones.
std::vector<UEnvElement> new_singular(const HWModule& m, const std::vector<std::pair<WeightKey, ModVec>>& found) {
  std::vector<std::pair<WeightKey, ModVec>> kept;
  std::map<WeightKey, std::vector<ModVec>> by_weight;
  for (const auto& [w, v] : found) by_weight[w].push_back(v);
  for (const auto& w : m.weights()) {
    auto it = by_weight.find(w);
    if (it == by_weight.end()) continue;
    Subspace span;
    for (const auto& [w0, s] : kept) {
      const WeightKey d = difference(w, w0);
      const auto* monos = monomials_of(m, d);
      if (monos == nullptr) continue;
      for (const auto& q : *monos) span.add(m.verma_coords(w, m.act_exact(UEnvElement(q), s)));
    }
    for (const auto& v : it->second)
      if (span.add(m.verma_coords(w, v))) kept.emplace_back(w, v);
  }
  std::vector<UEnvElement> out;
  for (auto& [w, v] : kept) out.push_back(std::move(v));
  return out;
}

long affine_height_of(const SimpleLieAlgebra& lie, const WeightKey& w) {
  return std::accumulate(w.drop.begin(), w.drop.end(), 0L) + w.depth * (1 + lie.theta_height());
}

std::string d_to_D(std::string s) {
  for (std::size_t p = s.find("d("); p != std::string::npos; p = s.find("d(", p + 1)) s[p] = 'D';
  return s;
}

}  // namespace

std::vector<UEnvElement> virasoro_singular_generators(std::shared_ptr<const PBW> pbw, const Scalar& l,
                                                      const Scalar& c, long depth) {
  const HWModule m = HWModule::build_virasoro_verma(pbw, l, c, depth);
  std::vector<std::pair<WeightKey, ModVec>> found;
  for (long d = 1; d <= depth; ++d)
    for (auto& p : m.singular_vectors(d, 0)) found.push_back(std::move(p));
  return new_singular(m, found);
}

std::vector<UEnvElement> singular_generators(const HWModule& verma, long depth, long charge) {
  std::vector<std::pair<WeightKey, ModVec>> found;
  for (long d = 0; d <= std::min(depth, verma.depth_bound()); ++d)
    for (auto& p : verma.singular_vectors(d, charge)) found.push_back(std::move(p));
  return new_singular(verma, found);
}

AnnGenerators ann_generators(std::shared_ptr<const PBW> pbw, const HWParams& params, const AnnOptions& opts) {
  const auto& lie = pbw->algebra().g();
  const bool dominant = lie.is_dominant(params.lambda, params.k);
  if (opts.path == AnnOptions::Path::kDominant && !dominant) {
    throw Error(ErrorCode::kNotDominant, "lambda + k Lambda_0 is not dominant");
  }
  if ((params.k + lie.dual_coxeter()).is_zero()) {
    throw Error(ErrorCode::kLevelIsMinusDualCoxeter, "the level k equals -g");
  }
  AnnGenerators out;
  const bool use_formula = dominant && opts.path != AnnOptions::Path::kComputed;
  if (use_formula) {
    out.provenance = AnnProvenance::kDominantFormula;
    out.search_depth = opts.virasoro_depth;
    const HWModule top = HWModule::build_verma(pbw, params, 0, 0);
    const SugawaraContext ctx(top);
    out.virasoro_singular = virasoro_singular_generators(pbw, ctx.l_prime(), ctx.c_prime(), opts.virasoro_depth);
    for (const auto& f : out.virasoro_singular) {
      ModVec e;
      for (const auto& [mono, coef] : f.terms()) e += coef * ctx.apply_D_word(mono, ModVec::one());
      out.generators.push_back(e);
      out.labels.push_back(d_to_D(pbw->to_string(f)));
    }
    const long e0 = *(params.k - lie.theta_coroot_value(params.lambda)).to_long() + 1;
    const PBWMonomial f0 = pbw->monomial({{Gen::loop(lie.theta_vector(), -1), static_cast<int>(e0)}});
    out.generators.emplace_back(f0);
    out.labels.push_back(pbw->to_string(f0));
    for (std::size_t i = 0; i < lie.rank(); ++i) {
      const long ei = *params.lambda.coords[i].to_long() + 1;
      const PBWMonomial fi = pbw->monomial({{Gen::loop(lie.simple_f()[i], 0), static_cast<int>(ei)}});
      out.generators.emplace_back(fi);
      out.labels.push_back(pbw->to_string(fi));
    }
  } else {
    out.provenance = AnnProvenance::kComputedSingular;
    out.search_depth = opts.depth;
    const HWModule m = HWModule::build_verma(pbw, params, opts.depth, opts.charge);
    out.generators = singular_generators(m, opts.depth, opts.charge);
    for (const auto& g : out.generators) out.labels.push_back(pbw->to_string(g));
  }

  // Check against the irreducible quotient on a window holding every generator up to verify_depth.
  const VermaActor weights(pbw, params, false);
  long depth = 0, charge = 0;
  std::vector<WeightKey> gw;
  for (const auto& g : out.generators) {
    gw.push_back(weights.weight_of(g.terms().begin()->first));
    if (gw.back().depth > opts.verify_depth) continue;
    depth = std::max(depth, gw.back().depth);
  }
  for (const auto& w : gw)
    if (w.depth <= opts.verify_depth)
      charge = std::max(charge, affine_height_of(lie, w) - depth * (1 + lie.theta_height()));
  out.verified.assign(out.generators.size(), false);
  if (!out.generators.empty()) {
    const HWModule q = HWModule::build_verma(pbw, params, depth, charge).irreducible_quotient();
    for (std::size_t i = 0; i < out.generators.size(); ++i) {
      if (gw[i].depth > opts.verify_depth) continue;
      out.verified[i] = q.normalize(out.generators[i]).is_zero();
      if (!out.verified[i]) {
        throw Error(ErrorCode::kInvalidArgument, "generator " + out.labels[i] + " does not annihilate u-bar");
      }
    }
  }
  return out;
}

std::string AnnGenerators::to_json(const PBW& pbw) const {
  nlohmann::json j;
  j["provenance"] = provenance == AnnProvenance::kDominantFormula ? "dominantFormula" : "computedSingular";
  j["search_depth"] = search_depth;
  nlohmann::json gens = nlohmann::json::array();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    gens.push_back({{"label", labels[i]}, {"element", pbw.to_string(generators[i])}, {"verified", bool(verified[i])}});
  }
  j["generators"] = gens;
  nlohmann::json vir = nlohmann::json::array();
  for (const auto& f : virasoro_singular) vir.push_back(pbw.to_string(f));
  j["virasoro_singular"] = vir;
  return j.dump(2) + "\n";
}

}  // namespace avk
