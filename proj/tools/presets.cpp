#include "presets.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "avk/ann.hpp"
#include "avk/error.hpp"
#include "avk/irreducibility.hpp"
#include "avk/sugawara.hpp"

namespace avk::cli {

namespace {

using nlohmann::json;

class Report {
 public:
  explicit Report(std::string name) { j_["preset"] = std::move(name); }

  void check(const std::string& name, const json& expected, const json& actual) {
    const bool pass = expected == actual;
    j_["checks"].push_back({{"name", name}, {"expected", expected}, {"actual", actual}, {"pass", pass}});
    pass_ = pass_ && pass;
  }
  json& operator[](const std::string& key) { return j_[key]; }
  json finish() {
    j_["pass"] = pass_;
    return j_;
  }

 private:
  json j_;
  bool pass_ = true;
};

Scalar arg_or(const std::string& s, const Scalar& fallback) { return s.empty() ? fallback : Scalar::parse(s); }

GWeight wt(long m) { return GWeight({Scalar(m)}); }

HWParams hw(const Scalar& lam, const Scalar& l, const Scalar& k, const Scalar& c) {
  return HWParams{GWeight({lam}), l, k, c};
}

IrredOptions irred_options(const PresetOptions& o) {
  IrredOptions io;
  io.window = o.window;
  io.psi = o.psi_left ? PsiConvention::kLeft : PsiConvention::kRight;
  return io;
}

// Verdict plus a direct rank check at every n of the window.
void verdict_checks(Report& r, const PhiContext& ctx, bool expect_irreducible) {
  const auto gens = ann_generators(ctx.pbw_ptr(), ctx.params().hw, ctx.options().ann);
  const IrredVerdict v = is_irreducible(ctx, gens);
  r["verdict"] = json::parse(v.to_json());
  r.check("verdict irreducible", expect_irreducible, v.irreducible);
  if (!expect_irreducible) return;
  r.check("exceptional set", json::array(), v.exceptional_n);
  const PhiImage img = phi_image_rank(ctx, gens, ctx.options().p_degree_bound);
  const long w = ctx.options().window;
  json drops = json::array();
  for (long n = -w; n <= w; ++n)
    if (rank_at(img, n) < ctx.rows()) drops.push_back(n);
  r.check("rank drops in [-" + std::to_string(w) + ", " + std::to_string(w) + "]", json::array(), drops);
}

json factorization(std::shared_ptr<const PBW> pbw, const HWParams& p, long depth) {
  const HWModule m = HWModule::build_verma(pbw, p, depth, depth);
  const SugawaraContext ctx(m);
  return json::parse(factorization_report(ctx, depth).to_json());
}

json example_45(std::shared_ptr<const PBW> pbw, const PresetOptions& o) {
  Report r("example-4.5");
  const HWParams p = hw(0, 0, 1, 2);
  const TensorParams tp{p, wt(o.mu > 0 ? o.mu : 1), arg_or(o.a, 0), arg_or(o.b, Scalar(1, 2))};
  r["parameters"] = {{"lambda", "0"}, {"l", "0"}, {"k", "1"}, {"c", "2"}, {"mu", tp.mu.coords[0].to_string()},
                     {"a", tp.a.to_string()}, {"b", tp.b.to_string()}};

  const json fr = factorization(pbw, p, 1);
  r.check("l'", "0", fr["l_prime"]);
  r.check("c'", "1", fr["c_prime"]);

  const HWModule m = HWModule::build_verma(pbw, p, 1, 1);
  const SugawaraContext sc(m);
  const ModVec d = sc.apply_D(-1, ModVec::one());
  const ModVec d1(pbw->parse_monomial("d(-1)"));
  r.check("D(-1)u in M", pbw->to_string(d1 + Scalar(1, 3) * ModVec(pbw->parse_monomial("e(-1) f"))),
          pbw->to_string(d));
  const HWModule q = m.irreducible_quotient();
  r.check("D(-1)u - d(-1)u vanishes in L", true, q.normalize(d + Scalar(-1) * d1).is_zero());

  const auto gens = ann_generators(pbw, p);
  r["ann"] = json::parse(gens.to_json(*pbw));
  r.check("Ann generators", json({"D(-1)", "e(-1)^2", "f"}), gens.labels);

  json psi_bad = json::array();
  for (long n = -10; n <= 10; ++n)
    if (psi_at(d1.terms().begin()->first, tp.a.frac(), tp.b, n) != tp.b - tp.a.frac() - n - 1) psi_bad.push_back(n);
  r.check("psi_n(d(-1)) = b - a - n - 1", json::array(), psi_bad);

  const PhiContext ctx(pbw, tp, irred_options(o));
  verdict_checks(r, ctx, true);
  return r.finish();
}

json example_46(std::shared_ptr<const PBW> pbw, const PresetOptions& o) {
  Report r("example-4.6");
  const HWParams p = hw(2, Scalar(3, 2), 2, Scalar(5, 2));
  const TensorParams tp{p, wt(o.mu > 0 ? o.mu : 3), arg_or(o.a, Scalar(1, 3)), arg_or(o.b, Scalar(2, 7))};
  r["parameters"] = {{"lambda", "2"}, {"l", "3/2"}, {"k", "2"}, {"c", "5/2"}, {"mu", tp.mu.coords[0].to_string()},
                     {"a", tp.a.to_string()}, {"b", tp.b.to_string()}};

  const json fr = factorization(pbw, p, 1);
  r.check("l'", "2", fr["l_prime"]);
  r.check("c'", "1", fr["c_prime"]);
  r.check("Virasoro singular generators of M_V(2, 1) to depth 6", json::array(),
          json::array_t(virasoro_singular_generators(pbw, 2, 1, 6).size()));

  const auto gens = ann_generators(pbw, p);
  r["ann"] = json::parse(gens.to_json(*pbw));
  r.check("Ann generators", json({"e(-1)", "f^3"}), gens.labels);

  const PhiContext ctx(pbw, tp, irred_options(o));
  verdict_checks(r, ctx, true);
  return r.finish();
}

json corollary_44(std::shared_ptr<const PBW> pbw, const PresetOptions& o) {
  Report r("corollary-4.4");
  const HWParams p = hw(Scalar(1, 3), Scalar(2, 7), Scalar(5, 11), Scalar(3, 13));
  const TensorParams tp{p, wt(o.mu > 0 ? o.mu : 1), arg_or(o.a, Scalar(1, 3)), arg_or(o.b, Scalar(2, 7))};
  r["parameters"] = {{"lambda", "1/3"}, {"l", "2/7"}, {"k", "5/11"}, {"c", "3/13"},
                     {"mu", tp.mu.coords[0].to_string()}, {"a", tp.a.to_string()}, {"b", tp.b.to_string()}};

  const HWModule m = HWModule::build_verma(pbw, p, 3, 3);
  r.check("singular generators to depth 3", 0, singular_generators(m, 3, 3).size());
  const PhiContext ctx(pbw, tp, irred_options(o));
  verdict_checks(r, ctx, false);

  // Saturating the full slices n >= 1 leaves slice 0 proper.
  const TensorModule t(pbw, tp, 1, 2, o.closure_window);
  std::vector<std::pair<long, SparseVector>> seeds;
  for (long n = 1; n <= t.window(); ++n)
    for (std::size_t i = 0; i < t.slice_dim(); ++i) seeds.emplace_back(n, SparseVector({{i, Scalar(1)}}));
  const SliceFamily fam = submodule_closure(t, seeds);
  r["closure"] = {{"slice_dim", fam.slice_dim}, {"slice_0_dim", fam.slice(0).dim()}};
  r.check("closure slice 0 proper", true, fam.slice(0).dim() < fam.slice_dim);
  return r.finish();
}

json lemma_49(std::shared_ptr<const PBW> pbw, const PresetOptions&) {
  Report r("lemma-4.9");
  const std::vector<std::tuple<std::string, HWParams, std::string, std::string>> cases{
      {"vacuum level one", hw(0, 0, 1, 2), "0", "1"},
      {"level two", hw(2, Scalar(3, 2), 2, Scalar(5, 2)), "2", "1"},
  };
  for (const auto& [name, p, lp, cp] : cases) {
    const json fr = factorization(pbw, p, 2);
    r["reports"][name] = fr;
    r.check(name + " l'", lp, fr["l_prime"]);
    r.check(name + " c'", cp, fr["c_prime"]);
    r.check(name + " identities", true, fr["all_pass"]);
  }
  return r.finish();
}

using Runner = std::function<json(std::shared_ptr<const PBW>, const PresetOptions&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> r{
      {"example-4.5", example_45},
      {"example-4.6", example_46},
      {"corollary-4.4", corollary_44},
      {"lemma-4.9", lemma_49},
  };
  return r;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : runners()) out.push_back(k);
  return out;
}

json run_preset(const std::string& name, std::shared_ptr<const PBW> pbw, const PresetOptions& opts) {
  auto it = runners().find(name);
  if (it == runners().end()) throw Error(ErrorCode::kPresetUnknown, "no preset named " + name);
  return it->second(std::move(pbw), opts);
}

}  // namespace avk::cli
