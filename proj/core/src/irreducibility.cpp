#include "avk/irreducibility.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <set>

#include "avk/error.hpp"
#include "json.hpp"

namespace avk {

// ---------------------------------------------------------------- psi and circ

namespace {

std::vector<long> psi_sequence(const PBWMonomial& y, PsiConvention conv) {
  std::vector<long> ks;
  for (const auto& [g, e] : y.factors) {
    if (!g.is_vir() || g.mode >= 0) throw Error(ErrorCode::kNonNegativePart, "psi takes negative Virasoro monomials");
    for (int i = 0; i < e; ++i) ks.push_back(-g.mode);
  }
  if (conv == PsiConvention::kRight) std::reverse(ks.begin(), ks.end());
  return ks;
}

}  // namespace

NuPoly psi(const PBWMonomial& y, const Scalar& a, const Scalar& b, PsiConvention conv) {
  NuPoly out(1);
  long sum = 0;
  for (long k : psi_sequence(y, conv)) {
    sum += k;
    out *= NuPoly::linear(Scalar(k) * b - a - Scalar(sum), Scalar(-1));
  }
  return out;
}

Scalar psi_at(const PBWMonomial& y, const Scalar& a, const Scalar& b, long n, PsiConvention conv) {
  Scalar out(1);
  long sum = 0;
  for (long k : psi_sequence(y, conv)) {
    sum += k;
    out *= Scalar(k) * b - a - Scalar(n + sum);
  }
  return out;
}

FiniteModule::Vec circ(const FiniteModule& m, const std::vector<std::size_t>& word, const FiniteModule::Vec& v) {
  FiniteModule::Vec out = v;
  for (std::size_t g : word) out = m.apply(g, out);
  if (word.size() % 2 == 1)
    for (auto& s : out) s = -s;
  return out;
}

// ---------------------------------------------------------------- phi

namespace {

long two_rho(const SimpleLieAlgebra& lie, const GWeight& w) { return *lie.two_rho_coroot_value(w).to_long(); }

}  // namespace

PhiContext::PhiContext(std::shared_ptr<const PBW> pbw, const TensorParams& params, const IrredOptions& opts)
    : pbw_(pbw),
      params_(params),
      opts_(opts),
      dominant_(pbw->algebra().g().is_dominant(params.hw.lambda, params.hw.k)),
      top_(HWModule::build_verma(pbw, params.hw, 0,
                                 pbw->algebra().g().is_dominant_integral(params.hw.lambda)
                                     ? two_rho(pbw->algebra().g(), params.hw.lambda)
                                     : opts.top_charge)
               .irreducible_quotient()),
      mu_(finite_irrep(pbw->algebra().g(), params.mu)) {
  params_.a = params_.a.frac();
  if (std::all_of(params.mu.coords.begin(), params.mu.coords.end(), [](const Scalar& s) { return s.is_zero(); })) {
    throw Error(ErrorCode::kZeroLoopWeight, "the loop module weight mu must be nonzero");
  }
  for (const auto& w : top_.weights())
    for (const auto& m : top_.basis(w)) {
      top_index_.emplace(m, top_basis_.size());
      top_basis_.push_back(m);
    }
}

std::optional<SparseVector> PhiContext::top_vector(const PBWMonomial& z) const {
  // Past the lowest weight of a finite L(lambda) every vector vanishes.
  if (pbw_->algebra().g().is_dominant_integral(params_.hw.lambda) && !top_.in_window(top_.weight_of(z))) {
    return SparseVector{};
  }
  ModVec v;
  try {
    v = top_.normalize(ModVec(z));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTruncationEscape) throw;
    return std::nullopt;
  }
  std::vector<SparseVector::Entry> e;
  for (const auto& [m, c] : v.terms()) e.emplace_back(top_index_.at(m), c);
  return SparseVector(std::move(e));
}

SparseVector PhiContext::top_act(std::size_t x, const SparseVector& v) const {
  const bool finite = pbw_->algebra().g().is_dominant_integral(params_.hw.lambda);
  std::vector<SparseVector::Entry> e;
  for (const auto& [i, c] : v.entries()) {
    ModVec img;
    try {
      img = top_.act(Gen::loop(x, 0), ModVec(top_basis_.at(i)));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kTruncationEscape || !finite) throw;
      continue;
    }
    for (const auto& [m, ci] : img.terms()) e.emplace_back(top_index_.at(m), c * ci);
  }
  return SparseVector(std::move(e));
}

std::optional<std::vector<NuPoly>> PhiContext::phi_truncated(const UEnvElement& p, const FiniteModule::Vec& v) const {
  std::vector<NuPoly> out(rows());
  const std::size_t dm = mu_.dim();
  for (const auto& [mono, coef] : p.terms()) {
    const PBW::Split s = pbw_->split(mono);
    const auto z = top_vector(s.fin_neg);
    if (!z) return std::nullopt;
    if (z->empty()) continue;
    std::vector<std::size_t> word;
    for (const auto& [g, e] : s.loop_neg.factors)
      for (int i = 0; i < e; ++i) word.push_back(g.index);
    const auto xv = circ(mu_, word, v);
    if (std::all_of(xv.begin(), xv.end(), [](const Scalar& c) { return c.is_zero(); })) continue;
    const NuPoly ps = psi(s.vir_neg, params_.a, params_.b, opts_.psi) * coef;
    for (const auto& [ti, tc] : z->entries())
      for (std::size_t j = 0; j < dm; ++j)
        if (!xv[j].is_zero()) out[row(ti, j)] += ps * (tc * xv[j]);
  }
  return out;
}

std::vector<NuPoly> PhiContext::phi(const UEnvElement& p, const FiniteModule::Vec& v) const {
  if (!pbw_->algebra().g().is_dominant_integral(params_.hw.lambda)) {
    throw Error(ErrorCode::kNotDominantContext, "L(lambda, l, k, c)_0 is infinite-dimensional for this lambda");
  }
  return *phi_truncated(p, v);
}

std::vector<Scalar> PhiContext::phi_at(const UEnvElement& p, const FiniteModule::Vec& v, long n) const {
  std::vector<Scalar> out;
  for (const auto& e : phi(p, v)) out.push_back(e.eval(Scalar(n)));
  return out;
}

// ---------------------------------------------------------------- image matrix

namespace {

long generator_depth(const UEnvElement& g) {
  long d = 0;
  for (const auto& [m, c] : g.terms()) d = std::max(d, -m.degree());
  return d;
}

int generator_length(const UEnvElement& g) {
  int d = 0;
  for (const auto& [m, c] : g.terms()) d = std::max(d, m.length());
  return d;
}

// Canonical monomials of U(L_-) of degree exactly -depth with at most zmax degree-zero factors.
std::vector<PBWMonomial> multipliers(const PBW& pbw, long depth, int zmax) {
  const auto& lie = pbw.algebra().g();
  std::vector<Gen> gens;
  for (long m = 1; m <= depth; ++m) {
    for (std::size_t x = 0; x < lie.dim(); ++x) gens.push_back(Gen::loop(x, -m));
    gens.push_back(Gen::vir(-m));
  }
  for (auto b : lie.negative_roots()) gens.push_back(Gen::loop(b, 0));
  std::sort(gens.begin(), gens.end(), [&](const Gen& a, const Gen& b) { return pbw.precedes(a, b); });
  std::vector<PBWMonomial> out;
  PBWMonomial cur;
  std::function<void(std::size_t, long, int)> rec = [&](std::size_t i, long left, int zleft) {
    if (i == gens.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    rec(i + 1, left, zleft);
    const long d = -gens[i].degree();
    for (int e = 1;; ++e) {
      if (d * e > left) break;
      if (d == 0 && e > zleft) break;
      cur.factors.emplace_back(gens[i], e);
      rec(i + 1, left - d * e, d == 0 ? zleft - e : zleft);
      cur.factors.pop_back();
    }
  };
  rec(0, depth, zmax);
  std::sort(out.begin(), out.end());
  return out;
}

PolyMatrix to_matrix(std::size_t rows, const std::vector<std::vector<NuPoly>>& cols) {
  PolyMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  return m;
}

std::size_t rank_of(const PolyMatrix& m, const Scalar& nu) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rank_and_kernel(m.substitute(nu)).rank;
}

}  // namespace

long default_p_degree_bound(const PhiContext& ctx, const AnnGenerators& gens) {
  const auto& lie = ctx.pbw().algebra().g();
  const auto& lam = ctx.params().hw.lambda;
  const long top = lie.is_dominant_integral(lam) ? two_rho(lie, lam) + 1 : ctx.options().top_charge + 1;
  long gd = 0;
  for (const auto& g : gens.generators) gd = std::max(gd, generator_depth(g));
  return top + static_cast<long>(ctx.mu().nilpotency_index()) + gd;
}

PhiImage phi_image_rank(const PhiContext& ctx, const AnnGenerators& gens, long p_degree_bound) {
  PhiImage img;
  const long def = default_p_degree_bound(ctx, gens);
  img.p_degree_bound = p_degree_bound > 0 ? p_degree_bound : def;
  img.bound_below_default = img.p_degree_bound < def;
  const std::size_t rows = ctx.rows();
  if (gens.generators.empty()) return img;

  const auto& lie = ctx.pbw().algebra().g();
  const auto& lam = ctx.params().hw.lambda;
  int glen = 0;
  for (const auto& g : gens.generators) glen = std::max(glen, generator_length(g));
  const int zmax =
      static_cast<int>(lie.is_dominant_integral(lam) ? two_rho(lie, lam) : ctx.options().top_charge) + glen;

  std::vector<std::vector<NuPoly>> cols;
  std::vector<PhiColumn> meta;
  Subspace constant_span;
  const Scalar probe(10007, 13);
  std::size_t checked_cols = 0;

  auto certify = [&]() {
    if (cols.size() == checked_cols) return false;
    checked_cols = cols.size();
    const PolyMatrix m = to_matrix(rows, cols);
    if (rank_of(m, probe) < rows) return false;
    const auto fr = rank_over_function_field(m);
    for (const auto& e : fr.exceptional)
      if (e.is_integer()) return false;
    return fr.generic_rank == rows;
  };

  for (long depth = 0; depth <= img.p_degree_bound && !img.surjective_certificate; ++depth) {
    const auto ps = multipliers(ctx.pbw(), depth, zmax);
    for (std::size_t gi = 0; gi < gens.generators.size(); ++gi) {
      for (const auto& p : ps) {
        ++img.multipliers_examined;
        const UEnvElement prod = ctx.pbw().multiply(UEnvElement(p), gens.generators[gi]);
        for (std::size_t j = 0; j < ctx.mu().dim(); ++j) {
          const auto col = ctx.phi_truncated(prod, ctx.mu().unit(j));
          if (!col) continue;
          const int vlen = generator_length(prod);
          for (const auto& e : *col)
            if (e.degree() > vlen) throw Error(ErrorCode::kInvalidArgument, "phi entry depends on nu beyond psi");
          bool constant = true, zero = true;
          for (const auto& e : *col) {
            constant = constant && e.is_constant();
            zero = zero && e.is_zero();
          }
          if (zero) continue;
          if (constant) {
            std::vector<SparseVector::Entry> e;
            for (std::size_t r = 0; r < rows; ++r)
              if (!(*col)[r].is_zero()) e.emplace_back(r, (*col)[r].coeff(0));
            if (!constant_span.add(SparseVector(std::move(e)))) continue;
          }
          cols.push_back(*col);
          meta.push_back({gi, p, j});
        }
      }
      if (depth == 0 && certify()) img.surjective_certificate = true;
      if (img.surjective_certificate) break;
    }
    if (!img.surjective_certificate && certify()) img.surjective_certificate = true;
  }

  // Columns in (generator, multiplier, mu index) order.
  std::vector<std::size_t> order(cols.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::tie(meta[x].generator, meta[x].multiplier, meta[x].mu_index) <
           std::tie(meta[y].generator, meta[y].multiplier, meta[y].mu_index);
  });
  std::vector<std::vector<NuPoly>> sorted;
  for (auto i : order) {
    sorted.push_back(cols[i]);
    img.columns.push_back(meta[i]);
  }
  img.matrix = to_matrix(rows, sorted);
  if (sorted.empty()) return img;
  const auto fr = rank_over_function_field(img.matrix);
  img.generic_rank = fr.generic_rank;
  for (const auto& e : fr.exceptional) {
    if (e.is_integer()) {
      img.exceptional.push_back(*e.to_long());
    } else {
      img.rational_exceptional.push_back(e);
    }
  }
  return img;
}

std::size_t rank_at(const PhiImage& img, long n) { return rank_of(img.matrix, Scalar(n)); }

// ---------------------------------------------------------------- verdict

std::string IrredVerdict::to_json(bool timing) const {
  nlohmann::json j;
  j["method"] = method == Method::kSymbolicRank ? "symbolicRank" : "window";
  j["irreducible"] = irreducible;
  j["genericSurjective"] = generic_surjective;
  j["exceptionalN"] = exceptional_n;
  j["windowChecked"] = window_checked ? nlohmann::json::array({window_checked->first, window_checked->second})
                                      : nlohmann::json();
  j["truncationCertified"] = truncation_certified;
  j["matrix"] = {{"rows", rows}, {"cols", cols}};
  j["generators"] = generators;
  j["reason"] = reason;
  j["warnings"] = warnings;
  if (timing) j["seconds"] = seconds;
  return j.dump(2) + "\n";
}

IrredVerdict is_irreducible(const PhiContext& ctx) {
  return is_irreducible(ctx, ann_generators(ctx.pbw_ptr(), ctx.params().hw, ctx.options().ann));
}

IrredVerdict is_irreducible(const PhiContext& ctx, const AnnGenerators& gens) {
  const auto t0 = std::chrono::steady_clock::now();
  IrredVerdict v;
  v.generators = gens.labels;
  v.rows = ctx.rows();
  auto finish = [&]() {
    v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return v;
  };
  if (gens.generators.empty()) {
    v.reason = "Ann(u-bar) has no generators up to the search bounds, so the module is reducible";
    v.warnings.push_back("Ann(u-bar) = 0 is only established up to depth " + std::to_string(gens.search_depth));
    return finish();
  }
  const PhiImage img = phi_image_rank(ctx, gens, ctx.options().p_degree_bound);
  v.cols = img.matrix.cols();
  v.generic_surjective = img.generic_rank == v.rows;
  if (img.bound_below_default) v.warnings.push_back("P-degree bound below the default; verdict uncertified");
  if (!ctx.dominant() || ctx.options().force_window) {
    v.method = IrredVerdict::Method::kWindow;
    const long w = ctx.options().window;
    v.window_checked = std::make_pair(-w, w);
    for (long n = -w; n <= w; ++n)
      if (rank_at(img, n) < v.rows) v.exceptional_n.push_back(n);
    v.irreducible = v.exceptional_n.empty();
    v.truncation_certified = false;
    if (!ctx.dominant()) v.warnings.push_back("lambda + k Lambda_0 is not dominant; window method only");
    v.reason = v.irreducible ? "phi_n is surjective for every n in the window"
                             : "phi_n is not surjective for some n in the window";
    return finish();
  }
  v.method = IrredVerdict::Method::kSymbolicRank;
  v.exceptional_n = img.exceptional;
  v.irreducible = img.surjective_certificate;
  v.truncation_certified = img.surjective_certificate || !img.bound_below_default;
  if (v.irreducible) {
    v.reason = "phi_n(Ann (x) L(mu)) is all of L(lambda)_0 (x) L(mu) for every integer n";
  } else if (!v.generic_surjective) {
    v.reason = "the generic rank of the phi image is below the target dimension";
  } else {
    v.reason = "the phi image drops rank at the listed integers";
  }
  if (!v.irreducible) v.warnings.push_back("reducibility relies on the P-degree bound " +
                                           std::to_string(img.p_degree_bound));
  return finish();
}

// ---------------------------------------------------------------- closure

namespace {

struct CopyApply {
  const TensorModule& t;
  std::size_t copies;
  std::size_t d;

  std::optional<SparseVector> operator()(const Gen& g, long n, const SparseVector& x, bool truncate) const {
    if (copies == 1) return t.apply(g, n, x, truncate);
    std::vector<std::vector<SparseVector::Entry>> parts(copies);
    for (const auto& [i, c] : x.entries()) parts[i / d].emplace_back(i % d, c);
    std::vector<SparseVector::Entry> out;
    for (std::size_t k = 0; k < copies; ++k) {
      if (parts[k].empty()) continue;
      const auto y = t.apply(g, n, SparseVector(std::move(parts[k])), truncate);
      if (!y) return std::nullopt;
      for (const auto& [i, c] : y->entries()) out.emplace_back(k * d + i, c);
    }
    return SparseVector(std::move(out));
  }
};

// Rows of an echelon basis of {x in s : x_i = 0 for unsafe i}.
std::vector<SparseVector> safe_part(const Subspace& s, const std::vector<bool>& unsafe_idx) {
  const std::size_t n = unsafe_idx.size();
  std::vector<std::size_t> perm(n), inv(n);
  std::size_t pos = 0, n_unsafe = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (unsafe_idx[i]) perm[i] = pos++;
  n_unsafe = pos;
  if (n_unsafe == 0) {
    std::vector<SparseVector> out;
    for (const auto& [p, r] : s.rows()) out.push_back(r);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!unsafe_idx[i]) perm[i] = pos++;
  for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = i;
  Subspace t;
  for (const auto& [p, r] : s.rows()) {
    std::vector<SparseVector::Entry> e;
    for (const auto& [i, c] : r.entries()) e.emplace_back(perm[i], c);
    t.add(SparseVector(std::move(e)));
  }
  std::vector<SparseVector> out;
  for (const auto& [p, r] : t.rows()) {
    if (p < n_unsafe) continue;
    std::vector<SparseVector::Entry> e;
    for (const auto& [i, c] : r.entries()) e.emplace_back(inv[i], c);
    out.emplace_back(std::move(e));
  }
  return out;
}

}  // namespace

std::vector<std::pair<long, SparseVector>> top_seeds(const TensorModule& t, std::size_t copies) {
  std::vector<std::pair<long, SparseVector>> out;
  const auto s = t.seed();
  for (long n = -t.window(); n <= t.window(); ++n)
    for (std::size_t k = 0; k < copies; ++k)
      out.emplace_back(n, SparseVector({{k * t.slice_dim() + s.leading_index(), Scalar(1)}}));
  return out;
}

SliceFamily submodule_closure(const TensorModule& t, const std::vector<std::pair<long, SparseVector>>& seeds,
                              const ClosureOptions& opts) {
  SliceFamily fam;
  fam.lo = -t.window();
  fam.hi = t.window();
  const std::size_t d = t.slice_dim();
  fam.slice_dim = d * opts.copies;
  const std::size_t ns = static_cast<std::size_t>(fam.hi - fam.lo + 1);
  fam.slices.resize(ns);
  for (const auto& [n, v] : seeds) {
    if (n < fam.lo || n > fam.hi) throw Error(ErrorCode::kInvalidArgument, "seed outside the window");
    fam.slices[static_cast<std::size_t>(n - fam.lo)].add(v);
  }
  const auto moves = t.moves(opts.max_mode);
  std::vector<std::vector<bool>> unsafe(moves.size(), std::vector<bool>(fam.slice_dim));
  for (std::size_t gi = 0; gi < moves.size(); ++gi) {
    const auto& safe = t.safe(moves[gi]);
    for (std::size_t i = 0; i < fam.slice_dim; ++i) unsafe[gi][i] = !safe[(i % d) / t.mu_module().dim()];
  }
  const CopyApply apply{t, opts.copies, d};
  std::vector<std::size_t> version(ns, 1);
  std::vector<std::vector<std::size_t>> done(ns, std::vector<std::size_t>(moves.size(), 0));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t si = 0; si < ns; ++si) {
      const long n = fam.lo + static_cast<long>(si);
      for (std::size_t gi = 0; gi < moves.size(); ++gi) {
        if (done[si][gi] == version[si] || fam.slices[si].dim() == 0) continue;
        done[si][gi] = version[si];
        const long target = n + moves[gi].mode;
        if (target < fam.lo || target > fam.hi) continue;
        const auto ti = static_cast<std::size_t>(target - fam.lo);
        if (fam.slices[ti].dim() == fam.slice_dim) continue;
        for (const auto& r : safe_part(fam.slices[si], unsafe[gi])) {
          const auto y = apply(moves[gi], n, r, false);
          if (y && !y->empty() && fam.slices[ti].add(*y)) {
            ++version[ti];
            changed = true;
          }
        }
      }
    }
  }
  return fam;
}

// ---------------------------------------------------------------- endomorphisms

namespace {

using Shadow = std::map<std::size_t, SparseVector>;  // unknown -> vector

struct WordSpace {
  std::vector<std::size_t> words;
  // pivot -> (row with leading entry 1, combination of `words` positions giving the row)
  std::map<std::size_t, std::pair<SparseVector, SparseVector>> ech;
};

}  // namespace

EndoResult endo_dimension(const TensorModule& t, const ClosureOptions& opts) {
  const long w = t.window();
  const std::size_t copies = opts.copies;
  const std::size_t d = t.slice_dim();
  const std::size_t dd = d * copies;
  const auto moves = t.moves(opts.max_mode);
  const CopyApply apply{t, copies, d};
  using Key = std::pair<long, GWeight>;
  auto weight = [&](std::size_t i) -> const GWeight& { return t.weight(i % d); };
  std::map<GWeight, std::vector<std::size_t>> by_weight;
  for (std::size_t i = 0; i < dd; ++i) by_weight[weight(i)].push_back(i);

  EndoResult res;
  res.lower_bound = copies * copies;

  struct Word {
    long n;
    SparseVector x;
    Shadow shadow;
  };
  std::vector<Word> words;
  std::map<Key, WordSpace> spaces;
  std::map<long, std::size_t> filled;
  Subspace cons;
  bool collecting = true;

  auto add_constraint = [&](const Shadow& s) {
    std::map<std::size_t, std::vector<SparseVector::Entry>> rows;
    for (const auto& [u, v] : s)
      for (const auto& [i, c] : v.entries()) rows[i].emplace_back(u, c);
    for (auto& [i, r] : rows) cons.add(SparseVector(std::move(r)));
    if (res.unknowns - cons.dim() <= res.lower_bound) collecting = false;
  };

  // Seeds and their unknown images.
  const auto seeds = top_seeds(t, copies);
  std::deque<std::size_t> queue;
  for (const auto& [n, s] : seeds) {
    const auto& coords = by_weight.at(weight(s.leading_index()));
    Shadow sh;
    for (std::size_t k = 0; k < coords.size(); ++k) sh[res.unknowns + k] = SparseVector({{coords[k], Scalar(1)}});
    res.unknowns += coords.size();
    WordSpace& ws = spaces[{n, weight(s.leading_index())}];
    SparseVector combo({{ws.words.size(), Scalar(1)}});
    ws.ech.emplace(s.leading_index(), std::make_pair(s, combo));
    ws.words.push_back(words.size());
    ++filled[n];
    queue.push_back(words.size());
    words.push_back({n, s, std::move(sh)});
  }

  auto all_filled = [&]() {
    for (long n = -w; n <= w; ++n)
      if (filled[n] < dd) return false;
    return true;
  };

  while (!queue.empty() && (collecting || !all_filled())) {
    const std::size_t wi = queue.front();
    queue.pop_front();
    for (const auto& g : moves) {
      const long n = words[wi].n;
      const long target = n + g.mode;
      if (target < -w || target > w) continue;
      const SparseVector y = *apply(g, n, words[wi].x, true);
      Shadow ys;
      if (collecting) {
        for (const auto& [u, v] : words[wi].shadow) {
          SparseVector img = *apply(g, n, v, true);
          if (!img.empty()) ys.emplace(u, std::move(img));
        }
      }
      if (y.empty()) {
        if (collecting && !ys.empty()) add_constraint(ys);
        continue;
      }
      WordSpace& ws = spaces[{target, weight(y.leading_index())}];
      SparseVector r = y, combo;
      while (!r.empty()) {
        auto it = ws.ech.find(r.leading_index());
        if (it == ws.ech.end()) break;
        const Scalar f = r.leading_value();
        r.axpy(-f, it->second.first);
        combo.axpy(f, it->second.second);
      }
      if (r.empty()) {
        if (collecting) {
          for (const auto& [k, c] : combo.entries()) {
            for (const auto& [u, v] : words[ws.words[k]].shadow) {
              auto& dst = ys[u];
              dst.axpy(-c, v);
            }
          }
          for (auto it = ys.begin(); it != ys.end();) it = it->second.empty() ? ys.erase(it) : std::next(it);
          if (!ys.empty()) add_constraint(ys);
        }
        continue;
      }
      const Scalar lead = r.leading_value();
      combo.scale(Scalar(-1));
      combo.add(ws.words.size(), Scalar(1));
      const Scalar inv = Scalar(1) / lead;
      r.scale(inv);
      combo.scale(inv);
      const std::size_t pivot = r.leading_index();
      ws.ech.emplace(pivot, std::make_pair(std::move(r), std::move(combo)));
      ws.words.push_back(words.size());
      ++filled[target];
      queue.push_back(words.size());
      words.push_back({target, y, collecting ? std::move(ys) : Shadow{}});
    }
  }
  res.determined = all_filled();
  res.dimension = res.unknowns - cons.dim();
  return res;
}

// ---------------------------------------------------------------- isomorphism classes

IsoReport iso_params_check(const IsoParams& p1, const IsoParams& p2) {
  IsoReport r;
  if (p1.lambda != p2.lambda) {
    r.differs = "lambda";
  } else if (p1.l != p2.l) {
    r.differs = "l";
  } else if (p1.k != p2.k) {
    r.differs = "k";
  } else if (p1.c != p2.c) {
    r.differs = "c";
  } else if (p1.mu != p2.mu) {
    r.differs = "mu";
  } else if (p1.a.frac() != p2.a.frac()) {
    r.differs = "a";
  } else if (p1.b != p2.b) {
    r.differs = "b";
  }
  r.isomorphic = r.differs.empty();
  return r;
}

}  // namespace avk
