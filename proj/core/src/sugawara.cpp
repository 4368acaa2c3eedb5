#include "avk/sugawara.hpp"

#include "avk/error.hpp"
#include "json.hpp"

namespace avk {

SugawaraContext::SugawaraContext(const HWModule& module) : module_(module) {
  const auto& lie = module.lie();
  k_plus_g_ = module.params().k + lie.dual_coxeter();
  if (k_plus_g_.is_zero()) throw Error(ErrorCode::kLevelIsMinusDualCoxeter, "the level k equals -g");
  for (std::size_t i = 0; i < lie.dim(); ++i) dual_.push_back(lie.dual_basis(i));
}

Scalar SugawaraContext::c_prime() const {
  const auto& p = module_.params();
  return p.c - p.k * Scalar(static_cast<long>(module_.lie().dim())) / k_plus_g_;
}

Scalar SugawaraContext::l_prime() const {
  const auto& p = module_.params();
  return p.l + module_.lie().casimir_eigenvalue(p.lambda) / (Scalar(2) * k_plus_g_);
}

const ModVec& SugawaraContext::apply_T_mono(long n, const PBWMonomial& m, bool swap_ties) const {
  auto key = std::make_tuple(n, swap_ties, m);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  ModVec out;
  if (!module_.virasoro_only()) {
    const long d = -m.degree();
    const ModVec v(m);
    const std::size_t dim = module_.lie().dim();
    auto apply_y = [&](std::size_t i, long mode, const ModVec& w) {
      ModVec r;
      for (std::size_t k = 0; k < dim; ++k) {
        if (dual_[i][k].is_zero()) continue;
        r += dual_[i][k] * module_.act_exact(Gen::loop(k, mode), w);
      }
      return r;
    };
    // Modes beyond the depth of v annihilate it, so j runs over [-d, d - n].
    for (long j = -d; j <= d - n; ++j) {
      const bool tie = -j == j + n;
      const bool x_left = tie ? !swap_ties : (-j < j + n);
      for (std::size_t i = 0; i < dim; ++i) {
        ModVec term = x_left ? module_.act_exact(Gen::loop(i, -j), apply_y(i, j + n, v))
                             : apply_y(i, j + n, module_.act_exact(Gen::loop(i, -j), v));
        out += term;
      }
    }
    out *= Scalar(-1, 2);
  }
  return memo_.emplace(std::move(key), std::move(out)).first->second;
}

ModVec SugawaraContext::apply_T(long n, const ModVec& v, bool swap_ties) const {
  ModVec out;
  for (const auto& [m, c] : v.terms()) out += c * apply_T_mono(n, m, swap_ties);
  return out;
}

ModVec SugawaraContext::apply_D(long n, const ModVec& v) const {
  return module_.act_exact(Gen::vir(n), v) - (Scalar(1) / k_plus_g_) * apply_T(n, v);
}

ModVec SugawaraContext::apply_D_word(const PBWMonomial& vir_word, const ModVec& v) const {
  ModVec out = v;
  for (auto it = vir_word.factors.rbegin(); it != vir_word.factors.rend(); ++it) {
    if (!it->first.is_vir()) throw Error(ErrorCode::kInvalidArgument, "D-words contain Virasoro factors only");
    for (int e = 0; e < it->second; ++e) out = apply_D(it->first.mode, out);
  }
  return out;
}

bool FactorizationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string FactorizationReport::to_json() const {
  nlohmann::json j;
  j["l_prime"] = l_prime.to_string();
  j["c_prime"] = c_prime.to_string();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}};
    e["witness"] = c.witness.empty() ? nlohmann::json() : nlohmann::json(c.witness);
    arr.push_back(e);
  }
  j["identities"] = arr;
  j["all_pass"] = all_pass();
  return j.dump(2) + "\n";
}

FactorizationReport factorization_report(const SugawaraContext& ctx, long depth, long max_mode) {
  const HWModule& m = ctx.module();
  FactorizationReport rep{ctx.l_prime(), ctx.c_prime(), {}};
  std::vector<ModVec> basis;
  for (const auto& w : m.weights())
    if (w.depth <= depth)
      for (const auto& b : m.basis(w)) basis.emplace_back(b);

  IdentityCheck vir{"[D_m,D_n] = (n-m) D_{m+n} + delta_{m+n,0} (m^3-m)/12 c'", true, ""};
  for (long a = -max_mode; a <= max_mode && vir.pass; ++a)
    for (long b = -max_mode; b <= max_mode && vir.pass; ++b)
      for (const auto& v : basis) {
        ModVec lhs = ctx.apply_D(a, ctx.apply_D(b, v)) - ctx.apply_D(b, ctx.apply_D(a, v));
        ModVec rhs = Scalar(b - a) * ctx.apply_D(a + b, v);
        if (a + b == 0) rhs += Scalar(a * a * a - a, 12) * rep.c_prime * v;
        if (lhs != rhs) {
          vir.pass = false;
          vir.witness = "m=" + std::to_string(a) + " n=" + std::to_string(b) + " v=" + m.to_string(v);
          break;
        }
      }
  rep.checks.push_back(vir);

  IdentityCheck comm{"[D_n, x(m)] = 0", true, ""};
  if (!m.virasoro_only()) {
    for (long n = -max_mode; n <= max_mode && comm.pass; ++n)
      for (long mm = -max_mode; mm <= max_mode && comm.pass; ++mm)
        for (std::size_t x = 0; x < m.lie().dim() && comm.pass; ++x)
          for (const auto& v : basis) {
            const Gen g = Gen::loop(x, mm);
            if (ctx.apply_D(n, m.act_exact(g, v)) != m.act_exact(g, ctx.apply_D(n, v))) {
              comm.pass = false;
              comm.witness = "n=" + std::to_string(n) + " x=" + m.algebra().to_string(g) + " v=" + m.to_string(v);
              break;
            }
          }
  }
  rep.checks.push_back(comm);

  IdentityCheck top{"D_0 u = l' u", true, ""};
  const ModVec u = ModVec::one();
  if (ctx.apply_D(0, u) != rep.l_prime * u) {
    top.pass = false;
    top.witness = "D_0 u = " + m.to_string(ctx.apply_D(0, u));
  }
  rep.checks.push_back(top);
  return rep;
}

}  // namespace avk
