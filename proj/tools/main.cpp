#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "avk/ann.hpp"
#include "avk/config.hpp"
#include "avk/error.hpp"
#include "avk/irreducibility.hpp"
#include "avk/sugawara.hpp"
#include "json.hpp"
#include "presets.hpp"

namespace {

using nlohmann::json;
using namespace avk;

struct Args {
  std::string algebra = "sl2";
  std::string lambda = "0", l = "0", k = "1", c = "2";
  std::string mu = "1", a = "0", b = "1/2";
  long depth = 2, charge = 2, window = -1, pbound = 0;
  std::size_t copies = 1;
  bool symbolic = true;
  std::string psi = "right";
  std::string out;
  std::string p1, p2;
  std::string preset;
};

GWeight parse_weight(const std::string& s) {
  std::vector<Scalar> coords;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) coords.push_back(Scalar::parse(part));
  if (coords.empty()) throw Error(ErrorCode::kParse, "empty weight");
  return GWeight(std::move(coords));
}

json weight_json(const GWeight& w) {
  json j = json::array();
  for (const auto& s : w.coords) j.push_back(s.to_string());
  return j;
}

std::shared_ptr<const PBW> make_pbw(const Args& a) {
  auto lie = std::make_shared<const SimpleLieAlgebra>(load_algebra_config(a.algebra));
  return std::make_shared<const PBW>(std::make_shared<const AffVirAlgebra>(lie));
}

HWParams hw_params(const Args& a) {
  return HWParams{parse_weight(a.lambda), Scalar::parse(a.l), Scalar::parse(a.k), Scalar::parse(a.c)};
}

TensorParams tensor_params(const Args& a) {
  return TensorParams{hw_params(a), parse_weight(a.mu), Scalar::parse(a.a), Scalar::parse(a.b)};
}

IsoParams iso_params(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) parts.push_back(part);
  if (parts.size() != 7) throw Error(ErrorCode::kParse, "expected lambda;l;k;c;mu;a;b in \"" + s + "\"");
  return IsoParams{parse_weight(parts[0]), Scalar::parse(parts[1]), Scalar::parse(parts[2]), Scalar::parse(parts[3]),
                   parse_weight(parts[4]), Scalar::parse(parts[5]), Scalar::parse(parts[6])};
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIOFailure, "cannot open " + out + " for writing");
  f << text;
  f.flush();
  if (!f) throw Error(ErrorCode::kIOFailure, "write to " + out + " failed");
}

void emit(const json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

json algebra_check(const Args& a) {
  const auto pbw = make_pbw(a);
  const auto& g = pbw->algebra().g();
  json basis = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) basis.push_back(g.basis_name(i));
  return {{"name", g.name()},
          {"dim", g.dim()},
          {"rank", g.rank()},
          {"basis", basis},
          {"dual_coxeter", g.dual_coxeter().to_string()},
          {"theta", weight_json(g.theta())},
          {"axioms", "pass"}};
}

json singular_find(const Args& a) {
  const auto pbw = make_pbw(a);
  const HWModule m = HWModule::build_verma(pbw, hw_params(a), a.depth, a.charge);
  json list = json::array();
  for (long d = 0; d <= a.depth; ++d)
    for (const auto& [w, v] : m.singular_vectors(d, a.charge))
      list.push_back({{"depth", w.depth}, {"drop", w.drop}, {"vector", pbw->to_string(v)}});
  json gens = json::array();
  for (const auto& g : singular_generators(m, a.depth, a.charge)) gens.push_back(pbw->to_string(g));
  return {{"depth", a.depth}, {"charge", a.charge}, {"singular", list}, {"generators", gens}};
}

std::string quotient_build(const Args& a) {
  const auto pbw = make_pbw(a);
  return dump_module_json(HWModule::build_verma(pbw, hw_params(a), a.depth, a.charge).irreducible_quotient());
}

std::string ann_gens(const Args& a) {
  const auto pbw = make_pbw(a);
  AnnOptions opts;
  opts.depth = a.depth;
  opts.charge = a.charge;
  return ann_generators(pbw, hw_params(a), opts).to_json(*pbw);
}

std::string sugawara_report(const Args& a) {
  const auto pbw = make_pbw(a);
  const HWModule m = HWModule::build_verma(pbw, hw_params(a), a.depth, a.charge);
  return factorization_report(SugawaraContext(m), a.depth).to_json();
}

IrredOptions irred_options(const Args& a) {
  IrredOptions io;
  io.p_degree_bound = a.pbound;
  if (a.window >= 0) io.window = a.window;
  io.force_window = !a.symbolic;
  io.top_charge = a.charge;
  io.ann.depth = a.depth;
  io.ann.charge = a.charge;
  if (a.psi == "left") io.psi = PsiConvention::kLeft;
  return io;
}

std::string tensor_verdict(const Args& a) {
  const auto pbw = make_pbw(a);
  return is_irreducible(PhiContext(pbw, tensor_params(a), irred_options(a))).to_json();
}

json endo_dim(const Args& a) {
  const auto pbw = make_pbw(a);
  const TensorModule t(pbw, tensor_params(a), a.depth, a.charge, a.window >= 0 ? a.window : 4);
  ClosureOptions opts;
  opts.copies = a.copies;
  const EndoResult r = endo_dimension(t, opts);
  return {{"dimension", r.dimension},
          {"unknowns", r.unknowns},
          {"determined", r.determined},
          {"copies", a.copies},
          {"window", t.window()},
          {"slice_dim", t.slice_dim()}};
}

json iso_check(const Args& a) {
  const IsoReport r = iso_params_check(iso_params(a.p1), iso_params(a.p2));
  return {{"isomorphic", r.isomorphic}, {"differs", r.differs}};
}

void add_params(CLI::App* cmd, Args& a, bool tensor) {
  cmd->add_option("--algebra", a.algebra, "sl2, sl3 or a JSON config path")->capture_default_str();
  cmd->add_option("--lambda", a.lambda, "highest weight, comma-separated fundamental coordinates")
      ->capture_default_str();
  cmd->add_option("--l", a.l, "d_0 eigenvalue parameter")->capture_default_str();
  cmd->add_option("--k", a.k, "level")->capture_default_str();
  cmd->add_option("--c", a.c, "central charge")->capture_default_str();
  cmd->add_option("--depth", a.depth)->capture_default_str();
  cmd->add_option("--charge", a.charge)->capture_default_str();
  if (!tensor) return;
  cmd->add_option("--mu", a.mu, "loop module weight")->capture_default_str();
  cmd->add_option("--a", a.a)->capture_default_str();
  cmd->add_option("--b", a.b)->capture_default_str();
  cmd->add_option("--window", a.window, "t-index window W");
  cmd->add_option("--pbound", a.pbound, "degree bound for multipliers; 0 picks the default");
  cmd->add_flag("--symbolic,!--no-symbolic", a.symbolic, "rank over Q(nu) instead of the window method");
  cmd->add_option("--psi-convention", a.psi)->check(CLI::IsMember({"right", "left"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine-Virasoro highest weight and tensor module toolkit"};
  app.require_subcommand(1);
  Args args;
  app.add_option("--out", args.out, "write the JSON report to this file");
  std::function<std::string()> action;
  auto set = [&](CLI::App* cmd, std::function<std::string()> f) { cmd->callback([&action, f] { action = f; }); };
  auto as_text = [](json j) { return j.dump(2) + "\n"; };

  auto* algebra = app.add_subcommand("algebra", "algebra operations")->require_subcommand(1);
  auto* check = algebra->add_subcommand("check", "load an algebra and verify its axioms");
  check->add_option("--algebra", args.algebra)->capture_default_str();
  set(check, [&] { return as_text(algebra_check(args)); });

  auto* verma = app.add_subcommand("verma", "Verma modules")->require_subcommand(1);
  auto* verma_build = verma->add_subcommand("build", "truncated Verma module dump");
  add_params(verma_build, args, false);
  set(verma_build, [&] {
    return dump_module_json(HWModule::build_verma(make_pbw(args), hw_params(args), args.depth, args.charge));
  });

  auto* singular = app.add_subcommand("singular", "singular vectors")->require_subcommand(1);
  auto* singular_find_cmd = singular->add_subcommand("find", "singular vectors within the bounds");
  add_params(singular_find_cmd, args, false);
  set(singular_find_cmd, [&] { return as_text(singular_find(args)); });

  auto* quotient = app.add_subcommand("quotient", "irreducible quotients")->require_subcommand(1);
  auto* quotient_cmd = quotient->add_subcommand("build", "truncated irreducible quotient dump");
  add_params(quotient_cmd, args, false);
  set(quotient_cmd, [&] { return quotient_build(args); });

  auto* ann = app.add_subcommand("ann", "annihilator of the top vector")->require_subcommand(1);
  auto* ann_cmd = ann->add_subcommand("gens", "generators of Ann(u-bar)");
  add_params(ann_cmd, args, false);
  set(ann_cmd, [&] { return ann_gens(args); });

  auto* sugawara = app.add_subcommand("sugawara", "Sugawara construction")->require_subcommand(1);
  auto* sugawara_cmd = sugawara->add_subcommand("report", "coset Virasoro factorization checks");
  add_params(sugawara_cmd, args, false);
  set(sugawara_cmd, [&] { return sugawara_report(args); });

  auto* tensor = app.add_subcommand("tensor", "tensor modules")->require_subcommand(1);
  auto* verdict_cmd = tensor->add_subcommand("verdict", "irreducibility verdict");
  add_params(verdict_cmd, args, true);
  set(verdict_cmd, [&] { return tensor_verdict(args); });

  auto* endo = app.add_subcommand("endo", "endomorphisms")->require_subcommand(1);
  auto* endo_cmd = endo->add_subcommand("dim", "dimension of the truncated commutant");
  add_params(endo_cmd, args, true);
  endo_cmd->add_option("--copies", args.copies, "direct sum of this many copies")->capture_default_str();
  set(endo_cmd, [&] { return as_text(endo_dim(args)); });

  auto* iso = app.add_subcommand("iso", "isomorphism classes")->require_subcommand(1);
  auto* iso_cmd = iso->add_subcommand("check", "compare two parameter tuples");
  iso_cmd->add_option("--p1", args.p1, "lambda;l;k;c;mu;a;b")->required();
  iso_cmd->add_option("--p2", args.p2, "lambda;l;k;c;mu;a;b")->required();
  set(iso_cmd, [&] { return as_text(iso_check(args)); });

  avk::cli::PresetOptions popts;
  auto* preset = app.add_subcommand("preset", "run a worked example end to end");
  preset->add_option("name", args.preset, "example-4.5, example-4.6, corollary-4.4 or lemma-4.9")->required();
  preset->add_option("--window", popts.window, "spot-check window")->capture_default_str();
  preset->add_option("--mu", popts.mu, "override the loop module weight");
  preset->add_option("--a", popts.a);
  preset->add_option("--b", popts.b);
  std::string preset_psi = "right";
  preset->add_option("--psi-convention", preset_psi)->check(CLI::IsMember({"right", "left"}));
  bool mismatch = false;
  set(preset, [&] {
    popts.psi_left = preset_psi == "left";
    const json r = avk::cli::run_preset(args.preset, make_pbw(args), popts);
    mismatch = !r.at("pass").get<bool>();
    return as_text(r);
  });

  CLI11_PARSE(app, argc, argv);
  try {
    emit(action(), args.out);
    if (mismatch) throw Error(ErrorCode::kVerdictMismatch, "preset " + args.preset + " disagrees with its expected values");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kVerdictMismatch ? 2 : 1;
  }
  return 0;
}
