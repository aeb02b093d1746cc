// slg: command-line front end.  Groups are given as JSON recipes, either
// inline or as @file, e.g. '{"construct":"gamma","q":2,"n":4}'.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "slg/action.hpp"
#include "slg/bounds.hpp"
#include "slg/chartab.hpp"
#include "slg/errors.hpp"
#include "slg/families.hpp"
#include "slg/grp.hpp"
#include "slg/qp.hpp"
#include "slg/verify.hpp"

using nlohmann::json;
namespace fs = slg::families;
namespace vf = slg::verify;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string report;
  unsigned jobs = 1;
  std::size_t cap_order = slg::grp::kDefaultOrderCap;
  std::uint64_t cap_space = slg::action::kDefaultSpaceCap;
};

json read_recipe(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw slg::UsageError("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw slg::UsageError(std::string("recipe is not valid JSON: ") + e.what());
  }
}

// Writes to --report when given, else stdout.
class Out {
 public:
  explicit Out(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw slg::UsageError("cannot write " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct Built {
  fs::Construction c;
  slg::grp::GroupPtr G;
};

Built build(const std::string& recipe, const Globals& g) {
  Built b{fs::from_recipe(read_recipe(recipe)), nullptr};
  b.G = b.c.close(g.cap_order);
  return b;
}

slg::action::Action action_of(const Built& b, const Globals& g) {
  return b.c.is_perm() ? slg::action::Action::on_points(b.G) : slg::action::Action::on_module(b.G, g.cap_space);
}

int emit_report(const Globals& g, const std::string& recipe, const json& checks_spec) {
  vf::CorpusEntry e;
  e.name = "cli";
  e.recipe = read_recipe(recipe);
  e.checks = {checks_spec};
  e.seed = g.seed;
  vf::CorpusOptions o{g.seed, 1, g.cap_order, g.cap_space};
  auto rs = vf::run_entry(e, o);
  Out out(g.report);
  bool ok = true;
  for (const auto& r : rs) {
    out.os() << r.to_json().dump(2) << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solvable linear group orbit verifier"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "random seed (character tables, splitting)");
  app.add_option("--report", g.report, "write output to this path instead of stdout");
  app.add_option("--jobs", g.jobs, "worker threads for corpus runs")->check(CLI::PositiveNumber);
  app.add_option("--cap-order", g.cap_order, "maximum group order to enumerate");
  app.add_option("--cap-space", g.cap_space, "maximum module size");

  std::string recipe;
  unsigned p = 5;
  int rc = 0;

  auto* construct = app.add_subcommand("construct", "close a group and print its order and generators");
  construct->add_option("recipe", recipe)->required();
  construct->callback([&] {
    auto b = build(recipe, g);
    json j = b.c.to_json();
    j["order"] = b.G->order();
    Out(g.report).os() << j.dump(2) << "\n";
  });

  auto* decompose = app.add_subcommand("decompose", "structure decomposition of a quasi-primitive module");
  decompose->add_option("recipe", recipe)->required();
  decompose->callback([&] {
    auto b = build(recipe, g);
    auto A = action_of(b, g);
    auto D = slg::qp::build(A);
    slg::qp::check_clauses(A, D);
    json j = slg::qp::to_json(D, b.G->order());
    j["order_lemma"] = slg::qp::order_lemma_check(D, b.G->order());
    Out(g.report).os() << j.dump(2) << "\n";
    rc = D.all_pass() ? 0 : 1;
  });

  auto* orbits = app.add_subcommand("orbits", "orbits of the natural action");
  orbits->add_option("recipe", recipe)->required();
  orbits->callback([&] {
    auto b = build(recipe, g);
    auto A = action_of(b, g);
    auto O = slg::action::orbits(A);
    json j = slg::action::orbit_report(A, O);
    j["burnside"] = slg::action::burnside_count(A);
    Out(g.report).os() << j.dump(2) << "\n";
  });

  auto* census = app.add_subcommand("census", "elements and subgroups of prime order");
  census->add_option("recipe", recipe)->required();
  census->callback([&] {
    auto b = build(recipe, g);
    auto C = slg::grp::census(*b.G, slg::grp::whole(*b.G));
    json j = {{"order", b.G->order()}, {"nep", json::object()}, {"nsp", json::object()}, {"composite", C.non_prime}};
    for (const auto& [q, n] : C.nep) j["nep"][std::to_string(q)] = n;
    for (const auto& [q, n] : C.nsp) j["nsp"][std::to_string(q)] = n;
    Out(g.report).os() << j.dump(2) << "\n";
  });

  slg::bounds::SweepLimits lim;
  std::string certificate;
  auto* sweep = app.add_subcommand("star-sweep", "exact sweep of the orbit-counting inequality");
  sweep->add_option("--w-log2-max", lim.w_log2_max);
  sweep->add_option("--explicit-log2-max", lim.explicit_log2_max);
  sweep->add_option("--b-max", lim.b_max);
  sweep->add_option("--dim-max", lim.dim_max);
  sweep->add_option("--certificate", certificate, "JSONL file receiving every point and cell");
  sweep->callback([&] {
    std::ofstream cert;
    if (!certificate.empty()) {
      cert.open(certificate);
      if (!cert) throw slg::UsageError("cannot write " + certificate);
    }
    auto S = slg::bounds::star_sweep(lim, [&](const slg::bounds::SweepRecord& r) {
      if (cert.is_open()) cert << slg::bounds::to_json(r).dump() << "\n";
    });
    json j = {{"points", S.points},
              {"cells", S.cells},
              {"violations", S.violations},
              {"worst", slg::bounds::to_string(S.worst)},
              {"worst_decimal", S.worst.convert_to<double>()},
              {"worst_at", S.worst_at}};
    Out(g.report).os() << j.dump(2) << "\n";
    rc = S.violations == 0 ? 0 : 1;
  });

  auto* chartab = app.add_subcommand("chartab", "character table");
  chartab->add_option("recipe", recipe)->required();
  chartab->callback([&] {
    auto b = build(recipe, g);
    auto T = slg::chartab::char_table(b.G, slg::chartab::kClassCap, g.seed);
    Out(g.report).os() << slg::chartab::to_json(T).dump(2) << "\n";
  });

  auto* blocks = app.add_subcommand("blocks", "p-blocks and defects");
  blocks->add_option("recipe", recipe)->required();
  blocks->add_option("--p", p)->required();
  blocks->callback([&] {
    auto b = build(recipe, g);
    auto T = slg::chartab::char_table(b.G, slg::chartab::kClassCap, g.seed);
    Out(g.report).os() << slg::chartab::to_json(slg::chartab::p_blocks(T, p)).dump(2) << "\n";
  });

  std::string which;
  auto* verify = app.add_subcommand("verify", "search and replay a theorem witness");
  verify->add_option("which", which, "a, b, 34, s5 or s6")
      ->required()
      ->check(CLI::IsMember({"a", "b", "34", "s5", "s6"}));
  verify->add_option("recipe", recipe)->required();
  verify->add_option("--p", p, "prime for b, 34 and s5");
  verify->callback([&] {
    static const std::map<std::string, std::string> names = {
        {"a", "theorem_A"}, {"b", "theorem_B"}, {"34", "theorem_34"}, {"s5", "section5"}, {"s6", "section6"}};
    json spec = {{"check", names.at(which)}};
    if (which == "b" || which == "34" || which == "s5") spec["p"] = p;
    rc = emit_report(g, recipe, spec);
  });

  std::string corpus_file;
  auto* corpus = app.add_subcommand("corpus", "corpus operations");
  auto* run = corpus->add_subcommand("run", "run every entry of a JSONL corpus");
  corpus->require_subcommand(1);
  run->add_option("file", corpus_file)->required();
  run->callback([&] {
    std::ifstream in(corpus_file);
    if (!in) throw slg::UsageError("cannot read " + corpus_file);
    auto entries = vf::parse_corpus(in, g.seed);
    vf::CorpusOptions o{g.seed, g.jobs, g.cap_order, g.cap_space};
    Out out(g.report);
    auto R = vf::corpus_run(entries, o, [&](const vf::Report& r) { out.os() << r.to_json().dump() << "\n" << std::flush; });
    std::cerr << entries.size() << " entries, " << R.reports.size() << " checks, " << R.alarms << " alarms\n";
    rc = R.alarms == 0 ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const slg::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
