#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "slg/errors.hpp"
#include "slg/families.hpp"
#include "slg/verify.hpp"

using namespace slg;
using namespace slg::verify;
namespace fam = slg::families;
using nlohmann::json;

namespace {

action::Action module(const json& recipe) {
  auto c = fam::from_recipe(recipe);
  return action::Action::on_module(c.close());
}

grp::GroupPtr group(const json& recipe) { return fam::from_recipe(recipe).close(); }

const json kSL23 = {{"construct", "sl"}, {"n", 2}, {"q", 3}};
const json kGamma16 = {{"construct", "gamma"}, {"q", 2}, {"n", 4}};
const json kFrob11 = {{"construct", "semidirect"}, {"n", 11}, {"m", 5}};

// Every pi0-element fixing v lies in K, read straight off the action.
bool pi0_stabilizers_inside(const action::Action& A, const grp::Subgroup& K, std::uint64_t v) {
  const auto& G = A.group();
  for (grp::Index g = 0; g < G.order(); ++g) {
    if (A.image(g, v) != v) continue;
    if (!grp::is_pi0_number(G.elem_order(g))) continue;
    if (!K.contains(g)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("theorem A witnesses") {
  SUBCASE("SL(2,3): trivial K") {
    auto A = module(kSL23);
    auto W = theorem_A(A);
    CHECK(W.K.order() == 1);
    CHECK(W.v_a != W.v_b);
    CHECK(all_pass(W.checks));
    CHECK(all_pass(replay_theorem_A(A, W.K, W.v_a, W.v_b)));
  }
  SUBCASE("Gamma(2^4): K = Z5, representatives 0 and 1") {
    auto A = module(kGamma16);
    auto W = theorem_A(A);
    CHECK(W.K.order() == 5);
    CHECK(W.v_a == 0);
    CHECK(W.v_b == 1);
    CHECK(all_pass(W.checks));
    CHECK(all_pass(replay_theorem_A(A, W.K, W.v_a, W.v_b)));
    CHECK(pi0_stabilizers_inside(A, W.K, W.v_a));
    CHECK(pi0_stabilizers_inside(A, W.K, W.v_b));
    // the trivial subgroup cannot work: the zero vector is fixed by Z5
    CHECK_FALSE(all_pass(replay_theorem_A(A, grp::trivial(A.group()), 0, 1)));
  }
  SUBCASE("mixed characteristic direct sum") {
    auto A = module({{"construct", "direct_sum"}, {"a", kSL23}, {"b", kGamma16}});
    auto W = theorem_A(A);
    CHECK(all_pass(W.checks));
    CHECK(all_pass(replay_theorem_A(A, W.K, W.v_a, W.v_b)));
    CHECK(pi0_stabilizers_inside(A, W.K, W.v_a));
    CHECK(pi0_stabilizers_inside(A, W.K, W.v_b));
  }
  SUBCASE("e = 5 extraspecial normalizer over GF(11)") {
    auto A = module({{"construct", "extraspecial_normalizer"}, {"p", 5}, {"r", 11}, {"part", "quaternion"}});
    CHECK(A.size() == 161051);
    auto W = theorem_A(A);
    CHECK(all_pass(replay_theorem_A(A, W.K, W.v_a, W.v_b)));
    CHECK(pi0_stabilizers_inside(A, W.K, W.v_a));
  }
  SUBCASE("replay rejects a non-normal K") {
    auto A = module({{"construct", "gl"}, {"n", 2}, {"q", 3}});
    const auto& G = A.group();
    grp::Subgroup H = grp::trivial(G);
    for (grp::Index g = 0; g < G.order(); ++g)
      if (G.elem_order(g) == 2 && !grp::is_normal(G, grp::generate(G, {g}))) {
        H = grp::generate(G, {g});
        break;
      }
    REQUIRE(H.order() == 2);
    CHECK_FALSE(all_pass(replay_theorem_A(A, H, 0, 1)));
  }
  SUBCASE("hypotheses") {
    auto A = module({{"construct", "sl"}, {"n", 2}, {"q", 5}});
    CHECK_THROWS_AS(theorem_A(A), UsageError);
    auto U = action::Action::on_module(
        fam::from_matrices("unipotent", {gf::Matrix::from_rows(gf::FiniteField::get(2, 1), {{1, 0}, {1, 1}})}).close());
    CHECK_THROWS_AS(theorem_A(U), UsageError);
  }
}

TEST_CASE("p-core centralizer witnesses") {
  SUBCASE("Gamma(2^4), p = 5") {
    auto A = module(kGamma16);
    auto W = theorem_34(A, 5);
    CHECK(all_pass(W.checks));
    CHECK(W.centralizer_order * W.centralizer_order <= W.core_order);
    CHECK(all_pass(replay_theorem_34(A, 5, W.K, W.v)));
  }
  SUBCASE("p coprime to |G|") {
    auto A = module(kSL23);
    auto W = theorem_34(A, 7);
    CHECK(W.K.order() == 1);
    CHECK(all_pass(replay_theorem_34(A, 7, W.K, W.v)));
  }
  SUBCASE("e = 5 instance") {
    auto A = module({{"construct", "extraspecial_normalizer"}, {"p", 5}, {"r", 11}, {"part", "quaternion"}});
    auto W = theorem_34(A, 5);
    CHECK(all_pass(replay_theorem_34(A, 5, W.K, W.v)));
  }
  SUBCASE("p below 5") { CHECK_THROWS_AS(theorem_34(module(kSL23), 3), UsageError); }
}

TEST_CASE("theorem B") {
  SUBCASE("Frobenius groups of order 55 and 155") {
    for (unsigned n : {11u, 31u}) {
      auto G = group({{"construct", "semidirect"}, {"n", n}, {"m", 5}});
      auto T = chartab::char_table(G);
      auto r = theorem_B(G, T, 5);
      CHECK(r.n == 1);
      CHECK(r.min_defect == 0);
      CHECK(r.bound == 0);
      CHECK(all_pass(r.checks));
    }
  }
  SUBCASE("claimed bound below the minimum is reported, not thrown") {
    auto G = group(kFrob11);
    auto r = theorem_B(G, chartab::char_table(G), 5, -1);
    CHECK_FALSE(all_pass(r.checks));
  }
  SUBCASE("O_5 nontrivial") {
    auto G = group(kGamma16);
    CHECK_THROWS_AS(theorem_B(G, chartab::char_table(G), 5), UsageError);
  }
}

TEST_CASE("degree and class-size checks") {
  SUBCASE("S4") {
    auto G = group({{"construct", "symmetric"}, {"n", 4}});
    auto T = chartab::char_table(G);
    auto R6 = section6(G, T);
    CHECK(all_pass(R6.checks));
    CHECK(R6.witness["rho"] == json::array({2, 3}));
    CHECK(R6.witness["sigma"] == 1);
    CHECK(all_pass(section5(G, T, 5).checks));
  }
  SUBCASE("SL(2,3), p = 5: a = 0") {
    auto G = group(kSL23);
    auto T = chartab::char_table(G);
    auto R = section5(G, T, 5);
    CHECK(all_pass(R.checks));
    CHECK(R.witness["a"] == 0);
    CHECK(R.witness["index_F_p"] == 1);
  }
  SUBCASE("Frobenius 11:5 has a degree triple") {
    auto G = group(kFrob11);
    auto R = section5(G, chartab::char_table(G), 5);
    CHECK(all_pass(R.checks));
    CHECK(R.witness.contains("degree_triple"));
    CHECK(R.witness["index_F_pi0"] == 5);
  }
  SUBCASE("abelian group") {
    auto G = group({{"construct", "gamma0"}, {"q", 2}, {"n", 4}});
    auto R = section6(G, chartab::char_table(G));
    CHECK(R.witness["rho"].empty());
    CHECK(R.witness["sigma"] == 0);
    CHECK(all_pass(R.checks));
  }
}

TEST_CASE("corpus") {
  SUBCASE("empty corpus") {
    std::istringstream in("# nothing\n\n");
    auto es = parse_corpus(in);
    CHECK(es.empty());
    auto R = corpus_run(es, {});
    CHECK(R.reports.empty());
    CHECK(R.alarms == 0);
  }
  SUBCASE("malformed lines name the line") {
    std::istringstream in("# header\n{\"entry\": \"x\", \"group\": {\"construct\": \"gl\", \"n\": 2, \"q\": 2}, \"checks\": []}\n{oops\n");
    try {
      parse_corpus(in);
      FAIL("expected a usage error");
    } catch (const UsageError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::istringstream dup(
        "{\"entry\": \"x\", \"group\": {}, \"checks\": []}\n{\"entry\": \"x\", \"group\": {}, \"checks\": []}\n");
    CHECK_THROWS_AS(parse_corpus(dup), UsageError);
    std::istringstream nocheck("{\"entry\": \"x\", \"group\": {}, \"checks\": [{\"p\": 5}]}\n");
    CHECK_THROWS_AS(parse_corpus(nocheck), UsageError);
  }
  SUBCASE("false claim raises an alarm") {
    std::istringstream in(
        "{\"entry\": \"f\", \"group\": {\"construct\": \"semidirect\", \"n\": 11, \"m\": 5}, "
        "\"checks\": [{\"check\": \"theorem_B\", \"p\": 5, \"claim_bound\": -1}]}\n");
    auto R = corpus_run(parse_corpus(in), {});
    REQUIRE(R.reports.size() == 1);
    CHECK_FALSE(R.reports[0].pass);
    CHECK(R.alarms == 1);
  }
  SUBCASE("bad recipes and unknown checks fail without throwing") {
    std::istringstream in(
        "{\"entry\": \"a\", \"group\": {\"construct\": \"nope\"}, \"checks\": [{\"check\": \"order\"}]}\n"
        "{\"entry\": \"b\", \"group\": {\"construct\": \"gl\", \"n\": 2, \"q\": 2}, \"checks\": [{\"check\": \"frobnicate\"}]}\n"
        "{\"entry\": \"c\", \"group\": {\"construct\": \"sl\", \"n\": 2, \"q\": 5}, \"checks\": [{\"check\": \"theorem_A\"}]}\n");
    auto R = corpus_run(parse_corpus(in), {});
    REQUIRE(R.reports.size() == 3);
    for (const auto& r : R.reports) {
      CHECK_FALSE(r.pass);
      CHECK(r.witness.contains("error"));
    }
    CHECK(R.alarms == 3);
  }
  SUBCASE("reports are deterministic across runs and thread counts") {
    const std::string text =
        "{\"entry\": \"sl23\", \"group\": {\"construct\": \"sl\", \"n\": 2, \"q\": 3}, \"checks\": "
        "[{\"check\": \"chartab\"}, {\"check\": \"theorem_A\"}, {\"check\": \"blocks\", \"p\": 3}]}\n"
        "{\"entry\": \"g16\", \"group\": {\"construct\": \"gamma\", \"q\": 2, \"n\": 4}, \"checks\": "
        "[{\"check\": \"theorem_34\", \"p\": 5}, {\"check\": \"section6\"}]}\n"
        "{\"entry\": \"f55\", \"group\": {\"construct\": \"semidirect\", \"n\": 11, \"m\": 5}, \"checks\": "
        "[{\"check\": \"theorem_B\", \"p\": 5}, {\"check\": \"section5\", \"p\": 5}]}\n";
    auto dump = [&](unsigned jobs) {
      std::istringstream in(text);
      CorpusOptions o;
      o.jobs = jobs;
      std::string s;
      corpus_run(parse_corpus(in), o, [&](const Report& r) { s += r.to_json(false).dump() + "\n"; });
      return s;
    };
    const auto one = dump(1);
    CHECK(one == dump(1));
    CHECK(one == dump(2));
    CHECK(one.find("seconds") == std::string::npos);
  }
}
