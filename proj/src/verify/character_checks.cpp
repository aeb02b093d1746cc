#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "slg/errors.hpp"
#include "slg/gf.hpp"
#include "slg/verify.hpp"

namespace slg::verify {

using grp::Index;
using BigInt = boost::multiprecision::cpp_int;

namespace {

void require_solvable_p(const grp::GroupPtr& G, unsigned p) {
  if (p < 5 || !gf::is_prime(p)) throw UsageError("needs a prime p >= 5");
  if (!grp::is_solvable(*G)) throw UsageError("G is not solvable");
}

BigInt power(unsigned p, std::uint64_t e) { return boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e)); }

std::string le(std::uint64_t a, const BigInt& b) { return std::to_string(a) + " <= " + b.str(); }

std::uint64_t pi0_part(std::uint64_t n) {
  while (n % 2 == 0) n /= 2;
  while (n % 3 == 0) n /= 3;
  return n;
}

std::set<unsigned> primes_of(std::uint64_t n) {
  auto v = grp::prime_divisors(n);
  return {v.begin(), v.end()};
}

// First triple (in index order) whose product is divisible by target.
// Distinct indices when `distinct`, else with repetition.
std::optional<std::array<std::size_t, 3>> triple(const std::vector<std::uint64_t>& xs, std::uint64_t target,
                                                 bool distinct) {
  const std::size_t k = xs.size();
  const std::size_t d = distinct ? 1 : 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + d; j < k; ++j)
      for (std::size_t l = j + d; l < k; ++l) {
        // reduce the target by gcds to stay inside 64 bits
        std::uint64_t t = target;
        for (auto x : {xs[i], xs[j], xs[l]}) t /= std::gcd(t, x);
        if (t == 1) return std::array<std::size_t, 3>{i, j, l};
      }
  return std::nullopt;
}

}  // namespace

TheoremBResult theorem_B(const grp::GroupPtr& G, const chartab::CharTable& T, unsigned p, std::optional<long> claim) {
  require_solvable_p(G, p);
  if (grp::p_core(*G, p).order() != 1) throw UsageError("O_p(G) is not trivial");
  const auto B = chartab::p_blocks(T, p);
  TheoremBResult r;
  r.p = p;
  r.n = B.n;
  r.min_defect = B.min_defect();
  r.bound = claim ? *claim : static_cast<long>(3 * B.n / 5);
  r.blocks = B.blocks.size();
  for (std::size_t i = 0; i < B.blocks.size(); ++i)
    if (B.block_defect[i] == r.min_defect) {
      r.witness_char = B.blocks[i].front();
      break;
    }
  r.checks.push_back({"min block defect <= bound", static_cast<long>(r.min_defect) <= r.bound,
                      std::to_string(r.min_defect) + " <= " + std::to_string(r.bound)});

  // Replay through the linking graph: the witness block's defect recomputed
  // from degrees alone.
  const auto L = chartab::linking_blocks(T, p);
  unsigned replayed = B.n + 1;
  for (const auto& blk : L) {
    if (std::find(blk.begin(), blk.end(), r.witness_char) == blk.end()) continue;
    unsigned v = ~0u;
    for (auto c : blk) v = std::min(v, grp::valuation(T.degrees[c], p));
    replayed = B.n - v;
  }
  r.checks.push_back({"witness block defect replayed on the linking partition", replayed == r.min_defect,
                      std::to_string(replayed)});
  return r;
}

nlohmann::json to_json(const TheoremBResult& r) {
  return {{"p", r.p},           {"n", r.n},
          {"min_defect", r.min_defect}, {"bound", r.bound},
          {"blocks", r.blocks}, {"witness_character", r.witness_char},
          {"checks", to_json(r.checks)}};
}

SectionReport section5(const grp::GroupPtr& G, const chartab::CharTable& T, unsigned p) {
  require_solvable_p(G, p);
  const auto S = chartab::degree_stats(G, T, p);
  const std::uint64_t index = G->order() / grp::fitting(*G).order();
  const std::uint64_t index_p = grp::p_part(index, p);
  const std::uint64_t target = pi0_part(index);
  const unsigned a = S.a, as = S.a_class;
  SectionReport R;
  auto& cs = R.checks;

  cs.push_back({"|G:F|_p <= p^(3a)", index_p <= power(p, 3 * a), le(index_p, power(p, 3 * a))});
  cs.push_back({"b(P) <= p^(4a)", S.b_P <= power(p, 4 * a), le(S.b_P, power(p, 4 * a))});
  if (a == 0) {
    cs.push_back({"dl(P) <= log2(a) + 7", S.dl_P <= 1 && index_p == 1,
                  "a = 0: P abelian (dl " + std::to_string(S.dl_P) + ") and p does not divide |G:F|"});
  } else {
    const bool ok = S.dl_P <= 7 || (S.dl_P - 7 < 64 && (std::uint64_t{1} << (S.dl_P - 7)) <= a);
    cs.push_back({"dl(P) <= log2(a) + 7", ok, "dl " + std::to_string(S.dl_P) + ", a " + std::to_string(a)});
  }
  cs.push_back({"|G:F|_p <= p^(3a*)", index_p <= power(p, 3 * as), le(index_p, power(p, 3 * as))});
  cs.push_back({"b*(P) <= p^(4a*)", S.b_star_P <= power(p, 4 * as), le(S.b_star_P, power(p, 4 * as))});
  const auto e = 2ull * as * (4ull * as + 1);
  cs.push_back({"|P'| <= p^(2a*(4a*+1))", S.P_derived_order <= power(p, e), le(S.P_derived_order, power(p, e))});

  const auto td = triple(T.degrees, target, T.size() >= 3);
  cs.push_back({"|G:F|_pi0 divides a product of three distinct degrees", td.has_value(),
                "|G:F|_pi0 = " + std::to_string(target)});
  const auto tc = triple(T.class_sizes, target, false);
  cs.push_back({"|G:F|_pi0 divides a product of three class sizes", tc.has_value(), ""});

  auto& w = R.witness;
  w = {{"p", p},
       {"a", a},
       {"a_class", as},
       {"index_F", index},
       {"index_F_p", index_p},
       {"index_F_pi0", target},
       {"sylow_order", S.sylow_order},
       {"b_P", S.b_P},
       {"dl_P", S.dl_P},
       {"b_star_P", S.b_star_P},
       {"P_derived_order", S.P_derived_order}};
  if (td) {
    w["degree_triple"] = *td;
    w["degree_triple_values"] = {T.degrees[(*td)[0]], T.degrees[(*td)[1]], T.degrees[(*td)[2]]};
  }
  if (tc) {
    w["class_triple"] = *tc;
    w["class_triple_sizes"] = {T.class_sizes[(*tc)[0]], T.class_sizes[(*tc)[1]], T.class_sizes[(*tc)[2]]};
  }
  return R;
}

SectionReport section6(const grp::GroupPtr& G, const chartab::CharTable& T) {
  if (!grp::is_solvable(*G)) throw UsageError("G is not solvable");
  std::set<unsigned> rho, rho_star;
  unsigned sigma = 0, sigma_star = 0;
  std::size_t sigma_char = 0, sigma_class = 0;
  for (std::size_t c = 0; c < T.size(); ++c) {
    auto ps = primes_of(T.degrees[c]);
    rho.insert(ps.begin(), ps.end());
    if (ps.size() > sigma) sigma = static_cast<unsigned>(ps.size()), sigma_char = c;
  }
  for (std::size_t k = 0; k < T.class_sizes.size(); ++k) {
    auto ps = primes_of(T.class_sizes[k]);
    rho_star.insert(ps.begin(), ps.end());
    if (ps.size() > sigma_star) sigma_star = static_cast<unsigned>(ps.size()), sigma_class = k;
  }
  SectionReport R;
  auto& cs = R.checks;
  cs.push_back({"|rho| <= 3 sigma + 2", rho.size() <= 3 * sigma + 2,
                std::to_string(rho.size()) + " <= " + std::to_string(3 * sigma + 2)});

  // Ito: p is outside rho exactly when G has a normal abelian Sylow p-subgroup.
  std::set<unsigned> ito;
  for (unsigned p : grp::prime_divisors(G->order())) {
    auto P = grp::sylow_subgroup(*G, grp::whole(*G), p);
    if (!(grp::is_normal(*G, P) && grp::is_abelian(*G, P))) ito.insert(p);
  }
  cs.push_back({"rho equals the primes without a normal abelian Sylow subgroup", ito == rho, ""});
  const auto central = primes_of(G->order() / grp::center(*G, grp::whole(*G)).order());
  cs.push_back({"rho* equals pi(G/Z(G))", central == rho_star, ""});
  cs.push_back({"|rho*| <= 4 sigma*", rho_star.size() <= 4 * sigma_star,
                std::to_string(rho_star.size()) + " <= " + std::to_string(4 * sigma_star)});

  R.witness = {{"rho", rho},
               {"sigma", sigma},
               {"sigma_character", sigma_char},
               {"sigma_degree", T.degrees.empty() ? 1 : T.degrees[sigma_char]},
               {"rho_star", rho_star},
               {"sigma_star", sigma_star},
               {"sigma_star_class_size", T.class_sizes.empty() ? 1 : T.class_sizes[sigma_class]}};
  return R;
}

}  // namespace slg::verify
