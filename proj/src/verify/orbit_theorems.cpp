#include <algorithm>
#include <map>
#include <optional>

#include "slg/errors.hpp"
#include "slg/gf.hpp"
#include "slg/qp.hpp"
#include "slg/verify.hpp"

namespace slg::verify {

using action::Action;
using grp::EnumeratedGroup;
using grp::Index;
using grp::Subgroup;

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json to_json(const std::vector<Check>& checks) {
  auto j = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json o = {{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) o["detail"] = c.detail;
    j.push_back(std::move(o));
  }
  return j;
}

namespace {

bool is_pi0_prime(unsigned p) { return p >= 5; }

bool is_p_power(std::uint64_t n, unsigned p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

void require_hypotheses(const Action& A) {
  if (!A.is_module()) throw UsageError("the orbit theorems need a module action");
  if (!grp::is_solvable(A.group())) throw UsageError("G is not solvable");
  if (!A.is_faithful()) throw UsageError("V is not a faithful G-module");
  if (!qp::complete_reducibility(A).completely_reducible) throw UsageError("V is not completely reducible");
}

// Normal closure of xs, adding generators only when they are new.
Subgroup closure_of(const EnumeratedGroup& G, const std::vector<Index>& xs) {
  std::vector<Index> gens;
  Subgroup H = grp::trivial(G);
  for (auto x : xs)
    if (!H.contains(x)) {
      gens.push_back(x);
      H = grp::normal_closure(G, gens);
    }
  return H;
}

template <class Pred>
std::vector<Index> select(const Subgroup& H, Pred pred) {
  std::vector<Index> out;
  for (auto x : H.elements())
    if (x != 0 && pred(x)) out.push_back(x);
  return out;
}

std::string ratio(std::uint64_t a, std::uint64_t b) { return std::to_string(a) + " vs " + std::to_string(b); }

// Shared state of one search: Fitting series, G/F, orbits and stabilizers.
struct Frame {
  const Action& A;
  const EnumeratedGroup& G;
  Subgroup F, F2;
  grp::Quotient Q;
  action::OrbitData O;
  std::vector<Subgroup> stab;

  explicit Frame(const Action& act) : A(act), G(act.group()) {
    auto FS = grp::fitting_series(G);
    F = FS.at(1);
    F2 = FS.at(2);
    Q = grp::quotient(A.group_ptr(), F);
    O = action::orbits(A);
    for (auto v : O.reps) stab.push_back(action::stabilizer(A, v));
  }

  std::size_t rep_index(std::uint64_t v) const {
    auto it = std::lower_bound(O.reps.begin(), O.reps.end(), v);
    if (it == O.reps.end() || *it != v) throw InternalError("not an orbit representative");
    return static_cast<std::size_t>(it - O.reps.begin());
  }

  bool normal_in_F2(const Subgroup& K) const { return grp::is_normal(G, K) && K.is_subset_of(F2); }

  // The in_pi part of KF/F, found as a Hall subgroup of the image.
  Subgroup top_part(const Subgroup& K, const std::function<bool(unsigned)>& in_pi) const {
    auto img = grp::image(Q, grp::join(G, K, F));
    return grp::hall_subgroup(*Q.group, img, in_pi);
  }
  Subgroup bottom_part(const Subgroup& K, const std::function<bool(unsigned)>& in_pi) const {
    return grp::hall_subgroup(G, grp::intersection(G, K, F), in_pi);
  }
};

struct KInfo {
  std::vector<Check> checks;  // the three checks depending on K alone
  Subgroup O;                 // O_pi0(K cap F)
  bool ok = false;
};

KInfo k_checks(const Frame& fr, const Subgroup& K) {
  KInfo I;
  I.checks.push_back({"K normal and inside F2(G)", fr.normal_in_F2(K), ratio(K.order(), fr.F2.order())});
  auto top = fr.top_part(K, is_pi0_prime);
  I.checks.push_back({"pi0-Hall subgroup of KF/F abelian", grp::is_abelian(*fr.Q.group, top),
                      "order " + std::to_string(top.order())});
  I.O = fr.bottom_part(K, is_pi0_prime);
  I.checks.push_back({"pi0-part of K cap F abelian", grp::is_abelian(fr.G, I.O), "order " + std::to_string(I.O.order())});
  I.ok = all_pass(I.checks);
  return I;
}

// Interning of subgroups by element list.
struct Pool {
  std::vector<Subgroup> items;
  std::map<std::vector<Index>, std::size_t> index;
  std::size_t add(Subgroup H) {
    auto [it, fresh] = index.emplace(H.elements(), items.size());
    if (fresh) items.push_back(std::move(H));
    return it->second;
  }
};

TheoremAWitness search_A(const Frame& fr) {
  const auto& G = fr.G;
  const std::size_t r = fr.O.count();
  auto pi0_elem = [&](Index x) { return grp::is_pi0_number(G.elem_order(x)); };

  Pool N, Ks;
  std::vector<std::size_t> nid(r);
  for (std::size_t i = 0; i < r; ++i) nid[i] = N.add(closure_of(G, select(fr.stab[i], pi0_elem)));

  struct Pair {
    std::size_t k, a, b;
  };
  std::vector<Pair> pairs;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> joined;
  // two distinct orbits; only the zero module has a single one
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = r == 1 ? a : a + 1; b < r; ++b) {
      const auto key = std::minmax(nid[a], nid[b]);
      auto it = joined.find(key);
      if (it == joined.end())
        it = joined.emplace(key, Ks.add(grp::join(G, N.items[key.first], N.items[key.second]))).first;
      pairs.push_back({it->second, a, b});
    }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const Pair& x, const Pair& y) { return Ks.items[x.k].order() < Ks.items[y.k].order(); });

  std::vector<std::optional<KInfo>> info(Ks.items.size());
  std::size_t examined = 0;
  for (const auto& pr : pairs) {
    ++examined;
    const auto& K = Ks.items[pr.k];
    if (!info[pr.k]) info[pr.k] = k_checks(fr, K);
    const auto& I = *info[pr.k];
    if (!I.ok) continue;
    const auto& Sa = fr.stab[pr.a];
    const auto& Sb = fr.stab[pr.b];
    bool inside = true;
    for (const auto* S : {&Sa, &Sb})
      for (auto x : S->elements())
        if (pi0_elem(x) && !K.contains(x)) inside = false;
    bool trivial = true;
    for (auto x : I.O.elements())
      if (x != 0 && Sa.contains(x) && Sb.contains(x)) trivial = false;
    if (!inside || !trivial) continue;
    TheoremAWitness w;
    w.K = K;
    w.v_a = fr.O.reps[pr.a];
    w.v_b = fr.O.reps[pr.b];
    w.checks = I.checks;
    w.checks.push_back({"pi0-elements of both stabilizers inside K", true, ""});
    w.checks.push_back({"trivial joint centralizer in O_pi0(K cap F)", true, ""});
    w.pairs_examined = examined;
    return w;
  }
  throw Alarm("theorem A: no orbit pair admits a normal subgroup K (" + std::to_string(examined) + " pairs)");
}

}  // namespace

TheoremAWitness theorem_A(const Action& A) {
  require_hypotheses(A);
  return search_A(Frame(A));
}

Theorem34Witness theorem_34(const Action& A, unsigned p) {
  if (p < 5 || !gf::is_prime(p)) throw UsageError("the centralizer bound needs a prime p >= 5");
  require_hypotheses(A);
  const Frame fr(A);
  const auto& G = fr.G;
  auto p_elem = [&](Index x) { return is_p_power(G.elem_order(x), p); };
  auto in_p = [p](unsigned q) { return q == p; };

  // Each orbit's minimal K, then the Theorem A subgroup with its two points.
  std::vector<std::pair<Subgroup, std::uint64_t>> cands;
  for (std::size_t i = 0; i < fr.O.count(); ++i) cands.emplace_back(closure_of(G, select(fr.stab[i], p_elem)), fr.O.reps[i]);
  try {
    auto w = search_A(fr);
    cands.emplace_back(w.K, w.v_a);
    cands.emplace_back(w.K, w.v_b);
  } catch (const Alarm&) {
  }
  std::stable_sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
    return std::make_pair(x.first.order(), x.second) < std::make_pair(y.first.order(), y.second);
  });

  std::size_t examined = 0;
  for (const auto& [K, v] : cands) {
    ++examined;
    const auto& S = fr.stab[fr.rep_index(v)];
    std::vector<Check> cs;
    cs.push_back({"K normal and inside F2(G)", fr.normal_in_F2(K), ratio(K.order(), fr.F2.order())});
    bool inside = true;
    for (auto x : S.elements())
      if (p_elem(x) && !K.contains(x)) inside = false;
    cs.push_back({"p-elements of the stabilizer inside K", inside, ""});
    auto top = fr.top_part(K, in_p);
    cs.push_back({"Sylow p-subgroup of KF/F abelian", grp::is_abelian(*fr.Q.group, top), "order " + std::to_string(top.order())});
    auto P = fr.bottom_part(K, in_p);
    cs.push_back({"O_p(K cap F) abelian", grp::is_abelian(G, P), "order " + std::to_string(P.order())});
    const auto c = grp::intersection(G, P, S).order();
    cs.push_back({"|C_{O_p(K cap F)}(v)|^2 <= |O_p(K cap F)|", c * c <= P.order(), ratio(c * c, P.order())});
    if (!all_pass(cs)) continue;
    Theorem34Witness w;
    w.p = p;
    w.K = K;
    w.v = v;
    w.core_order = P.order();
    w.centralizer_order = c;
    w.checks = std::move(cs);
    w.candidates_examined = examined;
    return w;
  }
  throw Alarm("centralizer bound: no candidate (K, v) passes for p = " + std::to_string(p));
}

// ---- replay ----------------------------------------------------------------
//
// Everything below recomputes from the group elements directly: fixed points
// by applying each element, normality by conjugating generators, and the
// top-section checks through cosets of K cap F instead of the quotient group.

namespace {

struct Sections {
  std::vector<Check> checks;
  std::vector<Index> bottom;  // in_pi elements of K cap F
};

Sections replay_sections(const Action& A, const Subgroup& K, const std::function<bool(std::uint64_t)>& pi_order,
                         const std::string& label) {
  const auto& G = A.group();
  Sections out;
  bool normal = true;
  for (auto g : G.generators())
    for (auto k : K.elements())
      if (!K.contains(G.conj(k, g))) normal = false;
  const auto FS = grp::fitting_series(G);
  const auto& F = FS.at(1);
  const auto& F2 = FS.at(2);
  bool inside = true;
  for (auto k : K.elements()) inside = inside && F2.contains(k);
  out.checks.push_back({"K normal and inside F2(G)", normal && inside, ""});

  // Elements of K whose image in G/F has in_pi order, one per coset of K cap F.
  std::vector<Index> KF;
  for (auto k : K.elements())
    if (F.contains(k)) KF.push_back(k);
  std::vector<bool> seen(G.order(), false);
  std::vector<Index> tops;
  for (auto k : K.elements()) {
    if (seen[k]) continue;
    for (auto f : KF) seen[G.mul(k, f)] = true;
    std::uint64_t t = 1;
    for (Index y = k; !F.contains(y); y = G.mul(y, k)) ++t;
    if (pi_order(t)) tops.push_back(k);
  }
  bool top_abelian = true;
  for (std::size_t i = 0; i < tops.size() && top_abelian; ++i)
    for (std::size_t j = i + 1; j < tops.size(); ++j)
      if (!F.contains(G.commutator(tops[i], tops[j]))) {
        top_abelian = false;
        break;
      }
  out.checks.push_back({label + " part of KF/F abelian", top_abelian, std::to_string(tops.size()) + " cosets"});

  for (auto x : KF)
    if (pi_order(G.elem_order(x))) out.bottom.push_back(x);
  bool bottom_abelian = true;
  for (std::size_t i = 0; i < out.bottom.size() && bottom_abelian; ++i)
    for (std::size_t j = i + 1; j < out.bottom.size(); ++j)
      if (G.mul(out.bottom[i], out.bottom[j]) != G.mul(out.bottom[j], out.bottom[i])) {
        bottom_abelian = false;
        break;
      }
  out.checks.push_back({label + " part of K cap F abelian", bottom_abelian, "order " + std::to_string(out.bottom.size())});
  return out;
}

bool fixes(const Action& A, Index g, std::uint64_t v) { return A.image(g, v) == v; }

}  // namespace

std::vector<Check> replay_theorem_A(const Action& A, const Subgroup& K, std::uint64_t v_a, std::uint64_t v_b) {
  const auto& G = A.group();
  auto pi0 = [](std::uint64_t n) { return grp::is_pi0_number(n); };
  auto S = replay_sections(A, K, pi0, "pi0");
  bool inside = true;
  for (Index g = 0; g < G.order(); ++g)
    if (pi0(G.elem_order(g)) && (fixes(A, g, v_a) || fixes(A, g, v_b)) && !K.contains(g)) inside = false;
  S.checks.push_back({"pi0-elements of both stabilizers inside K", inside, ""});
  bool trivial = true;
  for (auto x : S.bottom)
    if (x != 0 && fixes(A, x, v_a) && fixes(A, x, v_b)) trivial = false;
  S.checks.push_back({"trivial joint centralizer in O_pi0(K cap F)", trivial, ""});
  return S.checks;
}

std::vector<Check> replay_theorem_34(const Action& A, unsigned p, const Subgroup& K, std::uint64_t v) {
  const auto& G = A.group();
  auto pp = [p](std::uint64_t n) { return is_p_power(n, p); };
  auto S = replay_sections(A, K, pp, "p");
  bool inside = true;
  for (Index g = 0; g < G.order(); ++g)
    if (pp(G.elem_order(g)) && fixes(A, g, v) && !K.contains(g)) inside = false;
  S.checks.push_back({"p-elements of the stabilizer inside K", inside, ""});
  std::uint64_t c = 0;
  for (auto x : S.bottom) c += fixes(A, x, v);
  const std::uint64_t o = S.bottom.size();
  S.checks.push_back({"|C_{O_p(K cap F)}(v)|^2 <= |O_p(K cap F)|", c * c <= o, ratio(c * c, o)});
  return S.checks;
}

nlohmann::json to_json(const Action& A, const TheoremAWitness& w) {
  const auto& G = A.group();
  return {{"K_order", w.K.order()},
          {"K_generators", grp::generators_of(G, w.K)},
          {"v_a", w.v_a},
          {"v_b", w.v_b},
          {"v_a_coords", A.decode(w.v_a)},
          {"v_b_coords", A.decode(w.v_b)},
          {"pairs_examined", w.pairs_examined},
          {"checks", to_json(w.checks)}};
}

nlohmann::json to_json(const Action& A, const Theorem34Witness& w) {
  const auto& G = A.group();
  return {{"p", w.p},
          {"K_order", w.K.order()},
          {"K_generators", grp::generators_of(G, w.K)},
          {"v", w.v},
          {"v_coords", A.decode(w.v)},
          {"O_p_order", w.core_order},
          {"centralizer_order", w.centralizer_order},
          {"candidates_examined", w.candidates_examined},
          {"checks", to_json(w.checks)}};
}

}  // namespace slg::verify
