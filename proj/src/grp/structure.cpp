#include <algorithm>
#include <set>

#include "slg/errors.hpp"
#include "slg/grp.hpp"

namespace slg::grp {

Subgroup::Subgroup(std::size_t group_order, std::vector<Index> elements)
    : elems_(std::move(elements)), mask_(group_order, false) {
  std::sort(elems_.begin(), elems_.end());
  for (Index x : elems_) mask_[x] = true;
}

bool Subgroup::operator<(const Subgroup& o) const {
  if (elems_.size() != o.elems_.size()) return elems_.size() < o.elems_.size();
  return elems_ < o.elems_;
}

bool Subgroup::is_subset_of(const Subgroup& o) const {
  return std::all_of(elems_.begin(), elems_.end(), [&](Index x) { return o.contains(x); });
}

std::vector<unsigned> prime_divisors(std::uint64_t n) {
  std::vector<unsigned> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<unsigned>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<unsigned>(n));
  return out;
}

std::uint64_t p_part(std::uint64_t n, unsigned p) {
  std::uint64_t r = 1;
  while (n != 0 && n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

unsigned valuation(std::uint64_t n, unsigned p) {
  unsigned v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

bool is_p_group(std::size_t order, unsigned p) { return p_part(order, p) == order; }

Subgroup whole(const EnumeratedGroup& G) {
  std::vector<Index> e(G.order());
  for (Index i = 0; i < G.order(); ++i) e[i] = i;
  return Subgroup(G.order(), std::move(e));
}

Subgroup trivial(const EnumeratedGroup& G) { return Subgroup(G.order(), {0}); }

Subgroup generate(const EnumeratedGroup& G, const std::vector<Index>& gens) {
  std::vector<bool> in(G.order(), false);
  std::vector<Index> e{0};
  in[0] = true;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (Index s : gens) {
      Index y = G.mul(e[i], s);
      if (!in[y]) {
        in[y] = true;
        e.push_back(y);
      }
    }
  return Subgroup(G.order(), std::move(e));
}

std::vector<Index> generators_of(const EnumeratedGroup& G, const Subgroup& H) {
  std::vector<Index> gens;
  Subgroup cur = trivial(G);
  for (Index x : H.elements()) {
    if (cur.order() == H.order()) break;
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = generate(G, gens);
  }
  return gens;
}

Subgroup join(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& K) {
  if (H.is_subset_of(K)) return K;
  if (K.is_subset_of(H)) return H;
  auto gens = generators_of(G, H);
  for (Index x : generators_of(G, K)) gens.push_back(x);
  return generate(G, gens);
}

Subgroup intersection(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& K) {
  std::vector<Index> e;
  for (Index x : H.elements())
    if (K.contains(x)) e.push_back(x);
  return Subgroup(G.order(), std::move(e));
}

namespace {

Subgroup close_under(const EnumeratedGroup& G, std::vector<Index> gens, const std::vector<Index>& by) {
  gens.erase(std::remove(gens.begin(), gens.end(), Index{0}), gens.end());
  Subgroup H = generate(G, gens);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Index g : by)
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Index c = G.conj(gens[i], g);
        if (!H.contains(c)) {
          gens.push_back(c);
          H = generate(G, gens);
          changed = true;
        }
      }
  }
  return H;
}

}  // namespace

Subgroup normal_closure(const EnumeratedGroup& G, const std::vector<Index>& gens, const Subgroup& by) {
  if (by.order() == G.order()) return close_under(G, gens, G.generators());
  return close_under(G, gens, generators_of(G, by));
}

Subgroup normal_closure(const EnumeratedGroup& G, const std::vector<Index>& gens) {
  return close_under(G, gens, G.generators());
}

Subgroup commutator(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& K) {
  auto gh = generators_of(G, H);
  auto gk = generators_of(G, K);
  std::vector<Index> comms;
  for (Index h : gh)
    for (Index k : gk) comms.push_back(G.commutator(h, k));
  std::vector<Index> by = gh;
  by.insert(by.end(), gk.begin(), gk.end());
  return close_under(G, comms, by);
}

Subgroup centralizer(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& within) {
  auto gens = generators_of(G, H);
  std::vector<Index> e;
  for (Index x : within.elements())
    if (std::all_of(gens.begin(), gens.end(), [&](Index h) { return G.mul(x, h) == G.mul(h, x); })) e.push_back(x);
  return Subgroup(G.order(), std::move(e));
}

Subgroup centralizer(const EnumeratedGroup& G, const Subgroup& H) { return centralizer(G, H, whole(G)); }

Subgroup normalizer(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& within) {
  auto gens = generators_of(G, H);
  std::vector<Index> e;
  for (Index x : within.elements())
    if (std::all_of(gens.begin(), gens.end(), [&](Index h) { return H.contains(G.conj(h, x)); })) e.push_back(x);
  return Subgroup(G.order(), std::move(e));
}

Subgroup center(const EnumeratedGroup& G, const Subgroup& H) { return centralizer(G, H, H); }

Subgroup omega1(const EnumeratedGroup& G, const Subgroup& H, unsigned p) {
  std::vector<Index> gens;
  for (Index x : H.elements())
    if (G.elem_order(x) == p) gens.push_back(x);
  // generate() is linear in the generator count; thin the list first.
  Subgroup cur = trivial(G);
  std::vector<Index> kept;
  for (Index x : gens) {
    if (cur.contains(x)) continue;
    kept.push_back(x);
    cur = generate(G, kept);
  }
  return cur;
}

bool is_normal(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& in) {
  auto gh = generators_of(G, H);
  auto gi = in.order() == G.order() ? G.generators() : generators_of(G, in);
  for (Index g : gi)
    for (Index h : gh)
      if (!H.contains(G.conj(h, g))) return false;
  return true;
}

bool is_normal(const EnumeratedGroup& G, const Subgroup& H) { return is_normal(G, H, whole(G)); }

bool is_abelian(const EnumeratedGroup& G, const Subgroup& H) {
  auto gens = generators_of(G, H);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (G.mul(gens[i], gens[j]) != G.mul(gens[j], gens[i])) return false;
  return true;
}

bool is_cyclic(const EnumeratedGroup& G, const Subgroup& H) {
  return std::any_of(H.elements().begin(), H.elements().end(),
                     [&](Index x) { return G.elem_order(x) == H.order(); });
}

bool is_nilpotent(const EnumeratedGroup& G, const Subgroup& H) {
  for (unsigned p : prime_divisors(H.order())) {
    std::uint64_t count = 0;
    for (Index x : H.elements())
      if (is_p_group(G.elem_order(x), p)) ++count;
    if (count != p_part(H.order(), p)) return false;
  }
  return true;
}

namespace {

// Order of xN in G/N.
std::uint64_t coset_order(const EnumeratedGroup& G, Index x, const Subgroup& N) {
  std::uint64_t k = 1;
  Index y = x;
  while (!N.contains(y)) {
    y = G.mul(y, x);
    ++k;
  }
  return k;
}

}  // namespace

bool is_cyclic_quotient(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& N) {
  const std::uint64_t idx = H.order() / N.order();
  if (idx == 1) return true;
  return std::any_of(H.elements().begin(), H.elements().end(),
                     [&](Index x) { return coset_order(G, x, N) == idx; });
}

std::vector<Subgroup> derived_series(const EnumeratedGroup& G, const Subgroup& H) {
  std::vector<Subgroup> s{H};
  while (true) {
    Subgroup d = commutator(G, s.back(), s.back());
    if (d.order() == s.back().order()) break;
    s.push_back(std::move(d));
  }
  return s;
}

std::vector<Subgroup> derived_series(const EnumeratedGroup& G) { return derived_series(G, whole(G)); }

bool is_solvable(const EnumeratedGroup& G, const Subgroup& H) { return derived_series(G, H).back().order() == 1; }
bool is_solvable(const EnumeratedGroup& G) { return is_solvable(G, whole(G)); }

std::size_t derived_length(const EnumeratedGroup& G, const Subgroup& H) {
  auto s = derived_series(G, H);
  if (s.back().order() != 1) throw UsageError("derived length of a non-solvable group");
  return s.size() - 1;
}

Subgroup p_core(const EnumeratedGroup& G, unsigned p, const Subgroup& N) {
  const auto& cd = G.classes();
  std::vector<Index> gens = generators_of(G, N);
  const std::size_t base = gens.size();
  for (Index x : cd.reps) {
    if (N.contains(x) || !is_p_group(coset_order(G, x, N), p)) continue;
    auto trial = std::vector<Index>(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(base));
    trial.push_back(x);
    Subgroup C = normal_closure(G, trial);
    if (is_p_group(C.order() / N.order(), p)) gens.push_back(x);
  }
  if (gens.size() == base) return N;
  Subgroup R = normal_closure(G, gens);
  if (!is_p_group(R.order() / N.order(), p)) throw InternalError("p-core is not a p-group");
  return R;
}

Subgroup p_core(const EnumeratedGroup& G, unsigned p) { return p_core(G, p, trivial(G)); }

Subgroup fitting(const EnumeratedGroup& G, const Subgroup& N) {
  Subgroup F = N;
  for (unsigned p : prime_divisors(G.order() / N.order())) F = join(G, F, p_core(G, p, N));
  return F;
}

Subgroup fitting(const EnumeratedGroup& G) { return fitting(G, trivial(G)); }

FittingSeries fitting_series(const EnumeratedGroup& G) {
  FittingSeries s;
  s.chain.push_back(trivial(G));
  while (s.chain.back().order() < G.order()) {
    Subgroup next = fitting(G, s.chain.back());
    if (next.order() == s.chain.back().order()) {
      s.stalled = true;
      break;
    }
    s.chain.push_back(std::move(next));
  }
  return s;
}

std::vector<Subgroup> normal_subgroups(const EnumeratedGroup& G, std::size_t class_cap) {
  const auto& cd = G.classes();
  if (cd.classes.size() > class_cap)
    throw ResourceError("normal subgroup enumeration limited to " + std::to_string(class_cap) + " classes",
                        cd.classes.size());
  struct Node {
    Subgroup sub;
    std::vector<Index> gens;
  };
  std::vector<Node> found{{trivial(G), {}}};
  std::set<std::vector<Index>> seen{found[0].sub.elements()};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Index r : cd.reps) {
      if (found[i].sub.contains(r)) continue;
      auto gens = found[i].gens;
      gens.push_back(r);
      Subgroup M = normal_closure(G, gens);
      if (seen.insert(M.elements()).second) found.push_back({std::move(M), std::move(gens)});
    }
  }
  std::vector<Subgroup> out;
  for (auto& n : found) out.push_back(std::move(n.sub));
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t Census::nep_of(const std::vector<unsigned>& primes) const {
  std::uint64_t s = 0;
  for (unsigned p : primes)
    if (auto it = nep.find(p); it != nep.end()) s += it->second;
  return s;
}

std::uint64_t Census::nsp_of(const std::vector<unsigned>& primes) const {
  std::uint64_t s = 0;
  for (unsigned p : primes)
    if (auto it = nsp.find(p); it != nsp.end()) s += it->second;
  return s;
}

std::uint64_t Census::nep_pi0() const {
  std::uint64_t s = 0;
  for (auto [p, c] : nep)
    if (p > 3) s += c;
  return s;
}

std::uint64_t Census::nsp_pi0() const {
  std::uint64_t s = 0;
  for (auto [p, c] : nsp)
    if (p > 3) s += c;
  return s;
}

Census census(const EnumeratedGroup& G, const std::vector<Index>& subset) {
  Census c;
  std::map<unsigned, std::set<Index>> subgroups;
  for (Index x : subset) {
    const std::uint32_t o = G.elem_order(x);
    if (o == 1) {
      c.has_identity = true;
      continue;
    }
    if (!gf::is_prime(o)) {
      ++c.non_prime;
      continue;
    }
    ++c.nep[o];
    Index least = x;
    Index y = x;
    for (std::uint32_t k = 2; k < o; ++k) {
      y = G.mul(y, x);
      least = std::min(least, y);
    }
    subgroups[o].insert(least);
  }
  for (const auto& [p, s] : subgroups) c.nsp[p] = s.size();
  return c;
}

Census census(const EnumeratedGroup& G, const Subgroup& H) { return census(G, H.elements()); }

std::vector<Index> difference(const Subgroup& H, const Subgroup& N) {
  std::vector<Index> out;
  for (Index x : H.elements())
    if (!N.contains(x)) out.push_back(x);
  return out;
}

}  // namespace slg::grp

namespace slg::grp {

namespace {

bool pi_number(std::uint64_t n, const std::function<bool(unsigned)>& in_pi) {
  for (unsigned q : prime_divisors(n))
    if (!in_pi(q)) return false;
  return true;
}

}  // namespace

Subgroup hall_subgroup(const EnumeratedGroup& G, const Subgroup& H, const std::function<bool(unsigned)>& in_pi,
                       bool reverse_scan) {
  std::uint64_t target = 1;
  for (unsigned q : prime_divisors(H.order()))
    if (in_pi(q)) target *= p_part(H.order(), q);
  std::vector<Index> cand;
  for (Index x : H.elements())
    if (x != 0 && pi_number(G.elem_order(x), in_pi)) cand.push_back(x);
  if (reverse_scan) std::reverse(cand.begin(), cand.end());
  std::vector<Index> gens;
  Subgroup cur = trivial(G);
  while (cur.order() < target) {
    bool grown = false;
    // cheap pass: x normalizes cur, so cur<x> is a pi-group
    for (Index x : cand) {
      if (cur.contains(x)) continue;
      bool normalizes = true;
      for (Index g : gens) normalizes = normalizes && cur.contains(G.conj(g, x));
      if (!normalizes) continue;
      gens.push_back(x);
      cur = generate(G, gens);
      grown = true;
      break;
    }
    if (grown) continue;
    for (Index x : cand) {
      if (cur.contains(x)) continue;
      auto trial = gens;
      trial.push_back(x);
      auto S = generate(G, trial);
      if (target % S.order() != 0) continue;
      gens = std::move(trial);
      cur = std::move(S);
      grown = true;
      break;
    }
    if (!grown) throw UsageError("no Hall subgroup for the requested primes");
  }
  return cur;
}

Subgroup sylow_subgroup(const EnumeratedGroup& G, const Subgroup& H, unsigned p) {
  return hall_subgroup(G, H, [p](unsigned q) { return q == p; });
}

GroupPtr subgroup_as_group(const EnumeratedGroup& G, const Subgroup& H) {
  std::vector<std::vector<Word>> words;
  for (Index x : generators_of(G, H)) {
    auto w = G.element(x);
    words.emplace_back(w.begin(), w.end());
  }
  return EnumeratedGroup::close(G.rep_ptr(), std::move(words), H.order() + 1);
}

}  // namespace slg::grp
