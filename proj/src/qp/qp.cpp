#include "slg/qp.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "slg/errors.hpp"

namespace slg::qp {

using gf::Elem;
using gf::Matrix;
using grp::EnumeratedGroup;
using grp::Index;
using grp::Subgroup;

void Span::reduce(std::vector<Elem>& v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Elem c = v[pivots_[i]];
    if (c == 0) continue;
    for (std::size_t t = 0; t < n_; ++t)
      if (rows_[i][t]) v[t] = F_->sub(v[t], F_->mul(c, rows_[i][t]));
  }
}

bool Span::add(std::vector<Elem> v) {
  reduce(v);
  std::size_t piv = 0;
  while (piv < n_ && v[piv] == 0) ++piv;
  if (piv == n_) return false;
  const Elem s = F_->inv(v[piv]);
  for (auto& x : v) x = F_->mul(x, s);
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

bool Span::contains(std::vector<Elem> v) const {
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

namespace {

std::vector<Elem> mat_apply(const Matrix& m, const std::vector<Elem>& v) {
  std::vector<Elem> out(m.n());
  gf::apply_raw(m.F(), m.n(), m.entries().data(), v.data(), out.data());
  return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

unsigned log_p(std::uint64_t n, unsigned p) {
  unsigned k = 0;
  while (n > 1 && n % p == 0) {
    n /= p;
    ++k;
  }
  return n == 1 ? k : ~0u;
}

std::uint64_t sp_order(unsigned n, unsigned p) {
  std::uint64_t o = ipow(p, n * n);
  for (unsigned i = 1; i <= n; ++i) o *= ipow(p, 2 * i) - 1;
  return o;
}

// {a in A : [a, x] in Z for all x in gens(E)}
Subgroup kernel_on_quotient(const EnumeratedGroup& G, const Subgroup& A, const Subgroup& E, const Subgroup& Z) {
  const auto gens = grp::generators_of(G, E);
  std::vector<Index> k;
  for (Index a : A.elements()) {
    bool ok = true;
    for (Index x : gens) ok = ok && Z.contains(G.commutator(a, x));
    if (ok) k.push_back(a);
  }
  return Subgroup(G.order(), k);
}

const grp::LinearRep& single_block(const action::Action& A) {
  if (!A.is_module()) throw UsageError("a module action is required");
  auto lin = static_cast<const grp::LinearRep*>(&A.group().rep());
  if (lin->blocks().size() != 1) throw UsageError("a module over a single field is required (mixed blocks are reducible)");
  return *lin;
}

}  // namespace

Span spin(const std::vector<Matrix>& gens, const std::vector<Elem>& v) {
  if (gens.empty()) throw UsageError("spin needs at least one matrix (use the identity)");
  Span S(gens[0].field(), v.size());
  std::vector<std::vector<Elem>> queue;
  if (S.add(v)) queue.push_back(v);
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (const auto& g : gens) {
      auto w = mat_apply(g, queue[h]);
      if (S.add(w)) queue.push_back(std::move(w));
    }
  return S;
}

std::vector<Matrix> restrict_to(const std::vector<Matrix>& gens, const gf::Rows& basis_in) {
  if (gens.empty()) return {};
  const auto& F = gens[0].F();
  const std::size_t n = gens[0].n();
  gf::Rows basis = basis_in;
  auto piv = gf::row_reduce(F, basis, n);
  const std::size_t d = basis.size();
  std::vector<Matrix> out;
  for (const auto& g : gens) {
    Matrix r(gens[0].field(), d);
    for (std::size_t j = 0; j < d; ++j) {
      auto w = mat_apply(g, basis[j]);
      // check membership: w - sum w[piv_k] b_k == 0
      std::vector<Elem> rest = w;
      for (std::size_t k = 0; k < d; ++k) {
        r.set(k, j, w[piv[k]]);
        for (std::size_t t = 0; t < n; ++t) rest[t] = F.sub(rest[t], F.mul(w[piv[k]], basis[k][t]));
      }
      if (std::any_of(rest.begin(), rest.end(), [](Elem x) { return x != 0; }))
        throw UsageError("subspace is not invariant");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t hom_dimension(const std::vector<Matrix>& R, const std::vector<Matrix>& S) {
  if (R.empty() || S.empty()) throw UsageError("hom_dimension needs generator images on both sides");
  const auto& F = R[0].F();
  const std::size_t d = R[0].n(), m = S[0].n();
  gf::Rows eqs;
  for (std::size_t g = 0; g < R.size(); ++g)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<Elem> row(m * d, 0);
        for (std::size_t k = 0; k < m; ++k) row[k * d + j] = F.add(row[k * d + j], S[g](i, k));
        for (std::size_t k = 0; k < d; ++k) row[i * d + k] = F.sub(row[i * d + k], R[g](k, j));
        eqs.push_back(std::move(row));
      }
  return m * d - gf::rank(F, eqs, m * d);
}

std::vector<Matrix> subgroup_matrices(const EnumeratedGroup& G, const Subgroup& H) {
  std::vector<Matrix> out;
  for (Index x : grp::generators_of(G, H)) out.push_back(grp::matrices_of(G, x).at(0));
  if (out.empty()) out.push_back(grp::matrices_of(G, 0).at(0));
  return out;
}

bool is_irreducible(const action::Action& A, const action::OrbitData& O) {
  const auto& lin = single_block(A);
  const std::size_t n = lin.blocks()[0].dim;
  const auto gens = subgroup_matrices(A.group(), grp::whole(A.group()));
  for (auto v : O.reps) {
    if (v == 0) continue;
    auto coords = gf::Vector::from_code(lin.blocks()[0].field, n, v).coords();
    if (spin(gens, coords).dim() != n) return false;
  }
  return true;
}

bool is_irreducible(const action::Action& A) { return is_irreducible(A, action::orbits(A)); }

namespace {

// Summands of one single-field module.  spin(v) is a submodule, so it only
// depends on the orbit of v, and spin(r) is irreducible iff no orbit
// representative inside it spins to something smaller.
std::pair<std::vector<gf::Rows>, bool> block_summands(const action::Action& A) {
  const auto& blk = A.blocks()[0];
  const auto gens = subgroup_matrices(A.group(), grp::whole(A.group()));
  const auto O = action::orbits(A);
  std::vector<Span> spans;
  std::vector<std::vector<Elem>> coords;
  for (auto v : O.reps) {
    coords.push_back(gf::Vector::from_code(blk.field, blk.dim, v).coords());
    spans.push_back(spin(gens, coords.back()));
  }
  Span total(blk.field, blk.dim);
  std::vector<gf::Rows> summands;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (O.reps[i] == 0) continue;
    bool irreducible = true;
    for (std::size_t j = 0; j < spans.size() && irreducible; ++j)
      if (O.reps[j] != 0 && spans[j].dim() < spans[i].dim() && spans[i].contains(coords[j])) irreducible = false;
    if (!irreducible) continue;
    // keep it only if the sum stays direct
    Span trial = total;
    std::size_t grew = 0;
    for (const auto& r : spans[i].basis()) grew += trial.add(r);
    if (grew != spans[i].dim()) continue;
    total = trial;
    summands.push_back(spans[i].basis());
  }
  return {summands, total.dim() == blk.dim};
}

}  // namespace

Reducibility complete_reducibility(const action::Action& A) {
  if (!A.is_module()) throw UsageError("a module action is required");
  Reducibility R;
  R.completely_reducible = true;
  const auto& G = A.group();
  if (A.blocks().size() == 1) {
    auto [s, ok] = block_summands(A);
    R.summands.push_back(std::move(s));
    R.completely_reducible = ok;
    return R;
  }
  // V is completely reducible iff every block is
  for (std::size_t b = 0; b < A.blocks().size(); ++b) {
    std::vector<Matrix> gens;
    for (Index g : G.generators()) gens.push_back(grp::matrices_of(G, g).at(b));
    if (gens.empty()) gens.push_back(Matrix::identity(A.blocks()[b].field, A.blocks()[b].dim));
    auto Ab = action::Action::on_module(grp::from_matrices(gens));
    auto [s, ok] = block_summands(Ab);
    R.summands.push_back(std::move(s));
    R.completely_reducible = R.completely_reducible && ok;
  }
  return R;
}

bool is_homogeneous(const action::Action& A, const action::OrbitData& O, const Subgroup& N) {
  const auto& lin = single_block(A);
  const auto F = lin.blocks()[0].field;
  const std::size_t n = lin.blocks()[0].dim;
  const auto S = subgroup_matrices(A.group(), N);
  // A cyclic N-submodule of least dimension is irreducible; since N is normal
  // the minimum over G-orbit representatives is the global minimum.
  std::optional<Span> best;
  for (auto v : O.reps) {
    if (v == 0) continue;
    auto X = spin(S, gf::Vector::from_code(F, n, v).coords());
    if (!best || X.dim() < best->dim()) best = X;
    if (best->dim() == 1) break;
  }
  if (!best) return true;  // zero module
  const auto R = restrict_to(S, best->basis());
  const std::size_t d = best->dim();
  return hom_dimension(R, S) * d == hom_dimension(R, R) * n;
}

bool is_quasiprimitive(const action::Action& A, std::size_t class_cap) {
  single_block(A);
  const auto O = action::orbits(A);
  if (!is_irreducible(A, O)) throw UsageError("module is reducible");
  for (const auto& N : grp::normal_subgroups(A.group(), class_cap))
    if (!is_homogeneous(A, O, N)) return false;
  return true;
}

bool Decomposition::u_non_unique() const {
  return std::any_of(components.begin(), components.end(), [](const Component& c) { return c.u_non_unique; });
}

bool Decomposition::all_pass() const {
  return !clauses.empty() && std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.pass; });
}

Decomposition build(const action::Action& Act) {
  const auto& lin = single_block(Act);
  const auto& G = Act.group();
  const auto Fld = lin.blocks()[0].field;
  const auto all = grp::whole(G);
  Decomposition D;
  D.dim_V = static_cast<unsigned>(lin.blocks()[0].dim);
  D.fitting = grp::fitting(G);
  D.E = D.Z = D.U = grp::trivial(G);
  for (unsigned p : grp::prime_divisors(D.fitting.order())) {
    Component c;
    c.p = p;
    c.P = grp::p_core(G, p);
    c.Z = grp::omega1(G, grp::center(G, c.P), p);
    if (p % 2 == 1) {
      c.E = grp::omega1(G, c.P, p);
    } else {
      Subgroup C = c.P;
      bool stable = false;
      for (int step = 0; step < 20 && !stable; ++step) {
        auto next = grp::commutator(G, C, all);
        stable = next == C;
        C = std::move(next);
      }
      if (!stable) throw StructuralError("definition", "[P,G,...,G] did not stabilize within 20 steps");
      c.E = C.order() == 1 ? c.Z : C;
    }
    c.extraspecial = !(c.E == c.Z);
    if (c.extraspecial) {
      const unsigned k = log_p(c.E.order(), p);
      if (k != ~0u && k % 2 == 1) c.n = (k - 1) / 2;
    }
    c.T = grp::centralizer(G, c.E, c.P);
    if (p % 2 == 1 || grp::is_cyclic(G, c.T)) {
      c.U = c.T;
    } else {
      std::set<Subgroup> found;
      for (Index x : c.T.elements()) {
        if (2 * G.elem_order(x) != c.T.order()) continue;
        auto cand = grp::generate(G, {x});
        if (grp::is_normal(G, cand) && grp::centralizer(G, cand, c.T) == cand) found.insert(cand);
      }
      if (found.empty()) throw StructuralError("U_i", "no normal self-centralizing index-2 cyclic subgroup of T_2");
      c.U = *found.begin();
      c.u_non_unique = found.size() > 1;
    }
    if (c.extraspecial) {
      D.E = grp::join(G, D.E, c.E);
      D.Z = grp::join(G, D.Z, c.Z);
      D.e *= ipow(p, c.n);
    }
    D.U = grp::join(G, D.U, c.U);
    D.components.push_back(std::move(c));
  }
  D.F = grp::join(G, D.E, D.U);
  D.A = grp::centralizer(G, D.U);
  for (Index u : D.U.elements())
    if (G.elem_order(u) == D.U.order()) {
      D.u_generator = u;
      break;
    }
  std::vector<Elem> v0(D.dim_V, 0);
  v0[0] = 1;
  auto W = spin({grp::matrices_of(G, D.u_generator)[0]}, v0);
  D.W_basis = W.basis();
  D.dim_W = static_cast<unsigned>(W.dim());
  D.W_size = ipow(Fld->q(), D.dim_W);
  const std::uint64_t denom = std::uint64_t{D.dim_W} * D.e;
  D.b = D.dim_V % denom == 0 ? static_cast<unsigned>(D.dim_V / denom) : 0;
  return D;
}

namespace {

ClauseResult clause(std::string name, std::vector<std::string> failures) {
  ClauseResult r;
  r.name = std::move(name);
  r.pass = failures.empty();
  for (const auto& f : failures) r.detail += (r.detail.empty() ? "" : "; ") + f;
  return r;
}

}  // namespace

FixedPointLaw clause8_law(const action::Action& Act, const Decomposition& D) {
  const auto& G = Act.group();
  FixedPointLaw law;
  for (Index g = 0; g < G.order(); ++g) {
    const auto s = G.elem_order(g);
    if (D.A.contains(g) || !gf::is_prime(s)) continue;
    ++law.checked;
    const auto f = gf::fixed_space(grp::matrices_of(G, g)[0]).basis.size();
    if (std::uint64_t{s} * f != std::uint64_t{D.dim_W} * D.e * D.b) ++law.failures;
  }
  return law;
}

std::vector<ClauseResult> check_clauses(const action::Action& Act, Decomposition& D) {
  const auto& G = Act.group();
  const auto all = grp::whole(G);
  const auto Fld = single_block(Act).blocks()[0].field;
  std::vector<ClauseResult> out;

  {  // 1
    std::vector<std::string> f;
    if (!(grp::intersection(G, D.E, D.U) == D.Z)) f.push_back("E n U != Z");
    if (!(grp::center(G, D.E) == D.Z)) f.push_back("Z(E) != Z");
    if (grp::commutator(G, D.E, D.U).order() != 1) f.push_back("[E,U] != 1");
    if (!grp::centralizer(G, D.F).is_subset_of(D.F)) f.push_back("C_G(F) not inside F");
    const Subgroup* chain[] = {&D.Z, &D.U, &D.F, &D.A};
    for (int i = 0; i < 4; ++i) {
      if (!grp::is_normal(G, *chain[i])) f.push_back("chain member " + std::to_string(i) + " not normal");
      if (i > 0 && !chain[i - 1]->is_subset_of(*chain[i])) f.push_back("chain not increasing at " + std::to_string(i));
    }
    out.push_back(clause("clause1_central_product", f));
  }
  {  // 2
    std::vector<std::string> f;
    if (D.F.order() * D.Z.order() != D.E.order() * D.U.order()) f.push_back("|F/U| != |E/Z|");
    if (!grp::commutator(G, D.F, D.F).is_subset_of(D.U)) f.push_back("F/U not abelian");
    std::uint64_t rad = 1;
    for (const auto& c : D.components)
      if (c.extraspecial) rad *= c.p;
    for (Index x : D.F.elements())
      if (!D.U.contains(G.pow(x, static_cast<std::int64_t>(rad)))) {
        f.push_back("F/U exponent not squarefree");
        break;
      }
    out.push_back(clause("clause2_F_mod_U", f));
  }
  {  // 3
    std::vector<std::string> f;
    for (const auto& c : D.components) {
      if (!c.extraspecial) continue;
      const std::string tag = "E_" + std::to_string(c.p) + ": ";
      if (c.Z.order() != c.p) f.push_back(tag + "|Z_i| != p");
      if (!(grp::center(G, c.E) == c.Z)) f.push_back(tag + "Z(E_i) != Z_i");
      if (!(grp::commutator(G, c.E, c.E) == c.Z)) f.push_back(tag + "[E_i,E_i] != Z_i");
      if (c.n == 0 || c.E.order() != ipow(c.p, 1 + 2 * c.n)) f.push_back(tag + "order is not p^(1+2n), n>=1");
      for (Index x : c.E.elements())
        if (!c.Z.contains(G.pow(x, c.p))) {
          f.push_back(tag + "E_i/Z_i not elementary");
          break;
        }
    }
    if (D.dim_V % D.e != 0) f.push_back("e does not divide dim V");
    if (std::gcd<std::uint64_t>(Fld->p(), D.e) != 1) f.push_back("gcd(char, e) != 1");
    out.push_back(clause("clause3_extraspecial", f));
  }
  {  // 4
    std::vector<std::string> f;
    if (!(D.A == grp::centralizer(G, D.U))) f.push_back("A != C_G(U)");
    if (!(kernel_on_quotient(G, D.A, D.E, D.Z) == D.F)) f.push_back("A/F not faithful on E/Z");
    out.push_back(clause("clause4_A_faithful", f));
  }
  {  // 5
    std::vector<std::string> f;
    for (const auto& c : D.components) {
      if (!c.extraspecial) continue;
      if (!D.A.is_subset_of(grp::centralizer(G, c.Z))) f.push_back("A does not centralize Z_" + std::to_string(c.p));
      const auto C = kernel_on_quotient(G, D.A, c.E, c.Z);
      const std::uint64_t idx = D.A.order() / C.order();
      if (c.n == 0 || sp_order(c.n, c.p) % idx != 0)
        f.push_back("|A/C_A(E_" + std::to_string(c.p) + "/Z)| = " + std::to_string(idx) + " does not divide |Sp|");
    }
    out.push_back(clause("clause5_symplectic", f));
  }
  {  // 6
    std::vector<std::string> f;
    if (!grp::is_cyclic(G, D.U)) f.push_back("U not cyclic");
    const auto u = grp::matrices_of(G, D.u_generator)[0];
    const auto Wm = restrict_to({u}, D.W_basis);
    // irreducible: every nonzero vector of W spins to W
    const auto n = D.dim_W;
    if (D.W_size <= (1u << 20)) {
      std::vector<bool> seen(D.W_size, false);
      for (std::uint64_t code = 1; code < D.W_size && f.empty(); ++code) {
        if (seen[code]) continue;
        auto c = gf::Vector::from_code(Fld, n, code).coords();
        auto S = spin({Wm[0]}, c);
        if (S.dim() != n) f.push_back("W not irreducible under U");
        // mark the U-orbit
        for (std::uint32_t k = 0; k < D.U.order(); ++k) {
          seen[gf::Vector(Fld, c).code()] = true;
          c = mat_apply(Wm[0], c);
        }
      }
    } else {
      f.push_back("W too large for the irreducibility check");
    }
    Matrix power = Matrix::identity(Fld, n);
    for (std::uint32_t k = 1; k < D.U.order(); ++k) {
      power = power * Wm[0];
      if ((power - Matrix::identity(Fld, n)).rank() != n) {
        f.push_back("u^" + std::to_string(k) + " has fixed points on W");
        break;
      }
    }
    out.push_back(clause("clause6_U_fixed_point_free", f));
  }
  {  // 7
    std::vector<std::string> f;
    if (D.b == 0 || std::uint64_t{D.dim_W} * D.e * D.b != D.dim_V) f.push_back("|V| != |W|^(eb)");
    out.push_back(clause("clause7_V_size", f));
  }
  {  // 8
    std::vector<std::string> f;
    const auto idx = G.order() / D.A.order();
    if (D.dim_W % idx != 0) f.push_back("|G:A| = " + std::to_string(idx) + " does not divide dim W");
    const auto law = clause8_law(Act, D);
    if (law.failures) f.push_back(std::to_string(law.failures) + " of " + std::to_string(law.checked) + " elements break the fixed-point law");
    out.push_back(clause("clause8_index_and_fixed_points", f));
  }
  {  // 9
    std::vector<std::string> f;
    if (!grp::is_cyclic_quotient(G, all, D.A)) f.push_back("G/A not cyclic");
    out.push_back(clause("clause9_G_mod_A_cyclic", f));
  }
  D.clauses = out;
  return out;
}

Decomposition decompose(const action::Action& A) {
  auto D = build(A);
  for (const auto& c : check_clauses(A, D))
    if (!c.pass) throw StructuralError(c.name, c.detail);
  return D;
}

std::uint64_t order_lemma_bound(const Decomposition& D) {
  return std::uint64_t{D.dim_W} * (D.A.order() / D.F.order()) * D.e * D.e * (D.W_size - 1);
}

bool order_lemma_check(const Decomposition& D, std::uint64_t group_order) {
  return order_lemma_bound(D) % group_order == 0;
}

nlohmann::json to_json(const Decomposition& D, std::uint64_t group_order) {
  nlohmann::json j;
  j["orders"] = {{"Z", D.Z.order()}, {"U", D.U.order()}, {"E", D.E.order()}, {"F", D.F.order()},
                 {"A", D.A.order()}, {"G", group_order}, {"fitting", D.fitting.order()}};
  j["e"] = D.e;
  j["e_i"] = nlohmann::json::array();
  for (const auto& c : D.components)
    if (c.extraspecial) j["e_i"].push_back({{"p", c.p}, {"e_i", ipow(c.p, c.n)}});
  j["W_size"] = D.W_size;
  j["dim_W"] = D.dim_W;
  j["b"] = D.b;
  j["u_non_unique"] = D.u_non_unique();
  j["order_lemma"] = {{"bound", order_lemma_bound(D)}, {"divides", order_lemma_check(D, group_order)}};
  j["clauses"] = nlohmann::json::array();
  for (const auto& c : D.clauses) j["clauses"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return j;
}

}  // namespace slg::qp
