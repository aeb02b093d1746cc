#pragma once

// Constructors for the linear and permutation groups used in the corpus, and
// alternating-form utilities.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "slg/gf.hpp"
#include "slg/grp.hpp"

namespace slg::families {

/// Generators plus their ambient space.  Linear constructions have one or
/// more diagonal blocks (several blocks only for mixed fields); permutation
/// constructions have a degree.
struct Construction {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  std::vector<grp::LinearRep::Block> blocks;
  std::vector<std::vector<gf::Matrix>> generators;  // one matrix per block
  std::size_t degree = 0;                           // permutation constructions
  std::vector<std::vector<grp::Word>> permutations;
  std::optional<std::uint64_t> predicted_order;

  bool is_perm() const { return degree != 0; }
  bool single_block() const { return !is_perm() && blocks.size() == 1; }
  const gf::FieldPtr& field() const { return blocks.at(0).field; }
  std::size_t dim() const { return blocks.at(0).dim; }
  /// Single-block generators.
  std::vector<gf::Matrix> matrices() const;
  grp::GroupPtr close(std::size_t cap = grp::kDefaultOrderCap) const;
  nlohmann::json to_json() const;
};

Construction from_matrices(std::string name, const std::vector<gf::Matrix>& gens);
Construction from_group(std::string name, const grp::EnumeratedGroup& G, const grp::Subgroup& H);

/// Gamma(q^n) = { x -> a x^sigma }.  Default ambient: GF(p)^(n k); with
/// over_prime_field = false the ambient is GF(q)^n.
Construction gamma(std::uint32_t q, unsigned n, bool over_prime_field = true);
Construction gamma0(std::uint32_t q, unsigned n, bool over_prime_field = true);
/// Subgroup of Gamma(q^n) generated by x -> g^u x and x -> x^(q^s).
Construction semilinear(std::uint32_t q, unsigned n, std::uint64_t u, unsigned s);

/// Clock and shift matrices on GF(r)^(p^m); p odd, p | r - 1.
Construction extraspecial_rep(unsigned p, unsigned m, std::uint32_t r);
/// 2-groups over GF(3): "Q8", "D8" (degree 2) and "D8oQ8" (degree 4).
Construction extraspecial2(const std::string& type);
/// Normalizer pieces of extraspecial_rep(p, 1, r):
///   "full_sp": E, Fourier, quadratic diagonal
///   "borel":   E, quadratic diagonal, e_j -> e_{2j}, a primitive scalar
///   "torus":   E, e_j -> e_{2j}, a primitive scalar
///   "quaternion": E, Fourier, e_j -> e_{2j}, a primitive scalar (p = 1 mod 4:
///              the last two act as Q8 on E/Z, irreducibly)
Construction extraspecial_normalizer(unsigned p, std::uint32_t r, const std::string& part);

Construction general_linear(unsigned n, std::uint32_t q);
Construction special_linear(unsigned n, std::uint32_t q);
/// Sp(2m, q) for the standard form [[0, I], [-I, 0]], generated by transvections.
Construction symplectic(unsigned two_m, std::uint32_t q);
/// (D8 o Q8).D10 inside Sp(4,3): the normalizer of E<x> in N_{Sp}(E), x of order 5.
Construction d8q8_f10();

/// Direct product acting on the direct sum; mixed fields give two blocks.
Construction direct_sum(const Construction& a, const Construction& b);
Construction tensor_embed(const Construction& a, const Construction& b);
/// H wr S_m (m >= 2) on m copies of H's space.  `top` is "sym" or "cyclic".
Construction wreath_embed(const Construction& H, unsigned m, const std::string& top = "sym");

// Permutation constructions.
Construction symmetric(unsigned n);
Construction alternating(unsigned n);
/// Z_n : Z_m on n points (x -> x + 1, x -> a x with a of order m mod n).
Construction semidirect_cyclic(unsigned n, unsigned m);
/// V : G on |V| points for a single-block linear construction G.
Construction affine(const Construction& G);
/// Disjoint union action of two permutation constructions.
Construction perm_product(const Construction& a, const Construction& b);

/// Builds a construction from a recipe such as {"construct":"gamma","q":2,"n":4}
/// or a literal group spec ({"kind":...}).
Construction from_recipe(const nlohmann::json& recipe);

// Alternating forms.
struct SymplecticSpace {
  gf::Matrix gram;
  static SymplecticSpace standard(unsigned two_m, gf::FieldPtr F);
  std::size_t dim() const { return gram.n(); }
  bool valid() const;
};
enum class Isotropy { nonsingular, totally_isotropic, mixed };
std::string to_string(Isotropy t);

bool is_symplectic(const gf::Matrix& m, const SymplecticSpace& S);
/// `basis` holds the spanning vectors of U (assumed independent).
Isotropy isotropy_type(const std::vector<gf::Vector>& basis, const SymplecticSpace& S);
/// Basis of the space of alternating forms preserved by every generator.
std::vector<gf::Matrix> invariant_alternating_forms(const std::vector<gf::Matrix>& gens);
/// A non-degenerate invariant alternating form, if one exists among small
/// combinations of the basis.
std::optional<SymplecticSpace> invariant_symplectic_form(const std::vector<gf::Matrix>& gens);
/// P with P^T B P = standard Gram.
gf::Matrix symplectic_basis_change(const SymplecticSpace& S);

}  // namespace slg::families
