#pragma once

// Quasi-primitivity and the decomposition Z <= U <= F <= A <= G of a
// quasi-primitive solvable linear group, with one named check per clause.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "slg/action.hpp"
#include "slg/grp.hpp"

namespace slg::qp {

/// Row-echelon span of vectors over one field.
class Span {
 public:
  Span(gf::FieldPtr F, std::size_t n) : F_(std::move(F)), n_(n) {}
  /// Adds v; returns true if it enlarged the span.
  bool add(std::vector<gf::Elem> v);
  bool contains(std::vector<gf::Elem> v) const;
  std::size_t dim() const { return rows_.size(); }
  const gf::Rows& basis() const { return rows_; }

 private:
  void reduce(std::vector<gf::Elem>& v) const;
  gf::FieldPtr F_;
  std::size_t n_;
  gf::Rows rows_;
  std::vector<std::size_t> pivots_;
};

/// Submodule generated by v under the matrices.
Span spin(const std::vector<gf::Matrix>& gens, const std::vector<gf::Elem>& v);
/// Matrices of gens restricted to an invariant subspace, in the given basis
/// (columns are coordinates of images).
std::vector<gf::Matrix> restrict_to(const std::vector<gf::Matrix>& gens, const gf::Rows& basis);
/// dim { Y : S_g Y = Y R_g for all g } for modules of dims d (R) and m (S).
std::size_t hom_dimension(const std::vector<gf::Matrix>& R, const std::vector<gf::Matrix>& S);

/// Matrix generators of a subgroup of a single-block linear group.
std::vector<gf::Matrix> subgroup_matrices(const grp::EnumeratedGroup& G, const grp::Subgroup& H);

/// Irreducibility by spinning one vector from every orbit.
bool is_irreducible(const action::Action& A, const action::OrbitData& O);
bool is_irreducible(const action::Action& A);
/// V restricted to the normal subgroup N is homogeneous.
bool is_homogeneous(const action::Action& A, const action::OrbitData& O, const grp::Subgroup& N);
/// Irreducible summands of each block found by spinning orbit
/// representatives; V is completely reducible iff in every block the chosen
/// summands are independent and fill the block.
struct Reducibility {
  std::vector<std::vector<gf::Rows>> summands;  // per block
  bool completely_reducible = false;
};
Reducibility complete_reducibility(const action::Action& A);

/// Throws UsageError when V is reducible or not a single-block module.
bool is_quasiprimitive(const action::Action& A, std::size_t class_cap = grp::kNormalSubgroupClassCap);

struct Component {
  unsigned p = 0;
  grp::Subgroup P, Z, E, T, U;
  bool extraspecial = false;  // E != Z
  unsigned n = 0;             // e_i = p^n
  bool u_non_unique = false;  // several admissible index-2 cyclic subgroups
};

struct ClauseResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Decomposition {
  std::vector<Component> components;
  grp::Subgroup fitting, Z, U, E, F, A;
  std::uint64_t e = 1;
  unsigned dim_V = 0;
  unsigned dim_W = 0;
  std::uint64_t W_size = 0;
  unsigned b = 0;
  gf::Rows W_basis;
  grp::Index u_generator = 0;
  std::vector<ClauseResult> clauses;

  bool u_non_unique() const;
  bool all_pass() const;
};

/// Builds the subgroups and numbers without asserting the clauses.
Decomposition build(const action::Action& A);
/// Runs every clause check; stores and returns the results.
std::vector<ClauseResult> check_clauses(const action::Action& A, Decomposition& D);
/// build + check_clauses; throws StructuralError naming the first failing clause.
Decomposition decompose(const action::Action& A);

/// |G| divides dim(W) |A/F| e^2 (|W| - 1).
bool order_lemma_check(const Decomposition& D, std::uint64_t group_order);
std::uint64_t order_lemma_bound(const Decomposition& D);

struct FixedPointLaw {
  std::size_t checked = 0;
  std::size_t failures = 0;
};
/// For prime-order g outside A: |C_V(g)|^s = |W|^(e b).
FixedPointLaw clause8_law(const action::Action& A, const Decomposition& D);

nlohmann::json to_json(const Decomposition& D, std::uint64_t group_order);

}  // namespace slg::qp
