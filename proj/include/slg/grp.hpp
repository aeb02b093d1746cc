#pragma once

// Finite groups given by generators, enumerated in full.
//
// Elements are fixed-width words of uint32 values interpreted by a
// Representation (permutation images, matrix entries, or coset ids).  After
// closure every element has an index; index 0 is the identity and all
// structural computations work on indices.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "slg/gf.hpp"

namespace slg::grp {

using Word = std::uint32_t;
using Index = std::uint32_t;

inline constexpr std::size_t kDefaultOrderCap = 1'000'000;
inline constexpr std::size_t kCayleyTableLimit = 1024;

class Representation {
 public:
  virtual ~Representation() = default;
  virtual std::size_t width() const = 0;
  virtual void identity(Word* out) const = 0;
  /// out = a * b, where b acts first.
  virtual void multiply(const Word* a, const Word* b, Word* out) const = 0;
  virtual std::string kind() const = 0;
};

using RepPtr = std::shared_ptr<const Representation>;

class PermRep final : public Representation {
 public:
  explicit PermRep(std::size_t degree) : degree_(degree) {}
  std::size_t width() const override { return degree_; }
  std::size_t degree() const { return degree_; }
  void identity(Word* out) const override;
  void multiply(const Word* a, const Word* b, Word* out) const override;
  std::string kind() const override { return "perm"; }

 private:
  std::size_t degree_;
};

/// Block-diagonal matrices; each block may live over its own field.  A single
/// block is an ordinary matrix group.
class LinearRep final : public Representation {
 public:
  struct Block {
    gf::FieldPtr field;
    std::size_t dim;
  };
  explicit LinearRep(std::vector<Block> blocks);
  std::size_t width() const override { return width_; }
  void identity(Word* out) const override;
  void multiply(const Word* a, const Word* b, Word* out) const override;
  std::string kind() const override { return blocks_.size() == 1 ? "matrix" : "blocks"; }

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t offset(std::size_t block) const { return offsets_[block]; }
  std::vector<Word> encode(const std::vector<gf::Matrix>& mats) const;
  gf::Matrix block_matrix(const Word* w, std::size_t block) const;

 private:
  std::vector<Block> blocks_;
  std::vector<std::size_t> offsets_;
  std::size_t width_ = 0;
};

class EnumeratedGroup;
using GroupPtr = std::shared_ptr<const EnumeratedGroup>;

struct ClassData {
  std::vector<std::vector<Index>> classes;  // sorted by (order, size, min index)
  std::vector<std::uint32_t> class_of;
  std::vector<Index> reps;  // minimal index in each class
};

class EnumeratedGroup {
 public:
  /// Breadth-first closure.  Generators are applied in sorted word order so the
  /// element numbering depends only on the generating set.  Throws
  /// ResourceError with the partial count when more than `cap` elements appear.
  static GroupPtr close(RepPtr rep, std::vector<std::vector<Word>> generators, std::size_t cap = kDefaultOrderCap);

  std::size_t order() const noexcept { return n_; }
  const Representation& rep() const noexcept { return *rep_; }
  const RepPtr& rep_ptr() const noexcept { return rep_; }
  std::size_t width() const noexcept { return w_; }
  std::span<const Word> element(Index i) const { return {words_.data() + std::size_t{i} * w_, w_}; }
  std::optional<Index> find(const Word* w) const;

  Index mul(Index a, Index b) const;
  Index inv(Index a) const { return inv_[a]; }
  Index pow(Index a, std::int64_t e) const;
  /// g^-1 x g
  Index conj(Index x, Index g) const { return mul(inv_[g], mul(x, g)); }
  /// a^-1 b^-1 a b
  Index commutator(Index a, Index b) const { return mul(mul(inv_[a], inv_[b]), mul(a, b)); }
  std::uint32_t elem_order(Index a) const { return ord_[a]; }
  const std::vector<Index>& generators() const noexcept { return gens_; }

  /// Conjugacy classes, computed once and cached.
  const ClassData& classes() const;

 private:
  EnumeratedGroup() = default;

  RepPtr rep_;
  std::size_t w_ = 0;
  std::size_t n_ = 0;
  std::vector<Word> words_;
  std::vector<Index> table_;  // open addressing, value n_ marks empty
  std::size_t mask_ = 0;
  std::vector<Index> inv_;
  std::vector<std::uint32_t> ord_;
  std::vector<Index> gens_;
  std::vector<Index> cayley_;  // n*n when n <= kCayleyTableLimit

  mutable std::once_flag classes_once_;
  mutable std::unique_ptr<ClassData> classes_;
};

/// A subgroup as a sorted index list with a membership mask.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(std::size_t group_order, std::vector<Index> elements);
  std::size_t order() const noexcept { return elems_.size(); }
  bool contains(Index x) const { return mask_[x]; }
  const std::vector<Index>& elements() const noexcept { return elems_; }
  const std::vector<bool>& mask() const noexcept { return mask_; }
  bool operator==(const Subgroup& o) const { return elems_ == o.elems_; }
  bool operator<(const Subgroup& o) const;
  bool is_subset_of(const Subgroup& o) const;

 private:
  std::vector<Index> elems_;
  std::vector<bool> mask_;
};

// Construction helpers.
GroupPtr from_matrices(const std::vector<gf::Matrix>& gens, std::size_t cap = kDefaultOrderCap);
/// Block-diagonal group: gens[i][b] is the b-th block of generator i.
GroupPtr from_block_matrices(const std::vector<std::vector<gf::Matrix>>& gens, std::size_t cap = kDefaultOrderCap);
GroupPtr from_permutations(std::size_t degree, const std::vector<std::vector<Word>>& gens,
                           std::size_t cap = kDefaultOrderCap);
/// The matrix (or block list) of an element of a linear group.
std::vector<gf::Matrix> matrices_of(const EnumeratedGroup& G, Index x);
/// Parses {"kind":"matrix"|"perm"|"blocks", ...}.
GroupPtr group_from_json(const nlohmann::json& j, std::size_t cap = kDefaultOrderCap);
nlohmann::json group_to_json(const EnumeratedGroup& G);

// Basic subgroups.
Subgroup whole(const EnumeratedGroup& G);
Subgroup trivial(const EnumeratedGroup& G);
Subgroup generate(const EnumeratedGroup& G, const std::vector<Index>& gens);
/// Greedy generating set: walk the elements in index order and keep those not
/// already generated.
std::vector<Index> generators_of(const EnumeratedGroup& G, const Subgroup& H);
Subgroup join(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& K);
Subgroup intersection(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& K);
/// Smallest subgroup containing `gens` and normalized by `by`.
Subgroup normal_closure(const EnumeratedGroup& G, const std::vector<Index>& gens, const Subgroup& by);
Subgroup normal_closure(const EnumeratedGroup& G, const std::vector<Index>& gens);
/// [H, K] for subgroups H, K.
Subgroup commutator(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& K);
Subgroup centralizer(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& within);
Subgroup centralizer(const EnumeratedGroup& G, const Subgroup& H);
Subgroup normalizer(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& within);
Subgroup center(const EnumeratedGroup& G, const Subgroup& H);
/// Subgroup generated by the elements of order p in H.
Subgroup omega1(const EnumeratedGroup& G, const Subgroup& H, unsigned p);

bool is_normal(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& in);
bool is_normal(const EnumeratedGroup& G, const Subgroup& H);
bool is_abelian(const EnumeratedGroup& G, const Subgroup& H);
bool is_cyclic(const EnumeratedGroup& G, const Subgroup& H);
/// Nilpotent iff for every prime p the p-elements number exactly |H|_p.
bool is_nilpotent(const EnumeratedGroup& G, const Subgroup& H);
bool is_p_group(std::size_t order, unsigned p);
/// H/N is cyclic (N normal in H).
bool is_cyclic_quotient(const EnumeratedGroup& G, const Subgroup& H, const Subgroup& N);

std::vector<Subgroup> derived_series(const EnumeratedGroup& G, const Subgroup& H);
std::vector<Subgroup> derived_series(const EnumeratedGroup& G);
bool is_solvable(const EnumeratedGroup& G, const Subgroup& H);
bool is_solvable(const EnumeratedGroup& G);
std::size_t derived_length(const EnumeratedGroup& G, const Subgroup& H);

/// A Hall pi-subgroup of H by greedy extension: elements normalizing the
/// current subgroup first, then any element keeping it a pi-group.  Throws
/// UsageError if the extension stalls (H has no Hall pi-subgroup).
Subgroup hall_subgroup(const EnumeratedGroup& G, const Subgroup& H, const std::function<bool(unsigned)>& in_pi,
                       bool reverse_scan = false);
Subgroup sylow_subgroup(const EnumeratedGroup& G, const Subgroup& H, unsigned p);
/// H as an enumerated group of its own (same representation).
GroupPtr subgroup_as_group(const EnumeratedGroup& G, const Subgroup& H);

/// Preimage of O_p(G/N), where N is normal in G (default N = 1).
Subgroup p_core(const EnumeratedGroup& G, unsigned p);
Subgroup p_core(const EnumeratedGroup& G, unsigned p, const Subgroup& N);
/// Preimage of F(G/N).
Subgroup fitting(const EnumeratedGroup& G);
Subgroup fitting(const EnumeratedGroup& G, const Subgroup& N);

struct FittingSeries {
  std::vector<Subgroup> chain;  // F_0 = 1 < F_1 < ...
  bool stalled = false;         // true when the chain stops below G
  const Subgroup& at(std::size_t i) const { return chain[std::min(i, chain.size() - 1)]; }
};
FittingSeries fitting_series(const EnumeratedGroup& G);

const ClassData& conjugacy_classes(const EnumeratedGroup& G);

inline constexpr std::size_t kNormalSubgroupClassCap = 40;
/// Every normal subgroup, by closing the lattice {1} under "join one more
/// class".  Sorted by (order, elements).
std::vector<Subgroup> normal_subgroups(const EnumeratedGroup& G, std::size_t class_cap = kNormalSubgroupClassCap);

struct Census {
  std::map<unsigned, std::uint64_t> nep;  // elements of order exactly p
  std::map<unsigned, std::uint64_t> nsp;  // subgroups of order p
  std::uint64_t non_prime = 0;            // nontrivial elements of composite order
  bool has_identity = false;
  std::uint64_t nep_of(const std::vector<unsigned>& primes) const;
  std::uint64_t nsp_of(const std::vector<unsigned>& primes) const;
  /// Sum over the primes outside {2, 3} present in the census.
  std::uint64_t nep_pi0() const;
  std::uint64_t nsp_pi0() const;
};
Census census(const EnumeratedGroup& G, const std::vector<Index>& subset);
Census census(const EnumeratedGroup& G, const Subgroup& H);
/// Elements of H outside N.
std::vector<Index> difference(const Subgroup& H, const Subgroup& N);

/// G/N as an enumerated group (elements are coset ids of the parent).
struct Quotient {
  GroupPtr group;
  std::vector<Index> project;  // parent index -> quotient index
};
Quotient quotient(const GroupPtr& G, const Subgroup& N);
/// Preimage in the parent of a subgroup of the quotient.
Subgroup preimage(const EnumeratedGroup& G, const Quotient& Q, const Subgroup& H);
/// Image of a subgroup containing N.
Subgroup image(const Quotient& Q, const Subgroup& H);

// Arithmetic helpers.
std::vector<unsigned> prime_divisors(std::uint64_t n);
std::uint64_t p_part(std::uint64_t n, unsigned p);
unsigned valuation(std::uint64_t n, unsigned p);
inline bool is_pi0_number(std::uint64_t n) { return n % 2 != 0 && n % 3 != 0; }

}  // namespace slg::grp
