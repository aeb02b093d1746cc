#pragma once

// Character tables of enumerated groups, p-blocks and degree statistics.
//
// Tables come from the common eigenvectors of the class-sum matrices over a
// prime field GF(l) with l = 1 mod exp(G); values are then lifted exactly to
// Z[zeta_m] through the eigenvalue multiplicities of each element.

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "slg/grp.hpp"

namespace slg::chartab {

inline constexpr std::size_t kClassCap = 60;

/// Z[zeta_m].  Raw vectors have length m (coefficient of zeta^t at t); the
/// canonical form is the remainder modulo the m-th cyclotomic polynomial.
class Cyclotomic {
 public:
  explicit Cyclotomic(unsigned m);
  unsigned m() const { return m_; }
  unsigned phi() const { return static_cast<unsigned>(poly_.size()) - 1; }
  const std::vector<std::int64_t>& polynomial() const { return poly_; }
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> raw) const;
  bool is_integer(const std::vector<std::int64_t>& raw, std::int64_t value) const;

 private:
  unsigned m_;
  std::vector<std::int64_t> poly_;  // monic, low degree first
};

struct CharTable {
  grp::GroupPtr group;
  std::vector<std::uint64_t> class_sizes;
  std::vector<std::uint32_t> class_orders;
  std::vector<grp::Index> reps;
  std::vector<std::uint32_t> inverse_class;
  unsigned exponent = 1;
  std::uint64_t ell = 0;  // the prime used
  std::vector<std::uint64_t> degrees;
  /// values[chi][k]: raw multiplicity vector of length exponent.
  std::vector<std::vector<std::vector<std::int64_t>>> values;

  std::size_t size() const { return degrees.size(); }
  /// Canonical coefficients of chi(g_k).
  std::vector<std::int64_t> value(std::size_t chi, std::size_t k) const;
};

/// Throws ResourceError when the group has more than class_cap classes,
/// InternalError if the result fails row orthogonality.
CharTable char_table(const grp::GroupPtr& G, std::size_t class_cap = kClassCap, std::uint64_t seed = 1);

bool row_orthogonality(const CharTable& T);
bool column_orthogonality(const CharTable& T);

struct BlockData {
  unsigned p = 0;
  unsigned n = 0;  // v_p(|G|)
  std::vector<std::vector<std::size_t>> blocks;  // character indices, sorted
  std::vector<unsigned> block_defect;
  std::vector<unsigned> char_defect;
  unsigned min_defect() const;
  std::size_t defect_zero_blocks() const;
};

/// Blocks from central characters reduced modulo a prime over p.
BlockData p_blocks(const CharTable& T, unsigned p);
/// Independent partition: connected components of the graph linking chi and
/// psi when their inner product over p-regular classes is nonzero.
std::vector<std::vector<std::size_t>> linking_blocks(const CharTable& T, unsigned p);

struct DegreeStats {
  unsigned p = 0;
  unsigned a = 0;        // max v_p(chi(1))
  unsigned a_class = 0;  // max v_p(|C|)
  std::uint64_t sylow_order = 0;
  std::uint64_t b_P = 1;       // largest degree of P
  std::size_t dl_P = 0;        // derived length of P
  std::uint64_t b_star_P = 1;  // largest P-class
  std::uint64_t P_derived_order = 1;
  std::uint64_t index_F_p = 1;  // |G:F(G)|_p
  std::vector<unsigned> rho, rho_star;
  unsigned sigma = 0, sigma_star = 0;
};

DegreeStats degree_stats(const grp::GroupPtr& G, const CharTable& T, unsigned p);

nlohmann::json to_json(const CharTable& T);
nlohmann::json to_json(const BlockData& B);
nlohmann::json to_json(const DegreeStats& S);

}  // namespace slg::chartab
