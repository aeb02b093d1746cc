#pragma once

// A finite group acting on a finite vector space (possibly a direct sum of
// spaces over different fields) or on a set of points.

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "slg/grp.hpp"

namespace slg::action {

inline constexpr std::uint64_t kDefaultSpaceCap = 1ull << 24;
/// Generator images are tabulated up to this many points.
inline constexpr std::uint64_t kTabulateLimit = 1ull << 20;

/// Points are integer codes.  For modules the code is mixed radix: block 0
/// occupies the least significant digits, each block in base q with its
/// coordinate 0 least significant.
class Action {
 public:
  /// Natural action of a matrix group on its (direct-sum) module.
  static Action on_module(grp::GroupPtr G, std::uint64_t space_cap = kDefaultSpaceCap);
  /// Natural action of a permutation group on its points.
  static Action on_points(grp::GroupPtr G);

  const grp::EnumeratedGroup& group() const { return *G_; }
  const grp::GroupPtr& group_ptr() const { return G_; }
  bool is_module() const { return module_; }
  std::uint64_t size() const { return size_; }
  const std::vector<grp::LinearRep::Block>& blocks() const { return blocks_; }

  std::uint64_t image(grp::Index g, std::uint64_t v) const;
  /// Image under the i-th group generator (tabulated when small).
  std::uint64_t generator_image(std::size_t i, std::uint64_t v) const;
  /// Number of points fixed by g; via fixed spaces for modules.
  std::uint64_t fixed_count(grp::Index g) const;
  grp::Subgroup kernel() const;
  bool is_faithful() const { return kernel().order() == 1; }

  std::vector<std::uint64_t> decode(std::uint64_t v) const;  // all coordinates, block by block
  std::uint64_t encode(const std::vector<std::uint64_t>& coords) const;

 private:
  Action() = default;
  void tabulate();

  grp::GroupPtr G_;
  bool module_ = false;
  std::uint64_t size_ = 0;
  std::vector<grp::LinearRep::Block> blocks_;
  std::vector<std::uint64_t> block_radix_;  // |V_i|
  std::vector<std::vector<std::uint32_t>> gen_table_;
};

struct OrbitData {
  std::vector<std::uint32_t> orbit_of;      // orbit id per point
  std::vector<std::uint64_t> reps;          // minimal point per orbit, ascending
  std::vector<std::uint64_t> sizes;
  std::size_t count() const { return reps.size(); }
};

OrbitData orbits(const Action& A);
/// Exact C_G(v) by filtering.
grp::Subgroup stabilizer(const Action& A, std::uint64_t v);
/// Orbit count by Burnside's lemma; throws InternalError if the sum is not
/// divisible by |G|.
std::uint64_t burnside_count(const Action& A);
std::size_t regular_orbit_count(const Action& A, const OrbitData& O);
/// Orbit representatives v such that every element of prime order >= 5 in
/// C_G(v) lies in K.
std::vector<std::uint64_t> pi0_regular_mod_K(const Action& A, const OrbitData& O, const grp::Subgroup& K);

/// Smallest subset (then lexicographically first) meeting every orbit whose
/// set stabilizer is a {2,3}-group.  Permutation actions on at most 16 points.
std::vector<std::uint64_t> delta_search(const Action& A);
grp::Subgroup set_stabilizer(const Action& A, const std::vector<std::uint64_t>& delta);

nlohmann::json orbit_report(const Action& A, const OrbitData& O);

}  // namespace slg::action
