#pragma once

// Brute-force reference computations used only by the tests.

#include <algorithm>
#include <set>
#include <vector>

#include "slg/grp.hpp"

namespace oracle {

using slg::grp::EnumeratedGroup;
using slg::grp::Index;
using slg::grp::Subgroup;

// Every subgroup is a join of cyclic subgroups; close the cyclic ones under
// pairwise joins.  Meant for N <= 200.
inline std::vector<Subgroup> all_subgroups(const EnumeratedGroup& G) {
  std::set<std::vector<Index>> seen;
  std::vector<Subgroup> subs;
  for (Index x = 0; x < G.order(); ++x) {
    auto c = slg::grp::generate(G, {x});
    if (seen.insert(c.elements()).second) subs.push_back(c);
  }
  const std::size_t cyclic = subs.size();
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < cyclic; ++j) {
      if (subs[j].is_subset_of(subs[i])) continue;
      auto gens = slg::grp::generators_of(G, subs[i]);
      gens.push_back(slg::grp::generators_of(G, subs[j]).front());
      auto h = slg::grp::generate(G, gens);
      if (seen.insert(h.elements()).second) subs.push_back(h);
    }
  std::sort(subs.begin(), subs.end());
  return subs;
}

inline bool normal_by_elements(const EnumeratedGroup& G, const Subgroup& H) {
  for (Index g = 0; g < G.order(); ++g)
    for (Index h : H.elements())
      if (!H.contains(G.conj(h, g))) return false;
  return true;
}

inline std::vector<Subgroup> normal_subgroups(const EnumeratedGroup& G) {
  std::vector<Subgroup> out;
  for (auto& H : all_subgroups(G))
    if (normal_by_elements(G, H)) out.push_back(H);
  return out;
}

// O_p(G) as the intersection of all Sylow p-subgroups.
inline Subgroup sylow_intersection(const EnumeratedGroup& G, unsigned p) {
  const auto target = slg::grp::p_part(G.order(), p);
  Subgroup acc = slg::grp::whole(G);
  for (auto& H : all_subgroups(G))
    if (H.order() == target) acc = slg::grp::intersection(G, acc, H);
  return acc;
}

// Frattini subgroup as the intersection of maximal subgroups.
inline Subgroup frattini(const EnumeratedGroup& G) {
  auto subs = all_subgroups(G);
  Subgroup acc = slg::grp::whole(G);
  for (std::size_t i = 0; i + 1 < subs.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j + 1 < subs.size() && maximal; ++j)
      if (j != i && subs[j].order() > subs[i].order() && subs[i].is_subset_of(subs[j])) maximal = false;
    if (maximal && subs[i].order() < G.order()) acc = slg::grp::intersection(G, acc, subs[i]);
  }
  return acc;
}

}  // namespace oracle
