#include "slg/action.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "slg/errors.hpp"

namespace slg::action {

using grp::Index;
using grp::Subgroup;

Action Action::on_module(grp::GroupPtr G, std::uint64_t space_cap) {
  auto lin = dynamic_cast<const grp::LinearRep*>(&G->rep());
  if (!lin) throw UsageError("on_module needs a matrix group");
  Action A;
  A.G_ = std::move(G);
  A.module_ = true;
  A.blocks_ = lin->blocks();
  A.size_ = 1;
  for (const auto& b : A.blocks_) {
    const auto r = gf::checked_power(b.field->q(), static_cast<unsigned>(b.dim), space_cap);
    A.block_radix_.push_back(r);
    if (A.size_ > space_cap / r) throw ResourceError("module exceeds the space cap", 0);
    A.size_ *= r;
  }
  A.tabulate();
  return A;
}

Action Action::on_points(grp::GroupPtr G) {
  auto perm = dynamic_cast<const grp::PermRep*>(&G->rep());
  if (!perm) throw UsageError("on_points needs a permutation group");
  Action A;
  A.G_ = std::move(G);
  A.size_ = perm->degree();
  A.tabulate();
  return A;
}

void Action::tabulate() {
  if (size_ > kTabulateLimit) return;
  for (Index g : G_->generators()) {
    std::vector<std::uint32_t> t(size_);
    for (std::uint64_t v = 0; v < size_; ++v) t[v] = static_cast<std::uint32_t>(image(g, v));
    gen_table_.push_back(std::move(t));
  }
}

std::vector<std::uint64_t> Action::decode(std::uint64_t v) const {
  std::vector<std::uint64_t> c;
  for (const auto& b : blocks_)
    for (std::size_t i = 0; i < b.dim; ++i) {
      c.push_back(v % b.field->q());
      v /= b.field->q();
    }
  return c;
}

std::uint64_t Action::encode(const std::vector<std::uint64_t>& coords) const {
  std::uint64_t v = 0, scale = 1;
  std::size_t t = 0;
  for (const auto& b : blocks_)
    for (std::size_t i = 0; i < b.dim; ++i, ++t) {
      v += coords.at(t) * scale;
      scale *= b.field->q();
    }
  return v;
}

std::uint64_t Action::image(Index g, std::uint64_t v) const {
  auto w = G_->element(g);
  if (!module_) return w[v];
  auto lin = static_cast<const grp::LinearRep*>(&G_->rep());
  std::uint64_t out = 0, scale = 1;
  gf::Elem in[64], res[64];
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const auto& b = blocks_[k];
    const std::uint64_t q = b.field->q();
    std::uint64_t part = v % block_radix_[k];
    v /= block_radix_[k];
    for (std::size_t i = 0; i < b.dim; ++i) {
      in[i] = static_cast<gf::Elem>(part % q);
      part /= q;
    }
    gf::apply_raw(*b.field, b.dim, w.data() + lin->offset(k), in, res);
    std::uint64_t code = 0;
    for (std::size_t i = b.dim; i-- > 0;) code = code * q + res[i];
    out += code * scale;
    scale *= block_radix_[k];
  }
  return out;
}

std::uint64_t Action::generator_image(std::size_t i, std::uint64_t v) const {
  if (!gen_table_.empty()) return gen_table_[i][v];
  return image(G_->generators()[i], v);
}

std::uint64_t Action::fixed_count(Index g) const {
  if (!module_) {
    auto w = G_->element(g);
    std::uint64_t c = 0;
    for (std::uint64_t i = 0; i < size_; ++i) c += w[i] == i;
    return c;
  }
  auto lin = static_cast<const grp::LinearRep*>(&G_->rep());
  std::uint64_t c = 1;
  for (std::size_t k = 0; k < blocks_.size(); ++k) c *= gf::fixed_space(lin->block_matrix(G_->element(g).data(), k)).size;
  return c;
}

Subgroup Action::kernel() const {
  std::vector<Index> k;
  for (Index g = 0; g < G_->order(); ++g)
    if (fixed_count(g) == size_) k.push_back(g);
  return Subgroup(G_->order(), k);
}

OrbitData orbits(const Action& A) {
  constexpr std::uint32_t kNone = ~0u;
  OrbitData O;
  O.orbit_of.assign(A.size(), kNone);
  const std::size_t ngens = A.group().generators().size();
  std::vector<std::uint64_t> queue;
  for (std::uint64_t v = 0; v < A.size(); ++v) {
    if (O.orbit_of[v] != kNone) continue;
    const auto id = static_cast<std::uint32_t>(O.reps.size());
    O.reps.push_back(v);
    queue.assign(1, v);
    O.orbit_of[v] = id;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::size_t i = 0; i < ngens; ++i) {
        const auto w = A.generator_image(i, queue[head]);
        if (O.orbit_of[w] == kNone) {
          O.orbit_of[w] = id;
          queue.push_back(w);
        }
      }
    O.sizes.push_back(queue.size());
  }
  return O;
}

Subgroup stabilizer(const Action& A, std::uint64_t v) {
  std::vector<Index> s;
  for (Index g = 0; g < A.group().order(); ++g)
    if (A.image(g, v) == v) s.push_back(g);
  return Subgroup(A.group().order(), s);
}

std::uint64_t burnside_count(const Action& A) {
  // Fixed counts are class functions: sum over classes.
  const auto& cd = A.group().classes();
  std::uint64_t total = 0;
  for (const auto& c : cd.classes) total += c.size() * A.fixed_count(c[0]);
  if (total % A.group().order()) throw InternalError("Burnside sum not divisible by |G|");
  return total / A.group().order();
}

std::size_t regular_orbit_count(const Action& A, const OrbitData& O) {
  std::size_t c = 0;
  for (auto s : O.sizes) c += s == A.group().order();
  return c;
}

std::vector<std::uint64_t> pi0_regular_mod_K(const Action& A, const OrbitData& O, const Subgroup& K) {
  const auto& G = A.group();
  std::vector<std::uint64_t> out;
  for (auto v : O.reps) {
    bool ok = true;
    for (Index g = 0; g < G.order() && ok; ++g) {
      const auto o = G.elem_order(g);
      if (o >= 5 && gf::is_prime(o) && !K.contains(g) && A.image(g, v) == v) ok = false;
    }
    if (ok) out.push_back(v);
  }
  return out;
}

Subgroup set_stabilizer(const Action& A, const std::vector<std::uint64_t>& delta) {
  std::vector<bool> in(A.size(), false);
  for (auto x : delta) in.at(x) = true;
  std::vector<Index> s;
  for (Index g = 0; g < A.group().order(); ++g) {
    bool ok = true;
    for (auto x : delta) ok &= in[A.image(g, x)];
    if (ok) s.push_back(g);
  }
  return Subgroup(A.group().order(), s);
}

std::vector<std::uint64_t> delta_search(const Action& A) {
  if (A.is_module()) throw UsageError("delta_search needs a permutation action");
  if (A.size() > 16) throw UsageError("delta_search is limited to 16 points");
  if (!grp::is_solvable(A.group())) throw UsageError("delta_search needs a solvable group");
  const auto O = orbits(A);
  const auto n = static_cast<unsigned>(A.size());
  for (unsigned k = 1; k <= n; ++k) {
    // combinations of size k in lexicographic order
    std::vector<std::uint64_t> c(k);
    for (unsigned i = 0; i < k; ++i) c[i] = i;
    while (true) {
      std::vector<bool> hit(O.count(), false);
      for (auto x : c) hit[O.orbit_of[x]] = true;
      if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
        auto ord = set_stabilizer(A, c).order();
        while (ord % 2 == 0) ord /= 2;
        while (ord % 3 == 0) ord /= 3;
        if (ord == 1) return c;
      }
      int i = static_cast<int>(k) - 1;
      while (i >= 0 && c[i] == n - k + i) --i;
      if (i < 0) break;
      ++c[i];
      for (unsigned j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
  }
  throw Alarm("no subset with a {2,3}-group set stabilizer");
}

nlohmann::json orbit_report(const Action& A, const OrbitData& O) {
  std::map<std::uint64_t, std::uint64_t> hist;
  for (auto s : O.sizes) ++hist[s];
  nlohmann::json j;
  j["points"] = A.size();
  j["group_order"] = A.group().order();
  j["orbits"] = O.count();
  j["regular_orbits"] = regular_orbit_count(A, O);
  j["size_histogram"] = nlohmann::json::object();
  for (auto [s, c] : hist) j["size_histogram"][std::to_string(s)] = c;
  j["orbit_list"] = nlohmann::json::array();
  for (std::size_t i = 0; i < O.count(); ++i)
    j["orbit_list"].push_back({{"rep", O.reps[i]}, {"size", O.sizes[i]}, {"stabilizer_order", A.group().order() / O.sizes[i]}});
  return j;
}

}  // namespace slg::action
