#include <algorithm>
#include <cstring>
#include <numeric>

#include <nlohmann/json.hpp>

#include "slg/errors.hpp"
#include "slg/grp.hpp"

namespace slg::grp {

void PermRep::identity(Word* out) const {
  for (std::size_t i = 0; i < degree_; ++i) out[i] = static_cast<Word>(i);
}

void PermRep::multiply(const Word* a, const Word* b, Word* out) const {
  for (std::size_t i = 0; i < degree_; ++i) out[i] = a[b[i]];
}

LinearRep::LinearRep(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw UsageError("linear representation needs at least one block");
  for (const auto& b : blocks_) {
    if (b.dim == 0) throw UsageError("block dimension must be positive");
    offsets_.push_back(width_);
    width_ += b.dim * b.dim;
  }
}

void LinearRep::identity(Word* out) const {
  std::fill(out, out + width_, 0);
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    for (std::size_t i = 0; i < blocks_[k].dim; ++i) out[offsets_[k] + i * blocks_[k].dim + i] = 1;
}

void LinearRep::multiply(const Word* a, const Word* b, Word* out) const {
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    gf::mul_raw(*blocks_[k].field, blocks_[k].dim, a + offsets_[k], b + offsets_[k], out + offsets_[k]);
}

std::vector<Word> LinearRep::encode(const std::vector<gf::Matrix>& mats) const {
  if (mats.size() != blocks_.size()) throw UsageError("wrong number of blocks in generator");
  std::vector<Word> w(width_);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const auto& m = mats[k];
    if (!(m.F() == *blocks_[k].field) || m.n() != blocks_[k].dim)
      throw UsageError("generator block does not match the ambient field or dimension");
    if (!m.is_invertible()) throw DomainError("generator is singular");
    std::copy(m.entries().begin(), m.entries().end(), w.begin() + static_cast<std::ptrdiff_t>(offsets_[k]));
  }
  return w;
}

gf::Matrix LinearRep::block_matrix(const Word* w, std::size_t block) const {
  const auto& b = blocks_.at(block);
  const Word* p = w + offsets_[block];
  return gf::Matrix(b.field, b.dim, std::vector<gf::Elem>(p, p + b.dim * b.dim));
}

namespace {

std::uint64_t hash_words(const Word* w, std::size_t n) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= w[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  h ^= h >> 33;
  return h;
}

// Cosets of a normal subgroup, multiplied through the parent.
class QuotientRep final : public Representation {
 public:
  QuotientRep(GroupPtr parent, std::vector<Index> coset_of, std::vector<Index> reps)
      : parent_(std::move(parent)), coset_of_(std::move(coset_of)), reps_(std::move(reps)) {}
  std::size_t width() const override { return 1; }
  void identity(Word* out) const override { out[0] = coset_of_[0]; }
  void multiply(const Word* a, const Word* b, Word* out) const override {
    out[0] = coset_of_[parent_->mul(reps_[a[0]], reps_[b[0]])];
  }
  std::string kind() const override { return "quotient"; }

 private:
  GroupPtr parent_;
  std::vector<Index> coset_of_;
  std::vector<Index> reps_;
};

}  // namespace

std::optional<Index> EnumeratedGroup::find(const Word* w) const {
  // table_ stores n_ as the empty marker, which is only valid after closure.
  std::size_t s = hash_words(w, w_) & mask_;
  while (true) {
    const Index t = table_[s];
    if (t == static_cast<Index>(n_)) return std::nullopt;
    if (std::memcmp(words_.data() + std::size_t{t} * w_, w, w_ * sizeof(Word)) == 0) return t;
    s = (s + 1) & mask_;
  }
}

GroupPtr EnumeratedGroup::close(RepPtr rep, std::vector<std::vector<Word>> generators, std::size_t cap) {
  auto G = std::shared_ptr<EnumeratedGroup>(new EnumeratedGroup());
  G->rep_ = rep;
  const std::size_t w = rep->width();
  G->w_ = w;
  std::vector<Word> id(w);
  rep->identity(id.data());
  for (const auto& g : generators)
    if (g.size() != w) throw UsageError("generator has the wrong width");
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  generators.erase(std::remove(generators.begin(), generators.end(), id), generators.end());

  // During closure the empty marker is kEmpty; rewritten to n_ at the end.
  constexpr Index kEmpty = ~Index{0};
  std::size_t capacity = 1024;
  std::vector<Index> table(capacity, kEmpty);
  std::size_t mask = capacity - 1;
  std::vector<Word>& words = G->words_;
  words = id;
  std::size_t n = 1;

  auto find_slot = [&](const Word* x) {
    std::size_t s = hash_words(x, w) & mask;
    while (table[s] != kEmpty && std::memcmp(words.data() + std::size_t{table[s]} * w, x, w * sizeof(Word)) != 0)
      s = (s + 1) & mask;
    return s;
  };
  auto rehash = [&]() {
    capacity *= 2;
    mask = capacity - 1;
    table.assign(capacity, kEmpty);
    for (Index i = 0; i < n; ++i) table[find_slot(words.data() + std::size_t{i} * w)] = i;
  };
  table[find_slot(id.data())] = 0;

  std::vector<Word> prod(w);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& g : generators) {
      rep->multiply(words.data() + i * w, g.data(), prod.data());
      std::size_t s = find_slot(prod.data());
      if (table[s] != kEmpty) continue;
      if (n >= cap) throw ResourceError("group order exceeds cap " + std::to_string(cap), n);
      words.insert(words.end(), prod.begin(), prod.end());
      table[s] = static_cast<Index>(n++);
      if (2 * n > capacity) rehash();
    }
  }
  G->n_ = n;
  for (auto& t : table)
    if (t == kEmpty) t = static_cast<Index>(n);
  G->table_ = std::move(table);
  G->mask_ = mask;
  for (const auto& g : generators) G->gens_.push_back(*G->find(g.data()));

  G->inv_.assign(n, 0);
  G->ord_.assign(n, 0);
  if (n <= kCayleyTableLimit) {
    G->cayley_.resize(n * n);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        rep->multiply(words.data() + std::size_t{a} * w, words.data() + std::size_t{b} * w, prod.data());
        G->cayley_[std::size_t{a} * n + b] = *G->find(prod.data());
      }
  }
  std::vector<Index> powers;
  for (Index x = 0; x < n; ++x) {
    if (G->ord_[x] != 0) continue;
    powers.assign(1, 0);
    Index y = x;
    while (y != 0) {
      powers.push_back(y);
      y = G->mul(y, x);
    }
    const std::uint32_t o = static_cast<std::uint32_t>(powers.size());
    for (std::uint32_t j = 0; j < o; ++j) {
      const Index z = powers[j];
      if (G->ord_[z] != 0) continue;
      G->ord_[z] = o / std::gcd(j, o);
      G->inv_[z] = powers[(o - j) % o];
    }
  }
  return G;
}

Index EnumeratedGroup::mul(Index a, Index b) const {
  if (!cayley_.empty()) return cayley_[std::size_t{a} * n_ + b];
  thread_local std::vector<Word> buf;
  buf.resize(w_);
  rep_->multiply(words_.data() + std::size_t{a} * w_, words_.data() + std::size_t{b} * w_, buf.data());
  auto r = find(buf.data());
  if (!r) throw InternalError("product left the enumerated group");
  return *r;
}

Index EnumeratedGroup::pow(Index a, std::int64_t e) const {
  const std::int64_t o = ord_[a];
  e %= o;
  if (e < 0) e += o;
  Index r = 0;
  Index b = a;
  auto k = static_cast<std::uint64_t>(e);
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

const ClassData& EnumeratedGroup::classes() const {
  std::call_once(classes_once_, [this] {
    auto cd = std::make_unique<ClassData>();
    constexpr std::uint32_t kNone = ~std::uint32_t{0};
    std::vector<std::uint32_t> raw(n_, kNone);
    std::vector<std::vector<Index>> cls;
    for (Index x = 0; x < n_; ++x) {
      if (raw[x] != kNone) continue;
      const auto id = static_cast<std::uint32_t>(cls.size());
      std::vector<Index> c{x};
      raw[x] = id;
      for (std::size_t i = 0; i < c.size(); ++i)
        for (Index g : gens_) {
          Index y = conj(c[i], g);
          if (raw[y] == kNone) {
            raw[y] = id;
            c.push_back(y);
          }
        }
      std::sort(c.begin(), c.end());
      cls.push_back(std::move(c));
    }
    std::sort(cls.begin(), cls.end(), [&](const auto& a, const auto& b) {
      return std::make_tuple(ord_[a[0]], a.size(), a[0]) < std::make_tuple(ord_[b[0]], b.size(), b[0]);
    });
    cd->class_of.assign(n_, 0);
    for (std::uint32_t i = 0; i < cls.size(); ++i) {
      for (Index x : cls[i]) cd->class_of[x] = i;
      cd->reps.push_back(cls[i][0]);
    }
    cd->classes = std::move(cls);
    classes_ = std::move(cd);
  });
  return *classes_;
}

const ClassData& conjugacy_classes(const EnumeratedGroup& G) { return G.classes(); }

GroupPtr from_matrices(const std::vector<gf::Matrix>& gens, std::size_t cap) {
  if (gens.empty()) throw UsageError("need at least one generator to fix the ambient space");
  std::vector<std::vector<gf::Matrix>> blocks;
  for (const auto& m : gens) blocks.push_back({m});
  return from_block_matrices(blocks, cap);
}

GroupPtr from_block_matrices(const std::vector<std::vector<gf::Matrix>>& gens, std::size_t cap) {
  if (gens.empty()) throw UsageError("need at least one generator to fix the ambient space");
  std::vector<LinearRep::Block> blocks;
  for (const auto& m : gens[0]) blocks.push_back({m.field(), m.n()});
  auto rep = std::make_shared<LinearRep>(blocks);
  std::vector<std::vector<Word>> words;
  for (const auto& g : gens) words.push_back(rep->encode(g));
  return EnumeratedGroup::close(rep, std::move(words), cap);
}

GroupPtr from_permutations(std::size_t degree, const std::vector<std::vector<Word>>& gens, std::size_t cap) {
  for (const auto& g : gens) {
    if (g.size() != degree) throw UsageError("permutation has the wrong degree");
    std::vector<bool> seen(degree, false);
    for (Word x : g) {
      if (x >= degree || seen[x]) throw UsageError("images do not form a permutation");
      seen[x] = true;
    }
  }
  return EnumeratedGroup::close(std::make_shared<PermRep>(degree), gens, cap);
}

std::vector<gf::Matrix> matrices_of(const EnumeratedGroup& G, Index x) {
  auto lin = dynamic_cast<const LinearRep*>(&G.rep());
  if (!lin) throw UsageError("group is not linear");
  std::vector<gf::Matrix> out;
  for (std::size_t k = 0; k < lin->blocks().size(); ++k) out.push_back(lin->block_matrix(G.element(x).data(), k));
  return out;
}

GroupPtr group_from_json(const nlohmann::json& j, std::size_t cap) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "perm") {
    return from_permutations(j.at("degree").get<std::size_t>(), j.at("generators").get<std::vector<std::vector<Word>>>(),
                             cap);
  }
  if (kind == "matrix") {
    auto F = gf::field_from_json(j.at("field"));
    const auto n = j.at("dim").get<std::size_t>();
    std::vector<gf::Matrix> gens;
    for (const auto& g : j.at("generators")) {
      auto m = gf::Matrix::from_rows(F, g.get<std::vector<std::vector<gf::Elem>>>());
      if (m.n() != n) throw UsageError("generator dimension differs from \"dim\"");
      gens.push_back(std::move(m));
    }
    if (gens.empty()) gens.push_back(gf::Matrix::identity(F, n));
    return from_matrices(gens, cap);
  }
  if (kind == "blocks") {
    std::vector<gf::FieldPtr> fields;
    for (const auto& b : j.at("blocks")) fields.push_back(gf::field_from_json(b.at("field")));
    std::vector<std::vector<gf::Matrix>> gens;
    for (const auto& g : j.at("generators")) {
      if (g.size() != fields.size()) throw UsageError("generator has the wrong number of blocks");
      std::vector<gf::Matrix> ms;
      for (std::size_t k = 0; k < fields.size(); ++k)
        ms.push_back(gf::Matrix::from_rows(fields[k], g[k].get<std::vector<std::vector<gf::Elem>>>()));
      gens.push_back(std::move(ms));
    }
    return from_block_matrices(gens, cap);
  }
  throw UsageError("unknown group kind \"" + kind + "\"");
}

nlohmann::json group_to_json(const EnumeratedGroup& G) {
  nlohmann::json j;
  auto mat_rows = [](const gf::Matrix& m) {
    std::vector<std::vector<gf::Elem>> rows(m.n(), std::vector<gf::Elem>(m.n()));
    for (std::size_t i = 0; i < m.n(); ++i)
      for (std::size_t k = 0; k < m.n(); ++k) rows[i][k] = m(i, k);
    return rows;
  };
  if (auto perm = dynamic_cast<const PermRep*>(&G.rep())) {
    j["kind"] = "perm";
    j["degree"] = perm->degree();
    j["generators"] = nlohmann::json::array();
    for (Index g : G.generators()) {
      auto e = G.element(g);
      j["generators"].push_back(std::vector<Word>(e.begin(), e.end()));
    }
  } else if (auto lin = dynamic_cast<const LinearRep*>(&G.rep())) {
    j["generators"] = nlohmann::json::array();
    if (lin->blocks().size() == 1) {
      j["kind"] = "matrix";
      j["field"] = gf::field_to_json(*lin->blocks()[0].field);
      j["dim"] = lin->blocks()[0].dim;
      for (Index g : G.generators()) j["generators"].push_back(mat_rows(matrices_of(G, g)[0]));
    } else {
      j["kind"] = "blocks";
      j["blocks"] = nlohmann::json::array();
      for (const auto& b : lin->blocks()) j["blocks"].push_back({{"field", gf::field_to_json(*b.field)}, {"dim", b.dim}});
      for (Index g : G.generators()) {
        nlohmann::json gj = nlohmann::json::array();
        for (const auto& m : matrices_of(G, g)) gj.push_back(mat_rows(m));
        j["generators"].push_back(std::move(gj));
      }
    }
  } else {
    throw UsageError("quotient groups have no file format");
  }
  j["order"] = G.order();
  return j;
}

Quotient quotient(const GroupPtr& G, const Subgroup& N) {
  const std::size_t n = G->order();
  constexpr Index kNone = ~Index{0};
  std::vector<Index> coset_of(n, kNone);
  std::vector<Index> reps;
  for (Index x = 0; x < n; ++x) {
    if (coset_of[x] != kNone) continue;
    const auto c = static_cast<Index>(reps.size());
    reps.push_back(x);
    for (Index m : N.elements()) coset_of[G->mul(x, m)] = c;
  }
  std::vector<std::vector<Word>> gens;
  for (Index g : G->generators()) gens.push_back({coset_of[g]});
  auto rep = std::make_shared<QuotientRep>(G, coset_of, reps);
  Quotient Q;
  Q.group = EnumeratedGroup::close(rep, gens);
  Q.project.resize(n);
  for (Index x = 0; x < n; ++x) Q.project[x] = *Q.group->find(&coset_of[x]);
  return Q;
}

Subgroup preimage(const EnumeratedGroup& G, const Quotient& Q, const Subgroup& H) {
  std::vector<Index> e;
  for (Index x = 0; x < G.order(); ++x)
    if (H.contains(Q.project[x])) e.push_back(x);
  return Subgroup(G.order(), std::move(e));
}

Subgroup image(const Quotient& Q, const Subgroup& H) {
  std::vector<Index> e;
  for (Index x : H.elements()) e.push_back(Q.project[x]);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return Subgroup(Q.group->order(), std::move(e));
}

}  // namespace slg::grp
