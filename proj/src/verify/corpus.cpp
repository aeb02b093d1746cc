#include <atomic>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "slg/errors.hpp"
#include "slg/families.hpp"
#include "slg/qp.hpp"
#include "slg/verify.hpp"

namespace slg::verify {

using nlohmann::json;

json Report::to_json(bool with_timings) const {
  json t = json::object();
  if (with_timings) t["seconds"] = seconds;
  return {{"entry", entry},
          {"check", check},
          {"pass", pass},
          {"witness", witness},
          {"timings", std::move(t)},
          {"versions", {{"slg", kVersion}, {"report_format", 1}}}};
}

std::vector<CorpusEntry> parse_corpus(std::istream& in, std::uint64_t default_seed) {
  std::vector<CorpusEntry> out;
  std::set<std::string> names;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    auto fail = [&](const std::string& what) { throw UsageError("corpus line " + std::to_string(line) + ": " + what); };
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("expected an object");
    if (!j.contains("entry") || !j["entry"].is_string()) fail("missing string field \"entry\"");
    if (!j.contains("group") || !j["group"].is_object()) fail("missing object field \"group\"");
    if (!j.contains("checks") || !j["checks"].is_array()) fail("missing array field \"checks\"");
    CorpusEntry e;
    e.name = j["entry"].get<std::string>();
    if (!names.insert(e.name).second) fail("duplicate entry \"" + e.name + "\"");
    e.recipe = j["group"];
    for (const auto& c : j["checks"]) {
      if (!c.is_object() || !c.contains("check") || !c["check"].is_string()) fail("each check needs a string \"check\"");
      e.checks.push_back(c);
    }
    e.seed = default_seed;
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) fail("\"seed\" must be a non-negative integer");
      e.seed = j["seed"].get<std::uint64_t>();
    }
    e.line = line;
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

// Objects of one entry, built on first use.  A failed build is remembered and
// rethrown for every later check.
class Lazy {
 public:
  Lazy(const CorpusEntry& e, const CorpusOptions& o) : e_(e), o_(o) {}

  const families::Construction& construction() {
    return get(C_, [&] { return families::from_recipe(e_.recipe); });
  }
  const grp::GroupPtr& group() {
    return get(G_, [&] { return construction().close(o_.cap_order); });
  }
  const action::Action& action() {
    return get(A_, [&] {
      return construction().is_perm() ? action::Action::on_points(group())
                                      : action::Action::on_module(group(), o_.cap_space);
    });
  }
  const chartab::CharTable& table() {
    return get(T_, [&] { return chartab::char_table(group(), chartab::kClassCap, e_.seed); });
  }
  const qp::Decomposition& decomposition() {
    return get(D_, [&] { return qp::decompose(action()); });
  }

 private:
  template <class T, class Make>
  const T& get(std::optional<T>& slot, Make make) {
    if (slot) return *slot;
    auto& err = errors_[&slot];
    if (err) std::rethrow_exception(err);
    try {
      slot.emplace(make());
    } catch (...) {
      err = std::current_exception();
      throw;
    }
    return *slot;
  }

  const CorpusEntry& e_;
  const CorpusOptions& o_;
  std::optional<families::Construction> C_;
  std::optional<grp::GroupPtr> G_;
  std::optional<action::Action> A_;
  std::optional<chartab::CharTable> T_;
  std::optional<qp::Decomposition> D_;
  std::map<const void*, std::exception_ptr> errors_;
};

std::string label(const json& c) {
  std::string s = c["check"].get<std::string>();
  std::string params;
  for (const auto& [k, v] : c.items()) {
    if (k == "check" || k.rfind("expect", 0) == 0) continue;
    params += (params.empty() ? "" : ",") + k + "=" + v.dump();
  }
  return params.empty() ? s : s + "[" + params + "]";
}

unsigned prime_param(const json& c) {
  if (!c.contains("p") || !c["p"].is_number_unsigned()) throw UsageError("check needs an unsigned \"p\"");
  return c["p"].get<unsigned>();
}

void expect_eq(std::vector<Check>& cs, const std::string& name, std::uint64_t got, const json& want) {
  cs.push_back({name, want.get<std::uint64_t>() == got, std::to_string(got) + " (expected " + want.dump() + ")"});
}

std::vector<Check> run_check(const json& c, Lazy& L, json& w) {
  const auto kind = c["check"].get<std::string>();
  std::vector<Check> cs;
  if (kind == "order") {
    const auto n = L.group()->order();
    w["order"] = n;
    if (c.contains("expect")) expect_eq(cs, "group order", n, c["expect"]);
    if (L.construction().predicted_order)
      cs.push_back({"predicted order", *L.construction().predicted_order == n, ""});
  } else if (kind == "decompose") {
    const auto& D = L.decomposition();
    const auto N = L.group()->order();
    w = qp::to_json(D, N);
    cs.push_back({"all structure clauses", D.all_pass(), ""});
    cs.push_back({"order lemma divisibility", qp::order_lemma_check(D, N),
                  std::to_string(N) + " | " + std::to_string(qp::order_lemma_bound(D))});
    if (c.value("expect_lemma_equality", false))
      cs.push_back({"order lemma equality", qp::order_lemma_bound(D) == N, ""});
    if (c.contains("expect")) {
      const auto& x = c["expect"];
      const std::map<std::string, std::uint64_t> got = {{"e", D.e},
                                                        {"U", D.U.order()},
                                                        {"F", D.F.order()},
                                                        {"A_over_F", D.A.order() / D.F.order()},
                                                        {"W", D.W_size},
                                                        {"b", D.b}};
      for (const auto& [k, v] : x.items()) {
        if (!got.count(k)) throw UsageError("unknown decomposition field \"" + k + "\"");
        expect_eq(cs, k, got.at(k), v);
      }
    }
  } else if (kind == "clause8") {
    const auto& A = L.action();
    const bool qpm = qp::is_quasiprimitive(A, chartab::kClassCap);
    cs.push_back({"quasi-primitive", qpm, ""});
    const auto& D = L.decomposition();
    const auto law = qp::clause8_law(A, D);
    w = {{"checked", law.checked}, {"failures", law.failures}, {"e", D.e}, {"b", D.b}, {"W", D.W_size}};
    cs.push_back({"|C_V(g)|^s = |W|^(e b) for prime-order g outside A", law.failures == 0,
                  std::to_string(law.checked) + " elements"});
  } else if (kind == "census") {
    const auto& G = *L.group();
    const auto C = grp::census(G, grp::whole(G));
    json nep = json::object();
    for (const auto& [p, n] : C.nep) nep[std::to_string(p)] = n;
    w["nep"] = nep;
    if (c.contains("p") && c.contains("max_nep")) {
      const auto p = prime_param(c);
      const auto n = C.nep.count(p) ? C.nep.at(p) : 0;
      const auto mx = c["max_nep"].get<std::uint64_t>();
      cs.push_back({"NEP_p <= bound", n <= mx, std::to_string(n) + " <= " + std::to_string(mx)});
    }
    if (c.contains("no_prime_from")) {
      const auto q = c["no_prime_from"].get<unsigned>();
      bool none = true;
      for (const auto& [p, n] : C.nep)
        if (p >= q && n > 0) none = false;
      cs.push_back({"no elements of prime order >= " + std::to_string(q), none, ""});
    }
  } else if (kind == "orbits") {
    const auto& A = L.action();
    const auto O = action::orbits(A);
    const auto b = action::burnside_count(A);
    w = {{"orbits", O.count()}, {"regular", action::regular_orbit_count(A, O)}};
    cs.push_back({"orbit count equals the Burnside count", O.count() == b, std::to_string(b)});
  } else if (kind == "chartab") {
    const auto& T = L.table();
    const auto& G = *L.group();
    std::uint64_t sq = 0;
    for (auto d : T.degrees) sq += d * d;
    auto degs = T.degrees;
    std::sort(degs.begin(), degs.end());
    w = {{"classes", T.size()}, {"degrees", degs}, {"exponent", T.exponent}, {"prime", T.ell}};
    cs.push_back({"characters match classes", T.size() == G.classes().classes.size(), ""});
    cs.push_back({"sum of squared degrees is |G|", sq == G.order(), std::to_string(sq)});
    cs.push_back({"row orthogonality", chartab::row_orthogonality(T), ""});
    cs.push_back({"column orthogonality", chartab::column_orthogonality(T), ""});
    if (c.contains("expect_degrees"))
      cs.push_back({"degrees", c["expect_degrees"].get<std::vector<std::uint64_t>>() == degs, ""});
  } else if (kind == "blocks") {
    const auto p = prime_param(c);
    const auto& T = L.table();
    const auto B = chartab::p_blocks(T, p);
    w = chartab::to_json(B);
    auto norm = [](std::vector<std::vector<std::size_t>> b) {
      for (auto& x : b) std::sort(x.begin(), x.end());
      std::sort(b.begin(), b.end());
      return b;
    };
    cs.push_back({"central-character partition equals the linking partition",
                  norm(B.blocks) == norm(chartab::linking_blocks(T, p)), ""});
    bool bounded = true;
    for (auto d : B.block_defect) bounded = bounded && d <= B.n;
    cs.push_back({"block defects at most n", bounded, ""});
    if (c.contains("expect_defect_zero")) expect_eq(cs, "defect-zero blocks", B.defect_zero_blocks(), c["expect_defect_zero"]);
  } else if (kind == "theorem_A") {
    const auto& A = L.action();
    const auto W = theorem_A(A);
    w = to_json(A, W);
    const auto rep = replay_theorem_A(A, W.K, W.v_a, W.v_b);
    w["replay"] = to_json(rep);
    cs = W.checks;
    cs.push_back({"replay", all_pass(rep), ""});
  } else if (kind == "theorem_34") {
    const auto& A = L.action();
    const auto p = prime_param(c);
    const auto W = theorem_34(A, p);
    w = to_json(A, W);
    const auto rep = replay_theorem_34(A, p, W.K, W.v);
    w["replay"] = to_json(rep);
    cs = W.checks;
    cs.push_back({"replay", all_pass(rep), ""});
  } else if (kind == "theorem_B") {
    std::optional<long> claim;
    if (c.contains("claim_bound")) claim = c["claim_bound"].get<long>();
    const auto r = theorem_B(L.group(), L.table(), prime_param(c), claim);
    w = to_json(r);
    cs = r.checks;
  } else if (kind == "section5") {
    auto R = section5(L.group(), L.table(), prime_param(c));
    w = R.witness;
    cs = R.checks;
  } else if (kind == "section6") {
    auto R = section6(L.group(), L.table());
    w = R.witness;
    cs = R.checks;
  } else {
    throw UsageError("unknown check \"" + kind + "\"");
  }
  return cs;
}

}  // namespace

std::vector<Report> run_entry(const CorpusEntry& e, const CorpusOptions& opt) {
  Lazy L(e, opt);
  std::vector<Report> out;
  for (const auto& c : e.checks) {
    Report r;
    r.entry = e.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.check = label(c);
      json w = json::object();
      const auto cs = run_check(c, L, w);
      if (!w.is_object()) w = {{"value", w}};
      w["checks"] = to_json(cs);
      r.witness = std::move(w);
      r.pass = !cs.empty() && all_pass(cs);
    } catch (const Alarm& a) {
      r.witness = {{"alarm", a.what()}};
    } catch (const UsageError& u) {
      r.witness = {{"error", "usage"}, {"message", u.what()}};
    } catch (const std::exception& x) {
      r.witness = {{"error", "failure"}, {"message", x.what()}};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

CorpusResult corpus_run(const std::vector<CorpusEntry>& entries, const CorpusOptions& opt,
                        const std::function<void(const Report&)>& sink) {
  const std::size_t n = entries.size();
  std::vector<std::vector<Report>> results(n);
  std::vector<bool> done(n, false);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      auto rs = run_entry(entries[i], opt);
      std::lock_guard lock(mu);
      results[i] = std::move(rs);
      done[i] = true;
      cv.notify_all();
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);

  CorpusResult R;
  for (std::size_t i = 0; i < n; ++i) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return done[i]; });
    for (auto& r : results[i]) {
      R.alarms += !r.pass;
      if (sink) sink(r);
      R.reports.push_back(std::move(r));
    }
  }
  for (auto& t : pool) t.join();
  return R;
}

}  // namespace slg::verify
