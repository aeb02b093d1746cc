#pragma once

// Witness search for the orbit theorem and its character-theoretic
// corollaries, independent witness replay, and the corpus runner.
//
// Every search either returns a witness or throws Alarm.  The replay_*
// functions re-check a witness from scratch through a separate code path.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "slg/action.hpp"
#include "slg/chartab.hpp"
#include "slg/grp.hpp"

namespace slg::verify {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};
bool all_pass(const std::vector<Check>& checks);
nlohmann::json to_json(const std::vector<Check>& checks);

/// K normal in G, two orbit representatives, and the five checks in order:
/// K inside F2(G); pi0-Hall subgroup of KF/F abelian; pi0-part of K cap F
/// abelian; pi0-elements of both stabilizers inside K; trivial joint
/// centralizer in O_pi0(K cap F).
struct TheoremAWitness {
  grp::Subgroup K;
  std::uint64_t v_a = 0, v_b = 0;
  std::vector<Check> checks;
  std::size_t pairs_examined = 0;
};

/// Throws UsageError unless G is solvable and V is faithful and completely
/// reducible; Alarm when no orbit pair admits a K.
TheoremAWitness theorem_A(const action::Action& A);
std::vector<Check> replay_theorem_A(const action::Action& A, const grp::Subgroup& K, std::uint64_t v_a,
                                    std::uint64_t v_b);

struct Theorem34Witness {
  unsigned p = 0;
  grp::Subgroup K;
  std::uint64_t v = 0;
  std::uint64_t core_order = 1;        // |O_p(K cap F)|
  std::uint64_t centralizer_order = 1;  // |C_{O_p(K cap F)}(v)|
  std::vector<Check> checks;
  std::size_t candidates_examined = 0;
};

/// p >= 5.  Same hypotheses as theorem_A.
Theorem34Witness theorem_34(const action::Action& A, unsigned p);
std::vector<Check> replay_theorem_34(const action::Action& A, unsigned p, const grp::Subgroup& K, std::uint64_t v);

struct TheoremBResult {
  unsigned p = 0;
  unsigned n = 0;
  unsigned min_defect = 0;
  long bound = 0;  // floor(3n/5) unless overridden
  std::size_t blocks = 0;
  std::size_t witness_char = 0;  // a character in a block of minimal defect
  std::vector<Check> checks;
};

/// Throws UsageError if G is not solvable, p < 5 or O_p(G) != 1.  The
/// assertion is min defect <= bound; `claim_bound` replaces floor(3n/5).
TheoremBResult theorem_B(const grp::GroupPtr& G, const chartab::CharTable& T, unsigned p,
                         std::optional<long> claim_bound = std::nullopt);

struct SectionReport {
  std::vector<Check> checks;
  nlohmann::json witness = nlohmann::json::object();
};

/// Degree and class-size bounds for p >= 5, with three-degree and
/// three-class divisibility witnesses.  Throws UsageError if G is not
/// solvable or p < 5.
SectionReport section5(const grp::GroupPtr& G, const chartab::CharTable& T, unsigned p);
/// rho/sigma bounds and their cross-checks.
SectionReport section6(const grp::GroupPtr& G, const chartab::CharTable& T);

nlohmann::json to_json(const action::Action& A, const TheoremAWitness& w);
nlohmann::json to_json(const action::Action& A, const Theorem34Witness& w);
nlohmann::json to_json(const TheoremBResult& r);

// ---- corpus ----------------------------------------------------------------

inline constexpr const char* kVersion = "1.0.0";

struct Report {
  std::string entry;
  std::string check;
  bool pass = false;
  nlohmann::json witness = nlohmann::json::object();
  double seconds = 0;
  nlohmann::json to_json(bool with_timings = true) const;
};

struct CorpusEntry {
  std::string name;
  nlohmann::json recipe;
  std::vector<nlohmann::json> checks;
  std::uint64_t seed = 1;
  std::size_t line = 0;
};

struct CorpusOptions {
  std::uint64_t seed = 1;  // used when an entry has none
  unsigned jobs = 1;
  std::size_t cap_order = grp::kDefaultOrderCap;
  std::uint64_t cap_space = action::kDefaultSpaceCap;
};

/// One JSON object per line; blank lines and lines starting with '#' are
/// skipped.  Throws UsageError naming the line on malformed input.
std::vector<CorpusEntry> parse_corpus(std::istream& in, std::uint64_t default_seed = 1);

/// Runs every check of one entry.  Failures of any kind become reports with
/// pass = false; nothing is thrown.
std::vector<Report> run_entry(const CorpusEntry& e, const CorpusOptions& opt);

struct CorpusResult {
  std::vector<Report> reports;  // entry order, then check order
  std::size_t alarms = 0;
};

/// Entries are independent and run on `jobs` threads; reports are emitted to
/// `sink` in entry order.
CorpusResult corpus_run(const std::vector<CorpusEntry>& entries, const CorpusOptions& opt,
                        const std::function<void(const Report&)>& sink = {});

}  // namespace slg::verify
