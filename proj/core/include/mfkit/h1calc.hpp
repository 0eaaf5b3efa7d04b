#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfkit/blocks.hpp"

namespace mfkit {

enum class TermKind { H0, H1 };

// Formal symbol H^k(ad V) for a block label. Labels are kept with sorted colors.
struct Term {
  TermKind kind = TermKind::H1;
  BlockLabel label;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

std::string to_string(const Term& term);

/// Multiset of formal terms, each with a positive multiplicity.
class FormalSpace {
 public:
  void add(const Term& term, int multiplicity = 1);
  const std::map<Term, int>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const;  // total multiplicity

  friend bool operator==(const FormalSpace&, const FormalSpace&) = default;

 private:
  std::map<Term, int> terms_;
};

std::string to_string(const FormalSpace& space);
nlohmann::json to_json(const FormalSpace& space);

// The assumptions the calculus runs under. (II) and (I) are computed from the
// fusion data; irreducibility is recorded as an axiom that holds for prime l.
struct Hypotheses {
  bool property_II = false;
  bool property_I = false;
  bool irreducibility = false;

  bool all() const { return property_II && property_I && irreducibility; }
};

Hypotheses check_hypotheses(const ColorSet& cs);

// One summand of the pullback before collapsing: the H^1 term of each piece
// tensored with the H^0 of the others.
struct KunnethSummand {
  int mu = 0;
  std::vector<BlockLabel> parts;
};

// Nonzero summands of ad V(label) pulled back along `cut`, cross terms dropped.
std::vector<KunnethSummand> kunneth_summands(const BlockLabel& label, const Cut& cut, const ColorSet& cs);

// H^1 of the pullback: one H1 term per piece of each nonzero summand, with the
// H^0 factors collapsed (each is 1-dimensional by irreducibility). Throws
// Error("zero_block") when the label itself is zero and
// Error("hypotheses_failed") when (II) or irreducibility is unavailable.
FormalSpace kunneth_decompose(const BlockLabel& label, const Cut& cut, const ColorSet& cs);

struct ChainStep {
  std::string action;  // "cut", "project" or "vacuum"
  std::string detail;
  FormalSpace space;
};

struct StabilityChain {
  int h = 0;
  std::vector<ChainStep> route_a;  // through S_h^1 x S_1^1
  std::vector<ChainStep> route_b;  // through the nonseparating cut and the vacuum
  FormalSpace meeting_a;
  FormalSpace meeting_b;
  bool routes_equal = false;
  // {nu : V_2(nu) != 0} == {nu : V_1(nu) != 0}: the handle factor carries the
  // same colors in both routes.
  bool handle_support_matches = false;
};

// Requires h >= 4; throws PreconditionFailed("h_too_small") otherwise.
StabilityChain stability_chain(int h, const ColorSet& cs);

nlohmann::json to_json(const StabilityChain& chain);

struct CertificateStep {
  int id = 0;
  std::string kind;  // "hypothesis", "choice", "truncation", "embedding", "decomposition",
                     // "stability", "axiom", "conclusion"
  std::string statement;
  std::string citation;
  std::vector<int> depends_on;
  bool discharged = false;
  nlohmann::json data;
};

struct Certificate {
  int g = 0;
  int gprime = 0;
  std::vector<int> gprime_candidates;
  std::vector<CertificateStep> steps;
};

struct CertificateFailure {
  int g = 0;
  std::string reason;
};

using CertificateResult = std::variant<Certificate, CertificateFailure>;

// Chooses the smallest g' >= 4 with g >= 2g'-1 and discharges every step by
// calling the owning module.
CertificateResult build_certificate(int g, const ColorSet& cs);

// Dependencies point strictly backwards, ids are 0..n-1 in order, every step
// is discharged and the genus inequalities hold.
bool verify_certificate(const Certificate& cert);

nlohmann::json to_json(const CertificateResult& result);
std::string explain(const CertificateResult& result);

}  // namespace mfkit
