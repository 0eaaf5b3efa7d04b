#include "mfkit/h1calc.hpp"

#include <algorithm>
#include <sstream>

#include "mfkit/error.hpp"
#include "mfkit/surfaces.hpp"

namespace mfkit {

std::string to_string(const Term& term) {
  return std::string(term.kind == TermKind::H1 ? "H1" : "H0") + " ad " + to_string(term.label);
}

void FormalSpace::add(const Term& term, int multiplicity) {
  if (multiplicity <= 0) throw InvalidArgument("multiplicity must be positive");
  terms_[Term{term.kind, sorted(term.label)}] += multiplicity;
}

std::size_t FormalSpace::size() const {
  std::size_t n = 0;
  for (const auto& [t, m] : terms_) n += static_cast<std::size_t>(m);
  return n;
}

std::string to_string(const FormalSpace& space) {
  if (space.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [t, m] : space.terms()) {
    out << (first ? "" : " + ");
    if (m > 1) out << m << "*";
    out << to_string(t);
    first = false;
  }
  return out.str();
}

nlohmann::json to_json(const FormalSpace& space) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [t, m] : space.terms())
    terms.push_back({{"kind", t.kind == TermKind::H1 ? "H1" : "H0"},
                     {"label", to_string(t.label)},
                     {"multiplicity", m}});
  return terms;
}

Hypotheses check_hypotheses(const ColorSet& cs) {
  Hypotheses h;
  h.property_II = check_property_II(cs).holds;
  h.property_I = check_property_I(cs).holds;
  h.irreducibility = is_prime(cs.ell());
  return h;
}

namespace {

// Drops every 0 color through the vacuum isomorphism and sorts the rest.
BlockLabel vacuum_normal(const BlockLabel& label) {
  BlockLabel out{label.genus, {}};
  for (int c : label.colors)
    if (c != 0) out.colors.push_back(c);
  std::sort(out.colors.begin(), out.colors.end());
  return out;
}

void require_kunneth_hypotheses(const ColorSet& cs) {
  if (!is_prime(cs.ell()))
    throw Error("hypotheses_failed", "irreducibility is only available for prime l, got l=" + std::to_string(cs.ell()));
  if (!check_property_II(cs).holds)
    throw Error("hypotheses_failed", "property (II) fails, so cross terms need not vanish");
}

}  // namespace

std::vector<KunnethSummand> kunneth_summands(const BlockLabel& label, const Cut& cut, const ColorSet& cs) {
  if (!block_nonzero(label, cs))
    throw Error("zero_block", to_string(label) + " is zero; its pullback has no summands to index");
  std::vector<KunnethSummand> out;
  if (cut.kind == Cut::Kind::Nonseparating) {
    if (label.genus < 1) throw Error("invalid_cut", "nonseparating cut needs genus >= 1");
    for (int mu : cs.colors()) {
      BlockLabel part{label.genus - 1, label.colors};
      part.colors.push_back(mu);
      part.colors.push_back(mu);
      if (block_nonzero(part, cs)) out.push_back({mu, {sorted(std::move(part))}});
    }
    return out;
  }
  if (cut.first_genus < 0 || cut.first_genus > label.genus)
    throw Error("invalid_cut", "separating cut genus " + std::to_string(cut.first_genus) + " outside [0, " +
                                   std::to_string(label.genus) + "]");
  std::vector<bool> in_first(label.colors.size(), false);
  for (int idx : cut.first_boundary) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= label.colors.size())
      throw Error("invalid_cut", "boundary position " + std::to_string(idx) + " out of range");
    if (in_first[static_cast<std::size_t>(idx)])
      throw Error("invalid_cut", "boundary position " + std::to_string(idx) + " listed twice");
    in_first[static_cast<std::size_t>(idx)] = true;
  }
  BlockLabel first{cut.first_genus, {}};
  BlockLabel second{label.genus - cut.first_genus, {}};
  for (std::size_t i = 0; i < label.colors.size(); ++i)
    (in_first[i] ? first : second).colors.push_back(label.colors[i]);
  for (int mu : cs.colors()) {
    BlockLabel a = first;
    BlockLabel b = second;
    a.colors.push_back(mu);
    b.colors.push_back(mu);
    if (block_nonzero(a, cs) && block_nonzero(b, cs)) out.push_back({mu, {sorted(std::move(a)), sorted(std::move(b))}});
  }
  return out;
}

FormalSpace kunneth_decompose(const BlockLabel& label, const Cut& cut, const ColorSet& cs) {
  require_kunneth_hypotheses(cs);
  FormalSpace space;
  for (const auto& summand : kunneth_summands(label, cut, cs))
    for (const auto& part : summand.parts) space.add(Term{TermKind::H1, part});
  return space;
}

namespace {

FormalSpace single(const BlockLabel& label) {
  FormalSpace s;
  s.add(Term{TermKind::H1, label});
  return s;
}

// Restriction to one summand; the target must occur in the current space.
ChainStep project(const FormalSpace& from, const BlockLabel& target) {
  const Term t{TermKind::H1, sorted(target)};
  if (!from.terms().count(t))
    throw Error("internal", "projection target " + to_string(t) + " is not a summand of " + to_string(from));
  return {"project", "onto " + to_string(t), single(target)};
}

ChainStep vacuum(const BlockLabel& label) {
  const BlockLabel reduced = vacuum_normal(label);
  return {"vacuum", to_string(sorted(label)) + " = " + to_string(reduced), single(reduced)};
}

std::vector<int> genus_support(int genus, const ColorSet& cs) {
  std::vector<int> out;
  for (int nu : cs.colors())
    if (block_nonzero(BlockLabel{genus, {nu}}, cs)) out.push_back(nu);
  return out;
}

}  // namespace

StabilityChain stability_chain(int h, const ColorSet& cs) {
  if (h < 4) throw PreconditionFailed("h_too_small", "stability chain needs h >= 4, got " + std::to_string(h));
  StabilityChain chain;
  chain.h = h;
  const BlockLabel top{h + 1, {}};
  const BlockLabel h0{h, {0}};

  // Route A: split off a one-holed torus, keep the vacuum summand.
  const Cut split = Cut::separating(h, {});
  chain.route_a.push_back({"cut", to_string(top) + " along " + to_string(split), kunneth_decompose(top, split, cs)});
  chain.route_a.push_back(project(chain.route_a.back().space, h0));
  chain.meeting_a = chain.route_a.back().space;
  chain.route_a.push_back(vacuum(h0));

  // Route B: cut a handle, keep the vacuum pair, then split off the pair of pants.
  const BlockLabel h00{h, {0, 0}};
  const Cut handle = Cut::nonseparating();
  chain.route_b.push_back({"cut", to_string(top) + " along " + to_string(handle), kunneth_decompose(top, handle, cs)});
  chain.route_b.push_back(project(chain.route_b.back().space, h00));
  chain.route_b.push_back({"cut", to_string(h00) + " along " + to_string(split), kunneth_decompose(h00, split, cs)});
  chain.route_b.push_back(project(chain.route_b.back().space, h0));
  chain.meeting_b = chain.route_b.back().space;
  chain.route_b.push_back(vacuum(h0));

  chain.routes_equal =
      chain.meeting_a == chain.meeting_b && chain.route_a.back().space == chain.route_b.back().space;
  chain.handle_support_matches = genus_support(2, cs) == genus_support(1, cs);
  return chain;
}

namespace {

nlohmann::json steps_json(const std::vector<ChainStep>& steps) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : steps) out.push_back({{"action", s.action}, {"detail", s.detail}, {"space", to_json(s.space)}});
  return out;
}

}  // namespace

nlohmann::json to_json(const StabilityChain& chain) {
  return {{"h", chain.h},
          {"route_a", steps_json(chain.route_a)},
          {"route_b", steps_json(chain.route_b)},
          {"meeting_a", to_json(chain.meeting_a)},
          {"meeting_b", to_json(chain.meeting_b)},
          {"routes_equal", chain.routes_equal},
          {"handle_support_matches", chain.handle_support_matches}};
}

namespace {

class StepLog {
 public:
  int add(std::string kind, std::string statement, std::string citation, std::vector<int> deps, bool discharged,
          nlohmann::json data = nlohmann::json::object()) {
    const int id = static_cast<int>(steps_.size());
    steps_.push_back({id, std::move(kind), std::move(statement), std::move(citation), std::move(deps), discharged,
                      std::move(data)});
    return id;
  }
  std::vector<CertificateStep> take() { return std::move(steps_); }

 private:
  std::vector<CertificateStep> steps_;
};

std::string triple_string(int h, const std::vector<int>& colors) {
  std::ostringstream out;
  out << "(" << h << "," << colors.size() << ",(";
  for (std::size_t i = 0; i < colors.size(); ++i) out << (i ? "," : "") << colors[i];
  out << "))";
  return out.str();
}

}  // namespace

CertificateResult build_certificate(int g, const ColorSet& cs) {
  std::vector<int> candidates;
  for (int gp = 4; 2 * gp - 1 <= g; ++gp) candidates.push_back(gp);
  if (candidates.empty()) return CertificateFailure{g, "no g' with g'>=4 and g>=2g'-1"};
  const int gprime = candidates.front();

  const Hypotheses hyp = check_hypotheses(cs);
  if (!hyp.property_II) return CertificateFailure{g, "property (II) fails for this theory"};
  if (!hyp.property_I) return CertificateFailure{g, "property (I) fails for this theory"};
  if (!hyp.irreducibility) return CertificateFailure{g, "irreducibility is only available for prime l"};

  StepLog log;
  const int s_ii = log.add("hypothesis", "property (II): twists separate colors", "twist-separation property (II)",
                           {}, true);
  const PropertyIResult prop_i = check_property_I(cs);
  const int s_i = log.add("hypothesis", "property (I): genus-one and genus-two supports agree",
                          "support property (I)", {}, true,
                          {{"support", prop_i.genus_one_support}});
  const int s_irr = log.add("axiom", "mapping class group representations are irreducible (l prime)",
                            "irreducibility of quantum representations", {}, true, {{"ell", cs.ell()}});

  const int s_choice =
      log.add("choice", "g'=" + std::to_string(gprime) + " is the smallest g'>=4 with g>=2g'-1",
              "choice of the auxiliary genus", {}, true, {{"gprime", gprime}, {"candidates", candidates}});

  const TruncationCheck trunc = validate_truncation_set(embeddable_membership(gprime, cs), cs, ProbeBound{});
  const int s_trunc = log.add("truncation", "embeddable triples in S_" + std::to_string(gprime) +
                                                " form a truncation set (axioms P, 0, 1)",
                              "embeddable triples form a truncation set", {s_choice}, trunc.ok,
                              trunc.ok ? nlohmann::json::object()
                                       : nlohmann::json{{"axiom", trunc.axiom}, {"failing", to_string(*trunc.failing)}});

  // Representative embedding facts, including the closed surface itself.
  nlohmann::json facts = nlohmann::json::array();
  bool embeddings_ok = is_embeddable(gprime, 0, {}, gprime, cs).found;
  facts.push_back({{"triple", triple_string(gprime, {})}, {"embeddable", embeddings_ok}});
  const int top = cs.max_color();
  const std::vector<std::pair<int, std::vector<int>>> reps = {
      {0, {0, 0, 0}}, {1, {0}}, {0, {top, top, top, top}}, {1, {top, top}}, {gprime, {}}};
  for (const auto& [h, colors] : reps) {
    if (!is_embeddable(h, static_cast<int>(colors.size()), colors, gprime, cs).found) {
      facts.push_back({{"triple", triple_string(h, colors)}, {"embeddable", false}});
      embeddings_ok = false;
      continue;
    }
    const ConnectedEmbedding ce = connected_embedding(h, static_cast<int>(colors.size()), colors, g, gprime, cs);
    facts.push_back({{"triple", triple_string(h, colors)},
                     {"embeddable", true},
                     {"connected_complement_genus", ce.embedding.complement.front().genus},
                     {"vacuum_capped", ce.embedding.vacuum_capped}});
  }
  const int s_embed = log.add("embedding",
                              "embeddable triples of S_" + std::to_string(gprime) + " embed in S_" +
                                  std::to_string(g) + " with connected complement",
                              "connected embedding construction", {s_choice, s_trunc}, embeddings_ok,
                              {{"facts", facts}});

  // Cut S_g down to S_{g'} with 2(g-g') vacuum-colored holes, then drop them.
  nlohmann::json cuts = nlohmann::json::array();
  bool decomposition_ok = true;
  BlockLabel current{g, {}};
  while (current.genus > gprime) {
    const FormalSpace space = kunneth_decompose(current, Cut::nonseparating(), cs);
    BlockLabel next{current.genus - 1, current.colors};
    next.colors.push_back(0);
    next.colors.push_back(0);
    next = sorted(next);
    decomposition_ok = decomposition_ok && space.terms().count(Term{TermKind::H1, next}) == 1;
    cuts.push_back({{"from", to_string(current)}, {"summands", space.size()}, {"kept", to_string(next)}});
    current = next;
  }
  const BlockLabel reduced = vacuum_normal(current);
  decomposition_ok = decomposition_ok && reduced == BlockLabel{gprime, {}};
  const int s_decomp =
      log.add("decomposition",
              "ad V_" + std::to_string(g) + "() restricts to ad " + to_string(current) + " = ad " + to_string(reduced),
              "Kunneth decomposition with vanishing cross terms", {s_ii, s_irr, s_choice}, decomposition_ok,
              {{"cuts", cuts}});

  std::vector<int> stability_ids;
  int prev = s_decomp;
  for (int h = g - 1; h >= gprime; --h) {
    const StabilityChain chain = stability_chain(h, cs);
    const bool ok = chain.routes_equal && chain.handle_support_matches;
    prev = log.add("stability",
                   "H1 ad V_" + std::to_string(h + 1) + "() -> H1 ad V_" + std::to_string(h) +
                       "(): both routes agree",
                   "stability of the restriction maps", {s_i, s_ii, s_irr, prev}, ok,
                   {{"h", h}, {"meeting", to_json(chain.meeting_a)}});
    stability_ids.push_back(prev);
  }

  const int s_inj = log.add("axiom", "restriction H1 ad V_{h+1} -> H1 ad V_h is injective for h>=4",
                            "Hodge-theoretic injectivity", {s_embed, prev}, true);
  const int s_zero = log.add("axiom", "the restricted classes lift harmonically and vanish by rigidity",
                             "harmonic lifting and Ocneanu rigidity", {s_trunc, s_embed, s_inj}, true);

  std::vector<int> final_deps{s_decomp, s_inj, s_zero};
  final_deps.insert(final_deps.end(), stability_ids.begin(), stability_ids.end());
  std::sort(final_deps.begin(), final_deps.end());
  log.add("conclusion", "H1(Mod(S_" + std::to_string(g) + "), ad V_" + std::to_string(g) + "()) = 0",
          "vanishing for g>=7", final_deps, true);

  Certificate cert;
  cert.g = g;
  cert.gprime = gprime;
  cert.gprime_candidates = candidates;
  cert.steps = log.take();
  bool all = true;
  for (const auto& s : cert.steps) all = all && s.discharged;
  if (!all) {
    for (const auto& s : cert.steps)
      if (!s.discharged) return CertificateFailure{g, "step " + std::to_string(s.id) + " not discharged: " + s.statement};
  }
  return cert;
}

bool verify_certificate(const Certificate& cert) {
  if (cert.gprime < 4 || cert.g < 2 * cert.gprime - 1) return false;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    if (s.id != static_cast<int>(i) || !s.discharged) return false;
    for (int d : s.depends_on)
      if (d < 0 || d >= s.id) return false;
  }
  return !cert.steps.empty() && cert.steps.back().kind == "conclusion";
}

nlohmann::json to_json(const CertificateResult& result) {
  if (const auto* f = std::get_if<CertificateFailure>(&result))
    return {{"ok", false}, {"g", f->g}, {"reason", f->reason}};
  const auto& cert = std::get<Certificate>(result);
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : cert.steps)
    steps.push_back({{"id", s.id},
                     {"kind", s.kind},
                     {"statement", s.statement},
                     {"citation", s.citation},
                     {"depends_on", s.depends_on},
                     {"discharged", s.discharged},
                     {"data", s.data}});
  return {{"ok", true},
          {"g", cert.g},
          {"gprime", cert.gprime},
          {"gprime_candidates", cert.gprime_candidates},
          {"verified", verify_certificate(cert)},
          {"steps", steps}};
}

std::string explain(const CertificateResult& result) {
  std::ostringstream out;
  if (const auto* f = std::get_if<CertificateFailure>(&result)) {
    out << "g=" << f->g << ": no certificate (" << f->reason << ")\n";
    return out.str();
  }
  const auto& cert = std::get<Certificate>(result);
  out << "g=" << cert.g << ", g'=" << cert.gprime << "\n";
  for (const auto& s : cert.steps) {
    out << "[" << s.id << "] " << s.kind << ": " << s.statement << "  {" << s.citation << "}";
    if (!s.depends_on.empty()) {
      out << "  <-";
      for (int d : s.depends_on) out << " " << d;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace mfkit
