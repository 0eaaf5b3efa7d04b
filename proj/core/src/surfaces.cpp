#include "mfkit/surfaces.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "mfkit/error.hpp"

namespace mfkit {

BlockLabel SurfacePiece::label() const {
  BlockLabel out{genus, {}};
  for (const auto& b : boundary) out.colors.push_back(b.color);
  return out;
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

std::vector<GluedComponent> glue_result(const GluingGraph& graph) {
  // slot -> (piece, color)
  std::map<int, std::pair<int, int>> owner;
  for (std::size_t p = 0; p < graph.pieces.size(); ++p) {
    if (graph.pieces[p].genus < 0) throw Error("invalid_graph", "negative genus on piece " + std::to_string(p));
    for (const auto& b : graph.pieces[p].boundary) {
      if (!owner.emplace(b.slot, std::make_pair(static_cast<int>(p), b.color)).second)
        throw Error("invalid_graph", "slot " + std::to_string(b.slot) + " appears twice");
    }
  }
  std::map<int, int> partner;
  DisjointSets sets(graph.pieces.size());
  std::vector<int> pair_count(graph.pieces.size(), 0);
  for (const auto& [s, t] : graph.pairings) {
    auto is = owner.find(s);
    auto it = owner.find(t);
    if (is == owner.end() || it == owner.end())
      throw Error("invalid_graph", "pairing references unknown slot");
    if (s == t) throw Error("invalid_graph", "slot " + std::to_string(s) + " paired with itself");
    if (!partner.emplace(s, t).second || !partner.emplace(t, s).second)
      throw Error("invalid_graph", "slot paired more than once in pairing (" + std::to_string(s) + "," +
                                       std::to_string(t) + ")");
    if (is->second.second != it->second.second)
      throw Error("color_mismatch", "pairing (" + std::to_string(s) + "," + std::to_string(t) +
                                        ") joins colors " + std::to_string(is->second.second) + " and " +
                                        std::to_string(it->second.second));
    sets.unite(is->second.first, it->second.first);
    ++pair_count[static_cast<std::size_t>(is->second.first)];
  }

  std::map<int, GluedComponent> by_root;
  std::map<int, int> root_order;
  std::map<int, int> edges;
  std::map<int, int> genus_sum;
  for (std::size_t p = 0; p < graph.pieces.size(); ++p) {
    const int root = sets.find(static_cast<int>(p));
    root_order.emplace(root, static_cast<int>(p));
    auto& comp = by_root[root];
    comp.pieces.push_back(static_cast<int>(p));
    comp.euler_characteristic += graph.pieces[p].euler_characteristic();
    genus_sum[root] += graph.pieces[p].genus;
    edges[root] += pair_count[p];
    for (const auto& b : graph.pieces[p].boundary)
      if (!partner.count(b.slot)) comp.boundary.push_back(b);
  }

  std::vector<std::pair<int, int>> order(root_order.begin(), root_order.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  std::vector<GluedComponent> out;
  for (const auto& [root, first_piece] : order) {
    (void)first_piece;
    GluedComponent comp = std::move(by_root[root]);
    const int b = static_cast<int>(comp.boundary.size());
    const int twice_genus = 2 - comp.euler_characteristic - b;
    const int betti = edges[root] - (static_cast<int>(comp.pieces.size()) - 1);
    if (twice_genus % 2 != 0 || twice_genus / 2 != genus_sum[root] + betti)
      throw Error("internal", "genus from Euler characteristic disagrees with Betti count");
    comp.genus = twice_genus / 2;
    out.push_back(std::move(comp));
  }
  return out;
}

GluingGraph Embedding::as_graph() const {
  GluingGraph graph;
  graph.pieces.push_back(embedded);
  graph.pieces.insert(graph.pieces.end(), complement.begin(), complement.end());
  graph.pairings = pairing;
  return graph;
}

namespace {

void require_gprime(int gprime) {
  if (gprime < 4)
    throw PreconditionFailed("gprime_too_small", "g' must be >= 4, got " + std::to_string(gprime));
}

void check_triple(int h, int n, std::span<const int> colors, const ColorSet& cs) {
  if (h < 0) throw InvalidArgument("genus must be nonnegative");
  if (n < 0 || static_cast<std::size_t>(n) != colors.size())
    throw InvalidArgument("n = " + std::to_string(n) + " does not match " + std::to_string(colors.size()) +
                          " colors");
  for (int c : colors) cs.require(c);
}

// Calls visit(block_of) for every set partition of {0..n-1} in restricted-growth form.
template <class Visit>
void for_each_partition(int n, Visit&& visit) {
  std::vector<int> block(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      visit(block, used);
      return;
    }
    for (int b = 0; b <= used && b < n; ++b) {
      block[static_cast<std::size_t>(i)] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (n == 0) {
    visit(block, 0);
    return;
  }
  rec(0, 0);
}

// Every genus vector with the given sum where entry i is >= min[i].
template <class Visit>
void for_each_genus_vector(const std::vector<int>& min, int total, Visit&& visit) {
  const int base = std::accumulate(min.begin(), min.end(), 0);
  if (base > total) return;
  std::vector<int> g = min;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == g.size()) {
      g[i] = min[i] + left;
      visit(g);
      return;
    }
    for (int extra = 0; extra <= left; ++extra) {
      g[i] = min[i] + extra;
      rec(i + 1, left - extra);
    }
  };
  if (g.empty()) {
    if (total == 0) visit(g);
    return;
  }
  rec(0, total - base);
}

using WitnessKey = std::tuple<int, std::vector<int>, std::vector<int>, std::vector<int>>;

}  // namespace

EmbedResult is_embeddable(int h, int n, std::span<const int> colors, int gprime, const ColorSet& cs) {
  require_gprime(gprime);
  check_triple(h, n, colors, cs);

  EmbedResult result;
  if (n == 0) {
    // A closed S_h can only be glued to nothing, so it embeds iff h = g'.
    if (h == gprime) {
      Embedding e;
      e.target_genus = gprime;
      e.embedded = SurfacePiece{h, {}};
      result.found = true;
      result.witness = std::move(e);
    }
    return result;
  }

  const BlockLabel own{h, std::vector<int>(colors.begin(), colors.end())};
  const bool nonzero = block_nonzero(own, cs);

  std::optional<WitnessKey> best;
  std::vector<int> best_blocks;
  std::vector<int> best_genera;
  for (int c = 1; c <= n && !best; ++c) {
    // Closed connected result: g' = h + sum k_i + (n - c).
    const int genus_budget = gprime - h - n + c;
    if (genus_budget < 0) continue;
    for_each_partition(n, [&](const std::vector<int>& block_of, int used) {
      if (used != c) return;
      std::vector<std::vector<int>> members(static_cast<std::size_t>(c));
      for (int i = 0; i < n; ++i) members[static_cast<std::size_t>(block_of[static_cast<std::size_t>(i)])].push_back(i);
      std::vector<int> min(static_cast<std::size_t>(c), 0);
      for (int b = 0; b < c; ++b)
        if (members[static_cast<std::size_t>(b)].size() == 1) min[static_cast<std::size_t>(b)] = 1;  // no disks
      std::vector<int> color_vector;
      for (const auto& m : members)
        for (int i : m) color_vector.push_back(colors[static_cast<std::size_t>(i)]);
      for_each_genus_vector(min, genus_budget, [&](const std::vector<int>& genera) {
        WitnessKey key{c, genera, color_vector, block_of};
        if (best && !(key < *best)) return;
        if (nonzero) {
          for (int b = 0; b < c; ++b) {
            BlockLabel piece{genera[static_cast<std::size_t>(b)], {}};
            for (int i : members[static_cast<std::size_t>(b)]) piece.colors.push_back(colors[static_cast<std::size_t>(i)]);
            if (!block_nonzero(piece, cs)) return;
          }
        }
        best = key;
        best_blocks = block_of;
        best_genera = genera;
      });
    });
  }
  if (!best) return result;

  const int c = std::get<0>(*best);
  Embedding e;
  e.target_genus = gprime;
  e.embedded.genus = h;
  for (int i = 0; i < n; ++i) e.embedded.boundary.push_back({i, colors[static_cast<std::size_t>(i)]});
  e.complement.resize(static_cast<std::size_t>(c));
  for (int b = 0; b < c; ++b) e.complement[static_cast<std::size_t>(b)].genus = best_genera[static_cast<std::size_t>(b)];
  int next_slot = n;
  for (int i = 0; i < n; ++i) {
    auto& piece = e.complement[static_cast<std::size_t>(best_blocks[static_cast<std::size_t>(i)])];
    piece.boundary.push_back({next_slot, colors[static_cast<std::size_t>(i)]});
    e.pairing.emplace_back(i, next_slot);
    ++next_slot;
  }
  result.found = true;
  result.witness = std::move(e);
  return result;
}

TruncationMembership embeddable_membership(int gprime, const ColorSet& cs) {
  require_gprime(gprime);
  return [gprime, cs](int genus, std::span<const int> colors) {
    return is_embeddable(genus, static_cast<int>(colors.size()), colors, gprime, cs).found;
  };
}

namespace {

// Visits every tuple in colors^n in lexicographic order; stops when visit returns false.
template <class Visit>
bool for_each_tuple(const std::vector<int>& alphabet, int n, Visit&& visit) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<int> tuple(static_cast<std::size_t>(n), alphabet.front());
  while (true) {
    if (!visit(std::span<const int>(tuple))) return false;
    int pos = n - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == alphabet.size()) {
      idx[static_cast<std::size_t>(pos)] = 0;
      tuple[static_cast<std::size_t>(pos)] = alphabet.front();
      --pos;
    }
    if (pos < 0) return true;
    ++idx[static_cast<std::size_t>(pos)];
    tuple[static_cast<std::size_t>(pos)] = alphabet[idx[static_cast<std::size_t>(pos)]];
  }
}

}  // namespace

TruncationCheck validate_truncation_set(const TruncationMembership& member, const ColorSet& cs,
                                        ProbeBound bound) {
  TruncationCheck check;
  auto fail = [&](const char* axiom, int genus, std::span<const int> colors) {
    check.ok = false;
    check.axiom = axiom;
    check.failing = BlockLabel{genus, std::vector<int>(colors.begin(), colors.end())};
    return false;
  };

  for (int n = 1; n <= 5; ++n) {
    const bool done = for_each_tuple(cs.colors(), n, [&](std::span<const int> t) {
      return member(0, t) || fail("0", 0, t);
    });
    if (!done) return check;
  }
  for (int n = 1; n <= 3; ++n) {
    const bool done = for_each_tuple(cs.colors(), n, [&](std::span<const int> t) {
      return member(1, t) || fail("1", 1, t);
    });
    if (!done) return check;
  }
  // Invariance under every permutation is equivalent to agreeing with the sorted tuple.
  for (int g = 0; g <= bound.max_genus; ++g) {
    for (int n = 0; n <= bound.max_points; ++n) {
      const bool done = for_each_tuple(cs.colors(), n, [&](std::span<const int> t) {
        std::vector<int> s(t.begin(), t.end());
        if (std::is_sorted(s.begin(), s.end())) return true;
        std::sort(s.begin(), s.end());
        const bool in_t = member(g, t);
        if (in_t == member(g, s)) return true;
        return in_t ? fail("P", g, t) : fail("P", g, s);
      });
      if (!done) return check;
    }
  }
  return check;
}

ConnectedEmbedding connected_embedding(int h, int n, std::span<const int> colors, int g, int gprime,
                                       const ColorSet& cs) {
  require_gprime(gprime);
  check_triple(h, n, colors, cs);
  if (g < 2 * gprime - 1)
    throw PreconditionFailed("genus_bound", "need g >= 2g'-1, got g=" + std::to_string(g) +
                                                " g'=" + std::to_string(gprime));
  EmbedResult source = is_embeddable(h, n, colors, gprime, cs);
  if (!source.found)
    throw PreconditionFailed("not_embeddable", "triple is not embeddable in S_" + std::to_string(gprime));

  ConnectedEmbedding out;
  out.source = *source.witness;
  const Embedding& e = out.source;

  if (n == 0) {
    // Closed S_{g'}: pass to S_{g'}^1 through the vacuum and cap with S_{g-g'}^1.
    out.embedding.target_genus = g;
    out.embedding.vacuum_capped = true;
    out.embedding.embedded = SurfacePiece{h, {{0, 0}}};
    SurfacePiece m{g - h, {{1, 0}}};
    out.construction.pieces.push_back(m);
    out.embedding.complement.push_back(std::move(m));
    out.embedding.pairing.emplace_back(0, 1);
  } else {
    int annuli = 0;
    for (const auto& piece : e.complement)
      if (piece.genus == 0 && piece.boundary.size() == 2) ++annuli;
    const int others = static_cast<int>(e.complement.size()) - annuli;
    out.annuli = annuli;
    out.others = others;
    // Inequalities the construction relies on.
    if (!(2 * gprime >= n + others) || !(n >= 2 * annuli + others) || !(g - gprime >= annuli + others - 1))
      throw Error("internal", "connected embedding inequality chain violated");

    GluingGraph& tilde = out.construction;
    tilde.pieces = e.complement;
    int next_slot = n;
    for (const auto& piece : tilde.pieces)
      for (const auto& b : piece.boundary) next_slot = std::max(next_slot, b.slot + 1);
    const int comps = static_cast<int>(tilde.pieces.size());
    auto add_pair = [&](int p, int q) {
      const int s = next_slot++;
      const int t = next_slot++;
      tilde.pieces[static_cast<std::size_t>(p)].boundary.push_back({s, 0});
      tilde.pieces[static_cast<std::size_t>(q)].boundary.push_back({t, 0});
      tilde.pairings.emplace_back(s, t);
    };
    const int extra_pairs = g - gprime;
    for (int i = 0; i + 1 < comps; ++i) add_pair(i, i + 1);  // spanning path
    for (int i = comps - 1; i < extra_pairs; ++i) add_pair(0, 0);

    const auto glued = glue_result(tilde);
    if (glued.size() != 1) throw Error("internal", "complement is not connected after construction");
    SurfacePiece m{glued.front().genus, glued.front().boundary};

    out.embedding.target_genus = g;
    out.embedding.embedded = e.embedded;
    out.embedding.complement.push_back(m);
    out.embedding.pairing = e.pairing;

    const BlockLabel own{h, std::vector<int>(colors.begin(), colors.end())};
    if (block_nonzero(own, cs) && !block_nonzero(m.label(), cs))
      throw Error("internal", "connected complement has a zero block");
  }

  const auto closed = glue_result(out.embedding.as_graph());
  if (closed.size() != 1 || closed.front().genus != g || !closed.front().boundary.empty())
    throw Error("internal", "connected embedding does not glue to S_" + std::to_string(g));
  return out;
}

nlohmann::json to_json(const SurfacePiece& piece) {
  nlohmann::json boundary = nlohmann::json::array();
  for (const auto& b : piece.boundary) boundary.push_back({{"slot", b.slot}, {"color", b.color}});
  return {{"genus", piece.genus}, {"boundary", boundary}};
}

nlohmann::json to_json(const Embedding& embedding) {
  nlohmann::json complement = nlohmann::json::array();
  for (const auto& p : embedding.complement) complement.push_back(to_json(p));
  nlohmann::json pairing = nlohmann::json::array();
  for (const auto& [s, t] : embedding.pairing) pairing.push_back({s, t});
  return {{"target_genus", embedding.target_genus},
          {"embedded", to_json(embedding.embedded)},
          {"complement", complement},
          {"pairing", pairing},
          {"vacuum_capped", embedding.vacuum_capped}};
}

nlohmann::json to_json(const GluedComponent& component) {
  nlohmann::json colors = nlohmann::json::array();
  for (const auto& b : component.boundary) colors.push_back(b.color);
  return {{"genus", component.genus}, {"boundary_colors", colors}, {"euler_characteristic", component.euler_characteristic}};
}

}  // namespace mfkit
