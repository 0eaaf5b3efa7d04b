#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfkit/blocks.hpp"

namespace mfkit {

struct BoundarySlot {
  int slot = 0;
  int color = 0;
  friend bool operator==(const BoundarySlot&, const BoundarySlot&) = default;
};

// Colored surface S_g^n; slot ids identify boundary circles across a whole graph.
struct SurfacePiece {
  int genus = 0;
  std::vector<BoundarySlot> boundary;

  int euler_characteristic() const { return 2 - 2 * genus - static_cast<int>(boundary.size()); }
  BlockLabel label() const;
  friend bool operator==(const SurfacePiece&, const SurfacePiece&) = default;
};

// Disjoint union of pieces plus a set of slot pairings. Slot ids must be
// unique across all pieces, each slot is paired at most once, and paired slots
// carry equal colors.
struct GluingGraph {
  std::vector<SurfacePiece> pieces;
  std::vector<std::pair<int, int>> pairings;
};

struct GluedComponent {
  int genus = 0;
  std::vector<BoundarySlot> boundary;  // unpaired slots, in piece order
  std::vector<int> pieces;             // indices into GluingGraph::pieces
  int euler_characteristic = 0;
};

// Connected components of the glued surface. Genus comes from chi additivity
// and is cross-checked against sum of piece genera + first Betti number of the
// component's gluing graph. Throws Error("color_mismatch") / Error("invalid_graph").
std::vector<GluedComponent> glue_result(const GluingGraph& graph);

/// Embedding (Sigma, G) of a colored S_h^n into S_{g'}.
///
/// The embedded surface owns slots 0..n-1; complement slots follow. When
/// `vacuum_capped` is set the embedded surface is S_h^1 with a single
/// 0-colored slot standing in for the closed S_h through the vacuum isomorphism.
struct Embedding {
  int target_genus = 0;
  SurfacePiece embedded;
  std::vector<SurfacePiece> complement;
  std::vector<std::pair<int, int>> pairing;
  bool vacuum_capped = false;

  GluingGraph as_graph() const;
};

struct EmbedResult {
  bool found = false;
  std::optional<Embedding> witness;
};

// Exhaustive search for an embedding satisfying: all boundary of S_h^n glued to
// Sigma (never to itself), no component of Sigma is a sphere, disk or torus,
// and V(Sigma) != 0 whenever V_h(colors) != 0. Sigma is searched without
// internal gluings (any internally glued complement collapses to one of these
// with no smaller block support). The witness is the lexicographically smallest
// (component count, genus vector, color vector). Requires gprime >= 4.
EmbedResult is_embeddable(int h, int n, std::span<const int> colors, int gprime, const ColorSet& cs);

using TruncationMembership = std::function<bool(int genus, std::span<const int> colors)>;

struct ProbeBound {
  int max_genus = 2;
  int max_points = 4;
};

struct TruncationCheck {
  bool ok = true;
  std::optional<BlockLabel> failing;
  std::string axiom;  // "P", "0" or "1" when !ok
};

// Checks (0) for 1<=n<=5 and (1) for 1<=n<=3 exhaustively, then permutation
// invariance (P) for every triple with genus <= max_genus and n <= max_points.
TruncationCheck validate_truncation_set(const TruncationMembership& member, const ColorSet& cs,
                                        ProbeBound bound);

// Membership in I_{g'} backed by is_embeddable.
TruncationMembership embeddable_membership(int gprime, const ColorSet& cs);

struct ConnectedEmbedding {
  Embedding embedding;       // complement is the single connected piece M
  GluingGraph construction;  // Sigma~ with its 0-colored pairs glued along a spanning tree
  Embedding source;          // the embedding into S_{g'} it was built from
  int annuli = 0;
  int others = 0;
};

// Turns an embedding into S_{g'} into one into S_g with connected complement by
// adding g-g' pairs of 0-colored boundary circles to Sigma and gluing them
// along a spanning tree of its components (extra pairs become handles on the
// first component). Needs g >= 2g'-1 and (h, n, colors) in I_{g'}.
ConnectedEmbedding connected_embedding(int h, int n, std::span<const int> colors, int g, int gprime,
                                       const ColorSet& cs);

nlohmann::json to_json(const SurfacePiece& piece);
nlohmann::json to_json(const Embedding& embedding);
nlohmann::json to_json(const GluedComponent& component);

}  // namespace mfkit
