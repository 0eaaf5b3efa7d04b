#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfkit/fusion.hpp"

namespace mfkit {

using Dim = std::uint64_t;

/// Index (g, lambda) of the block V_g(lambda_1, ..., lambda_n).
struct BlockLabel {
  int genus = 0;
  std::vector<int> colors;

  std::size_t boundary_count() const { return colors.size(); }
  // 2g - 2 + n > 0
  bool is_stable() const { return 2 * genus - 2 + static_cast<int>(colors.size()) > 0; }

  friend bool operator==(const BlockLabel&, const BlockLabel&) = default;
  friend auto operator<=>(const BlockLabel&, const BlockLabel&) = default;
};

std::string to_string(const BlockLabel& label);
nlohmann::json to_json(const BlockLabel& label);
BlockLabel sorted(BlockLabel label);

// Dimension from the gluing recursion:
//   g >= 1:        V_g(l)      = sum_mu V_{g-1}(l, mu, mu)
//   g = 0, n >= 4: V_0(a,b,l') = sum_mu N(a,b,mu) V_0(mu, l')
//   V_0(a,b,c) = N(a,b,c), V_0(a,b) = delta_ab, V_0(a) = delta_a0, V_0() = 1.
// Memoized on (l, variant, g, sorted colors); thread-safe.
Dim dim_block(const BlockLabel& label, const ColorSet& cs);

// dim_block(label) > 0, decided from fusion supports alone so it never
// overflows and stays cheap at large genus.
bool block_nonzero(const BlockLabel& label, const ColorSet& cs);

// Product over components; the empty product is 1.
Dim dim_disconnected(std::span<const BlockLabel> labels, const ColorSet& cs);

// Closed-form Verlinde sum evaluated numerically through to_complex, with the
// sine S-matrix (scaled by sqrt 2 on the even labels for SO3). Throws
// Error("oracle_unstable") when the rounding residue reaches 1e-6.
Dim verlinde_oracle(const BlockLabel& label, const ColorSet& cs);

// Number of entries currently cached by dim_block (all theories).
std::size_t block_memo_size();
void clear_block_memo();

/// A curve along which a block label is cut.
///
/// Nonseparating: V_g(l) -> V_{g-1}(l, mu, mu).
/// Separating:    V_g(l) -> V_{g1}(l_A, mu) (x) V_{g-g1}(l_B, mu), where A lists
///                the boundary positions that go to the first piece.
struct Cut {
  enum class Kind { Nonseparating, Separating };
  Kind kind = Kind::Nonseparating;
  int first_genus = 0;
  std::vector<int> first_boundary;

  static Cut nonseparating() { return {}; }
  static Cut separating(int first_genus, std::vector<int> first_boundary) {
    return {Kind::Separating, first_genus, std::move(first_boundary)};
  }
};

std::string to_string(const Cut& cut);

struct GluingSummand {
  int mu = 0;
  std::vector<BlockLabel> parts;
  Dim dim = 0;
};

// Summands with nonzero dimension, in increasing mu. The dims sum to
// dim_block(label). Throws Error("invalid_cut") for malformed cuts.
std::vector<GluingSummand> gluing_decomposition(const BlockLabel& label, const Cut& cut,
                                                const ColorSet& cs);

// Every cut of the label: the nonseparating one when g >= 1 and a separating
// one for each genus split and each subset of boundary positions.
std::vector<Cut> all_cuts(const BlockLabel& label);

// Drops trailing 0 colors (vacuum isomorphism); dim_block is unchanged.
BlockLabel vacuum_reduce(const BlockLabel& label, const ColorSet& cs);

}  // namespace mfkit
