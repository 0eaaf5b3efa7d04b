#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfkit/cyclo.hpp"

namespace mfkit {

enum class Variant { SU2, SO3 };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

/// Label set of the SU(2) level-2l theory ({0,...,l-2}) or the SO(3) level-l
/// theory ({0,2,...,l-3}, l odd). The preferred color 0 is always present.
class ColorSet {
 public:
  ColorSet(int ell, Variant variant);

  int ell() const { return ell_; }
  Variant variant() const { return variant_; }
  const std::vector<int>& colors() const { return colors_; }
  std::size_t size() const { return colors_.size(); }
  bool contains(int color) const;
  int max_color() const { return colors_.back(); }

  // Order of the root of unity the twists are expressed in: 4l for SU2, l for SO3.
  long twist_order() const;

  // Throws InvalidLabel naming the offending color.
  void require(int color) const;

  friend bool operator==(const ColorSet& a, const ColorSet& b) {
    return a.ell_ == b.ell_ && a.variant_ == b.variant_;
  }

 private:
  int ell_;
  Variant variant_;
  std::vector<int> colors_;
};

ColorSet make_color_set(int ell, Variant variant);

// dim V(S_0^3, a, b, c): 1 iff a+b+c even, triangle inequalities, a+b+c < 2l-2.
int fusion_dim(int a, int b, int c, const ColorSet& cs);

// t_lambda = (-1)^lambda zeta^{lambda(lambda+2)}.
CycloScalar twist(int lambda, const ColorSet& cs);

struct PropertyIIResult {
  bool holds = true;
  // First colliding pair with both colors nonzero, falling back to pairs
  // involving the vacuum color.
  std::optional<std::pair<int, int>> witness;
  std::vector<std::pair<int, int>> collisions;  // every colliding pair, lexicographic
};

PropertyIIResult check_property_II(const ColorSet& cs);

struct PropertyIResult {
  bool holds = true;
  std::vector<int> genus_one_support;  // {lambda : dim V_1(lambda) > 0}
  std::vector<int> genus_two_support;  // {lambda : dim V_2(lambda) > 0}
};

PropertyIResult check_property_I(const ColorSet& cs);

bool is_prime(int n);

}  // namespace mfkit
