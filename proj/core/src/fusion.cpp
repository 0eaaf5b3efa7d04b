#include "mfkit/fusion.hpp"

#include <cstdlib>

#include "mfkit/blocks.hpp"
#include "mfkit/error.hpp"

namespace mfkit {

std::string_view to_string(Variant v) { return v == Variant::SU2 ? "su2" : "so3"; }

Variant parse_variant(std::string_view text) {
  if (text == "su2" || text == "SU2") return Variant::SU2;
  if (text == "so3" || text == "SO3") return Variant::SO3;
  throw InvalidArgument("unknown variant '" + std::string(text) + "' (expected su2 or so3)");
}

ColorSet::ColorSet(int ell, Variant variant) : ell_(ell), variant_(variant) {
  if (ell < 3) throw InvalidArgument("ell must be >= 3, got " + std::to_string(ell));
  if (variant == Variant::SO3 && ell % 2 == 0)
    throw InvalidArgument("SO3 theory requires odd ell, got " + std::to_string(ell));
  if (variant == Variant::SU2) {
    for (int c = 0; c <= ell - 2; ++c) colors_.push_back(c);
  } else {
    for (int c = 0; c <= ell - 3; c += 2) colors_.push_back(c);
  }
}

bool ColorSet::contains(int color) const {
  if (color < 0 || color > colors_.back()) return false;
  return variant_ == Variant::SU2 || color % 2 == 0;
}

long ColorSet::twist_order() const {
  return variant_ == Variant::SU2 ? 4L * ell_ : static_cast<long>(ell_);
}

void ColorSet::require(int color) const {
  if (!contains(color))
    throw InvalidLabel("color " + std::to_string(color) + " is not in the " +
                       std::string(to_string(variant_)) + " color set at ell=" + std::to_string(ell_));
}

ColorSet make_color_set(int ell, Variant variant) { return ColorSet(ell, variant); }

int fusion_dim(int a, int b, int c, const ColorSet& cs) {
  cs.require(a);
  cs.require(b);
  cs.require(c);
  const int sum = a + b + c;
  if (sum % 2 != 0) return 0;
  if (c < std::abs(a - b) || c > a + b) return 0;
  if (sum >= 2 * cs.ell() - 2) return 0;
  return 1;
}

CycloScalar twist(int lambda, const ColorSet& cs) {
  cs.require(lambda);
  const long order = cs.twist_order();
  CycloScalar t = CycloScalar::root_of_unity(static_cast<long>(lambda) * (lambda + 2), order);
  return lambda % 2 == 0 ? t : -t;
}

PropertyIIResult check_property_II(const ColorSet& cs) {
  PropertyIIResult result;
  std::vector<CycloScalar> twists;
  twists.reserve(cs.size());
  for (int c : cs.colors()) twists.push_back(twist(c, cs));
  for (std::size_t i = 0; i < twists.size(); ++i)
    for (std::size_t j = i + 1; j < twists.size(); ++j)
      if (twists[i] == twists[j]) result.collisions.emplace_back(cs.colors()[i], cs.colors()[j]);
  result.holds = result.collisions.empty();
  for (const auto& p : result.collisions) {
    if (p.first != 0) {
      result.witness = p;
      break;
    }
  }
  if (!result.witness && !result.collisions.empty()) result.witness = result.collisions.front();
  return result;
}

PropertyIResult check_property_I(const ColorSet& cs) {
  PropertyIResult result;
  for (int c : cs.colors()) {
    if (dim_block(BlockLabel{1, {c}}, cs) > 0) result.genus_one_support.push_back(c);
    if (dim_block(BlockLabel{2, {c}}, cs) > 0) result.genus_two_support.push_back(c);
  }
  result.holds = result.genus_one_support == result.genus_two_support;
  return result;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

}  // namespace mfkit
