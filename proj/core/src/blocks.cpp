#include "mfkit/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "mfkit/error.hpp"

namespace mfkit {

std::string to_string(const BlockLabel& label) {
  std::ostringstream out;
  out << "V_" << label.genus << "(";
  for (std::size_t i = 0; i < label.colors.size(); ++i) out << (i ? "," : "") << label.colors[i];
  out << ")";
  return out.str();
}

nlohmann::json to_json(const BlockLabel& label) {
  return {{"genus", label.genus}, {"colors", label.colors}};
}

BlockLabel sorted(BlockLabel label) {
  std::sort(label.colors.begin(), label.colors.end());
  return label;
}

namespace {

Dim checked_add(Dim a, Dim b) {
  Dim r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("overflow", "block dimension exceeds 64 bits");
  return r;
}

Dim checked_mul(Dim a, Dim b) {
  Dim r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("overflow", "block dimension exceeds 64 bits");
  return r;
}

struct MemoKey {
  int ell;
  Variant variant;
  int genus;
  std::vector<int> colors;

  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    std::size_t h = std::hash<int>{}(k.ell * 4 + static_cast<int>(k.variant));
    h ^= std::hash<int>{}(k.genus) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    for (int c : k.colors) h ^= std::hash<int>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class BlockMemo {
 public:
  bool find(const MemoKey& key, Dim& out) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return false;
    out = it->second;
    return true;
  }

  void insert(MemoKey key, Dim value) {
    std::unique_lock lock(mutex_);
    auto [it, inserted] = table_.emplace(std::move(key), value);
    if (!inserted && it->second != value)
      throw Error("internal", "inconsistent memo fill for a block label");
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<MemoKey, Dim, MemoKeyHash> table_;
};

BlockMemo& memo() {
  static BlockMemo instance;
  return instance;
}

std::vector<int> with_inserted(const std::vector<int>& sorted_colors, std::initializer_list<int> extra) {
  std::vector<int> out = sorted_colors;
  for (int c : extra) out.insert(std::upper_bound(out.begin(), out.end(), c), c);
  return out;
}

// colors must be sorted and validated.
Dim dim_sorted(int genus, const std::vector<int>& colors, const ColorSet& cs) {
  const std::size_t n = colors.size();
  if (genus == 0 && n <= 3) {
    switch (n) {
      case 0: return 1;
      case 1: return colors[0] == 0 ? 1 : 0;
      case 2: return colors[0] == colors[1] ? 1 : 0;
      default: return static_cast<Dim>(fusion_dim(colors[0], colors[1], colors[2], cs));
    }
  }
  MemoKey key{cs.ell(), cs.variant(), genus, colors};
  Dim cached = 0;
  if (memo().find(key, cached)) return cached;

  Dim total = 0;
  if (genus >= 1) {
    for (int mu : cs.colors()) total = checked_add(total, dim_sorted(genus - 1, with_inserted(colors, {mu, mu}), cs));
  } else {
    const int a = colors[0];
    const int b = colors[1];
    const std::vector<int> rest(colors.begin() + 2, colors.end());
    for (int mu : cs.colors()) {
      if (fusion_dim(a, b, mu, cs) == 0) continue;
      total = checked_add(total, dim_sorted(0, with_inserted(rest, {mu}), cs));
    }
  }
  memo().insert(std::move(key), total);
  return total;
}

void validate(const BlockLabel& label, const ColorSet& cs) {
  if (label.genus < 0) throw InvalidLabel("genus must be nonnegative, got " + std::to_string(label.genus));
  for (int c : label.colors) cs.require(c);
}

}  // namespace

Dim dim_block(const BlockLabel& label, const ColorSet& cs) {
  validate(label, cs);
  std::vector<int> colors = label.colors;
  std::sort(colors.begin(), colors.end());
  return dim_sorted(label.genus, colors, cs);
}

Dim dim_disconnected(std::span<const BlockLabel> labels, const ColorSet& cs) {
  Dim product = 1;
  for (const auto& label : labels) product = checked_mul(product, dim_block(label, cs));
  return product;
}

bool block_nonzero(const BlockLabel& label, const ColorSet& cs) {
  validate(label, cs);
  // Support of the tensor product of the boundary colors and g copies of the
  // handle element sum_mu mu (x) mu; the block is nonzero iff 0 is in it.
  const auto& colors = cs.colors();
  auto fuse = [&](const std::vector<int>& support, int c) {
    std::vector<int> out;
    for (int nu : colors)
      for (int s : support)
        if (fusion_dim(s, c, nu, cs) != 0) {
          out.push_back(nu);
          break;
        }
    return out;
  };
  std::vector<int> support{0};
  for (int c : label.colors) support = fuse(support, c);
  for (int g = 0; g < label.genus; ++g) {
    std::vector<int> next;
    for (int mu : colors)
      for (int nu : fuse(fuse(support, mu), mu)) next.push_back(nu);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next == support) break;  // fixed point: more handles change nothing
    support = std::move(next);
  }
  return std::find(support.begin(), support.end(), 0) != support.end();
}

std::size_t block_memo_size() { return memo().size(); }
void clear_block_memo() { memo().clear(); }

namespace {

// Row-major S-matrix over the full SU(2) label range 0..l-2, normalized for the variant.
const std::vector<long double>& s_matrix(const ColorSet& cs) {
  static std::mutex mutex;
  static std::map<std::pair<int, Variant>, std::vector<long double>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(cs.ell(), cs.variant());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const int ell = cs.ell();
  const long double norm =
      std::sqrt(2.0L / ell) * (cs.variant() == Variant::SO3 ? std::sqrt(2.0L) : 1.0L);
  const int size = ell - 1;
  std::vector<long double> s(static_cast<std::size_t>(size * size));
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      // sin(pi m / l) is the imaginary part of the image of zeta_{2l}^m.
      const long m = static_cast<long>(a + 1) * (b + 1);
      s[static_cast<std::size_t>(a * size + b)] =
          norm * static_cast<long double>(CycloScalar::root_of_unity(m, 2L * ell).to_complex(1).imag());
    }
  }
  return cache.emplace(key, std::move(s)).first->second;
}

}  // namespace

Dim verlinde_oracle(const BlockLabel& label, const ColorSet& cs) {
  validate(label, cs);
  const auto& s = s_matrix(cs);
  const int size = cs.ell() - 1;
  auto s_entry = [&](int a, int b) { return s[static_cast<std::size_t>(a * size + b)]; };

  const int euler = 2 - 2 * label.genus - static_cast<int>(label.colors.size());
  long double sum = 0;
  for (int j : cs.colors()) {
    long double term = std::pow(s_entry(0, j), static_cast<long double>(euler));
    for (int c : label.colors) term *= s_entry(c, j);
    sum += term;
  }
  const long double rounded = std::round(sum);
  const long double residue = std::fabs(sum - rounded);
  if (residue >= 1e-6L || rounded < -0.5L) {
    std::ostringstream msg;
    msg << "oracle unstable for " << to_string(label) << ": value " << static_cast<double>(sum)
        << ", residue " << static_cast<double>(residue);
    throw Error("oracle_unstable", msg.str());
  }
  return static_cast<Dim>(rounded);
}

std::string to_string(const Cut& cut) {
  if (cut.kind == Cut::Kind::Nonseparating) return "nonseparating";
  std::ostringstream out;
  out << "separating(" << cut.first_genus << ";{";
  for (std::size_t i = 0; i < cut.first_boundary.size(); ++i) out << (i ? "," : "") << cut.first_boundary[i];
  out << "})";
  return out.str();
}

std::vector<GluingSummand> gluing_decomposition(const BlockLabel& label, const Cut& cut,
                                                const ColorSet& cs) {
  validate(label, cs);
  std::vector<GluingSummand> out;
  if (cut.kind == Cut::Kind::Nonseparating) {
    if (label.genus < 1) throw Error("invalid_cut", "nonseparating cut needs genus >= 1");
    for (int mu : cs.colors()) {
      BlockLabel part{label.genus - 1, label.colors};
      part.colors.push_back(mu);
      part.colors.push_back(mu);
      const Dim d = dim_block(part, cs);
      if (d > 0) out.push_back({mu, {std::move(part)}, d});
    }
    return out;
  }

  if (cut.first_genus < 0 || cut.first_genus > label.genus)
    throw Error("invalid_cut", "separating cut genus " + std::to_string(cut.first_genus) +
                                   " outside [0, " + std::to_string(label.genus) + "]");
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
    const Dim d = checked_mul(dim_block(a, cs), dim_block(b, cs));
    if (d > 0) out.push_back({mu, {std::move(a), std::move(b)}, d});
  }
  return out;
}

std::vector<Cut> all_cuts(const BlockLabel& label) {
  std::vector<Cut> cuts;
  if (label.genus >= 1) cuts.push_back(Cut::nonseparating());
  const std::size_t n = label.colors.size();
  for (int g1 = 0; g1 <= label.genus; ++g1) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<int> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) subset.push_back(static_cast<int>(i));
      cuts.push_back(Cut::separating(g1, std::move(subset)));
    }
  }
  return cuts;
}

BlockLabel vacuum_reduce(const BlockLabel& label, const ColorSet& cs) {
  validate(label, cs);
  BlockLabel out = label;
  while (!out.colors.empty() && out.colors.back() == 0) out.colors.pop_back();
  return out;
}

}  // namespace mfkit
