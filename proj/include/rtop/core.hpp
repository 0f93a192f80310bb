#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtop {

/// Input that violates a documented precondition (malformed file, arity
/// mismatch, tuple entry not a declared vertex, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured enumeration cap was exceeded. This signals an instance too
/// large for exhaustive methods, not a bug; callers may catch it and skip.
class GuardError : public std::runtime_error {
 public:
  GuardError(const std::string& guard, std::size_t cap)
      : std::runtime_error("guard exceeded: " + guard + " (cap " +
                           std::to_string(cap) + ")"),
        guard_name(guard),
        limit(cap) {}

  std::string guard_name;
  std::size_t limit;
};

/// Enumeration caps. All enumeration here is worst-case exponential; these
/// make the failure loud and recoverable instead of silent or unbounded.
struct Limits {
  std::size_t max_exponential_vertices = 1'000'000;
  std::size_t max_enumeration_visits = 10'000'000;
  // Total basis elements of a chain complex handed to homology.
  std::size_t max_chain_cells = 250'000;
  // Posets materialized with an explicit leq matrix.
  std::size_t max_poset_elements = 20'000;
};

/// Shared visit budget for one logical operation. tick() is called once per
/// explored node/candidate and throws once the budget is spent.
class VisitCounter {
 public:
  VisitCounter(const char* guard, std::size_t cap) : guard_(guard), cap_(cap) {}

  void tick(std::size_t n = 1) {
    visits_ += n;
    if (visits_ > cap_) throw GuardError(guard_, cap_);
  }

  std::size_t visits() const { return visits_; }

 private:
  const char* guard_;
  std::size_t cap_;
  std::size_t visits_ = 0;
};

inline std::uint64_t hash_mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  return hash_mix(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

inline std::uint64_t hash_span(const std::uint32_t* p, std::size_t n) {
  std::uint64_t h = 0x2545f4914f6cdd1dULL ^ n;
  for (std::size_t i = 0; i < n; ++i) h = hash_combine(h, p[i]);
  return h;
}

/// Dynamic bitset sized at construction. Used for multi-map values (masks
/// over the codomain vertex order) and packed poset rows.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : size_(n), blocks_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  void set(std::size_t i) { blocks_[i >> 6] |= (1ULL << (i & 63)); }
  void reset(std::size_t i) { blocks_[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(std::size_t i) const {
    return (blocks_[i >> 6] >> (i & 63)) & 1ULL;
  }

  bool any() const {
    for (auto b : blocks_)
      if (b) return true;
    return false;
  }
  bool none() const { return !any(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(__builtin_popcountll(b));
    return c;
  }

  bool subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & ~o.blocks_[i]) return false;
    return true;
  }

  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & o.blocks_[i]) return true;
    return false;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }

  friend bool operator==(const Bitset& a, const Bitset& b) {
    return a.size_ == b.size_ && a.blocks_ == b.blocks_;
  }
  friend bool operator!=(const Bitset& a, const Bitset& b) { return !(a == b); }

  // Lexicographic by numeric block value, lowest bits first; gives the same
  // order as comparing mask integers when size <= 64.
  friend bool operator<(const Bitset& a, const Bitset& b) {
    for (std::size_t i = a.blocks_.size(); i-- > 0;) {
      if (a.blocks_[i] != b.blocks_[i]) return a.blocks_[i] < b.blocks_[i];
    }
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < blocks_.size(); ++w) {
      std::uint64_t b = blocks_[w];
      while (b) {
        unsigned bit = static_cast<unsigned>(__builtin_ctzll(b));
        f(static_cast<std::uint32_t>(w * 64 + bit));
        b &= b - 1;
      }
    }
  }

  std::vector<std::uint32_t> bits() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::uint32_t i) { out.push_back(i); });
    return out;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
    for (auto b : blocks_) h = hash_combine(h, b);
    return h;
  }

  static Bitset singleton(std::size_t n, std::size_t i) {
    Bitset s(n);
    s.set(i);
    return s;
  }

  static Bitset full(std::size_t n) {
    Bitset s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i);
    return s;
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  /// Component ids numbered 0.. in order of first appearance.
  std::vector<int> labels() {
    std::vector<int> out(parent_.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      std::size_t r = find(i);
      if (out[r] < 0) out[r] = next++;
      out[i] = out[r];
    }
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace rtop
