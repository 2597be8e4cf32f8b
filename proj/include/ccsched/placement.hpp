#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccsched/errors.hpp"

namespace ccsched {

// Map x into [1, P] cyclically (1-based throughout; 0 wraps to P).
inline int wrap_index(int x, int p) {
  int m = (x - 1) % p;
  if (m < 0) m += p;
  return m + 1;
}

// P x P binary grid; row p has ones in the cyclic column window [p, p+window-1].
// Column c therefore has ones in rows [c-window+1, c]: the packets profile c caches.
struct PlacementMatrix {
  int dimension = 0;  // P
  int window = 0;     // tbar, row and column weight
  std::vector<std::uint8_t> bits;

  bool at(int packet, int profile) const {
    return bits[static_cast<std::size_t>(packet - 1) * dimension + (profile - 1)] != 0;
  }

  std::string to_text() const {
    std::string out;
    out.reserve(static_cast<std::size_t>(dimension) * (dimension + 1));
    for (int r = 0; r < dimension; ++r) {
      for (int c = 0; c < dimension; ++c)
        out.push_back(bits[static_cast<std::size_t>(r) * dimension + c] ? '1' : '0');
      out.push_back('\n');
    }
    return out;
  }
};

inline PlacementMatrix build_placement_matrix(int p, int tbar) {
  if (tbar < 1 || tbar >= p) throw ConfigError("caching gain must satisfy 1 <= tbar < P");
  PlacementMatrix m;
  m.dimension = p;
  m.window = tbar;
  m.bits.assign(static_cast<std::size_t>(p) * p, 0);
  for (int row = 1; row <= p; ++row)
    for (int k = 0; k < tbar; ++k) {
      const int col = wrap_index(row + k, p);
      m.bits[static_cast<std::size_t>(row - 1) * p + (col - 1)] = 1;
    }
  return m;
}

// O(1) column-window test: profile c caches packet iff packet is in [c-tbar+1, c].
inline bool profile_caches(int profile, int packet, int p, int tbar) {
  const int delta = (profile - packet) % p >= 0 ? (profile - packet) % p
                                                : (profile - packet) % p + p;
  return delta < tbar;
}

// Packets cached by profile c, in cyclic order ending at c.
inline std::vector<int> cached_packets(int profile, int p, int tbar) {
  if (profile < 1 || profile > p) throw ArgumentError("profile index out of range");
  std::vector<int> out;
  out.reserve(tbar);
  for (int k = tbar - 1; k >= 0; --k) out.push_back(wrap_index(profile - k, p));
  return out;
}

}  // namespace ccsched
