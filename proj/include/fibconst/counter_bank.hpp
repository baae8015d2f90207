#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fibconst/errors.hpp"

namespace fibconst {

inline constexpr int kMaxBlockLength = 8;
// Counter-array capacity: base^k_max may not exceed this.
inline constexpr std::uint64_t kMaxCells = 100'000'000;

// Position of a k-block relative to the term that contains it. Exactly one
// category applies to every sliding window:
//   leading  — the first k-block of a term (wins over trailing when L = k),
//   trailing — the last k-block of a term of length L >= k+1,
//   middle   — strictly interior,
//   boundary — the block straddles a junction between terms (>= 2 terms).
enum class BlockCategory : std::uint8_t {
  leading = 0,
  trailing = 1,
  middle = 2,
  boundary = 3,
};
inline constexpr int kNumCategories = 4;
const char* category_name(BlockCategory c);

// Where a block sits inside the concatenation, in term-local coordinates.
struct BlockPosition {
  std::uint64_t n = 0;            // index of the term the block starts in
  std::uint64_t start_offset = 0; // offset of the block within that term
  bool straddle = false;          // true when the block spans >= 2 terms
  std::uint64_t term_length = 0;  // digit count L_n of that term
};

BlockCategory classify_block(const BlockPosition& p, int k);

// All counters for one analyzed digit stream: sliding k-window counts for
// every k <= k_max (blocks[0] doubles as the single-digit histogram), plus,
// when enabled, the same counts split by the four positional categories.
// Everything is a plain 64-bit counter: two banks over the same stream are
// equal iff their serialized bytes are equal, and banks over adjacent
// streams merge by addition plus a stitched seam (see merge()).
struct CounterBank {
  int base = 10;
  int k_max = 1;
  bool positional = false;
  std::uint64_t D = 0;               // digits consumed
  std::uint64_t terms_consumed = 0;  // fully consumed terms

  // blocks[k-1][v] = occurrences of the k-digit window with value v
  // (most-significant-digit-first interpretation), over all D-k+1 windows.
  std::vector<std::vector<std::uint64_t>> blocks;
  // positional_counts[k-1][category][v]; empty unless `positional`.
  std::vector<std::array<std::vector<std::uint64_t>, kNumCategories>> positional_counts;

  const std::vector<std::uint64_t>& single() const { return blocks[0]; }
  std::uint64_t windows(int k) const { return D >= static_cast<std::uint64_t>(k) ? D - k + 1 : 0; }
  std::uint64_t category_total(int k, BlockCategory c) const;
};

// Validates capacity bounds (k_max <= 8, base^k_max <= 10^8) and allocates
// zeroed counters.
CounterBank make_bank(int base, int k_max, bool positional);

// The digits adjacent to a partition cut: the last digits of the left
// stream and the first digits of the right stream, min(k_max-1, D) each.
struct StitchDigits {
  std::vector<std::uint8_t> suffix;  // tail of the left stream, stream order
  std::vector<std::uint8_t> prefix;  // head of the right stream, stream order
};

// Counter-wise sum of two banks over adjacent streams plus the cross-cut
// windows reconstructed from the stitch. Partitions split at term
// boundaries, so every reconstructed window straddles a junction and is
// classified boundary. The result is bit-identical to a sequential run over
// the concatenated stream.
CounterBank merge(const CounterBank& a, const CounterBank& b, const StitchDigits& stitch);

// Canonical display label for a window value: fixed-width 0-9a-z digits for
// bases <= 36, dot-separated zero-padded decimal per digit above. Both forms
// sort lexicographically in numeric order.
std::string block_label(std::uint64_t value, int base, int k);

// Deterministic binary image (little-endian, fixed layout). Two banks with
// equal contents produce identical bytes; used by the checkpoint format and
// by the merge/determinism tests.
std::vector<std::uint8_t> serialize(const CounterBank& bank);
CounterBank deserialize_bank(const std::uint8_t* data, std::size_t size);

}  // namespace fibconst
