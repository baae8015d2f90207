#pragma once

#include <functional>
#include <string>

#include "fibconst/counter_bank.hpp"
#include "fibconst/fib.hpp"

namespace fibconst {

// Resumable position in the concatenated digit stream. Checkpoints are taken
// at term boundaries, so pos_in_term is 0 in every persisted cursor; the
// field exists so a cursor always describes a definite stream position.
struct FibCursor {
  int base = 10;
  int k_max = 1;
  std::uint64_t n = 1;              // index of the next term to emit
  FibPair pair;                     // (F_n, F_{n+1})
  std::uint64_t pos_in_term = 0;
  std::vector<std::uint8_t> suffix_carry;  // last min(k_max-1, D) digits emitted
};

// Invoked from the analysis loop every few hundred terms (and once at the
// end); digits_done is cumulative. Must be cheap and callable concurrently
// when partitions run in parallel.
using ProgressFn = std::function<void(std::uint64_t terms_done,
                                      std::uint64_t terms_target,
                                      std::uint64_t digits_done)>;

// Non-empty path: a checkpoint is written at the end of the run; with
// every_terms > 0, also at every term index divisible by it.
struct CheckpointPolicy {
  std::string path;
  std::uint64_t every_terms = 0;
};

// Analyzes the first N terms of the concatenation in the given base:
// converts each F_n once, scans its digits, and never materializes the
// concatenation. Returns the filled CounterBank; `cursor_out`, when given,
// receives the end-of-run cursor (useful for checkpoint round-trips).
CounterBank stream_analyze(int base, std::uint64_t N, int k_max, bool positional,
                           const CheckpointPolicy* checkpoint = nullptr,
                           const ProgressFn& progress = {},
                           FibCursor* cursor_out = nullptr);

// Continues a (cursor, bank) pair — typically loaded from a checkpoint —
// until bank.terms_consumed reaches target_terms. The pair is advanced in
// place and stays consistent throughout.
void stream_analyze_resume(FibCursor& cursor, CounterBank& bank,
                           std::uint64_t target_terms,
                           const CheckpointPolicy* checkpoint = nullptr,
                           const ProgressFn& progress = {});

// One contiguous slice of the term range, self-sufficient for merging:
// the bank plus the stream edges the seam reconstruction needs.
struct PartitionPiece {
  CounterBank bank;
  std::uint64_t first_term = 1;
  std::uint64_t last_term = 0;  // inclusive
  std::vector<std::uint8_t> prefix;  // first min(k_max-1, D) digits
  std::vector<std::uint8_t> suffix;  // last  min(k_max-1, D) digits
};

// Analyzes terms [first_term, first_term + term_count - 1]. The starting
// pair comes from fast doubling, so any slice starts in O(log n) big-integer
// multiplications.
PartitionPiece analyze_terms(int base, std::uint64_t first_term,
                             std::uint64_t term_count, int k_max, bool positional,
                             const ProgressFn& progress = {});

// Merges two adjacent pieces (b must start at a.last_term + 1). Associative:
// any combine order over a contiguous partition yields the sequential bank.
PartitionPiece combine(const PartitionPiece& a, const PartitionPiece& b);

// Runs `partitions` slices concurrently (balanced by digit mass, split at
// term boundaries) and folds them with combine(). Bit-identical to the
// sequential stream_analyze result.
CounterBank partitioned_analyze(int base, std::uint64_t N, int k_max,
                                bool positional, int partitions,
                                const ProgressFn& progress = {});

}  // namespace fibconst
