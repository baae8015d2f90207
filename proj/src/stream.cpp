#include "fibconst/stream.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "fibconst/checkpoint.hpp"
#include "fibconst/digits.hpp"

namespace fibconst {

namespace {

// 64-bit digit counters hold any desk-scale run with orders of magnitude to
// spare; this bound keeps D(N) far below overflow in every supported base.
constexpr std::uint64_t kMaxTerms = 2'000'000'000;

void check_run_config(int base, std::uint64_t N, int k_max) {
  check_base(base);
  if (N < 1) throw UsageError("term count N must be >= 1");
  if (N > kMaxTerms)
    throw CapacityError("term counts beyond 2e9 risk 64-bit counter overflow");
  if (k_max < 1 || k_max > kMaxBlockLength)
    throw UsageError("k_max must be in [1, 8]");
}

// Applies one term's digits to a CounterBank: sliding k-windows for every
// k <= k_max via rolling prefix values, positional classification from
// term-local coordinates. Positions are stream-local; partitions simply
// start their stream at zero and let merge() stitch the seams.
class Feeder {
public:
  Feeder(CounterBank bank, const std::vector<std::uint8_t>& carry, bool track_prefix)
      : bank_(std::move(bank)), track_prefix_(track_prefix) {
    const int B = bank_.base;
    powk_[1] = 1;
    for (int k = 2; k <= bank_.k_max; ++k)
      powk_[k] = powk_[k - 1] * static_cast<std::uint64_t>(B);
    // Rebuild the rolling state from the carried suffix (empty for a fresh
    // stream): ring holds the last digits by absolute position, h_[k] the
    // value of the last k-1 digits (or of all digits while D < k-1).
    const std::uint64_t D = bank_.D;
    const std::size_t len = carry.size();
    for (std::size_t j = 0; j < len; ++j)
      ring_[(D - len + j) & 7] = carry[j];
    for (int k = 2; k <= bank_.k_max; ++k) {
      const std::size_t take = std::min<std::size_t>(len, k - 1);
      std::uint64_t h = 0;
      for (std::size_t j = len - take; j < len; ++j)
        h = h * static_cast<std::uint64_t>(B) + carry[j];
      h_[k] = h;
    }
    if (track_prefix_) prefix_.reserve(bank_.k_max - 1);
  }

  void feed_term(const std::uint8_t* dig, std::uint64_t L) {
    const std::uint64_t B = static_cast<std::uint64_t>(bank_.base);
    const int K = bank_.k_max;
    const std::uint64_t term_start = bank_.D;
    auto& b1 = bank_.blocks[0];

    if (K == 1 && !bank_.positional) {
      // Histogram fast path: this is the configuration the throughput floor
      // is measured on, so it stays free of window bookkeeping.
      for (std::uint64_t i = 0; i < L; ++i) b1[dig[i]]++;
    } else {
      constexpr int kLead = static_cast<int>(BlockCategory::leading);
      constexpr int kTrail = static_cast<int>(BlockCategory::trailing);
      constexpr int kMid = static_cast<int>(BlockCategory::middle);
      constexpr int kBound = static_cast<int>(BlockCategory::boundary);
      for (std::uint64_t i = 0; i < L; ++i) {
        const std::uint64_t d = dig[i];
        const std::uint64_t pos = term_start + i;
        b1[d]++;
        if (bank_.positional) {
          const int cat = i == 0 ? kLead : (i == L - 1 ? kTrail : kMid);
          bank_.positional_counts[0][cat][d]++;
        }
        for (int k = 2; k <= K; ++k) {
          if (pos + 1 >= static_cast<std::uint64_t>(k)) {
            const std::uint64_t v = h_[k] * B + d;
            bank_.blocks[k - 1][v]++;
            if (bank_.positional) {
              const std::uint64_t s = pos - k + 1;  // window start
              int cat;
              if (s >= term_start)
                cat = s == term_start ? kLead : (i == L - 1 ? kTrail : kMid);
              else
                cat = kBound;
              bank_.positional_counts[k - 1][cat][v]++;
            }
            h_[k] = v - ring_[(pos - (k - 1)) & 7] * powk_[k];
          } else {
            h_[k] = h_[k] * B + d;
          }
        }
        ring_[pos & 7] = d;
        if (track_prefix_ && prefix_.size() < static_cast<std::size_t>(K - 1))
          prefix_.push_back(static_cast<std::uint8_t>(d));
      }
    }
    bank_.D += L;
    bank_.terms_consumed++;
  }

  std::vector<std::uint8_t> suffix() const {
    const std::size_t len =
        std::min<std::uint64_t>(bank_.k_max - 1, bank_.D);
    std::vector<std::uint8_t> s(len);
    for (std::size_t j = 0; j < len; ++j)
      s[j] = ring_[(bank_.D - len + j) & 7];
    return s;
  }

  const std::vector<std::uint8_t>& prefix() const { return prefix_; }
  const CounterBank& bank() const { return bank_; }
  CounterBank take_bank() { return std::move(bank_); }

private:
  CounterBank bank_;
  std::array<std::uint8_t, 8> ring_{};
  std::array<std::uint64_t, kMaxBlockLength + 1> h_{};
  std::array<std::uint64_t, kMaxBlockLength + 1> powk_{};
  std::vector<std::uint8_t> prefix_;
  bool track_prefix_;
};

constexpr std::uint64_t kProgressChunk = 512;  // terms between progress calls

// Drives a Feeder from `stream` until the bank holds target_terms terms.
// Returns the final stream so callers can form an end-of-run cursor.
FibStream run_stream(Feeder& feeder, FibStream stream, std::uint64_t target_terms,
                     const CheckpointPolicy* checkpoint, const ProgressFn& progress) {
  std::vector<std::uint8_t> digits;
  const bool periodic =
      checkpoint && !checkpoint->path.empty() && checkpoint->every_terms > 0;
  while (feeder.bank().terms_consumed < target_terms) {
    digit_string_into(stream.current(), feeder.bank().base, digits);
    feeder.feed_term(digits.data(), digits.size());
    stream.advance();
    const std::uint64_t done = feeder.bank().terms_consumed;
    if (periodic && done % checkpoint->every_terms == 0 && done < target_terms) {
      FibCursor cur{feeder.bank().base, feeder.bank().k_max, stream.index(),
                    stream.pair(), 0, feeder.suffix()};
      checkpoint_save(cur, feeder.bank(), checkpoint->path);
    }
    if (progress && (done % kProgressChunk == 0 || done == target_terms))
      progress(done, target_terms, feeder.bank().D);
  }
  return stream;
}

}  // namespace

CounterBank stream_analyze(int base, std::uint64_t N, int k_max, bool positional,
                           const CheckpointPolicy* checkpoint,
                           const ProgressFn& progress, FibCursor* cursor_out) {
  check_run_config(base, N, k_max);
  Feeder feeder(make_bank(base, k_max, positional), {}, false);
  FibStream end = run_stream(feeder, FibStream(FibPair{}), N, checkpoint, progress);
  FibCursor cursor{base, k_max, end.index(), end.pair(), 0, feeder.suffix()};
  if (checkpoint && !checkpoint->path.empty())
    checkpoint_save(cursor, feeder.bank(), checkpoint->path);
  if (cursor_out) *cursor_out = cursor;
  return feeder.take_bank();
}

void stream_analyze_resume(FibCursor& cursor, CounterBank& bank,
                           std::uint64_t target_terms,
                           const CheckpointPolicy* checkpoint,
                           const ProgressFn& progress) {
  if (cursor.base != bank.base || cursor.k_max != bank.k_max)
    throw UsageError("cursor and bank disagree on base/k_max");
  if (cursor.pos_in_term != 0)
    throw UsageError("resume requires a term-boundary cursor");
  if (target_terms < bank.terms_consumed)
    throw UsageError("target term count precedes the resumed position");
  check_run_config(bank.base, target_terms, bank.k_max);
  Feeder feeder(std::move(bank), cursor.suffix_carry, false);
  FibStream end = run_stream(feeder, FibStream(cursor.pair), target_terms,
                             checkpoint, progress);
  cursor.n = end.index();
  cursor.pair = end.pair();
  cursor.suffix_carry = feeder.suffix();
  bank = feeder.take_bank();
  if (checkpoint && !checkpoint->path.empty())
    checkpoint_save(cursor, bank, checkpoint->path);
}

PartitionPiece analyze_terms(int base, std::uint64_t first_term,
                             std::uint64_t term_count, int k_max, bool positional,
                             const ProgressFn& progress) {
  check_run_config(base, term_count, k_max);
  if (first_term < 1) throw UsageError("first_term must be >= 1");
  Feeder feeder(make_bank(base, k_max, positional), {}, true);
  run_stream(feeder, FibStream(fib_pair(first_term)), term_count, nullptr, progress);
  PartitionPiece piece;
  piece.first_term = first_term;
  piece.last_term = first_term + term_count - 1;
  piece.prefix = feeder.prefix();
  piece.suffix = feeder.suffix();
  piece.bank = feeder.take_bank();
  return piece;
}

PartitionPiece combine(const PartitionPiece& a, const PartitionPiece& b) {
  if (b.first_term != a.last_term + 1)
    throw UsageError("combine requires adjacent pieces");
  PartitionPiece out;
  out.bank = merge(a.bank, b.bank, StitchDigits{a.suffix, b.prefix});
  out.first_term = a.first_term;
  out.last_term = b.last_term;
  const std::size_t edge =
      std::min<std::uint64_t>(out.bank.k_max - 1, out.bank.D);
  // Edges of the combined stream: pad from the neighbour only when one side
  // is shorter than k_max-1 digits (possible among the first tiny terms).
  out.prefix = a.prefix;
  for (std::size_t i = 0; out.prefix.size() < edge && i < b.prefix.size(); ++i)
    out.prefix.push_back(b.prefix[i]);
  out.suffix = b.suffix;
  std::size_t need = edge - std::min(edge, out.suffix.size());
  out.suffix.insert(out.suffix.begin(), a.suffix.end() - need, a.suffix.end());
  return out;
}

CounterBank partitioned_analyze(int base, std::uint64_t N, int k_max,
                                bool positional, int partitions,
                                const ProgressFn& progress) {
  check_run_config(base, N, k_max);
  if (partitions < 1) throw UsageError("partition count must be >= 1");
  const std::uint64_t P =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(partitions), N);
  if (P == 1) return stream_analyze(base, N, k_max, positional, nullptr, progress);

  // Digit mass up to term n grows ~ n^2/2, so sqrt-spaced boundaries give
  // each slice a near-equal share of the digits.
  std::vector<std::uint64_t> bounds(P + 1, 0);  // slice i = (bounds[i], bounds[i+1]]
  for (std::uint64_t i = 1; i < P; ++i) {
    std::uint64_t b = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(N) *
                     std::sqrt(static_cast<double>(i) / static_cast<double>(P))));
    bounds[i] = std::max(b, bounds[i - 1] + 1);
  }
  bounds[P] = N;
  for (std::uint64_t i = P; i-- > 1;)  // keep slices non-empty near the tail
    if (bounds[i] >= bounds[i + 1]) bounds[i] = bounds[i + 1] - 1;

  std::vector<PartitionPiece> pieces(P);
  std::atomic<std::uint64_t> terms_done{0}, digits_done{0};
  std::vector<std::thread> workers;
  workers.reserve(P);
  for (std::uint64_t i = 0; i < P; ++i) {
    workers.emplace_back([&, i] {
      std::uint64_t last_t = 0, last_d = 0;
      ProgressFn tick;
      if (progress)
        tick = [&](std::uint64_t t, std::uint64_t, std::uint64_t d) {
          terms_done += t - last_t;
          digits_done += d - last_d;
          last_t = t;
          last_d = d;
        };
      pieces[i] = analyze_terms(base, bounds[i] + 1, bounds[i + 1] - bounds[i],
                                k_max, positional, tick);
    });
  }
  if (progress) {
    // Aggregate reporting from the orchestrating thread only, so output
    // never interleaves.
    std::uint64_t reported = 0;
    while (reported < N) {
      std::this_thread::sleep_for(std::chrono::milliseconds(200));
      reported = terms_done.load();
      progress(reported, N, digits_done.load());
    }
  }
  for (auto& w : workers) w.join();
  PartitionPiece acc = std::move(pieces[0]);
  for (std::uint64_t i = 1; i < P; ++i) acc = combine(acc, pieces[i]);
  return acc.bank;
}

}  // namespace fibconst
