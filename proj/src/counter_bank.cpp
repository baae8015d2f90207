#include "fibconst/counter_bank.hpp"

#include <cstdio>

#include "fibconst/digits.hpp"

namespace fibconst {

const char* category_name(BlockCategory c) {
  switch (c) {
    case BlockCategory::leading: return "leading";
    case BlockCategory::trailing: return "trailing";
    case BlockCategory::middle: return "middle";
    case BlockCategory::boundary: return "boundary";
  }
  return "?";
}

BlockCategory classify_block(const BlockPosition& p, int k) {
  if (k < 1) throw UsageError("block length k must be >= 1");
  if (p.straddle) return BlockCategory::boundary;
  if (p.start_offset + k > p.term_length)
    throw UsageError("non-straddling block exceeds its term");
  if (p.start_offset == 0) return BlockCategory::leading;
  if (p.start_offset == p.term_length - k) return BlockCategory::trailing;
  return BlockCategory::middle;
}

std::uint64_t CounterBank::category_total(int k, BlockCategory c) const {
  const auto& v = positional_counts.at(k - 1)[static_cast<int>(c)];
  std::uint64_t s = 0;
  for (std::uint64_t x : v) s += x;
  return s;
}

CounterBank make_bank(int base, int k_max, bool positional) {
  check_base(base);
  if (k_max < 1 || k_max > kMaxBlockLength)
    throw UsageError("k_max must be in [1, 8]");
  std::uint64_t cells = 1;
  for (int k = 0; k < k_max; ++k) {
    cells *= static_cast<std::uint64_t>(base);
    if (cells > kMaxCells)
      throw CapacityError("base^k_max exceeds the 10^8 counter-cell capacity");
  }
  CounterBank bank;
  bank.base = base;
  bank.k_max = k_max;
  bank.positional = positional;
  bank.blocks.resize(k_max);
  if (positional) bank.positional_counts.resize(k_max);
  std::uint64_t size = 1;
  for (int k = 1; k <= k_max; ++k) {
    size *= static_cast<std::uint64_t>(base);
    bank.blocks[k - 1].assign(size, 0);
    if (positional)
      for (auto& cat : bank.positional_counts[k - 1]) cat.assign(size, 0);
  }
  return bank;
}

CounterBank merge(const CounterBank& a, const CounterBank& b, const StitchDigits& stitch) {
  if (a.base != b.base || a.k_max != b.k_max || a.positional != b.positional)
    throw UsageError("incompatible banks: base/k_max/positional must match");
  const int K = a.k_max;
  const auto want = [&](std::uint64_t D) {
    return std::min<std::uint64_t>(K - 1, D);
  };
  if (stitch.suffix.size() != want(a.D) || stitch.prefix.size() != want(b.D))
    throw UsageError("stitch digit counts do not match bank contents");
  if (b.D == 0) return a;  // empty right partition: merge is the identity
  if (a.D == 0) return b;

  CounterBank out = a;
  out.D += b.D;
  out.terms_consumed += b.terms_consumed;
  for (int k = 1; k <= K; ++k) {
    auto& dst = out.blocks[k - 1];
    const auto& src = b.blocks[k - 1];
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    if (a.positional)
      for (int c = 0; c < kNumCategories; ++c) {
        auto& dc = out.positional_counts[k - 1][c];
        const auto& sc = b.positional_counts[k - 1][c];
        for (std::size_t i = 0; i < dc.size(); ++i) dc[i] += sc[i];
      }
  }

  // Seam: windows that straddle the cut. Working over the stitched string
  // S = suffix + prefix, a k-window starting at index i crosses the cut iff
  // i < |suffix| and i + k > |suffix|; it exists iff i + k <= |S|. The cut
  // is a term junction, so every such window is boundary by definition.
  const std::size_t ls = stitch.suffix.size();
  std::vector<std::uint8_t> seam(stitch.suffix);
  seam.insert(seam.end(), stitch.prefix.begin(), stitch.prefix.end());
  for (int k = 2; k <= K; ++k) {
    const std::size_t lo = ls >= static_cast<std::size_t>(k) ? ls - k + 1 : 0;
    for (std::size_t i = lo; i < ls; ++i) {
      if (i + k > seam.size()) break;
      std::uint64_t v = 0;
      for (int j = 0; j < k; ++j) v = v * a.base + seam[i + j];
      out.blocks[k - 1][v]++;
      if (a.positional)
        out.positional_counts[k - 1][static_cast<int>(BlockCategory::boundary)][v]++;
    }
  }
  return out;
}

std::string block_label(std::uint64_t value, int base, int k) {
  check_base(base);
  if (base <= 36) {
    static const char* alphabet = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string s(k, '0');
    for (int i = k - 1; i >= 0; --i) {
      s[i] = alphabet[value % base];
      value /= base;
    }
    return s;
  }
  std::string s;
  std::vector<int> digits(k);
  for (int i = k - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(value % base);
    value /= base;
  }
  char buf[8];
  for (int i = 0; i < k; ++i) {
    std::snprintf(buf, sizeof buf, "%03d", digits[i]);
    if (i) s += '.';
    s += buf;
  }
  return s;
}

namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<std::uint8_t> serialize(const CounterBank& bank) {
  std::vector<std::uint8_t> out;
  put_u64(out, static_cast<std::uint64_t>(bank.base));
  put_u64(out, static_cast<std::uint64_t>(bank.k_max));
  put_u64(out, bank.positional ? 1 : 0);
  put_u64(out, bank.D);
  put_u64(out, bank.terms_consumed);
  for (const auto& arr : bank.blocks)
    for (std::uint64_t v : arr) put_u64(out, v);
  for (const auto& cats : bank.positional_counts)
    for (const auto& arr : cats)
      for (std::uint64_t v : arr) put_u64(out, v);
  return out;
}

CounterBank deserialize_bank(const std::uint8_t* data, std::size_t size) {
  if (size < 40) throw IntegrityError("counter bank image truncated", size);
  std::size_t off = 0;
  auto next = [&]() {
    if (off + 8 > size)
      throw IntegrityError("counter bank image truncated", off);
    std::uint64_t v = get_u64(data + off);
    off += 8;
    return v;
  };
  const int base = static_cast<int>(next());
  const int k_max = static_cast<int>(next());
  const bool positional = next() != 0;
  CounterBank bank = make_bank(base, k_max, positional);
  bank.D = next();
  bank.terms_consumed = next();
  for (auto& arr : bank.blocks)
    for (auto& v : arr) v = next();
  for (auto& cats : bank.positional_counts)
    for (auto& arr : cats)
      for (auto& v : arr) v = next();
  if (off != size)
    throw IntegrityError("counter bank image has trailing bytes", off);
  return bank;
}

}  // namespace fibconst
