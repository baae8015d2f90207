#include <doctest.h>

#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fibconst/checkpoint.hpp"
#include "fibconst/counter_bank.hpp"
#include "fibconst/errors.hpp"
#include "fibconst/stream.hpp"
#include "oracles.hpp"

using namespace fibconst;

namespace {

std::filesystem::path temp_file(const char* stem) {
  static int seq = 0;
  return std::filesystem::temp_directory_path() /
         (std::string("fibconst-test-") + stem + "-" +
          std::to_string(::getpid()) + "-" + std::to_string(seq++));
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

void spit(const std::filesystem::path& p, const std::vector<std::uint8_t>& b) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  REQUIRE(out);
  out.write(reinterpret_cast<const char*>(b.data()),
            static_cast<std::streamsize>(b.size()));
}

struct Cleanup {
  std::filesystem::path p;
  ~Cleanup() { std::error_code ec; std::filesystem::remove(p, ec); }
};

}  // namespace

TEST_CASE("stream counts match the literal window scan") {
  struct Cfg { int base; std::uint64_t N; int k_max; };
  for (Cfg cfg : {Cfg{10, 200, 4}, Cfg{2, 100, 8}, Cfg{3, 150, 3},
                  Cfg{16, 80, 2}, Cfg{256, 40, 2}}) {
    CAPTURE(cfg.base);
    CAPTURE(cfg.N);
    CounterBank bank = stream_analyze(cfg.base, cfg.N, cfg.k_max, true);
    oracle::BruteStream s = oracle::brute_stream(cfg.base, cfg.N);
    CHECK(bank.D == s.digits.size());
    CHECK(bank.terms_consumed == cfg.N);
    for (int k = 1; k <= cfg.k_max; ++k) {
      CAPTURE(k);
      std::vector<std::vector<std::uint64_t>> cats;
      std::vector<std::uint64_t> want =
          oracle::brute_window_counts(s, cfg.base, k, &cats);
      CHECK(bank.blocks[k - 1] == want);
      for (int c = 0; c < kNumCategories; ++c)
        CHECK(bank.positional_counts[k - 1][c] == cats[c]);
    }
  }
}

TEST_CASE("first ten terms, base 10") {
  CounterBank bank = stream_analyze(10, 10, 2, true);
  CHECK(bank.D == 14);
  std::vector<std::uint64_t> want = {0, 4, 2, 3, 1, 3, 0, 0, 1, 0};
  CHECK(bank.single() == want);
  // Four 2-digit terms contribute one window each, classified leading; the
  // other nine windows straddle junctions.
  CHECK(bank.category_total(2, BlockCategory::leading) == 4);
  CHECK(bank.category_total(2, BlockCategory::trailing) == 0);
  CHECK(bank.category_total(2, BlockCategory::middle) == 0);
  CHECK(bank.category_total(2, BlockCategory::boundary) == 9);
}

TEST_CASE("first ten terms, base 2") {
  CounterBank bank = stream_analyze(2, 10, 1, false);
  CHECK(bank.D == 34);
  CHECK(bank.single()[0] + bank.single()[1] == 34);
}

TEST_CASE("positional categories partition every window set") {
  for (int base : {2, 10}) {
    CounterBank bank = stream_analyze(base, 1000, 4, true);
    for (int k = 1; k <= 4; ++k) {
      CHECK(bank.windows(k) == bank.D - k + 1);
      std::uint64_t sum = 0;
      for (int c = 0; c < kNumCategories; ++c)
        sum += bank.category_total(k, static_cast<BlockCategory>(c));
      CHECK(sum == bank.windows(k));
      for (std::size_t v = 0; v < bank.blocks[k - 1].size(); ++v) {
        std::uint64_t by_cat = 0;
        for (int c = 0; c < kNumCategories; ++c)
          by_cat += bank.positional_counts[k - 1][c][v];
        CHECK(by_cat == bank.blocks[k - 1][v]);
      }
    }
  }
}

TEST_CASE("classify_block") {
  auto cat = [](std::uint64_t off, bool straddle, std::uint64_t len, int k) {
    return classify_block(BlockPosition{5, off, straddle, len}, k);
  };
  CHECK(cat(0, true, 3, 4) == BlockCategory::boundary);
  CHECK(cat(0, false, 3, 3) == BlockCategory::leading);  // whole term: leading
  CHECK(cat(0, false, 8, 3) == BlockCategory::leading);
  CHECK(cat(5, false, 8, 3) == BlockCategory::trailing);
  CHECK(cat(2, false, 8, 3) == BlockCategory::middle);
  CHECK_THROWS_AS(cat(6, false, 8, 3), UsageError);  // runs past the term
}

TEST_CASE("combine is associative and matches sequential runs") {
  auto bytes = [](const CounterBank& b) { return serialize(b); };

  CounterBank seq = stream_analyze(10, 1000, 4, true);
  PartitionPiece a = analyze_terms(10, 1, 400, 4, true);
  PartitionPiece b = analyze_terms(10, 401, 600, 4, true);
  CHECK(bytes(combine(a, b).bank) == bytes(seq));

  PartitionPiece x = analyze_terms(10, 1, 300, 4, true);
  PartitionPiece y = analyze_terms(10, 301, 350, 4, true);
  PartitionPiece z = analyze_terms(10, 651, 350, 4, true);
  CHECK(bytes(combine(combine(x, y), z).bank) == bytes(seq));
  CHECK(bytes(combine(x, combine(y, z)).bank) == bytes(seq));
}

TEST_CASE("combine handles slices thinner than the window overlap") {
  // One-digit terms make pieces whose streams are shorter than k_max - 1.
  CounterBank seq = stream_analyze(10, 3, 4, true);
  PartitionPiece a = analyze_terms(10, 1, 1, 4, true);
  PartitionPiece b = analyze_terms(10, 2, 1, 4, true);
  PartitionPiece c = analyze_terms(10, 3, 1, 4, true);
  CHECK(serialize(combine(combine(a, b), c).bank) == serialize(seq));
  CHECK(serialize(combine(a, combine(b, c)).bank) == serialize(seq));

  CounterBank seq30 = stream_analyze(10, 30, 4, true);
  PartitionPiece p1 = analyze_terms(10, 1, 10, 4, true);
  PartitionPiece p2 = analyze_terms(10, 11, 10, 4, true);
  PartitionPiece p3 = analyze_terms(10, 21, 10, 4, true);
  PartitionPiece q1 = analyze_terms(10, 1, 15, 4, true);
  PartitionPiece q2 = analyze_terms(10, 16, 15, 4, true);
  CHECK(serialize(combine(combine(p1, p2), p3).bank) == serialize(seq30));
  CHECK(serialize(combine(q1, q2).bank) == serialize(seq30));
}

TEST_CASE("combine rejects non-adjacent pieces") {
  PartitionPiece a = analyze_terms(10, 1, 10, 2, false);
  PartitionPiece b = analyze_terms(10, 12, 10, 2, false);
  CHECK_THROWS_AS(combine(a, b), UsageError);
}

TEST_CASE("merging with an empty bank is the identity") {
  PartitionPiece piece = analyze_terms(10, 1, 50, 4, true);
  CounterBank empty = make_bank(10, 4, true);
  StitchDigits stitch;
  stitch.prefix = piece.prefix;  // head of the right stream
  CounterBank merged = merge(empty, piece.bank, stitch);
  CHECK(serialize(merged) == serialize(piece.bank));
}

TEST_CASE("partitioned_analyze equals the sequential stream") {
  CounterBank seq = stream_analyze(10, 100, 4, true);
  for (int parts : {2, 3, 7, 64})
    CHECK(serialize(partitioned_analyze(10, 100, 4, true, parts)) ==
          serialize(seq));
  CounterBank seq2 = stream_analyze(2, 64, 8, true);
  CHECK(serialize(partitioned_analyze(2, 64, 8, true, 4)) == serialize(seq2));
}

TEST_CASE("run configuration validation") {
  CHECK_THROWS_AS(stream_analyze(10, 0, 1, false), UsageError);
  CHECK_THROWS_AS(stream_analyze(10, 10, 0, false), UsageError);
  CHECK_THROWS_AS(stream_analyze(10, 10, 9, false), UsageError);
  CHECK_THROWS_AS(stream_analyze(1, 10, 1, false), UsageError);
  CHECK_THROWS_AS(stream_analyze(257, 10, 1, false), UsageError);
  CHECK_THROWS_AS(stream_analyze(100, 10, 8, false), CapacityError);
  CHECK_THROWS_AS(partitioned_analyze(10, 10, 1, false, 0), UsageError);
}

TEST_CASE("progress callbacks are monotone and end at the target") {
  std::vector<std::uint64_t> terms_seen;
  std::uint64_t final_digits = 0;
  CounterBank bank = stream_analyze(
      10, 1500, 2, false, nullptr,
      [&](std::uint64_t done, std::uint64_t target, std::uint64_t digits) {
        CHECK(target == 1500);
        if (!terms_seen.empty()) CHECK(done >= terms_seen.back());
        terms_seen.push_back(done);
        final_digits = digits;
      });
  REQUIRE(!terms_seen.empty());
  CHECK(terms_seen.back() == 1500);
  CHECK(final_digits == bank.D);
}

TEST_CASE("block labels") {
  CHECK(block_label(7, 10, 2) == "07");
  CHECK(block_label(5, 2, 3) == "101");
  CHECK(block_label(35, 36, 1) == "z");
  CHECK(block_label(101, 100, 2) == "001.001");
  CHECK(block_label(255, 256, 1) == "255");
}

TEST_CASE("serialize round-trips") {
  CounterBank bank = stream_analyze(10, 123, 3, true);
  std::vector<std::uint8_t> img = serialize(bank);
  CounterBank back = deserialize_bank(img.data(), img.size());
  CHECK(serialize(back) == img);
  CHECK(back.D == bank.D);
  CHECK(back.terms_consumed == bank.terms_consumed);
  CHECK(back.blocks == bank.blocks);
}

TEST_CASE("checkpoint round-trip and resume") {
  auto ck = temp_file("ckpt");
  Cleanup cleanup{ck};

  CounterBank direct = stream_analyze(10, 1000, 4, false);

  CheckpointPolicy policy{ck.string(), 0};
  FibCursor cursor_out;
  stream_analyze(10, 500, 4, false, &policy, {}, &cursor_out);

  auto [cursor, bank] = checkpoint_load(ck.string());
  CHECK(cursor.n == cursor_out.n);
  CHECK(cursor.pair.f_n == cursor_out.pair.f_n);
  CHECK(bank.terms_consumed == 500);

  stream_analyze_resume(cursor, bank, 1000);
  CHECK(serialize(bank) == serialize(direct));

  // Resuming to the current position is a no-op.
  auto [cursor2, bank2] = checkpoint_load(ck.string());
  stream_analyze_resume(cursor2, bank2, 500);
  CHECK(bank2.terms_consumed == 500);
  // ...and a target before it is refused.
  auto [cursor3, bank3] = checkpoint_load(ck.string());
  CHECK_THROWS_AS(stream_analyze_resume(cursor3, bank3, 400), UsageError);
}

TEST_CASE("periodic checkpoints leave a loadable file") {
  auto ck = temp_file("periodic");
  Cleanup cleanup{ck};
  CheckpointPolicy policy{ck.string(), 128};
  stream_analyze(2, 700, 3, true, &policy);
  auto [cursor, bank] = checkpoint_load(ck.string());
  CHECK(cursor.n == 701);
  CHECK(bank.terms_consumed == 700);
  CHECK(serialize(bank) == serialize(stream_analyze(2, 700, 3, true)));
}

TEST_CASE("checkpoint corruption is detected") {
  auto ck = temp_file("corrupt");
  Cleanup cleanup{ck};
  CheckpointPolicy policy{ck.string(), 0};
  stream_analyze(10, 64, 3, false, &policy);
  std::vector<std::uint8_t> good = slurp(ck);

  SUBCASE("missing file") {
    CHECK_THROWS_AS(checkpoint_load(ck.string() + ".nope"), IoError);
  }
  SUBCASE("bad magic") {
    auto bad = good;
    bad[0] ^= 0xff;
    spit(ck, bad);
    CHECK_THROWS_AS(checkpoint_load(ck.string()), IntegrityError);
  }
  SUBCASE("foreign version") {
    auto bad = good;
    bad[7] = '9';  // magic is "FCCKPT01"; the trailing two bytes version it
    spit(ck, bad);
    CHECK_THROWS_AS(checkpoint_load(ck.string()), VersionError);
  }
  SUBCASE("flipped payload byte") {
    auto bad = good;
    bad[good.size() / 2] ^= 0x01;
    spit(ck, bad);
    CHECK_THROWS_AS(checkpoint_load(ck.string()), IntegrityError);
  }
  SUBCASE("truncation") {
    for (std::size_t keep : {std::size_t(3), std::size_t(11),
                             good.size() / 2, good.size() - 1}) {
      std::vector<std::uint8_t> bad(good.begin(), good.begin() + keep);
      spit(ck, bad);
      CHECK_THROWS_AS(checkpoint_load(ck.string()), IntegrityError);
    }
  }
  SUBCASE("trailing garbage") {
    auto bad = good;
    bad.push_back(0);
    spit(ck, bad);
    CHECK_THROWS_AS(checkpoint_load(ck.string()), IntegrityError);
  }
}

TEST_CASE("resume refuses mismatched targets") {
  auto ck = temp_file("mismatch");
  Cleanup cleanup{ck};
  CheckpointPolicy policy{ck.string(), 0};
  stream_analyze(10, 32, 3, false, &policy);
  auto [cursor, bank] = checkpoint_load(ck.string());
  cursor.base = 2;  // poke an inconsistency
  CHECK_THROWS_AS(stream_analyze_resume(cursor, bank, 64), UsageError);
}
