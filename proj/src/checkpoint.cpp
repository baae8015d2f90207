#include "fibconst/checkpoint.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>

namespace fibconst {

namespace {

// "FCCK" + format version. Bumping the version invalidates older files.
constexpr std::uint8_t kMagic[8] = {'F', 'C', 'C', 'K', 'P', 'T', '0', '1'};

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t size) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_mpz(std::vector<std::uint8_t>& out, const BigNat& v) {
  const std::size_t bytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  put_u64(out, bytes);
  const std::size_t at = out.size();
  out.resize(at + bytes);
  std::size_t written = 0;
  mpz_export(out.data() + at, &written, -1, 1, 0, 0, v.get_mpz_t());
  // written <= bytes always; sgn(v)==0 exports nothing and bytes is 1 of zeros
}

struct Reader {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t off = 0;

  std::uint64_t u64() {
    if (off + 8 > size) throw IntegrityError("checkpoint truncated", off);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data[off + i]) << (8 * i);
    off += 8;
    return v;
  }

  BigNat mpz() {
    const std::uint64_t bytes = u64();
    if (off + bytes > size) throw IntegrityError("checkpoint truncated", off);
    BigNat v = 0;
    if (bytes > 0)
      mpz_import(v.get_mpz_t(), bytes, -1, 1, 0, 0, data + off);
    off += bytes;
    return v;
  }
};

}  // namespace

void checkpoint_save(const FibCursor& cursor, const CounterBank& bank,
                     const std::string& path) {
  if (cursor.pos_in_term != 0)
    throw UsageError("checkpoints are taken at term boundaries only");
  if (cursor.base != bank.base || cursor.k_max != bank.k_max)
    throw UsageError("cursor and bank disagree on base/k_max");

  std::vector<std::uint8_t> out(kMagic, kMagic + sizeof kMagic);
  put_u64(out, cursor.n);
  put_mpz(out, cursor.pair.f_n);
  put_mpz(out, cursor.pair.f_n1);
  put_u64(out, cursor.pos_in_term);
  put_u64(out, cursor.suffix_carry.size());
  out.insert(out.end(), cursor.suffix_carry.begin(), cursor.suffix_carry.end());
  std::vector<std::uint8_t> bank_image = serialize(bank);
  put_u64(out, bank_image.size());
  out.insert(out.end(), bank_image.begin(), bank_image.end());
  put_u64(out, fnv1a64(out.data(), out.size()));

  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open checkpoint file for writing: " + tmp);
    f.write(reinterpret_cast<const char*>(out.data()),
            static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("checkpoint write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("checkpoint rename failed: " + path + ": " + ec.message());
}

std::pair<FibCursor, CounterBank> checkpoint_load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open checkpoint file: " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(f)),
                                 std::istreambuf_iterator<char>());
  if (data.size() < sizeof kMagic + 8)
    throw IntegrityError("checkpoint truncated", data.size());
  if (!std::equal(kMagic, kMagic + 4, data.begin()))
    throw IntegrityError("bad checkpoint magic", 0);
  if (!std::equal(kMagic + 4, kMagic + sizeof kMagic, data.begin() + 4))
    throw VersionError("unsupported checkpoint version in " + path);

  const std::size_t body = data.size() - 8;
  const std::uint64_t expect = fnv1a64(data.data(), body);
  Reader tail{data.data(), data.size(), body};
  if (tail.u64() != expect)
    throw IntegrityError("checkpoint checksum mismatch", body);

  Reader r{data.data(), body, sizeof kMagic};
  FibCursor cursor;
  cursor.n = r.u64();
  cursor.pair.n = cursor.n;
  cursor.pair.f_n = r.mpz();
  cursor.pair.f_n1 = r.mpz();
  cursor.pos_in_term = r.u64();
  const std::uint64_t carry_len = r.u64();
  if (r.off + carry_len > r.size)
    throw IntegrityError("checkpoint truncated", r.off);
  cursor.suffix_carry.assign(data.begin() + r.off, data.begin() + r.off + carry_len);
  r.off += carry_len;
  const std::uint64_t bank_len = r.u64();
  if (r.off + bank_len != r.size)
    throw IntegrityError("checkpoint bank size mismatch", r.off);
  CounterBank bank = deserialize_bank(data.data() + r.off, bank_len);
  cursor.base = bank.base;
  cursor.k_max = bank.k_max;
  return {std::move(cursor), std::move(bank)};
}

}  // namespace fibconst
