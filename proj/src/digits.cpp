#include "fibconst/digits.hpp"

#include <array>
#include <cstring>

namespace fibconst {

void check_base(int base) {
  if (base < kMinBase || base > kMaxBase)
    throw UsageError("base must be in [2, 256], got " + std::to_string(base));
}

namespace {

constexpr bool is_pow2(int b) { return (b & (b - 1)) == 0; }

constexpr int log2_exact(int b) {
  int s = 0;
  while ((1 << s) < b) ++s;
  return s;
}

// Largest e with base^e < 2^63 (leaf size for the divide-and-conquer path).
int leaf_digit_count(int base) {
  int e = 0;
  unsigned __int128 p = 1;
  while (p * static_cast<unsigned>(base) < (static_cast<unsigned __int128>(1) << 63)) {
    p *= static_cast<unsigned>(base);
    ++e;
  }
  return e;
}

const std::array<std::uint8_t, 256>& char_value_table() {
  static const std::array<std::uint8_t, 256> table = [] {
    std::array<std::uint8_t, 256> t{};
    for (int c = '0'; c <= '9'; ++c) t[c] = static_cast<std::uint8_t>(c - '0');
    for (int c = 'a'; c <= 'z'; ++c) t[c] = static_cast<std::uint8_t>(c - 'a' + 10);
    return t;
  }();
  return table;
}

// Power-of-two base: read digits straight out of the binary representation.
void convert_pow2(const BigNat& v, int base, std::vector<std::uint8_t>& out) {
  const int s = log2_exact(base);
  const std::size_t nbits = mpz_sizeinbase(v.get_mpz_t(), 2);  // exact for base 2
  const std::size_t ndigits = (nbits + s - 1) / s;
  const std::size_t nwords = (nbits + 63) / 64;
  static thread_local std::vector<std::uint64_t> words;
  words.assign(nwords, 0);
  std::size_t exported = 0;
  mpz_export(words.data(), &exported, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  out.resize(ndigits);
  const std::uint32_t mask = static_cast<std::uint32_t>(base - 1);
  for (std::size_t j = 0; j < ndigits; ++j) {  // j counts from the least significant digit
    const std::size_t bitpos = j * s;
    const std::size_t w = bitpos >> 6;
    const unsigned off = bitpos & 63;
    std::uint64_t val = words[w] >> off;
    if (off + s > 64 && w + 1 < nwords) val |= words[w + 1] << (64 - off);
    out[ndigits - 1 - j] = static_cast<std::uint8_t>(val & mask);
  }
}

// Bases <= 36: the library converter is already divide-and-conquer; we only
// remap the character alphabet to digit values.
void convert_small_base(const BigNat& v, int base, std::vector<std::uint8_t>& out) {
  static thread_local std::vector<char> chars;
  const std::size_t est = mpz_sizeinbase(v.get_mpz_t(), base);  // exact or one too big
  chars.resize(est + 2);
  mpz_get_str(chars.data(), base, v.get_mpz_t());
  std::size_t len = est;
  if (chars[est - 1] == '\0') len = est - 1;
  out.resize(len);
  const auto& lut = char_value_table();
  const char* src = chars.data();
  for (std::size_t i = 0; i < len; ++i)
    out[i] = lut[static_cast<unsigned char>(src[i])];
}

struct BigBaseConverter {
  int base;
  int leaf;                       // max digits converted by the u64 loop
  std::vector<BigNat> pows;       // pows[i] = base^(leaf * 2^i)
  std::vector<std::uint64_t> ndig;  // digit count covered by pows[i]
  std::vector<std::uint8_t>* out;

  void build_powers(const BigNat& v) {
    BigNat p;
    mpz_ui_pow_ui(p.get_mpz_t(), base, leaf);
    std::uint64_t n = leaf;
    while (p <= v) {
      pows.push_back(p);
      ndig.push_back(n);
      p = p * p;
      n *= 2;
    }
  }

  void emit_leaf(std::uint64_t x, std::uint64_t e, bool pad) {
    std::array<std::uint8_t, 64> tmp;
    std::uint64_t n = 0;
    while (x > 0) {
      tmp[n++] = static_cast<std::uint8_t>(x % base);
      x /= static_cast<std::uint64_t>(base);
    }
    if (n == 0 && !pad) tmp[n++] = 0;  // the value 0 still needs one digit
    const std::uint64_t width = pad ? e : n;
    for (std::uint64_t i = width; i-- > n;) out->push_back(0);
    for (std::uint64_t i = n; i-- > 0;) out->push_back(tmp[i]);
  }

  // Emits exactly ndig[i]*? digits... exact width = e digits, leading zeros kept.
  void rec_padded(const BigNat& v, std::uint64_t e, std::size_t i) {
    if (e <= static_cast<std::uint64_t>(leaf)) {
      emit_leaf(mpz_get_ui(v.get_mpz_t()), e, true);
      return;
    }
    // pows[i] covers ndig[i] digits and ndig[i] < e <= 2*ndig[i] holds by construction.
    while (ndig[i] >= e) --i;
    BigNat q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), pows[i].get_mpz_t());
    rec_padded(q, e - ndig[i], i);
    rec_padded(r, ndig[i], i);
  }

  // Top level: width not known in advance, no leading zeros.
  void rec_top(const BigNat& v) {
    if (v < pow_leaf()) {
      emit_leaf(mpz_get_ui(v.get_mpz_t()), 0, false);
      return;
    }
    std::size_t i = pows.size() - 1;
    while (pows[i] > v) --i;
    BigNat q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), pows[i].get_mpz_t());
    rec_top(q);
    rec_padded(r, ndig[i], i);
  }

  const BigNat& pow_leaf() const { return pows.front(); }
};

// Bases 37..256: our own divide-and-conquer splitting at balanced powers of
// the base. Each level halves the digit width, so the cost follows the
// big-integer division cost, i.e. subquadratic overall.
void convert_big_base(const BigNat& v, int base, std::vector<std::uint8_t>& out) {
  BigBaseConverter conv{base, leaf_digit_count(base), {}, {}, &out};
  conv.build_powers(v);
  if (conv.pows.empty()) {  // v < base^leaf: single leaf, no splitting needed
    BigNat p;
    mpz_ui_pow_ui(p.get_mpz_t(), base, conv.leaf);
    conv.pows.push_back(p);
    conv.ndig.push_back(conv.leaf);
  }
  out.clear();
  conv.rec_top(v);
}

}  // namespace

void digit_string_into(const BigNat& v, int base, std::vector<std::uint8_t>& out) {
  check_base(base);
  if (sgn(v) < 0) throw UsageError("digit_string requires a non-negative value");
  if (sgn(v) == 0) {
    out.assign(1, 0);
    return;
  }
  if (is_pow2(base)) {
    convert_pow2(v, base, out);
  } else if (base <= 36) {
    convert_small_base(v, base, out);
  } else {
    convert_big_base(v, base, out);
  }
}

DigitString digit_string(const BigNat& v, int base) {
  DigitString s;
  s.base = base;
  digit_string_into(v, base, s.digits);
  return s;
}

BigNat from_digits(const DigitString& s) {
  check_base(s.base);
  if (s.digits.empty()) throw UsageError("empty digit string");
  if (s.digits.size() > 1 && s.digits.front() == 0)
    throw UsageError("leading zero in multi-digit string");
  BigNat r = 0;
  for (std::uint8_t d : s.digits) {
    if (d >= s.base) throw UsageError("digit out of range for base");
    mpz_mul_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(s.base));
    mpz_add_ui(r.get_mpz_t(), r.get_mpz_t(), d);
  }
  return r;
}

}  // namespace fibconst
