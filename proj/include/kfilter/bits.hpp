#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfilter {

// Growable bit string, MSB-first within each byte. Trailing pad bits of the
// last byte are kept zero so byte() views are stable.
class BitString {
public:
  BitString() = default;

  size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool bit(size_t i) const {
    if (i >= nbits_) throw std::out_of_range("BitString::bit: index past end");
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
  }

  void push_back(bool b) {
    if ((nbits_ & 7) == 0) bytes_.push_back(0);
    if (b) bytes_[nbits_ >> 3] |= uint8_t(1u << (7 - (nbits_ & 7)));
    ++nbits_;
  }

  // Appends `width` bits of `value`, most significant first.
  void append_bits(uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) push_back((value >> i) & 1u);
  }

  void append(const BitString& other) {
    for (size_t i = 0; i < other.nbits_; ++i) push_back(other.bit(i));
  }

  void flip(size_t i) {
    if (i >= nbits_) throw std::out_of_range("BitString::flip: index past end");
    bytes_[i >> 3] ^= uint8_t(1u << (7 - (i & 7)));
  }

  // Zero-padded to a whole number of bytes.
  const std::vector<uint8_t>& bytes() const { return bytes_; }

  bool operator==(const BitString& o) const {
    return nbits_ == o.nbits_ && bytes_ == o.bytes_;
  }
  bool operator!=(const BitString& o) const { return !(*this == o); }

  // True when *this orders before `o` by (length, lexicographic bits).
  bool lex_less(const BitString& o) const {
    if (nbits_ != o.nbits_) return nbits_ < o.nbits_;
    return bytes_ < o.bytes_;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(nbits_);
    for (size_t i = 0; i < nbits_; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
  }

  static BitString parse(const std::string& s) {
    BitString b;
    for (char c : s) {
      if (c == '0' || c == '1') b.push_back(c == '1');
      else if (c != ' ' && c != '_')
        throw std::invalid_argument("BitString::parse: bad character");
    }
    return b;
  }

  static BitString from_bytes(const std::vector<uint8_t>& bytes, size_t nbits) {
    if (nbits > bytes.size() * 8)
      throw std::invalid_argument("BitString::from_bytes: length exceeds data");
    BitString b;
    b.bytes_ = bytes;
    b.bytes_.resize((nbits + 7) / 8);
    b.nbits_ = nbits;
    // clear pad bits
    if (nbits & 7) b.bytes_.back() &= uint8_t(0xFFu << (8 - (nbits & 7)));
    return b;
  }

private:
  std::vector<uint8_t> bytes_;
  size_t nbits_ = 0;
};

class BitReader {
public:
  explicit BitReader(const BitString& s) : s_(&s) {}

  size_t position() const { return pos_; }
  size_t remaining() const { return s_->size() - pos_; }
  bool at_end() const { return pos_ == s_->size(); }

  bool read_bit() {
    if (pos_ >= s_->size())
      throw std::runtime_error("BitReader: truncated input");
    return s_->bit(pos_++);
  }

  uint64_t read_bits(int width) {
    uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | uint64_t(read_bit());
    return v;
  }

private:
  const BitString* s_;
  size_t pos_ = 0;
};

// Elias gamma code for n >= 1: floor(log2 n) zeros, then n in binary.
inline void append_elias_gamma(BitString& out, uint64_t n) {
  if (n == 0) throw std::invalid_argument("elias gamma needs n >= 1");
  int top = 63;
  while (!((n >> top) & 1u)) --top;
  for (int i = 0; i < top; ++i) out.push_back(false);
  out.append_bits(n, top + 1);
}

inline uint64_t read_elias_gamma(BitReader& r) {
  int zeros = 0;
  while (!r.read_bit()) {
    if (++zeros > 63) throw std::runtime_error("elias gamma: overlong prefix");
  }
  uint64_t n = 1;
  for (int i = 0; i < zeros; ++i) n = (n << 1) | uint64_t(r.read_bit());
  return n;
}

inline size_t elias_gamma_length(uint64_t n) {
  int top = 63;
  while (!((n >> top) & 1u)) --top;
  return size_t(2 * top + 1);
}

// Fixed token width: ceil(log2(n)) bits; 0 for alphabets of size <= 1.
inline int bit_width_for(size_t n) {
  int w = 0;
  while ((size_t(1) << w) < n) ++w;
  return w;
}

} // namespace kfilter
