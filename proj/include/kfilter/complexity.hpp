#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kfilter/bits.hpp"
#include "kfilter/word.hpp"

namespace kfilter {

// Compression-based upper bounds standing in for Kolmogorov complexity.
// All three coders are defined bit-exactly here; estimates are deterministic
// functions of the input.
enum class Estimator { Lz78, Lzw, DictCoder };

inline const char* estimator_name(Estimator e) {
  switch (e) {
    case Estimator::Lz78: return "lz78";
    case Estimator::Lzw: return "lzw";
    case Estimator::DictCoder: return "dict";
  }
  return "?";
}

inline Estimator parse_estimator(const std::string& s) {
  if (s == "lz78") return Estimator::Lz78;
  if (s == "lzw") return Estimator::Lzw;
  if (s == "dict" || s == "dict_coder") return Estimator::DictCoder;
  throw std::invalid_argument("unknown estimator '" + s + "'");
}

inline const std::vector<Estimator>& all_estimators() {
  static const std::vector<Estimator> all = {Estimator::Lz78, Estimator::Lzw,
                                             Estimator::DictCoder};
  return all;
}

struct ComplexityEstimate {
  Estimator estimator = Estimator::Lz78;
  double bits = 0;
  uint64_t input_len_bits = 0;
};

namespace detail {

// Binary trie used by both LZ-style parsers.
struct BitTrie {
  struct Node {
    int32_t child[2] = {-1, -1};
  };
  std::vector<Node> nodes;
  BitTrie() { nodes.emplace_back(); }
  int32_t step(int32_t node, bool b) const { return nodes[size_t(node)].child[b]; }
  int32_t add(int32_t node, bool b) {
    nodes.emplace_back();
    int32_t id = int32_t(nodes.size() - 1);
    nodes[size_t(node)].child[b] = id;
    return id;
  }
};

// LZ78 phrase parse; each complete phrase k costs ceil(log2 k) index bits
// plus one innovation bit. A trailing incomplete phrase costs its index only.
inline uint64_t lz78_payload_bits(const BitString& s, uint64_t* phrases_out) {
  BitTrie trie;
  uint64_t phrases = 0;
  uint64_t bits = 0;
  size_t pos = 0;
  while (pos < s.size()) {
    int32_t node = 0;
    while (pos < s.size()) {
      int32_t next = trie.step(node, s.bit(pos));
      if (next < 0) break;
      node = next;
      ++pos;
    }
    if (pos < s.size()) {
      trie.add(node, s.bit(pos));
      ++pos;
      ++phrases;
      bits += uint64_t(bit_width_for(size_t(phrases))) + 1; // index in [0, k-1] + new bit
    } else {
      bits += uint64_t(bit_width_for(size_t(phrases) + 1)); // index of the partial phrase
    }
  }
  if (phrases_out) *phrases_out = phrases;
  return bits;
}

// LZW over the binary alphabet, growing code width, dictionary frozen at
// 4096 entries (12-bit codes), no reset.
inline uint64_t lzw_payload_bits(const BitString& s) {
  constexpr size_t kMaxEntries = 4096;
  BitTrie trie;
  int32_t zero = trie.add(0, false);
  int32_t one = trie.add(0, true);
  (void)zero;
  (void)one;
  size_t entries = 2;
  uint64_t bits = 0;
  size_t pos = 0;
  while (pos < s.size()) {
    int32_t node = trie.step(0, s.bit(pos));
    size_t len = 1;
    while (pos + len < s.size()) {
      int32_t next = trie.step(node, s.bit(pos + len));
      if (next < 0) break;
      node = next;
      ++len;
    }
    bits += uint64_t(std::max(1, bit_width_for(entries)));
    if (pos + len < s.size() && entries < kMaxEntries) {
      trie.add(node, s.bit(pos + len));
      ++entries;
    }
    pos += len;
  }
  return bits;
}

// Byte-level greedy LZSS with literal runs and hash-chain match search.
// literal run: flag + gamma(len) + 8*len;  match: flag + gamma(dist) +
// gamma(len-2), min match 3 bytes, self-overlap allowed.
inline uint64_t dict_payload_bits(const BitString& s) {
  const std::vector<uint8_t>& b = s.bytes();
  size_t n = b.size();
  if (n == 0) return 0;
  auto run_cost = [](uint64_t len) { return 1 + elias_gamma_length(len) + 8 * len; };
  if (n < 4) return run_cost(n);

  constexpr int kHashBits = 15;
  constexpr size_t kMaxChain = 64;
  constexpr size_t kMinMatch = 3;
  std::vector<int32_t> head(size_t(1) << kHashBits, -1);
  std::vector<int32_t> prev(n, -1);
  auto hash3 = [&](size_t i) {
    uint32_t v = (uint32_t(b[i]) << 16) | (uint32_t(b[i + 1]) << 8) | b[i + 2];
    return (v * 2654435761u) >> (32 - kHashBits);
  };
  auto insert = [&](size_t i) {
    if (i + kMinMatch > n) return;
    uint32_t h = hash3(i);
    prev[i] = head[h];
    head[h] = int32_t(i);
  };

  uint64_t bits = 0;
  uint64_t run = 0; // pending literal bytes
  size_t pos = 0;
  while (pos < n) {
    size_t best_len = 0;
    size_t best_dist = 0;
    if (pos + kMinMatch <= n) {
      int32_t cand = head[hash3(pos)];
      size_t depth = 0;
      while (cand >= 0 && depth++ < kMaxChain) {
        size_t c = size_t(cand);
        size_t len = 0;
        while (pos + len < n && b[c + len] == b[pos + len]) ++len;
        if (len > best_len) {
          best_len = len;
          best_dist = pos - c;
        }
        cand = prev[c];
      }
    }
    bool take = false;
    if (best_len >= kMinMatch) {
      uint64_t match_bits =
          1 + elias_gamma_length(best_dist) + elias_gamma_length(best_len - kMinMatch + 1);
      take = match_bits < 8 * best_len; // cheaper than literals
    }
    if (take) {
      if (run) {
        bits += run_cost(run);
        run = 0;
      }
      bits += 1 + elias_gamma_length(best_dist) + elias_gamma_length(best_len - kMinMatch + 1);
      for (size_t i = 0; i < best_len; ++i) insert(pos + i);
      pos += best_len;
    } else {
      insert(pos);
      ++run;
      ++pos;
    }
  }
  if (run) bits += run_cost(run);
  return bits;
}

} // namespace detail

// Upper-bound complexity estimate in bits: an elias-gamma length header plus
// the coder payload.
inline ComplexityEstimate estimate(const BitString& s, Estimator e) {
  uint64_t payload = 0;
  switch (e) {
    case Estimator::Lz78: payload = detail::lz78_payload_bits(s, nullptr); break;
    case Estimator::Lzw: payload = detail::lzw_payload_bits(s); break;
    case Estimator::DictCoder: payload = detail::dict_payload_bits(s); break;
  }
  ComplexityEstimate r;
  r.estimator = e;
  r.input_len_bits = s.size();
  r.bits = double(elias_gamma_length(s.size() + 1) + payload);
  return r;
}

inline uint64_t lz78_phrase_count(const BitString& s) {
  uint64_t phrases = 0;
  detail::lz78_payload_bits(s, &phrases);
  return phrases;
}

// Estimate of a word's self-delimiting binary encoding.
inline ComplexityEstimate estimate_word(const Word& w, const Alphabet& a, Estimator e) {
  return estimate(encode_self_delimiting(w, a).bits, e);
}

// ---------------------------------------------------------------------------
// Joint/conditional machinery. Parts are byte-aligned, 0xFF bytes are doubled
// and a single 0xFF 0x00 acts as the separator; each part carries a gamma
// length prefix so sub-byte lengths survive the byte alignment.

struct SeparatedPair {
  BitString x, y;

  static constexpr uint8_t kEscape = 0xFF;

  static std::vector<uint8_t> part_bytes(const BitString& s) {
    BitString framed;
    append_elias_gamma(framed, s.size() + 1);
    framed.append(s);
    return framed.bytes();
  }

  static void append_escaped(std::vector<uint8_t>& out, const std::vector<uint8_t>& part) {
    for (uint8_t c : part) {
      out.push_back(c);
      if (c == kEscape) out.push_back(kEscape);
    }
  }

  BitString joined() const {
    std::vector<uint8_t> out;
    append_escaped(out, part_bytes(x));
    out.push_back(kEscape);
    out.push_back(0x00);
    append_escaped(out, part_bytes(y));
    return BitString::from_bytes(out, out.size() * 8);
  }

  static SeparatedPair split(const BitString& joined) {
    std::vector<std::vector<uint8_t>> parts(1);
    const std::vector<uint8_t>& in = joined.bytes();
    for (size_t i = 0; i < in.size(); ++i) {
      if (in[i] == kEscape) {
        if (i + 1 >= in.size()) throw std::runtime_error("separated pair: dangling escape");
        if (in[i + 1] == kEscape) {
          parts.back().push_back(kEscape);
          ++i;
        } else if (in[i + 1] == 0x00) {
          parts.emplace_back();
          ++i;
        } else {
          throw std::runtime_error("separated pair: bad escape sequence");
        }
      } else {
        parts.back().push_back(in[i]);
      }
    }
    if (parts.size() != 2) throw std::runtime_error("separated pair: separator count != 1");
    auto unframe = [](const std::vector<uint8_t>& part) {
      BitString all = BitString::from_bytes(part, part.size() * 8);
      BitReader r(all);
      uint64_t nbits = read_elias_gamma(r) - 1;
      BitString out;
      for (uint64_t i = 0; i < nbits; ++i) out.push_back(r.read_bit());
      return out;
    };
    return SeparatedPair{unframe(parts[0]), unframe(parts[1])};
  }
};

inline BitString join_separated(const BitString& x, const BitString& y) {
  return SeparatedPair{x, y}.joined();
}

// Exact framing overhead of the separated encoding for this pair.
inline uint64_t separation_overhead_bits(const BitString& x, const BitString& y) {
  return join_separated(x, y).size() - x.size() - y.size();
}

inline double joint(const BitString& x, const BitString& y, Estimator e) {
  return estimate(join_separated(x, y), e).bits;
}

// Compression surrogate for K(x|y): cost of x when y is already in context.
inline double conditional(const BitString& x, const BitString& y, Estimator e) {
  double with = estimate(join_separated(y, x), e).bits;
  double base = estimate(y, e).bits;
  return std::max(0.0, with - base);
}

// estimate(x) + estimate(y) - joint(x,y): near zero for independent strings.
inline double independence_defect(const BitString& x, const BitString& y, Estimator e) {
  return estimate(x, e).bits + estimate(y, e).bits - joint(x, y, e);
}

// |difference| of two estimators normalized by input length.
inline double estimator_agreement(const BitString& x, Estimator e1, Estimator e2) {
  if (e1 == e2) return 0.0;
  if (x.size() == 0) return 0.0;
  double a = estimate(x, e1).bits;
  double b = estimate(x, e2).bits;
  return std::abs(a - b) / double(x.size());
}

} // namespace kfilter
