#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "kfilter/bits.hpp"
#include "kfilter/complexity.hpp"
#include "kfilter/rng.hpp"
#include "kfilter/word.hpp"

namespace kfilter {

// Three-instruction token-emitting machine. Deliberately not Turing complete
// so the shortest-program search below can be exhaustive.
// Encoding: opcodes 2 bits (EMIT 00, REPEAT 01, HALT 10, END 11); EMIT
// carries a fixed-width token id, REPEAT an 8-bit count (2..255) and an
// END-terminated body. Repeat nesting is capped at two levels.

constexpr int kMaxRepeatNesting = 2;
constexpr uint64_t kOracleMaxBits = 40;

struct ProgramItem {
  enum class Kind { Emit, Repeat };
  Kind kind = Kind::Emit;
  uint16_t token = 0;              // Emit
  uint16_t count = 0;              // Repeat: 2..255
  std::vector<ProgramItem> body;   // Repeat

  static ProgramItem emit(uint16_t token) {
    ProgramItem it;
    it.kind = Kind::Emit;
    it.token = token;
    return it;
  }
  static ProgramItem repeat(uint16_t count, std::vector<ProgramItem> body) {
    ProgramItem it;
    it.kind = Kind::Repeat;
    it.count = count;
    it.body = std::move(body);
    return it;
  }
  bool operator==(const ProgramItem& o) const {
    return kind == o.kind && token == o.token && count == o.count && body == o.body;
  }
};

struct TinyProgram {
  std::vector<ProgramItem> items;
  bool operator==(const TinyProgram& o) const { return items == o.items; }
};

namespace detail {

enum : uint64_t { kOpEmit = 0, kOpRepeat = 1, kOpHalt = 2, kOpEnd = 3 };

inline void encode_items(const std::vector<ProgramItem>& items, const Alphabet& a,
                         int depth, BitString& out) {
  for (const auto& it : items) {
    if (it.kind == ProgramItem::Kind::Emit) {
      if (it.token >= a.size()) throw std::invalid_argument("encode: token outside alphabet");
      out.append_bits(kOpEmit, 2);
      out.append_bits(it.token, a.token_width());
    } else {
      if (depth >= kMaxRepeatNesting)
        throw std::invalid_argument("encode: repeat nesting too deep");
      if (it.count < 2 || it.count > 255)
        throw std::invalid_argument("encode: repeat count outside 2..255");
      if (it.body.empty()) throw std::invalid_argument("encode: empty repeat body");
      out.append_bits(kOpRepeat, 2);
      out.append_bits(it.count, 8);
      encode_items(it.body, a, depth + 1, out);
      out.append_bits(kOpEnd, 2);
    }
  }
}

} // namespace detail

inline BitString encode_program(const TinyProgram& p, const Alphabet& a) {
  BitString out;
  detail::encode_items(p.items, a, 0, out);
  out.append_bits(detail::kOpHalt, 2);
  return out;
}

inline uint64_t program_bits(const TinyProgram& p, const Alphabet& a) {
  return encode_program(p, a).size();
}

namespace detail {

inline std::vector<ProgramItem> decode_items(BitReader& r, const Alphabet& a, int depth) {
  std::vector<ProgramItem> items;
  for (;;) {
    uint64_t op = r.read_bits(2);
    switch (op) {
      case kOpEmit: {
        uint64_t t = r.read_bits(a.token_width());
        if (t >= a.size()) throw std::runtime_error("decode: token id outside alphabet");
        items.push_back(ProgramItem::emit(uint16_t(t)));
        break;
      }
      case kOpRepeat: {
        if (depth >= kMaxRepeatNesting)
          throw std::runtime_error("decode: repeat nesting too deep");
        uint64_t k = r.read_bits(8);
        if (k < 2) throw std::runtime_error("decode: repeat count below 2");
        auto body = decode_items(r, a, depth + 1);
        if (body.empty()) throw std::runtime_error("decode: empty repeat body");
        items.push_back(ProgramItem::repeat(uint16_t(k), std::move(body)));
        break;
      }
      case kOpHalt:
        if (depth != 0) throw std::runtime_error("decode: halt inside repeat body");
        return items;
      case kOpEnd:
        if (depth == 0) throw std::runtime_error("decode: end marker at top level");
        return items;
    }
  }
}

} // namespace detail

inline TinyProgram decode_program(const BitString& bits, const Alphabet& a) {
  BitReader r(bits);
  TinyProgram p;
  p.items = detail::decode_items(r, a, 0);
  if (!r.at_end()) throw std::runtime_error("decode: trailing bits after halt");
  return p;
}

namespace detail {

// Lenient parse for mutation repair: the first invalid or truncated
// instruction ends the program; open bodies close with what they collected.
inline std::vector<ProgramItem> repair_items(BitReader& r, const Alphabet& a, int depth,
                                             bool& stop) {
  std::vector<ProgramItem> items;
  while (!stop) {
    if (r.remaining() < 2) {
      stop = true;
      break;
    }
    uint64_t op = r.read_bits(2);
    if (op == kOpEmit) {
      if (r.remaining() < size_t(a.token_width())) {
        stop = true;
        break;
      }
      uint64_t t = r.read_bits(a.token_width());
      if (t >= a.size()) {
        stop = true;
        break;
      }
      items.push_back(ProgramItem::emit(uint16_t(t)));
    } else if (op == kOpRepeat) {
      if (depth >= kMaxRepeatNesting || r.remaining() < 8) {
        stop = true;
        break;
      }
      uint64_t k = r.read_bits(8);
      if (k < 2) {
        stop = true;
        break;
      }
      auto body = repair_items(r, a, depth + 1, stop);
      if (!body.empty()) items.push_back(ProgramItem::repeat(uint16_t(k), std::move(body)));
    } else if (op == kOpHalt) {
      if (depth != 0) stop = true; // invalid here; truncate everything after
      break;
    } else { // kOpEnd
      if (depth == 0) stop = true;
      break;
    }
  }
  return items;
}

} // namespace detail

inline TinyProgram repair_program(const BitString& bits, const Alphabet& a) {
  BitReader r(bits);
  bool stop = false;
  TinyProgram p;
  p.items = detail::repair_items(r, a, 0, stop);
  return p;
}

namespace detail {

inline bool run_items(const std::vector<ProgramItem>& items, uint64_t fuel,
                      std::vector<uint16_t>& out) {
  for (const auto& it : items) {
    if (it.kind == ProgramItem::Kind::Emit) {
      if (out.size() >= fuel) return false;
      out.push_back(it.token);
    } else {
      for (int k = 0; k < int(it.count); ++k)
        if (!run_items(it.body, fuel, out)) return false;
    }
  }
  return true;
}

} // namespace detail

// U(p, c0): deterministic token stream, truncated at fuel.
inline Word run_program(const TinyProgram& p, const Alphabet& a, uint64_t fuel) {
  Word w{{}, a.name()};
  detail::run_items(p.items, fuel, w.tokens);
  for (uint16_t t : w.tokens)
    if (t >= a.size()) throw std::runtime_error("run: token id outside alphabet");
  return w;
}

struct RobotState {
  TinyProgram program;
  Eigen::VectorXd c0;
  uint64_t memory_bits = 0;
  uint32_t generation = 0;
};

inline void validate_robot(const RobotState& r, const Alphabet& a) {
  if (program_bits(r.program, a) > r.memory_bits)
    throw std::invalid_argument("robot: program exceeds memory budget");
}

inline Word run(const RobotState& r, const Alphabet& a, uint64_t fuel) {
  validate_robot(r, a);
  return run_program(r.program, a, fuel);
}

// Copy with independent bit flips at mutation_rate, repaired to a valid
// program and truncated to the parent's memory budget; c0 gets Gaussian
// jitter of width c0_sigma. Rate 0 reproduces the parent exactly.
inline RobotState replicate(const RobotState& r, const Alphabet& a, double mutation_rate,
                            uint64_t seed, double c0_sigma = 0.0) {
  if (mutation_rate < 0.0 || mutation_rate > 1.0)
    throw std::invalid_argument("replicate: mutation_rate outside [0,1]");
  validate_robot(r, a);
  Rng rng(seed);
  BitString bits = encode_program(r.program, a);
  for (size_t i = 0; i < bits.size(); ++i)
    if (rng.uniform() < mutation_rate) bits.flip(i);
  RobotState child;
  child.program = repair_program(bits, a);
  while (program_bits(child.program, a) > r.memory_bits && !child.program.items.empty())
    child.program.items.pop_back();
  child.c0 = r.c0;
  if (c0_sigma > 0.0)
    for (Eigen::Index i = 0; i < child.c0.size(); ++i)
      child.c0(i) += c0_sigma * rng.gaussian();
  child.memory_bits = r.memory_bits;
  child.generation = r.generation + 1;
  return child;
}

enum class Reversibility { Reversible, Irreversible };

// Eq-4.2 regime test: enough memory to hold the word's estimated complexity.
inline Reversibility reversibility_test(double memory_bits, const Word& w, const Alphabet& a,
                                        Estimator e) {
  return memory_bits >= estimate_word(w, a, e).bits ? Reversibility::Reversible
                                                    : Reversibility::Irreversible;
}

struct OracleResult {
  Word word;
  bool found = false;
  uint64_t shortest_bits = 0;
  TinyProgram program;
  uint64_t programs_searched = 0;
};

namespace detail {

// Exhaustive program search. Programs are grown instruction by instruction;
// only emissions that stay a prefix of the target word are explored, which
// keeps the space tiny without excluding any matching program. No
// best-so-far pruning: the visit set depends only on (word, max_bits), so
// counts and results are independent of enumeration partitioning.
struct OracleSearch {
  const std::vector<uint16_t>& w;
  const Alphabet& a;
  uint64_t max_bits;
  int tw;
  uint64_t searched = 0;
  bool found = false;
  uint64_t best_bits = 0;
  BitString best_code;
  TinyProgram best_prog;

  OracleSearch(const std::vector<uint16_t>& w_, const Alphabet& a_, uint64_t max_bits_)
      : w(w_), a(a_), max_bits(max_bits_), tw(a_.token_width()) {}

  void consider(const std::vector<ProgramItem>& items, uint64_t used) {
    if (used + 2 > max_bits) return;
    TinyProgram p{items};
    BitString code = encode_program(p, a);
    if (!found || code.lex_less(best_code)) {
      found = true;
      best_bits = code.size();
      best_code = code;
      best_prog = p;
    }
  }

  // How many times the block w[pos..pos+len) repeats consecutively in w.
  uint64_t max_repeats(size_t pos, size_t len) const {
    size_t r = 1;
    size_t at = pos + len;
    while (at + len <= w.size()) {
      bool ok = true;
      for (size_t i = 0; i < len; ++i)
        if (w[at + i] != w[pos + i]) {
          ok = false;
          break;
        }
      if (!ok) break;
      ++r;
      at += len;
    }
    return r;
  }

  // Enumerate instruction blocks at `depth` whose emission extends the match
  // from `pos`; sink fires for every block state including the empty one.
  template <typename Sink>
  void blocks(size_t pos, int depth, uint64_t used, std::vector<ProgramItem>& items,
              Sink&& sink) {
    sink(pos, used);
    uint64_t close_cost = 2 * uint64_t(depth) + 2; // ENDs plus HALT
    // EMIT the one token that keeps the emission a prefix of w
    if (pos < w.size() && used + 2 + uint64_t(tw) + close_cost <= max_bits) {
      items.push_back(ProgramItem::emit(w[pos]));
      blocks(pos + 1, depth, used + 2 + uint64_t(tw), items, sink);
      items.pop_back();
    }
    // REPEAT k [body]: 10 bits of opcode+count up front, END paid at close
    if (depth < kMaxRepeatNesting && used + 12 + close_cost + 2 + uint64_t(tw) <= max_bits) {
      std::vector<ProgramItem> body;
      blocks(pos, depth + 1, used + 10, body, [&](size_t bend, uint64_t bused) {
        if (bend == pos) return; // body must emit
        size_t blen = bend - pos;
        uint64_t reps = std::min<uint64_t>(max_repeats(pos, blen), 255);
        for (uint64_t k = 2; k <= reps; ++k) {
          items.push_back(ProgramItem::repeat(uint16_t(k), body));
          blocks(pos + size_t(k) * blen, depth, bused + 2, items, sink);
          items.pop_back();
        }
      });
    }
  }
};

} // namespace detail

// Exact VM-relative complexity by exhaustive enumeration; ties broken by
// lexicographic order of the encoded bits.
inline OracleResult shortest_program(const Word& w, const Alphabet& a, uint64_t max_bits) {
  check_word(w, a);
  if (max_bits > kOracleMaxBits)
    throw std::invalid_argument("shortest_program: search bound above 40 bits");
  detail::OracleSearch s(w.tokens, a, max_bits);
  std::vector<ProgramItem> items;
  s.blocks(0, 0, 0, items, [&](size_t pos, uint64_t used) {
    ++s.searched; // every in-budget program whose output is a prefix of w
    if (pos == s.w.size()) s.consider(items, used);
  });
  OracleResult r;
  r.word = w;
  r.found = s.found;
  r.shortest_bits = s.best_bits;
  r.program = s.best_prog;
  r.programs_searched = s.searched;
  return r;
}

// Oracle results for every word of exact length `len`, in lexicographic
// token order. Words are searched independently, so splitting them across
// threads cannot change any result.
inline std::vector<OracleResult> oracle_table(const Alphabet& a, size_t len,
                                              uint64_t max_bits, unsigned threads = 1) {
  if (a.size() == 0) throw std::invalid_argument("oracle_table: empty alphabet");
  uint64_t count = 1;
  for (size_t i = 0; i < len; ++i) {
    count *= a.size();
    if (count > (uint64_t(1) << 20))
      throw std::invalid_argument("oracle_table: word space above 2^20");
  }
  std::vector<OracleResult> out(count);
  auto work = [&](uint64_t begin, uint64_t end) {
    for (uint64_t w = begin; w < end; ++w) {
      std::vector<uint16_t> toks(len);
      uint64_t idx = w;
      for (size_t i = len; i-- > 0;) {
        toks[i] = uint16_t(idx % a.size());
        idx /= a.size();
      }
      out[w] = shortest_program(Word{std::move(toks), a.name()}, a, max_bits);
    }
  };
  if (threads <= 1 || count < 2) {
    work(0, count);
  } else {
    unsigned n = std::min<unsigned>(threads, unsigned(count));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) {
      uint64_t begin = count * t / n, end = count * (t + 1) / n;
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Program text form: `EMIT <label>`, `REPEAT <k> {`, `}`, `HALT`.

namespace detail {

inline void print_items(const std::vector<ProgramItem>& items, const Alphabet& a, int indent,
                        std::ostream& os) {
  std::string pad(size_t(indent) * 2, ' ');
  for (const auto& it : items) {
    if (it.kind == ProgramItem::Kind::Emit) {
      os << pad << "EMIT " << a.token(it.token).label << "\n";
    } else {
      os << pad << "REPEAT " << it.count << " {\n";
      print_items(it.body, a, indent + 1, os);
      os << pad << "}\n";
    }
  }
}

} // namespace detail

inline std::string program_to_text(const TinyProgram& p, const Alphabet& a) {
  std::ostringstream os;
  detail::print_items(p.items, a, 0, os);
  os << "HALT\n";
  return os.str();
}

inline TinyProgram program_from_text(const std::string& text, const Alphabet& a) {
  std::istringstream in(text);
  std::vector<std::vector<ProgramItem>> stack(1);
  std::vector<uint16_t> counts;
  std::string line;
  bool halted = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (halted) throw std::invalid_argument("program text: content after HALT");
    if (kw == "EMIT") {
      std::string label;
      if (!(ls >> label)) throw std::invalid_argument("program text: EMIT needs a label");
      auto id = a.find_label(label);
      if (!id) throw std::invalid_argument("program text: unknown token '" + label + "'");
      stack.back().push_back(ProgramItem::emit(*id));
    } else if (kw == "REPEAT") {
      long k = 0;
      std::string brace;
      if (!(ls >> k >> brace) || brace != "{" || k < 2 || k > 255)
        throw std::invalid_argument("program text: REPEAT needs a count in 2..255 and '{'");
      if (stack.size() > size_t(kMaxRepeatNesting))
        throw std::invalid_argument("program text: repeat nesting too deep");
      counts.push_back(uint16_t(k));
      stack.emplace_back();
    } else if (kw == "}") {
      if (stack.size() < 2) throw std::invalid_argument("program text: unmatched '}'");
      auto body = std::move(stack.back());
      stack.pop_back();
      if (body.empty()) throw std::invalid_argument("program text: empty repeat body");
      stack.back().push_back(ProgramItem::repeat(counts.back(), std::move(body)));
      counts.pop_back();
    } else if (kw == "HALT") {
      if (stack.size() != 1) throw std::invalid_argument("program text: HALT inside repeat");
      halted = true;
    } else {
      throw std::invalid_argument("program text: unknown keyword '" + kw + "'");
    }
  }
  if (stack.size() != 1) throw std::invalid_argument("program text: unterminated repeat");
  return TinyProgram{std::move(stack[0])};
}

} // namespace kfilter
