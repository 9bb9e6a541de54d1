#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kfilter/bits.hpp"

namespace kfilter {

struct Token {
  uint16_t id = 0;
  std::optional<uint16_t> inverse_id;
  std::string label;
};

// Ordered token set, optionally realized as square real matrices so that
// word concatenation corresponds to matrix multiplication.
class Alphabet {
public:
  Alphabet() = default;
  Alphabet(std::string name, std::vector<Token> tokens)
      : name_(std::move(name)), tokens_(std::move(tokens)) {
    for (size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].id != i)
        throw std::invalid_argument("Alphabet: token ids must be 0..n-1 in order");
      label_to_id_[tokens_[i].label] = uint16_t(i);
    }
  }

  const std::string& name() const { return name_; }
  size_t size() const { return tokens_.size(); }
  const Token& token(uint16_t id) const {
    if (id >= tokens_.size()) throw std::out_of_range("Alphabet: bad token id");
    return tokens_[id];
  }
  const std::vector<Token>& tokens() const { return tokens_; }

  std::optional<uint16_t> find_label(const std::string& label) const {
    auto it = label_to_id_.find(label);
    if (it == label_to_id_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<uint16_t> inverse_of(uint16_t id) const { return token(id).inverse_id; }

  bool inverse_closed() const {
    for (const auto& t : tokens_)
      if (!t.inverse_id) return false;
    return true;
  }

  void set_realization(uint16_t id, const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
      throw std::invalid_argument("Alphabet: realization must be square");
    if (dim_ == 0) dim_ = int(m.rows());
    if (m.rows() != dim_)
      throw std::invalid_argument("Alphabet: realization dimension mismatch");
    matrices_.resize(tokens_.size());
    matrices_[id] = m;
  }

  bool has_realization() const {
    if (matrices_.size() != tokens_.size() || tokens_.empty()) return false;
    for (const auto& m : matrices_)
      if (!m) return false;
    return true;
  }

  const Eigen::MatrixXd& matrix(uint16_t id) const {
    if (id >= matrices_.size() || !matrices_[id])
      throw std::runtime_error("Alphabet: token has no realization");
    return *matrices_[id];
  }

  int dim() const { return dim_; }
  int token_width() const { return bit_width_for(tokens_.size()); }

  // Inverse involution plus realization(inverse) ~ realization^-1 (1e-10).
  void validate() const {
    for (const auto& t : tokens_) {
      if (t.inverse_id) {
        const Token& u = token(*t.inverse_id);
        if (!u.inverse_id || *u.inverse_id != t.id)
          throw std::invalid_argument("Alphabet: inverse pairing is not an involution");
        if (has_realization()) {
          Eigen::MatrixXd prod = matrix(t.id) * matrix(u.id);
          Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim_, dim_);
          if ((prod - eye).cwiseAbs().maxCoeff() > 1e-10)
            throw std::invalid_argument("Alphabet: realization(inverse) != realization^-1");
        }
      }
    }
  }

private:
  std::string name_;
  std::vector<Token> tokens_;
  std::vector<std::optional<Eigen::MatrixXd>> matrices_;
  std::unordered_map<std::string, uint16_t> label_to_id_;
  int dim_ = 0;
};

struct Word {
  std::vector<uint16_t> tokens;
  std::string alphabet_ref;

  size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  bool operator==(const Word& o) const {
    return tokens == o.tokens && alphabet_ref == o.alphabet_ref;
  }
};

inline Word make_word(const Alphabet& a, std::vector<uint16_t> tokens) {
  for (uint16_t t : tokens)
    if (t >= a.size()) throw std::invalid_argument("make_word: token id outside alphabet");
  return Word{std::move(tokens), a.name()};
}

inline void check_word(const Word& w, const Alphabet& a) {
  if (w.alphabet_ref != a.name())
    throw std::invalid_argument("word/alphabet mismatch: " + w.alphabet_ref + " vs " + a.name());
  for (uint16_t t : w.tokens)
    if (t >= a.size()) throw std::invalid_argument("word contains token id outside alphabet");
}

inline Word concat(const Word& a, const Word& b) {
  if (a.alphabet_ref != b.alphabet_ref)
    throw std::invalid_argument("concat: alphabet mismatch");
  Word r = a;
  r.tokens.insert(r.tokens.end(), b.tokens.begin(), b.tokens.end());
  return r;
}

// Tokens reversed, each replaced by its formal inverse.
inline Word reverse_inverse(const Word& w, const Alphabet& a) {
  check_word(w, a);
  Word r{{}, w.alphabet_ref};
  r.tokens.reserve(w.tokens.size());
  for (auto it = w.tokens.rbegin(); it != w.tokens.rend(); ++it) {
    auto inv = a.inverse_of(*it);
    if (!inv)
      throw std::invalid_argument("reverse_inverse: token '" + a.token(*it).label +
                                  "' has no inverse");
    r.tokens.push_back(*inv);
  }
  return r;
}

// Free reduction: cancel adjacent token/inverse pairs until none remain.
inline Word reduce_free(const Word& w, const Alphabet& a) {
  check_word(w, a);
  Word r{{}, w.alphabet_ref};
  for (uint16_t t : w.tokens) {
    auto inv = a.inverse_of(t);
    if (!r.tokens.empty() && inv && r.tokens.back() == *inv)
      r.tokens.pop_back();
    else
      r.tokens.push_back(t);
  }
  return r;
}

// Ordered product of token matrices; empty word evaluates to the identity.
inline Eigen::MatrixXd evaluate(const Word& w, const Alphabet& a) {
  check_word(w, a);
  if (!a.has_realization())
    throw std::runtime_error("evaluate: alphabet has no realization");
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(a.dim(), a.dim());
  for (uint16_t t : w.tokens) m *= a.matrix(t);
  return m;
}

struct SelfDelimitedCode {
  BitString bits;
  uint64_t declared_length = 0; // token count carried in the prefix
};

// Elias-gamma length prefix (length+1 so the empty word encodes) followed by
// fixed-width token ids.
inline SelfDelimitedCode encode_self_delimiting(const Word& w, const Alphabet& a) {
  check_word(w, a);
  if (a.size() > (size_t(1) << 16))
    throw std::invalid_argument("encode_self_delimiting: alphabet too large");
  SelfDelimitedCode c;
  c.declared_length = w.tokens.size();
  append_elias_gamma(c.bits, w.tokens.size() + 1);
  int width = a.token_width();
  for (uint16_t t : w.tokens) c.bits.append_bits(t, width);
  return c;
}

inline Word decode_self_delimiting(const BitString& bits, const Alphabet& a) {
  BitReader r(bits);
  uint64_t n = read_elias_gamma(r) - 1;
  int width = a.token_width();
  Word w{{}, a.name()};
  w.tokens.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    uint64_t t = r.read_bits(width);
    if (t >= a.size()) throw std::runtime_error("decode: token id outside alphabet");
    w.tokens.push_back(uint16_t(t));
  }
  if (!r.at_end()) throw std::runtime_error("decode: trailing bits after word");
  return w;
}

// Text form: whitespace-separated token labels, one word per line.
inline std::string word_to_text(const Word& w, const Alphabet& a) {
  check_word(w, a);
  std::string s;
  for (size_t i = 0; i < w.tokens.size(); ++i) {
    if (i) s.push_back(' ');
    s += a.token(w.tokens[i]).label;
  }
  return s;
}

inline Word word_from_text(const std::string& line, const Alphabet& a) {
  std::istringstream in(line);
  Word w{{}, a.name()};
  std::string label;
  while (in >> label) {
    auto id = a.find_label(label);
    if (!id) throw std::invalid_argument("word_from_text: unknown token '" + label + "'");
    w.tokens.push_back(*id);
  }
  return w;
}

} // namespace kfilter
