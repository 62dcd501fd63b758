#include "fliess/word_poly.hpp"

#include <cctype>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

namespace fliess {

std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < w.length(); ++i) {
    s += 'x';
    s += std::to_string(w.letter(i));
  }
  return s;
}

Word parse_word(const std::string& text) {
  if (text == "e") return Word();
  if (text.empty()) throw parse_error("empty word (use 'e')");
  std::vector<uint8_t> letters;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != 'x') throw parse_error("bad word '" + text + "'");
    ++i;
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw parse_error("bad word '" + text + "'");
    if (text[start] == '0' && i - start > 1) throw parse_error("bad letter index in '" + text + "'");
    int idx = std::stoi(text.substr(start, i - start));
    if (idx > 255) throw parse_error("letter index too large in '" + text + "'");
    letters.push_back(static_cast<uint8_t>(idx));
  }
  return Word(std::move(letters));
}

void WordPolynomial::add(const Word& w, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat WordPolynomial::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rat(0) : it->second;
}

WordPolynomial& WordPolynomial::operator+=(const WordPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

WordPolynomial& WordPolynomial::operator-=(const WordPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

WordPolynomial WordPolynomial::operator*(const Rat& s) const {
  WordPolynomial r;
  if (s == 0) return r;
  for (const auto& [w, c] : terms_) {
    Rat v = c * s;
    r.terms_.emplace(w, std::move(v));
  }
  return r;
}

void WordTensorPolynomial::add(const Word& u, const Word& v, const Rat& c) {
  if (c == 0) return;
  auto key = std::make_pair(u, v);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat WordTensorPolynomial::coeff(const Word& u, const Word& v) const {
  auto it = terms_.find(std::make_pair(u, v));
  return it == terms_.end() ? Rat(0) : it->second;
}

WordTensorPolynomial& WordTensorPolynomial::operator+=(const WordTensorPolynomial& o) {
  for (const auto& [uv, c] : o.terms_) add(uv.first, uv.second, c);
  return *this;
}

namespace {

struct PairHash {
  size_t operator()(const std::pair<Word, Word>& p) const {
    WordHash h;
    return h(p.first) * 1000003u ^ h(p.second);
  }
};

using CountTerms = std::vector<std::pair<Word, int64_t>>;
using UnshuffleTerms = std::vector<std::tuple<Word, Word, int64_t>>;

// process-wide memo tables; insert-only, guarded by shared mutexes
std::unordered_map<std::pair<Word, Word>, std::unique_ptr<CountTerms>, PairHash> g_shuffle_memo;
std::shared_mutex g_shuffle_mutex;
std::unordered_map<Word, std::unique_ptr<UnshuffleTerms>, WordHash> g_unshuffle_memo;
std::shared_mutex g_unshuffle_mutex;

void accumulate(std::map<Word, int64_t>& acc, const Word& w, int64_t c) { acc[w] += c; }

CountTerms compute_shuffle(const Word& u, const Word& v) {
  std::map<Word, int64_t> acc;
  if (u.empty()) {
    accumulate(acc, v, 1);
  } else if (v.empty()) {
    accumulate(acc, u, 1);
  } else {
    for (const auto& [w, c] : shuffle_counts(u.tail(), v)) accumulate(acc, w.prepend(u.first()), c);
    for (const auto& [w, c] : shuffle_counts(u, v.tail())) accumulate(acc, w.prepend(v.first()), c);
  }
  return CountTerms(acc.begin(), acc.end());
}

}  // namespace

const CountTerms& shuffle_counts(const Word& u, const Word& v) {
  // symmetric product, normalize the key
  if (v < u) return shuffle_counts(v, u);
  auto key = std::make_pair(u, v);
  {
    std::shared_lock lock(g_shuffle_mutex);
    auto it = g_shuffle_memo.find(key);
    if (it != g_shuffle_memo.end()) return *it->second;
  }
  auto value = std::make_unique<CountTerms>(compute_shuffle(u, v));
  std::unique_lock lock(g_shuffle_mutex);
  auto [it, inserted] = g_shuffle_memo.emplace(std::move(key), std::move(value));
  return *it->second;
}

WordPolynomial shuffle_words(const Word& u, const Word& v) {
  WordPolynomial p;
  for (const auto& [w, c] : shuffle_counts(u, v)) p.add(w, Rat(static_cast<long>(c)));
  return p;
}

WordPolynomial shuffle_words(const WordPolynomial& p, const WordPolynomial& q) {
  WordPolynomial r;
  for (const auto& [u, cu] : p.terms())
    for (const auto& [v, cv] : q.terms()) {
      Rat cc = cu * cv;
      for (const auto& [w, n] : shuffle_counts(u, v)) r.add(w, cc * static_cast<long>(n));
    }
  return r;
}

const UnshuffleTerms& unshuffle_counts(const Word& w) {
  {
    std::shared_lock lock(g_unshuffle_mutex);
    auto it = g_unshuffle_memo.find(w);
    if (it != g_unshuffle_memo.end()) return *it->second;
  }
  std::map<std::pair<Word, Word>, int64_t> acc;
  if (w.empty()) {
    acc[{Word(), Word()}] = 1;
  } else {
    int x = w.first();
    for (const auto& [u, v, c] : unshuffle_counts(w.tail())) {
      acc[{u.prepend(x), v}] += c;
      acc[{u, v.prepend(x)}] += c;
    }
  }
  auto value = std::make_unique<UnshuffleTerms>();
  value->reserve(acc.size());
  for (const auto& [uv, c] : acc) value->emplace_back(uv.first, uv.second, c);
  std::unique_lock lock(g_unshuffle_mutex);
  auto [it, inserted] = g_unshuffle_memo.emplace(w, std::move(value));
  return *it->second;
}

WordTensorPolynomial shuffle_adjoint(const Word& w) {
  WordTensorPolynomial t;
  for (const auto& [u, v, c] : unshuffle_counts(w)) t.add(u, v, Rat(static_cast<long>(c)));
  return t;
}

WordTensorPolynomial shuffle_adjoint(const WordPolynomial& p) {
  WordTensorPolynomial t;
  for (const auto& [w, c] : p.terms())
    for (const auto& [u, v, n] : unshuffle_counts(w)) t.add(u, v, c * static_cast<long>(n));
  return t;
}

WordPolynomial catenate(const WordPolynomial& p, const WordPolynomial& q) {
  WordPolynomial r;
  for (const auto& [u, cu] : p.terms())
    for (const auto& [v, cv] : q.terms()) r.add(u.concat(v), cu * cv);
  return r;
}

WordTensorPolynomial catenate(const WordTensorPolynomial& p, const WordTensorPolynomial& q) {
  WordTensorPolynomial r;
  for (const auto& [uv, c] : p.terms())
    for (const auto& [ab, d] : q.terms())
      r.add(uv.first.concat(ab.first), uv.second.concat(ab.second), c * d);
  return r;
}

}  // namespace fliess
