#include "fliess/hopf.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <sstream>

namespace fliess {

int coord_degree(const CoordinateMap& a) {
  return static_cast<int>(a.word.length() + a.word.count(0)) + 1;
}

const HopfMonomial& HopfMonomial::unit() {
  static const HopfMonomial u;
  return u;
}

int HopfMonomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += coord_degree(f);
  return d;
}

HopfMonomial HopfMonomial::times(const CoordinateMap& f) const {
  HopfMonomial r = *this;
  r.factors_.insert(std::upper_bound(r.factors_.begin(), r.factors_.end(), f), f);
  return r;
}

HopfMonomial HopfMonomial::times(const HopfMonomial& o) const {
  HopfMonomial r = *this;
  for (const auto& f : o.factors_)
    r.factors_.insert(std::upper_bound(r.factors_.begin(), r.factors_.end(), f), f);
  return r;
}

bool operator<(const HopfMonomial& a, const HopfMonomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  if (a.factors_.size() != b.factors_.size()) return a.factors_.size() < b.factors_.size();
  return a.factors_ < b.factors_;
}

void HopfPolynomial::add(const HopfMonomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat HopfPolynomial::coeff(const HopfMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

HopfPolynomial& HopfPolynomial::operator+=(const HopfPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

HopfPolynomial& HopfPolynomial::operator-=(const HopfPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

HopfPolynomial HopfPolynomial::operator*(const Rat& s) const {
  HopfPolynomial r;
  if (s == 0) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
  return r;
}

HopfPolynomial operator*(const HopfPolynomial& a, const HopfPolynomial& b) {
  HopfPolynomial r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add(ma.times(mb), ca * cb);
  return r;
}

void HopfTensor::add(const HopfMonomial& l, const HopfMonomial& r, const Rat& c) {
  if (c == 0) return;
  auto key = std::make_pair(l, r);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat HopfTensor::coeff(const HopfMonomial& l, const HopfMonomial& r) const {
  auto it = terms_.find(std::make_pair(l, r));
  return it == terms_.end() ? Rat(0) : it->second;
}

HopfTensor& HopfTensor::operator+=(const HopfTensor& o) {
  for (const auto& [lr, c] : o.terms_) add(lr.first, lr.second, c);
  return *this;
}

HopfTensor operator*(const HopfTensor& a, const HopfTensor& b) {
  HopfTensor r;
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_)
      r.add(pa.first.times(pb.first), pa.second.times(pb.second), ca * cb);
  return r;
}

namespace {

// Word shapes: x0 positions fixed, every other slot ranges over x1..xm. A
// shape of length L with a zeros has degree L + a + 1 and carries m^(1+L-a)
// index choices (the component superscript plus one per non-x0 slot).
struct Shape {
  int degree;
  long long weight;
};

std::vector<Shape> shapes_up_to(int k, int m) {
  std::vector<Shape> out;
  for (int len = 0; len + 1 <= k; ++len) {
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      int zeros = __builtin_popcount(mask);
      int deg = len + zeros + 1;
      if (deg > k) continue;
      long long w = 1;
      for (int p = 0; p < 1 + len - zeros; ++p) w *= m;
      out.push_back({deg, w});
    }
  }
  return out;
}

long long count_multisets(const std::vector<Shape>& shapes, size_t idx, int remaining) {
  if (remaining == 0) return 1;
  if (idx == shapes.size()) return 0;
  long long total = count_multisets(shapes, idx + 1, remaining);  // skip this shape
  long long w = 1;
  for (int used = shapes[idx].degree; used <= remaining; used += shapes[idx].degree) {
    w *= shapes[idx].weight;
    total += w * count_multisets(shapes, idx + 1, remaining - used);
  }
  return total;
}

}  // namespace

std::pair<long long, long long> basis_dimensions(int k, int m) {
  if (k < 0 || m < 1) throw precondition_error("basis_dimensions needs k >= 0, m >= 1");
  if (k == 0) return {1, 1};  // the unit spans both degree-0 pieces
  auto shapes = shapes_up_to(k, m);
  long long v = 0;
  for (const auto& s : shapes)
    if (s.degree == k) v += s.weight;
  long long h = count_multisets(shapes, 0, k);
  return {v, h};
}

HopfAlgebra::HopfAlgebra(int m) : m_(m) {
  if (m < 1 || m > 255) throw precondition_error("HopfAlgebra needs 1 <= m <= 255");
}

const std::vector<HopfAlgebra::TildeRow>& HopfAlgebra::tilde_rows(const Word& eta) const {
  {
    std::shared_lock lock(tilde_mutex_);
    auto it = tilde_cache_.find(eta);
    if (it != tilde_cache_.end()) return *it->second;
  }

  std::map<std::pair<Word, HopfMonomial>, int64_t> acc;
  if (eta.empty()) {
    acc[{Word(), HopfMonomial::unit()}] = 1;
  } else if (eta.first() != 0) {
    int letter = eta.first();
    for (const auto& row : tilde_rows(eta.tail()))
      acc[{row.left.prepend(letter), row.right}] += row.mult;
  } else {
    Word tail = eta.tail();
    for (const auto& row : tilde_rows(tail)) acc[{row.left.prepend(0), row.right}] += row.mult;
    // deshuffle the tail, then graft each left piece under a fresh letter x_j
    // paired with the j-th component on the right
    for (const auto& [xi, nu, k1] : unshuffle_counts(tail)) {
      const auto& sub = tilde_rows(xi);  // heap vector, stable across cache growth
      for (int j = 1; j <= m_; ++j) {
        CoordinateMap right_factor{j - 1, nu};
        for (const auto& row : sub)
          acc[{row.left.prepend(j), row.right.times(right_factor)}] += k1 * row.mult;
      }
    }
  }

  auto value = std::make_unique<std::vector<TildeRow>>();
  value->reserve(acc.size());
  for (const auto& [lm, c] : acc) value->push_back({lm.first, lm.second, c});
  std::unique_lock lock(tilde_mutex_);
  auto it = tilde_cache_.find(eta);
  if (it == tilde_cache_.end()) it = tilde_cache_.emplace(eta, std::move(value)).first;
  return *it->second;
}

static void check_word(const CoordinateMap& a, int m) {
  if (a.component < 0 || a.component >= m) throw precondition_error("component out of range");
  for (uint8_t l : a.word.letters())
    if (l > m) throw precondition_error("word uses letters beyond the alphabet");
}

HopfTensor HopfAlgebra::shuffle_coproduct(const CoordinateMap& a, int j) const {
  check_word(a, m_);
  if (j < 0 || j >= m_) throw precondition_error("component out of range");
  HopfTensor t;
  for (const auto& [u, v, c] : unshuffle_counts(a.word))
    t.add(HopfMonomial(CoordinateMap{a.component, u}), HopfMonomial(CoordinateMap{j, v}),
          Rat(static_cast<long>(c)));
  return t;
}

HopfTensor HopfAlgebra::tilde_coproduct(const CoordinateMap& a) const {
  check_word(a, m_);
  HopfTensor t;
  for (const auto& row : tilde_rows(a.word))
    t.add(HopfMonomial(CoordinateMap{a.component, row.left}), row.right,
          Rat(static_cast<long>(row.mult)));
  return t;
}

HopfTensor HopfAlgebra::reduced_coproduct(const CoordinateMap& a) const {
  HopfTensor t = tilde_coproduct(a);
  t.add(HopfMonomial(CoordinateMap{a.component, a.word}), HopfMonomial::unit(), -1);
  return t;
}

HopfTensor HopfAlgebra::coproduct(const CoordinateMap& a) const {
  HopfTensor t = tilde_coproduct(a);
  t.add(HopfMonomial::unit(), HopfMonomial(CoordinateMap{a.component, a.word}), 1);
  return t;
}

HopfTensor HopfAlgebra::coproduct(const HopfMonomial& mono) const {
  HopfTensor t;
  t.add(HopfMonomial::unit(), HopfMonomial::unit(), 1);
  for (const auto& f : mono.factors()) t = t * coproduct(f);
  return t;
}

HopfTensor HopfAlgebra::coproduct(const HopfPolynomial& p) const {
  HopfTensor t;
  for (const auto& [mono, c] : p.terms()) {
    HopfTensor tm = coproduct(mono);
    for (const auto& [lr, v] : tm.terms()) t.add(lr.first, lr.second, v * c);
  }
  return t;
}

HopfPolynomial HopfAlgebra::antipode(const CoordinateMap& a) const {
  check_word(a, m_);
  auto key = std::make_pair(a.component, a.word);
  {
    std::lock_guard lock(antipode_mutex_);
    auto it = antipode_cache_.find(key);
    if (it != antipode_cache_.end()) return it->second;
  }
  // S a = -a - sum S(a'(1)) a'(2) over the reduced coproduct
  HopfPolynomial s(HopfMonomial(a), -1);
  const auto& rows = tilde_rows(a.word);
  for (const auto& row : rows) {
    if (row.left == a.word && row.right.is_unit()) continue;
    HopfPolynomial left = antipode(CoordinateMap{a.component, row.left});
    for (const auto& [mono, c] : left.terms()) {
      Rat term = c * static_cast<long>(row.mult);
      s.add(mono.times(row.right), -term);
    }
  }
  std::lock_guard lock(antipode_mutex_);
  return antipode_cache_.emplace(std::move(key), std::move(s)).first->second;
}

HopfPolynomial HopfAlgebra::antipode(const HopfMonomial& mono) const {
  HopfPolynomial r(HopfMonomial::unit(), 1);
  for (const auto& f : mono.factors()) r = r * antipode(f);
  return r;
}

HopfPolynomial HopfAlgebra::antipode(const HopfPolynomial& p) const {
  HopfPolynomial r;
  for (const auto& [mono, c] : p.terms()) {
    HopfPolynomial sm = antipode(mono);
    for (const auto& [m2, c2] : sm.terms()) r.add(m2, c2 * c);
  }
  return r;
}

Rat eval_hopf(const HopfMonomial& mono, const Series& c) {
  Rat v = 1;
  for (const auto& f : mono.factors()) {
    v *= c.coeff(f.component, f.word);
    if (v == 0) return v;
  }
  return v;
}

Rat eval_hopf(const HopfPolynomial& p, const Series& c) {
  Rat v = 0;
  for (const auto& [mono, coef] : p.terms()) v += coef * eval_hopf(mono, c);
  return v;
}

namespace {

void enumerate_words(int m, int len, std::vector<Word>& out) {
  if (len == 0) {
    out.emplace_back();
    return;
  }
  std::vector<uint8_t> cur(static_cast<size_t>(len), 0);
  while (true) {
    out.emplace_back(cur);
    int pos = len - 1;
    while (pos >= 0 && cur[static_cast<size_t>(pos)] == m) {
      cur[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++cur[static_cast<size_t>(pos)];
  }
}

}  // namespace

Series HopfAlgebra::antipode_inverse(const Series& c, int trunc, Exec exec) const {
  if (c.dim() != m_ || c.alphabet().m != m_)
    throw precondition_error("antipode inverse needs a square series over this algebra's alphabet");
  int N = trunc < 0 ? c.trunc() : trunc;
  if (N > c.trunc()) throw precondition_error("requested order exceeds the truncation of the series");

  std::vector<std::vector<Word>> by_len(static_cast<size_t>(N) + 1);
  for (int len = 0; len <= N; ++len) enumerate_words(m_, len, by_len[static_cast<size_t>(len)]);

  Series inv(c.alphabet(), m_, N);

  if (exec == Exec::Serial) {
    std::vector<std::unordered_map<Word, Rat, WordHash>> memo(static_cast<size_t>(m_));
    std::function<const Rat&(int, const Word&)> value = [&](int i, const Word& w) -> const Rat& {
      auto& table = memo[static_cast<size_t>(i)];
      auto it = table.find(w);
      if (it != table.end()) return it->second;
      Rat v = -c.coeff(i, w);
      for (const auto& row : tilde_rows(w)) {
        if (row.left == w && row.right.is_unit()) continue;
        Rat rv = eval_hopf(row.right, c);
        if (rv == 0) continue;
        v -= static_cast<long>(row.mult) * value(i, row.left) * rv;
      }
      return table.emplace(w, std::move(v)).first->second;
    };
    for (int i = 0; i < m_; ++i)
      for (const auto& level : by_len)
        for (const auto& w : level) inv.set_coeff(i, w, value(i, w));
    return inv;
  }

  // warm the coproduct table level by level so the scalar phase only reads it
  for (size_t len = 1; len < by_len.size(); ++len) {
    const auto& level = by_len[len];
#pragma omp parallel for schedule(dynamic)
    for (size_t k = 0; k < level.size(); ++k) tilde_rows(level[k]);
  }

  // scalar recursion ordered by grading; all dependencies sit in lower degrees
  int max_deg = 2 * N + 1;
  std::vector<std::vector<std::pair<int, const Word*>>> by_degree(static_cast<size_t>(max_deg) + 1);
  std::vector<std::unordered_map<Word, Rat, WordHash>> val(static_cast<size_t>(m_));
  for (const auto& level : by_len)
    for (const auto& w : level) {
      int d = static_cast<int>(w.length() + w.count(0)) + 1;
      for (int i = 0; i < m_; ++i) {
        by_degree[static_cast<size_t>(d)].emplace_back(i, &w);
        val[static_cast<size_t>(i)].emplace(w, 0);
      }
    }
  for (const auto& level : by_degree) {
#pragma omp parallel for schedule(dynamic)
    for (size_t k = 0; k < level.size(); ++k) {
      auto [i, wp] = level[k];
      const Word& w = *wp;
      Rat v = -c.coeff(i, w);
      const auto& table = val[static_cast<size_t>(i)];
      for (const auto& row : tilde_rows(w)) {
        if (row.left == w && row.right.is_unit()) continue;
        Rat rv = eval_hopf(row.right, c);
        if (rv == 0) continue;
        v -= static_cast<long>(row.mult) * table.at(row.left) * rv;
      }
      val[static_cast<size_t>(i)].find(w)->second = std::move(v);
    }
  }
  for (int i = 0; i < m_; ++i)
    for (const auto& [w, v] : val[static_cast<size_t>(i)]) inv.set_coeff(i, w, v);
  return inv;
}

namespace {

std::string format_factor(const CoordinateMap& f) {
  return "a[" + std::to_string(f.component + 1) + "," + format_word(f.word) + "]";
}

std::string format_monomial(const HopfMonomial& mono) {
  if (mono.is_unit()) return "1";
  // display order: component ascending, larger word first
  std::vector<CoordinateMap> fs = mono.factors();
  std::stable_sort(fs.begin(), fs.end(), [](const CoordinateMap& a, const CoordinateMap& b) {
    if (a.component != b.component) return a.component < b.component;
    return b.word < a.word;
  });
  std::string s;
  for (size_t i = 0; i < fs.size(); ++i) {
    if (i) s += "·";
    s += format_factor(fs[i]);
  }
  return s;
}

void append_term(std::string& out, const Rat& c, const std::string& body, bool first) {
  bool neg = c < 0;
  Rat mag = neg ? Rat(-c) : c;
  if (first)
    out += neg ? "-" : "";
  else
    out += neg ? " - " : " + ";
  if (mag != 1 || body == "1") {
    out += rat_to_string(mag);
    if (body != "1") out += " ";
  }
  if (body != "1") out += body;
}

}  // namespace

std::string format_hopf(const HopfPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : p.terms()) {
    append_term(out, c, format_monomial(mono), first);
    first = false;
  }
  return out;
}

std::string format_hopf_tensor(const HopfTensor& t) {
  if (t.terms().empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [lr, c] : t.terms()) {
    std::string body = format_monomial(lr.first) + " (x) " + format_monomial(lr.second);
    append_term(out, c, body, first);
    first = false;
  }
  return out;
}

}  // namespace fliess
