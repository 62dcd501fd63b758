#include "fliess/series.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fliess {

Series::Series(Alphabet alphabet, int dim, int trunc)
    : alphabet_(alphabet), dim_(dim), trunc_(trunc), comps_(static_cast<size_t>(dim)) {
  if (dim < 1) throw precondition_error("series needs at least one component");
  if (trunc < 0) throw precondition_error("negative truncation order");
}

const std::map<Word, Rat>& Series::component(int i) const {
  if (i < 0 || i >= dim_) throw precondition_error("component index out of range");
  return comps_[static_cast<size_t>(i)];
}

void Series::check_slot(int i, const Word& w) const {
  if (i < 0 || i >= dim_) throw precondition_error("component index out of range");
  if (!w.fits(alphabet_)) throw precondition_error("word uses letters beyond the alphabet");
  if (static_cast<int>(w.length()) > trunc_)
    throw precondition_error("word longer than the truncation order");
}

const Rat& Series::coeff(int i, const Word& w) const {
  check_slot(i, w);
  static const Rat kZero = 0;
  const auto& comp = comps_[static_cast<size_t>(i)];
  auto it = comp.find(w);
  return it == comp.end() ? kZero : it->second;
}

void Series::set_coeff(int i, const Word& w, Rat v) {
  check_slot(i, w);
  auto& comp = comps_[static_cast<size_t>(i)];
  if (v == 0)
    comp.erase(w);
  else
    comp[w] = std::move(v);
}

void Series::add_coeff(int i, const Word& w, const Rat& v) {
  if (v == 0) return;
  check_slot(i, w);
  auto& comp = comps_[static_cast<size_t>(i)];
  auto it = comp.find(w);
  if (it == comp.end()) {
    comp.emplace(w, v);
  } else {
    it->second += v;
    if (it->second == 0) comp.erase(it);
  }
}

bool Series::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const auto& c) { return c.empty(); });
}

Series unit_series(Alphabet a, int trunc) {
  Series s(a, 1, trunc);
  s.set_coeff(0, Word(), 1);
  return s;
}

static void require_compatible(const Series& a, const Series& b) {
  if (a.alphabet() != b.alphabet()) throw precondition_error("alphabet mismatch");
  if (a.dim() != b.dim()) throw precondition_error("component count mismatch");
}

Series add(const Series& a, const Series& b) {
  require_compatible(a, b);
  Series r(a.alphabet(), a.dim(), std::min(a.trunc(), b.trunc()));
  for (int i = 0; i < a.dim(); ++i) {
    for (const auto& [w, c] : a.component(i))
      if (static_cast<int>(w.length()) <= r.trunc()) r.add_coeff(i, w, c);
    for (const auto& [w, c] : b.component(i))
      if (static_cast<int>(w.length()) <= r.trunc()) r.add_coeff(i, w, c);
  }
  return r;
}

Series sub(const Series& a, const Series& b) { return add(a, negate(b)); }

Series negate(const Series& a) { return scale(-1, a); }

Series scale(const Rat& s, const Series& a) {
  Series r(a.alphabet(), a.dim(), a.trunc());
  if (s == 0) return r;
  for (int i = 0; i < a.dim(); ++i)
    for (const auto& [w, c] : a.component(i)) r.set_coeff(i, w, s * c);
  return r;
}

Series prepend_letter(int letter, const Series& a) {
  if (letter < 0 || letter > a.alphabet().m) throw precondition_error("letter outside alphabet");
  Series r(a.alphabet(), a.dim(), a.trunc());
  for (int i = 0; i < a.dim(); ++i)
    for (const auto& [w, c] : a.component(i))
      if (static_cast<int>(w.length()) < r.trunc()) r.set_coeff(i, w.prepend(letter), c);
  return r;
}

Series truncate_series(const Series& a, int n) {
  if (n > a.trunc())
    throw precondition_error("cannot raise a truncation order (coefficients unknown)");
  Series r(a.alphabet(), a.dim(), n);
  for (int i = 0; i < a.dim(); ++i)
    for (const auto& [w, c] : a.component(i))
      if (static_cast<int>(w.length()) <= n) r.set_coeff(i, w, c);
  return r;
}

namespace {

using Comp = std::map<Word, Rat>;

void shuffle_into(Comp& acc, const Word& u, const Rat& cu, const Word& v, const Rat& cv) {
  Rat cc = cu * cv;
  for (const auto& [w, n] : shuffle_counts(u, v)) {
    auto it = acc.find(w);
    if (it == acc.end()) {
      acc.emplace(w, cc * static_cast<long>(n));
    } else {
      it->second += cc * static_cast<long>(n);
      if (it->second == 0) acc.erase(it);
    }
  }
}

}  // namespace

Series shuffle_series(const Series& a, const Series& b, Exec exec) {
  if (a.alphabet() != b.alphabet()) throw precondition_error("alphabet mismatch");
  if (a.dim() != 1 || b.dim() != 1)
    throw precondition_error("shuffle product is defined for scalar (one component) series");
  int N = std::min(a.trunc(), b.trunc());
  Series r(a.alphabet(), 1, N);

  std::vector<std::pair<const Word*, const Rat*>> av, bv;
  for (const auto& [w, c] : a.component(0))
    if (static_cast<int>(w.length()) <= N) av.emplace_back(&w, &c);
  for (const auto& [w, c] : b.component(0))
    if (static_cast<int>(w.length()) <= N) bv.emplace_back(&w, &c);

  if (exec == Exec::Serial) {
    Comp acc;
    for (const auto& [u, cu] : av)
      for (const auto& [v, cv] : bv)
        if (static_cast<int>(u->length() + v->length()) <= N) shuffle_into(acc, *u, *cu, *v, *cv);
    for (auto& [w, c] : acc) r.set_coeff(0, w, std::move(c));
    return r;
  }

  int nthreads = omp_get_max_threads();
  std::vector<Comp> partial(static_cast<size_t>(nthreads));
#pragma omp parallel for schedule(dynamic)
  for (size_t k = 0; k < av.size(); ++k) {
    Comp& acc = partial[static_cast<size_t>(omp_get_thread_num())];
    const auto& [u, cu] = av[k];
    for (const auto& [v, cv] : bv)
      if (static_cast<int>(u->length() + v->length()) <= N) shuffle_into(acc, *u, *cu, *v, *cv);
  }
  Comp acc;
  for (auto& p : partial)
    for (auto& [w, c] : p) {
      auto it = acc.find(w);
      if (it == acc.end()) {
        acc.emplace(w, std::move(c));
      } else {
        it->second += c;
        if (it->second == 0) acc.erase(it);
      }
    }
  for (auto& [w, c] : acc) r.set_coeff(0, w, std::move(c));
  return r;
}

int order(const Series& a) {
  int best = kInfiniteOrder;
  for (int i = 0; i < a.dim(); ++i) {
    const auto& comp = a.component(i);
    if (!comp.empty()) best = std::min(best, static_cast<int>(comp.begin()->first.length()));
  }
  return best;
}

double ultrametric_distance(const Series& a, const Series& b) {
  int o = order(sub(a, b));
  if (o == kInfiniteOrder) return 0.0;
  return std::ldexp(1.0, -o);  // (1/2)^o
}

std::string format_series(const Series& c) {
  std::ostringstream out;
  out << "fps m=" << c.alphabet().m << " l=" << c.dim() << " N=" << c.trunc() << "\n";
  for (int i = 0; i < c.dim(); ++i)
    for (const auto& [w, v] : c.component(i))
      out << (i + 1) << ' ' << rat_to_string(v) << ' ' << format_word(w) << "\n";
  return out.str();
}

Series parse_series(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw parse_error("missing series header");
  int m = 0, l = 0, N = 0;
  {
    std::istringstream hs(header);
    std::string tag, fm, fl, fn;
    hs >> tag >> fm >> fl >> fn;
    std::string rest;
    if (tag != "fps" || hs >> rest) throw parse_error("bad header '" + header + "'");
    auto field = [](const std::string& kv, const char* key) {
      std::string prefix = std::string(key) + "=";
      if (kv.rfind(prefix, 0) != 0) throw parse_error("bad header field '" + kv + "'");
      try {
        size_t pos = 0;
        int v = std::stoi(kv.substr(prefix.size()), &pos);
        if (pos != kv.size() - prefix.size()) throw parse_error("bad header field '" + kv + "'");
        return v;
      } catch (const parse_error&) {
        throw;
      } catch (...) {
        throw parse_error("bad header field '" + kv + "'");
      }
    };
    m = field(fm, "m");
    l = field(fl, "l");
    N = field(fn, "N");
  }
  if (m < 1 || m > 255) throw parse_error("header m out of range");
  if (l < 1) throw parse_error("header l out of range");
  if (N < 0) throw parse_error("header N out of range");
  Series s(Alphabet(m), l, N);
  std::string line;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int comp = 0;
    std::string rat, word, rest;
    if (!(ls >> comp >> rat >> word) || (ls >> rest))
      throw parse_error("bad series line " + std::to_string(lineno));
    if (comp < 1 || comp > l) throw parse_error("component out of range on line " + std::to_string(lineno));
    Word w = parse_word(word);
    if (!w.fits(s.alphabet())) throw parse_error("letter beyond alphabet on line " + std::to_string(lineno));
    if (static_cast<int>(w.length()) > N)
      throw parse_error("word exceeds truncation on line " + std::to_string(lineno));
    if (s.coeff(comp - 1, w) != 0) throw parse_error("duplicate term on line " + std::to_string(lineno));
    s.set_coeff(comp - 1, w, rat_from_string(rat));
  }
  return s;
}

Series parse_series_text(const std::string& text) {
  std::istringstream in(text);
  return parse_series(in);
}

Series load_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_series(in);
}

}  // namespace fliess
