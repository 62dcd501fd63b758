#include "fliess/composition.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace fliess {

namespace {

using Comp = std::map<Word, Rat>;

enum class Mode { Plain, Modified };  // psi vs phi letter action

void add_into(Comp& acc, const Word& w, const Rat& v) {
  if (v == 0) return;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, v);
  } else {
    it->second += v;
    if (it->second == 0) acc.erase(it);
  }
}

// One letter of the fold: e -> [xi e if Modified and i>0] + x0 (d_i sh e),
// where d_0 is 1 (Plain) or 0 (Modified). Truncated at N.
Comp apply_letter(int letter, const Comp& e, const Series& d, int N, Mode mode) {
  Comp out;
  if (letter == 0) {
    // both modes: x0 e
    for (const auto& [w, c] : e)
      if (static_cast<int>(w.length()) < N) add_into(out, w.prepend(0), c);
    return out;
  }
  if (mode == Mode::Modified) {
    for (const auto& [w, c] : e)
      if (static_cast<int>(w.length()) < N) add_into(out, w.prepend(letter), c);
  }
  const auto& di = d.component(letter - 1);
  for (const auto& [u, cu] : di)
    for (const auto& [v, cv] : e) {
      if (static_cast<int>(u.length() + v.length()) >= N) continue;
      Rat cc = cu * cv;
      for (const auto& [w, n] : shuffle_counts(u, v))
        add_into(out, w.prepend(0), cc * static_cast<long>(n));
    }
  return out;
}

// suffix closure of the support of c, grouped by length
std::vector<std::vector<Word>> suffix_levels(const Series& c, int N) {
  std::set<Word> seen;
  for (int i = 0; i < c.dim(); ++i)
    for (const auto& [w, v] : c.component(i)) {
      if (static_cast<int>(w.length()) > N) continue;
      Word s = w;
      while (true) {
        if (!seen.insert(s).second) break;
        if (s.empty()) break;
        s = s.tail();
      }
    }
  std::vector<std::vector<Word>> levels(static_cast<size_t>(N) + 1);
  for (const auto& w : seen) levels[w.length()].push_back(w);
  return levels;
}

// Table of images word -> (psi|phi)_d(word)(1) for every suffix of support(c).
std::map<Word, Comp> image_table(const Series& c, const Series& d, int N, Mode mode, Exec exec) {
  std::map<Word, Comp> table;
  if (exec == Exec::Serial) {
    std::function<const Comp&(const Word&)> image = [&](const Word& w) -> const Comp& {
      auto it = table.find(w);
      if (it != table.end()) return it->second;
      Comp value;
      if (w.empty())
        value.emplace(Word(), 1);
      else
        value = apply_letter(w.first(), image(w.tail()), d, N, mode);
      return table.emplace(w, std::move(value)).first->second;
    };
    for (int i = 0; i < c.dim(); ++i)
      for (const auto& [w, v] : c.component(i))
        if (static_cast<int>(w.length()) <= N) image(w);
    return table;
  }

  auto levels = suffix_levels(c, N);
  for (const auto& w : levels[0]) table.emplace(w, Comp{{Word(), Rat(1)}});
  for (size_t len = 1; len < levels.size(); ++len) {
    const auto& level = levels[len];
    std::vector<Comp*> slots(level.size());
    for (size_t k = 0; k < level.size(); ++k) slots[k] = &table[level[k]];
#pragma omp parallel for schedule(dynamic)
    for (size_t k = 0; k < level.size(); ++k) {
      const Word& w = level[k];
      *slots[k] = apply_letter(w.first(), table.at(w.tail()), d, N, mode);
    }
  }
  return table;
}

Series compose_impl(const Series& c, const Series& d, Mode mode, Exec exec) {
  if (c.alphabet().m != d.dim())
    throw precondition_error("composition needs the outer alphabet to have inner-components + 1 letters");
  int N = std::min(c.trunc(), d.trunc());
  auto table = image_table(c, d, N, mode, exec);
  Series r(d.alphabet(), c.dim(), N);
  for (int i = 0; i < c.dim(); ++i)
    for (const auto& [w, v] : c.component(i)) {
      if (static_cast<int>(w.length()) > N) continue;
      for (const auto& [u, cu] : table.at(w)) r.add_coeff(i, u, v * cu);
    }
  return r;
}

}  // namespace

Series compose(const Series& c, const Series& d, Exec exec) {
  return compose_impl(c, d, Mode::Plain, exec);
}

Series mod_compose(const Series& c, const Series& d, Exec exec) {
  if (c.alphabet() != d.alphabet()) throw precondition_error("modified composition needs one alphabet");
  return compose_impl(c, d, Mode::Modified, exec);
}

Series comp_inverse_fixed_point(const Series& c, int trunc, Exec exec) {
  if (c.dim() != c.alphabet().m)
    throw precondition_error("composition inverse needs a square series (components == inputs)");
  int N = trunc < 0 ? c.trunc() : trunc;
  if (N > c.trunc()) throw precondition_error("requested order exceeds the truncation of the series");
  Series minus_c = negate(truncate_series(c, N));
  Series e = minus_c;
  for (int step = 0; step <= N + 1; ++step) {
    Series next = mod_compose(minus_c, e, exec);
    if (order(sub(next, e)) > N) return next;
    e = std::move(next);
  }
  throw precondition_error("fixed point failed to settle (internal error)");
}

}  // namespace fliess
