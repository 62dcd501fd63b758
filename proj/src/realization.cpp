#include "fliess/realization.hpp"

#include <omp.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace fliess {

TaylorField::TaylorField(int nvars, int trunc) : nvars_(nvars), trunc_(trunc) {
  if (nvars < 0 || trunc < 0) throw precondition_error("bad Taylor field shape");
}

static int mi_degree(const MultiIndex& mi) {
  return static_cast<int>(std::accumulate(mi.begin(), mi.end(), 0u));
}

void TaylorField::add(const MultiIndex& mi, const Rat& c) {
  if (c == 0) return;
  if (static_cast<int>(mi.size()) != nvars_) throw precondition_error("multi-index arity mismatch");
  if (mi_degree(mi) > trunc_) return;
  auto it = coeffs_.find(mi);
  if (it == coeffs_.end()) {
    coeffs_.emplace(mi, c);
  } else {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

Rat TaylorField::coeff(const MultiIndex& mi) const {
  auto it = coeffs_.find(mi);
  return it == coeffs_.end() ? Rat(0) : it->second;
}

Rat TaylorField::constant_term() const { return coeff(MultiIndex(static_cast<size_t>(nvars_), 0)); }

TaylorField TaylorField::partial(int var) const {
  if (var < 0 || var >= nvars_) throw precondition_error("variable out of range");
  if (trunc_ < 1) throw precondition_error("Taylor degree exhausted");
  TaylorField d(nvars_, trunc_ - 1);
  for (const auto& [mi, c] : coeffs_) {
    unsigned e = mi[static_cast<size_t>(var)];
    if (e == 0) continue;
    MultiIndex lower = mi;
    --lower[static_cast<size_t>(var)];
    d.add(lower, c * static_cast<long>(e));
  }
  return d;
}

TaylorField TaylorField::embedded(int new_nvars, int offset) const {
  if (offset < 0 || offset + nvars_ > new_nvars) throw precondition_error("bad embedding");
  TaylorField r(new_nvars, trunc_);
  for (const auto& [mi, c] : coeffs_) {
    MultiIndex big(static_cast<size_t>(new_nvars), 0);
    std::copy(mi.begin(), mi.end(), big.begin() + offset);
    r.add(big, c);
  }
  return r;
}

TaylorField TaylorField::truncated(int new_trunc) const {
  if (new_trunc > trunc_) throw precondition_error("cannot raise a Taylor truncation");
  TaylorField r(nvars_, new_trunc);
  for (const auto& [mi, c] : coeffs_) r.add(mi, c);
  return r;
}

TaylorField operator+(const TaylorField& a, const TaylorField& b) {
  if (a.nvars_ != b.nvars_) throw precondition_error("Taylor arity mismatch");
  TaylorField r(a.nvars_, std::min(a.trunc_, b.trunc_));
  for (const auto& [mi, c] : a.coeffs_) r.add(mi, c);
  for (const auto& [mi, c] : b.coeffs_) r.add(mi, c);
  return r;
}

TaylorField operator-(const TaylorField& a, const TaylorField& b) { return a + b * Rat(-1); }

TaylorField operator*(const TaylorField& a, const TaylorField& b) {
  if (a.nvars_ != b.nvars_) throw precondition_error("Taylor arity mismatch");
  TaylorField r(a.nvars_, std::min(a.trunc_, b.trunc_));
  for (const auto& [ma, ca] : a.coeffs_) {
    int da = mi_degree(ma);
    for (const auto& [mb, cb] : b.coeffs_) {
      if (da + mi_degree(mb) > r.trunc_) continue;
      MultiIndex mi = ma;
      for (size_t k = 0; k < mi.size(); ++k) mi[k] += mb[k];
      r.add(mi, ca * cb);
    }
  }
  return r;
}

TaylorField TaylorField::operator*(const Rat& s) const {
  TaylorField r(nvars_, trunc_);
  if (s == 0) return r;
  for (const auto& [mi, c] : coeffs_) r.coeffs_.emplace(mi, c * s);
  return r;
}

TaylorField taylor_constant(int nvars, int trunc, const Rat& v) {
  TaylorField f(nvars, trunc);
  f.add(MultiIndex(static_cast<size_t>(nvars), 0), v);
  return f;
}

TaylorField taylor_variable(int nvars, int trunc, int var) {
  if (var < 0 || var >= nvars) throw precondition_error("variable out of range");
  TaylorField f(nvars, trunc);
  MultiIndex mi(static_cast<size_t>(nvars), 0);
  mi[static_cast<size_t>(var)] = 1;
  f.add(mi, 1);
  return f;
}

namespace {

TaylorField taylor_univariate(int nvars, int trunc, int var, const Rat& scale,
                              const std::function<Rat(unsigned)>& coeff_at) {
  if (var < 0 || var >= nvars) throw precondition_error("variable out of range");
  TaylorField f(nvars, trunc);
  Rat p = 1;
  for (unsigned k = 0; static_cast<int>(k) <= trunc; ++k) {
    Rat c = coeff_at(k) * p;
    if (c != 0) {
      MultiIndex mi(static_cast<size_t>(nvars), 0);
      mi[static_cast<size_t>(var)] = k;
      f.add(mi, c);
    }
    p *= scale;
  }
  return f;
}

}  // namespace

TaylorField taylor_sin(int nvars, int trunc, int var, const Rat& scale) {
  return taylor_univariate(nvars, trunc, var, scale, [](unsigned k) -> Rat {
    if (k % 2 == 0) return 0;
    Rat c = 1 / rat_factorial(k);
    return (k / 2) % 2 == 0 ? c : -c;
  });
}

TaylorField taylor_cos(int nvars, int trunc, int var, const Rat& scale) {
  return taylor_univariate(nvars, trunc, var, scale, [](unsigned k) -> Rat {
    if (k % 2 == 1) return 0;
    Rat c = 1 / rat_factorial(k);
    return (k / 2) % 2 == 0 ? c : -c;
  });
}

TaylorField taylor_exp(int nvars, int trunc, int var, const Rat& scale) {
  return taylor_univariate(nvars, trunc, var, scale,
                           [](unsigned k) -> Rat { return 1 / rat_factorial(k); });
}

TaylorField lie_derivative(const std::vector<TaylorField>& g, const TaylorField& h) {
  if (static_cast<int>(g.size()) != h.nvars())
    throw precondition_error("vector field arity must match the state dimension");
  if (h.trunc() < 1) throw precondition_error("Taylor degree exhausted");
  TaylorField r(h.nvars(), h.trunc() - 1);
  for (int k = 0; k < h.nvars(); ++k) {
    const TaylorField& gk = g[static_cast<size_t>(k)];
    if (gk.is_zero()) continue;
    r = r + h.partial(k) * gk;
  }
  return r;
}

static void validate_realization(const Realization& r) {
  if (r.n < 1 || r.m < 1 || r.l < 1) throw precondition_error("realization needs n, m, l >= 1");
  if (static_cast<int>(r.z0.size()) != r.n) throw precondition_error("z0 size mismatch");
  if (static_cast<int>(r.g.size()) != r.m + 1) throw precondition_error("need m+1 vector fields");
  for (const auto& gj : r.g) {
    if (static_cast<int>(gj.size()) != r.n) throw precondition_error("vector field arity mismatch");
    for (const auto& f : gj)
      if (f.nvars() != r.n || f.trunc() < r.degree)
        throw precondition_error("field degree below the realization degree");
  }
  if (static_cast<int>(r.h.size()) != r.l) throw precondition_error("need l output maps");
  for (const auto& f : r.h)
    if (f.nvars() != r.n || f.trunc() < r.degree)
      throw precondition_error("field degree below the realization degree");
}

Series series_from_realization(const Realization& r, int N, Exec exec) {
  validate_realization(r);
  if (N > r.degree)
    throw precondition_error("word length exceeds the Taylor degree of the realization");
  Series c(Alphabet(r.m), r.l, N);

  for (int i = 0; i < r.l; ++i) {
    // level k holds L_{g_eta} h_i for all words eta of length k, letters of
    // eta applied left to right
    std::vector<std::pair<Word, TaylorField>> level{{Word(), r.h[static_cast<size_t>(i)]}};
    c.set_coeff(i, Word(), level.front().second.constant_term());
    for (int len = 1; len <= N; ++len) {
      std::vector<std::pair<Word, TaylorField>> next(level.size() * static_cast<size_t>(r.m + 1));
      if (exec == Exec::Serial) {
        for (size_t p = 0; p < level.size(); ++p)
          for (int j = 0; j <= r.m; ++j)
            next[p * static_cast<size_t>(r.m + 1) + static_cast<size_t>(j)] = {
                level[p].first.append(j),
                lie_derivative(r.g[static_cast<size_t>(j)], level[p].second)};
      } else {
#pragma omp parallel for schedule(dynamic)
        for (size_t q = 0; q < next.size(); ++q) {
          size_t p = q / static_cast<size_t>(r.m + 1);
          int j = static_cast<int>(q % static_cast<size_t>(r.m + 1));
          next[q] = {level[p].first.append(j),
                     lie_derivative(r.g[static_cast<size_t>(j)], level[p].second)};
        }
      }
      for (auto& [w, f] : next) c.set_coeff(i, w, f.constant_term());
      level = std::move(next);
    }
  }
  return c;
}

std::vector<std::vector<Rat>> natural_response_coeffs(const Realization& r, int K) {
  validate_realization(r);
  if (K > r.degree)
    throw precondition_error("word length exceeds the Taylor degree of the realization");
  std::vector<std::vector<Rat>> out(static_cast<size_t>(r.l));
  for (int i = 0; i < r.l; ++i) {
    TaylorField f = r.h[static_cast<size_t>(i)];
    auto& row = out[static_cast<size_t>(i)];
    row.push_back(f.constant_term());
    for (int k = 1; k <= K; ++k) {
      f = lie_derivative(r.g[0], f);
      row.push_back(f.constant_term());
    }
  }
  return out;
}

Realization closed_loop_realization(const Realization& plant, const Realization& ctrl) {
  validate_realization(plant);
  validate_realization(ctrl);
  if (plant.l != ctrl.m || ctrl.l != plant.m)
    throw precondition_error("closed loop needs plant.l == ctrl.m and ctrl.l == plant.m");
  int degree = std::min(plant.degree, ctrl.degree);
  int n = plant.n + ctrl.n;

  auto embed_p = [&](const TaylorField& f) { return f.truncated(degree).embedded(n, 0); };
  auto embed_c = [&](const TaylorField& f) { return f.truncated(degree).embedded(n, plant.n); };

  Realization cl;
  cl.n = n;
  cl.m = plant.m;
  cl.l = plant.l;
  cl.degree = degree;
  cl.z0 = plant.z0;
  cl.z0.insert(cl.z0.end(), ctrl.z0.begin(), ctrl.z0.end());

  // drift: plant drift plus plant inputs fed by the controller output, and
  // controller drift plus controller inputs fed by the plant output
  std::vector<TaylorField> drift(static_cast<size_t>(n), TaylorField(n, degree));
  for (int k = 0; k < plant.n; ++k) {
    TaylorField f = embed_p(plant.g[0][static_cast<size_t>(k)]);
    for (int j = 1; j <= plant.m; ++j)
      f = f + embed_p(plant.g[static_cast<size_t>(j)][static_cast<size_t>(k)]) *
                  embed_c(ctrl.h[static_cast<size_t>(j - 1)]);
    drift[static_cast<size_t>(k)] = f;
  }
  for (int k = 0; k < ctrl.n; ++k) {
    TaylorField f = embed_c(ctrl.g[0][static_cast<size_t>(k)]);
    for (int j = 1; j <= ctrl.m; ++j)
      f = f + embed_c(ctrl.g[static_cast<size_t>(j)][static_cast<size_t>(k)]) *
                  embed_p(plant.h[static_cast<size_t>(j - 1)]);
    drift[static_cast<size_t>(plant.n + k)] = f;
  }
  cl.g.push_back(std::move(drift));

  // external inputs still enter through the plant channels only
  for (int j = 1; j <= plant.m; ++j) {
    std::vector<TaylorField> gj(static_cast<size_t>(n), TaylorField(n, degree));
    for (int k = 0; k < plant.n; ++k)
      gj[static_cast<size_t>(k)] = embed_p(plant.g[static_cast<size_t>(j)][static_cast<size_t>(k)]);
    cl.g.push_back(std::move(gj));
  }

  for (int i = 0; i < plant.l; ++i) cl.h.push_back(embed_p(plant.h[static_cast<size_t>(i)]));
  return cl;
}

Realization inverse_realization(const Realization& r) {
  validate_realization(r);
  if (r.l != r.m) throw precondition_error("inverse realization needs l == m");
  Realization inv = r;
  for (int k = 0; k < r.n; ++k) {
    TaylorField f = r.g[0][static_cast<size_t>(k)].truncated(r.degree);
    for (int j = 1; j <= r.m; ++j)
      f = f - r.g[static_cast<size_t>(j)][static_cast<size_t>(k)].truncated(r.degree) *
                  r.h[static_cast<size_t>(j - 1)].truncated(r.degree);
    inv.g[0][static_cast<size_t>(k)] = f;
  }
  for (int i = 0; i < r.l; ++i) inv.h[static_cast<size_t>(i)] = r.h[static_cast<size_t>(i)] * Rat(-1);
  return inv;
}

namespace {

using nlohmann::json;

Rat json_rat(const json& v, const char* what) {
  if (v.is_number_integer()) return Rat(static_cast<long>(v.get<int64_t>()));
  if (v.is_string()) return rat_from_string(v.get<std::string>());
  throw parse_error(std::string("expected integer or rational string for ") + what);
}

MultiIndex parse_multi_index(const std::string& key, int nvars) {
  std::istringstream in(key);
  MultiIndex mi;
  long e = 0;
  while (in >> e) {
    if (e < 0) throw parse_error("negative exponent in multi-index '" + key + "'");
    mi.push_back(static_cast<unsigned>(e));
  }
  if (!in.eof()) throw parse_error("bad multi-index '" + key + "'");
  if (static_cast<int>(mi.size()) != nvars)
    throw parse_error("multi-index '" + key + "' does not match the state dimension");
  return mi;
}

// shift a polynomial in z to the expansion point z0: substitute z = z0 + w
TaylorField recenter(const TaylorField& poly, const std::vector<Rat>& z0) {
  int n = poly.nvars();
  TaylorField out(n, poly.trunc());
  for (const auto& [mi, c] : poly.coeffs()) {
    TaylorField term = taylor_constant(n, poly.trunc(), c);
    for (int k = 0; k < n; ++k) {
      unsigned e = mi[static_cast<size_t>(k)];
      if (e == 0) continue;
      TaylorField base = taylor_variable(n, poly.trunc(), k) +
                         taylor_constant(n, poly.trunc(), z0[static_cast<size_t>(k)]);
      for (unsigned p = 0; p < e; ++p) term = term * base;
    }
    out = out + term;
  }
  return out;
}

TaylorField parse_field(const json& spec, int n, int degree, const std::vector<Rat>& z0,
                        bool centered) {
  if (!spec.is_object()) throw parse_error("field must be a JSON object");
  if (spec.contains("taylor")) {
    const json& table = spec.at("taylor");
    if (!table.is_object()) throw parse_error("'taylor' must map multi-indices to coefficients");
    TaylorField poly(n, degree);
    for (const auto& [key, value] : table.items())
      poly.add(parse_multi_index(key, n), json_rat(value, "taylor coefficient"));
    return centered ? poly : recenter(poly, z0);
  }
  if (spec.contains("builtin")) {
    std::string name = spec.at("builtin").get<std::string>();
    if (!spec.contains("var")) throw parse_error("builtin field needs 'var'");
    int var = spec.at("var").get<int>() - 1;  // 1-based in the file
    if (var < 0 || var >= n) throw parse_error("builtin 'var' out of range");
    Rat scale = spec.contains("scale") ? json_rat(spec.at("scale"), "scale") : Rat(1);
    if (z0[static_cast<size_t>(var)] != 0)
      throw precondition_error("builtin fields need expansion point 0 in their variable");
    if (name == "sin") return taylor_sin(n, degree, var, scale);
    if (name == "cos") return taylor_cos(n, degree, var, scale);
    if (name == "exp") return taylor_exp(n, degree, var, scale);
    throw parse_error("unknown builtin '" + name + "'");
  }
  throw parse_error("field needs 'taylor' or 'builtin'");
}

}  // namespace

Realization load_realization_text(const std::string& json_text, int degree) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad realization JSON: ") + e.what());
  }
  try {
    Realization r;
    r.n = doc.at("n").get<int>();
    r.m = doc.at("m").get<int>();
    r.l = doc.at("l").get<int>();
    r.degree = degree;
    if (doc.contains("degree") && doc.at("degree").get<int>() < degree)
      throw precondition_error("realization file caps the Taylor degree below the request");
    if (r.n < 1 || r.m < 1 || r.l < 1) throw parse_error("realization needs n, m, l >= 1");
    for (const auto& v : doc.at("z0")) r.z0.push_back(json_rat(v, "z0"));
    if (static_cast<int>(r.z0.size()) != r.n) throw parse_error("z0 size mismatch");
    bool centered = doc.value("centered", false);
    const json& g = doc.at("g");
    if (!g.is_array() || static_cast<int>(g.size()) != r.m + 1)
      throw parse_error("'g' must list m+1 vector fields");
    for (const auto& gj : g) {
      if (!gj.is_array() || static_cast<int>(gj.size()) != r.n)
        throw parse_error("each vector field needs n components");
      std::vector<TaylorField> field;
      for (const auto& comp : gj) field.push_back(parse_field(comp, r.n, degree, r.z0, centered));
      r.g.push_back(std::move(field));
    }
    const json& h = doc.at("h");
    if (!h.is_array() || static_cast<int>(h.size()) != r.l)
      throw parse_error("'h' must list l output maps");
    for (const auto& comp : h) r.h.push_back(parse_field(comp, r.n, degree, r.z0, centered));
    validate_realization(r);
    return r;
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad realization JSON: ") + e.what());
  }
}

Realization load_realization_file(const std::string& path, int degree) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_realization_text(buf.str(), degree);
}

std::string realization_to_json(const Realization& r) {
  json doc;
  doc["n"] = r.n;
  doc["m"] = r.m;
  doc["l"] = r.l;
  doc["degree"] = r.degree;
  json z0 = json::array();
  for (const auto& v : r.z0) z0.push_back(rat_to_string(v));
  doc["z0"] = z0;
  // fields are emitted already recentered, so the absolute-coordinate reload
  // shift must see a zero center
  auto field_json = [&](const TaylorField& f) {
    json table = json::object();
    for (const auto& [mi, c] : f.coeffs()) {
      std::string key;
      for (size_t k = 0; k < mi.size(); ++k) {
        if (k) key += ' ';
        key += std::to_string(mi[k]);
      }
      table[key] = rat_to_string(c);
    }
    return json{{"taylor", table}};
  };
  json g = json::array();
  for (const auto& gj : r.g) {
    json comps = json::array();
    for (const auto& f : gj) comps.push_back(field_json(f));
    g.push_back(comps);
  }
  doc["g"] = g;
  json h = json::array();
  for (const auto& f : r.h) h.push_back(field_json(f));
  doc["h"] = h;
  doc["centered"] = true;
  return doc.dump(2);
}

}  // namespace fliess
