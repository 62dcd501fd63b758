#include "fliess/fliess_eval.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace fliess {

void SampledSignal::validate() const {
  if (samples.size() < 2) throw precondition_error("need at least two samples");
  if (!(t1 > t0)) throw precondition_error("need t1 > t0");
  size_t m = samples.front().size();
  for (const auto& row : samples) {
    if (row.size() != m) throw precondition_error("ragged sample rows");
    for (double v : row)
      if (!std::isfinite(v)) throw precondition_error("non-finite sample");
  }
}

SampledSignal SampledSignal::zero(int m, double t0, double t1, size_t points) {
  SampledSignal u;
  u.t0 = t0;
  u.t1 = t1;
  u.samples.assign(points, std::vector<double>(static_cast<size_t>(m), 0.0));
  u.validate();
  return u;
}

namespace {

// cumulative composite trapezoid of f against the grid step h
std::vector<double> cumtrapz(const std::vector<double>& f, double h) {
  std::vector<double> F(f.size(), 0.0);
  for (size_t k = 1; k < f.size(); ++k) F[k] = F[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
  return F;
}

// input channel on the grid; channel 0 is the constant 1 attached to x0
std::vector<double> channel(const SampledSignal& u, int letter) {
  std::vector<double> v(u.points(), 1.0);
  if (letter > 0)
    for (size_t k = 0; k < u.points(); ++k) v[k] = u.samples[k][static_cast<size_t>(letter - 1)];
  return v;
}

// E tables for every suffix of the given words
std::map<Word, std::vector<double>> suffix_integrals(const std::set<Word>& words,
                                                     const SampledSignal& u, Exec exec) {
  std::set<Word> closure;
  for (const Word& w : words) {
    Word s = w;
    while (true) {
      if (!closure.insert(s).second) break;
      if (s.empty()) break;
      s = s.tail();
    }
  }
  size_t max_len = 0;
  for (const Word& w : closure) max_len = std::max(max_len, w.length());
  std::vector<std::vector<const Word*>> levels(max_len + 1);
  for (const Word& w : closure) levels[w.length()].push_back(&w);

  double h = u.step();
  std::map<Word, std::vector<double>> table;
  table.emplace(Word(), std::vector<double>(u.points(), 1.0));
  for (size_t len = 1; len <= max_len; ++len) {
    const auto& level = levels[len];
    std::vector<std::vector<double>*> slots(level.size());
    for (size_t k = 0; k < level.size(); ++k) slots[k] = &table[*level[k]];
    auto fill = [&](size_t k) {
      const Word& w = *level[k];
      const auto& inner = table.at(w.tail());
      std::vector<double> integrand = channel(u, w.first());
      for (size_t g = 0; g < integrand.size(); ++g) integrand[g] *= inner[g];
      *slots[k] = cumtrapz(integrand, h);
    };
    if (exec == Exec::Serial) {
      for (size_t k = 0; k < level.size(); ++k) fill(k);
    } else {
#pragma omp parallel for schedule(dynamic)
      for (size_t k = 0; k < level.size(); ++k) fill(k);
    }
  }
  return table;
}

double interp_at(const std::vector<double>& F, double t0, double h, double t) {
  double pos = (t - t0) / h;
  auto last = static_cast<double>(F.size() - 1);
  if (pos <= 0.0) return F.front();
  if (pos >= last) return F.back();
  size_t k = static_cast<size_t>(pos);
  double frac = pos - static_cast<double>(k);
  return F[k] * (1.0 - frac) + F[k + 1] * frac;
}

}  // namespace

double iterated_integral(const Word& eta, const SampledSignal& u, double t) {
  u.validate();
  for (uint8_t l : eta.letters())
    if (l > u.inputs()) throw precondition_error("word letter beyond the input channels");
  if (t < u.t0 - 1e-12 || t > u.t1 + 1e-12)
    throw precondition_error("evaluation time outside the sampled horizon");
  auto table = suffix_integrals({eta}, u, Exec::Serial);
  return interp_at(table.at(eta), u.t0, u.step(), t);
}

std::vector<std::vector<double>> eval_fliess(const Series& c, const SampledSignal& u, Exec exec) {
  u.validate();
  if (u.inputs() != c.alphabet().m)
    throw precondition_error("input channels must match the series alphabet");
  std::set<Word> words;
  for (int i = 0; i < c.dim(); ++i)
    for (const auto& [w, v] : c.component(i)) words.insert(w);
  auto table = suffix_integrals(words, u, exec);

  std::vector<std::vector<double>> y(u.points(), std::vector<double>(static_cast<size_t>(c.dim()), 0.0));
  for (int i = 0; i < c.dim(); ++i)
    for (const auto& [w, v] : c.component(i)) {
      double cv = v.get_d();
      const auto& E = table.at(w);
      for (size_t g = 0; g < u.points(); ++g) y[g][static_cast<size_t>(i)] += cv * E[g];
    }
  return y;
}

double TaylorResponse::eval(double t) const {
  double acc = 0.0;
  for (size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k].get_d();
  return acc;
}

std::vector<TaylorResponse> natural_response_taylor(const Series& c, int order) {
  if (order < 0) throw precondition_error("negative order");
  if (order > c.trunc()) throw precondition_error("order exceeds the truncation of the series");
  std::vector<TaylorResponse> out(static_cast<size_t>(c.dim()));
  for (int i = 0; i < c.dim(); ++i) {
    auto& coeffs = out[static_cast<size_t>(i)].coeffs;
    coeffs.resize(static_cast<size_t>(order) + 1);
    for (int k = 0; k <= order; ++k)
      coeffs[static_cast<size_t>(k)] = c.coeff(i, Word::repeated(0, static_cast<size_t>(k))) /
                                       rat_factorial(static_cast<unsigned>(k));
  }
  return out;
}

GrowthFit growth_fit(const std::vector<Rat>& by_length, GrowthMode mode, int from, int to) {
  if (from < 0 || to < from) throw precondition_error("bad fit range");
  std::vector<double> xs, ys;
  for (int k = from; k <= to && k < static_cast<int>(by_length.size()); ++k) {
    const Rat& c = by_length[static_cast<size_t>(k)];
    if (c == 0) continue;
    Rat v = abs(c);
    if (mode == GrowthMode::Local) v /= rat_factorial(static_cast<unsigned>(k));
    xs.push_back(static_cast<double>(k));
    ys.push_back(std::log(v.get_d()));
  }
  if (xs.size() < 3) throw precondition_error("growth fit needs at least three nonzero points");
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  GrowthFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.m_estimate = std::exp(fit.slope);
  return fit;
}

std::vector<Rat> length_profile(const Series& c, int component) {
  std::vector<Rat> prof(static_cast<size_t>(c.trunc()) + 1, Rat(0));
  for (const auto& [w, v] : c.component(component)) {
    Rat a = abs(v);
    auto& slot = prof[w.length()];
    if (a > slot) slot = a;
  }
  return prof;
}

std::optional<std::string> convergence_warning(const Series& c, double input_bound,
                                               double horizon) {
  // estimate the geometric constant from the series itself; stay quiet when
  // there is not enough data for a fit
  GrowthFit fit;
  try {
    std::vector<Rat> prof = length_profile(c, 0);
    for (int i = 1; i < c.dim(); ++i) {
      auto p = length_profile(c, i);
      for (size_t k = 0; k < prof.size(); ++k)
        if (p[k] > prof[k]) prof[k] = p[k];
    }
    fit = growth_fit(prof, GrowthMode::Local, 1, c.trunc());
  } catch (const precondition_error&) {
    return std::nullopt;
  }
  if (fit.m_estimate <= 0.0) return std::nullopt;
  double bound = std::max(1.0, input_bound);
  double radius = 1.0 / (fit.m_estimate * (c.alphabet().m + 1) * bound);
  if (horizon <= radius) return std::nullopt;
  std::ostringstream msg;
  msg << "horizon " << horizon << " exceeds the estimated convergence radius " << radius
      << " (fitted M = " << fit.m_estimate << "); the truncated sum may be unreliable";
  return msg.str();
}

void write_response_csv(std::ostream& out, const std::vector<double>& times,
                        const std::vector<std::vector<double>>& y) {
  out << "t";
  if (!y.empty())
    for (size_t i = 0; i < y.front().size(); ++i) out << ",y" << (i + 1);
  out << "\n";
  out.precision(12);
  for (size_t k = 0; k < times.size(); ++k) {
    out << times[k];
    for (double v : y[k]) out << ',' << v;
    out << "\n";
  }
}

void write_growth_csv(std::ostream& out, const std::vector<Rat>& by_length, GrowthMode mode,
                      int from, int to, const GrowthFit& fit) {
  out << "length,log_coeff,fit\n";
  out.precision(12);
  for (int k = from; k <= to && k < static_cast<int>(by_length.size()); ++k) {
    const Rat& c = by_length[static_cast<size_t>(k)];
    if (c == 0) continue;
    Rat v = abs(c);
    if (mode == GrowthMode::Local) v /= rat_factorial(static_cast<unsigned>(k));
    out << k << ',' << std::log(v.get_d()) << ',' << (fit.intercept + fit.slope * k) << "\n";
  }
}

SampledSignal parse_signal_csv(std::istream& in) {
  SampledSignal u;
  std::vector<double> times;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.find_first_not_of("0123456789+-.eE, \t\r") != std::string::npos)
      continue;  // header row
    std::istringstream ls(line);
    std::vector<double> row;
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        size_t pos = 0;
        row.push_back(std::stod(cell, &pos));
        while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
        if (pos != cell.size()) throw parse_error("");
      } catch (...) {
        throw parse_error("bad CSV number on line " + std::to_string(lineno));
      }
    }
    if (row.empty()) throw parse_error("empty CSV row on line " + std::to_string(lineno));
    times.push_back(row.front());
    u.samples.emplace_back(row.begin() + 1, row.end());
  }
  if (times.size() < 2) throw parse_error("need at least two CSV samples");
  u.t0 = times.front();
  u.t1 = times.back();
  double h = (u.t1 - u.t0) / static_cast<double>(times.size() - 1);
  if (!(h > 0)) throw parse_error("CSV times must increase");
  for (size_t k = 0; k < times.size(); ++k)
    if (std::abs(times[k] - (u.t0 + h * static_cast<double>(k))) > 1e-9 * std::max(1.0, std::abs(u.t1)))
      throw parse_error("CSV times must form a uniform grid");
  u.validate();
  return u;
}

SampledSignal load_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_signal_csv(in);
}

}  // namespace fliess
