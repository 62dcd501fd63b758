#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fliess/feedback.hpp"
#include "fliess/fixtures.hpp"
#include "fliess/realization.hpp"
#include "oracles.hpp"

using namespace fliess;

namespace {

MultiIndex mi(std::initializer_list<unsigned> e) { return MultiIndex(e); }

Series axle_plant(int N) { return series_from_realization(load_realization_text(fixtures::axle_json(), N + 1), N, Exec::Serial); }

}  // namespace

TEST_CASE("taylor fields accumulate and cap at the truncation") {
  TaylorField f(2, 3);
  f.add(mi({1, 0}), 3);
  f.add(mi({1, 0}), Rat(-1, 2));
  f.add(mi({0, 0}), 7);
  f.add(mi({2, 2}), 5);  // beyond degree, dropped
  CHECK(f.coeff(mi({1, 0})) == Rat(5, 2));
  CHECK(f.coeff(mi({0, 1})) == 0);
  CHECK(f.constant_term() == 7);
  CHECK(f.coeff(mi({2, 2})) == 0);
  CHECK_THROWS_AS(f.add(mi({1, 0, 0}), 1), precondition_error);
  CHECK_THROWS_AS(TaylorField(-1, 2), precondition_error);

  f.add(mi({1, 0}), Rat(-5, 2));
  CHECK(f.coeff(mi({1, 0})) == 0);
  CHECK(f.coeffs().count(mi({1, 0})) == 0);  // cancelled entries leave the map
}

TEST_CASE("taylor calculus") {
  // f = w0^2 w1 + 4 w1
  TaylorField f(2, 4);
  f.add(mi({2, 1}), 1);
  f.add(mi({0, 1}), 4);

  TaylorField d0 = f.partial(0);
  CHECK(d0.coeff(mi({1, 1})) == 2);
  CHECK(d0.trunc() == 3);
  TaylorField d1 = f.partial(1);
  CHECK(d1.coeff(mi({2, 0})) == 1);
  CHECK(d1.coeff(mi({0, 0})) == 4);
  CHECK_THROWS_AS(f.partial(2), precondition_error);
  CHECK_THROWS_AS(TaylorField(2, 0).partial(0), precondition_error);

  TaylorField g(2, 4);
  g.add(mi({1, 0}), 2);
  TaylorField prod = f * g;
  CHECK(prod.coeff(mi({1, 1})) == 8);
  CHECK(prod.coeff(mi({3, 1})) == 2);
  CHECK((f * f).coeff(mi({4, 2})) == 0);  // degree 4 cap applies to products
  CHECK(prod.trunc() == 4);
  CHECK((f + g - f) == g);

  TaylorField e = g.embedded(4, 1);
  CHECK(e.nvars() == 4);
  CHECK(e.coeff(mi({0, 1, 0, 0})) == 2);
  CHECK_THROWS_AS(g.embedded(2, 1), precondition_error);

  CHECK(f.truncated(2).coeff(mi({2, 1})) == 0);
  CHECK(f.truncated(2).coeff(mi({0, 1})) == 4);
  CHECK_THROWS_AS(f.truncated(5), precondition_error);
}

TEST_CASE("builtin expansions") {
  TaylorField s = taylor_sin(1, 5, 0, 2);
  CHECK(s.coeff(mi({1})) == 2);
  CHECK(s.coeff(mi({3})) == Rat(-4, 3));
  CHECK(s.coeff(mi({5})) == Rat(4, 15));
  CHECK(s.coeff(mi({0})) == 0);
  CHECK(s.coeff(mi({2})) == 0);

  TaylorField c = taylor_cos(1, 4, 0, 2);
  CHECK(c.coeff(mi({0})) == 1);
  CHECK(c.coeff(mi({2})) == -2);
  CHECK(c.coeff(mi({4})) == Rat(2, 3));

  TaylorField x = taylor_exp(2, 3, 1, -1);
  CHECK(x.coeff(mi({0, 0})) == 1);
  CHECK(x.coeff(mi({0, 1})) == -1);
  CHECK(x.coeff(mi({0, 2})) == Rat(1, 2));
  CHECK(x.coeff(mi({0, 3})) == Rat(-1, 6));
  CHECK(x.coeff(mi({1, 0})) == 0);

  CHECK_THROWS_AS(taylor_sin(1, 5, 1, 1), precondition_error);
  CHECK(taylor_variable(3, 2, 1).coeff(mi({0, 1, 0})) == 1);
  CHECK(taylor_constant(2, 2, Rat(3, 4)).constant_term() == Rat(3, 4));
}

TEST_CASE("directional derivative") {
  // g = (1, w0), h = w0 w1: L_g h = w1 + w0^2
  std::vector<TaylorField> g{taylor_constant(2, 3, 1), taylor_variable(2, 3, 0)};
  TaylorField h(2, 3);
  h.add(mi({1, 1}), 1);
  TaylorField lgh = lie_derivative(g, h);
  CHECK(lgh.coeff(mi({0, 1})) == 1);
  CHECK(lgh.coeff(mi({2, 0})) == 1);
  CHECK(lgh.coeffs().size() == 2);

  std::vector<TaylorField> bad{taylor_constant(2, 3, 1)};
  CHECK_THROWS_AS(lie_derivative(bad, h), precondition_error);
  CHECK_THROWS_AS(lie_derivative(g, TaylorField(2, 0)), precondition_error);
}

TEST_CASE("linear systems generate their transfer coefficients") {
  std::mt19937_64 rng(211);
  for (int it = 0; it < 6; ++it) {
    int n = 1 + static_cast<int>(rng() % 3);
    auto A = oracles::random_matrix(rng, n, n);
    auto B = oracles::random_matrix(rng, n, 2);
    auto C = oracles::random_matrix(rng, 2, n);
    Realization r = oracles::linear_realization(A, B, C, 6);
    Series got = series_from_realization(r, 5, Exec::Serial);
    CHECK(got == oracles::linear_series(A, B, C, 5));
  }
  Realization r = oracles::linear_realization(oracles::RatMatrix::identity(2),
                                              oracles::random_matrix(rng, 2, 2),
                                              oracles::random_matrix(rng, 2, 2), 4);
  CHECK_THROWS_AS(series_from_realization(r, 5), precondition_error);
  CHECK_NOTHROW(series_from_realization(r, 4));
}

TEST_CASE("inverse realization flips the loop matrices") {
  std::mt19937_64 rng(223);
  for (int it = 0; it < 6; ++it) {
    int n = 1 + static_cast<int>(rng() % 3);
    auto A = oracles::random_matrix(rng, n, n);
    auto B = oracles::random_matrix(rng, n, 2);
    auto C = oracles::random_matrix(rng, 2, n);
    Realization r = oracles::linear_realization(A, B, C, 6);
    Realization inv = inverse_realization(r);
    Series got = series_from_realization(inv, 5, Exec::Serial);

    // matrix oracle: coefficient of x0^k x_(j+1) in component i is -C_i (A-BC)^k B_j
    auto ABC = A - B * C;
    for (size_t i = 0; i < 2; ++i)
      for (int k = 0; k + 1 <= 5; ++k)
        for (size_t j = 0; j < 2; ++j) {
          Word w = Word::repeated(0, static_cast<size_t>(k)).append(static_cast<int>(j) + 1);
          CHECK(got.coeff(static_cast<int>(i), w) == -oracles::linear_coeff(C, ABC, B, i, k, j));
        }

    // and the same series comes from the group inverse of the forward series
    Series fwd = series_from_realization(r, 5, Exec::Serial);
    CHECK(got == comp_inverse(fwd, -1, InverseMethod::Antipode, Exec::Serial));
  }
  Realization non_square = oracles::linear_realization(oracles::random_matrix(rng, 2, 2),
                                                       oracles::random_matrix(rng, 2, 1),
                                                       oracles::random_matrix(rng, 2, 2), 4);
  CHECK_THROWS_AS(inverse_realization(non_square), precondition_error);
}

TEST_CASE("closed loop realization matches the series feedback") {
  std::mt19937_64 rng(227);
  for (int it = 0; it < 4; ++it) {
    int np = 1 + static_cast<int>(rng() % 2);
    int nc = 1 + static_cast<int>(rng() % 2);
    Realization plant = oracles::linear_realization(
        oracles::random_matrix(rng, np, np), oracles::random_matrix(rng, np, 2),
        oracles::random_matrix(rng, 2, np), 5);
    Realization ctrl = oracles::linear_realization(
        oracles::random_matrix(rng, nc, nc), oracles::random_matrix(rng, nc, 2),
        oracles::random_matrix(rng, 2, nc), 5);
    Realization closed = closed_loop_realization(plant, ctrl);
    CHECK(closed.n == np + nc);
    Series via_states = series_from_realization(closed, 4, Exec::Serial);
    Series via_series = feedback_product(series_from_realization(plant, 4, Exec::Serial),
                                         series_from_realization(ctrl, 4, Exec::Serial), 4,
                                         InverseMethod::Antipode, Exec::Serial);
    CHECK(via_states == via_series);
  }
  Realization p = oracles::linear_realization(oracles::random_matrix(rng, 2, 2),
                                              oracles::random_matrix(rng, 2, 2),
                                              oracles::random_matrix(rng, 1, 2), 4);
  CHECK_THROWS_AS(closed_loop_realization(p, p), precondition_error);
}

TEST_CASE("zero input response coefficients") {
  // dz/dt = Az, y = Cz, z(0) = z0: the k-th coefficient is C A^k z0
  std::string text = R"({
    "n": 2, "m": 1, "l": 1,
    "z0": ["1", "-1"],
    "g": [
      [{"taylor": {"1 0": "1", "0 1": "2"}}, {"taylor": {"1 0": "3", "0 1": "4"}}],
      [{"taylor": {"0 0": "1"}}, {"taylor": {}}]
    ],
    "h": [{"taylor": {"1 0": "1", "0 1": "1"}}]
  })";
  Realization r = load_realization_text(text, 8);
  oracles::RatMatrix A(2, 2), C(1, 2);
  A.at(0, 0) = 1; A.at(0, 1) = 2; A.at(1, 0) = 3; A.at(1, 1) = 4;
  C.at(0, 0) = 1; C.at(0, 1) = 1;
  std::vector<Rat> z0{1, -1};

  auto resp = natural_response_coeffs(r, 6);
  REQUIRE(resp.size() == 1);
  REQUIRE(resp[0].size() == 7);
  for (int k = 0; k <= 6; ++k) {
    auto Ak = oracles::mat_pow(A, k);
    Rat expect = 0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) expect += C.at(0, a) * Ak.at(a, b) * z0[static_cast<size_t>(b)];
    CHECK(resp[0][static_cast<size_t>(k)] == expect);
  }
}

TEST_CASE("json round trip preserves the realization") {
  std::mt19937_64 rng(229);
  Realization r = oracles::linear_realization(oracles::random_matrix(rng, 2, 2),
                                              oracles::random_matrix(rng, 2, 2),
                                              oracles::random_matrix(rng, 2, 2), 5);
  Realization back = load_realization_text(realization_to_json(r), 5);
  CHECK(back.n == r.n);
  CHECK(back.m == r.m);
  CHECK(back.l == r.l);
  CHECK(back.z0 == r.z0);
  CHECK(back.g == r.g);
  CHECK(back.h == r.h);

  // the non-centered path recenters: constant shifts move into the expansion
  Realization axle = load_realization_text(fixtures::axle_json(), 6);
  Realization axle_back = load_realization_text(realization_to_json(axle), 6);
  CHECK(series_from_realization(axle_back, 5, Exec::Serial) ==
        series_from_realization(axle, 5, Exec::Serial));
}

TEST_CASE("loader rejects malformed input") {
  CHECK_THROWS_AS(load_realization_text("{", 3), parse_error);
  CHECK_THROWS_AS(load_realization_text(R"({"n":1,"m":1,"l":1,"z0":["0"],"g":[],"h":[]})", 3),
                  parse_error);
  std::string base = R"({"n":1,"m":1,"l":1,"z0":["0"],
    "g":[[{"taylor":{"0":"0"}}],[{"taylor":{"0":"1"}}]],
    "h":[{"taylor":{"1":"1"}}]})";
  CHECK_NOTHROW(load_realization_text(base, 3));
  auto swap = [&](const std::string& from, const std::string& to) {
    std::string t = base;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  CHECK_THROWS_AS(load_realization_text(swap(R"("1":"1")", R"("-1":"1")"), 3), parse_error);
  CHECK_THROWS_AS(load_realization_text(swap(R"("1":"1")", R"("1 2":"1")"), 3), parse_error);
  CHECK_THROWS_AS(load_realization_text(swap(R"("1":"1")", R"("x":"1")"), 3), parse_error);
  CHECK_THROWS_AS(load_realization_text(swap(R"("1":"1")", R"("1":"1/0")"), 3), parse_error);
  CHECK_THROWS_AS(load_realization_text(swap(R"({"taylor":{"1":"1"}})", R"({"builtin":"tan","var":1})"), 3),
                  parse_error);
  CHECK_NOTHROW(load_realization_text(swap(R"({"taylor":{"1":"1"}})", R"({"builtin":"sin","var":1})"), 3));
  CHECK_THROWS_AS(load_realization_text(swap(R"({"taylor":{"1":"1"}})", R"({"builtin":"sin","var":2})"), 3),
                  parse_error);
}

TEST_CASE("builtin fields need a zero center") {
  std::string text = R"({"n":1,"m":1,"l":1,"z0":["1"],
    "g":[[{"taylor":{"0":"0"}}],[{"taylor":{"0":"1"}}]],
    "h":[{"builtin":"sin","var":1}]})";
  CHECK_THROWS_AS(load_realization_text(text, 3), precondition_error);
}

TEST_CASE("wheel model series has the checkerboard support") {
  Series c = axle_plant(7);
  Series expect(Alphabet(2), 2, 7);
  for (int k = 0; 1 + 2 * k <= 7; ++k) {
    Word w = Word::single(1);
    for (int t = 0; t < 2 * k; ++t) w = w.append(2);
    expect.set_coeff(0, w, (k % 2) ? -1 : 1);
  }
  for (int k = 0; 2 + 2 * k <= 7; ++k) {
    Word w = Word::single(1);
    for (int t = 0; t < 2 * k + 1; ++t) w = w.append(2);
    expect.set_coeff(1, w, (k % 2) ? -1 : 1);
  }
  CHECK(c == expect);
}

TEST_CASE("speed controller series is affine") {
  Realization r = load_realization_text(fixtures::pi_controller_json(), 4);
  Series d = series_from_realization(r, 3, Exec::Serial);
  Series expect(Alphabet(2), 2, 3);
  expect.set_coeff(0, Word(), 4);
  expect.set_coeff(0, parse_word("x1"), 2);
  expect.set_coeff(1, Word(), 20);
  expect.set_coeff(1, parse_word("x2"), 10);
  CHECK(d == expect);
}

TEST_CASE("fixture files match the embedded copies") {
  Realization from_file = load_realization_file(FIXTURES_DIR "/axle.json", 5);
  Realization from_text = load_realization_text(fixtures::axle_json(), 5);
  CHECK(series_from_realization(from_file, 4, Exec::Serial) ==
        series_from_realization(from_text, 4, Exec::Serial));
  Realization pf = load_realization_file(FIXTURES_DIR "/pi_controller.json", 4);
  Realization pt = load_realization_text(fixtures::pi_controller_json(), 4);
  CHECK(series_from_realization(pf, 3, Exec::Serial) ==
        series_from_realization(pt, 3, Exec::Serial));
  CHECK_THROWS_AS(load_realization_file(FIXTURES_DIR "/missing.json", 3), parse_error);
}
