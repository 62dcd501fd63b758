#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "fliess/series.hpp"
#include "oracles.hpp"

using namespace fliess;

TEST_CASE("series slots are validated") {
  Series s(Alphabet(2), 2, 3);
  s.set_coeff(0, parse_word("x0x1"), Rat(1, 2));
  CHECK(s.coeff(0, parse_word("x0x1")) == Rat(1, 2));
  CHECK(s.coeff(1, parse_word("x0x1")) == 0);

  CHECK_THROWS_AS(s.set_coeff(2, Word(), 1), precondition_error);       // component range
  CHECK_THROWS_AS(s.set_coeff(-1, Word(), 1), precondition_error);
  CHECK_THROWS_AS(s.set_coeff(0, parse_word("x3"), 1), precondition_error);  // letter range
  CHECK_THROWS_AS(s.set_coeff(0, Word::repeated(1, 4), 1), precondition_error);  // beyond truncation
  CHECK_THROWS_AS(s.coeff(0, Word::repeated(1, 4)), precondition_error);
  CHECK_THROWS_AS(Series(Alphabet(2), 0, 3), precondition_error);
  CHECK_THROWS_AS(Series(Alphabet(2), 1, -1), precondition_error);
}

TEST_CASE("arithmetic and truncation mixing") {
  Series a(Alphabet(1), 1, 3);
  a.set_coeff(0, parse_word("x1"), 2);
  a.set_coeff(0, parse_word("x0x1x1"), Rat(1, 3));
  Series b(Alphabet(1), 1, 2);
  b.set_coeff(0, parse_word("x1"), 1);
  b.set_coeff(0, parse_word("x0x0"), 7);

  Series s = add(a, b);
  CHECK(s.trunc() == 2);  // class arithmetic: truncations meet at the min
  CHECK(s.coeff(0, parse_word("x1")) == 3);
  CHECK(s.coeff(0, parse_word("x0x0")) == 7);

  Series d = sub(s, b);
  CHECK(d.coeff(0, parse_word("x1")) == 2);
  CHECK(d.coeff(0, parse_word("x0x0")) == 0);

  Series n = negate(a);
  CHECK(n.coeff(0, parse_word("x0x1x1")) == Rat(-1, 3));
  CHECK(scale(Rat(3), a).coeff(0, parse_word("x0x1x1")) == 1);

  CHECK_THROWS_AS(add(a, Series(Alphabet(2), 1, 3)), precondition_error);
  CHECK_THROWS_AS(add(a, Series(Alphabet(1), 2, 3)), precondition_error);
}

TEST_CASE("truncate only downward") {
  Series a(Alphabet(1), 1, 3);
  a.set_coeff(0, Word::repeated(1, 3), 5);
  Series t = truncate_series(a, 1);
  CHECK(t.trunc() == 1);
  CHECK(t.is_zero());
  CHECK_THROWS_AS(truncate_series(a, 4), precondition_error);
}

TEST_CASE("prepend letter") {
  Series a(Alphabet(2), 2, 2);
  a.set_coeff(1, parse_word("x2"), 4);
  a.set_coeff(0, Word(), 1);
  Series p = prepend_letter(0, a);
  CHECK(p.trunc() == 2);
  CHECK(p.coeff(1, parse_word("x0x2")) == 4);
  CHECK(p.coeff(0, parse_word("x0")) == 1);
  // a length-2 word would leave the class; it is dropped, not an error
  Series full(Alphabet(2), 1, 2);
  full.set_coeff(0, parse_word("x1x2"), 1);
  CHECK(prepend_letter(1, full).is_zero());
}

TEST_CASE("unit series and order") {
  Series one = unit_series(Alphabet(2), 4);
  CHECK(one.dim() == 1);
  CHECK(one.coeff(0, Word()) == 1);
  CHECK(order(one) == 0);

  Series z(Alphabet(2), 2, 4);
  CHECK(order(z) == kInfiniteOrder);
  z.set_coeff(1, parse_word("x0x1x2"), Rat(-2, 7));
  CHECK(order(z) == 3);
  z.set_coeff(0, parse_word("x2"), 1);
  CHECK(order(z) == 1);
}

TEST_CASE("ultrametric distance") {
  Series a(Alphabet(1), 1, 5), b(Alphabet(1), 1, 5);
  CHECK(ultrametric_distance(a, b) == 0.0);
  b.set_coeff(0, Word::repeated(0, 3), 1);
  CHECK(ultrametric_distance(a, b) == doctest::Approx(0.125).epsilon(1e-15));
  a.set_coeff(0, Word::repeated(0, 3), 1);
  a.set_coeff(0, Word::repeated(1, 4), 2);
  b.set_coeff(0, Word::repeated(1, 4), 5);
  CHECK(ultrametric_distance(a, b) == doctest::Approx(0.0625).epsilon(1e-15));

  // strong triangle inequality on random triples
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    Series x = oracles::random_series(rng, 1, 1, 4);
    Series y = oracles::random_series(rng, 1, 1, 4);
    Series z = oracles::random_series(rng, 1, 1, 4);
    double xy = ultrametric_distance(x, y);
    double yz = ultrametric_distance(y, z);
    double xz = ultrametric_distance(x, z);
    CHECK(xz <= std::max(xy, yz) + 1e-300);
  }
}

TEST_CASE("shuffle of series matches the word level product") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 10; ++it) {
    Series a = oracles::random_series(rng, 2, 1, 3);
    Series b = oracles::random_series(rng, 2, 1, 4);
    Series s = shuffle_series(a, b, Exec::Serial);
    CHECK(s.trunc() == 3);

    WordPolynomial pa, pb;
    for (const auto& [w, c] : a.component(0)) pa.add(w, c);
    for (const auto& [w, c] : b.component(0)) pb.add(w, c);
    WordPolynomial prod = shuffle_words(pa, pb);
    Series expect(Alphabet(2), 1, 3);
    for (const auto& [w, c] : prod.terms())
      if (w.length() <= 3) expect.set_coeff(0, w, c);
    CHECK(s == expect);
  }
}

TEST_CASE("format is canonical and parse inverts it") {
  Series s(Alphabet(2), 2, 3);
  s.set_coeff(0, parse_word("x1"), Rat(-1, 2));
  s.set_coeff(1, Word(), 4);
  s.set_coeff(1, parse_word("x0x2"), Rat(22, 7));
  std::string text = format_series(s);
  CHECK(text ==
        "fps m=2 l=2 N=3\n"
        "1 -1/2 x1\n"
        "2 4 e\n"
        "2 22/7 x0x2\n");
  CHECK(parse_series_text(text) == s);

  std::mt19937_64 rng(9);
  for (int it = 0; it < 20; ++it) {
    Series r = oracles::random_series(rng, 2, 3, 4);
    std::string t = format_series(r);
    CHECK(parse_series_text(t) == r);
    CHECK(format_series(parse_series_text(t)) == t);  // bit stable
  }
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_series_text(""), parse_error);
  CHECK_THROWS_AS(parse_series_text("fps m=2 l=1\n"), parse_error);
  CHECK_THROWS_AS(parse_series_text("fps m=0 l=1 N=2\n"), parse_error);
  CHECK_THROWS_AS(parse_series_text("fps m=2 l=1 N=2\n1 1\n"), parse_error);
  CHECK_THROWS_AS(parse_series_text("fps m=2 l=1 N=2\n1 1/0 e\n"), parse_error);
  CHECK_THROWS_AS(parse_series_text("fps m=2 l=1 N=2\n2 1 e\n"), parse_error);
  CHECK_THROWS_AS(parse_series_text("fps m=2 l=1 N=2\n0 1 e\n"), parse_error);
  CHECK_THROWS_AS(parse_series_text("fps m=2 l=1 N=2\n1 1 x3\n"), parse_error);
  CHECK_THROWS_AS(parse_series_text("fps m=2 l=1 N=2\n1 1 x1x1x1\n"), parse_error);
  CHECK_THROWS_AS(parse_series_text("fps m=2 l=1 N=2\n1 1 e\n1 2 e\n"), parse_error);
  CHECK_THROWS_AS(parse_series_text("fps m=2 l=1 N=2\n1 one e\n"), parse_error);
}
