#include <doctest.h>

#include <cmath>

#include "bikoeff/series.hpp"
#include "unit/test_support.hpp"

using namespace bikoeff;
using bikoeff::testing::RationalGen;

namespace {

RationalSeries rs(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return RationalSeries(std::move(v));
}

RationalSeries rs(std::vector<Rational> v) { return RationalSeries(std::move(v)); }

Polynomial var(const char* name) { return Polynomial::variable(name); }

// Naive f(g) = sum f_k g^k with explicit powers; independent of Horner in compose().
RationalSeries naive_compose(const RationalSeries& f, const RationalSeries& g) {
  const int n = g.order();
  std::vector<Rational> out(n + 1, Rational(0));
  std::vector<Rational> power(n + 1, Rational(0));
  power[0] = 1;
  for (int k = 0; k <= f.order(); ++k) {
    for (int i = 0; i <= n; ++i) out[i] += f[k] * power[i];
    std::vector<Rational> next(n + 1, Rational(0));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) next[i + j] += power[i] * g[j];
    power = next;
  }
  return RationalSeries(out);
}

// Triangular solve for the inverse: pick g_n so that [f(g)]_n vanishes.
RationalSeries brute_force_inverse(const RationalSeries& f) {
  const int n = f.order();
  std::vector<Rational> g(n + 1, Rational(0));
  g[1] = 1;
  for (int k = 2; k <= n; ++k) {
    g[k] = 0;
    Rational c = naive_compose(f, RationalSeries(g))[k];
    g[k] = -c;
  }
  return RationalSeries(g);
}

}  // namespace

TEST_SUITE("series.mul") {
  TEST_CASE("difference of squares") {
    CHECK(mul(rs({1, 1, 0}), rs({1, -1, 0})) == rs({1, 0, -1}));
  }
  TEST_CASE("identity factor") {
    CHECK(mul(rs({1, 2, 3}), rs({1, 0, 0})) == rs({1, 2, 3}));
  }
  TEST_CASE("square of 1+z+z^2 truncated at order 2") {
    CHECK(mul(rs({1, 1, 1}), rs({1, 1, 1})) == rs({1, 2, 3}));
  }
  TEST_CASE("result order is the minimum") {
    CHECK(mul(rs({1, 1, 1, 1}), rs({1, 1})).order() == 1);
  }
  TEST_CASE("mixed kinds need explicit promotion") {
    AnySeries x = rs({1, 1});
    AnySeries y = ComplexSeries({Complex{1, 0}, Complex{2, 0}});
    CHECK_THROWS_AS(mul(x, y), DomainError);
    AnySeries z = mul(to_complex(x), y);
    CHECK(kind_of(z) == ScalarKind::ComplexFloat);
    CHECK(std::get<ComplexSeries>(z)[1] == Complex{3, 0});
  }
}

TEST_SUITE("series.div") {
  TEST_CASE("geometric series") {
    CHECK(div(rs({1, 0, 0, 0}), rs({1, -1, 0, 0})) == rs({1, 1, 1, 1}));
  }
  TEST_CASE("zero constant term is rejected") {
    CHECK_THROWS_WITH_AS(div(rs({0, 1, 0}), rs({0, 1, 0})), "non-invertible series", DomainError);
  }
  TEST_CASE("x / x is one") {
    CHECK(div(rs({1, 1, 0}), rs({1, 1, 0})) == rs({1, 0, 0}));
  }
  TEST_CASE("quotient times divisor recovers the dividend") {
    RationalGen gen(11);
    for (int t = 0; t < 50; ++t) {
      auto x = rs(gen.vec(7));
      auto yv = gen.vec(7);
      if (sgn(yv[0]) == 0) yv[0] = 1;
      auto y = rs(yv);
      CHECK(mul(div(x, y), y) == x);
    }
  }
}

TEST_SUITE("series.compose") {
  TEST_CASE("1+z after z^2") {
    CHECK(compose(rs({1, 1, 0}), rs({0, 0, 1})) == rs({1, 0, 1}));
  }
  TEST_CASE("short outer series extends by the valuation of the inner one") {
    auto r = compose(rs({1, 1}), rs({0, 0, 1, 0}));
    CHECK(r.order() == 3);
    CHECK(r == rs({1, 0, 1, 0}));
  }
  TEST_CASE("inner series must vanish at zero") {
    CHECK_THROWS_AS(compose(rs({1, 1}), rs({1, 1})), DomainError);
  }
  TEST_CASE("generator after the Schwarz series matches the printed z and z^2 coefficients") {
    // phi = 1 + B1 z + B2 z^2 + B3 z^3, r = (p - 1)/(p + 1) with symbolic p.
    SymbolicSeries phi({Polynomial(1), var("B1"), var("B2"), var("B3")});
    SymbolicSeries p({Polynomial(1), var("p1"), var("p2"), var("p3")});
    SymbolicSeries lhs = compose(phi, mobius_to_disk(p));
    const Polynomial half(make_rational(1, 2)), quarter(make_rational(1, 4)), eighth(make_rational(1, 8));
    const Polynomial B1 = var("B1"), B2 = var("B2"), B3 = var("B3"), p1 = var("p1"), p2 = var("p2"), p3 = var("p3");
    CHECK(lhs[1] == half * B1 * p1);
    CHECK(lhs[2] == half * B1 * (p2 - half * p1 * p1) + quarter * B2 * p1 * p1);
    CHECK(lhs[3] == half * B1 * (quarter * p1 * p1 * p1 - p1 * p2 + p3) + half * B2 * p1 * (p2 - half * p1 * p1) +
                        eighth * B3 * p1 * p1 * p1);
  }
  TEST_CASE("exp after log of 1+z is 1+z") {
    auto log1p = log_series(rs({1, 1, 0, 0, 0, 0, 0}));
    CHECK(log1p[3] == make_rational(1, 3));
    CHECK(exp_series(log1p) == rs({1, 1, 0, 0, 0, 0, 0}));
    // Same through compose with an explicit exponential series.
    std::vector<Rational> e(7);
    Rational fact = 1;
    for (int k = 0; k <= 6; ++k) {
      if (k > 0) fact *= k;
      e[k] = Rational(1) / fact;
    }
    CHECK(compose(rs(e), log1p) == rs({1, 1, 0, 0, 0, 0, 0}));
  }
  TEST_CASE("Horner composition agrees with explicit powers") {
    RationalGen gen(5);
    for (int t = 0; t < 30; ++t) {
      auto f = rs(gen.vec(7));
      auto gv = gen.vec(7);
      gv[0] = 0;
      auto g = rs(gv);
      CHECK(compose(f, g) == naive_compose(f, g));
    }
  }
}

TEST_SUITE("series.revert") {
  TEST_CASE("identity") {
    CHECK(revert(rs({0, 1, 0, 0, 0, 0})) == rs({0, 1, 0, 0, 0, 0}));
  }
  TEST_CASE("Koebe truncation gives signed Catalan numbers") {
    CHECK(revert(rs({0, 1, 2, 3, 4, 5})) == rs({0, 1, -2, 5, -14, 42}));
    CHECK(naive_compose(rs({0, 1, 2, 3, 4, 5}), rs({0, 1, -2, 5, -14, 42})) == rs({0, 1, 0, 0, 0, 0}));
  }
  TEST_CASE("all-ones coefficients") {
    CHECK(revert(rs({0, 1, 1, 1, 1, 1})) == rs({0, 1, -1, 1, -1, 1}));
  }
  TEST_CASE("needs a normalized input") {
    CHECK_THROWS_AS(revert(rs({0, 2, 1})), DomainError);
    CHECK_THROWS_AS(revert(rs({1, 1, 1})), DomainError);
  }
  TEST_CASE("inverse-series closed forms on random rationals") {
    RationalGen gen(29);
    for (int t = 0; t < 100; ++t) {
      auto a = gen.vec(4);
      const Rational &a2 = a[0], &a3 = a[1], &a4 = a[2], &a5 = a[3];
      auto g = revert(rs({0, 1, a2, a3, a4, a5}));
      CHECK(g[2] == -a2);
      CHECK(g[3] == 2 * a2 * a2 - a3);
      CHECK(g[4] == -(5 * a2 * a2 * a2 - 5 * a2 * a3 + a4));
      CHECK(g[5] == 14 * a2 * a2 * a2 * a2 - 21 * a2 * a2 * a3 + 3 * a3 * a3 + 6 * a2 * a4 - a5);
    }
  }
  TEST_CASE("Newton reversion agrees with the triangular solve and round-trips") {
    RationalGen gen(31);
    for (int t = 0; t < 40; ++t) {
      auto v = gen.vec(8);
      v[0] = 0;
      v[1] = 1;
      auto f = rs(v);
      auto g = revert(f);
      CHECK(g == brute_force_inverse(f));
      CHECK(compose(f, g) == RationalSeries::identity(7));
    }
  }
  TEST_CASE("symbolic inverse reproduces the closed forms") {
    SymbolicSeries f({Polynomial(0), Polynomial(1), var("a2"), var("a3"), var("a4"), var("a5")});
    auto g = revert(f);
    CHECK(g[2].to_string() == "-a2");
    CHECK(g[3].to_string() == "2*a2^2 - a3");
    CHECK(g[4] == -(Polynomial(5) * var("a2") * var("a2") * var("a2") - Polynomial(5) * var("a2") * var("a3") + var("a4")));
  }
}

TEST_SUITE("series.pow") {
  TEST_CASE("strong generator coefficients") {
    // ((1+z)/(1-z))^beta with beta = 1/3 kept exact.
    auto base = div(rs({1, 1, 0, 0, 0, 0, 0}), rs({1, -1, 0, 0, 0, 0, 0}));
    Rational beta = make_rational(1, 3);
    auto s = pow(base, beta);
    CHECK(s[1] == 2 * beta);
    CHECK(s[2] == 2 * beta * beta);
    CHECK(s[3] == Rational(4) / 3 * beta * beta * beta + Rational(2) / 3 * beta);
    CHECK(s[3] == make_rational(22, 81));
  }
  TEST_CASE("float exponent promotes rational input") {
    auto base = div(rs({1, 1, 0, 0}), rs({1, -1, 0, 0}));
    AnySeries s = pow_real(base, 0.3);
    REQUIRE(kind_of(s) == ScalarKind::ComplexFloat);
    const auto& c = std::get<ComplexSeries>(s);
    CHECK(c[1].real() == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(c[3].real() == doctest::Approx(4.0 / 3 * 0.027 + 2.0 / 3 * 0.3).epsilon(1e-14));
  }
  TEST_CASE("zero and unit exponents") {
    auto base = div(rs({1, 1, 0, 0}), rs({1, -1, 0, 0}));
    CHECK(std::get<RationalSeries>(pow_real(base, 0.0)) == rs({1, 0, 0, 0}));
    CHECK(std::get<RationalSeries>(pow_real(base, 1.0)) == rs({1, 2, 2, 2}));
  }
  TEST_CASE("constant term must be one") {
    CHECK_THROWS_AS(pow_real(rs({2, 1}), 0.5), DomainError);
  }
  TEST_CASE("exponents add") {
    RationalGen gen(3);
    for (int t = 0; t < 30; ++t) {
      auto v = gen.vec(7);
      v[0] = 1;
      auto x = rs(v);
      Rational a = gen(), b = gen();
      CHECK(pow(x, Rational(a + b)) == mul(pow(x, a), pow(x, b)));
      double fa = a.get_d() + 0.123, fb = b.get_d() - 0.456;
      auto cx = to_complex(x);
      auto lhs = pow_real(cx, fa + fb);
      auto rhs = mul(pow_real(cx, fa), pow_real(cx, fb));
      for (int k = 0; k <= 6; ++k) {
        double scale = std::max(1.0, std::abs(lhs[k]));
        CHECK(std::abs(lhs[k] - rhs[k]) <= 1e-12 * scale);
      }
    }
  }
}

TEST_SUITE("series.mobius") {
  TEST_CASE("p = 1 maps to 0") {
    CHECK(mobius_to_disk(rs({1, 0, 0, 0})) == rs({0, 0, 0, 0}));
  }
  TEST_CASE("(1+z)/(1-z) maps to z") {
    auto p = div(rs({1, 1, 0, 0, 0}), rs({1, -1, 0, 0, 0}));
    CHECK(mobius_to_disk(p) == rs({0, 1, 0, 0, 0}));
  }
  TEST_CASE("symbolic third coefficient") {
    SymbolicSeries p({Polynomial(1), var("p1"), var("p2"), var("p3")});
    auto r = mobius_to_disk(p);
    const Polynomial p1 = var("p1"), p2 = var("p2"), p3 = var("p3");
    CHECK(r[1] == Polynomial(make_rational(1, 2)) * p1);
    CHECK(r[2] == Polynomial(make_rational(1, 2)) * (p2 - Polynomial(make_rational(1, 2)) * p1 * p1));
    CHECK(r[3] == Polynomial(make_rational(1, 8)) * (p1 * p1 * p1 - Polynomial(4) * p1 * p2 + Polynomial(4) * p3));
  }
  TEST_CASE("back-transform recovers p") {
    RationalGen gen(17);
    for (int t = 0; t < 30; ++t) {
      auto v = gen.vec(7);
      v[0] = 1;
      auto p = rs(v);
      CHECK(disk_to_caratheodory(mobius_to_disk(p)) == p);
    }
  }
  TEST_CASE("precondition") {
    CHECK_THROWS_AS(mobius_to_disk(rs({2, 1})), DomainError);
  }
}

TEST_SUITE("series.format") {
  TEST_CASE("rational series") {
    CHECK(to_string(rs({1, 2, 2, 2})) == "1 + 2z + 2z^2 + 2z^3");
    CHECK(to_string(rs({make_rational(1, 1), make_rational(2, 3), make_rational(-2, 9)})) == "1 + (2/3)z - (2/9)z^2");
    CHECK(to_string(rs({0, 0})) == "0");
  }
  TEST_CASE("literals parse exactly") {
    CHECK(parse_rational("0.25") == make_rational(1, 4));
    CHECK(parse_rational("-1/3") == make_rational(-1, 3));
    CHECK(parse_rational("2.5e-1") == make_rational(1, 4));
    CHECK(parse_rational("1E2") == 100);
    CHECK(parse_rational(".5") == make_rational(1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
  }
}
