#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "tfg/quadratic.hpp"

using tfg::CirclePoint;
using tfg::Int;
using tfg::QuadExt;

namespace {

QuadExt qx(long long p, long long q, long long r, long long d = 2) {
  return QuadExt(Int(p), Int(q), Int(r), d);
}

// Deterministic small random integers for the property checks.
struct Rng {
  std::mt19937_64 gen{0x5eed2024};
  long long pick(long long lo, long long hi) {
    return lo + static_cast<long long>(gen() % static_cast<unsigned long long>(
                                                   hi - lo + 1));
  }
  QuadExt value() {
    while (true) {
      long long r = pick(1, 40);
      QuadExt v = qx(pick(-50, 50), pick(-50, 50), r);
      return v;
    }
  }
};

}  // namespace

TEST_CASE("canonicalization reduces gcd and normalizes signs") {
  CHECK(qx(2, 2, 4) == qx(1, 1, 2));
  CHECK(qx(0, 0, 5) == qx(0, 0, 1));
  CHECK(qx(-3, 0, -6) == qx(1, 0, 2));
  CHECK(qx(-3, 0, -6).r() == 2);
  CHECK(qx(-3, 0, -6).p() == 1);
}

TEST_CASE("canonicalize is idempotent") {
  Rng rng;
  for (int i = 0; i < 200; ++i) {
    QuadExt v = rng.value();
    QuadExt again(v.p(), v.q(), v.r(), v.d());
    CHECK(v == again);
  }
}

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS_AS(qx(1, 1, 0), tfg::malformed_number);
  CHECK_THROWS_AS(qx(1, 1, 2, 4), tfg::bad_field);   // perfect square
  CHECK_THROWS_AS(qx(1, 1, 2, 12), tfg::bad_field);  // 4 | 12
  CHECK_THROWS_AS(qx(1, 1, 2, 1), tfg::bad_field);
  CHECK_NOTHROW(qx(1, 1, 2, 10));  // 10 = 2*5 is square-free
}

TEST_CASE("comparison decides by exact sign analysis") {
  // (1+sqrt(2))/2 vs 6/5: cross-multiplying squares compares 50 vs 49
  CHECK(qx(1, 1, 2).compare(qx(6, 0, 5)) > 0);
  CHECK(qx(0, 1, 10) == qx(0, 1, 10));
  CHECK(qx(0, 0, 1).compare(qx(0, 1, 10)) < 0);
  CHECK(qx(1, -1, 1).sign() < 0);  // 1 - sqrt(2) < 0
  CHECK(qx(3, -2, 1).sign() > 0);  // 3 - 2 sqrt(2) > 0 since 9 > 8
}

TEST_CASE("mixing genuinely irrational fields is rejected") {
  CHECK_THROWS_AS(qx(0, 1, 1, 2) + qx(0, 1, 1, 3), tfg::bad_field);
  CHECK_THROWS_AS(qx(0, 1, 1, 2).compare(qx(0, 1, 1, 3)), tfg::bad_field);
  // rational values are field-agnostic
  CHECK(qx(1, 0, 2, 3) == qx(1, 0, 2, 2));
  CHECK((qx(1, 0, 2, 3) + qx(0, 1, 1, 2)).d() == 2);
}

TEST_CASE("total order: trichotomy and transitivity on random triples") {
  Rng rng;
  for (int i = 0; i < 300; ++i) {
    QuadExt a = rng.value(), b = rng.value(), c = rng.value();
    int ab = a.compare(b) < 0 ? -1 : (a.compare(b) > 0 ? 1 : 0);
    int ba = b.compare(a) < 0 ? -1 : (b.compare(a) > 0 ? 1 : 0);
    CHECK(ab == -ba);
    if (a.compare(b) <= 0 && b.compare(c) <= 0) CHECK(a.compare(c) <= 0);
    if (a.compare(b) == 0) CHECK(a == b);
  }
}

TEST_CASE("arithmetic closure: (x + y) - y == x exactly") {
  Rng rng;
  for (int i = 0; i < 300; ++i) {
    QuadExt x = rng.value(), y = rng.value();
    CHECK((x + y) - y == x);
    CHECK(x + (-x) == QuadExt());
    CHECK(x * Int(7) == x + x + x + x + x + x + x);
  }
}

TEST_CASE("floor: exact bracketing") {
  CHECK(qx(0, 5, 1).floor_int() == 7);    // 5 sqrt(2): 49 < 50 < 64
  CHECK(qx(0, -1, 10).floor_int() == -1); // -sqrt(2)/10 ~ -0.1414
  CHECK(qx(3, 0, 1).floor_int() == 3);
  CHECK(qx(0, 1, 1).floor_int() == 1);    // sqrt(2)
  CHECK(qx(0, -1, 1).floor_int() == -2);  // -sqrt(2)
  CHECK(qx(-7, 0, 2).floor_int() == -4);  // -7/2
}

TEST_CASE("mod1 lands in [0,1) and kills integer shifts") {
  CHECK(qx(0, 1, 1).mod1() == qx(-1, 1, 1));   // sqrt(2) - 1
  CHECK(qx(0, 7, 10).mod1() == qx(0, 7, 10));  // 7 sqrt(2)/10 < 1
  CHECK(qx(1, 0, 1).mod1() == QuadExt());
  Rng rng;
  for (int i = 0; i < 200; ++i) {
    QuadExt x = rng.value();
    QuadExt m = x.mod1();
    CHECK(m.sign() >= 0);
    CHECK(m.compare(QuadExt::integer(1)) < 0);
    long long n = rng.pick(-20, 20);
    CHECK((x + QuadExt::integer(n)).mod1() == m);
  }
}

TEST_CASE("rotation orbit is injective over [-100, 100]") {
  QuadExt alpha = qx(0, 1, 10);
  std::vector<QuadExt> points;
  for (long long k = -100; k <= 100; ++k)
    points.push_back((alpha * Int(k)).mod1());
  std::sort(points.begin(), points.end(), [](const QuadExt& a, const QuadExt& b) {
    return a.compare(b) < 0;
  });
  auto dup = std::adjacent_find(
      points.begin(), points.end(),
      [](const QuadExt& a, const QuadExt& b) { return a == b; });
  CHECK(dup == points.end());
}

TEST_CASE("grammar round-trips and rejects junk with a position") {
  QuadExt alpha = QuadExt::parse("(0+1*sqrt(2))/10");
  CHECK(alpha == qx(0, 1, 10));
  CHECK(QuadExt::parse(" ( 2 + -4 * sqrt( 2 ) ) / 6 ") == qx(1, -2, 3));
  CHECK(QuadExt::parse("(1-2*sqrt(3))/5") == qx(1, -2, 5, 3));
  Rng rng;
  for (int i = 0; i < 100; ++i) {
    QuadExt v = rng.value();
    CHECK(QuadExt::parse(v.str()) == v);
  }

  CHECK_THROWS_AS(QuadExt::parse("1+2"), tfg::parse_error);
  CHECK_THROWS_AS(QuadExt::parse("(1+2*sqrt(2))"), tfg::parse_error);
  CHECK_THROWS_AS(QuadExt::parse("(1+2*sqrt(2))/0"), tfg::malformed_number);
  CHECK_THROWS_AS(QuadExt::parse("(1+2*sqrt(4))/3"), tfg::bad_field);
  try {
    QuadExt::parse("(1+2*sqr(2))/3");
    FAIL("expected parse error");
  } catch (const tfg::parse_error& e) {
    CHECK(e.position == 5);
  }
}

TEST_CASE("circle points reduce on construction") {
  CirclePoint p(qx(0, 8, 10));  // 8 sqrt(2)/10 > 1
  CHECK(p.value() == qx(-10, 8, 10));
  CHECK(CirclePoint(QuadExt::integer(1)).value() == QuadExt());
}
