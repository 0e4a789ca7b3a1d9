#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "tfg/circle_set.hpp"

using tfg::CirclePoint;
using tfg::ClopenSet;
using tfg::Int;
using tfg::QuadExt;

namespace {

const QuadExt kAlpha(0, 1, 10, 2);  // sqrt(2)/10

CirclePoint cp(const QuadExt& x) { return CirclePoint(x); }

ClopenSet arc(const QuadExt& a, const QuadExt& b) {
  return ClopenSet::interval(cp(a), cp(b));
}

QuadExt times(long long k) { return (kAlpha * Int(k)).mod1(); }

// U translated by k*alpha: the interval [k*alpha, (k+1)*alpha) mod 1.
ClopenSet translate_u(long long k) {
  return arc(QuadExt(), kAlpha).translated(kAlpha * Int(k));
}

struct SetRng {
  std::mt19937_64 gen{0xc1c1e5e7};
  long long pick(long long lo, long long hi) {
    return lo + static_cast<long long>(gen() % static_cast<unsigned long long>(
                                                   hi - lo + 1));
  }
  ClopenSet set() {
    std::vector<std::pair<CirclePoint, CirclePoint>> eps;
    int arcs = static_cast<int>(pick(0, 3));
    for (int i = 0; i < arcs; ++i) {
      QuadExt a = (kAlpha * Int(pick(-40, 40)) +
                   QuadExt::rational(Int(pick(0, 999)), 1000))
                      .mod1();
      QuadExt b = (kAlpha * Int(pick(-40, 40)) +
                   QuadExt::rational(Int(pick(0, 999)), 1000))
                      .mod1();
      eps.emplace_back(cp(a), cp(b));
    }
    return ClopenSet::from_endpoints(eps);
  }
};

}  // namespace

TEST_CASE("construction produces canonical arc unions") {
  ClopenSet u = arc(QuadExt(), kAlpha);
  CHECK(u.arcs().size() == 1);

  // adjacent arcs merge
  ClopenSet two = ClopenSet::from_endpoints(
      {{cp(QuadExt()), cp(kAlpha)}, {cp(kAlpha), cp(times(2))}});
  CHECK(two == arc(QuadExt(), kAlpha * Int(2)));
  CHECK(two.arcs().size() == 1);

  // an arc crossing 0 is stored split
  ClopenSet wrapped = arc(times(7), times(8));
  REQUIRE(wrapped.arcs().size() == 2);
  CHECK(wrapped.arcs()[0].lo == QuadExt());
  CHECK(wrapped.arcs()[0].hi == kAlpha * Int(8) - QuadExt::integer(1));
  CHECK(wrapped.arcs()[1].lo == times(7));
  CHECK(wrapped.arcs()[1].hi == QuadExt::integer(1));

  CHECK(ClopenSet::from_endpoints({}).is_empty());
  CHECK(ClopenSet::interval(cp(kAlpha), cp(kAlpha)).is_full());
}

TEST_CASE("boolean operations are exact") {
  ClopenSet u = arc(QuadExt(), kAlpha);

  // U n phi^7(U) = [0, 8a - 1)
  ClopenSet meet = set_intersect(u, translate_u(7));
  CHECK(meet == arc(QuadExt(), kAlpha * Int(8) - QuadExt::integer(1)));

  CHECK(set_symdiff(u, u).is_empty());
  CHECK(set_intersect(u, translate_u(1)).is_empty());
  CHECK(set_union(u, u.complement()).is_full());
}

TEST_CASE("rotation preserves measure and inverts exactly") {
  ClopenSet u = arc(QuadExt(), kAlpha);
  CHECK(u.translated(kAlpha) == translate_u(1));
  CHECK(u.translated(QuadExt()) == u);
  SetRng rng;
  for (int i = 0; i < 50; ++i) {
    ClopenSet a = rng.set();
    QuadExt t = kAlpha * Int(5);
    CHECK(a.translated(t).translated(-t) == a);
    CHECK(a.translated(t).measure() == a.measure());
  }
}

TEST_CASE("measure is additive and complements to 1") {
  ClopenSet u = arc(QuadExt(), kAlpha);
  CHECK(u.measure() == kAlpha);
  CHECK(ClopenSet::empty().measure() == QuadExt());
  CHECK(set_union(u, translate_u(1)).measure() == kAlpha * Int(2));
  SetRng rng;
  for (int i = 0; i < 100; ++i) {
    ClopenSet a = rng.set(), b = rng.set();
    CHECK(set_union(a, b).measure() + set_intersect(a, b).measure() ==
          a.measure() + b.measure());
    CHECK(a.measure() + a.complement().measure() == QuadExt::integer(1));
  }
}

TEST_CASE("boolean algebra laws on random triples") {
  SetRng rng;
  for (int i = 0; i < 100; ++i) {
    ClopenSet a = rng.set(), b = rng.set(), c = rng.set();
    // De Morgan
    CHECK(set_union(a, b).complement() ==
          set_intersect(a.complement(), b.complement()));
    CHECK(set_intersect(a, b).complement() ==
          set_union(a.complement(), b.complement()));
    // distributivity
    CHECK(set_intersect(a, set_union(b, c)) ==
          set_union(set_intersect(a, b), set_intersect(a, c)));
    // symdiff = union minus intersection
    CHECK(set_symdiff(a, b) == set_diff(set_union(a, b), set_intersect(a, b)));
    // rotation distributes over boolean operations
    QuadExt t = times(3);
    CHECK(set_union(a, b).translated(t) ==
          set_union(a.translated(t), b.translated(t)));
    CHECK(set_intersect(a, b).translated(t) ==
          set_intersect(a.translated(t), b.translated(t)));
    CHECK(set_symdiff(a, b).translated(t) ==
          set_symdiff(a.translated(t), b.translated(t)));
  }
}

TEST_CASE("parity independence: base cases") {
  ClopenSet u = arc(QuadExt(), kAlpha);
  auto single = tfg::parity_independent({u});
  CHECK(single.independent);
  CHECK(single.rank == 1);

  auto dup = tfg::parity_independent({u, u});
  REQUIRE_FALSE(dup.independent);
  CHECK(dup.witness == std::vector<std::size_t>{0, 1});

  CHECK_FALSE(tfg::parity_independent({ClopenSet::empty()}).independent);
  CHECK_THROWS_AS(tfg::parity_independent({}), tfg::precondition_error);
}

TEST_CASE("translates of U are independent over F2") {
  std::vector<ClopenSet> family;
  for (long long k = -6; k <= 6; ++k) family.push_back(translate_u(-k));
  auto cert = tfg::parity_independent(family);
  CHECK(cert.independent);
  CHECK(cert.rank == 13);
}

TEST_CASE("parity witness is a real dependency and minimal") {
  // A, B, A^B is dependent; the symdiff of all three is empty.
  SetRng rng;
  int dependent_seen = 0;
  for (int i = 0; i < 40; ++i) {
    ClopenSet a = rng.set(), b = rng.set();
    std::vector<ClopenSet> family{a, b, set_symdiff(a, b)};
    auto cert = tfg::parity_independent(family);
    if (cert.independent) continue;  // possible when a or b is empty/equal
    ++dependent_seen;
    ClopenSet acc;
    for (std::size_t idx : cert.witness) acc = set_symdiff(acc, family[idx]);
    CHECK(acc.is_empty());
    // minimality: dropping any member leaves an independent family
    for (std::size_t k = 0; k < cert.witness.size(); ++k) {
      std::vector<ClopenSet> sub;
      for (std::size_t j = 0; j < cert.witness.size(); ++j)
        if (j != k) sub.push_back(family[cert.witness[j]]);
      if (!sub.empty()) CHECK(tfg::parity_independent(sub).independent);
    }
  }
  CHECK(dependent_seen > 10);
}

TEST_CASE("elimination agrees with exhaustive subset enumeration") {
  SetRng rng;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ClopenSet> family;
    int n = static_cast<int>(rng.pick(1, 7));
    for (int i = 0; i < n; ++i) family.push_back(rng.set());

    bool brute_independent = true;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      ClopenSet acc;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) acc = set_symdiff(acc, family[i]);
      if (acc.is_empty()) {
        brute_independent = false;
        break;
      }
    }
    CHECK(tfg::parity_independent(family).independent == brute_independent);
  }
}
