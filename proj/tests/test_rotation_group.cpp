#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "tfg/rotation_group.hpp"

using namespace tfg;

namespace {

const QuadExt kAlpha(0, 1, 10, 2);  // sqrt(2)/10

RotationSystem make_sys() { return RotationSystem(kAlpha); }

// Random short generator words; evaluation gives "random" group elements.
struct ElemRng {
  std::mt19937_64 gen{0x0f0f2024};
  long long pick(long long lo, long long hi) {
    return lo + static_cast<long long>(gen() % static_cast<unsigned long long>(
                                                   hi - lo + 1));
  }
  GenWord word(int max_len = 8) {
    GenWord w;
    int len = static_cast<int>(pick(0, max_len));
    for (int i = 0; i < len; ++i) {
      switch (pick(0, 2)) {
        case 0: w.letters.push_back(GenWord::Letter::Phi); break;
        case 1: w.letters.push_back(GenWord::Letter::PhiInv); break;
        default: w.letters.push_back(GenWord::Letter::SigmaU); break;
      }
    }
    return w;
  }
};

// The decisive pointwise oracle: maps agree iff they agree on one interior
// point of every atom of the common domain refinement.
bool equal_as_maps(const RotationSystem& sys, const RotElement& g,
                   const RotElement& h) {
  std::vector<QuadExt> cuts;
  for (const auto& p : g.pieces()) cuts.push_back(p.arc.lo);
  for (const auto& p : h.pieces()) cuts.push_back(p.arc.lo);
  std::sort(cuts.begin(), cuts.end(),
            [](const QuadExt& a, const QuadExt& b) { return a.compare(b) < 0; });
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](const QuadExt& a, const QuadExt& b) {
                           return a == b;
                         }),
             cuts.end());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const QuadExt& lo = cuts[i];
    QuadExt hi = i + 1 < cuts.size() ? cuts[i + 1] : QuadExt::integer(1);
    QuadExt mid = (lo + hi) * Int(1);
    mid = QuadExt(mid.p(), mid.q(), mid.r() * 2, mid.d());  // midpoint
    if (!(g.apply(lo) == h.apply(lo))) return false;
    if (!(g.apply(mid) == h.apply(mid))) return false;
  }
  (void)sys;
  return true;
}

}  // namespace

TEST_CASE("phi powers compose by cocycle addition") {
  auto sys = make_sys();
  CHECK(phi_power(sys, 0).is_identity());
  CHECK(phi_power(sys, 1).index() == 1);
  CHECK(compose(phi_power(sys, 3), phi_power(sys, 4)) == phi_power(sys, 7));
  CHECK(compose(phi_power(sys, 2), phi_power(sys, -2)).is_identity());
  CHECK(phi_power(sys, 5).inverse() == phi_power(sys, -5));
  CHECK(RotElement::identity(sys).inverse() == RotElement::identity(sys));
}

TEST_CASE("swap element: construction, involution, empty case") {
  auto sys = make_sys();
  ClopenSet U = sys.base_interval();
  RotElement sig = swap_element(sys, U);

  REQUIRE(sig.pieces().size() == 3);
  CHECK(sig.pieces()[0].jump == 1);
  CHECK(sig.pieces()[1].jump == -1);
  CHECK(sig.pieces()[2].jump == 0);
  CHECK(sig.pieces()[1].arc.lo == kAlpha);

  CHECK(compose(sig, sig).is_identity());
  CHECK(sig.inverse() == sig);
  CHECK(swap_element(sys, ClopenSet::empty()).is_identity());
  CHECK(sig.index() == 0);

  // overlap violates the precondition: [0, 2a) meets its own shift
  ClopenSet wide = ClopenSet::interval(CirclePoint(QuadExt()),
                                       CirclePoint(kAlpha * Int(2)));
  CHECK_THROWS_AS(swap_element(sys, wide), precondition_error);
}

TEST_CASE("gamma element is an index-zero 3-cycle") {
  auto sys = make_sys();
  ClopenSet U = sys.base_interval();
  RotElement g = gamma_element(sys, U);
  CHECK(g.index() == 0);
  CHECK_FALSE(g.is_identity());
  CHECK(compose(g, compose(g, g)).is_identity());
  CHECK(gamma_element(sys, ClopenSet::empty()).is_identity());

  // W = [0, 2a) has W n phi(W) nonempty
  ClopenSet wide = ClopenSet::interval(CirclePoint(QuadExt()),
                                       CirclePoint(kAlpha * Int(2)));
  CHECK_THROWS_AS(gamma_element(sys, wide), precondition_error);
}

TEST_CASE("composition matches pointwise evaluation on the sample grid") {
  auto sys = make_sys();
  ElemRng rng;
  for (int trial = 0; trial < 25; ++trial) {
    RotElement g = eval_word(sys, rng.word());
    RotElement h = eval_word(sys, rng.word());
    RotElement gh = compose(g, h);
    for (int i = 0; i < 100; ++i) {
      QuadExt x = sys.sample_point(rng.pick(-30, 30), rng.pick(0, 999));
      CHECK(gh.apply(x) == g.apply(h.apply(x)));
    }
  }
}

TEST_CASE("group axioms on random generator words") {
  auto sys = make_sys();
  RotElement id = RotElement::identity(sys);
  ElemRng rng;
  for (int trial = 0; trial < 60; ++trial) {
    RotElement g = eval_word(sys, rng.word());
    RotElement h = eval_word(sys, rng.word());
    RotElement k = eval_word(sys, rng.word());
    CHECK(compose(g, id) == g);
    CHECK(compose(id, g) == g);
    CHECK(compose(compose(g, h), k) == compose(g, compose(h, k)));
    CHECK(compose(g, g.inverse()).is_identity());
    CHECK(compose(g.inverse(), g).is_identity());
  }
}

TEST_CASE("canonical equality agrees with map equality") {
  auto sys = make_sys();
  ElemRng rng;
  int equal_pairs = 0;
  for (int trial = 0; trial < 40; ++trial) {
    RotElement g = eval_word(sys, rng.word(6));
    RotElement h = eval_word(sys, rng.word(6));
    bool canonical = g == h;
    CHECK(canonical == equal_as_maps(sys, g, h));
    if (canonical) ++equal_pairs;
  }
  // sigma^2 vs identity guarantees at least one nontrivially equal pair
  RotElement sig = sigma_u(sys);
  CHECK(compose(sig, sig) == RotElement::identity(sys));
}

TEST_CASE("index is a homomorphism vanishing on commutators") {
  auto sys = make_sys();
  ElemRng rng;
  for (int trial = 0; trial < 200; ++trial) {
    RotElement g = eval_word(sys, rng.word(6));
    RotElement h = eval_word(sys, rng.word(6));
    CHECK(compose(g, h).index() == g.index() + h.index());
    RotElement comm =
        compose(compose(g, h), compose(g.inverse(), h.inverse()));
    CHECK(comm.index() == 0);
  }
}

TEST_CASE("conjugation by phi^n translates swap supports") {
  auto sys = make_sys();
  ElemRng rng;
  for (long long n = -10; n <= 10; ++n) {
    // a short arc inside U keeps the swap precondition valid after shifts
    QuadExt lo = sys.sample_point(0, rng.pick(0, 40));
    ClopenSet V = ClopenSet::interval(
        CirclePoint(lo), CirclePoint(lo + QuadExt::rational(1, 100)));
    RotElement lhs = compose(compose(phi_power(sys, n), swap_element(sys, V)),
                             phi_power(sys, -n));
    RotElement rhs = swap_element(sys, sys.translate(V, n));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("gamma has order three for random small W") {
  auto sys = make_sys();
  ElemRng rng;
  int built = 0;
  for (int trial = 0; trial < 40; ++trial) {
    QuadExt lo = sys.sample_point(rng.pick(-20, 20), rng.pick(0, 999));
    ClopenSet W = ClopenSet::interval(
        CirclePoint(lo), CirclePoint(lo + QuadExt::rational(1, 50)));
    ClopenSet wl = sys.translate(W, -1), wr = sys.translate(W, 1);
    if (!are_disjoint(wl, W) || !are_disjoint(W, wr) || !are_disjoint(wl, wr))
      continue;
    ++built;
    RotElement g = gamma_element(sys, W);
    CHECK(compose(g, compose(g, g)).is_identity());
    CHECK(g.index() == 0);
  }
  CHECK(built > 20);
}

TEST_CASE("first return map on the full circle is phi") {
  auto sys = make_sys();
  CHECK(first_return(sys, ClopenSet::full()) == phi_power(sys, 1));
}

TEST_CASE("first return map on U has cocycles {7, 8} and index 1") {
  auto sys = make_sys();
  RotElement psi = first_return(sys, sys.base_interval());
  std::vector<long long> jumps;
  for (const auto& p : psi.pieces())
    if (p.jump != 0) jumps.push_back(p.jump.convert_to<long long>());
  std::sort(jumps.begin(), jumps.end());
  CHECK(jumps == std::vector<long long>{7, 8});
  CHECK(psi.index() == 1);  // Kac: sum of return times weighted by measure
  CHECK(psi.image_of(sys.base_interval()) == sys.base_interval());

  CHECK_THROWS_AS(first_return(sys, ClopenSet::empty()), precondition_error);
  CHECK_THROWS_AS(first_return(sys, sys.base_interval(), 3), resource_error);
}

TEST_CASE("lamplighter pair: preconditions, support, conjugation law") {
  auto sys = make_sys();
  ClopenSet U = sys.base_interval();
  ClopenSet O = set_intersect(
      ClopenSet::interval(CirclePoint(QuadExt()), CirclePoint(sys.multiple(8))),
      U);
  auto lp = lamplighter_pair(sys, U, O);

  CHECK(lamplighter_pair(sys, U, ClopenSet::empty()).s.is_identity());

  ClopenSet bound = set_union(U, sys.translate(U, 1));
  CHECK(is_subset(set_union(lp.r.support(), lp.s.support()), bound));

  // r tau_V r^{-1} = tau_{psi(V)} for V = [0, 1/50)
  ClopenSet V = ClopenSet::interval(CirclePoint(QuadExt()),
                                    CirclePoint(QuadExt::rational(1, 50)));
  RotElement lhs =
      compose(compose(lp.r, swap_element(sys, V)), lp.r.inverse());
  RotElement rhs = swap_element(sys, lp.psi.image_of(V));
  CHECK(lhs == rhs);

  // alpha = sqrt(2)/4: 4*alpha = sqrt(2) > 1, the translates overlap
  RotationSystem big(QuadExt(0, 1, 4, 2));
  CHECK_THROWS_AS(
      lamplighter_pair(big, big.base_interval(), ClopenSet::empty()),
      precondition_error);
  // O must sit inside U
  CHECK_THROWS_AS(lamplighter_pair(sys, U, sys.translate(U, 1)),
                  precondition_error);
}

TEST_CASE("lamplighter relations hold through range 5") {
  auto sys = make_sys();
  ClopenSet U = sys.base_interval();
  ClopenSet O = set_intersect(
      ClopenSet::interval(CirclePoint(QuadExt()), CirclePoint(sys.multiple(8))),
      U);
  auto lp = lamplighter_pair(sys, U, O);

  const int N = 5;
  std::vector<RotElement> conj;
  std::vector<ClopenSet> translates;
  for (int k = -N; k <= N; ++k) {
    RotElement rk = rot_power(sys, lp.r, k);
    conj.push_back(compose(compose(rk, lp.s), rk.inverse()));
    ClopenSet img = O;
    RotElement step = k >= 0 ? lp.psi : lp.psi.inverse();
    for (int j = 0; j < (k >= 0 ? k : -k); ++j) img = step.image_of(img);
    translates.push_back(img);
  }
  for (std::size_t i = 0; i < conj.size(); ++i) {
    CHECK(conj[i] == swap_element(sys, translates[i]));
    for (std::size_t j = i + 1; j < conj.size(); ++j)
      CHECK(compose(conj[i], conj[j]) == compose(conj[j], conj[i]));
  }
  auto cert = parity_independent(translates);
  CHECK(cert.independent);
  CHECK(cert.rank == 2 * N + 1);

  RotElement rk = RotElement::identity(sys);
  for (int k = 1; k <= N; ++k) {
    rk = compose(lp.r, rk);
    CHECK_FALSE(rk.is_identity());
  }
}

TEST_CASE("derived pair: disjoint supports, zero index, involution") {
  auto sys = make_sys();
  ClopenSet U = sys.base_interval();
  ClopenSet O = set_intersect(
      ClopenSet::interval(CirclePoint(QuadExt()), CirclePoint(sys.multiple(8))),
      U);
  auto lp = lamplighter_pair(sys, U, O);
  auto dp = derived_embedding(sys, lp.r, lp.s, U);

  CHECK(dp.r.index() == 0);
  CHECK(dp.s.index() == 0);
  CHECK(compose(dp.s, dp.s).is_identity());

  ClopenSet inner = set_union(U, sys.translate(U, 1));
  ClopenSet outer =
      set_union(sys.translate(U, 2), sys.translate(U, 3));
  CHECK(is_subset(dp.r.support(), set_union(inner, outer)));
  CHECK(is_subset(dp.s.support(), set_union(inner, outer)));

  // the conjugated halves act where the originals do not
  RotElement phi2 = phi_power(sys, 2);
  RotElement moved = compose(compose(phi2, lp.s), phi_power(sys, -2));
  CHECK(is_subset(moved.support(), outer));
  CHECK(are_disjoint(moved.support(), inner));

  CHECK_THROWS_AS(derived_embedding(sys, phi_power(sys, 1), lp.s, U),
                  precondition_error);
}

TEST_CASE("word synthesis: translates") {
  auto sys = make_sys();
  for (long long n = -3; n <= 3; ++n) {
    GenWord w = gamma_word(sys, n, n);
    CHECK(eval_word(sys, w) == gamma_element(sys, sys.base_translate(n)));
  }
}

TEST_CASE("word synthesis: intersections and error cases") {
  auto sys = make_sys();
  GenWord w = gamma_word(sys, 7, 0);
  ClopenSet meet = set_intersect(sys.base_translate(7), sys.base_translate(0));
  CHECK(meet ==
        ClopenSet::interval(CirclePoint(QuadExt()),
                            CirclePoint(kAlpha * Int(8) - QuadExt::integer(1))));
  CHECK(eval_word(sys, w) == gamma_element(sys, meet));

  // the mirrored pair synthesizes the same target
  CHECK(eval_word(sys, gamma_word(sys, 0, 7)) == gamma_element(sys, meet));

  // adjacent translates are disjoint
  CHECK_THROWS_AS(gamma_word(sys, 0, 1), precondition_error);

  // alpha = sqrt(2)/8 ~ 0.177 >= 1/6
  RotationSystem big(QuadExt(0, 1, 8, 2));
  CHECK_THROWS_AS(gamma_word(big, 0, 0), precondition_error);
}

TEST_CASE("word algebra: inverse and parsing round-trip") {
  ElemRng rng;
  auto sys = make_sys();
  for (int trial = 0; trial < 20; ++trial) {
    GenWord w = rng.word();
    CHECK(compose(eval_word(sys, w), eval_word(sys, w.inverse()))
              .is_identity());
    CHECK(GenWord::parse(w.str()).letters == w.letters);
  }
  CHECK_THROWS_AS(GenWord::parse("Pxs"), parse_error);
}

TEST_CASE("from_pieces rejects broken partitions and non-bijections") {
  auto sys = make_sys();
  // gap: only [0, 1/2)
  std::vector<RotElement::Piece> gap;
  gap.push_back({{QuadExt(), QuadExt::rational(1, 2)}, 0});
  CHECK_THROWS_AS(RotElement::from_pieces(sys, gap), precondition_error);

  // non-bijective: both halves shifted onto each other is fine, but
  // two pieces sent to overlapping images must fail; jump 0 and jump 0
  // shifted copies collide
  std::vector<RotElement::Piece> bad;
  bad.push_back({{QuadExt(), QuadExt::rational(1, 2)}, 0});
  bad.push_back({{QuadExt::rational(1, 2), QuadExt::integer(1)}, 7});
  CHECK_THROWS_AS(RotElement::from_pieces(sys, bad), precondition_error);
}

TEST_CASE("elements over different rotations refuse to compose") {
  auto sys = make_sys();
  RotationSystem other(QuadExt(0, 1, 7, 2));
  CHECK_THROWS_AS(compose(phi_power(sys, 1), phi_power(other, 1)), bad_field);
}
