#ifndef TFG_ROTATION_GROUP_HPP
#define TFG_ROTATION_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tfg/circle_set.hpp"
#include "tfg/errors.hpp"
#include "tfg/quadratic.hpp"

namespace tfg {

// The alpha-rotation x -> x + alpha on R/Z for an irrational quadratic
// alpha in (0, 1). All full-group elements of one session share this.
class RotationSystem {
 public:
  explicit RotationSystem(QuadExt alpha) : alpha_(std::move(alpha)) {
    if (alpha_.is_rational())
      throw precondition_error("alpha must be irrational (q != 0)");
    if (alpha_.sign() <= 0 || alpha_.compare(QuadExt::integer(1)) >= 0)
      throw precondition_error("alpha must lie in (0, 1)");
  }

  const QuadExt& alpha() const { return alpha_; }

  // {n * alpha} in [0, 1)
  QuadExt multiple(const Int& n) const { return (alpha_ * n).mod1(); }

  // U, the base interval [0, alpha)
  ClopenSet base_interval() const {
    return ClopenSet::interval(CirclePoint(QuadExt::integer(0)),
                               CirclePoint(alpha_));
  }

  // phi^n(A) = A + n*alpha
  ClopenSet translate(const ClopenSet& A, const Int& n) const {
    return A.translated(alpha_ * n);
  }

  // phi^n(U), the arc [n*alpha, (n+1)*alpha)
  ClopenSet base_translate(const Int& n) const {
    return translate(base_interval(), n);
  }

  // Deterministic sample point {k*alpha + j/1000}.
  QuadExt sample_point(long long k, long long j) const {
    return (alpha_ * Int(k) + QuadExt::rational(Int(j), 1000)).mod1();
  }

  bool operator==(const RotationSystem& o) const { return alpha_ == o.alpha_; }

 private:
  QuadExt alpha_;
};

/*
 * An element of the topological full group of the rotation: a finite
 * partition of the circle into half-open arcs with an integer cocycle on
 * each, acting by x -> x + c*alpha on its arc.
 *
 * Canonical form: arcs sorted, split at 0, covering the circle exactly,
 * with adjacent equal-cocycle arcs merged. Canonical forms are unique, so
 * equality of elements as maps is structural equality; that comparison is
 * the workhorse of every identity check.
 */
class RotElement {
 public:
  struct Piece {
    ClopenSet::Arc arc;
    Int jump;  // cocycle value on this arc
    bool operator==(const Piece& o) const {
      return arc == o.arc && jump == o.jump;
    }
  };

  static RotElement identity(const RotationSystem& sys) {
    std::vector<Piece> p;
    p.push_back({{QuadExt::integer(0), QuadExt::integer(1)}, 0});
    return RotElement(sys.alpha(), std::move(p), ErrorKind::Internal);
  }

  // Validating constructor for externally supplied piece lists.
  static RotElement from_pieces(const RotationSystem& sys,
                                std::vector<Piece> pieces) {
    return RotElement(sys.alpha(), std::move(pieces), ErrorKind::Precondition);
  }

  const QuadExt& alpha() const { return alpha_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  bool is_identity() const {
    return pieces_.size() == 1 && pieces_[0].jump == 0;
  }

  // Cocycle value at x in [0, 1).
  const Int& cocycle_at(const QuadExt& x) const {
    return piece_at(x).jump;
  }

  // Image of the point x in [0, 1).
  QuadExt apply(const QuadExt& x) const {
    return (x + alpha_ * piece_at(x).jump).mod1();
  }

  // Exact image of a set under this element.
  ClopenSet image_of(const ClopenSet& A) const {
    ClopenSet out;
    for (const Piece& p : pieces_) {
      ClopenSet part = set_intersect(A, arc_set(p.arc));
      if (!part.is_empty())
        out = set_union(out, part.translated(alpha_ * p.jump));
    }
    return out;
  }

  // {x : g(x) != x}, a clopen set (cocycle 0 exactly on the fixed part).
  ClopenSet support() const {
    std::vector<std::pair<CirclePoint, CirclePoint>> eps;
    for (const Piece& p : pieces_)
      if (p.jump != 0)
        eps.emplace_back(CirclePoint(p.arc.lo), CirclePoint(p.arc.hi));
    return ClopenSet::from_endpoints(eps);
  }

  // The integral of the cocycle against Lebesgue measure; always an
  // integer for a genuine full-group element.
  Int index() const {
    QuadExt total;
    for (const Piece& p : pieces_)
      total += (p.arc.hi - p.arc.lo) * p.jump;
    if (!total.is_integer())
      throw internal_error("index is not an integer: " + total.str());
    return total.p();
  }

  RotElement inverse() const {
    std::vector<Piece> out;
    for (const Piece& p : pieces_) {
      ClopenSet img = arc_set(p.arc).translated(alpha_ * p.jump);
      for (const auto& a : img.arcs()) out.push_back({a, -p.jump});
    }
    return RotElement(alpha_, std::move(out), ErrorKind::Internal);
  }

  // g o h: apply h first. Cocycle law c(x) = c_g(h(x)) + c_h(x).
  friend RotElement compose(const RotElement& g, const RotElement& h) {
    if (!(g.alpha_ == h.alpha_))
      throw bad_field("composing elements over different rotations");
    std::vector<Piece> out;
    for (const Piece& hp : h.pieces_) {
      QuadExt shift = h.alpha_ * hp.jump;
      ClopenSet img = arc_set(hp.arc).translated(shift);
      for (const Piece& gp : g.pieces_) {
        ClopenSet mid = set_intersect(img, arc_set(gp.arc));
        if (mid.is_empty()) continue;
        ClopenSet back = mid.translated(-shift);
        for (const auto& a : back.arcs())
          out.push_back({a, gp.jump + hp.jump});
      }
    }
    return RotElement(g.alpha_, std::move(out), ErrorKind::Internal);
  }

  bool operator==(const RotElement& o) const {
    return alpha_ == o.alpha_ && pieces_ == o.pieces_;
  }

  friend std::size_t hash_value(const RotElement& g) {
    std::size_t seed = hash_value(g.alpha_);
    for (const Piece& p : g.pieces_) {
      boost::hash_combine(seed, hash_value(p.arc.lo));
      boost::hash_combine(seed, hash_value(p.arc.hi));
      boost::hash_combine(seed, p.jump);
    }
    return seed;
  }

  std::string str() const {
    std::string out;
    for (const Piece& p : pieces_) {
      if (!out.empty()) out += " ";
      out += "[" + p.arc.lo.str() + "," + p.arc.hi.str() + ")";
      out += (p.jump >= 0 ? "+" : "") + p.jump.str();
    }
    return out;
  }

 private:
  enum class ErrorKind { Precondition, Internal };

  RotElement(QuadExt alpha, std::vector<Piece> raw, ErrorKind kind)
      : alpha_(std::move(alpha)) {
    pieces_ = normalize(std::move(raw), kind);
    check_bijective(kind);
  }

  static ClopenSet arc_set(const ClopenSet::Arc& a) {
    return ClopenSet::interval(CirclePoint(a.lo), CirclePoint(a.hi));
  }

  [[noreturn]] static void fail(ErrorKind kind, const std::string& msg) {
    if (kind == ErrorKind::Precondition) throw precondition_error(msg);
    throw internal_error(msg);
  }

  static std::vector<Piece> normalize(std::vector<Piece> raw, ErrorKind kind) {
    std::erase_if(raw,
                  [](const Piece& p) { return p.arc.lo.compare(p.arc.hi) >= 0; });
    std::sort(raw.begin(), raw.end(), [](const Piece& x, const Piece& y) {
      return x.arc.lo.compare(y.arc.lo) < 0;
    });
    if (raw.empty()) fail(kind, "element pieces do not cover the circle");
    if (!raw.front().arc.lo.is_zero())
      fail(kind, "element pieces do not cover the circle near 0");
    std::vector<Piece> out;
    for (Piece& p : raw) {
      if (!out.empty()) {
        auto c = out.back().arc.hi.compare(p.arc.lo);
        if (c != 0)
          fail(kind, c < 0 ? "gap in domain partition at " + p.arc.lo.str()
                           : "overlap in domain partition at " +
                                 p.arc.lo.str());
        if (out.back().jump == p.jump) {
          out.back().arc.hi = p.arc.hi;
          continue;
        }
      }
      out.push_back(std::move(p));
    }
    if (!(out.back().arc.hi == QuadExt::integer(1)))
      fail(kind, "element pieces do not cover the circle near 1");
    return out;
  }

  void check_bijective(ErrorKind kind) const {
    std::vector<ClopenSet::Arc> image;
    for (const Piece& p : pieces_) {
      ClopenSet img = arc_set(p.arc).translated(alpha_ * p.jump);
      for (const auto& a : img.arcs()) image.push_back(a);
    }
    std::sort(image.begin(), image.end(),
              [](const ClopenSet::Arc& x, const ClopenSet::Arc& y) {
                return x.lo.compare(y.lo) < 0;
              });
    if (!image.front().lo.is_zero())
      fail(kind, "image arcs do not cover the circle: not bijective");
    for (std::size_t i = 0; i + 1 < image.size(); ++i) {
      auto c = image[i].hi.compare(image[i + 1].lo);
      if (c > 0)
        fail(kind, "image arcs overlap at " + image[i + 1].lo.str() +
                       ": not injective");
      if (c < 0)
        fail(kind, "image arcs leave a gap at " + image[i].hi.str() +
                       ": not surjective");
    }
    if (!(image.back().hi == QuadExt::integer(1)))
      fail(kind, "image arcs do not cover the circle: not bijective");
  }

  const Piece& piece_at(const QuadExt& x) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const QuadExt& v, const Piece& p) {
                                 return v.compare(p.arc.lo) < 0;
                               });
    if (it == pieces_.begin())
      throw internal_error("point below first piece: " + x.str());
    return *(it - 1);
  }

  QuadExt alpha_;
  std::vector<Piece> pieces_;
};

// g^n by repeated composition (n may be negative).
inline RotElement rot_power(const RotationSystem& sys, const RotElement& g,
                            long long n) {
  RotElement base = n < 0 ? g.inverse() : g;
  long long k = n < 0 ? -n : n;
  RotElement acc = RotElement::identity(sys);
  for (long long i = 0; i < k; ++i) acc = compose(base, acc);
  return acc;
}

// phi^n: the constant cocycle n on the whole circle.
inline RotElement phi_power(const RotationSystem& sys, const Int& n) {
  std::vector<RotElement::Piece> p;
  p.push_back({{QuadExt::integer(0), QuadExt::integer(1)}, n});
  return RotElement::from_pieces(sys, std::move(p));
}

namespace detail {

// Piecewise element from disjoint regions; everything else is fixed.
inline RotElement from_regions(
    const RotationSystem& sys,
    const std::vector<std::pair<ClopenSet, Int>>& regions) {
  std::vector<RotElement::Piece> pieces;
  ClopenSet covered;
  for (const auto& [set, jump] : regions) {
    for (const auto& a : set.arcs()) pieces.push_back({a, jump});
    covered = set_union(covered, set);
  }
  ClopenSet rest = covered.complement();
  for (const auto& a : rest.arcs()) pieces.push_back({a, 0});
  return RotElement::from_pieces(sys, std::move(pieces));
}

}  // namespace detail

/*
 * The order-two element exchanging V and phi(V):
 *   x -> phi(x) on V, x -> phi^{-1}(x) on phi(V), fixed elsewhere.
 * This single constructor realizes both sigma_U (V = U) and tau_V.
 */
inline RotElement swap_element(const RotationSystem& sys, const ClopenSet& V) {
  ClopenSet shifted = sys.translate(V, 1);
  ClopenSet overlap = set_intersect(V, shifted);
  if (!overlap.is_empty())
    throw precondition_error("swap requires V and phi(V) disjoint; overlap " +
                             overlap.str());
  if (V.is_empty()) return RotElement::identity(sys);
  return detail::from_regions(sys, {{V, 1}, {shifted, -1}});
}

// sigma_U for the session base interval U = [0, alpha).
inline RotElement sigma_u(const RotationSystem& sys) {
  return swap_element(sys, sys.base_interval());
}

/*
 * The order-three element cyclically permuting phi^{-1}(W), W, phi(W):
 *   x -> phi(x) on phi^{-1}(W) u W, x -> phi^{-2}(x) on phi(W).
 * Requires the three translates mutually disjoint.
 */
inline RotElement gamma_element(const RotationSystem& sys, const ClopenSet& W) {
  ClopenSet left = sys.translate(W, -1);
  ClopenSet right = sys.translate(W, 1);
  const char* names[3] = {"phi^{-1}(W)", "W", "phi(W)"};
  const ClopenSet* sets[3] = {&left, &W, &right};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      ClopenSet overlap = set_intersect(*sets[i], *sets[j]);
      if (!overlap.is_empty())
        throw precondition_error(std::string("gamma requires ") + names[i] +
                                 " and " + names[j] + " disjoint; overlap " +
                                 overlap.str());
    }
  if (W.is_empty()) return RotElement::identity(sys);
  return detail::from_regions(sys, {{set_union(left, W), 1}, {right, -2}});
}

/*
 * First return map on U, extended by the identity off U. Partition
 * refinement: the subset of U not yet returned meets phi^{-n}(U) at step n
 * and gets cocycle n there. Terminates for every nonempty U; the step cap
 * only guards against configuration mistakes.
 */
inline RotElement first_return(const RotationSystem& sys, const ClopenSet& U,
                               long long step_cap = 1'000'000) {
  if (U.is_empty())
    throw precondition_error("first return map needs a nonempty set");
  std::vector<RotElement::Piece> pieces;
  ClopenSet remaining = U;
  for (long long n = 1; !remaining.is_empty(); ++n) {
    if (n > step_cap)
      throw resource_error("first-return step cap (" +
                           std::to_string(step_cap) + ") exceeded");
    ClopenSet hit = set_intersect(remaining, sys.translate(U, -n));
    if (hit.is_empty()) continue;
    for (const auto& a : hit.arcs()) pieces.push_back({a, n});
    remaining = set_diff(remaining, hit);
  }
  ClopenSet off = U.complement();
  for (const auto& a : off.arcs()) pieces.push_back({a, 0});
  return RotElement::from_pieces(sys, std::move(pieces));
}

// Generator words over {phi, phi^{-1}, sigma_U}; letters[0] is applied
// last, matching composition notation left to right.
struct GenWord {
  enum class Letter : char { Phi = 'P', PhiInv = 'p', SigmaU = 's' };

  std::vector<Letter> letters;

  static GenWord sigma() { return GenWord{{Letter::SigmaU}}; }

  static GenWord phi_word(long long n) {
    GenWord w;
    Letter l = n >= 0 ? Letter::Phi : Letter::PhiInv;
    for (long long i = 0; i < (n >= 0 ? n : -n); ++i) w.letters.push_back(l);
    return w;
  }

  // Composition: (*this) o o.
  GenWord operator*(const GenWord& o) const {
    GenWord w = *this;
    w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
    return w;
  }

  GenWord inverse() const {
    GenWord w;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      switch (*it) {
        case Letter::Phi: w.letters.push_back(Letter::PhiInv); break;
        case Letter::PhiInv: w.letters.push_back(Letter::Phi); break;
        case Letter::SigmaU: w.letters.push_back(Letter::SigmaU); break;
      }
    }
    return w;
  }

  std::string str() const {
    std::string out;
    for (Letter l : letters) out += static_cast<char>(l);
    return out;
  }

  static GenWord parse(std::string_view text) {
    GenWord w;
    for (std::size_t i = 0; i < text.size(); ++i) {
      switch (text[i]) {
        case 'P': w.letters.push_back(Letter::Phi); break;
        case 'p': w.letters.push_back(Letter::PhiInv); break;
        case 's': w.letters.push_back(Letter::SigmaU); break;
        default: throw parse_error("expected one of 'p', 'P', 's'", i);
      }
    }
    return w;
  }

  std::size_t size() const { return letters.size(); }
};

inline RotElement eval_word(const RotationSystem& sys, const GenWord& w) {
  const RotElement phi = phi_power(sys, 1);
  const RotElement phi_inv = phi_power(sys, -1);
  const RotElement sigma = sigma_u(sys);
  RotElement acc = RotElement::identity(sys);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    const RotElement* next = nullptr;
    switch (*it) {
      case GenWord::Letter::Phi: next = &phi; break;
      case GenWord::Letter::PhiInv: next = &phi_inv; break;
      case GenWord::Letter::SigmaU: next = &sigma; break;
    }
    acc = compose(*next, acc);
  }
  return acc;
}

// phi^j sigma_U phi^{-j}, which equals sigma_{phi^j(U)}.
inline GenWord sigma_conjugate_word(long long j) {
  return GenWord::phi_word(j) * GenWord::sigma() * GenWord::phi_word(-j);
}

// Four-swap word for the 3-cycle on the translate phi^n(U):
//   sigma_{phi^n(U)} sigma_{phi^{n-1}(U)} sigma_{phi^n(U)} sigma_{phi^{n-1}(U)}
inline GenWord gamma_translate_word(long long n) {
  GenWord a = sigma_conjugate_word(n);
  GenWord b = sigma_conjugate_word(n - 1);
  return a * b * a * b;
}

/*
 * Word over {phi, phi^{-1}, sigma_U} evaluating to gamma of
 * phi^m(U) n phi^n(U) (for m == n, gamma of the translate itself).
 * For m != n the word is the commutator of two translate words chosen by
 * which endpoint opens the intersection arc; requires alpha < 1/6 and the
 * five supporting translates disjoint.
 */
inline GenWord gamma_word(const RotationSystem& sys, long long m, long long n) {
  if ((sys.alpha() * 6).compare(QuadExt::integer(1)) >= 0)
    throw precondition_error("word synthesis requires alpha < 1/6");
  if (m == n) return gamma_translate_word(n);

  ClopenSet A = sys.base_translate(m);
  ClopenSet B = sys.base_translate(n);
  ClopenSet meet = set_intersect(A, B);
  if (meet.is_empty())
    throw precondition_error("phi^" + std::to_string(m) + "(U) and phi^" +
                             std::to_string(n) +
                             "(U) are disjoint: nothing to synthesize");

  auto point = [&](long long k) {
    return CirclePoint(sys.multiple(Int(k)));
  };
  long long lo, hi;  // meet = [lo*alpha, (hi+1)*alpha) on the circle
  if (meet == ClopenSet::interval(point(m), point(n + 1))) {
    lo = m;
    hi = n;
  } else if (meet == ClopenSet::interval(point(n), point(m + 1))) {
    lo = n;
    hi = m;
  } else {
    throw internal_error("intersection of translates is not a single arc");
  }

  // gamma_{phi^{lo+1}(U)} and gamma_{phi^{hi-1}(U)} must act on disjoint
  // supports away from the intersection.
  struct Named {
    std::string name;
    ClopenSet set;
  };
  std::vector<Named> guard;
  auto tr = [&](long long k) { return sys.base_translate(k); };
  auto nm = [](long long k) { return "phi^" + std::to_string(k) + "(U)"; };
  guard.push_back({nm(hi - 2), tr(hi - 2)});
  guard.push_back({nm(hi - 1), tr(hi - 1)});
  guard.push_back({nm(hi) + " u " + nm(lo), set_union(tr(hi), tr(lo))});
  guard.push_back({nm(lo + 1), tr(lo + 1)});
  guard.push_back({nm(lo + 2), tr(lo + 2)});
  for (std::size_t i = 0; i < guard.size(); ++i)
    for (std::size_t j = i + 1; j < guard.size(); ++j) {
      ClopenSet overlap = set_intersect(guard[i].set, guard[j].set);
      if (!overlap.is_empty())
        throw precondition_error("synthesis needs " + guard[i].name + " and " +
                                 guard[j].name + " disjoint; overlap " +
                                 overlap.str());
    }

  GenWord a = gamma_translate_word(lo + 1);
  GenWord b = gamma_translate_word(hi - 1);
  return a * b.inverse() * a.inverse() * b;
}

// r = psi phi psi phi^{-1} and s = tau_O, the generating pair whose
// conjugates realize the wreath relations inside the full group.
struct LamplighterPair {
  RotElement r, s, psi;
};

inline LamplighterPair lamplighter_pair(const RotationSystem& sys,
                                        const ClopenSet& U, const ClopenSet& O,
                                        long long step_cap = 1'000'000) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      ClopenSet overlap =
          set_intersect(sys.translate(U, i), sys.translate(U, j));
      if (!overlap.is_empty())
        throw precondition_error(
            "need U, phi(U), phi^2(U), phi^3(U) disjoint; phi^" +
            std::to_string(i) + "(U) meets phi^" + std::to_string(j) +
            "(U) in " + overlap.str());
    }
  if (!is_subset(O, U))
    throw precondition_error("O must be contained in U; excess " +
                             set_diff(O, U).str());

  RotElement psi = first_return(sys, U, step_cap);
  RotElement phi = phi_power(sys, 1);
  RotElement r = compose(compose(psi, phi), compose(psi, phi.inverse()));
  RotElement s = swap_element(sys, O);

  ClopenSet bound = set_union(U, sys.translate(U, 1));
  ClopenSet excess =
      set_diff(set_union(r.support(), s.support()), bound);
  if (!excess.is_empty())
    throw internal_error("support of (r, s) escapes U u phi(U): " +
                         excess.str());
  return {std::move(r), std::move(s), std::move(psi)};
}

// r' = r phi^2 r^{-1} phi^{-2} and s' = s phi^2 s^{-1} phi^{-2}: the same
// relations hold, all indices vanish, and both land in the derived
// subgroup.
struct DerivedPair {
  RotElement r, s;
};

inline DerivedPair derived_embedding(const RotationSystem& sys,
                                     const RotElement& r, const RotElement& s,
                                     const ClopenSet& U) {
  ClopenSet bound = set_union(U, sys.translate(U, 1));
  ClopenSet excess = set_diff(set_union(r.support(), s.support()), bound);
  if (!excess.is_empty())
    throw precondition_error("supports must lie in U u phi(U); excess " +
                             excess.str());
  RotElement phi2 = phi_power(sys, 2);
  RotElement phi2inv = phi_power(sys, -2);
  auto conj = [&](const RotElement& g) {
    return compose(compose(g, phi2), compose(g.inverse(), phi2inv));
  };
  DerivedPair out{conj(r), conj(s)};
  if (out.r.index() != 0 || out.s.index() != 0)
    throw internal_error("derived pair has nonzero index");
  return out;
}

}  // namespace tfg

#endif
