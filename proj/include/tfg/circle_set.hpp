#ifndef TFG_CIRCLE_SET_HPP
#define TFG_CIRCLE_SET_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tfg/errors.hpp"
#include "tfg/quadratic.hpp"

namespace tfg {

/*
 * Finite unions of half-open arcs [a, b) on the circle R/Z, the
 * computational model for the clopen algebra of the Sturmian system.
 *
 * Canonical form: arcs satisfy 0 <= lo < hi <= 1, are sorted by left
 * endpoint, pairwise disjoint and never adjacent (an arc ending where the
 * next begins is merged). Arcs crossing 0 are stored split at 0, so [a, 1)
 * and [0, b) are never merged into one record. Two sets are equal as point
 * sets iff their canonical forms are identical.
 */
class ClopenSet {
 public:
  struct Arc {
    QuadExt lo, hi;  // [lo, hi)
    bool operator==(const Arc& o) const { return lo == o.lo && hi == o.hi; }
  };

  ClopenSet() = default;  // empty set

  static ClopenSet empty() { return ClopenSet(); }

  static ClopenSet full() {
    ClopenSet s;
    s.arcs_.push_back({QuadExt::integer(0), QuadExt::integer(1)});
    return s;
  }

  // The arc from a to b, walking forward from a. If a >= b the arc wraps
  // through 0 (a == b yields the full circle).
  static ClopenSet interval(const CirclePoint& a, const CirclePoint& b) {
    std::vector<Arc> raw;
    append_wrapped(raw, a.value(), b.value());
    return ClopenSet(std::move(raw));
  }

  // Union of the given endpoint pairs (each pair as in interval()).
  static ClopenSet from_endpoints(
      const std::vector<std::pair<CirclePoint, CirclePoint>>& pairs) {
    std::vector<Arc> raw;
    for (const auto& [a, b] : pairs) append_wrapped(raw, a.value(), b.value());
    return ClopenSet(std::move(raw));
  }

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool is_empty() const { return arcs_.empty(); }
  bool is_full() const {
    return arcs_.size() == 1 && arcs_[0].lo.is_zero() &&
           arcs_[0].hi == QuadExt::integer(1);
  }

  // Membership of a point x in [0, 1).
  bool contains(const QuadExt& x) const {
    auto it = std::upper_bound(
        arcs_.begin(), arcs_.end(), x,
        [](const QuadExt& v, const Arc& a) { return v.compare(a.lo) < 0; });
    if (it == arcs_.begin()) return false;
    --it;
    return x.compare(it->hi) < 0;
  }

  QuadExt measure() const {
    QuadExt total;
    for (const Arc& a : arcs_) total += a.hi - a.lo;
    return total;
  }

  ClopenSet complement() const;

  // Translation by t on the circle (t reduced mod 1); measure-preserving.
  ClopenSet translated(const QuadExt& t) const {
    QuadExt s = t.mod1();
    std::vector<Arc> raw;
    const QuadExt one = QuadExt::integer(1);
    for (const Arc& a : arcs_) {
      QuadExt lo = a.lo + s, hi = a.hi + s;
      if (lo.compare(one) >= 0) {  // whole arc wrapped
        raw.push_back({lo - one, hi - one});
      } else if (hi.compare(one) > 0) {  // arc straddles 1
        raw.push_back({lo, one});
        raw.push_back({QuadExt::integer(0), hi - one});
      } else {
        raw.push_back({lo, hi});
      }
    }
    return ClopenSet(std::move(raw));
  }

  bool operator==(const ClopenSet& o) const { return arcs_ == o.arcs_; }

  std::string str() const {
    if (arcs_.empty()) return "{}";
    std::string out;
    for (const Arc& a : arcs_) {
      if (!out.empty()) out += " u ";
      out += "[" + a.lo.str() + ", " + a.hi.str() + ")";
    }
    return out;
  }

  friend std::size_t hash_value(const ClopenSet& s) {
    std::size_t seed = 0;
    for (const Arc& a : s.arcs_) {
      boost::hash_combine(seed, hash_value(a.lo));
      boost::hash_combine(seed, hash_value(a.hi));
    }
    return seed;
  }

  enum class Op { Union, Intersect, Diff, SymDiff };

  friend ClopenSet boolean_op(Op op, const ClopenSet& A, const ClopenSet& B);

 private:
  explicit ClopenSet(std::vector<Arc> raw) : arcs_(normalize(std::move(raw))) {}

  static void append_wrapped(std::vector<Arc>& raw, const QuadExt& a,
                             const QuadExt& b) {
    const QuadExt one = QuadExt::integer(1);
    if (a.compare(b) < 0) {
      raw.push_back({a, b});
    } else {  // wraps through 0; a == b covers the whole circle
      raw.push_back({a, one});
      if (!b.is_zero()) raw.push_back({QuadExt::integer(0), b});
    }
  }

  // Union semantics: overlapping or adjacent input arcs merge.
  static std::vector<Arc> normalize(std::vector<Arc> raw) {
    std::erase_if(raw, [](const Arc& a) { return a.lo.compare(a.hi) >= 0; });
    std::sort(raw.begin(), raw.end(), [](const Arc& x, const Arc& y) {
      return x.lo.compare(y.lo) < 0;
    });
    std::vector<Arc> out;
    for (Arc& a : raw) {
      if (!out.empty() && out.back().hi.compare(a.lo) >= 0) {
        if (out.back().hi.compare(a.hi) < 0) out.back().hi = a.hi;
      } else {
        out.push_back(std::move(a));
      }
    }
    return out;
  }

  std::vector<Arc> arcs_;
};

inline ClopenSet boolean_op(ClopenSet::Op op, const ClopenSet& A,
                            const ClopenSet& B) {
  using Op = ClopenSet::Op;
  // Sweep the common endpoint refinement; every segment between consecutive
  // cuts lies entirely inside or outside each operand.
  std::vector<QuadExt> cuts;
  cuts.push_back(QuadExt::integer(0));
  cuts.push_back(QuadExt::integer(1));
  for (const auto* s : {&A, &B})
    for (const auto& a : s->arcs()) {
      cuts.push_back(a.lo);
      cuts.push_back(a.hi);
    }
  std::sort(cuts.begin(), cuts.end(),
            [](const QuadExt& x, const QuadExt& y) { return x.compare(y) < 0; });
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](const QuadExt& x, const QuadExt& y) {
                           return x.compare(y) == 0;
                         }),
             cuts.end());

  std::vector<ClopenSet::Arc> raw;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    bool ina = A.contains(cuts[i]);
    bool inb = B.contains(cuts[i]);
    bool keep = false;
    switch (op) {
      case Op::Union: keep = ina || inb; break;
      case Op::Intersect: keep = ina && inb; break;
      case Op::Diff: keep = ina && !inb; break;
      case Op::SymDiff: keep = ina != inb; break;
    }
    if (!keep) continue;
    if (!raw.empty() && raw.back().hi == cuts[i])
      raw.back().hi = cuts[i + 1];
    else
      raw.push_back({cuts[i], cuts[i + 1]});
  }
  return ClopenSet(std::move(raw));
}

inline ClopenSet set_union(const ClopenSet& a, const ClopenSet& b) {
  return boolean_op(ClopenSet::Op::Union, a, b);
}
inline ClopenSet set_intersect(const ClopenSet& a, const ClopenSet& b) {
  return boolean_op(ClopenSet::Op::Intersect, a, b);
}
inline ClopenSet set_diff(const ClopenSet& a, const ClopenSet& b) {
  return boolean_op(ClopenSet::Op::Diff, a, b);
}
inline ClopenSet set_symdiff(const ClopenSet& a, const ClopenSet& b) {
  return boolean_op(ClopenSet::Op::SymDiff, a, b);
}

inline ClopenSet ClopenSet::complement() const {
  return set_diff(full(), *this);
}

inline bool is_subset(const ClopenSet& a, const ClopenSet& b) {
  return set_diff(a, b).is_empty();
}

inline bool are_disjoint(const ClopenSet& a, const ClopenSet& b) {
  return set_intersect(a, b).is_empty();
}

/*
 * F2-independence of indicator functions: a family is independent iff no
 * nonempty subfamily has empty symmetric difference. Decided by Gaussian
 * elimination over the common atom partition, not by subset enumeration;
 * a dependent family yields one inclusion-minimal witness subset.
 */
struct ParityCertificate {
  bool independent = false;
  std::size_t rank = 0;
  std::vector<std::size_t> witness;  // empty iff independent
};

namespace detail {

// Indicator rows of `sets` (restricted to `indices`) over the atom
// refinement; returns the index subset of the first dependency found, or
// empty if the subfamily is independent.
inline std::vector<std::size_t> parity_dependency(
    const std::vector<ClopenSet>& sets, const std::vector<std::size_t>& indices,
    std::size_t* rank_out = nullptr) {
  std::vector<QuadExt> cuts;
  cuts.push_back(QuadExt::integer(0));
  for (std::size_t i : indices)
    for (const auto& a : sets[i].arcs()) {
      cuts.push_back(a.lo);
      if (!(a.hi == QuadExt::integer(1))) cuts.push_back(a.hi);
    }
  std::sort(cuts.begin(), cuts.end(),
            [](const QuadExt& x, const QuadExt& y) { return x.compare(y) < 0; });
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](const QuadExt& x, const QuadExt& y) {
                           return x.compare(y) == 0;
                         }),
             cuts.end());

  const std::size_t atoms = cuts.size();
  // row i: atom memberships, then the combination bookkeeping
  std::vector<std::vector<char>> rows;
  std::vector<std::vector<char>> combo;
  std::vector<std::size_t> pivot_of_row;
  std::size_t rank = 0;

  for (std::size_t idx = 0; idx < indices.size(); ++idx) {
    std::vector<char> row(atoms, 0);
    for (std::size_t c = 0; c < atoms; ++c)
      row[c] = sets[indices[idx]].contains(cuts[c]) ? 1 : 0;
    std::vector<char> cmb(indices.size(), 0);
    cmb[idx] = 1;
    // reduce against recorded pivot rows
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (row[pivot_of_row[r]]) {
        for (std::size_t c = 0; c < atoms; ++c) row[c] ^= rows[r][c];
        for (std::size_t c = 0; c < indices.size(); ++c)
          cmb[c] ^= combo[r][c];
      }
    }
    std::size_t p = 0;
    while (p < atoms && !row[p]) ++p;
    if (p == atoms) {  // dependency found
      std::vector<std::size_t> witness;
      for (std::size_t c = 0; c < indices.size(); ++c)
        if (cmb[c]) witness.push_back(indices[c]);
      if (rank_out) *rank_out = rank;
      return witness;
    }
    ++rank;
    pivot_of_row.push_back(p);
    rows.push_back(std::move(row));
    combo.push_back(std::move(cmb));
  }
  if (rank_out) *rank_out = rank;
  return {};
}

}  // namespace detail

inline ParityCertificate parity_independent(const std::vector<ClopenSet>& sets) {
  if (sets.empty())
    throw precondition_error("parity independence of an empty family");
  std::vector<std::size_t> all(sets.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  std::size_t rank = 0;
  std::vector<std::size_t> witness = detail::parity_dependency(sets, all, &rank);
  if (witness.empty()) return {true, sets.size(), {}};

  // Shrink to an inclusion-minimal witness: while some element can be
  // dropped and a dependency still exists inside the rest, replace the
  // witness by that smaller dependency.
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t k = 0; k < witness.size(); ++k) {
      std::vector<std::size_t> rest;
      for (std::size_t j = 0; j < witness.size(); ++j)
        if (j != k) rest.push_back(witness[j]);
      if (rest.empty()) continue;
      auto smaller = detail::parity_dependency(sets, rest);
      if (!smaller.empty()) {
        witness = std::move(smaller);
        shrunk = true;
        break;
      }
    }
  }
  return {false, rank, witness};
}

}  // namespace tfg

#endif
