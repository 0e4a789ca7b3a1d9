#ifndef TFG_ODOMETER_HPP
#define TFG_ODOMETER_HPP

#include <boost/functional/hash.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tfg/errors.hpp"

namespace tfg {

// A divisibility tower m_1 | m_2 | ... | m_K, strictly increasing.
class OdoTower {
 public:
  explicit OdoTower(std::vector<std::int64_t> levels)
      : levels_(std::move(levels)) {
    if (levels_.empty()) throw precondition_error("tower must be nonempty");
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (levels_[i] <= 0)
        throw precondition_error("tower entries must be positive");
      if (i > 0) {
        if (levels_[i] <= levels_[i - 1])
          throw precondition_error("tower must be strictly increasing");
        if (levels_[i] % levels_[i - 1] != 0)
          throw precondition_error(
              std::to_string(levels_[i - 1]) + " does not divide " +
              std::to_string(levels_[i]));
      }
    }
  }

  static std::shared_ptr<const OdoTower> make(std::vector<std::int64_t> levels) {
    return std::make_shared<const OdoTower>(std::move(levels));
  }

  // Default test tower 2, 4, ..., 2^k.
  static std::shared_ptr<const OdoTower> powers_of_two(int k) {
    std::vector<std::int64_t> v;
    std::int64_t m = 1;
    for (int i = 0; i < k; ++i) v.push_back(m *= 2);
    return make(std::move(v));
  }

  std::size_t depth() const { return levels_.size(); }
  std::int64_t modulus(std::size_t level) const {  // 1-based level index
    if (level < 1 || level > levels_.size())
      throw precondition_error("level out of range");
    return levels_[level - 1];
  }
  const std::vector<std::int64_t>& levels() const { return levels_; }

  bool operator==(const OdoTower& o) const { return levels_ == o.levels_; }

 private:
  std::vector<std::int64_t> levels_;
};

namespace detail {
inline std::int64_t mod_pos(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}
}  // namespace detail

// The (n, tau) view of a level element: tau permutes the cells, n records
// how many full periods m_k each cell travels.
struct SemidirectPair {
  std::vector<std::int64_t> shifts;  // n, indexed by target cell
  std::vector<std::int64_t> perm;    // tau

  bool operator==(const SemidirectPair& o) const {
    return shifts == o.shifts && perm == o.perm;
  }
};

// Product in Z^m x| S_m: tau acts by permuting coordinates.
inline SemidirectPair pair_product(const SemidirectPair& a,
                                   const SemidirectPair& b) {
  const std::size_t m = a.perm.size();
  SemidirectPair out;
  out.perm.resize(m);
  out.shifts.resize(m);
  std::vector<std::int64_t> a_inv(m);
  for (std::size_t l = 0; l < m; ++l)
    a_inv[static_cast<std::size_t>(a.perm[l])] = static_cast<std::int64_t>(l);
  for (std::size_t l = 0; l < m; ++l) {
    out.perm[l] = a.perm[static_cast<std::size_t>(b.perm[l])];
    out.shifts[l] =
        a.shifts[l] + b.shifts[static_cast<std::size_t>(a_inv[l])];
  }
  return out;
}

/*
 * A level-k element of the odometer full group: an integer cocycle vector
 * over Z_{m_k}, acting as x -> x + c_{x mod m_k}. Validity requires the
 * induced map l -> l + c_l mod m_k to permute the cells; the cocycle
 * vector itself is the canonical form.
 */
class OdoElement {
 public:
  static OdoElement make(std::shared_ptr<const OdoTower> tower,
                         std::size_t level, std::vector<std::int64_t> c) {
    const std::int64_t m = tower->modulus(level);
    if (static_cast<std::int64_t>(c.size()) != m)
      throw precondition_error("cocycle vector must have length m_k = " +
                               std::to_string(m));
    std::vector<std::int64_t> hit(static_cast<std::size_t>(m), -1);
    for (std::int64_t l = 0; l < m; ++l) {
      std::int64_t t = detail::mod_pos(l + c[static_cast<std::size_t>(l)], m);
      if (hit[static_cast<std::size_t>(t)] >= 0)
        throw precondition_error(
            "not a permutation: cells " +
            std::to_string(hit[static_cast<std::size_t>(t)]) + " and " +
            std::to_string(l) + " both map to cell " + std::to_string(t));
      hit[static_cast<std::size_t>(t)] = l;
    }
    return OdoElement(std::move(tower), level, std::move(c));
  }

  static OdoElement identity(std::shared_ptr<const OdoTower> tower,
                             std::size_t level) {
    std::vector<std::int64_t> c(
        static_cast<std::size_t>(tower->modulus(level)), 0);
    return OdoElement(std::move(tower), level, std::move(c));
  }

  // phi restricted to level k: every cell advances by one.
  static OdoElement rotation(std::shared_ptr<const OdoTower> tower,
                             std::size_t level) {
    std::vector<std::int64_t> c(
        static_cast<std::size_t>(tower->modulus(level)), 1);
    return OdoElement(std::move(tower), level, std::move(c));
  }

  // The section of a permutation: c_l = tau(l) - l with both representatives
  // in {0, ..., m_k - 1}. This is a genuine homomorphism S_m -> Gamma_k.
  static OdoElement section(std::shared_ptr<const OdoTower> tower,
                            std::size_t level,
                            const std::vector<std::int64_t>& tau) {
    check_perm(tau, tower->modulus(level));
    std::vector<std::int64_t> c(tau.size());
    for (std::size_t l = 0; l < tau.size(); ++l)
      c[l] = tau[l] - static_cast<std::int64_t>(l);
    return OdoElement(std::move(tower), level, std::move(c));
  }

  // Inverse of split(): c_l = m_k * n_{tau(l)} + (tau(l) - l).
  static OdoElement unsplit(std::shared_ptr<const OdoTower> tower,
                            std::size_t level, const SemidirectPair& pair) {
    const std::int64_t m = tower->modulus(level);
    check_perm(pair.perm, m);
    if (pair.shifts.size() != pair.perm.size())
      throw precondition_error("shift vector and permutation sizes differ");
    std::vector<std::int64_t> c(pair.perm.size());
    for (std::size_t l = 0; l < pair.perm.size(); ++l) {
      std::int64_t t = pair.perm[l];
      c[l] = m * pair.shifts[static_cast<std::size_t>(t)] +
             (t - static_cast<std::int64_t>(l));
    }
    return OdoElement(std::move(tower), level, std::move(c));
  }

  const std::shared_ptr<const OdoTower>& tower() const { return tower_; }
  std::size_t level() const { return level_; }
  std::int64_t modulus() const { return tower_->modulus(level_); }
  const std::vector<std::int64_t>& cocycle() const { return c_; }

  bool is_identity() const {
    for (std::int64_t v : c_)
      if (v != 0) return false;
    return true;
  }

  // Cell permutation target.
  std::int64_t target(std::int64_t l) const {
    return detail::mod_pos(l + c_[static_cast<std::size_t>(l)], modulus());
  }

  // Residue action at any level j >= k; an element is determined by this
  // action for any such j, which makes finer levels an evaluation oracle.
  std::int64_t act(std::size_t at_level, std::int64_t x) const {
    if (at_level < level_)
      throw precondition_error("evaluation level is coarser than the element");
    const std::int64_t mj = tower_->modulus(at_level);
    const std::int64_t mk = modulus();
    return detail::mod_pos(
        x + c_[static_cast<std::size_t>(detail::mod_pos(x, mk))], mj);
  }

  friend OdoElement compose(const OdoElement& g, const OdoElement& h) {
    if (!(*g.tower_ == *h.tower_))
      throw precondition_error("elements from different towers");
    if (g.level_ != h.level_)
      throw precondition_error(
          "elements at different levels; lift to a common level first");
    const std::int64_t m = g.modulus();
    std::vector<std::int64_t> c(g.c_.size());
    for (std::int64_t l = 0; l < m; ++l) {
      std::int64_t mid = detail::mod_pos(l + h.c_[static_cast<std::size_t>(l)], m);
      c[static_cast<std::size_t>(l)] =
          g.c_[static_cast<std::size_t>(mid)] + h.c_[static_cast<std::size_t>(l)];
    }
    return OdoElement(g.tower_, g.level_, std::move(c));
  }

  OdoElement inverse() const {
    const std::int64_t m = modulus();
    std::vector<std::int64_t> c(c_.size());
    for (std::int64_t l = 0; l < m; ++l)
      c[static_cast<std::size_t>(target(l))] = -c_[static_cast<std::size_t>(l)];
    return OdoElement(tower_, level_, std::move(c));
  }

  // The same element one level finer; an injective homomorphism.
  OdoElement lift() const {
    if (level_ >= tower_->depth())
      throw precondition_error("already at the top level of the tower");
    const std::int64_t mk = modulus();
    const std::int64_t mk1 = tower_->modulus(level_ + 1);
    std::vector<std::int64_t> c(static_cast<std::size_t>(mk1));
    for (std::int64_t l = 0; l < mk1; ++l)
      c[static_cast<std::size_t>(l)] =
          c_[static_cast<std::size_t>(detail::mod_pos(l, mk))];
    return OdoElement(tower_, level_ + 1, std::move(c));
  }

  // Decompose into (n, tau): c_l = m_k * n_{tau(l)} + (tau(l) - l), with
  // cell representatives in {0, ..., m_k - 1}.
  SemidirectPair split() const {
    const std::int64_t m = modulus();
    SemidirectPair out;
    out.perm.resize(c_.size());
    out.shifts.resize(c_.size());
    for (std::int64_t l = 0; l < m; ++l) {
      std::int64_t t = target(l);
      std::int64_t num = c_[static_cast<std::size_t>(l)] -
                         (t - static_cast<std::int64_t>(l));
      if (num % m != 0)
        throw internal_error("split residue is not divisible by m_k");
      out.perm[static_cast<std::size_t>(l)] = t;
      out.shifts[static_cast<std::size_t>(t)] = num / m;
    }
    return out;
  }

  bool operator==(const OdoElement& o) const {
    return level_ == o.level_ && c_ == o.c_ && *tower_ == *o.tower_;
  }

  friend std::size_t hash_value(const OdoElement& g) {
    std::size_t seed = boost::hash<std::size_t>()(g.level_);
    boost::hash_combine(seed, boost::hash_range(g.c_.begin(), g.c_.end()));
    return seed;
  }

  std::string str() const {
    std::string out = "level " + std::to_string(level_) + ": [";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(c_[i]);
    }
    return out + "]";
  }

 private:
  OdoElement(std::shared_ptr<const OdoTower> tower, std::size_t level,
             std::vector<std::int64_t> c)
      : tower_(std::move(tower)), level_(level), c_(std::move(c)) {}

  static void check_perm(const std::vector<std::int64_t>& tau,
                         std::int64_t m) {
    if (static_cast<std::int64_t>(tau.size()) != m)
      throw precondition_error("permutation must have length m_k");
    std::vector<char> hit(static_cast<std::size_t>(m), 0);
    for (std::int64_t v : tau) {
      if (v < 0 || v >= m || hit[static_cast<std::size_t>(v)])
        throw precondition_error("not a permutation of {0, ..., m_k - 1}");
      hit[static_cast<std::size_t>(v)] = 1;
    }
  }

  std::shared_ptr<const OdoTower> tower_;
  std::size_t level_;
  std::vector<std::int64_t> c_;
};

}  // namespace tfg

#endif
