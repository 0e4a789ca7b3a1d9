#ifndef TFG_LAMPLIGHTER_HPP
#define TFG_LAMPLIGHTER_HPP

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace tfg {

/*
 * An element of the wreath product (sum_Z Z_2) x| Z: a finite set of lit
 * lamp positions plus a shift. This direct model is the independent
 * growth oracle against which the rotation-group pair (r, s) is checked.
 *
 * Product: (b1, t1) (b2, t2) = (b1 ^ (b2 + t1), t1 + t2), where ^ is
 * symmetric difference and + t1 translates positions.
 */
class LampElement {
 public:
  LampElement() = default;

  static LampElement shift_gen(std::int64_t n = 1) {
    LampElement e;
    e.shift_ = n;
    return e;
  }

  static LampElement toggle(std::int64_t pos = 0) {
    LampElement e;
    e.lamps_.push_back(pos);
    return e;
  }

  const std::vector<std::int64_t>& lamps() const { return lamps_; }
  std::int64_t shift() const { return shift_; }
  bool is_identity() const { return lamps_.empty() && shift_ == 0; }

  friend LampElement compose(const LampElement& a, const LampElement& b) {
    LampElement out;
    out.shift_ = a.shift_ + b.shift_;
    out.lamps_.reserve(a.lamps_.size() + b.lamps_.size());
    // merge a.lamps_ with (b.lamps_ + a.shift_), dropping pairs
    std::size_t i = 0, j = 0;
    while (i < a.lamps_.size() || j < b.lamps_.size()) {
      std::int64_t x;
      if (j >= b.lamps_.size())
        x = a.lamps_[i++];
      else if (i >= a.lamps_.size())
        x = b.lamps_[j++] + a.shift_;
      else {
        std::int64_t va = a.lamps_[i], vb = b.lamps_[j] + a.shift_;
        if (va == vb) {
          ++i;
          ++j;
          continue;
        }
        x = va < vb ? a.lamps_[i++] : (b.lamps_[j++] + a.shift_);
      }
      out.lamps_.push_back(x);
    }
    return out;
  }

  LampElement inverse() const {
    LampElement out;
    out.shift_ = -shift_;
    out.lamps_.reserve(lamps_.size());
    for (std::int64_t x : lamps_) out.lamps_.push_back(x - shift_);
    std::sort(out.lamps_.begin(), out.lamps_.end());
    return out;
  }

  bool operator==(const LampElement& o) const {
    return shift_ == o.shift_ && lamps_ == o.lamps_;
  }

  friend std::size_t hash_value(const LampElement& e) {
    std::size_t seed = boost::hash<std::int64_t>()(e.shift_);
    boost::hash_combine(seed,
                        boost::hash_range(e.lamps_.begin(), e.lamps_.end()));
    return seed;
  }

  std::string str() const {
    std::string out = "({";
    for (std::size_t i = 0; i < lamps_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(lamps_[i]);
    }
    return out + "}, " + std::to_string(shift_) + ")";
  }

 private:
  std::vector<std::int64_t> lamps_;  // sorted, unique
  std::int64_t shift_ = 0;
};

}  // namespace tfg

#endif
