#ifndef TFG_QUADRATIC_HPP
#define TFG_QUADRATIC_HPP

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

#include "tfg/errors.hpp"

namespace tfg {

using Int = boost::multiprecision::cpp_int;

namespace detail {

// Floor division for arbitrary-precision integers, b > 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncates toward zero
  if (a % b != 0 && a < 0) --q;
  return q;
}

}  // namespace detail

/*
 * An element (p + q*sqrt(d))/r of the real quadratic field Q(sqrt(d)),
 * with p, q, r arbitrary-precision integers and d a fixed square-free
 * integer >= 2. Canonical form: r > 0 and gcd(p, q, r) = 1. Every
 * comparison is decided by exact sign analysis; no floating point is
 * ever consulted for a decision.
 *
 * Values with q = 0 are rational and combine with values over any d;
 * mixing two genuinely irrational values over different fields throws
 * bad_field.
 */
class QuadExt {
 public:
  QuadExt() : p_(0), q_(0), r_(1), d_(2) {}

  QuadExt(Int p, Int q, Int r, std::int64_t d)
      : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(d) {
    if (r_ == 0) throw malformed_number("denominator r must be nonzero");
    check_field(d_);
    canonicalize();
  }

  // Rational p/r, field-agnostic until combined.
  static QuadExt rational(Int p, Int r = 1, std::int64_t d = 2) {
    return QuadExt(std::move(p), 0, std::move(r), d);
  }

  static QuadExt integer(Int n, std::int64_t d = 2) {
    return QuadExt(std::move(n), 0, 1, d);
  }

  // sqrt(d) itself.
  static QuadExt root(std::int64_t d) { return QuadExt(0, 1, 1, d); }

  const Int& p() const { return p_; }
  const Int& q() const { return q_; }
  const Int& r() const { return r_; }
  std::int64_t d() const { return d_; }

  bool is_zero() const { return p_ == 0 && q_ == 0; }
  bool is_rational() const { return q_ == 0; }
  bool is_integer() const { return q_ == 0 && r_ == 1; }

  int sign() const { return sign_of(p_, q_, d_); }

  QuadExt operator-() const {
    QuadExt x = *this;
    x.p_ = -x.p_;
    x.q_ = -x.q_;
    return x;
  }

  QuadExt operator+(const QuadExt& o) const {
    std::int64_t d = joint_field(o);
    return QuadExt(p_ * o.r_ + o.p_ * r_, q_ * o.r_ + o.q_ * r_, r_ * o.r_, d);
  }

  QuadExt operator-(const QuadExt& o) const { return *this + (-o); }

  QuadExt operator*(const QuadExt& o) const {
    std::int64_t d = joint_field(o);
    return QuadExt(p_ * o.p_ + q_ * o.q_ * d, p_ * o.q_ + q_ * o.p_,
                   r_ * o.r_, d);
  }

  QuadExt operator*(const Int& n) const {
    return QuadExt(p_ * n, q_ * n, r_, d_);
  }

  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }

  // Exact comparison of real values.
  std::strong_ordering compare(const QuadExt& o) const {
    std::int64_t d = joint_field(o);
    // this - o has numerator a + b*sqrt(d) over positive denominator.
    Int a = p_ * o.r_ - o.p_ * r_;
    Int b = q_ * o.r_ - o.q_ * r_;
    int s = sign_of(a, b, d);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::strong_ordering operator<=>(const QuadExt& o) const {
    return compare(o);
  }

  // Canonical forms are unique per value, so value equality is structural
  // equality (rational values ignore the stored d).
  bool operator==(const QuadExt& o) const {
    if (q_ == 0 && o.q_ == 0) return p_ == o.p_ && r_ == o.r_;
    return d_ == o.d_ && p_ == o.p_ && q_ == o.q_ && r_ == o.r_;
  }

  // Greatest integer n with n <= value, computed by exact bracketing.
  Int floor_int() const {
    if (q_ == 0) return detail::floor_div(p_, r_);
    // s <= |q| sqrt(d) < s + 1 brackets the irrational part.
    Int s = boost::multiprecision::sqrt(Int(q_ * q_ * d_));
    Int lo = detail::floor_div(p_ + (q_ > 0 ? s : Int(-(s + 1))), r_) - 1;
    Int hi = detail::floor_div(p_ + (q_ > 0 ? Int(s + 1) : Int(-s)), r_) + 1;
    // greatest n in [lo, hi] with n <= value
    while (lo < hi) {
      Int mid = detail::floor_div(lo + hi + 1, 2);
      if (compare_with_int(mid) >= 0)
        lo = mid;
      else
        hi = mid - 1;
    }
    return lo;
  }

  // Fractional part, in [0, 1).
  QuadExt mod1() const { return *this - integer(floor_int(), d_); }

  // this - n, exact sign.
  int compare_with_int(const Int& n) const {
    return sign_of(p_ - n * r_, q_, d_);
  }

  // Display-only approximation; never used for decisions.
  double approx() const {
    double num = static_cast<double>(p_) +
                 static_cast<double>(q_) * std::sqrt(static_cast<double>(d_));
    return num / static_cast<double>(r_);
  }

  // Grammar: (p+q*sqrt(d))/r, whitespace-insensitive. Negative q prints as
  // (p-|q|*sqrt(d))/r and parses back.
  std::string str() const {
    std::string out = "(" + p_.str();
    out += (q_ < 0) ? "-" : "+";
    out += Int(boost::multiprecision::abs(q_)).str();
    out += "*sqrt(" + std::to_string(d_) + "))/" + r_.str();
    return out;
  }

  static QuadExt parse(std::string_view text);

  // Throws bad_field unless d is square-free and >= 2.
  static void check_field(std::int64_t d) {
    if (d < 2) throw bad_field("field parameter d must be >= 2");
    std::int64_t rem = d;
    for (std::int64_t i = 2; i * i <= rem; ++i) {
      if (i > 3'000'000)
        throw bad_field("field parameter d too large to validate");
      if (rem % i == 0) {
        rem /= i;
        if (rem % i == 0)
          throw bad_field("field parameter d = " + std::to_string(d) +
                          " is not square-free");
      }
    }
    // A perfect square >= 4 is caught above; d = 1 is caught by the bound.
  }

  friend std::size_t hash_value(const QuadExt& x) {
    std::size_t seed = 0;
    boost::hash_combine(seed, x.p_);
    boost::hash_combine(seed, x.q_);
    boost::hash_combine(seed, x.r_);
    boost::hash_combine(seed, x.q_ == 0 ? std::int64_t{0} : x.d_);
    return seed;
  }

 private:
  void canonicalize() {
    if (r_ < 0) {
      p_ = -p_;
      q_ = -q_;
      r_ = -r_;
    }
    Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(p_, q_), r_);
    if (g > 1) {
      p_ /= g;
      q_ /= g;
      r_ /= g;
    }
  }

  std::int64_t joint_field(const QuadExt& o) const {
    if (q_ == 0) return o.q_ == 0 ? d_ : o.d_;
    if (o.q_ != 0 && o.d_ != d_)
      throw bad_field("mixed fields: sqrt(" + std::to_string(d_) +
                      ") vs sqrt(" + std::to_string(o.d_) + ")");
    return d_;
  }

  // Sign of a + b*sqrt(d).
  static int sign_of(const Int& a, const Int& b, std::int64_t d) {
    int sa = a.sign(), sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Int a2 = a * a, b2d = b * b * d;
    if (a2 == b2d)
      throw internal_error("sqrt(d) compared rational; field is corrupt");
    return a2 > b2d ? sa : sb;
  }

  Int p_, q_, r_;
  std::int64_t d_;
};

inline QuadExt operator*(const Int& n, const QuadExt& x) { return x * n; }

// A point of the circle T = R/Z: a QuadExt reduced into [0, 1) on
// construction.
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(const QuadExt& x) : v_(x.mod1()) {}

  const QuadExt& value() const { return v_; }

  std::strong_ordering operator<=>(const CirclePoint& o) const {
    return v_.compare(o.v_);
  }
  bool operator==(const CirclePoint& o) const { return v_ == o.v_; }

  std::string str() const { return v_.str(); }

 private:
  QuadExt v_;
};

namespace detail {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw parse_error(std::string("expected '") + c + "'", pos);
  }
  void expect_word(std::string_view w) {
    skip_ws();
    if (text.substr(pos, w.size()) != w)
      throw parse_error("expected '" + std::string(w) + "'", pos);
    pos += w.size();
  }
  Int integer() {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    std::size_t digits = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == digits) throw parse_error("expected integer", start);
    Int v(std::string(text.substr(digits, pos - digits)));
    return neg ? Int(-v) : v;
  }
  void expect_end() {
    skip_ws();
    if (pos != text.size()) throw parse_error("trailing input", pos);
  }
};

}  // namespace detail

inline QuadExt QuadExt::parse(std::string_view text) {
  detail::Cursor c{text};
  c.expect('(');
  Int p = c.integer();
  c.skip_ws();
  if (c.pos >= text.size() || (text[c.pos] != '+' && text[c.pos] != '-'))
    throw parse_error("expected '+' or '-'", c.pos);
  bool minus = text[c.pos] == '-';
  ++c.pos;
  Int q = c.integer();
  if (minus) q = -q;
  c.expect('*');
  c.expect_word("sqrt");
  c.expect('(');
  Int d = c.integer();
  c.expect(')');
  c.expect(')');
  c.expect('/');
  Int r = c.integer();
  c.expect_end();
  if (d < 2 || d > Int(std::numeric_limits<std::int64_t>::max()))
    throw bad_field("field parameter d out of range");
  return QuadExt(std::move(p), std::move(q), std::move(r),
                 static_cast<std::int64_t>(d));
}

}  // namespace tfg

namespace std {
template <>
struct hash<tfg::QuadExt> {
  std::size_t operator()(const tfg::QuadExt& x) const { return hash_value(x); }
};
}  // namespace std

#endif
