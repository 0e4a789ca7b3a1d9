#ifndef TFG_GROWTH_HPP
#define TFG_GROWTH_HPP

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tfg/errors.hpp"

namespace tfg {

template <class E>
concept GroupElement = requires(const E& a, const E& b) {
  { compose(a, b) } -> std::convertible_to<E>;
  { a.inverse() } -> std::convertible_to<E>;
  { a == b } -> std::convertible_to<bool>;
  { hash_value(a) } -> std::convertible_to<std::size_t>;
};

struct BallOptions {
  int radius = 7;
  std::size_t max_elements = 5'000'000;
  int workers = 1;
};

// Cumulative ball sizes b(0), ..., b(R). When the element cap is hit the
// table stops at the last complete radius and is marked truncated.
struct BallTable {
  std::vector<std::size_t> sizes;
  bool truncated = false;
};

namespace detail {

template <class E>
struct CallHashValue {
  std::size_t operator()(const E& e) const { return hash_value(e); }
};

}  // namespace detail

/*
 * Breadth-first Cayley ball enumeration with exact deduplication by
 * canonical form. The generator set is symmetrized internally. Layers are
 * expanded level-synchronously; workers split a layer's compose work and
 * their buffers are merged in a fixed order, so the result is identical
 * for every worker count.
 */
template <GroupElement E>
BallTable ball_sizes(const E& identity, const std::vector<E>& generators,
                     const BallOptions& opt) {
  if (opt.radius < 0) throw precondition_error("radius must be >= 0");

  std::vector<E> gens;
  auto add_gen = [&](const E& g) {
    if (g == identity) return;
    for (const E& have : gens)
      if (have == g) return;
    gens.push_back(g);
  };
  for (const E& g : generators) {
    add_gen(g);
    add_gen(g.inverse());
  }

  std::unordered_set<E, detail::CallHashValue<E>> seen;
  seen.insert(identity);
  std::vector<E> frontier{identity};

  BallTable table;
  table.sizes.push_back(1);

  for (int r = 1; r <= opt.radius && !frontier.empty(); ++r) {
    const int workers = std::max(1, opt.workers);
    std::vector<std::vector<E>> buffers(static_cast<std::size_t>(workers));
    auto expand = [&](std::size_t w) {
      std::size_t begin = frontier.size() * w / workers;
      std::size_t end = frontier.size() * (w + 1) / workers;
      for (std::size_t i = begin; i < end; ++i)
        for (const E& g : gens) buffers[w].push_back(compose(frontier[i], g));
    };
    if (workers == 1) {
      expand(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < static_cast<std::size_t>(workers); ++w)
        pool.emplace_back(expand, w);
      for (auto& t : pool) t.join();
    }

    std::vector<E> next;
    for (auto& buf : buffers)
      for (E& x : buf) {
        if (seen.size() >= opt.max_elements) {
          table.truncated = true;
          return table;
        }
        if (seen.insert(x).second) next.push_back(std::move(x));
      }
    frontier = std::move(next);
    table.sizes.push_back(seen.size());
  }

  // A finite group exhausts its frontier; the ball is constant afterwards.
  while (static_cast<int>(table.sizes.size()) <= opt.radius)
    table.sizes.push_back(table.sizes.back());
  return table;
}

/*
 * Finite-range growth evidence. Two models are fitted to log2 b(n) over
 * the top half of the range: degree*log2(n) + c (polynomial) and
 * rate*n + c (exponential); the better-fitting model is then certified by
 * its own test - last ratios staying above 1 + delta for exponential,
 * doubling ratios within 2^(D + 0.5) for polynomial. A hint is evidence
 * about the measured range, never a proof.
 */
struct GrowthReport {
  enum class Hint { Exponential, PolynomialConsistent, Inconclusive };

  std::vector<double> ratios;    // b(n+1)/b(n)
  std::vector<double> doubling;  // b(2n)/b(n)
  double fitted_degree = 0.0;    // slope of log2 b against log2 n
  double poly_residual = 0.0;    // rms residuals of the two fits
  double exp_residual = 0.0;
  double rate_per_step = 0.0;    // 2^(slope of log2 b against n)
  double delta = 0.1;
  Hint hint = Hint::Inconclusive;

  static const char* hint_name(Hint h) {
    switch (h) {
      case Hint::Exponential: return "EXPONENTIAL";
      case Hint::PolynomialConsistent: return "POLYNOMIAL-CONSISTENT";
      default: return "INCONCLUSIVE";
    }
  }
};

namespace detail {

struct LineFit {
  double slope = 0.0, intercept = 0.0, rms = 0.0;
};

inline LineFit least_squares(const std::vector<double>& xs,
                             const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double se = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = ys[i] - (fit.slope * xs[i] + fit.intercept);
    se += e * e;
  }
  fit.rms = std::sqrt(se / static_cast<double>(n));
  return fit;
}

}  // namespace detail

inline GrowthReport growth_report(const BallTable& table, double delta = 0.1) {
  const auto& b = table.sizes;
  if (b.size() < 4)
    throw precondition_error("growth table too short to classify");

  GrowthReport rep;
  rep.delta = delta;
  for (std::size_t n = 0; n + 1 < b.size(); ++n)
    rep.ratios.push_back(static_cast<double>(b[n + 1]) /
                         static_cast<double>(b[n]));
  for (std::size_t n = 1; 2 * n < b.size(); ++n)
    rep.doubling.push_back(static_cast<double>(b[2 * n]) /
                           static_cast<double>(b[n]));

  const std::size_t radius = b.size() - 1;
  std::vector<double> log_n, plain_n, log_b;
  for (std::size_t n = std::max<std::size_t>(1, radius / 2); n <= radius; ++n) {
    log_n.push_back(std::log2(static_cast<double>(n)));
    plain_n.push_back(static_cast<double>(n));
    log_b.push_back(std::log2(static_cast<double>(b[n])));
  }
  auto poly_fit = detail::least_squares(log_n, log_b);
  auto exp_fit = detail::least_squares(plain_n, log_b);
  rep.fitted_degree = poly_fit.slope;
  rep.poly_residual = poly_fit.rms;
  rep.exp_residual = exp_fit.rms;
  rep.rate_per_step = std::exp2(exp_fit.slope);

  if (rep.poly_residual <= rep.exp_residual) {
    bool ok = true;
    for (double d : rep.doubling)
      if (d > std::exp2(rep.fitted_degree + 0.5)) ok = false;
    rep.hint = ok ? GrowthReport::Hint::PolynomialConsistent
                  : GrowthReport::Hint::Inconclusive;
  } else {
    bool ok = rep.ratios.size() >= 3;
    for (std::size_t i = rep.ratios.size() - 3; ok && i < rep.ratios.size();
         ++i)
      if (rep.ratios[i] < 1.0 + delta) ok = false;
    rep.hint = ok ? GrowthReport::Hint::Exponential
                  : GrowthReport::Hint::Inconclusive;
  }
  return rep;
}

}  // namespace tfg

#endif
