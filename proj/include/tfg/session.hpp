#ifndef TFG_SESSION_HPP
#define TFG_SESSION_HPP

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "tfg/errors.hpp"
#include "tfg/quadratic.hpp"
#include "tfg/report.hpp"

namespace tfg {

/*
 * One workbench session: the rotation number, the odometer tower, the
 * finite verification ranges and the resource caps. The defaults satisfy
 * every standing hypothesis (alpha = sqrt(2)/10 < 1/6 and 4*alpha < 1)
 * and keep the full suite under a minute.
 */
struct SessionConfig {
  QuadExt alpha = QuadExt(0, 1, 10, 2);  // sqrt(2)/10
  std::vector<std::int64_t> tower = {2, 4, 8, 16, 32, 64, 128, 256};

  int translate_range = 6;    // prop23: translates with |k| <= N
  int lamplighter_range = 5;  // thm24: conjugate range
  int pair_range = 8;         // prop31: |m|, |n| <= range
  int ball_radius = 7;        // growth radius
  int odo_kmax = 2;           // prop21: levels checked
  int odo_pairs = 1000;       // prop21: random pairs per check
  int odo_growth_level = 2;   // growth target odo: tower level to enumerate
  int o_search_budget = 20;   // thm24: candidate count for O

  long long first_return_cap = 1'000'000;
  std::size_t ball_cap = 5'000'000;

  std::uint64_t seed = 20240810;
  int workers = 1;
  bool deterministic = false;

  void validate_alpha() const {
    if (alpha.is_rational())
      throw precondition_error(
          "alpha must be irrational: the q coefficient is zero");
    if (alpha.sign() <= 0 || alpha.compare(QuadExt::integer(1)) >= 0)
      throw precondition_error("alpha must lie in (0, 1)");
  }

  // Mathematical configuration only: reports must not depend on worker
  // count or output paths.
  Json echo() const {
    Json j;
    j["alpha"] = alpha.str();
    j["tower"] = tower;
    j["ranges"] = {{"translate", translate_range},
                   {"lamplighter", lamplighter_range},
                   {"pairs", pair_range},
                   {"ball_radius", ball_radius}};
    j["caps"] = {{"first_return_steps", first_return_cap},
                 {"ball_elements", ball_cap}};
    j["seed"] = seed;
    return j;
  }

  // Config file layout mirrors echo(); absent fields keep their defaults.
  static SessionConfig from_json(const Json& j) {
    SessionConfig cfg;
    if (j.contains("alpha")) cfg.alpha = QuadExt::parse(j["alpha"].get<std::string>());
    if (j.contains("tower")) cfg.tower = j["tower"].get<std::vector<std::int64_t>>();
    if (j.contains("ranges")) {
      const Json& r = j["ranges"];
      if (r.contains("translate")) cfg.translate_range = r["translate"];
      if (r.contains("lamplighter")) cfg.lamplighter_range = r["lamplighter"];
      if (r.contains("pairs")) cfg.pair_range = r["pairs"];
      if (r.contains("ball_radius")) cfg.ball_radius = r["ball_radius"];
    }
    if (j.contains("caps")) {
      const Json& c = j["caps"];
      if (c.contains("first_return_steps"))
        cfg.first_return_cap = c["first_return_steps"];
      if (c.contains("ball_elements")) cfg.ball_cap = c["ball_elements"];
    }
    if (j.contains("seed")) cfg.seed = j["seed"];
    if (j.contains("o_search_budget")) cfg.o_search_budget = j["o_search_budget"];
    return cfg;
  }

  // Caps may be overridden from the environment.
  void apply_env() {
    if (const char* v = std::getenv("WORKBENCH_FIRST_RETURN_CAP"))
      first_return_cap = std::atoll(v);
    if (const char* v = std::getenv("WORKBENCH_BALL_CAP"))
      ball_cap = static_cast<std::size_t>(std::atoll(v));
  }
};

inline std::vector<std::int64_t> parse_tower(const std::string& text) {
  std::vector<std::int64_t> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (cur.empty()) throw malformed_number("empty tower entry");
      out.push_back(std::atoll(cur.c_str()));
      cur.clear();
    } else if (c >= '0' && c <= '9') {
      cur += c;
    } else {
      throw malformed_number(std::string("unexpected character '") + c +
                             "' in tower list");
    }
  }
  if (cur.empty()) throw malformed_number("empty tower entry");
  out.push_back(std::atoll(cur.c_str()));
  return out;
}

}  // namespace tfg

#endif
