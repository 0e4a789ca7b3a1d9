#ifndef TFG_VERIFY_HPP
#define TFG_VERIFY_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tfg/growth.hpp"
#include "tfg/lamplighter.hpp"
#include "tfg/odometer.hpp"
#include "tfg/parallel.hpp"
#include "tfg/report.hpp"
#include "tfg/rotation_group.hpp"
#include "tfg/session.hpp"

namespace tfg {

/*
 * Fault-injection hooks. Each verify command accepts one named fault that
 * corrupts a single checked identity; a sound suite must then report
 * REFUTED with a serialized witness. The hooks exist to prove the suite
 * can refute, and are reachable from the CLI via --inject-fault.
 */
enum class Fault {
  None,
  OdoCompose,       // prop21: substitute a wrong composition result
  DuplicateSet,     // prop23: append a duplicate family member
  ConjugateShift,   // thm24: compare against the wrong swap target
  WordExtraLetter,  // prop31: append a stray letter to one word
};

inline Fault parse_fault(const std::string& name) {
  if (name.empty() || name == "none") return Fault::None;
  if (name == "odo-compose") return Fault::OdoCompose;
  if (name == "duplicate-set") return Fault::DuplicateSet;
  if (name == "conjugate-shift") return Fault::ConjugateShift;
  if (name == "word-extra-letter") return Fault::WordExtraLetter;
  throw precondition_error("unknown fault '" + name + "'");
}

namespace detail {

// Capture precondition-style failures as ERROR reports; internal errors
// keep propagating because they signal bugs, not bad inputs.
template <class Fn>
void guarded(Report& rep, Fn&& body) {
  try {
    body();
  } catch (const internal_error&) {
    throw;
  } catch (const error& e) {
    rep.status = Status::Error;
    rep.note = e.what();
  }
  rep.finalize();
}

struct SplitMix {
  std::mt19937_64 gen;
  explicit SplitMix(std::uint64_t seed) : gen(seed) {}
  std::int64_t pick(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    gen() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::vector<std::int64_t> perm(std::int64_t m) {
    std::vector<std::int64_t> p(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i;
    for (std::size_t i = p.size(); i > 1; --i)
      std::swap(p[i - 1], p[static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(i) - 1))]);
    return p;
  }
  OdoElement element(const std::shared_ptr<const OdoTower>& tower,
                     std::size_t level) {
    SemidirectPair pair;
    pair.perm = perm(tower->modulus(level));
    for (std::int64_t i = 0; i < tower->modulus(level); ++i)
      pair.shifts.push_back(pick(-3, 3));
    return OdoElement::unsplit(tower, level, pair);
  }
};

}  // namespace detail

/*
 * Level decomposition of the odometer full group: composition agrees with
 * the residue-action oracle two levels finer, split/unsplit realize the
 * Z^m x| S_m product, the permutation section is a homomorphism and lift
 * embeds each level into the next.
 */
inline Report verify_prop21(const SessionConfig& cfg, Fault fault = Fault::None) {
  Report rep;
  rep.claim = "prop21";
  rep.statement =
      "level-k odometer elements form Z^{m_k} x| S_{m_k}: residue-action "
      "oracle, semidirect pair law, section and lift homomorphisms";
  rep.config = cfg.echo();
  rep.config["k_max"] = cfg.odo_kmax;
  rep.config["pairs"] = cfg.odo_pairs;

  detail::guarded(rep, [&] {
    auto tower = OdoTower::make(cfg.tower);
    if (cfg.odo_kmax < 1 ||
        static_cast<std::size_t>(cfg.odo_kmax) + 2 > tower->depth())
      throw precondition_error(
          "tower too shallow: need k_max + 2 levels, have " +
          std::to_string(tower->depth()));

    detail::SplitMix rng(cfg.seed);
    const int pairs = cfg.odo_pairs;

    for (std::size_t level = 1; level <= static_cast<std::size_t>(cfg.odo_kmax);
         ++level) {
      const std::size_t fine = level + 2;
      const std::int64_t mfine = tower->modulus(fine);
      std::string lv = "level " + std::to_string(level);

      {  // composition vs residue evaluation oracle
        Instance inst{lv + ": compose matches residue oracle at level " +
                          std::to_string(fine) + " on " +
                          std::to_string(pairs) + " pairs",
                      true, "", ""};
        for (int t = 0; t < pairs && inst.ok; ++t) {
          OdoElement g = rng.element(tower, level);
          OdoElement h = rng.element(tower, level);
          OdoElement gh = compose(g, h);
          if (fault == Fault::OdoCompose && t == 0) {
            std::vector<std::int64_t> tr(
                static_cast<std::size_t>(tower->modulus(level)));
            for (std::size_t i = 0; i < tr.size(); ++i)
              tr[i] = static_cast<std::int64_t>(i);
            std::swap(tr[0], tr[1]);
            gh = compose(gh, OdoElement::section(tower, level, tr));
          }
          for (std::int64_t x = 0; x < mfine; ++x) {
            std::int64_t direct = gh.act(fine, x);
            std::int64_t chained = g.act(fine, h.act(fine, x));
            if (direct != chained) {
              inst.ok = false;
              inst.expected = "x=" + std::to_string(x) + " -> " +
                              std::to_string(chained) + " through g(h(x))";
              inst.got = gh.str() + " sends x=" + std::to_string(x) + " -> " +
                         std::to_string(direct);
              inst.note = "g = " + g.str() + ", h = " + h.str();
              break;
            }
          }
        }
        rep.add(std::move(inst));
      }

      {  // semidirect pair law
        Instance inst{lv + ": split carries composition to the pair product on " +
                          std::to_string(pairs) + " pairs",
                      true, "", ""};
        for (int t = 0; t < pairs && inst.ok; ++t) {
          OdoElement g = rng.element(tower, level);
          OdoElement h = rng.element(tower, level);
          SemidirectPair lhs = compose(g, h).split();
          SemidirectPair rhs = pair_product(g.split(), h.split());
          if (!(lhs == rhs)) {
            inst.ok = false;
            OdoElement want = OdoElement::unsplit(tower, level, rhs);
            OdoElement have = OdoElement::unsplit(tower, level, lhs);
            inst.expected = want.str();
            inst.got = have.str();
            inst.expected_json = to_json(want);
            inst.got_json = to_json(have);
            inst.note = "g = " + g.str() + ", h = " + h.str();
          }
        }
        rep.add(std::move(inst));
      }

      {  // section property
        Instance inst{lv + ": permutation section is a homomorphic right inverse on " +
                          std::to_string(pairs) + " pairs",
                      true, "", ""};
        const std::int64_t m = tower->modulus(level);
        for (int t = 0; t < pairs && inst.ok; ++t) {
          auto tau = rng.perm(m);
          auto rho = rng.perm(m);
          OdoElement st = OdoElement::section(tower, level, tau);
          OdoElement sr = OdoElement::section(tower, level, rho);
          std::vector<std::int64_t> comp(tau.size());
          for (std::size_t l = 0; l < tau.size(); ++l)
            comp[l] = tau[static_cast<std::size_t>(rho[l])];
          bool hom = compose(st, sr) == OdoElement::section(tower, level, comp);
          auto split = st.split();
          bool clean = split.perm == tau &&
                       split.shifts ==
                           std::vector<std::int64_t>(tau.size(), 0);
          if (!hom || !clean) {
            inst.ok = false;
            inst.expected = "section(tau rho) with trivial kernel part";
            inst.got = compose(st, sr).str();
          }
        }
        rep.add(std::move(inst));
      }

      {  // lift homomorphism
        Instance inst{lv + ": lift to level " + std::to_string(level + 1) +
                          " is a homomorphism on " + std::to_string(pairs) +
                          " pairs",
                      true, "", ""};
        for (int t = 0; t < pairs && inst.ok; ++t) {
          OdoElement g = rng.element(tower, level);
          OdoElement h = rng.element(tower, level);
          OdoElement lhs = compose(g, h).lift();
          OdoElement rhs = compose(g.lift(), h.lift());
          if (!(lhs == rhs)) {
            inst.ok = false;
            inst.expected = rhs.str();
            inst.got = lhs.str();
            inst.expected_json = to_json(rhs);
            inst.got_json = to_json(lhs);
          }
        }
        rep.add(std::move(inst));
      }
    }
  });
  return rep;
}

// F2 independence of the indicator functions of the U-translates.
inline Report verify_prop23(const SessionConfig& cfg, Fault fault = Fault::None) {
  Report rep;
  rep.claim = "prop23";
  rep.statement =
      "no nonempty family of translates phi^{-k}(U), |k| <= N, has "
      "identically-zero indicator sum mod 2";
  rep.config = cfg.echo();
  rep.config["range"] = cfg.translate_range;

  detail::guarded(rep, [&] {
    cfg.validate_alpha();
    RotationSystem sys(cfg.alpha);
    const int N = cfg.translate_range;

    std::vector<ClopenSet> family;
    for (int k = -N; k <= N; ++k) family.push_back(sys.base_translate(-k));
    if (fault == Fault::DuplicateSet) family.push_back(family.front());

    auto cert = parity_independent(family);
    Instance inst{"translate family of " + std::to_string(family.size()) +
                      " sets is independent over F2",
                  cert.independent,
                  "rank " + std::to_string(family.size()),
                  "rank " + std::to_string(cert.rank)};
    if (!cert.independent) {
      std::string w = "zero-sum subset {";
      for (std::size_t i = 0; i < cert.witness.size(); ++i)
        w += (i ? "," : "") + std::to_string(cert.witness[i]);
      inst.note = w + "}";
    }
    rep.add(std::move(inst));
    rep.details["rank"] = cert.rank;
    rep.details["family_size"] = family.size();
    if (!cert.witness.empty()) rep.details["witness"] = cert.witness;
  });
  return rep;
}

// Everything thm24 needs downstream of the (r, s) construction.
struct LamplighterCertificate {
  RotElement r, s, psi;
  ClopenSet O;
  int candidate_index = -1;            // k with O = [0, {k alpha}) n U
  std::vector<ClopenSet> translates;   // psi^j(O), |j| <= range
  ParityCertificate parity;
};

// Search the candidate sets [0, {k alpha}) n U for one whose psi-orbit
// translates are F2-independent at the given range.
inline std::optional<LamplighterCertificate> certify_lamplighter(
    const RotationSystem& sys, const SessionConfig& cfg) {
  ClopenSet U = sys.base_interval();
  RotElement psi = first_return(sys, U, cfg.first_return_cap);
  RotElement psi_inv = psi.inverse();
  const int N = cfg.lamplighter_range;

  for (int k = 1; k <= cfg.o_search_budget; ++k) {
    ClopenSet cand = set_intersect(
        ClopenSet::interval(CirclePoint(QuadExt()),
                            CirclePoint(sys.multiple(k))),
        U);
    if (cand.is_empty()) continue;
    ClopenSet cur = cand;
    for (int j = 0; j < N; ++j) cur = psi_inv.image_of(cur);
    std::vector<ClopenSet> family;
    for (int j = -N; j <= N; ++j) {
      family.push_back(cur);
      if (j < N) cur = psi.image_of(cur);
    }
    auto cert = parity_independent(family);
    if (!cert.independent) continue;

    auto pair = lamplighter_pair(sys, U, cand, cfg.first_return_cap);
    LamplighterCertificate out{std::move(pair.r), std::move(pair.s),
                               std::move(pair.psi), std::move(cand),
                               k,       std::move(family),
                               std::move(cert)};
    return out;
  }
  return std::nullopt;
}

/*
 * The lamplighter witness: a certified O, the pair (r, s) with its wreath
 * relations checked exactly at the configured range, and the conjugated
 * copy (r', s') with vanishing index and separated supports.
 */
inline Report verify_thm24(const SessionConfig& cfg, Fault fault = Fault::None) {
  Report rep;
  rep.claim = "thm24";
  rep.statement =
      "r = psi phi psi phi^{-1} and s = tau_O generate a lamplighter copy; "
      "the phi^2-conjugated pair lands in the derived subgroup";
  rep.config = cfg.echo();
  rep.config["range"] = cfg.lamplighter_range;

  detail::guarded(rep, [&] {
    cfg.validate_alpha();
    RotationSystem sys(cfg.alpha);
    if ((sys.alpha() * 4).compare(QuadExt::integer(1)) >= 0)
      throw precondition_error(
          "need 4*alpha < 1 so that U, phi(U), phi^2(U), phi^3(U) are "
          "disjoint; alpha = " +
          sys.alpha().str());
    ClopenSet U = sys.base_interval();
    const int N = cfg.lamplighter_range;
    if (N == 0) {
      rep.details["degenerate_range"] = true;
      rep.note = "range 0: commutation and order checks are vacuous";
    }

    auto cert = certify_lamplighter(sys, cfg);
    if (!cert) {
      rep.status = Status::Inconclusive;
      rep.note = "no candidate O passed the independence test within budget " +
                 std::to_string(cfg.o_search_budget) +
                 "; this does not refute the claim";
      return;
    }

    rep.details["O"] = to_json(cert->O);
    rep.details["O_candidate_index"] = cert->candidate_index;
    rep.details["parity_rank"] = cert->parity.rank;

    rep.add_check("first return map has index 1", cert->psi.index() == 1, "1",
                  cert->psi.index().str());

    rep.add_check(
        "O certified: psi-translates |j| <= " + std::to_string(N) +
            " independent over F2",
        cert->parity.independent && cert->parity.rank == std::size_t(2 * N + 1),
        "rank " + std::to_string(2 * N + 1),
        "rank " + std::to_string(cert->parity.rank),
        "certifies all 2^" + std::to_string(2 * N + 1) +
            " - 1 nonempty conjugate products nontrivial");

    ClopenSet inner = set_union(U, sys.translate(U, 1));
    rep.add_check(
        "support(r) u support(s) inside U u phi(U)",
        is_subset(set_union(cert->r.support(), cert->s.support()), inner),
        "empty excess",
        set_diff(set_union(cert->r.support(), cert->s.support()), inner).str());

    // conjugates r^k s r^{-k}
    std::vector<RotElement> conj;
    conj.reserve(static_cast<std::size_t>(2 * N + 1));
    for (int k = -N; k <= N; ++k) {
      RotElement rk = rot_power(sys, cert->r, k);
      conj.push_back(compose(compose(rk, cert->s), rk.inverse()));
    }

    {
      std::vector<Instance> results(static_cast<std::size_t>(2 * N + 1));
      parallel_for(results.size(), cfg.workers, [&](std::size_t i) {
        int k = static_cast<int>(i) - N;
        std::size_t target = i;
        if (fault == Fault::ConjugateShift && k == 0 && N >= 1) target = i + 1;
        RotElement expect = swap_element(sys, cert->translates[target]);
        results[i] = element_check(
            "r^k s r^{-k} equals swap(psi^k(O)) at k = " + std::to_string(k),
            expect, conj[i]);
      });
      for (auto& inst : results) rep.add(std::move(inst));
    }

    {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = 0; i < conj.size(); ++i)
        for (std::size_t j = i + 1; j < conj.size(); ++j)
          pairs.emplace_back(i, j);
      std::vector<Instance> results(pairs.size());
      parallel_for(pairs.size(), cfg.workers, [&](std::size_t t) {
        auto [i, j] = pairs[t];
        RotElement ab = compose(conj[i], conj[j]);
        RotElement ba = compose(conj[j], conj[i]);
        results[t] = element_check(
            "conjugates at k = " + std::to_string(static_cast<int>(i) - N) +
                ", " + std::to_string(static_cast<int>(j) - N) + " commute",
            ab, ba);
      });
      for (auto& inst : results) rep.add(std::move(inst));
    }

    {
      RotElement rk = RotElement::identity(sys);
      for (int k = 1; k <= N; ++k) {
        rk = compose(cert->r, rk);
        rep.add_check("r^" + std::to_string(k) + " is not the identity",
                      !rk.is_identity(), "nontrivial element", rk.str());
      }
    }

    auto dp = derived_embedding(sys, cert->r, cert->s, U);
    ClopenSet outer = set_union(sys.translate(U, 2), sys.translate(U, 3));
    ClopenSet both = set_union(inner, outer);
    rep.add_check("index of r' vanishes", dp.r.index() == 0, "0",
                  dp.r.index().str());
    rep.add_check("index of s' vanishes", dp.s.index() == 0, "0",
                  dp.s.index().str());
    rep.add_check("s' is an involution", compose(dp.s, dp.s).is_identity(),
                  "identity", compose(dp.s, dp.s).str());
    rep.add_check("support(r') inside (U u phiU) u (phi^2U u phi^3U)",
                  is_subset(dp.r.support(), both), "empty excess",
                  set_diff(dp.r.support(), both).str());
    rep.add_check("support(s') inside (U u phiU) u (phi^2U u phi^3U)",
                  is_subset(dp.s.support(), both), "empty excess",
                  set_diff(dp.s.support(), both).str());
    RotElement moved =
        compose(compose(phi_power(sys, 2), cert->s), phi_power(sys, -2));
    rep.add_check(
        "phi^2 s phi^{-2} is supported in phi^2(U) u phi^3(U), away from r and s",
        is_subset(moved.support(), outer) &&
            are_disjoint(moved.support(), inner),
        "support inside phi^2(U) u phi^3(U)", moved.support().str());
  });
  return rep;
}

/*
 * Word synthesis over {phi, sigma_U}: conjugation covariance, the
 * four-swap words for translates, and the commutator words for pairwise
 * intersections, all compared canonically against the direct elements.
 */
inline Report verify_prop31(const SessionConfig& cfg, Fault fault = Fault::None) {
  Report rep;
  rep.claim = "prop31";
  rep.statement =
      "every gamma generator over translates and their intersections is a "
      "word in phi and sigma_U; the derived subgroup lies in <phi, sigma_U>";
  rep.config = cfg.echo();
  rep.config["range"] = cfg.pair_range;

  detail::guarded(rep, [&] {
    cfg.validate_alpha();
    RotationSystem sys(cfg.alpha);
    if ((sys.alpha() * 6).compare(QuadExt::integer(1)) >= 0)
      throw precondition_error("need alpha < 1/6 exactly; alpha = " +
                               sys.alpha().str());
    const long long R = cfg.pair_range;

    struct Job {
      enum Kind { Covariance, Translate, Pair } kind;
      long long m = 0, n = 0;
    };
    std::vector<Job> jobs;
    for (long long n = -R; n <= R; ++n)
      jobs.push_back({Job::Covariance, n, n});
    for (long long n = -R; n <= R; ++n) jobs.push_back({Job::Translate, n, n});
    std::size_t pair_count = 0;
    std::size_t first_pair = 0;
    for (long long m = -R; m <= R; ++m)
      for (long long n = -R; n <= R; ++n) {
        if (m == n) continue;
        if (set_intersect(sys.base_translate(m), sys.base_translate(n))
                .is_empty())
          continue;
        if (pair_count == 0) first_pair = jobs.size();
        jobs.push_back({Job::Pair, m, n});
        ++pair_count;
      }
    rep.details["translate_count"] = 2 * R + 1;
    rep.details["pair_count"] = pair_count;

    std::vector<Instance> results(jobs.size());
    parallel_for(jobs.size(), cfg.workers, [&](std::size_t i) {
      const Job& job = jobs[i];
      switch (job.kind) {
        case Job::Covariance: {
          RotElement lhs = eval_word(sys, sigma_conjugate_word(job.n));
          RotElement rhs = swap_element(sys, sys.base_translate(job.n));
          results[i] = element_check(
              "phi^n sigma phi^{-n} = sigma_{phi^n(U)} at n = " +
                  std::to_string(job.n),
              rhs, lhs);
          break;
        }
        case Job::Translate: {
          RotElement lhs = eval_word(sys, gamma_word(sys, job.n, job.n));
          RotElement rhs = gamma_element(sys, sys.base_translate(job.n));
          results[i] = element_check(
              "four-swap word equals gamma(phi^n(U)) at n = " +
                  std::to_string(job.n),
              rhs, lhs);
          break;
        }
        case Job::Pair: {
          GenWord w = gamma_word(sys, job.m, job.n);
          if (fault == Fault::WordExtraLetter && i == first_pair)
            w = w * GenWord{{GenWord::Letter::Phi}};
          RotElement lhs = eval_word(sys, w);
          RotElement rhs = gamma_element(
              sys, set_intersect(sys.base_translate(job.m),
                                 sys.base_translate(job.n)));
          results[i] = element_check(
              "commutator word equals gamma(phi^m(U) n phi^n(U)) at "
              "(m, n) = (" +
                  std::to_string(job.m) + ", " + std::to_string(job.n) + ")",
              rhs, lhs, "word length " + std::to_string(w.size()));
          break;
        }
      }
    });
    for (auto& inst : results) rep.add(std::move(inst));
  });
  return rep;
}

// Print-and-check driver behind `workbench synthesize gamma`.
inline Report synthesize_gamma(const SessionConfig& cfg, long long m,
                               long long n) {
  Report rep;
  rep.claim = "synthesize-gamma";
  rep.statement =
      "emit the {phi, sigma_U} word for gamma of phi^m(U) n phi^n(U) and "
      "check it evaluates to the target";
  rep.config = cfg.echo();
  rep.config["m"] = m;
  rep.config["n"] = n;

  detail::guarded(rep, [&] {
    cfg.validate_alpha();
    RotationSystem sys(cfg.alpha);
    GenWord w = gamma_word(sys, m, n);
    ClopenSet target =
        m == n ? sys.base_translate(n)
               : set_intersect(sys.base_translate(m), sys.base_translate(n));
    RotElement lhs = eval_word(sys, w);
    RotElement rhs = gamma_element(sys, target);
    rep.details["word"] = w.str();
    rep.details["word_length"] = w.size();
    rep.details["target_set"] = to_json(target);
    rep.add_check("word evaluates to gamma of the target set", lhs == rhs,
                  rhs.str(), lhs.str());
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Growth commands

struct GrowthOutput {
  std::string target;
  BallTable table;
  std::optional<GrowthReport> classification;
  Json json = Json::object();
  Status status = Status::Verified;
  std::string note;

  std::string csv() const {
    std::string out = "radius,ball_size\n";
    for (std::size_t i = 0; i < table.sizes.size(); ++i)
      out += std::to_string(i) + "," + std::to_string(table.sizes[i]) + "\n";
    return out;
  }

  int exit_code() const { return status_exit_code(status); }
};

namespace detail {

inline Json growth_json(const std::string& target, const SessionConfig& cfg,
                        const BallTable& table,
                        const std::optional<GrowthReport>& rep) {
  Json j;
  j["target"] = target;
  j["config"] = cfg.echo();
  j["radius"] = cfg.ball_radius;
  j["sizes"] = table.sizes;
  j["truncated"] = table.truncated;
  if (rep) {
    j["ratios"] = rep->ratios;
    j["doubling"] = rep->doubling;
    j["fitted_degree"] = rep->fitted_degree;
    j["poly_residual"] = rep->poly_residual;
    j["exp_residual"] = rep->exp_residual;
    j["rate_per_step"] = rep->rate_per_step;
    j["delta"] = rep->delta;
    j["hint"] = GrowthReport::hint_name(rep->hint);
    j["evidence"] =
        "finite-range evidence over the measured radii; not a proof";
  }
  return j;
}

template <class E>
void fill_growth(GrowthOutput& out, const SessionConfig& cfg, const E& id,
                 const std::vector<E>& gens) {
  out.table = ball_sizes(
      id, gens,
      BallOptions{cfg.ball_radius, cfg.ball_cap, cfg.workers});
  if (out.table.truncated) {
    out.status = Status::Error;
    out.note = "element cap " + std::to_string(cfg.ball_cap) +
               " exceeded; table truncated to complete radii";
  }
  if (out.table.sizes.size() >= 4)
    out.classification = growth_report(out.table);
  out.json = growth_json(out.target, cfg, out.table, out.classification);
  if (!out.note.empty()) out.json["note"] = out.note;
}

}  // namespace detail

inline GrowthOutput growth_lamp(const SessionConfig& cfg) {
  GrowthOutput out;
  out.target = "lamp";
  std::vector<LampElement> gens{LampElement::shift_gen(),
                                LampElement::toggle()};
  detail::fill_growth(out, cfg, LampElement(), gens);
  return out;
}

// Structural generating set of Z^m x| S_m: every nonidentity permutation
// section (transpositions and the m-cycle for large m) plus the kernel
// basis vectors. The richer section set keeps the small-radius ball close
// to its polynomial asymptotics.
inline std::vector<OdoElement> odo_growth_generators(
    const std::shared_ptr<const OdoTower>& tower, std::size_t level) {
  const std::int64_t m = tower->modulus(level);
  std::vector<OdoElement> gens;
  if (m <= 5) {
    std::vector<std::int64_t> perm(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::vector<std::int64_t> sorted = perm;
    do {
      if (perm != sorted) gens.push_back(OdoElement::section(tower, level, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    for (std::int64_t i = 0; i < m; ++i)
      for (std::int64_t j = i + 1; j < m; ++j) {
        std::vector<std::int64_t> p(static_cast<std::size_t>(m));
        for (std::int64_t l = 0; l < m; ++l) p[static_cast<std::size_t>(l)] = l;
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
        gens.push_back(OdoElement::section(tower, level, p));
      }
    std::vector<std::int64_t> cycle(static_cast<std::size_t>(m));
    for (std::int64_t l = 0; l < m; ++l)
      cycle[static_cast<std::size_t>(l)] = (l + 1) % m;
    gens.push_back(OdoElement::section(tower, level, cycle));
  }
  for (std::int64_t i = 0; i < m; ++i) {
    SemidirectPair pair;
    pair.shifts.assign(static_cast<std::size_t>(m), 0);
    pair.shifts[static_cast<std::size_t>(i)] = 1;
    for (std::int64_t l = 0; l < m; ++l) pair.perm.push_back(l);
    gens.push_back(OdoElement::unsplit(tower, level, pair));
  }
  return gens;
}

inline GrowthOutput growth_odo(const SessionConfig& cfg) {
  GrowthOutput out;
  out.target = "odo";
  try {
    auto tower = OdoTower::make(cfg.tower);
    std::size_t level = std::min<std::size_t>(
        static_cast<std::size_t>(std::max(1, cfg.odo_growth_level)),
        tower->depth());
    auto gens = odo_growth_generators(tower, level);
    detail::fill_growth(out, cfg, OdoElement::identity(tower, level), gens);
    out.json["level"] = level;
    out.json["modulus"] = tower->modulus(level);
  } catch (const internal_error&) {
    throw;
  } catch (const error& e) {
    out.status = Status::Error;
    out.note = e.what();
    out.json["note"] = out.note;
  }
  return out;
}

// Enumerates <r, s> and the lamplighter oracle side by side; the tables
// must agree exactly through the shared radius.
inline GrowthOutput growth_rs(const SessionConfig& cfg) {
  GrowthOutput out;
  out.target = "rs";
  try {
    cfg.validate_alpha();
    RotationSystem sys(cfg.alpha);
    if ((sys.alpha() * 4).compare(QuadExt::integer(1)) >= 0)
      throw precondition_error("need 4*alpha < 1 for the (r, s) pair");
    auto cert = certify_lamplighter(sys, cfg);
    if (!cert) {
      out.status = Status::Inconclusive;
      out.note = "no certified O found within budget; cannot enumerate <r, s>";
      out.json["note"] = out.note;
      return out;
    }
    detail::fill_growth(out, cfg, RotElement::identity(sys),
                        std::vector<RotElement>{cert->r, cert->s});

    SessionConfig oracle_cfg = cfg;
    auto oracle = growth_lamp(oracle_cfg);
    bool equal = out.table.sizes == oracle.table.sizes &&
                 !out.table.truncated && !oracle.table.truncated;
    Json cmp;
    cmp["oracle_sizes"] = oracle.table.sizes;
    cmp["equal"] = equal;
    cmp["compared_radius"] = cfg.ball_radius;
    cmp["certified_relation_range"] = cfg.lamplighter_range;
    cmp["note"] =
        "wreath relations certified exactly for |k| <= " +
        std::to_string(cfg.lamplighter_range) +
        "; table equality beyond that range is evidence, not proof";
    out.json["comparison"] = cmp;
    out.json["O"] = to_json(cert->O);
    if (out.status == Status::Verified && !equal) {
      out.status = Status::Refuted;
      out.note = "ball tables of <r, s> and the lamplighter oracle differ";
      out.json["note"] = out.note;
    }
  } catch (const internal_error&) {
    throw;
  } catch (const error& e) {
    out.status = Status::Error;
    out.note = e.what();
    out.json["note"] = out.note;
  }
  return out;
}

inline GrowthOutput run_growth(const SessionConfig& cfg,
                               const std::string& target) {
  if (target == "rs") return growth_rs(cfg);
  if (target == "lamp") return growth_lamp(cfg);
  if (target == "odo") return growth_odo(cfg);
  throw precondition_error("unknown growth target '" + target +
                           "' (expected rs, lamp or odo)");
}

}  // namespace tfg

#endif
