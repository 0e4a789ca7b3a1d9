// workbench: command-line surface for the exact full-group computations.
// Every claim gets a named, reproducible command and a machine-readable
// JSON report; exit code 0 means VERIFIED, 1 REFUTED or INCONCLUSIVE,
// 2 usage or resource errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "tfg/verify.hpp"

namespace {

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw tfg::error("cannot open " + tmp + " for writing");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw tfg::error("cannot move " + tmp + " into place");
}

void emit_json(const tfg::Json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  text += "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_atomic(out_path, text);
}

void summarize(const tfg::Report& rep) {
  std::size_t failed = 0;
  for (const auto& i : rep.instances)
    if (!i.ok) ++failed;
  std::cerr << rep.claim << ": " << tfg::status_name(rep.status) << " ("
            << rep.instances.size() << " instances, " << failed << " failed)";
  if (!rep.note.empty()) std::cerr << " - " << rep.note;
  std::cerr << "\n";
  for (const auto& i : rep.instances)
    if (!i.ok)
      std::cerr << "  FAIL " << i.name << "\n    expected: " << i.expected
                << "\n    got:      " << i.got << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "workbench: exact identity checking and growth enumeration in "
      "topological full groups of Cantor minimal systems"};
  app.require_subcommand(1);

  std::string config_path, alpha_text, tower_text, fault_name;
  std::uint64_t seed = 0;
  int workers = 0;
  bool deterministic = false;

  auto* opt_config =
      app.add_option("--config", config_path, "JSON session config file");
  auto* opt_alpha = app.add_option(
      "--alpha", alpha_text,
      "rotation number, e.g. (0+1*sqrt(2))/10; must be irrational in (0,1)");
  auto* opt_tower =
      app.add_option("--tower", tower_text, "odometer tower, e.g. 2,4,8,16");
  auto* opt_seed = app.add_option("--seed", seed, "seed for randomized checks");
  auto* opt_workers =
      app.add_option("--workers", workers, "worker threads (default 1)");
  app.add_flag("--deterministic", deterministic,
               "omit timestamps so identical runs are byte-identical");
  app.add_option("--inject-fault", fault_name,
                 "testing hook: corrupt one identity "
                 "(odo-compose|duplicate-set|conjugate-shift|word-extra-letter)");

  auto* verify = app.add_subcommand("verify", "verify a claim exactly");
  verify->require_subcommand(1);
  verify->fallthrough();

  std::string out_path;
  int range = -1, kmax = -1, pairs = -1;

  auto add_out = [&](CLI::App* cmd) {
    cmd->fallthrough();
    cmd->add_option("--out", out_path, "write the JSON report here");
  };
  auto* p21 = verify->add_subcommand(
      "prop21", "odometer levels decompose as Z^m x| S_m");
  p21->add_option("--kmax,--range", kmax, "check levels 1..kmax (default 2)");
  p21->add_option("--pairs", pairs, "random pairs per check (default 1000)");
  add_out(p21);
  auto* p23 = verify->add_subcommand(
      "prop23", "translates of U are independent over F2");
  p23->add_option("--range", range, "translate range N (default 6)");
  add_out(p23);
  auto* t24 = verify->add_subcommand(
      "thm24", "the full group contains a certified lamplighter pair");
  t24->add_option("--range", range, "conjugate range N (default 5)");
  add_out(t24);
  auto* p31 = verify->add_subcommand(
      "prop31", "gamma generators are words in phi and sigma_U");
  p31->add_option("--range", range, "|m|, |n| range (default 8)");
  add_out(p31);

  auto* growth = app.add_subcommand(
      "growth", "enumerate Cayley balls and classify growth evidence");
  std::string target, csv_path, json_path;
  int radius = -1, level = -1;
  growth->fallthrough();
  growth->add_option("--target", target, "rs | lamp | odo")->required();
  growth->add_option("--radius", radius, "ball radius (default 7)");
  growth->add_option("--level", level,
                     "odo target: tower level to enumerate (default 2)");
  growth->add_option("--csv", csv_path, "write radius,ball_size rows here");
  growth->add_option("--json", json_path, "write the growth report here");

  auto* synth =
      app.add_subcommand("synthesize", "construct generator words");
  synth->require_subcommand(1);
  synth->fallthrough();
  auto* synth_gamma = synth->add_subcommand(
      "gamma", "word in {phi, sigma_U} for gamma of phi^m(U) n phi^n(U)");
  long long gm = 0, gn = 0;
  synth_gamma->add_option("--m", gm, "first translate exponent")->required();
  synth_gamma->add_option("--n", gn, "second translate exponent")->required();
  add_out(synth_gamma);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    tfg::SessionConfig cfg;
    if (opt_config->count()) {
      std::ifstream in(config_path);
      if (!in) throw tfg::error("cannot read config file " + config_path);
      tfg::Json j = tfg::Json::parse(in);
      cfg = tfg::SessionConfig::from_json(j);
    }
    cfg.apply_env();
    if (opt_alpha->count()) cfg.alpha = tfg::QuadExt::parse(alpha_text);
    if (opt_tower->count()) cfg.tower = tfg::parse_tower(tower_text);
    if (opt_seed->count()) cfg.seed = seed;
    if (opt_workers->count()) cfg.workers = std::max(1, workers);
    cfg.deterministic = deterministic;

    tfg::Fault fault = tfg::parse_fault(fault_name);

    if (verify->parsed() || synth->parsed()) {
      tfg::Report rep;
      if (p21->parsed()) {
        if (kmax >= 0) cfg.odo_kmax = kmax;
        if (pairs >= 0) cfg.odo_pairs = pairs;
        rep = tfg::verify_prop21(cfg, fault);
      } else if (p23->parsed()) {
        if (range >= 0) cfg.translate_range = range;
        rep = tfg::verify_prop23(cfg, fault);
      } else if (t24->parsed()) {
        if (range >= 0) cfg.lamplighter_range = range;
        rep = tfg::verify_thm24(cfg, fault);
      } else if (p31->parsed()) {
        if (range >= 0) cfg.pair_range = range;
        rep = tfg::verify_prop31(cfg, fault);
      } else {
        rep = tfg::synthesize_gamma(cfg, gm, gn);
        if (rep.details.contains("word"))
          std::cerr << "word: " << rep.details["word"].get<std::string>()
                    << "\n";
      }
      summarize(rep);
      emit_json(rep.to_json(cfg.deterministic), out_path);
      return rep.exit_code();
    }

    // growth
    if (radius >= 0) cfg.ball_radius = radius;
    if (level >= 0) cfg.odo_growth_level = level;
    tfg::GrowthOutput out = tfg::run_growth(cfg, target);
    tfg::Json j = out.json;
    if (!cfg.deterministic) {
      auto now = std::chrono::system_clock::now().time_since_epoch();
      j["timestamp_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    }
    std::cerr << "growth " << out.target << ": " << tfg::status_name(out.status);
    if (out.classification)
      std::cerr << " hint=" << tfg::GrowthReport::hint_name(
                       out.classification->hint);
    if (!out.note.empty()) std::cerr << " - " << out.note;
    std::cerr << "\n";
    if (!csv_path.empty()) write_atomic(csv_path, out.csv());
    emit_json(j, json_path);
    return out.exit_code();
  } catch (const tfg::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
