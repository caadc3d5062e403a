#pragma once

// Command-line front end: `laws`, `cournot` and `train`.
//
// Exit codes: 0 all checks pass, 1 a check or convergence failed,
// 2 configuration error.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opengames/core.hpp"
#include "opengames/dynamics.hpp"
#include "opengames/functor.hpp"
#include "opengames/learn.hpp"
#include "opengames/mutants.hpp"
#include "opengames/random.hpp"

namespace opengames::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;

struct LawsOptions {
  std::uint64_t seed = 42;
  long long cases = 200;
  std::size_t max_size = 3;
  std::string mutant = std::string(mutants::kNone);
};

/// Scenario configuration for the Cournot demo.
struct ScenarioConfig {
  std::string scenario = "cournot";
  CournotParams params;
  double tol = 1e-6;
  double eq_tol = 1e-3;
  long long max_iters = 10000;
  std::vector<double> start = {0.5, 0.5};
  std::uint64_t seed = 0;
  std::string output = "cournot.csv";
};

struct TrainOptions {
  long long steps = 100;
  double rate = 0.1;
  std::uint64_t seed = 42;
  double truth = 2.0;
  std::string output;
};

namespace detail {

inline std::string fixed9(double v) { return format_real(v); }

inline bool same_bits(const Point& a, const Point& b) {
  auto ca = a.coords();
  auto cb = b.coords();
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(ca[i]) != std::bit_cast<std::uint64_t>(cb[i])) return false;
  }
  return true;
}

}  // namespace detail

/// Runs `cases` random instances of each of the identity, functoriality,
/// monoidality, counit and faithfulness checks, printing one LAW line per
/// report.
inline int cmd_laws(const LawsOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.cases < 1) {
    err << "laws: --cases must be at least 1\n";
    return kExitConfig;
  }
  if (opt.max_size < 1 || opt.max_size > 4) {
    err << "laws: --max-size must be between 1 and 4\n";
    return kExitConfig;
  }
  GameOps ops;
  try {
    ops = mutants::ops(opt.mutant);
  } catch (const InvalidParameters& e) {
    err << "laws: " << e.what() << "\n";
    return kExitConfig;
  }
  const bool shared_params = opt.mutant == mutants::kSwapComposite;
  InstanceGenerator gen(opt.seed);
  InstanceBounds bounds;
  bounds.max_space = opt.max_size;
  bounds.max_params = opt.max_size;

  std::size_t reports = 0;
  std::size_t failures = 0;
  auto emit = [&](const LawReport& r) {
    ++reports;
    if (!r.pass()) ++failures;
    out << r.to_line() << "\n";
  };
  for (long long i = 0; i < opt.cases; ++i) {
    emit(check_identity_law(gen.finite_space("X", opt.max_size + 1)));
    {
      auto pair = random_composable_pair(gen, bounds, shared_params);
      emit(check_functoriality(pair.first, pair.second, ops));
    }
    {
      auto pair = random_tensor_pair(gen, bounds);
      emit(check_monoidality(pair.first, pair.second, ops));
    }
    emit(check_counit(gen.finite_space("X", opt.max_size + 1)));
    {
      auto c = random_faithfulness_case(gen, bounds);
      emit(check_faithfulness(c.first, c.second));
    }
  }
  out << "laws: seed=" << opt.seed << " cases=" << opt.cases << " reports=" << reports
      << " failures=" << failures << "\n";
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

/// Iterates the gradient-player Cournot game, writes the trajectory CSV and
/// compares the end point with the analytic equilibrium.
inline int cmd_cournot(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.max_iters < 1) {
    err << "cournot: --max-iters must be at least 1\n";
    return kExitConfig;
  }
  if (!(cfg.tol >= 0.0) || !(cfg.eq_tol >= 0.0)) {
    err << "cournot: tolerances must be non-negative\n";
    return kExitConfig;
  }
  if (cfg.start.size() != 2 || !std::isfinite(cfg.start[0]) || !std::isfinite(cfg.start[1])) {
    err << "cournot: --q0 takes two finite quantities\n";
    return kExitConfig;
  }
  const CournotGame cournot = build_cournot(cfg.params);
  const Trajectory t =
      iterate(cournot.game, cournot.context, cournot.profile(cfg.start[0], cfg.start[1]),
              static_cast<std::size_t>(cfg.max_iters), cfg.tol);

  std::ofstream csv_file;
  std::ostream* csv = &out;
  if (cfg.output != "-") {
    csv_file.open(cfg.output, std::ios::binary | std::ios::trunc);
    if (!csv_file) {
      err << "cournot: cannot open " << cfg.output << "\n";
      return kExitConfig;
    }
    csv = &csv_file;
  }
  *csv << "iter,q1,q2,u1,u2,residual\n";
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    const auto [q1, q2] = CournotGame::quantities(t.states[i]);
    const auto [u1, u2] = cournot.payoffs(q1, q2);
    const double residual = i == 0 ? 0.0 : step_residual(t.states[i - 1], t.states[i]);
    *csv << i << ',' << detail::fixed9(q1) << ',' << detail::fixed9(q2) << ','
         << detail::fixed9(u1) << ',' << detail::fixed9(u2) << ',' << detail::fixed9(residual)
         << '\n';
  }
  csv->flush();

  const auto [q1, q2] = CournotGame::quantities(t.final_state());
  const auto [u1, u2] = cournot.payoffs(q1, q2);
  const double target = cournot.equilibrium_quantity();
  const double deviation = std::max(std::abs(q1 - target), std::abs(q2 - target));
  const bool nash = is_nash(cournot.game, cournot.context, t.final_state(), cfg.eq_tol);
  const bool ok = t.converged && deviation <= cfg.eq_tol;
  char line[256];
  std::snprintf(line, sizeof line,
                "cournot: a=%g b=%g c=%g rate=%g step=%g tol=%g max_iters=%lld seed=%llu\n",
                cfg.params.a, cfg.params.b, cfg.params.c, cfg.params.rate, cfg.params.step,
                cfg.tol, cfg.max_iters, static_cast<unsigned long long>(cfg.seed));
  out << line;
  out << "converged=" << (t.converged ? "true" : "false") << " iterations=" << t.iterations
      << " residual=" << detail::fixed9(t.residual) << "\n";
  std::snprintf(line, sizeof line, "final q1=%.6f q2=%.6f u1=%.6f u2=%.6f nash=%s\n", q1, q2, u1,
                u2, nash ? "true" : "false");
  out << line;
  std::snprintf(line, sizeof line, "analytic q*=%.6f max_deviation=%.3g eq_tol=%g -> %s\n",
                target, deviation, cfg.eq_tol, ok ? "OK" : "FAIL");
  out << line;
  return ok ? kExitOk : kExitCheckFailed;
}

/// Trains a scalar linear model on noise-free data twice: by direct learner
/// updates and by best-response steps of the learner's game under constant
/// continuations. The two parameter trajectories must agree bit for bit.
inline int cmd_train(const TrainOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.steps < 1) {
    err << "train: --steps must be at least 1\n";
    return kExitConfig;
  }
  if (!(opt.rate >= 0.0) || !std::isfinite(opt.rate)) {
    err << "train: --rate must be finite and non-negative\n";
    return kExitConfig;
  }
  const Map model = real_model(1, 1, 1, [](std::span<const double> w, std::span<const double> x) {
    return std::vector<double>{w[0] * x[0]};
  });
  const Learner learner = gd_learner(1, 1, 1, model, opt.rate);
  const Game game = apply_F(learner);
  const Space line = Space::real_vec(1);

  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> pick(1, 2);

  std::ofstream csv;
  if (!opt.output.empty()) {
    csv.open(opt.output, std::ios::binary | std::ios::trunc);
    if (!csv) {
      err << "train: cannot open " << opt.output << "\n";
      return kExitConfig;
    }
    csv << "step,x,y,w_direct,w_game\n";
  }

  Point direct = Point::real(line, {0.0});
  Point played = direct;
  if (csv.is_open()) csv << "0,,," << detail::fixed9(0.0) << ',' << detail::fixed9(0.0) << '\n';
  for (long long i = 1; i <= opt.steps; ++i) {
    const double xv = pick(rng);
    const Point x = Point::real(line, {xv});
    const Point y = Point::real(line, {opt.truth * xv});
    direct = learner.update(direct, x, y);
    played = step(game, Context{x, Map::constant(line, y)}, played);
    if (csv.is_open()) {
      csv << i << ',' << detail::fixed9(xv) << ',' << detail::fixed9(opt.truth * xv) << ','
          << detail::fixed9(direct.value()) << ',' << detail::fixed9(played.value()) << '\n';
    }
    if (!detail::same_bits(direct, played)) {
      out << "train: trajectories diverge at step " << i << ": direct=" << direct.to_string()
          << " game=" << played.to_string() << "\n";
      return kExitCheckFailed;
    }
  }
  const double w = direct.value();
  const double loss = 0.5 * ((w - opt.truth) * (w - opt.truth) * 1.0 +
                             (w - opt.truth) * (w - opt.truth) * 4.0);
  char text[200];
  std::snprintf(text, sizeof text,
                "train: steps=%lld rate=%g seed=%llu identical=true final_w=%.12g "
                "error=%.3g loss=%.3g\n",
                opt.steps, opt.rate, static_cast<unsigned long long>(opt.seed), w,
                std::abs(w - opt.truth), loss);
  out << text;
  return kExitOk;
}

/// Splices the entries of a `--config FILE` into the argument list as
/// `--key value...` flags. Flags given explicitly on the command line win.
///
/// The file holds one `key=value` per line; `#` starts a comment and a value
/// may list several whitespace-separated items.
inline std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (path.empty() || out.empty()) return out;

  std::ifstream in(path);
  if (!in) throw InvalidParameters("cannot read config file " + path);
  auto given = [&](const std::string& flag) {
    return std::any_of(out.begin(), out.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
  };
  std::vector<std::string> from_file;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidParameters(path + ":" + std::to_string(number) + ": expected key=value");
    }
    const std::string flag = "--" + trim(line.substr(0, eq));
    if (given(flag)) continue;
    from_file.push_back(flag);
    std::istringstream values(line.substr(eq + 1));
    for (std::string v; values >> v;) from_file.push_back(v);
  }
  // Subcommand first, then file entries, then the remaining explicit flags.
  out.insert(out.begin() + 1, from_file.begin(), from_file.end());
  return out;
}

/// Parses `argv` and dispatches to a subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Open learners, open games and the functor between them", "opengames_cli"};
  app.require_subcommand(1);

  LawsOptions laws;
  auto* laws_cmd = app.add_subcommand("laws", "Randomized categorical law checks");
  laws_cmd->add_option("--seed", laws.seed, "RNG seed");
  laws_cmd->add_option("--cases", laws.cases, "Random instances per law");
  laws_cmd->add_option("--max-size", laws.max_size, "Largest space / parameter set (1-4)");
  laws_cmd->add_option("--mutant", laws.mutant, "Inject a fault into the game constructions")
      ->check(CLI::IsMember(std::vector<std::string>(mutants::names().begin(),
                                                     mutants::names().end())));
  laws_cmd->add_option("--config", "key=value configuration file");

  ScenarioConfig cournot;
  auto* cournot_cmd = app.add_subcommand("cournot", "Gradient-player Cournot duopoly");
  cournot_cmd->add_option("--a", cournot.params.a, "Demand intercept");
  cournot_cmd->add_option("--b", cournot.params.b, "Demand slope");
  cournot_cmd->add_option("--c", cournot.params.c, "Unit cost");
  cournot_cmd->add_option("--rate", cournot.params.rate, "Gradient step size");
  cournot_cmd->add_option("--delta", cournot.params.step, "Central-difference step");
  cournot_cmd->add_option("--tol", cournot.tol, "Convergence tolerance on the step size");
  cournot_cmd->add_option("--eq-tol", cournot.eq_tol, "Allowed distance to the equilibrium");
  cournot_cmd->add_option("--max-iters", cournot.max_iters, "Iteration budget");
  cournot_cmd->add_option("--q0", cournot.start, "Starting quantities q1 q2")->expected(2);
  cournot_cmd->add_option("--seed", cournot.seed, "Recorded seed (the scenario is deterministic)");
  cournot_cmd->add_option("--out", cournot.output, "CSV output path, '-' for stdout");
  cournot_cmd->add_option("--config", "key=value configuration file");

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Learner updates versus game best responses");
  train_cmd->add_option("--steps", train.steps, "Training steps");
  train_cmd->add_option("--rate", train.rate, "Learning rate");
  train_cmd->add_option("--seed", train.seed, "Sampling seed");
  train_cmd->add_option("--out", train.output, "Optional trajectory CSV");
  train_cmd->add_option("--config", "key=value configuration file");

  std::vector<std::string> args;
  try {
    args = expand_config(std::vector<std::string>(argv + std::min(argc, 1), argv + argc));
  } catch (const InvalidParameters& e) {
    err << e.what() << "\n";
    return kExitConfig;
  }
  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (laws_cmd->parsed()) return cmd_laws(laws, out, err);
    if (cournot_cmd->parsed()) return cmd_cournot(cournot, out, err);
    if (train_cmd->parsed()) return cmd_train(train, out, err);
  } catch (const InvalidParameters& e) {
    err << e.what() << "\n";
    return kExitConfig;
  } catch (const CapExceeded& e) {
    err << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace opengames::cli
