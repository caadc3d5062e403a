#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "opengames/core.hpp"
#include "opengames/game.hpp"
#include "opengames/learn.hpp"

namespace opengames {

/// States visited by iterated best response. `states[0]` is the start;
/// `iterations` steps were taken so there are iterations + 1 states.
struct Trajectory {
  std::vector<Point> states;
  bool converged = false;
  std::size_t iterations = 0;
  double residual = std::numeric_limits<double>::infinity();

  const Point& final_state() const { return states.back(); }
};

/// Sup-norm distance between two points of one space: coordinate
/// differences for RealVec parts, 0 or 1 for differing atoms.
inline double step_residual(const Point& a, const Point& b) {
  require_same_space(a.space(), b.space(), "step_residual");
  switch (a.space().kind()) {
    case Space::Kind::singleton:
      return 0.0;
    case Space::Kind::finite:
      return a.atom_index() == b.atom_index() ? 0.0 : 1.0;
    case Space::Kind::product:
      return std::max(step_residual(a.first(), b.first()),
                      step_residual(a.second(), b.second()));
    case Space::Kind::real_vec: {
      double worst = 0.0;
      auto ca = a.coords();
      auto cb = b.coords();
      for (std::size_t i = 0; i < ca.size(); ++i) worst = std::max(worst, std::abs(ca[i] - cb[i]));
      return worst;
    }
  }
  return 0.0;
}

/// One best-response step. Ties on enumerable strategy spaces go to the
/// enumeration-least successor; on other spaces they are an error.
inline Point step(const Game& g, const Context& ctx, const Point& strategy) {
  const auto next = g.best(ctx.h, ctx.k).successors(strategy);
  if (next.empty()) throw EmptySuccessorSet("no successor for " + strategy.to_string());
  if (next.size() > 1 && !g.strategies().enumerable()) {
    throw AmbiguousRealSuccessor(std::to_string(next.size()) + " successors for " +
                                 strategy.to_string());
  }
  return next.front();
}

/// Iterates `step` from `start`. Stops once the successor repeats the
/// current strategy (enumerable spaces) or moves by at most `tol`
/// (otherwise), or after `max_iters` steps.
inline Trajectory iterate(const Game& g, const Context& ctx, const Point& start,
                          std::size_t max_iters, double tol) {
  if (max_iters < 1) throw InvalidParameters("max_iters must be at least 1");
  if (!(tol >= 0.0)) throw InvalidParameters("tolerance must be non-negative");
  require_same_space(g.strategies(), start.space(), "iterate start");
  const bool discrete = g.strategies().enumerable();
  Trajectory t;
  t.states.push_back(start);
  for (std::size_t i = 1; i <= max_iters; ++i) {
    Point next = step(g, ctx, t.states.back());
    t.residual = step_residual(t.states.back(), next);
    const bool settled = discrete ? next == t.states.back() : t.residual <= tol;
    t.states.push_back(std::move(next));
    t.iterations = i;
    if (settled) {
      t.converged = true;
      break;
    }
  }
  return t;
}

/// Whether `strategy` is (within `tol`) one of its own best responses.
inline bool is_nash(const Game& g, const Context& ctx, const Point& strategy, double tol) {
  const auto next = g.best(ctx.h, ctx.k).successors(strategy);
  if (g.strategies().enumerable()) {
    return std::find(next.begin(), next.end(), strategy) != next.end();
  }
  return std::any_of(next.begin(), next.end(),
                     [&](const Point& n) { return step_residual(strategy, n) <= tol; });
}

// ---------------------------------------------------------------------------
// Cournot duopoly with gradient players.

struct CournotParams {
  double a = 12.0;  // demand intercept
  double b = 1.0;   // demand slope
  double c = 3.0;   // unit cost
  double rate = 0.1;
  double step = 1e-3;
};

/// The closed Cournot game together with helpers to move between strategy
/// profiles and quantities.
///
/// The game is entry ; (player (x) player) ; market where entry is the
/// unitor (1, 1) -> (1 x 1, 1 x 1) and market closes the product of
/// quantity lines with the profit function.
struct CournotGame {
  CournotParams params;
  Game game;
  Context context;

  Point profile(double q1, double q2) const {
    const Space& sigma = game.strategies();
    const Space& inner = sigma.right();
    const Space& quantities = inner.left();
    return Point::pair(
        sigma, Point::unit(),
        Point::pair(inner,
                    Point::pair(quantities, Point::real(quantities.left(), {q1}),
                                Point::real(quantities.right(), {q2})),
                    Point::unit()));
  }

  static std::pair<double, double> quantities(const Point& profile) {
    const Point& q = profile.second().first();
    return {q.first().value(), q.second().value()};
  }

  std::pair<double, double> payoffs(double q1, double q2) const {
    const double margin = params.a - params.b * (q1 + q2) - params.c;
    return {q1 * margin, q2 * margin};
  }

  /// Symmetric equilibrium quantity (a - c) / (3b).
  double equilibrium_quantity() const { return (params.a - params.c) / (3.0 * params.b); }
};

/// Profit map (q1, q2) -> (q1 (a - b(q1 + q2) - c), q2 (a - b(q1 + q2) - c)).
inline Map cournot_profit(const CournotParams& params) {
  const Space line = Space::real_vec(1);
  const Space plane = Space::product(line, line);
  return Map(plane, plane, [params, line, plane](const Point& q) {
    const double q1 = q.first().value();
    const double q2 = q.second().value();
    const double margin = params.a - params.b * (q1 + q2) - params.c;
    return Point::pair(plane, Point::real(line, {q1 * margin}), Point::real(line, {q2 * margin}));
  });
}

inline CournotGame build_cournot(const CournotParams& params) {
  const auto finite_positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!finite_positive(params.a) || !finite_positive(params.b) || !finite_positive(params.c)) {
    throw InvalidParameters("a, b and c must be finite and positive");
  }
  if (!(params.a > params.c)) throw InvalidParameters("need a > c for an interior equilibrium");
  if (!finite_positive(params.rate) || !finite_positive(params.step)) {
    throw InvalidParameters("rate and step must be finite and positive");
  }
  const Game players =
      tensor_game(gradient_player(params.rate, params.step),
                  gradient_player(params.rate, params.step));
  const Game market = payoff_closure(cournot_profit(params));
  auto [merge, split] = left_unitor_maps(Space::singleton());
  const Game entry = lift_game(split, merge);
  Game game = compose_game(entry, compose_game(players, market));
  Context context{Point::unit(), Map::identity(Space::singleton())};
  return {params, std::move(game), std::move(context)};
}

}  // namespace opengames
