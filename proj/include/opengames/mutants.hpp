#pragma once

// Deliberately wrong game constructions. The law checkers must reject them.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opengames/functor.hpp"
#include "opengames/game.hpp"

namespace opengames::mutants {

/// compose_game with the two components of every successor profile swapped.
/// Only well-typed when both games share a strategy space.
inline Game compose_swapped(const Game& first, const Game& second) {
  require_same_space(first.strategies(), second.strategies(), "compose_swapped");
  const Game honest = compose_game(first, second);
  const Space profiles = honest.strategies();
  return Game(
      honest.dom(), honest.cod(), profiles,
      [honest](const Point& s, const Point& x) { return honest.play(s, x); },
      [honest](const Point& s, const Point& x, const Point& r) { return honest.coplay(s, x, r); },
      [honest, profiles](const Point& h, const Map& k) {
        return SuccessorRelation::from_sets(
            profiles, [rel = honest.best(h, k), profiles](const Point& s) {
              std::vector<Point> out;
              for (const auto& n : rel.successors(s)) {
                out.push_back(Point::pair(profiles, n.second(), n.first()));
              }
              return out;
            });
      });
}

/// tensor_game whose left component ignores the continuation: k1 is the
/// identity instead of y -> first(k(y, play2(tau, w))). Requires the left
/// game's codomain state and costate to coincide.
inline Game tensor_unprojected(const Game& left, const Game& right) {
  require_same_space(left.cod().state, left.cod().costate, "tensor_unprojected");
  const Game honest = tensor_game(left, right);
  const Space profiles = honest.strategies();
  const Boundary cod = honest.cod();
  return Game(
      honest.dom(), cod, profiles,
      [honest](const Point& s, const Point& x) { return honest.play(s, x); },
      [honest](const Point& s, const Point& x, const Point& r) { return honest.coplay(s, x, r); },
      [left, right, profiles](const Point& xw, const Map& k) {
        return SuccessorRelation::from_sets(
            profiles, [left, right, profiles, xw, k](const Point& st) {
              const Point other_left = left.play(st.first(), xw.first());
              const Map k1 = Map::identity(left.cod().state);
              const Map k2(right.cod().state, right.cod().costate,
                           [k, other_left](const Point& z) {
                             return k(Point::pair(other_left, z)).second();
                           });
              std::vector<Point> out;
              for (const auto& s2 : left.best(xw.first(), k1).successors(st.first())) {
                for (const auto& t2 : right.best(xw.second(), k2).successors(st.second())) {
                  out.push_back(Point::pair(profiles, s2, t2));
                }
              }
              return out;
            });
      });
}

inline constexpr std::string_view kNone = "none";
inline constexpr std::string_view kSwapComposite = "swap-composite";
inline constexpr std::string_view kDropProjection = "drop-projection";

inline const std::vector<std::string_view>& names() {
  static const std::vector<std::string_view> all = {kNone, kSwapComposite, kDropProjection};
  return all;
}

/// The game constructors with the named fault injected.
inline GameOps ops(std::string_view name) {
  GameOps result;
  if (name == kSwapComposite) {
    result.compose = compose_swapped;
  } else if (name == kDropProjection) {
    result.tensor = tensor_unprojected;
  } else if (name != kNone) {
    throw InvalidParameters("unknown mutant '" + std::string(name) + "'");
  }
  return result;
}

}  // namespace opengames::mutants
