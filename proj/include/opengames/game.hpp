#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opengames/core.hpp"
#include "opengames/learn.hpp"

namespace opengames {

/// One side of an open game's type: a state space travelling forward and a
/// costate space travelling backward.
struct Boundary {
  Space state;
  Space costate;

  static Boundary diagonal(const Space& s) { return {s, s}; }
  static Boundary unit() { return {Space::singleton(), Space::singleton()}; }

  friend bool operator==(const Boundary& a, const Boundary& b) {
    return a.state == b.state && a.costate == b.costate;
  }
  std::string to_string() const {
    return "(" + state.to_string() + "," + costate.to_string() + ")";
  }
};

inline Boundary tensor_boundary(const Boundary& a, const Boundary& b) {
  return {Space::product(a.state, b.state), Space::product(a.costate, b.costate)};
}

/// An open game (X, S) -> (Y, R): strategies Sigma with
///   play   : Sigma x X -> Y
///   coplay : Sigma x X x R -> S
///   best   : (h in X, k : Y -> R) -> relation on Sigma
class Game {
 public:
  using PlayFn = std::function<Point(const Point& s, const Point& x)>;
  using CoplayFn = std::function<Point(const Point& s, const Point& x, const Point& r)>;
  using BestFn = std::function<SuccessorRelation(const Point& h, const Map& k)>;

  Game(Boundary dom, Boundary cod, Space strategies, PlayFn play, CoplayFn coplay, BestFn best)
      : dom_(std::move(dom)),
        cod_(std::move(cod)),
        strategies_(std::move(strategies)),
        play_(std::move(play)),
        coplay_(std::move(coplay)),
        best_(std::move(best)) {}

  const Boundary& dom() const { return dom_; }
  const Boundary& cod() const { return cod_; }
  const Space& strategies() const { return strategies_; }

  Point play(const Point& s, const Point& x) const;
  Point coplay(const Point& s, const Point& x, const Point& r) const;
  SuccessorRelation best(const Point& h, const Map& k) const;

 private:
  Boundary dom_;
  Boundary cod_;
  Space strategies_;
  PlayFn play_;
  CoplayFn coplay_;
  BestFn best_;
};

inline Point Game::play(const Point& s, const Point& x) const {
  require_same_space(strategies_, s.space(), "play strategy");
  require_same_space(dom_.state, x.space(), "play state");
  Point y = play_(s, x);
  require_same_space(cod_.state, y.space(), "play result");
  return y;
}

inline Point Game::coplay(const Point& s, const Point& x, const Point& r) const {
  require_same_space(strategies_, s.space(), "coplay strategy");
  require_same_space(dom_.state, x.space(), "coplay state");
  require_same_space(cod_.costate, r.space(), "coplay costate");
  Point back = coplay_(s, x, r);
  require_same_space(dom_.costate, back.space(), "coplay result");
  return back;
}

inline SuccessorRelation Game::best(const Point& h, const Map& k) const {
  require_same_space(dom_.state, h.space(), "best-response history");
  require_same_space(cod_.state, k.dom(), "continuation domain");
  require_same_space(cod_.costate, k.cod(), "continuation codomain");
  SuccessorRelation rel = best_(h, k);
  require_same_space(strategies_, rel.space(), "best-response relation");
  return rel;
}

/// A pair (h, k) closing a game: an initial state and a continuation.
struct Context {
  Point h;
  Map k;
};

/// Every context of `g`: all h in X, all k : Y -> R, h major.
inline std::vector<Context> enumerate_contexts(const Game& g, std::size_t cap = kDefaultMapCap) {
  const auto hs = enumerate_points(g.dom().state);
  const auto ks = enumerate_maps(g.cod().state, g.cod().costate, cap);
  std::vector<Context> out;
  out.reserve(hs.size() * ks.size());
  for (const auto& h : hs) {
    for (const auto& k : ks) out.push_back({h, k});
  }
  return out;
}

namespace detail {

inline SuccessorRelation trivial_relation() {
  return SuccessorRelation::functional(Space::singleton(), [](const Point&) {
    return Point::unit();
  });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Identities, composition, tensor.

inline Game id_game(const Boundary& b) {
  return Game(
      b, b, Space::singleton(), [](const Point&, const Point& x) { return x; },
      [](const Point&, const Point&, const Point& r) { return r; },
      [](const Point&, const Map&) { return detail::trivial_relation(); });
}

inline Game id_game(const Space& x) { return id_game(Boundary::diagonal(x)); }

/// `second` after `first`. Strategy profiles are pairs (p, q).
///
/// The composite best response relates (p, q) to (p', q') when p' is a best
/// response of `first` against the continuation y -> coplay2(q, y, k(play2(q, y)))
/// and q' is a best response of `second` at the state play1(p, h).
inline Game compose_game(const Game& first, const Game& second) {
  if (!(first.cod() == second.dom())) {
    throw SpaceMismatch("compose_game: " + first.cod().to_string() + " vs " +
                        second.dom().to_string());
  }
  const Space profiles = Space::product(first.strategies(), second.strategies());
  const Boundary middle = first.cod();
  return Game(
      first.dom(), second.cod(), profiles,
      [first, second](const Point& pq, const Point& x) {
        return second.play(pq.second(), first.play(pq.first(), x));
      },
      [first, second](const Point& pq, const Point& x, const Point& r) {
        const Point& p = pq.first();
        return first.coplay(p, x, second.coplay(pq.second(), first.play(p, x), r));
      },
      [first, second, profiles, middle](const Point& h, const Map& k) {
        return SuccessorRelation::from_sets(
            profiles, [first, second, profiles, middle, h, k](const Point& pq) {
              const Point& p = pq.first();
              const Point& q = pq.second();
              const Map pulled_back(middle.state, middle.costate,
                                    [second, q, k](const Point& y) {
                                      return second.coplay(q, y, k(second.play(q, y)));
                                    });
              const auto firsts = first.best(h, pulled_back).successors(p);
              const auto seconds = second.best(first.play(p, h), k).successors(q);
              std::vector<Point> out;
              out.reserve(firsts.size() * seconds.size());
              for (const auto& p2 : firsts) {
                for (const auto& q2 : seconds) out.push_back(Point::pair(profiles, p2, q2));
              }
              return out;
            });
      });
}

/// Parallel product. Each component best-responds against the continuation
/// with the other component's current play held fixed.
inline Game tensor_game(const Game& left, const Game& right) {
  const Space profiles = Space::product(left.strategies(), right.strategies());
  const Boundary dom = tensor_boundary(left.dom(), right.dom());
  const Boundary cod = tensor_boundary(left.cod(), right.cod());
  return Game(
      dom, cod, profiles,
      [left, right, cod](const Point& st, const Point& xw) {
        return Point::pair(cod.state, left.play(st.first(), xw.first()),
                           right.play(st.second(), xw.second()));
      },
      [left, right, dom](const Point& st, const Point& xw, const Point& rq) {
        return Point::pair(dom.costate, left.coplay(st.first(), xw.first(), rq.first()),
                           right.coplay(st.second(), xw.second(), rq.second()));
      },
      [left, right, profiles, cod](const Point& xw, const Map& k) {
        return SuccessorRelation::from_sets(
            profiles, [left, right, profiles, cod, xw, k](const Point& st) {
              const Point& sigma = st.first();
              const Point& tau = st.second();
              const Point& x = xw.first();
              const Point& w = xw.second();
              const Point other_right = right.play(tau, w);
              const Point other_left = left.play(sigma, x);
              const Map k1(left.cod().state, left.cod().costate,
                           [k, cod, other_right](const Point& y) {
                             return k(Point::pair(cod.state, y, other_right)).first();
                           });
              const Map k2(right.cod().state, right.cod().costate,
                           [k, cod, other_left](const Point& z) {
                             return k(Point::pair(cod.state, other_left, z)).second();
                           });
              const auto lefts = left.best(x, k1).successors(sigma);
              const auto rights = right.best(w, k2).successors(tau);
              std::vector<Point> out;
              out.reserve(lefts.size() * rights.size());
              for (const auto& s2 : lefts) {
                for (const auto& t2 : rights) out.push_back(Point::pair(profiles, s2, t2));
              }
              return out;
            });
      });
}

// ---------------------------------------------------------------------------
// Zero-player games.

/// Strategyless game (X, S) -> (Y, R) with play f : X -> Y and coplay
/// g : R -> S applied to the incoming costate.
inline Game lift_game(const Map& forward, const Map& backward) {
  return Game(
      {forward.dom(), backward.cod()}, {forward.cod(), backward.dom()}, Space::singleton(),
      [forward](const Point&, const Point& x) { return forward(x); },
      [backward](const Point&, const Point&, const Point& r) { return backward(r); },
      [](const Point&, const Map&) { return detail::trivial_relation(); });
}

/// The counit (X, X) -> (1, 1): coplay returns the observed state.
inline Game counit_game(const Space& x) {
  return Game(
      Boundary::diagonal(x), Boundary::unit(), Space::singleton(),
      [](const Point&, const Point&) { return Point::unit(); },
      [](const Point&, const Point& seen, const Point&) { return seen; },
      [](const Point&, const Map&) { return detail::trivial_relation(); });
}

/// Closes (Y, R) with a payoff function: coplay(*, y, *) = f(y).
inline Game payoff_closure(const Map& f) {
  return Game(
      {f.dom(), f.cod()}, Boundary::unit(), Space::singleton(),
      [](const Point&, const Point&) { return Point::unit(); },
      [f](const Point&, const Point& y, const Point&) { return f(y); },
      [](const Point&, const Map&) { return detail::trivial_relation(); });
}

inline Game associator_game(const Boundary& a, const Boundary& b, const Boundary& c) {
  auto states = associator_maps(a.state, b.state, c.state);
  auto costates = associator_maps(a.costate, b.costate, c.costate);
  return lift_game(states.first, costates.second);
}

inline Game left_unitor_game(const Boundary& b) {
  return lift_game(left_unitor_maps(b.state).first, left_unitor_maps(b.costate).second);
}

inline Game right_unitor_game(const Boundary& b) {
  return lift_game(right_unitor_maps(b.state).first, right_unitor_maps(b.costate).second);
}

inline Game symmetry_game(const Boundary& a, const Boundary& b) {
  return lift_game(symmetry_maps(a.state, b.state).first,
                   symmetry_maps(a.costate, b.costate).second);
}

// ---------------------------------------------------------------------------
// Gradient players.

/// A one-dimensional player (1, 1) -> (R, R) whose best response is a single
/// gradient-ascent step on the continuation, estimated by central
/// differences: q -> q + rate * (k(q + step) - k(q - step)) / (2 step).
inline Game gradient_player(double rate, double step) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw InvalidParameters("gradient player rate must be finite and positive");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InvalidParameters("gradient player step must be finite and positive");
  }
  const Space line = Space::real_vec(1);
  return Game(
      Boundary::unit(), Boundary::diagonal(line), line,
      [](const Point& q, const Point&) { return q; },
      [](const Point&, const Point&, const Point&) { return Point::unit(); },
      [line, rate, step](const Point&, const Map& k) {
        return SuccessorRelation::functional(line, [line, rate, step, k](const Point& q) {
          const double at = q.value();
          const double up = k(Point::real(line, {at + step})).value();
          const double down = k(Point::real(line, {at - step})).value();
          return Point::real(line, {at + rate * (up - down) / (2.0 * step)});
        });
      });
}

// ---------------------------------------------------------------------------
// Equivalence.

/// A bijection between strategy spaces and its inverse.
using GameEquivalenceWitness = EquivalenceWitness;

namespace detail {

struct GameTables {
  std::size_t strategies = 0, states = 0, costates = 0;
  std::vector<std::size_t> play;                   // [s][x] -> y
  std::vector<std::size_t> coplay;                 // [s][x][r] -> s'
  std::vector<std::vector<std::size_t>> best;      // [context][s] -> successors
};

inline GameTables tabulate(const Game& g, const std::vector<Context>& contexts) {
  require_enumerable(g.strategies());
  require_enumerable(g.dom().state);
  require_enumerable(g.dom().costate);
  require_enumerable(g.cod().state);
  require_enumerable(g.cod().costate);
  GameTables t;
  const auto ss = enumerate_points(g.strategies());
  const auto xs = enumerate_points(g.dom().state);
  const auto rs = enumerate_points(g.cod().costate);
  t.strategies = ss.size();
  t.states = xs.size();
  t.costates = rs.size();
  for (const auto& s : ss) {
    for (const auto& x : xs) {
      t.play.push_back(index_of(g.play(s, x)));
      for (const auto& r : rs) t.coplay.push_back(index_of(g.coplay(s, x, r)));
    }
  }
  for (const auto& ctx : contexts) {
    const auto rel = g.best(ctx.h, ctx.k);
    for (const auto& s : ss) {
      std::vector<std::size_t> next;
      for (const auto& n : rel.successors(s)) next.push_back(index_of(n));
      t.best.push_back(std::move(next));
    }
  }
  return t;
}

inline bool respects(const GameTables& a, const GameTables& b,
                     const std::vector<std::size_t>& perm) {
  const std::size_t n = a.strategies;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t x = 0; x < a.states; ++x) {
      if (b.play[perm[s] * a.states + x] != a.play[s * a.states + x]) return false;
      for (std::size_t r = 0; r < a.costates; ++r) {
        const std::size_t i = (s * a.states + x) * a.costates + r;
        const std::size_t j = (perm[s] * a.states + x) * a.costates + r;
        if (b.coplay[j] != a.coplay[i]) return false;
      }
    }
  }
  std::vector<std::size_t> image;
  for (std::size_t c = 0; c * n < a.best.size(); ++c) {
    for (std::size_t s = 0; s < n; ++s) {
      image.clear();
      for (std::size_t t : a.best[c * n + s]) image.push_back(perm[t]);
      std::sort(image.begin(), image.end());
      if (image != b.best[c * n + perm[s]]) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Searches every bijection of strategies for one respecting play, coplay
/// and best response at every context. Refuses non-enumerable continuation
/// spaces rather than sampling them.
inline std::optional<GameEquivalenceWitness> game_equiv(const Game& a, const Game& b,
                                                        std::size_t cap = kDefaultMapCap) {
  if (!(a.dom() == b.dom()) || !(a.cod() == b.cod())) {
    throw SpaceMismatch("game_equiv: " + a.dom().to_string() + "->" + a.cod().to_string() +
                        " vs " + b.dom().to_string() + "->" + b.cod().to_string());
  }
  detail::require_searchable(a.strategies());
  detail::require_searchable(b.strategies());
  if (a.strategies().cardinality() != b.strategies().cardinality()) return std::nullopt;
  const auto contexts = enumerate_contexts(a, cap);
  const auto ta = detail::tabulate(a, contexts);
  const auto tb = detail::tabulate(b, contexts);
  std::vector<std::size_t> perm(ta.strategies);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    if (detail::respects(ta, tb, perm)) {
      return detail::witness_from_permutation(a.strategies(), b.strategies(), perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// Checks a candidate witness at every strategy, state, costate and context.
inline bool verify_game_witness(const Game& a, const Game& b, const GameEquivalenceWitness& w,
                                std::size_t cap = kDefaultMapCap) {
  if (!(a.dom() == b.dom()) || !(a.cod() == b.cod())) {
    throw SpaceMismatch("verify_game_witness: boundaries differ");
  }
  if (!detail::is_bijection(w, a.strategies(), b.strategies())) return false;
  const auto contexts = enumerate_contexts(a, cap);
  const auto ta = detail::tabulate(a, contexts);
  const auto tb = detail::tabulate(b, contexts);
  return detail::respects(ta, tb, detail::permutation_of(w));
}

/// Renames the strategies of `g` along `w`.
inline Game transport_game(const Game& g, const GameEquivalenceWitness& w) {
  require_same_space(g.strategies(), w.forward.dom(), "transport_game");
  const Space renamed = w.forward.cod();
  return Game(
      g.dom(), g.cod(), renamed,
      [g, w](const Point& s, const Point& x) { return g.play(w.inverse(s), x); },
      [g, w](const Point& s, const Point& x, const Point& r) {
        return g.coplay(w.inverse(s), x, r);
      },
      [g, w, renamed](const Point& h, const Map& k) {
        return SuccessorRelation::from_sets(renamed, [rel = g.best(h, k), w](const Point& s) {
          std::vector<Point> out;
          for (const auto& n : rel.successors(w.inverse(s))) out.push_back(w.forward(n));
          return out;
        });
      });
}

}  // namespace opengames
