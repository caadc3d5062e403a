#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opengames/core.hpp"
#include "opengames/game.hpp"
#include "opengames/learn.hpp"

namespace opengames {

/// The functor from learners to games. Parameters become strategies,
/// implement becomes play, request becomes coplay, and the best response at
/// (h, k) sends p to U(p, h, k(I(p, h))).
inline Game apply_F(const Learner& a) {
  const Space params = a.params();
  return Game(
      Boundary::diagonal(a.dom()), Boundary::diagonal(a.cod()), params,
      [a](const Point& p, const Point& x) { return a.implement(p, x); },
      [a](const Point& p, const Point& x, const Point& y) { return a.request(p, x, y); },
      [a, params](const Point& h, const Map& k) {
        return SuccessorRelation::functional(
            params, [a, h, k](const Point& p) { return a.update(p, h, k(a.implement(p, h))); });
      });
}

// ---------------------------------------------------------------------------
// Law reports.

/// Where a law check first failed.
struct Counterexample {
  std::string h;
  std::string k;
  std::string strategy;
  std::string component;  // play, coplay, best, ...
};

/// Outcome of one executable law check on one instance.
///
/// Serialized as one line:
///   LAW <id> <instance-hash> <contexts> <PASS|FAIL> [counterexample...]
struct LawReport {
  std::string law;
  std::uint64_t instance_hash = 0;
  std::string instance;
  std::size_t contexts = 0;
  std::optional<Counterexample> counterexample;

  bool pass() const { return !counterexample.has_value(); }

  std::string to_line() const {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(instance_hash));
    std::string line = "LAW " + law + " " + hash + " " + std::to_string(contexts) +
                       (pass() ? " PASS" : " FAIL");
    if (counterexample) {
      line += " at=" + counterexample->component + " h=" + counterexample->h +
              " k=" + counterexample->k + " strategy=" + counterexample->strategy;
    }
    return line;
  }
};

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline LawReport make_report(std::string law, std::string instance) {
  LawReport r;
  r.law = std::move(law);
  r.instance_hash = fnv1a(instance);
  r.instance = std::move(instance);
  return r;
}

/// Extensional comparison of two games of the same type: play and coplay
/// pointwise, best response by relation equality at every enumerated
/// context. Records the first difference found.
inline LawReport compare_games(std::string law, std::string instance, const Game& lhs,
                               const Game& rhs, std::size_t cap = kDefaultMapCap) {
  LawReport report = make_report(std::move(law), std::move(instance));
  if (!(lhs.dom() == rhs.dom()) || !(lhs.cod() == rhs.cod()) ||
      !(lhs.strategies() == rhs.strategies())) {
    report.counterexample =
        Counterexample{"-", "-", "-", "type:" + lhs.dom().to_string() + "->" +
                                          lhs.cod().to_string() + "/" + rhs.dom().to_string() +
                                          "->" + rhs.cod().to_string()};
    return report;
  }
  const auto contexts = enumerate_contexts(lhs, cap);
  report.contexts = contexts.size();
  const auto strategies = enumerate_points(lhs.strategies());
  const auto states = enumerate_points(lhs.dom().state);
  const auto costates = enumerate_points(lhs.cod().costate);

  for (const auto& s : strategies) {
    for (const auto& x : states) {
      if (!(lhs.play(s, x) == rhs.play(s, x))) {
        report.counterexample = Counterexample{x.to_string(), "-", s.to_string(), "play"};
        return report;
      }
      for (const auto& r : costates) {
        if (!(lhs.coplay(s, x, r) == rhs.coplay(s, x, r))) {
          report.counterexample =
              Counterexample{x.to_string(), "costate:" + r.to_string(), s.to_string(), "coplay"};
          return report;
        }
      }
    }
  }
  for (const auto& ctx : contexts) {
    const auto left = lhs.best(ctx.h, ctx.k);
    const auto right = rhs.best(ctx.h, ctx.k);
    for (const auto& s : strategies) {
      if (left.successors(s) != right.successors(s)) {
        report.counterexample =
            Counterexample{ctx.h.to_string(), ctx.k.to_string(), s.to_string(), "best"};
        return report;
      }
    }
  }
  return report;
}

/// Game-side constructors used by the law checks. Replaceable so the
/// checkers themselves can be tested against faulty constructions.
struct GameOps {
  std::function<Game(const Game&, const Game&)> compose = compose_game;
  std::function<Game(const Game&, const Game&)> tensor = tensor_game;
};

// ---------------------------------------------------------------------------
// Law checks.

/// F(id_X) = id_(X,X).
inline LawReport check_identity_law(const Space& x) {
  return compare_games("identity", "space " + x.to_string(), apply_F(id_learner(x)), id_game(x));
}

/// F(B o A) = F(B) o F(A).
inline LawReport check_functoriality(const Learner& a, const Learner& b,
                                     const GameOps& ops = {}) {
  require_same_space(a.cod(), b.dom(), "check_functoriality");
  return compare_games("functoriality", learner_fingerprint(a) + " | " + learner_fingerprint(b),
                       apply_F(compose_learner(a, b)), ops.compose(apply_F(a), apply_F(b)));
}

/// F(A (x) B) = F(A) (x) F(B).
inline LawReport check_monoidality(const Learner& a, const Learner& b, const GameOps& ops = {}) {
  return compare_games("monoidality", learner_fingerprint(a) + " | " + learner_fingerprint(b),
                       apply_F(tensor_learner(a, b)), ops.tensor(apply_F(a), apply_F(b)));
}

/// F(!_X) = counit_X.
inline LawReport check_counit(const Space& x) {
  return compare_games("counit", "space " + x.to_string(), apply_F(bang_learner(x)),
                       counit_game(x));
}

/// F on the associator learner is the associator game.
inline LawReport check_associator(const Space& x, const Space& y, const Space& z) {
  return compare_games(
      "associator", "spaces " + x.to_string() + "," + y.to_string() + "," + z.to_string(),
      apply_F(associator_learner(x, y, z)),
      associator_game(Boundary::diagonal(x), Boundary::diagonal(y), Boundary::diagonal(z)));
}

inline LawReport check_left_unitor(const Space& x) {
  return compare_games("left-unitor", "space " + x.to_string(), apply_F(left_unitor_learner(x)),
                       left_unitor_game(Boundary::diagonal(x)));
}

inline LawReport check_right_unitor(const Space& x) {
  return compare_games("right-unitor", "space " + x.to_string(),
                       apply_F(right_unitor_learner(x)),
                       right_unitor_game(Boundary::diagonal(x)));
}

inline LawReport check_symmetry(const Space& x, const Space& y) {
  return compare_games("symmetry", "spaces " + x.to_string() + "," + y.to_string(),
                       apply_F(symmetry_learner(x, y)),
                       symmetry_game(Boundary::diagonal(x), Boundary::diagonal(y)));
}

/// Every strategy has exactly one successor at every enumerated context.
inline LawReport check_functional_best(const Game& g, std::string instance,
                                       std::size_t cap = kDefaultMapCap) {
  LawReport report = make_report("functional", std::move(instance));
  const auto contexts = enumerate_contexts(g, cap);
  report.contexts = contexts.size();
  const auto strategies = enumerate_points(g.strategies());
  for (const auto& ctx : contexts) {
    const auto rel = g.best(ctx.h, ctx.k);
    for (const auto& s : strategies) {
      if (rel.successors(s).size() != 1) {
        report.counterexample =
            Counterexample{ctx.h.to_string(), ctx.k.to_string(), s.to_string(), "best"};
        return report;
      }
    }
  }
  return report;
}

/// The successor of p in F(A) at (x, y' -> y) is U_A(p, x, y), for all p, x, y.
inline LawReport check_one_step(const Learner& a) {
  LawReport report = make_report("one-step", learner_fingerprint(a));
  const Game g = apply_F(a);
  const auto xs = enumerate_points(a.dom());
  const auto ys = enumerate_points(a.cod());
  const auto ps = enumerate_points(a.params());
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      const Map constant = Map::constant(a.cod(), y);
      const auto rel = g.best(x, constant);
      ++report.contexts;
      for (const auto& p : ps) {
        const auto next = rel.successors(p);
        if (next.size() != 1 || !(next.front() == a.update(p, x, y))) {
          report.counterexample =
              Counterexample{x.to_string(), "const:" + y.to_string(), p.to_string(), "best"};
          return report;
        }
      }
    }
  }
  return report;
}

/// Learner equivalence holds iff equivalence of the F-images holds. When
/// both hold, the learner witness must be a game witness, the game witness
/// must be a learner witness, and constant continuations must recover the
/// update equation through the game witness.
inline LawReport check_faithfulness(const Learner& a, const Learner& b) {
  LawReport report =
      make_report("faithfulness", learner_fingerprint(a) + " | " + learner_fingerprint(b));
  const Game fa = apply_F(a);
  const Game fb = apply_F(b);
  const auto learner_witness = learner_equiv(a, b);
  const auto game_witness = game_equiv(fa, fb);
  report.contexts = enumerate_points(a.dom()).size() * count_maps(a.cod(), a.cod());
  if (learner_witness.has_value() != game_witness.has_value()) {
    report.counterexample =
        Counterexample{"-", "-", "-",
                       learner_witness ? "learner-only-equivalence" : "game-only-equivalence"};
    return report;
  }
  if (!learner_witness) return report;

  if (!verify_game_witness(fa, fb, *learner_witness)) {
    report.counterexample =
        Counterexample{"-", "-", learner_witness->forward.to_string(), "transport"};
    return report;
  }
  if (!verify_learner_witness(a, b, *game_witness)) {
    report.counterexample =
        Counterexample{"-", "-", game_witness->forward.to_string(), "reflection"};
    return report;
  }
  const auto& i = game_witness->forward;
  for (const auto& x : enumerate_points(a.dom())) {
    for (const auto& y : enumerate_points(a.cod())) {
      const Map constant = Map::constant(a.cod(), y);
      const auto rel_b = fb.best(x, constant);
      for (const auto& p : enumerate_points(a.params())) {
        const Point ip = i(p);
        const auto next = rel_b.successors(ip);
        const Point expected = i(a.update(p, x, y));
        if (next.size() != 1 || !(next.front() == expected) ||
            !(b.update(ip, x, y) == expected)) {
          report.counterexample =
              Counterexample{x.to_string(), "const:" + y.to_string(), p.to_string(), "update"};
          return report;
        }
      }
    }
  }
  return report;
}

}  // namespace opengames
