#include <gtest/gtest.h>

#include <cmath>

#include "opengames/dynamics.hpp"
#include "opengames/functor.hpp"
#include "opengames/random.hpp"
#include "support/oracles.hpp"

namespace opengames {
namespace {

using testing::atom;
using testing::bits;

Map hill(double top) {
  const Space line = Space::real_vec(1);
  return Map(line, line, [line, top](const Point& q) {
    return Point::real(line, {-(q.value() - top) * (q.value() - top)});
  });
}

TEST(Step, Examples) {
  const Space b = bits();
  const Game x = apply_F(testing::xor_learner(b));
  // U(0, 1, k(0 xor 1)) = k(1) = 1 for k = id.
  EXPECT_TRUE(step(x, {atom(b, "1"), Map::identity(b)}, atom(b, "0")) == atom(b, "1"));
  const Game g = gradient_player(0.1, 1e-5);
  EXPECT_NEAR(step(g, {Point::unit(), hill(2.0)}, Point::scalar(0.0)).value(), 0.4, 1e-8);
  EXPECT_TRUE(step(id_game(b), {atom(b, "0"), Map::identity(b)}, Point::unit()) == Point::unit());
}

Game relation_game(const Space& s, std::function<std::vector<Point>(const Point&)> next) {
  return Game(Boundary::unit(), Boundary::unit(), s,
              [](const Point&, const Point&) { return Point::unit(); },
              [](const Point&, const Point&, const Point&) { return Point::unit(); },
              [s, next](const Point&, const Map&) { return SuccessorRelation::from_sets(s, next); });
}

const Context& closed() {
  static const Context ctx{Point::unit(), Map::identity(Space::singleton())};
  return ctx;
}

TEST(Step, TiesAndDeadEnds) {
  const Space t = Space::range(3, "T");
  const Game ties = relation_game(t, [t](const Point&) {
    return std::vector<Point>{Point::atom_at(t, 2), Point::atom_at(t, 1)};
  });
  EXPECT_TRUE(step(ties, closed(), Point::atom_at(t, 0)) == Point::atom_at(t, 1));

  const Game dead = relation_game(t, [](const Point&) { return std::vector<Point>{}; });
  EXPECT_THROW(step(dead, closed(), Point::atom_at(t, 0)), EmptySuccessorSet);

  const Space line = Space::real_vec(1);
  const Game split = relation_game(line, [](const Point& q) {
    return std::vector<Point>{Point::scalar(q.value() - 1), Point::scalar(q.value() + 1)};
  });
  EXPECT_THROW(step(split, closed(), Point::scalar(0.0)), AmbiguousRealSuccessor);
}

TEST(Iterate, XorSettlesOnConstantContinuation) {
  const Space b = bits();
  const Game g = apply_F(testing::xor_learner(b));
  const Context ctx{atom(b, "0"), Map::constant(b, atom(b, "1"))};
  const auto t = iterate(g, ctx, atom(b, "0"), 10, 0.0);
  EXPECT_TRUE(t.converged);
  EXPECT_LE(t.iterations, 2u);
  EXPECT_TRUE(t.final_state() == atom(b, "1"));
  EXPECT_EQ(t.states.size(), t.iterations + 1);
}

TEST(Iterate, GradientPlayerClimbsTheHill) {
  const Game g = gradient_player(0.4, 1e-5);
  const auto t = iterate(g, {Point::unit(), hill(2.0)}, Point::scalar(0.0), 1000, 1e-9);
  EXPECT_TRUE(t.converged);
  EXPECT_NEAR(t.final_state().value(), 2.0, 1e-4);
  EXPECT_LE(t.residual, 1e-9);
}

TEST(Iterate, BudgetExhaustion) {
  const Game g = gradient_player(0.1, 1e-5);
  const auto t = iterate(g, {Point::unit(), hill(2.0)}, Point::scalar(0.0), 1, 1e-9);
  EXPECT_FALSE(t.converged);
  EXPECT_EQ(t.iterations, 1u);
  EXPECT_EQ(t.states.size(), 2u);
  EXPECT_THROW(iterate(g, {Point::unit(), hill(2.0)}, Point::scalar(0.0), 0, 1e-9),
               InvalidParameters);
  EXPECT_THROW(iterate(g, {Point::unit(), hill(2.0)}, Point::scalar(0.0), 5, -1.0),
               InvalidParameters);
}

// Every state after the first is a successor of its predecessor, and the
// recorded residual is the last move.
TEST(Iterate, PropertyOrbitFollowsTheRelation) {
  InstanceGenerator gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Space x = gen.finite_space("X", 3);
    const Space y = gen.finite_space("Y", 3);
    const Learner a = gen.learner(x, y, gen.finite_space("P", 3));
    const Game g = apply_F(a);
    const Context ctx{point_at(x, gen.uniform(0, x.cardinality() - 1)), gen.random_map(y, y)};
    const Point start = point_at(a.params(), gen.uniform(0, a.params().cardinality() - 1));
    const auto t = iterate(g, ctx, start, 20, 0.0);
    ASSERT_EQ(t.states.size(), t.iterations + 1);
    for (std::size_t i = 1; i < t.states.size(); ++i) {
      EXPECT_TRUE(t.states[i] == a.update(t.states[i - 1], ctx.h, ctx.k(a.implement(t.states[i - 1], ctx.h))));
    }
    if (t.converged) {
      EXPECT_TRUE(is_nash(g, ctx, t.final_state(), 0.0));
    }
  }
}

TEST(IsNash, Examples) {
  const Game g = gradient_player(0.1, 1e-5);
  EXPECT_TRUE(is_nash(g, {Point::unit(), hill(2.0)}, Point::scalar(2.0), 1e-6));
  EXPECT_FALSE(is_nash(g, {Point::unit(), hill(2.0)}, Point::scalar(0.0), 1e-6));
  const Space b = bits();
  const Game x = apply_F(testing::xor_learner(b));
  const Context ctx{atom(b, "0"), Map::constant(b, atom(b, "1"))};
  EXPECT_TRUE(is_nash(x, ctx, atom(b, "1"), 0.0));
  EXPECT_FALSE(is_nash(x, ctx, atom(b, "0"), 0.0));
}

TEST(Cournot, ConvergesToTheAnalyticEquilibrium) {
  for (const CournotParams params : {CournotParams{}, CournotParams{10, 1, 1, 0.1, 1e-3}}) {
    const CournotGame cg = build_cournot(params);
    const auto t = iterate(cg.game, cg.context, cg.profile(0.5, 0.5), 2000, 1e-6);
    ASSERT_TRUE(t.converged);
    const auto [q1, q2] = CournotGame::quantities(t.final_state());
    EXPECT_NEAR(q1, 3.0, 1e-3);
    EXPECT_NEAR(q2, 3.0, 1e-3);
    const auto [u1, u2] = cg.payoffs(q1, q2);
    EXPECT_NEAR(u1, 9.0, 1e-2);
    EXPECT_NEAR(u2, 9.0, 1e-2);
    EXPECT_DOUBLE_EQ(cg.equilibrium_quantity(), 3.0);
    EXPECT_TRUE(is_nash(cg.game, cg.context, t.final_state(), 1e-3));
  }
}

TEST(Cournot, AgreesWithGridOracle) {
  const auto grid = testing::cournot_grid_equilibria(12, 1, 3, 6, 0.01);
  ASSERT_EQ(grid.size(), 1u);
  const CournotGame cg = build_cournot({});
  EXPECT_TRUE(is_nash(cg.game, cg.context, cg.profile(grid[0].first, grid[0].second), 1e-3));
  EXPECT_FALSE(is_nash(cg.game, cg.context, cg.profile(2.0, 4.0), 1e-3));
}

TEST(Cournot, SymmetricStartStaysSymmetric) {
  const CournotGame cg = build_cournot({});
  const auto t = iterate(cg.game, cg.context, cg.profile(1.25, 1.25), 50, 1e-6);
  for (const auto& s : t.states) {
    const auto [q1, q2] = CournotGame::quantities(s);
    EXPECT_DOUBLE_EQ(q1, q2);
  }
}

TEST(Cournot, InvalidParameters) {
  EXPECT_THROW(build_cournot({3, 1, 12, 0.1, 1e-3}), InvalidParameters);
  EXPECT_THROW(build_cournot({12, 0, 3, 0.1, 1e-3}), InvalidParameters);
  EXPECT_THROW(build_cournot({12, 1, 3, 0.0, 1e-3}), InvalidParameters);
  EXPECT_THROW(build_cournot({INFINITY, 1, 3, 0.1, 1e-3}), InvalidParameters);
}

TEST(StepResidual, SupNorm) {
  const Space plane = Space::product(Space::real_vec(1), Space::real_vec(1));
  EXPECT_DOUBLE_EQ(step_residual(Point::pair(plane, Point::scalar(1), Point::scalar(2)),
                                 Point::pair(plane, Point::scalar(1.5), Point::scalar(-1))),
                   3.0);
  const Space b = bits();
  EXPECT_DOUBLE_EQ(step_residual(atom(b, "0"), atom(b, "1")), 1.0);
}

}  // namespace
}  // namespace opengames
