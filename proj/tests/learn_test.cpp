#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "opengames/learn.hpp"
#include "opengames/random.hpp"
#include "support/oracles.hpp"

namespace opengames {
namespace {

using testing::atom;
using testing::bits;

TEST(IdLearner, Examples) {
  const Space b = bits();
  const Learner id = id_learner(b);
  EXPECT_TRUE(id.implement(Point::unit(), atom(b, "1")) == atom(b, "1"));
  EXPECT_TRUE(id.update(Point::unit(), atom(b, "0"), atom(b, "1")) == Point::unit());
  EXPECT_TRUE(id.request(Point::unit(), atom(b, "0"), atom(b, "1")) == atom(b, "1"));
}

// The other singleton-parameter choice, request(*, x, y) = x, breaks the
// left identity law on the XOR learner.
TEST(IdLearner, RequestChoiceIsForcedByIdentityLaw) {
  const Space b = bits();
  const Learner a = testing::xor_learner(b);
  const Learner echo_input = Learner::from_functions(
      b, b, Space::singleton(), [](const Point&, const Point& x) { return x; },
      [](const Point&, const Point&, const Point&) { return Point::unit(); },
      [](const Point&, const Point& x, const Point&) { return x; });
  EXPECT_TRUE(learner_equiv(compose_learner(a, id_learner(b)), a).has_value());
  EXPECT_FALSE(learner_equiv(compose_learner(a, echo_input), a).has_value());
}

TEST(ComposeLearner, XorThenIdentity) {
  const Space b = bits();
  const Learner a = testing::xor_learner(b);
  const Learner ba = compose_learner(a, id_learner(b));
  const Point p = Point::pair(atom(b, "1"), Point::unit());
  // U_A(1, 0, r_id(*, 1, 1)) = 1.
  EXPECT_TRUE(ba.update(p, atom(b, "0"), atom(b, "1")) == p);
  // I_id(*, 1 xor 1) = 0.
  EXPECT_TRUE(ba.implement(p, atom(b, "1")) == atom(b, "0"));
}

TEST(ComposeLearner, IdentityWithIdentity) {
  const Space b = bits();
  EXPECT_TRUE(learner_equiv(compose_learner(id_learner(b), id_learner(b)), id_learner(b)));
}

TEST(ComposeLearner, RejectsMismatchedSpaces) {
  EXPECT_THROW(compose_learner(id_learner(bits("X")), id_learner(bits("Y"))), SpaceMismatch);
}

TEST(ComposeLearner, RequestThreadsBackwardThroughBothLearners) {
  InstanceGenerator gen(11);
  InstanceBounds bounds;
  for (int trial = 0; trial < 20; ++trial) {
    const auto [a, b] = random_composable_pair(gen, bounds);
    const Learner ba = compose_learner(a, b);
    for (const auto& pq : enumerate_points(ba.params())) {
      for (const auto& x : enumerate_points(a.dom())) {
        for (const auto& z : enumerate_points(b.cod())) {
          const Point& p = pq.first();
          const Point& q = pq.second();
          const Point y = a.implement(p, x);
          EXPECT_TRUE(ba.request(pq, x, z) == a.request(p, x, b.request(q, y, z)));
        }
      }
    }
  }
}

TEST(TensorLearner, Examples) {
  const Space b = bits();
  const Space w = Space::finite({"w"}, "W");
  const Learner a = testing::xor_learner(b);
  EXPECT_TRUE(learner_equiv(tensor_learner(id_learner(b), id_learner(w)),
                            id_learner(Space::product(b, w)))
                  .has_value());

  const Learner a_id = tensor_learner(a, id_learner(w));
  const Point p = Point::pair(atom(b, "1"), Point::unit());
  const Point w0 = atom(w, "w");
  EXPECT_TRUE(a_id.update(p, Point::pair(atom(b, "0"), w0), Point::pair(atom(b, "1"), w0)) == p);

  const Learner aa = tensor_learner(a, a);
  EXPECT_TRUE(aa.implement(Point::pair(atom(b, "1"), atom(b, "0")),
                           Point::pair(atom(b, "1"), atom(b, "1"))) ==
              Point::pair(atom(b, "0"), atom(b, "1")));
}

TEST(BangLearner, Examples) {
  const Space line = Space::real_vec(1);
  const Learner bang = bang_learner(line);
  const Point seven = Point::real(line, {7.0});
  EXPECT_TRUE(bang.request(Point::unit(), seven, Point::unit()) == seven);
  EXPECT_TRUE(bang.implement(Point::unit(), seven) == Point::unit());
  EXPECT_TRUE(bang.update(Point::unit(), seven, Point::unit()) == Point::unit());
}

Map scalar_linear() {
  return real_model(1, 1, 1, [](std::span<const double> w, std::span<const double> x) {
    return std::vector<double>{w[0] * x[0]};
  });
}

TEST(GdLearner, ScalarLinearStep) {
  const Learner l = gd_learner(1, 1, 1, scalar_linear(), 0.1);
  const Point w = Point::scalar(1.0);
  const Point x = Point::scalar(2.0);
  const Point y = Point::scalar(0.0);
  // Analytic: dL/dw = 2(wx - y)x = 8, dL/dx = 2(wx - y)w = 4.
  EXPECT_NEAR(l.update(w, x, y).value(), 1.0 - 0.1 * 8.0, 1e-9);
  EXPECT_NEAR(l.request(w, x, y).value(), 2.0 - 0.1 * 4.0, 1e-9);
  EXPECT_NEAR(l.update(w, x, y).value(), 0.2, 1e-9);
  EXPECT_NEAR(l.request(w, x, y).value(), 1.6, 1e-9);
}

TEST(GdLearner, ZeroLossLeavesPointsFixed) {
  const Learner l = gd_learner(1, 1, 1, scalar_linear(), 0.1);
  const Point w = Point::scalar(1.5);
  const Point x = Point::scalar(2.0);
  const Point y = Point::scalar(3.0);
  EXPECT_DOUBLE_EQ(l.update(w, x, y).value(), 1.5);
  EXPECT_DOUBLE_EQ(l.request(w, x, y).value(), 2.0);
}

TEST(GdLearner, Errors) {
  EXPECT_THROW(gd_learner(2, 1, 1, scalar_linear(), 0.1), DimensionMismatch);
  EXPECT_THROW(gd_learner(1, 1, 1, scalar_linear(), -0.1), InvalidParameters);
  EXPECT_THROW(gd_learner(1, 1, 1, scalar_linear(), 0.1, 0.0), InvalidParameters);
  const Map wrong_width = real_model(1, 1, 1, [](std::span<const double>, std::span<const double>) {
    return std::vector<double>{1.0, 2.0};
  });
  const Learner l = gd_learner(1, 1, 1, wrong_width, 0.1);
  EXPECT_THROW(l.implement(Point::scalar(1.0), Point::scalar(1.0)), DimensionMismatch);
}

// Finite-difference gradients agree with analytic ones within relative 1e-4
// for random points in [-2, 2]^n.
TEST(GdLearner, PropertyGradientsMatchAnalytic) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  auto draw = [&](std::size_t n) {
    std::vector<double> v(n);
    for (double& c : v) c = coord(rng);
    return v;
  };
  const double rate = 1.0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t m = 1 + (trial / 3) % 3;
    const Map model = real_model(m * n, n, m, [m](std::span<const double> w, std::span<const double> x) {
      return testing::tanh_layer(w, x, m);
    });
    const Learner l = gd_learner(n, m, m * n, model, rate);
    const auto w = draw(m * n);
    const auto x = draw(n);
    const auto y = draw(m);
    const Point pw = Point::real(w);
    const Point px = Point::real(x);
    const Point py = Point::real(y);
    const Point next_w = l.update(pw, px, py);
    const Point next_x = l.request(pw, px, py);
    std::vector<double> fd_w(w.size());
    std::vector<double> fd_x(x.size());
    for (std::size_t i = 0; i < w.size(); ++i) fd_w[i] = (w[i] - next_w.coords()[i]) / rate;
    for (std::size_t i = 0; i < x.size(); ++i) fd_x[i] = (x[i] - next_x.coords()[i]) / rate;
    EXPECT_LE(testing::relative_error(fd_w, testing::tanh_param_gradient(w, x, y)), 1e-4);
    EXPECT_LE(testing::relative_error(fd_x, testing::tanh_input_gradient(w, x, y)), 1e-4);
  }
}

TEST(LearnerEquiv, Reflexive) {
  const Learner a = testing::xor_learner();
  const auto w = learner_equiv(a, a);
  ASSERT_TRUE(w.has_value());
  for (const auto& p : enumerate_points(a.params())) EXPECT_TRUE(w->forward(p) == p);
}

TEST(LearnerEquiv, FindsRelabeling) {
  const Learner a = testing::xor_learner();
  const Learner b = testing::relabeled_xor_learner();
  const auto w = learner_equiv(a, b);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->forward.to_string(), "[a;b]");
  EXPECT_TRUE(verify_learner_witness(a, b, *w));
}

TEST(LearnerEquiv, RejectsChangedUpdate) {
  EXPECT_FALSE(learner_equiv(testing::xor_learner(), testing::frozen_xor_learner()).has_value());
}

TEST(LearnerEquiv, Errors) {
  const Space six = Space::range(6, "P6");
  const Space seven = Space::range(7, "P7");
  const Space b = bits();
  InstanceGenerator gen(3);
  EXPECT_NO_THROW(learner_equiv(gen.learner(b, b, six), gen.learner(b, b, six)));
  EXPECT_THROW(learner_equiv(gen.learner(b, b, seven), gen.learner(b, b, seven)), SearchTooLarge);
  EXPECT_THROW(learner_equiv(id_learner(bits("X")), id_learner(bits("Y"))), SpaceMismatch);
  const Learner real = gd_learner(1, 1, 1, scalar_linear(), 0.1);
  EXPECT_THROW(learner_equiv(real, real), NotEnumerable);
}

TEST(LearnerEquiv, DifferentParameterCountsAreNotEquivalent) {
  InstanceGenerator gen(5);
  const Space b = bits();
  EXPECT_FALSE(learner_equiv(gen.learner(b, b, Space::range(2, "P")),
                             gen.learner(b, b, Space::range(3, "Q")))
                   .has_value());
}

// A witness for (A, B) inverts to a witness for (B, A).
TEST(LearnerEquiv, PropertySymmetric) {
  InstanceGenerator gen(17);
  InstanceBounds bounds;
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_faithfulness_case(gen, bounds);
    const auto ab = learner_equiv(c.first, c.second);
    const auto ba = learner_equiv(c.second, c.first);
    ASSERT_EQ(ab.has_value(), ba.has_value());
    if (c.kind == PairKind::relabeled) {
      EXPECT_TRUE(ab.has_value());
    }
    if (ab) {
      EXPECT_TRUE(verify_learner_witness(c.second, c.first, ab->inverted()));
    }
  }
}

// compose(id, A) ~ A ~ compose(A, id) and compose is associative up to the
// canonical reassociation of parameters.
TEST(LearnerCategoryLaws, PropertyIdentityAndAssociativity) {
  InstanceGenerator gen(99);
  for (int trial = 0; trial < 60; ++trial) {
    const Space x = gen.finite_space("X", 3);
    const Space y = gen.finite_space("Y", 3);
    const Space z = gen.finite_space("Z", 3);
    const Space w = gen.finite_space("W", 3);
    const Learner a = gen.learner(x, y, gen.finite_space("P", 3));
    const Learner b = gen.learner(y, z, gen.finite_space("Q", 3));
    const Learner c = gen.learner(z, w, gen.finite_space("R", 3));

    EXPECT_TRUE(learner_equiv(compose_learner(id_learner(x), a), a).has_value());
    EXPECT_TRUE(learner_equiv(compose_learner(a, id_learner(y)), a).has_value());

    const Learner left = compose_learner(compose_learner(a, b), c);
    const Learner right = compose_learner(a, compose_learner(b, c));
    EXPECT_TRUE(verify_learner_witness(
        left, right, reassociation_witness(a.params(), b.params(), c.params())));
  }
}

// (A' o A) (x) (B' o B) ~ (A' (x) B') o (A (x) B) under the interchange of
// parameter pairs.
TEST(LearnerCategoryLaws, PropertyTensorIsFunctorial) {
  InstanceGenerator gen(123);
  for (int trial = 0; trial < 40; ++trial) {
    const Space x = gen.finite_space("X", 2);
    const Space y = gen.finite_space("Y", 2);
    const Space z = gen.finite_space("Z", 2);
    const Space u = gen.finite_space("U", 2);
    const Space v = gen.finite_space("V", 2);
    const Space t = gen.finite_space("T", 2);
    const Learner a = gen.learner(x, y, gen.finite_space("P", 2));
    const Learner a2 = gen.learner(y, z, gen.finite_space("P2", 2));
    const Learner b = gen.learner(u, v, gen.finite_space("Q", 2));
    const Learner b2 = gen.learner(v, t, gen.finite_space("Q2", 2));

    const Learner lhs = tensor_learner(compose_learner(a, a2), compose_learner(b, b2));
    const Learner rhs = compose_learner(tensor_learner(a, b), tensor_learner(a2, b2));
    const Space from = lhs.params();
    const Space to = rhs.params();
    const Map forward(from, to, [to](const Point& p) {
      return Point::pair(to, Point::pair(to.left(), p.first().first(), p.second().first()),
                         Point::pair(to.right(), p.first().second(), p.second().second()));
    });
    const Map inverse(to, from, [from](const Point& p) {
      return Point::pair(from, Point::pair(from.left(), p.first().first(), p.second().first()),
                         Point::pair(from.right(), p.first().second(), p.second().second()));
    });
    EXPECT_TRUE(verify_learner_witness(lhs, rhs, {forward.materialize(), inverse.materialize()}));
  }
}

TEST(TransportLearner, IsEquivalentAlongItsWitness) {
  InstanceGenerator gen(8);
  const Space b = bits();
  const Learner a = gen.learner(b, b, Space::range(3, "P"));
  const auto w = gen.bijection(a.params(), Space::finite({"a", "b", "c"}, "L"));
  EXPECT_TRUE(verify_learner_witness(a, transport_learner(a, w), w));
}

TEST(VerifyLearnerWitness, RejectsNonBijection) {
  const Learner a = testing::xor_learner();
  const Space b = bits();
  const Map collapse = Map::constant(b, atom(b, "0")).materialize();
  EXPECT_FALSE(verify_learner_witness(a, a, {collapse, collapse}));
}

}  // namespace
}  // namespace opengames
