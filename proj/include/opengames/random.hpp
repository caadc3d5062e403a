#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "opengames/core.hpp"
#include "opengames/learn.hpp"

namespace opengames {

/// Seeded generator of finite learner instances for randomized law checks.
/// Every structure-map table entry is drawn uniformly, which is the uniform
/// distribution over all maps of that type.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  bool coin() { return uniform(0, 1) == 1; }

  /// Finite space named `id` with atoms "0".."n-1", n in [1, max_size].
  Space finite_space(const std::string& id, std::size_t max_size) {
    return Space::range(uniform(1, max_size), id);
  }

  Map random_map(const Space& dom, const Space& cod) {
    const auto targets = enumerate_points(cod);
    std::vector<Point> values;
    values.reserve(dom.cardinality());
    for (std::size_t i = 0; i < dom.cardinality(); ++i) {
      values.push_back(targets[uniform(0, targets.size() - 1)]);
    }
    return Map::table(dom, cod, std::move(values));
  }

  /// A learner with uniformly random implement, update and request tables.
  Learner learner(const Space& dom, const Space& cod, const Space& params) {
    const Space px = Space::product(params, dom);
    const Space pxy = Space::product(px, cod);
    return Learner(dom, cod, params, random_map(px, cod), random_map(pxy, params),
                   random_map(pxy, dom));
  }

  /// A uniformly random bijection from `from` onto `to` (equal sizes).
  EquivalenceWitness bijection(const Space& from, const Space& to) {
    std::vector<std::size_t> perm(from.cardinality());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng_);
    return detail::witness_from_permutation(from, to, perm);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Size bounds for generated instances.
struct InstanceBounds {
  std::size_t max_space = 3;
  std::size_t max_params = 3;
  std::size_t map_cap = kDefaultMapCap;
};

struct LearnerPair {
  Learner first;
  Learner second;
};

/// A : X -> Y and B : Y -> Z. With `shared_params` both use the same
/// parameter space.
inline LearnerPair random_composable_pair(InstanceGenerator& gen, const InstanceBounds& bounds,
                                          bool shared_params = false) {
  const Space x = gen.finite_space("X", bounds.max_space);
  const Space y = gen.finite_space("Y", bounds.max_space);
  const Space z = gen.finite_space("Z", bounds.max_space);
  const Space p = gen.finite_space("P", bounds.max_params);
  const Space q = shared_params ? p : gen.finite_space("Q", bounds.max_params);
  Learner a = gen.learner(x, y, p);
  Learner b = gen.learner(y, z, q);
  return {std::move(a), std::move(b)};
}

/// A : X -> Y and B : W -> Z with |Y x Z|^|Y x Z| within the map cap, so
/// that every continuation on the product can be enumerated.
inline LearnerPair random_tensor_pair(InstanceGenerator& gen, const InstanceBounds& bounds) {
  const Space x = gen.finite_space("X", bounds.max_space);
  const Space w = gen.finite_space("W", bounds.max_space);
  Space y = gen.finite_space("Y", bounds.max_space);
  Space z = gen.finite_space("Z", bounds.max_space);
  while (count_maps(Space::product(y, z), Space::product(y, z)) > bounds.map_cap) {
    y = gen.finite_space("Y", bounds.max_space);
    z = gen.finite_space("Z", bounds.max_space);
  }
  const Space p = gen.finite_space("P", bounds.max_params);
  const Space q = gen.finite_space("Q", bounds.max_params);
  Learner a = gen.learner(x, y, p);
  Learner b = gen.learner(w, z, q);
  return {std::move(a), std::move(b)};
}

/// How the second learner of a faithfulness case relates to the first.
enum class PairKind { relabeled, mutated, independent };

inline const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::relabeled:
      return "relabeled";
    case PairKind::mutated:
      return "mutated";
    case PairKind::independent:
      return "independent";
  }
  return "?";
}

struct FaithfulnessCase {
  Learner first;
  Learner second;
  PairKind kind;
};

/// `first` with one update entry (p, x, y) redirected to a different
/// parameter. Identity when there is only one parameter.
inline Learner mutate_update(InstanceGenerator& gen, const Learner& a) {
  const std::size_t np = a.params().cardinality();
  if (np < 2) return a;
  const Point p = point_at(a.params(), gen.uniform(0, np - 1));
  const Point x = point_at(a.dom(), gen.uniform(0, a.dom().cardinality() - 1));
  const Point y = point_at(a.cod(), gen.uniform(0, a.cod().cardinality() - 1));
  const std::size_t old = index_of(a.update(p, x, y));
  const Point replacement = point_at(a.params(), (old + gen.uniform(1, np - 1)) % np);
  return Learner::from_functions(
      a.dom(), a.cod(), a.params(),
      [a](const Point& q, const Point& in) { return a.implement(q, in); },
      [a, p, x, y, replacement](const Point& q, const Point& in, const Point& out) {
        if (q == p && in == x && out == y) return replacement;
        return a.update(q, in, out);
      },
      [a](const Point& q, const Point& in, const Point& out) { return a.request(q, in, out); });
}

/// Relabeled pairs are equivalent by construction; mutated pairs are
/// relabelings with one update entry changed; independent pairs share only
/// their types.
inline FaithfulnessCase random_faithfulness_case(InstanceGenerator& gen,
                                                 const InstanceBounds& bounds) {
  const Space x = gen.finite_space("X", bounds.max_space);
  const Space y = gen.finite_space("Y", bounds.max_space);
  const Space p = gen.finite_space("P", bounds.max_params);
  std::vector<std::string> letters;
  for (std::size_t i = 0; i < p.cardinality(); ++i) {
    letters.push_back(std::string(1, static_cast<char>('a' + i)));
  }
  const Space relabeled = Space::finite(letters, "P'");
  Learner a = gen.learner(x, y, p);
  const auto kind = static_cast<PairKind>(gen.uniform(0, 2));
  switch (kind) {
    case PairKind::relabeled: {
      Learner b = transport_learner(a, gen.bijection(p, relabeled));
      return {std::move(a), std::move(b), kind};
    }
    case PairKind::mutated: {
      Learner b = transport_learner(mutate_update(gen, a), gen.bijection(p, relabeled));
      return {std::move(a), std::move(b), kind};
    }
    case PairKind::independent:
      break;
  }
  Learner b = gen.learner(x, y, relabeled);
  return {std::move(a), std::move(b), PairKind::independent};
}

}  // namespace opengames
