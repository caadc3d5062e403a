#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "opengames/core/enumerate.hpp"
#include "opengames/core/error.hpp"
#include "opengames/core/point.hpp"
#include "opengames/core/space.hpp"

namespace opengames {

/// A relation on a space, given as a rule from each point to its finite set
/// of successors.
///
/// Relations built with `functional` carry a single-successor rule and are
/// functional by construction. Relations built from set-valued rules are
/// checked by enumeration.
class SuccessorRelation {
 public:
  using FunctionRule = std::function<Point(const Point&)>;
  using SetRule = std::function<std::vector<Point>(const Point&)>;

  static SuccessorRelation functional(Space space, FunctionRule rule);
  static SuccessorRelation from_sets(Space space, SetRule rule);

  const Space& space() const { return space_; }

  /// Successors of `p`, without duplicates. On enumerable spaces they are
  /// sorted by index_of; otherwise they keep rule order.
  std::vector<Point> successors(const Point& p) const;

  /// True iff every point has exactly one successor. Throws NotEnumerable
  /// for set-valued relations on non-enumerable spaces.
  bool is_functional() const;

 private:
  SuccessorRelation(Space space, std::variant<FunctionRule, SetRule> rule)
      : space_(std::move(space)), rule_(std::make_shared<const Rule>(std::move(rule))) {}

  using Rule = std::variant<FunctionRule, SetRule>;

  Space space_;
  std::shared_ptr<const Rule> rule_;
};

/// Removes duplicates; sorts by enumeration index where the space allows.
inline std::vector<Point> normalize_point_set(const Space& space, std::vector<Point> points) {
  for (const auto& p : points) require_same_space(space, p.space(), "successor");
  if (space.enumerable()) {
    std::vector<std::pair<std::size_t, Point>> keyed;
    keyed.reserve(points.size());
    for (auto& p : points) keyed.emplace_back(index_of(p), std::move(p));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    std::vector<Point> out;
    out.reserve(keyed.size());
    for (auto& [_, p] : keyed) out.push_back(std::move(p));
    return out;
  }
  std::vector<Point> out;
  for (auto& p : points) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

inline SuccessorRelation SuccessorRelation::functional(Space space, FunctionRule rule) {
  return SuccessorRelation(std::move(space), Rule(std::in_place_index<0>, std::move(rule)));
}

inline SuccessorRelation SuccessorRelation::from_sets(Space space, SetRule rule) {
  return SuccessorRelation(std::move(space), Rule(std::in_place_index<1>, std::move(rule)));
}

inline std::vector<Point> SuccessorRelation::successors(const Point& p) const {
  require_same_space(space_, p.space(), "relation argument");
  if (const auto* f = std::get_if<0>(rule_.get())) {
    Point next = (*f)(p);
    require_same_space(space_, next.space(), "successor");
    return {std::move(next)};
  }
  return normalize_point_set(space_, std::get<1>(*rule_)(p));
}

inline bool SuccessorRelation::is_functional() const {
  if (rule_->index() == 0) return true;
  for (const auto& p : enumerate_points(space_)) {
    if (successors(p).size() != 1) return false;
  }
  return true;
}

/// True iff both relations relate every point to the same set of points.
inline bool relation_equal(const SuccessorRelation& a, const SuccessorRelation& b) {
  require_same_space(a.space(), b.space(), "relation_equal");
  for (const auto& p : enumerate_points(a.space())) {
    if (a.successors(p) != b.successors(p)) return false;
  }
  return true;
}

}  // namespace opengames
