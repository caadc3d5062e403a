#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opengames/core/enumerate.hpp"
#include "opengames/core/error.hpp"
#include "opengames/core/point.hpp"
#include "opengames/core/space.hpp"

namespace opengames {

inline constexpr std::size_t kDefaultMapCap = 4096;

/// A total function between spaces. Either a rule evaluated on demand or,
/// for enumerable domains, a materialized table indexed by index_of.
class Map {
 public:
  using Rule = std::function<Point(const Point&)>;

  Map(Space dom, Space cod, Rule rule);

  /// `values[i]` is the image of point_at(dom, i).
  static Map table(Space dom, Space cod, std::vector<Point> values);
  static Map identity(const Space& s);
  static Map constant(Space dom, Point value);

  const Space& dom() const { return dom_; }
  const Space& cod() const { return cod_; }

  Point operator()(const Point& x) const;

  bool has_table() const { return table_ != nullptr; }
  std::span<const Point> table_values() const;
  /// Table-backed copy. Requires an enumerable domain.
  Map materialize() const;

  /// `then(g)` is g after this map.
  Map then(const Map& next) const;

  /// Value listing in domain order for enumerable domains, "<rule>" otherwise.
  std::string to_string() const;

 private:
  Space dom_;
  Space cod_;
  std::shared_ptr<const Rule> rule_;
  std::shared_ptr<const std::vector<Point>> table_;
};

inline Map::Map(Space dom, Space cod, Rule rule)
    : dom_(std::move(dom)),
      cod_(std::move(cod)),
      rule_(std::make_shared<const Rule>(std::move(rule))) {}

inline Map Map::table(Space dom, Space cod, std::vector<Point> values) {
  if (values.size() != dom.cardinality()) {
    throw InvalidParameters("table has " + std::to_string(values.size()) + " entries, domain " +
                            dom.to_string() + " has " + std::to_string(dom.cardinality()));
  }
  for (const auto& v : values) require_same_space(cod, v.space(), "table entry");
  Map m(std::move(dom), std::move(cod), Rule{});
  m.rule_.reset();
  m.table_ = std::make_shared<const std::vector<Point>>(std::move(values));
  return m;
}

inline Map Map::identity(const Space& s) {
  return Map(s, s, [](const Point& x) { return x; });
}

inline Map Map::constant(Space dom, Point value) {
  Space cod = value.space();
  return Map(std::move(dom), std::move(cod), [v = std::move(value)](const Point&) { return v; });
}

inline Point Map::operator()(const Point& x) const {
  require_same_space(dom_, x.space(), "map argument");
  if (table_) return (*table_)[index_of(x)];
  Point y = (*rule_)(x);
  require_same_space(cod_, y.space(), "map result");
  return y;
}

inline std::span<const Point> Map::table_values() const {
  if (!table_) throw InvalidParameters("map has no materialized table");
  return *table_;
}

inline Map Map::materialize() const {
  if (table_) return *this;
  std::vector<Point> values;
  for (const auto& x : enumerate_points(dom_)) values.push_back((*this)(x));
  return table(dom_, cod_, std::move(values));
}

inline Map Map::then(const Map& next) const {
  require_same_space(next.dom(), cod_, "map composition");
  return Map(dom_, next.cod(), [first = *this, next](const Point& x) { return next(first(x)); });
}

inline std::string Map::to_string() const {
  if (!dom_.enumerable()) return "<rule>";
  std::string out = "[";
  bool first = true;
  for (const auto& x : enumerate_points(dom_)) {
    if (!first) out += ';';
    first = false;
    out += (*this)(x).to_string();
  }
  return out + "]";
}

/// All |cod|^|dom| total maps dom -> cod as tables, ordered lexicographically
/// by their value lists (the image of the first domain point is most
/// significant).
inline std::vector<Map> enumerate_maps(const Space& dom, const Space& cod,
                                       std::size_t cap = kDefaultMapCap) {
  detail::require_enumerable(dom);
  detail::require_enumerable(cod);
  const std::size_t n = dom.cardinality();
  const std::size_t m = cod.cardinality();
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count = detail::saturating_mul(count, m);
    if (count > cap) {
      throw CapExceeded(std::to_string(m) + "^" + std::to_string(n) + " maps " + dom.to_string() +
                        " -> " + cod.to_string() + " exceed cap " + std::to_string(cap));
    }
  }
  const auto targets = enumerate_points(cod);
  std::vector<Map> out;
  out.reserve(count);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<Point> values;
    values.reserve(n);
    for (std::size_t d : digits) values.push_back(targets[d]);
    out.push_back(Map::table(dom, cod, std::move(values)));
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < m) break;
      digits[i] = 0;
    }
  }
  return out;
}

/// Number of maps dom -> cod, saturating.
inline std::size_t count_maps(const Space& dom, const Space& cod) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < dom.cardinality(); ++i) {
    count = detail::saturating_mul(count, cod.cardinality());
  }
  return count;
}

}  // namespace opengames
