#pragma once

#include <cstddef>
#include <vector>

#include "opengames/core/error.hpp"
#include "opengames/core/point.hpp"
#include "opengames/core/space.hpp"

namespace opengames {

namespace detail {

inline void require_enumerable(const Space& s) {
  if (!s.enumerable()) throw NotEnumerable(s.to_string() + " has a RealVec component");
}

}  // namespace detail

/// Position of `p` in the enumeration order of its space: atom order for
/// finite spaces, lexicographic (left component major) for products.
inline std::size_t index_of(const Point& p) {
  const Space& s = p.space();
  switch (s.kind()) {
    case Space::Kind::singleton:
      return 0;
    case Space::Kind::finite:
      return p.atom_index();
    case Space::Kind::product:
      detail::require_enumerable(s);
      return index_of(p.first()) * s.right().cardinality() + index_of(p.second());
    case Space::Kind::real_vec:
      break;
  }
  throw NotEnumerable(s.to_string() + " has a RealVec component");
}

/// Inverse of index_of.
inline Point point_at(const Space& s, std::size_t index) {
  detail::require_enumerable(s);
  if (index >= s.cardinality()) {
    throw InvalidPoint("index " + std::to_string(index) + " out of range for " + s.to_string());
  }
  switch (s.kind()) {
    case Space::Kind::singleton:
      return Point::unit();
    case Space::Kind::finite:
      return Point::atom_at(s, index);
    case Space::Kind::product: {
      const std::size_t n = s.right().cardinality();
      return Point::pair(s, point_at(s.left(), index / n), point_at(s.right(), index % n));
    }
    case Space::Kind::real_vec:
      break;
  }
  throw NotEnumerable(s.to_string());
}

/// Every point of `s` exactly once, in index_of order.
inline std::vector<Point> enumerate_points(const Space& s) {
  detail::require_enumerable(s);
  std::vector<Point> out;
  switch (s.kind()) {
    case Space::Kind::singleton:
      out.push_back(Point::unit());
      break;
    case Space::Kind::finite:
      out.reserve(s.cardinality());
      for (std::size_t i = 0; i < s.cardinality(); ++i) out.push_back(Point::atom_at(s, i));
      break;
    case Space::Kind::product: {
      const auto lefts = enumerate_points(s.left());
      const auto rights = enumerate_points(s.right());
      out.reserve(lefts.size() * rights.size());
      for (const auto& l : lefts) {
        for (const auto& r : rights) out.push_back(Point::pair(s, l, r));
      }
      break;
    }
    case Space::Kind::real_vec:
      break;
  }
  return out;
}

/// True iff `s` contains no RealVec component.
inline bool is_enumerable(const Space& s) { return s.enumerable(); }

}  // namespace opengames
