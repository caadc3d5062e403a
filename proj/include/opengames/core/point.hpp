#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "opengames/core/error.hpp"
#include "opengames/core/space.hpp"

namespace opengames {

/// An element of a Space. The value shape always matches the space kind:
/// an atom index for finite spaces, nothing for the singleton, a pair of
/// points for products and a coordinate vector for RealVec.
class Point {
 public:
  /// The unique point of the singleton space.
  Point() = default;

  static Point unit() { return Point(); }
  static Point atom(const Space& space, std::string_view name);
  static Point atom_at(const Space& space, std::size_t index);
  /// Pair in the product of the components' spaces.
  static Point pair(Point first, Point second);
  /// Pair in a known product space; reuses `space` rather than building a
  /// new product node.
  static Point pair(const Space& space, Point first, Point second);
  static Point real(const Space& space, std::vector<double> coords);
  static Point real(std::vector<double> coords);
  static Point scalar(double value) { return real({value}); }

  const Space& space() const { return space_; }

  std::size_t atom_index() const;
  const std::string& atom_name() const;
  const Point& first() const;
  const Point& second() const;
  std::span<const double> coords() const;
  /// The single coordinate of a RealVec(1) point.
  double value() const;

  std::string to_string() const;

  /// Structural equality. Comparing points of different spaces is an error
  /// rather than `false`. RealVec coordinates compare exactly.
  friend bool operator==(const Point& a, const Point& b);

 private:
  struct PairValue;
  using Value = std::variant<std::monostate, std::size_t,
                             std::shared_ptr<const PairValue>, std::vector<double>>;

  Point(Space space, Value value) : space_(std::move(space)), value_(std::move(value)) {}

  static bool equal_values(const Point& a, const Point& b);

  Space space_;
  Value value_;
};

struct Point::PairValue {
  Point first;
  Point second;
};

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline Point Point::atom(const Space& space, std::string_view name) {
  return Point(space, space.atom_index(name));
}

inline Point Point::atom_at(const Space& space, std::size_t index) {
  if (!space.is_finite()) throw InvalidPoint("atom in non-finite space " + space.to_string());
  if (index >= space.atoms().size()) {
    throw InvalidPoint("atom index " + std::to_string(index) + " out of range for " +
                       space.to_string());
  }
  return Point(space, index);
}

inline Point Point::pair(Point first, Point second) {
  Space space = Space::product(first.space(), second.space());
  return Point(std::move(space), std::make_shared<const PairValue>(
                                     PairValue{std::move(first), std::move(second)}));
}

inline Point Point::pair(const Space& space, Point first, Point second) {
  if (!space.is_product()) throw InvalidPoint("pair in non-product space " + space.to_string());
  require_same_space(space.left(), first.space(), "pair (first)");
  require_same_space(space.right(), second.space(), "pair (second)");
  return Point(space, std::make_shared<const PairValue>(
                          PairValue{std::move(first), std::move(second)}));
}

inline Point Point::real(const Space& space, std::vector<double> coords) {
  if (!space.is_real_vec()) throw InvalidPoint("real point in " + space.to_string());
  if (coords.size() != space.dim()) {
    throw DimensionMismatch("expected " + std::to_string(space.dim()) + " coordinates, got " +
                            std::to_string(coords.size()));
  }
  for (double c : coords) {
    if (!std::isfinite(c)) throw InvalidPoint("non-finite coordinate " + format_real(c));
  }
  return Point(space, std::move(coords));
}

inline Point Point::real(std::vector<double> coords) {
  Space space = Space::real_vec(coords.size());
  return real(space, std::move(coords));
}

inline std::size_t Point::atom_index() const {
  if (!space_.is_finite()) throw InvalidPoint("atom_index() on " + to_string());
  return std::get<std::size_t>(value_);
}

inline const std::string& Point::atom_name() const {
  return space_.atoms()[atom_index()];
}

inline const Point& Point::first() const {
  if (!space_.is_product()) throw InvalidPoint("first() on " + to_string());
  return std::get<std::shared_ptr<const PairValue>>(value_)->first;
}

inline const Point& Point::second() const {
  if (!space_.is_product()) throw InvalidPoint("second() on " + to_string());
  return std::get<std::shared_ptr<const PairValue>>(value_)->second;
}

inline std::span<const double> Point::coords() const {
  if (!space_.is_real_vec()) throw InvalidPoint("coords() on " + to_string());
  return std::get<std::vector<double>>(value_);
}

inline double Point::value() const {
  auto c = coords();
  if (c.size() != 1) throw DimensionMismatch("value() on a point of dimension " +
                                             std::to_string(c.size()));
  return c[0];
}

inline std::string Point::to_string() const {
  switch (space_.kind()) {
    case Space::Kind::singleton:
      return "*";
    case Space::Kind::finite:
      return atom_name();
    case Space::Kind::product:
      return "(" + first().to_string() + "," + second().to_string() + ")";
    case Space::Kind::real_vec: {
      std::string out = "[";
      auto c = coords();
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) out += ',';
        out += format_real(c[i]);
      }
      return out + "]";
    }
  }
  return "?";
}

inline bool Point::equal_values(const Point& a, const Point& b) {
  switch (a.space_.kind()) {
    case Space::Kind::singleton:
      return true;
    case Space::Kind::finite:
      return std::get<std::size_t>(a.value_) == std::get<std::size_t>(b.value_);
    case Space::Kind::product: {
      const auto& pa = std::get<std::shared_ptr<const PairValue>>(a.value_);
      const auto& pb = std::get<std::shared_ptr<const PairValue>>(b.value_);
      if (pa == pb) return true;
      return equal_values(pa->first, pb->first) && equal_values(pa->second, pb->second);
    }
    case Space::Kind::real_vec:
      return std::get<std::vector<double>>(a.value_) == std::get<std::vector<double>>(b.value_);
  }
  return false;
}

inline bool operator==(const Point& a, const Point& b) {
  require_same_space(a.space_, b.space_, "point comparison");
  return Point::equal_values(a, b);
}

}  // namespace opengames
