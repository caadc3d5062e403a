#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "opengames/core/error.hpp"

namespace opengames {

/// A value domain: a finite enumerated set, the one-point set, a binary
/// product, or a real vector space of fixed dimension.
///
/// Spaces are immutable and cheap to copy (shared node). Products are never
/// flattened: `product(x, product(y, z))` and `product(product(x, y), z)`
/// are different spaces.
class Space {
 public:
  enum class Kind { finite, singleton, product, real_vec };

  /// The one-point space.
  Space();

  /// Finite space with the given atoms in the given order. `id` tags the
  /// atoms so that atoms of differently named spaces never compare equal;
  /// when empty it defaults to the brace-enclosed atom list.
  static Space finite(std::vector<std::string> atoms, std::string id = {});
  /// Finite space with atoms "0", "1", ..., "n-1".
  static Space range(std::size_t n, std::string id = {});
  static Space singleton() { return Space(); }
  static Space product(Space left, Space right);
  static Space real_vec(std::size_t dim);

  Kind kind() const;
  bool is_finite() const { return kind() == Kind::finite; }
  bool is_singleton() const { return kind() == Kind::singleton; }
  bool is_product() const { return kind() == Kind::product; }
  bool is_real_vec() const { return kind() == Kind::real_vec; }

  const std::string& id() const;
  std::span<const std::string> atoms() const;
  /// Index of the named atom; throws InvalidPoint when absent.
  std::size_t atom_index(std::string_view name) const;
  const Space& left() const;
  const Space& right() const;
  std::size_t dim() const;

  /// True iff no RealVec component occurs anywhere in the space.
  bool enumerable() const;
  /// Number of points. Saturates at SIZE_MAX; throws NotEnumerable.
  std::size_t cardinality() const;

  std::string to_string() const;

  /// Structural equality.
  friend bool operator==(const Space& a, const Space& b);

  /// Identity of the shared node; equal handles imply equal spaces.
  const void* handle() const { return node_.get(); }

 private:
  struct Node;
  explicit Space(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Space::Node {
  Kind kind = Kind::singleton;
  std::string id;
  std::vector<std::string> atoms;
  std::unordered_map<std::string, std::size_t> atom_lookup;
  Space left_space;
  Space right_space;
  std::size_t dim = 0;
  bool enumerable = true;
  std::size_t cardinality = 1;
  std::string text;

  // Sentinel node used by the default constructor; breaks the recursion of
  // `left_space`/`right_space` default-constructing further nodes.
  struct UnitTag {};
  explicit Node(UnitTag) : left_space(nullptr), right_space(nullptr), text("1") {}
  Node() : left_space(), right_space() {}
};

namespace detail {

inline std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

}  // namespace detail

inline Space::Space() {
  static const std::shared_ptr<const Node> unit =
      std::make_shared<const Node>(Node::UnitTag{});
  node_ = unit;
}

inline Space Space::finite(std::vector<std::string> atoms, std::string id) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::finite;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!node->atom_lookup.emplace(atoms[i], i).second) {
      throw InvalidSpace("duplicate atom '" + atoms[i] + "'");
    }
  }
  std::string listing = "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) listing += ',';
    listing += atoms[i];
  }
  listing += '}';
  node->id = id.empty() ? listing : std::move(id);
  node->text = node->id == listing ? listing : node->id + listing;
  node->cardinality = atoms.size();
  node->atoms = std::move(atoms);
  return Space(std::move(node));
}

inline Space Space::range(std::size_t n, std::string id) {
  std::vector<std::string> atoms;
  atoms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) atoms.push_back(std::to_string(i));
  return finite(std::move(atoms), std::move(id));
}

inline Space Space::product(Space left, Space right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::product;
  node->enumerable = left.enumerable() && right.enumerable();
  node->cardinality =
      node->enumerable
          ? detail::saturating_mul(left.node_->cardinality, right.node_->cardinality)
          : 0;
  node->text = "(" + left.to_string() + "x" + right.to_string() + ")";
  node->left_space = std::move(left);
  node->right_space = std::move(right);
  return Space(std::move(node));
}

inline Space Space::real_vec(std::size_t dim) {
  if (dim == 0) throw InvalidSpace("RealVec dimension must be positive");
  auto node = std::make_shared<Node>();
  node->kind = Kind::real_vec;
  node->dim = dim;
  node->enumerable = false;
  node->cardinality = 0;
  node->text = "R^" + std::to_string(dim);
  return Space(std::move(node));
}

inline Space::Kind Space::kind() const { return node_->kind; }

inline const std::string& Space::id() const {
  if (!is_finite()) throw InvalidSpace("id() on non-finite space " + to_string());
  return node_->id;
}

inline std::span<const std::string> Space::atoms() const {
  if (!is_finite()) throw InvalidSpace("atoms() on non-finite space " + to_string());
  return node_->atoms;
}

inline std::size_t Space::atom_index(std::string_view name) const {
  if (!is_finite()) throw InvalidSpace("atom lookup on non-finite space " + to_string());
  auto it = node_->atom_lookup.find(std::string(name));
  if (it == node_->atom_lookup.end()) {
    throw InvalidPoint("'" + std::string(name) + "' is not an atom of " + to_string());
  }
  return it->second;
}

inline const Space& Space::left() const {
  if (!is_product()) throw InvalidSpace("left() on non-product space " + to_string());
  return node_->left_space;
}

inline const Space& Space::right() const {
  if (!is_product()) throw InvalidSpace("right() on non-product space " + to_string());
  return node_->right_space;
}

inline std::size_t Space::dim() const {
  if (!is_real_vec()) throw InvalidSpace("dim() on non-RealVec space " + to_string());
  return node_->dim;
}

inline bool Space::enumerable() const { return node_->enumerable; }

inline std::size_t Space::cardinality() const {
  if (!node_->enumerable) throw NotEnumerable(to_string() + " has a RealVec component");
  return node_->cardinality;
}

inline std::string Space::to_string() const { return node_->text; }

inline bool operator==(const Space& a, const Space& b) {
  if (a.node_ == b.node_) return true;
  const Space::Node& x = *a.node_;
  const Space::Node& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Space::Kind::singleton:
      return true;
    case Space::Kind::finite:
      return x.id == y.id && x.atoms == y.atoms;
    case Space::Kind::real_vec:
      return x.dim == y.dim;
    case Space::Kind::product:
      return x.left_space == y.left_space && x.right_space == y.right_space;
  }
  return false;
}

/// Throws SpaceMismatch unless the two spaces are equal.
inline void require_same_space(const Space& expected, const Space& actual,
                               std::string_view where) {
  if (!(expected == actual)) {
    throw SpaceMismatch(std::string(where) + ": expected " + expected.to_string() +
                        ", got " + actual.to_string());
  }
}

}  // namespace opengames
