#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opengames/core.hpp"

namespace opengames {

/// An open learner X -> Y: a parameter space P with
///   implement I : P x X -> Y
///   update    U : P x X x Y -> P
///   request   r : P x X x Y -> X
///
/// Every result is checked against its declared space when evaluated.
class Learner {
 public:
  using ImplementFn = std::function<Point(const Point& p, const Point& x)>;
  using UpdateFn = std::function<Point(const Point& p, const Point& x, const Point& y)>;

  /// From maps over the product domains: implement on P x X, update and
  /// request on (P x X) x Y.
  Learner(Space dom, Space cod, Space params, Map implement, Map update, Map request);

  static Learner from_functions(Space dom, Space cod, Space params, ImplementFn implement,
                                UpdateFn update, UpdateFn request);

  const Space& dom() const { return dom_; }
  const Space& cod() const { return cod_; }
  const Space& params() const { return params_; }

  Point implement(const Point& p, const Point& x) const;
  Point update(const Point& p, const Point& x, const Point& y) const;
  Point request(const Point& p, const Point& x, const Point& y) const;

  /// The structure maps as Map values over P x X and (P x X) x Y.
  Map implement_map() const;
  Map update_map() const;
  Map request_map() const;

 private:
  Learner(Space dom, Space cod, Space params, ImplementFn implement, UpdateFn update,
          UpdateFn request)
      : dom_(std::move(dom)),
        cod_(std::move(cod)),
        params_(std::move(params)),
        implement_(std::move(implement)),
        update_(std::move(update)),
        request_(std::move(request)) {}

  Space dom_;
  Space cod_;
  Space params_;
  ImplementFn implement_;
  UpdateFn update_;
  UpdateFn request_;
};

inline Learner::Learner(Space dom, Space cod, Space params, Map implement, Map update,
                        Map request)
    : dom_(std::move(dom)), cod_(std::move(cod)), params_(std::move(params)) {
  const Space px = Space::product(params_, dom_);
  const Space pxy = Space::product(px, cod_);
  require_same_space(px, implement.dom(), "learner implement domain");
  require_same_space(cod_, implement.cod(), "learner implement codomain");
  require_same_space(pxy, update.dom(), "learner update domain");
  require_same_space(params_, update.cod(), "learner update codomain");
  require_same_space(pxy, request.dom(), "learner request domain");
  require_same_space(dom_, request.cod(), "learner request codomain");
  implement_ = [px, m = std::move(implement)](const Point& p, const Point& x) {
    return m(Point::pair(px, p, x));
  };
  update_ = [px, pxy, m = std::move(update)](const Point& p, const Point& x, const Point& y) {
    return m(Point::pair(pxy, Point::pair(px, p, x), y));
  };
  request_ = [px, pxy, m = std::move(request)](const Point& p, const Point& x, const Point& y) {
    return m(Point::pair(pxy, Point::pair(px, p, x), y));
  };
}

inline Learner Learner::from_functions(Space dom, Space cod, Space params, ImplementFn implement,
                                       UpdateFn update, UpdateFn request) {
  return Learner(std::move(dom), std::move(cod), std::move(params), std::move(implement),
                 std::move(update), std::move(request));
}

inline Point Learner::implement(const Point& p, const Point& x) const {
  require_same_space(params_, p.space(), "implement parameter");
  require_same_space(dom_, x.space(), "implement input");
  Point y = implement_(p, x);
  require_same_space(cod_, y.space(), "implement result");
  return y;
}

inline Point Learner::update(const Point& p, const Point& x, const Point& y) const {
  require_same_space(params_, p.space(), "update parameter");
  require_same_space(dom_, x.space(), "update input");
  require_same_space(cod_, y.space(), "update output");
  Point next = update_(p, x, y);
  require_same_space(params_, next.space(), "update result");
  return next;
}

inline Point Learner::request(const Point& p, const Point& x, const Point& y) const {
  require_same_space(params_, p.space(), "request parameter");
  require_same_space(dom_, x.space(), "request input");
  require_same_space(cod_, y.space(), "request output");
  Point wanted = request_(p, x, y);
  require_same_space(dom_, wanted.space(), "request result");
  return wanted;
}

inline Map Learner::implement_map() const {
  return Map(Space::product(params_, dom_), cod_,
             [self = *this](const Point& px) { return self.implement(px.first(), px.second()); });
}

inline Map Learner::update_map() const {
  return Map(Space::product(Space::product(params_, dom_), cod_), params_,
             [self = *this](const Point& pxy) {
               return self.update(pxy.first().first(), pxy.first().second(), pxy.second());
             });
}

inline Map Learner::request_map() const {
  return Map(Space::product(Space::product(params_, dom_), cod_), dom_,
             [self = *this](const Point& pxy) {
               return self.request(pxy.first().first(), pxy.first().second(), pxy.second());
             });
}

// ---------------------------------------------------------------------------
// Identities, composition, tensor.

/// Identity learner: one parameter, passes inputs forward and requests the
/// presented output unchanged.
inline Learner id_learner(const Space& x) {
  return Learner::from_functions(
      x, x, Space::singleton(), [](const Point&, const Point& in) { return in; },
      [](const Point&, const Point&, const Point&) { return Point::unit(); },
      [](const Point&, const Point&, const Point& out) { return out; });
}

/// `b` after `a`. Parameters are pairs (p, q) with p for `a` and q for `b`.
inline Learner compose_learner(const Learner& a, const Learner& b) {
  require_same_space(a.cod(), b.dom(), "compose_learner");
  const Space params = Space::product(a.params(), b.params());
  return Learner::from_functions(
      a.dom(), b.cod(), params,
      [a, b](const Point& pq, const Point& x) {
        return b.implement(pq.second(), a.implement(pq.first(), x));
      },
      [a, b, params](const Point& pq, const Point& x, const Point& z) {
        const Point& p = pq.first();
        const Point& q = pq.second();
        const Point y = a.implement(p, x);
        return Point::pair(params, a.update(p, x, b.request(q, y, z)), b.update(q, y, z));
      },
      [a, b](const Point& pq, const Point& x, const Point& z) {
        const Point& p = pq.first();
        const Point& q = pq.second();
        return a.request(p, x, b.request(q, a.implement(p, x), z));
      });
}

/// Parallel product: acts componentwise on X x W -> Y x Z.
inline Learner tensor_learner(const Learner& a, const Learner& b) {
  const Space params = Space::product(a.params(), b.params());
  const Space dom = Space::product(a.dom(), b.dom());
  const Space cod = Space::product(a.cod(), b.cod());
  return Learner::from_functions(
      dom, cod, params,
      [a, b, cod](const Point& pq, const Point& xw) {
        return Point::pair(cod, a.implement(pq.first(), xw.first()),
                           b.implement(pq.second(), xw.second()));
      },
      [a, b, params](const Point& pq, const Point& xw, const Point& yz) {
        return Point::pair(params, a.update(pq.first(), xw.first(), yz.first()),
                           b.update(pq.second(), xw.second(), yz.second()));
      },
      [a, b, dom](const Point& pq, const Point& xw, const Point& yz) {
        return Point::pair(dom, a.request(pq.first(), xw.first(), yz.first()),
                           b.request(pq.second(), xw.second(), yz.second()));
      });
}

/// The learner X -> 1 whose request returns the observed input.
inline Learner bang_learner(const Space& x) {
  return Learner::from_functions(
      x, Space::singleton(), Space::singleton(),
      [](const Point&, const Point&) { return Point::unit(); },
      [](const Point&, const Point&, const Point&) { return Point::unit(); },
      [](const Point&, const Point& in, const Point&) { return in; });
}

// ---------------------------------------------------------------------------
// Structure morphisms. A bijection f : X -> Y with inverse g becomes the
// parameterless learner that implements f and requests g of the output.

inline Learner iso_learner(const Map& forward, const Map& backward) {
  require_same_space(forward.dom(), backward.cod(), "iso_learner");
  require_same_space(forward.cod(), backward.dom(), "iso_learner");
  return Learner::from_functions(
      forward.dom(), forward.cod(), Space::singleton(),
      [forward](const Point&, const Point& x) { return forward(x); },
      [](const Point&, const Point&, const Point&) { return Point::unit(); },
      [backward](const Point&, const Point&, const Point& y) { return backward(y); });
}

/// X x (Y x Z) -> (X x Y) x Z and back.
inline std::pair<Map, Map> associator_maps(const Space& x, const Space& y, const Space& z) {
  const Space yz = Space::product(y, z);
  const Space xy = Space::product(x, y);
  const Space right_nested = Space::product(x, yz);
  const Space left_nested = Space::product(xy, z);
  Map forward(right_nested, left_nested, [xy, left_nested](const Point& p) {
    return Point::pair(left_nested, Point::pair(xy, p.first(), p.second().first()),
                       p.second().second());
  });
  Map backward(left_nested, right_nested, [yz, right_nested](const Point& p) {
    return Point::pair(right_nested, p.first().first(),
                       Point::pair(yz, p.first().second(), p.second()));
  });
  return {std::move(forward), std::move(backward)};
}

/// 1 x X -> X and back.
inline std::pair<Map, Map> left_unitor_maps(const Space& x) {
  const Space ux = Space::product(Space::singleton(), x);
  return {Map(ux, x, [](const Point& p) { return p.second(); }),
          Map(x, ux, [ux](const Point& p) { return Point::pair(ux, Point::unit(), p); })};
}

/// X x 1 -> X and back.
inline std::pair<Map, Map> right_unitor_maps(const Space& x) {
  const Space xu = Space::product(x, Space::singleton());
  return {Map(xu, x, [](const Point& p) { return p.first(); }),
          Map(x, xu, [xu](const Point& p) { return Point::pair(xu, p, Point::unit()); })};
}

/// X x Y -> Y x X and back.
inline std::pair<Map, Map> symmetry_maps(const Space& x, const Space& y) {
  const Space xy = Space::product(x, y);
  const Space yx = Space::product(y, x);
  return {Map(xy, yx, [yx](const Point& p) { return Point::pair(yx, p.second(), p.first()); }),
          Map(yx, xy, [xy](const Point& p) { return Point::pair(xy, p.second(), p.first()); })};
}

inline Learner associator_learner(const Space& x, const Space& y, const Space& z) {
  auto [f, g] = associator_maps(x, y, z);
  return iso_learner(f, g);
}

inline Learner left_unitor_learner(const Space& x) {
  auto [f, g] = left_unitor_maps(x);
  return iso_learner(f, g);
}

inline Learner right_unitor_learner(const Space& x) {
  auto [f, g] = right_unitor_maps(x);
  return iso_learner(f, g);
}

inline Learner symmetry_learner(const Space& x, const Space& y) {
  auto [f, g] = symmetry_maps(x, y);
  return iso_learner(f, g);
}

// ---------------------------------------------------------------------------
// Gradient descent learners.

using RealFunction =
    std::function<std::vector<double>(std::span<const double>, std::span<const double>)>;

/// Wraps a coordinate function as a Map R^dim_param x R^dim_in -> R^dim_out.
inline Map real_model(std::size_t dim_param, std::size_t dim_in, std::size_t dim_out,
                      RealFunction fn) {
  const Space out = Space::real_vec(dim_out);
  return Map(Space::product(Space::real_vec(dim_param), Space::real_vec(dim_in)), out,
             [fn = std::move(fn), out](const Point& px) {
               return Point::real(out, fn(px.first().coords(), px.second().coords()));
             });
}

inline constexpr double kDefaultGradientStep = 1e-5;

namespace detail {

inline double squared_error(std::span<const double> predicted, std::span<const double> target) {
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - target[i];
    sum += d * d;
  }
  return sum;
}

// Central-difference gradient of `f` at `at`.
template <typename F>
std::vector<double> central_gradient(F&& f, std::vector<double> at, double step) {
  std::vector<double> grad(at.size());
  for (std::size_t i = 0; i < at.size(); ++i) {
    const double saved = at[i];
    at[i] = saved + step;
    const double plus = f(at);
    at[i] = saved - step;
    const double minus = f(at);
    at[i] = saved;
    grad[i] = (plus - minus) / (2.0 * step);
  }
  return grad;
}

}  // namespace detail

/// Learner R^dim_in -> R^dim_out with parameters R^dim_param that implements
/// `model` and takes one gradient step of the squared error
/// L(p, x, y) = |model(p, x) - y|^2:
///   update(p, x, y)  = p - rate * dL/dp
///   request(p, x, y) = x - rate * dL/dx
/// Gradients are central finite differences with the given step.
inline Learner gd_learner(std::size_t dim_in, std::size_t dim_out, std::size_t dim_param,
                          Map model, double rate, double step = kDefaultGradientStep) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw InvalidParameters("learning rate must be finite and non-negative");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InvalidParameters("difference step must be finite and positive");
  }
  const Space in = Space::real_vec(dim_in);
  const Space out = Space::real_vec(dim_out);
  const Space params = Space::real_vec(dim_param);
  if (!(model.dom() == Space::product(params, in)) || !(model.cod() == out)) {
    throw DimensionMismatch("model " + model.dom().to_string() + " -> " +
                            model.cod().to_string() + " does not match R^" +
                            std::to_string(dim_param) + " x R^" + std::to_string(dim_in) +
                            " -> R^" + std::to_string(dim_out));
  }
  const Space px = model.dom();
  auto loss = [model, params, in, px](const std::vector<double>& p, const std::vector<double>& x,
                                      std::span<const double> y) {
    const Point predicted = model(Point::pair(px, Point::real(params, p), Point::real(in, x)));
    return detail::squared_error(predicted.coords(), y);
  };
  auto descend = [rate](std::vector<double> at, const std::vector<double>& grad) {
    for (std::size_t i = 0; i < at.size(); ++i) at[i] -= rate * grad[i];
    return at;
  };
  return Learner::from_functions(
      in, out, params,
      [model, px](const Point& p, const Point& x) { return model(Point::pair(px, p, x)); },
      [loss, descend, params, step](const Point& p, const Point& x, const Point& y) {
        std::vector<double> pv(p.coords().begin(), p.coords().end());
        const std::vector<double> xv(x.coords().begin(), x.coords().end());
        const auto grad = detail::central_gradient(
            [&](const std::vector<double>& at) { return loss(at, xv, y.coords()); }, pv, step);
        return Point::real(params, descend(std::move(pv), grad));
      },
      [loss, descend, in, step](const Point& p, const Point& x, const Point& y) {
        const std::vector<double> pv(p.coords().begin(), p.coords().end());
        std::vector<double> xv(x.coords().begin(), x.coords().end());
        const auto grad = detail::central_gradient(
            [&](const std::vector<double>& at) { return loss(pv, at, y.coords()); }, xv, step);
        return Point::real(in, descend(std::move(xv), grad));
      });
}

// ---------------------------------------------------------------------------
// Equivalence.

/// A bijection between parameter spaces together with its inverse, both as
/// tables.
struct EquivalenceWitness {
  Map forward;
  Map inverse;

  EquivalenceWitness inverted() const { return {inverse, forward}; }
};

inline constexpr std::size_t kMaxEquivalenceSearch = 6;

namespace detail {

// Index-level tables of a learner over enumerable spaces.
struct LearnerTables {
  std::size_t params = 0, inputs = 0, outputs = 0;
  std::vector<std::size_t> implement;  // [p][x] -> y
  std::vector<std::size_t> update;     // [p][x][y] -> p
  std::vector<std::size_t> request;    // [p][x][y] -> x

  std::size_t at(std::size_t p, std::size_t x) const { return p * inputs + x; }
  std::size_t at(std::size_t p, std::size_t x, std::size_t y) const {
    return (p * inputs + x) * outputs + y;
  }
};

inline LearnerTables tabulate(const Learner& a) {
  require_enumerable(a.params());
  require_enumerable(a.dom());
  require_enumerable(a.cod());
  LearnerTables t;
  const auto ps = enumerate_points(a.params());
  const auto xs = enumerate_points(a.dom());
  const auto ys = enumerate_points(a.cod());
  t.params = ps.size();
  t.inputs = xs.size();
  t.outputs = ys.size();
  for (const auto& p : ps) {
    for (const auto& x : xs) {
      t.implement.push_back(index_of(a.implement(p, x)));
      for (const auto& y : ys) {
        t.update.push_back(index_of(a.update(p, x, y)));
        t.request.push_back(index_of(a.request(p, x, y)));
      }
    }
  }
  return t;
}

inline bool respects(const LearnerTables& a, const LearnerTables& b,
                     const std::vector<std::size_t>& perm) {
  for (std::size_t p = 0; p < a.params; ++p) {
    for (std::size_t x = 0; x < a.inputs; ++x) {
      if (b.implement[b.at(perm[p], x)] != a.implement[a.at(p, x)]) return false;
      for (std::size_t y = 0; y < a.outputs; ++y) {
        if (b.update[b.at(perm[p], x, y)] != perm[a.update[a.at(p, x, y)]]) return false;
        if (b.request[b.at(perm[p], x, y)] != a.request[a.at(p, x, y)]) return false;
      }
    }
  }
  return true;
}

inline EquivalenceWitness witness_from_permutation(const Space& from, const Space& to,
                                                   const std::vector<std::size_t>& perm) {
  std::vector<Point> forward(perm.size());
  std::vector<Point> inverse(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    forward[i] = point_at(to, perm[i]);
    inverse[perm[i]] = point_at(from, i);
  }
  return {Map::table(from, to, std::move(forward)), Map::table(to, from, std::move(inverse))};
}

inline std::vector<std::size_t> permutation_of(const EquivalenceWitness& w) {
  std::vector<std::size_t> perm;
  for (const auto& p : enumerate_points(w.forward.dom())) perm.push_back(index_of(w.forward(p)));
  return perm;
}

inline void require_searchable(const Space& params) {
  require_enumerable(params);
  if (params.cardinality() > kMaxEquivalenceSearch) {
    throw SearchTooLarge(std::to_string(params.cardinality()) + " parameters (limit " +
                         std::to_string(kMaxEquivalenceSearch) + ")");
  }
}

// Whether `w` is a bijection whose maps are mutually inverse.
inline bool is_bijection(const EquivalenceWitness& w, const Space& from, const Space& to) {
  if (!(w.forward.dom() == from) || !(w.forward.cod() == to) || !(w.inverse.dom() == to) ||
      !(w.inverse.cod() == from)) {
    return false;
  }
  for (const auto& p : enumerate_points(from)) {
    if (!(w.inverse(w.forward(p)) == p)) return false;
  }
  for (const auto& q : enumerate_points(to)) {
    if (!(w.forward(w.inverse(q)) == q)) return false;
  }
  return true;
}

}  // namespace detail

/// Searches every bijection P_A -> P_B for one commuting with implement,
/// update and request. Returns nullopt when none does.
inline std::optional<EquivalenceWitness> learner_equiv(const Learner& a, const Learner& b) {
  require_same_space(a.dom(), b.dom(), "learner_equiv domain");
  require_same_space(a.cod(), b.cod(), "learner_equiv codomain");
  detail::require_searchable(a.params());
  detail::require_searchable(b.params());
  if (a.params().cardinality() != b.params().cardinality()) return std::nullopt;
  const auto ta = detail::tabulate(a);
  const auto tb = detail::tabulate(b);
  std::vector<std::size_t> perm(ta.params);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    if (detail::respects(ta, tb, perm)) {
      return detail::witness_from_permutation(a.params(), b.params(), perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// Checks a candidate witness against every (p, x, y). No size limit.
inline bool verify_learner_witness(const Learner& a, const Learner& b,
                                   const EquivalenceWitness& w) {
  require_same_space(a.dom(), b.dom(), "verify_learner_witness domain");
  require_same_space(a.cod(), b.cod(), "verify_learner_witness codomain");
  if (!detail::is_bijection(w, a.params(), b.params())) return false;
  const auto xs = enumerate_points(a.dom());
  const auto ys = enumerate_points(a.cod());
  for (const auto& p : enumerate_points(a.params())) {
    const Point ip = w.forward(p);
    for (const auto& x : xs) {
      if (!(b.implement(ip, x) == a.implement(p, x))) return false;
      for (const auto& y : ys) {
        if (!(b.update(ip, x, y) == w.forward(a.update(p, x, y)))) return false;
        if (!(b.request(ip, x, y) == a.request(p, x, y))) return false;
      }
    }
  }
  return true;
}

/// The learner obtained by renaming parameters of `a` along `w`. It is
/// equivalent to `a` with witness `w`.
inline Learner transport_learner(const Learner& a, const EquivalenceWitness& w) {
  require_same_space(a.params(), w.forward.dom(), "transport_learner");
  return Learner::from_functions(
      a.dom(), a.cod(), w.forward.cod(),
      [a, w](const Point& q, const Point& x) { return a.implement(w.inverse(q), x); },
      [a, w](const Point& q, const Point& x, const Point& y) {
        return w.forward(a.update(w.inverse(q), x, y));
      },
      [a, w](const Point& q, const Point& x, const Point& y) {
        return a.request(w.inverse(q), x, y);
      });
}

/// Canonical witness (P x Q) x R -> P x (Q x R) relating the two bracketings
/// of a triple composite or tensor.
inline EquivalenceWitness reassociation_witness(const Space& p, const Space& q, const Space& r) {
  auto [forward, backward] = associator_maps(p, q, r);
  return {backward.materialize(), forward.materialize()};
}

/// Text listing every structure-map value; used to fingerprint instances.
inline std::string learner_fingerprint(const Learner& a) {
  std::string out = "learner " + a.dom().to_string() + "->" + a.cod().to_string() + " P=" +
                    a.params().to_string();
  if (!a.dom().enumerable() || !a.cod().enumerable() || !a.params().enumerable()) return out;
  const auto xs = enumerate_points(a.dom());
  const auto ys = enumerate_points(a.cod());
  for (const auto& p : enumerate_points(a.params())) {
    for (const auto& x : xs) {
      out += " I" + a.implement(p, x).to_string();
      for (const auto& y : ys) {
        out += " U" + a.update(p, x, y).to_string() + " r" + a.request(p, x, y).to_string();
      }
    }
  }
  return out;
}

}  // namespace opengames
