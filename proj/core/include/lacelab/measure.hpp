#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lacelab/point.hpp"
#include "lacelab/rational.hpp"

namespace lacelab {

// Parity of ||x||_1 over the support. Nearest-neighbour objects are
// two-periodic: C_n and Pi_n live on the sublattice of parity n mod 2.
enum class Parity { kNone, kEven, kOdd };

inline Parity parity_of_integer(long n) { return (n % 2 == 0) ? Parity::kEven : Parity::kOdd; }

inline Parity combine_parity(Parity a, Parity b) {
  if (a == Parity::kNone || b == Parity::kNone) return Parity::kNone;
  return (a == b) ? Parity::kEven : Parity::kOdd;
}

// Finitely supported signed measure on Z^d, stored sparsely by packed
// coordinates. Exactly-zero weights are never stored. Immutable use after
// construction is the intended pattern; all operations are pure.
template <class T>
class SignedMeasure {
 public:
  using Traits = scalar_traits<T>;
  using Map = std::unordered_map<std::uint64_t, T>;

  explicit SignedMeasure(int dim, Parity parity = Parity::kNone) : dim_(dim), parity_(parity) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("SignedMeasure: bad dimension");
  }

  static SignedMeasure delta(int dim) {
    SignedMeasure m(dim, Parity::kEven);
    m.add(origin(dim), Traits::one());
    return m;
  }

  int dim() const { return dim_; }
  Parity parity() const { return parity_; }
  void set_parity(Parity p) { parity_ = p; }
  std::size_t size() const { return w_.size(); }
  bool empty() const { return w_.empty(); }
  const Map& entries() const { return w_; }

  Point point_of(std::uint64_t key) const { return unpack_point(key, dim_); }

  void add(const Point& p, const T& weight) {
    if (p.dim != dim_) throw std::invalid_argument("SignedMeasure::add: dimension mismatch");
    add_packed(pack_point(p), weight);
  }

  void add_packed(std::uint64_t key, const T& weight) {
    if (Traits::is_zero(weight)) return;
    auto [it, inserted] = w_.try_emplace(key, weight);
    if (!inserted) {
      it->second += weight;
      if (Traits::is_zero(it->second)) w_.erase(it);
    }
  }

  void set(const Point& p, const T& weight) {
    if (p.dim != dim_) throw std::invalid_argument("SignedMeasure::set: dimension mismatch");
    auto key = pack_point(p);
    if (Traits::is_zero(weight))
      w_.erase(key);
    else
      w_[key] = weight;
  }

  T at(const Point& p) const {
    if (p.dim != dim_) throw std::invalid_argument("SignedMeasure::at: dimension mismatch");
    auto it = w_.find(pack_point(p));
    return it == w_.end() ? Traits::zero() : it->second;
  }

  bool contains(const Point& p) const { return w_.count(pack_point(p)) > 0; }

  T mass() const {
    if constexpr (std::is_same_v<T, double>) {
      // Compensated summation; mass identities are checked at 1e-12.
      double sum = 0.0, c = 0.0;
      for (const auto& [k, v] : w_) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
      }
      return sum;
    } else {
      T sum = Traits::zero();
      for (const auto& [k, v] : w_) sum += v;
      return sum;
    }
  }

  // Second moment sum_x x^2 G(x), with x^2 the squared euclidean norm.
  T second_moment() const {
    if constexpr (std::is_same_v<T, double>) {
      double sum = 0.0, c = 0.0;
      for (const auto& [k, v] : w_) {
        double y = static_cast<double>(point_of(k).euclid_sq()) * v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
      }
      return sum;
    } else {
      T sum = Traits::zero();
      for (const auto& [k, v] : w_) sum += T(point_of(k).euclid_sq()) * v;
      return sum;
    }
  }

  std::pair<T, T> mass_and_moment() const { return {mass(), second_moment()}; }

  SignedMeasure scaled(const T& c) const {
    SignedMeasure r(dim_, parity_);
    if (Traits::is_zero(c)) return r;
    r.w_.reserve(w_.size());
    for (const auto& [k, v] : w_) {
      T cv = c * v;
      if (!Traits::is_zero(cv)) r.w_.emplace(k, cv);
    }
    return r;
  }

  SignedMeasure negated() const { return scaled(T(-1)); }

  void add_scaled(const SignedMeasure& other, const T& c) {
    if (other.dim_ != dim_) throw std::invalid_argument("add_scaled: dimension mismatch");
    if (Traits::is_zero(c)) return;
    for (const auto& [k, v] : other.w_) add_packed(k, c * v);
    parity_ = (parity_ == other.parity_) ? parity_ : Parity::kNone;
  }

  SignedMeasure mapped(const AxisMap& map) const {
    SignedMeasure r(dim_, parity_);
    r.w_.reserve(w_.size());
    for (const auto& [k, v] : w_) r.add_packed(pack_point(map.apply(point_of(k))), v);
    return r;
  }

  // Drop |weight| <= tol entries (float-mode tail truncation).
  void prune_below(double tol) {
    for (auto it = w_.begin(); it != w_.end();) {
      if (std::abs(Traits::to_double(it->second)) <= tol)
        it = w_.erase(it);
      else
        ++it;
    }
  }

  long max_linf_norm() const {
    long r = 0;
    for (const auto& [k, v] : w_) r = std::max(r, point_of(k).linf_norm());
    return r;
  }

  // Invariance under the hyperoctahedral group (class M membership).
  // Checking the generators suffices.
  bool is_symmetric() const {
    for (const auto& gen : symmetry_generators(dim_)) {
      for (const auto& [k, v] : w_) {
        auto it = w_.find(pack_point(gen.apply(point_of(k))));
        if (it == w_.end() || !(it->second == v)) return false;
      }
    }
    return true;
  }

  // Verify the parity tag against the support.
  bool parity_consistent() const {
    if (parity_ == Parity::kNone) return true;
    for (const auto& [k, v] : w_)
      if (parity_of_integer(point_of(k).l1_norm()) != parity_) return false;
    return true;
  }

  std::vector<Point> sorted_points() const {
    std::vector<Point> pts;
    pts.reserve(w_.size());
    for (const auto& [k, v] : w_) pts.push_back(point_of(k));
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
      for (int i = 0; i < a.dim; ++i)
        if (a[i] != b[i]) return a[i] < b[i];
      return false;
    });
    return pts;
  }

  bool operator==(const SignedMeasure& o) const { return dim_ == o.dim_ && w_ == o.w_; }

 private:
  int dim_;
  Parity parity_;
  Map w_;
};

// Discrete folding (G*H)(x) = sum_y G(y) H(x-y). Support is truncated only
// by exact zeros; parities compose additively when both are known.
//
// Packed keys are affine in the coordinates, so key(a+b) = key(a) + key(b)
// - key(0) as 64-bit integers whenever every coordinate sum stays within
// the packing range; that range is checked once up front.
template <class T>
SignedMeasure<T> convolve(const SignedMeasure<T>& g, const SignedMeasure<T>& h) {
  if (g.dim() != h.dim()) throw std::invalid_argument("convolve: dimension mismatch");
  if (g.max_linf_norm() + h.max_linf_norm() > kCoordMax)
    throw std::out_of_range("convolve: support exceeds coordinate packing range");
  SignedMeasure<T> r(g.dim(), combine_parity(g.parity(), h.parity()));
  const std::uint64_t zero_key = pack_point(origin(g.dim()));
  const bool g_smaller = g.size() <= h.size();
  const auto& outer = g_smaller ? g : h;
  const auto& inner = g_smaller ? h : g;
  for (const auto& [ka, va] : outer.entries()) {
    const std::uint64_t offset = ka - zero_key;
    for (const auto& [kb, vb] : inner.entries()) r.add_packed(kb + offset, va * vb);
  }
  return r;
}

template <class T>
SignedMeasure<T> convolve_power(const SignedMeasure<T>& g, int n) {
  if (n < 0) throw std::invalid_argument("convolve_power: negative exponent");
  SignedMeasure<T> r = SignedMeasure<T>::delta(g.dim());
  for (int i = 0; i < n; ++i) r = convolve(r, g);
  return r;
}

// Pointwise product (G . H)(x) = G(x) H(x); used by the diagrammatic bounds.
template <class T>
SignedMeasure<T> pointwise_multiply(const SignedMeasure<T>& g, const SignedMeasure<T>& h) {
  if (g.dim() != h.dim()) throw std::invalid_argument("pointwise_multiply: dimension mismatch");
  SignedMeasure<T> r(g.dim(), Parity::kNone);
  const auto& small = g.size() <= h.size() ? g : h;
  const auto& big = g.size() <= h.size() ? h : g;
  for (const auto& [k, v] : small.entries()) {
    auto it = big.entries().find(k);
    if (it != big.entries().end()) r.add_packed(k, v * it->second);
  }
  return r;
}

template <class T>
SignedMeasure<double> to_double_measure(const SignedMeasure<T>& g) {
  SignedMeasure<double> r(g.dim(), g.parity());
  for (const auto& [k, v] : g.entries()) r.add_packed(k, scalar_traits<T>::to_double(v));
  return r;
}

}  // namespace lacelab
