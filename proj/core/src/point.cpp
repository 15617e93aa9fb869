#include "lacelab/point.hpp"

#include <cstdlib>
#include <stdexcept>

namespace lacelab {

Point::Point(std::initializer_list<std::int32_t> coords) {
  if (coords.size() > static_cast<std::size_t>(kMaxDim))
    throw std::invalid_argument("Point: dimension exceeds kMaxDim");
  dim = static_cast<int>(coords.size());
  int i = 0;
  for (auto c : coords) x[static_cast<std::size_t>(i++)] = c;
}

long Point::l1_norm() const {
  long s = 0;
  for (int i = 0; i < dim; ++i) s += std::abs(static_cast<long>(x[static_cast<std::size_t>(i)]));
  return s;
}

long Point::linf_norm() const {
  long s = 0;
  for (int i = 0; i < dim; ++i) {
    long a = std::abs(static_cast<long>(x[static_cast<std::size_t>(i)]));
    if (a > s) s = a;
  }
  return s;
}

long Point::euclid_sq() const {
  long s = 0;
  for (int i = 0; i < dim; ++i) {
    long c = x[static_cast<std::size_t>(i)];
    s += c * c;
  }
  return s;
}

Point Point::negated() const {
  Point p(dim);
  for (int i = 0; i < dim; ++i) p[i] = -x[static_cast<std::size_t>(i)];
  return p;
}

Point origin(int dim) { return Point(dim); }

Point unit_vector(int dim, int axis, int sign) {
  Point p(dim);
  p[axis] = sign >= 0 ? 1 : -1;
  return p;
}

std::uint64_t pack_point(const Point& p) {
  std::uint64_t key = 0;
  for (int i = 0; i < p.dim; ++i) {
    std::int32_t c = p[i];
    if (c < -kCoordMax || c > kCoordMax)
      throw std::out_of_range("pack_point: coordinate exceeds packing range");
    key |= static_cast<std::uint64_t>(c + kCoordMax + 1) << (kCoordBits * i);
  }
  return key;
}

Point unpack_point(std::uint64_t key, int dim) {
  Point p(dim);
  for (int i = 0; i < dim; ++i) {
    auto raw = static_cast<std::int32_t>((key >> (kCoordBits * i)) & ((1u << kCoordBits) - 1));
    p[i] = raw - (kCoordMax + 1);
  }
  return p;
}

std::string to_string(const Point& p) {
  std::string s = "(";
  for (int i = 0; i < p.dim; ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

Point AxisMap::apply(const Point& p) const {
  Point q(p.dim);
  for (int i = 0; i < p.dim; ++i)
    q[i] = static_cast<std::int32_t>(sign[static_cast<std::size_t>(i)]) *
           p[perm[static_cast<std::size_t>(i)]];
  return q;
}

AxisMap identity_map(int dim) {
  AxisMap m;
  for (int i = 0; i < dim; ++i) {
    m.perm[static_cast<std::size_t>(i)] = i;
    m.sign[static_cast<std::size_t>(i)] = 1;
  }
  return m;
}

std::vector<AxisMap> first_step_maps(int dim) {
  std::vector<AxisMap> maps;
  maps.reserve(static_cast<std::size_t>(2 * dim));
  for (int axis = 0; axis < dim; ++axis) {
    for (int sign : {+1, -1}) {
      // Swap axis 0 with `axis`, then flip its sign if needed: e1 -> sign*e_axis.
      AxisMap m = identity_map(dim);
      std::swap(m.perm[0], m.perm[static_cast<std::size_t>(axis)]);
      m.sign[static_cast<std::size_t>(axis)] = sign;
      maps.push_back(m);
    }
  }
  return maps;
}

std::vector<AxisMap> symmetry_generators(int dim) {
  std::vector<AxisMap> gens;
  for (int i = 0; i < dim; ++i) {
    AxisMap m = identity_map(dim);
    m.sign[static_cast<std::size_t>(i)] = -1;
    gens.push_back(m);
  }
  for (int i = 0; i + 1 < dim; ++i) {
    AxisMap m = identity_map(dim);
    std::swap(m.perm[static_cast<std::size_t>(i)], m.perm[static_cast<std::size_t>(i + 1)]);
    gens.push_back(m);
  }
  return gens;
}

}  // namespace lacelab
