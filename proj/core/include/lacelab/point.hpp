#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lacelab {

// Lattice dimensions up to 5 are supported; coordinates are packed into a
// single 64-bit key (12 bits each) for the sparse measure maps.
inline constexpr int kMaxDim = 5;
inline constexpr int kCoordBits = 12;
inline constexpr std::int32_t kCoordMax = (1 << (kCoordBits - 1)) - 1;  // 2047

struct Point {
  int dim = 0;
  std::array<std::int32_t, kMaxDim> x{};

  Point() = default;
  explicit Point(int d) : dim(d) {}
  Point(std::initializer_list<std::int32_t> coords);

  std::int32_t operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
  std::int32_t& operator[](int i) { return x[static_cast<std::size_t>(i)]; }

  bool operator==(const Point& o) const { return dim == o.dim && x == o.x; }

  long l1_norm() const;
  long linf_norm() const;
  long euclid_sq() const;  // squared euclidean norm
  Point negated() const;
};

Point origin(int dim);
Point unit_vector(int dim, int axis, int sign);

std::uint64_t pack_point(const Point& p);
Point unpack_point(std::uint64_t key, int dim);
std::string to_string(const Point& p);

// Signed coordinate permutation, an element of the hyperoctahedral group.
// apply(p)[i] = sign[i] * p[perm[i]].
struct AxisMap {
  std::array<int, kMaxDim> perm{};
  std::array<int, kMaxDim> sign{};
  Point apply(const Point& p) const;
};

AxisMap identity_map(int dim);
// The 2d maps taking +e1 to each signed unit vector; used to restore a full
// measure from an enumeration restricted to first step +e1.
std::vector<AxisMap> first_step_maps(int dim);
// Generators of the full symmetry group: per-axis sign flips and adjacent
// transpositions. Invariance under these implies invariance under the group.
std::vector<AxisMap> symmetry_generators(int dim);

}  // namespace lacelab
