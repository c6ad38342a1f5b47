#pragma once

#include <array>
#include <cmath>

namespace radreact {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  friend Vec3 operator*(double s, const Vec3& v) { return v * s; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

//! Contravariant four-vector, index 0 time-like, metric (+,-,-,-).
struct FourVector {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  FourVector operator+(const FourVector& o) const {
    return {{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]}};
  }
  FourVector operator-(const FourVector& o) const {
    return {{c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]}};
  }
  FourVector operator*(double s) const {
    return {{c[0] * s, c[1] * s, c[2] * s, c[3] * s}};
  }

  Vec3 spatial() const { return {c[1], c[2], c[3]}; }
  double euclid_norm() const {
    return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
  }
};

//! g_{mu nu} a^mu b^nu with signature (+,-,-,-).
inline double minkowski_dot(const FourVector& a, const FourVector& b) {
  return a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3];
}

//! Antisymmetric electromagnetic field tensor built from the lab-frame
//! fields; first row (0, -Ex, -Ey, -Ez). E in [statV/cm], B in [G].
struct FieldTensor {
  Vec3 E;
  Vec3 B;

  //! F^{mu nu} as an explicit matrix (antisymmetric by construction).
  std::array<std::array<double, 4>, 4> contravariant() const {
    return {{{0.0, -E.x, -E.y, -E.z},
             {E.x, 0.0, -B.z, B.y},
             {E.y, B.z, 0.0, -B.x},
             {E.z, -B.y, B.x, 0.0}}};
  }

  //! Mixed contraction w^mu = F^mu_kappa u^kappa:
  //! w = (E . u_spatial, E u^0 + u_spatial x B).
  FourVector mixed_apply(const FourVector& u) const {
    const Vec3 us = u.spatial();
    const Vec3 w = E * u[0] + us.cross(B);
    return {{E.dot(us), w.x, w.y, w.z}};
  }
};

} // namespace radreact
