#ifndef BOLTZ_VEC3_HPP
#define BOLTZ_VEC3_HPP

#include <cmath>

namespace boltz {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double c) const { return {x * c, y * c, z * c}; }
  Vec3 operator/(double c) const { return {x / c, y / c, z / c}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

/// <v> = sqrt(1 + |v|^2), the standard velocity bracket.
inline double bracket2(const Vec3& v) { return 1.0 + norm2(v); }
inline double bracket(const Vec3& v) { return std::sqrt(bracket2(v)); }

/// Two unit vectors completing v/|v| to an orthonormal frame.
/// Requires |v| > 0.
inline void orthonormal_frame(const Vec3& n, Vec3& e1, Vec3& e2) {
  // pick the coordinate axis least aligned with n
  const double ax = std::fabs(n.x), ay = std::fabs(n.y), az = std::fabs(n.z);
  Vec3 a = (ax <= ay && ax <= az) ? Vec3{1, 0, 0} : (ay <= az ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
  e1 = a - n * dot(a, n);
  e1 = e1 / norm(e1);
  e2 = cross(n, e1);
}

}  // namespace boltz

#endif
