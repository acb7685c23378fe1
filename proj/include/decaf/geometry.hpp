#ifndef DECAF_GEOMETRY_HPP
#define DECAF_GEOMETRY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace decaf {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Direction on the unit sphere. Normalized on construction; a zero-length
/// input is rejected.
class UnitVector3 {
public:
    UnitVector3() : v_(1.0, 0.0, 0.0) {}

    explicit UnitVector3(const Vec3& v) {
        const double n = v.norm();
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::invalid_argument("UnitVector3: zero or non-finite vector");
        v_ = v / n;
    }

    UnitVector3(double x, double y, double z) : UnitVector3(Vec3(x, y, z)) {}

    const Vec3& vec() const { return v_; }
    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }

    double dot(const UnitVector3& o) const { return v_.dot(o.v_); }
    double dot(const Vec3& o) const { return v_.dot(o); }

    UnitVector3 operator-() const {
        UnitVector3 r;
        r.v_ = -v_;
        return r;
    }

    /// Angle to another direction, arccos argument clamped to [-1, 1].
    double angle_to(const UnitVector3& o) const {
        return std::acos(std::clamp(v_.dot(o.v_), -1.0, 1.0));
    }

private:
    Vec3 v_;
};

/// Some orthonormal direction perpendicular to a.
inline Vec3 any_perpendicular(const Vec3& a) {
    const Vec3 trial = std::abs(a.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitY();
    return (trial - trial.dot(a) * a).normalized();
}

/// Rotation matrix about an arbitrary axis (Rodrigues).
inline Mat3 rotation_about(const Vec3& axis, double angle) {
    return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

/// Deterministic low-discrepancy start set on the sphere: the 12 vertices of
/// a regular icosahedron followed by its 20 face centers, in fixed order.
inline const std::vector<UnitVector3>& sphere_start_directions() {
    static const std::vector<UnitVector3> dirs = [] {
        const double p = (1.0 + std::sqrt(5.0)) / 2.0;
        std::vector<Vec3> verts = {
            {-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0},
            {0, -1, p}, {0, 1, p}, {0, -1, -p}, {0, 1, -p},
            {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
        static const int faces[20][3] = {
            {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
            {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
            {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
            {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
        std::vector<UnitVector3> out;
        out.reserve(32);
        for (const auto& v : verts) out.emplace_back(v);
        for (const auto& f : faces)
            out.emplace_back(verts[f[0]] + verts[f[1]] + verts[f[2]]);
        return out;
    }();
    return dirs;
}

}  // namespace decaf

#endif
