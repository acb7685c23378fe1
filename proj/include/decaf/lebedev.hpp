#ifndef DECAF_LEBEDEV_HPP
#define DECAF_LEBEDEV_HPP

#include "errors.hpp"
#include "geometry.hpp"

#include <cmath>
#include <vector>

namespace decaf {

/// Surface quadrature on the unit sphere with weights normalized to 1.
struct AngularRule {
    std::vector<UnitVector3> nodes;
    std::vector<double> weights;
    int count = 0;
};

namespace detail {

// Octahedron vertices (+-1, 0, 0) and permutations.
inline void add_a1(AngularRule& r, double w) {
    for (int axis = 0; axis < 3; ++axis)
        for (int sign : {+1, -1}) {
            Vec3 v = Vec3::Zero();
            v(axis) = sign;
            r.nodes.emplace_back(v);
            r.weights.push_back(w);
        }
}

// Edge midpoints (0, +-1/sqrt2, +-1/sqrt2) and permutations.
inline void add_a2(AngularRule& r, double w) {
    const double c = 1.0 / std::sqrt(2.0);
    for (int zero = 0; zero < 3; ++zero)
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1}) {
                Vec3 v;
                v(zero) = 0.0;
                v((zero + 1) % 3) = s1 * c;
                v((zero + 2) % 3) = s2 * c;
                r.nodes.emplace_back(v);
                r.weights.push_back(w);
            }
}

// Cube corners (+-1/sqrt3)^3.
inline void add_a3(AngularRule& r, double w) {
    const double c = 1.0 / std::sqrt(3.0);
    for (int s1 : {+1, -1})
        for (int s2 : {+1, -1})
            for (int s3 : {+1, -1}) {
                r.nodes.emplace_back(Vec3(s1 * c, s2 * c, s3 * c));
                r.weights.push_back(w);
            }
}

// Class b^k points (+-l, +-l, +-m) with 2l^2 + m^2 = 1, all permutations.
inline void add_bk(AngularRule& r, double l, double m, double w) {
    for (int mpos = 0; mpos < 3; ++mpos)
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1})
                for (int s3 : {+1, -1}) {
                    Vec3 v;
                    v(mpos) = s3 * m;
                    v((mpos + 1) % 3) = s1 * l;
                    v((mpos + 2) % 3) = s2 * l;
                    r.nodes.emplace_back(v);
                    r.weights.push_back(w);
                }
}

// Class c^k points (+-p, +-q, 0) with p^2 + q^2 = 1, all permutations.
inline void add_ck(AngularRule& r, double p, double q, double w) {
    for (int zero = 0; zero < 3; ++zero)
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1}) {
                Vec3 v;
                v(zero) = 0.0;
                v((zero + 1) % 3) = s1 * p;
                v((zero + 2) % 3) = s2 * q;
                r.nodes.emplace_back(v);
                r.weights.push_back(w);
                Vec3 u;
                u(zero) = 0.0;
                u((zero + 1) % 3) = s1 * q;
                u((zero + 2) % 3) = s2 * p;
                r.nodes.emplace_back(u);
                r.weights.push_back(w);
            }
}

}  // namespace detail

/// Lebedev rule by node count. Weights are stored at full precision from the
/// exact symmetry-class constants rather than their rounded decimals.
inline AngularRule lebedev_rule(int count) {
    AngularRule r;
    r.count = count;
    switch (count) {
        case 6:
            detail::add_a1(r, 1.0 / 6.0);
            break;
        case 14:
            detail::add_a1(r, 1.0 / 15.0);
            detail::add_a3(r, 3.0 / 40.0);
            break;
        case 26:
            detail::add_a1(r, 1.0 / 21.0);
            detail::add_a2(r, 4.0 / 105.0);
            detail::add_a3(r, 27.0 / 840.0);
            break;
        case 38: {
            detail::add_a1(r, 1.0 / 105.0);
            detail::add_a3(r, 9.0 / 280.0);
            const double t = 1.0 / std::sqrt(3.0);
            detail::add_ck(r, std::sqrt((1.0 + t) / 2.0),
                           std::sqrt((1.0 - t) / 2.0), 1.0 / 35.0);
            break;
        }
        case 50: {
            detail::add_a1(r, 4.0 / 315.0);
            detail::add_a2(r, 64.0 / 2835.0);
            detail::add_a3(r, 27.0 / 1280.0);
            const double l = 1.0 / std::sqrt(11.0);
            detail::add_bk(r, l, 3.0 * l, 14641.0 / 725760.0);
            break;
        }
        default:
            throw UnsupportedOrder(
                "lebedev_rule: supported counts are 6, 14, 26, 38, 50");
    }
    return r;
}

}  // namespace decaf

#endif
