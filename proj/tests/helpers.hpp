#ifndef DECAF_TEST_HELPERS_HPP
#define DECAF_TEST_HELPERS_HPP

#include <decaf/decaf.hpp>

#include <random>
#include <vector>

namespace decaf::test {

inline UnitVector3 random_unit(std::mt19937& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    while (true) {
        const Vec3 v(n(rng), n(rng), n(rng));
        if (v.norm() > 1e-6) return UnitVector3(v);
    }
}

inline Mat3 random_rotation(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    return rotation_about(random_unit(rng).vec(), u(rng));
}

// Brute-force minisum oracle: scan the whole sphere on a dense grid.
// Returns the best direction and objective.
inline MinisumResult brute_force_minimum(const MinisumProblem& p,
                                         int n_theta = 1000) {
    MinisumResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n_theta; ++i) {
        const double theta = M_PI * i / n_theta;
        const int n_phi = std::max(
            1, static_cast<int>(std::ceil(2 * n_theta * std::sin(theta))));
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * M_PI * j / n_phi;
            const UnitVector3 w(std::sin(theta) * std::cos(phi),
                                std::sin(theta) * std::sin(phi),
                                std::cos(theta));
            const double obj = minisum_objective(p, w);
            if (obj < best.objective) {
                best.objective = obj;
                best.minimizer = w;
            }
        }
    }
    return best;
}

// 1D brute force over the great circle perpendicular to axis.
inline MinisumResult brute_force_circle_minimum(const MinisumProblem& p,
                                                const UnitVector3& axis,
                                                int n = 2000000) {
    const Vec3 u = any_perpendicular(axis.vec());
    const Vec3 v = axis.vec().cross(u);
    MinisumResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        const UnitVector3 w(std::cos(t) * u + std::sin(t) * v);
        const double obj = minisum_objective(p, w);
        if (obj < best.objective) {
            best.objective = obj;
            best.minimizer = w;
        }
    }
    return best;
}

// Central finite-difference gradient of the minisum objective.
inline Vec3 fd_gradient(const MinisumProblem& p, const UnitVector3& w,
                        double h = 1e-6) {
    Vec3 g;
    for (int c = 0; c < 3; ++c) {
        Vec3 plus = w.vec(), minus = w.vec();
        plus(c) += h;
        minus(c) -= h;
        // objectives extend smoothly off the sphere through their formulas;
        // evaluate without renormalizing
        auto eval = [&](const Vec3& x) {
            double sum = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                const double c2 = x.dot(p.directions[i].vec());
                if (p.kernel == MinisumKernel::SquareAngle) {
                    const double a = std::acos(std::clamp(c2, -1.0, 1.0));
                    sum += 0.5 * p.weights[i] * a * a;
                } else {
                    sum += p.weights[i] * std::exp(-c2);
                }
            }
            return sum;
        };
        g(c) = (eval(plus) - eval(minus)) / (2.0 * h);
    }
    return g;
}

// Canonical symmetric configurations (unit directions).
inline std::vector<Vec3> planar_cn(int n) {
    std::vector<Vec3> out;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        out.emplace_back(std::cos(t), std::sin(t), 0.0);
    }
    return out;
}

inline std::vector<Vec3> tetrahedron() {
    const double c = 1.0 / std::sqrt(3.0);
    return {{c, c, c}, {c, -c, -c}, {-c, c, -c}, {-c, -c, c}};
}

inline std::vector<Vec3> octahedron() {
    return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
}

// Improper S4: two atoms up, two down, rotated 90 degrees between layers.
inline std::vector<Vec3> improper_s4() {
    const double z = 0.5, r = std::sqrt(1.0 - z * z);
    return {{r, 0, z}, {-r, 0, z}, {0, r, -z}, {0, -r, -z}};
}

// Improper S6: alternating triangles, 60 degrees apart.
inline std::vector<Vec3> improper_s6() {
    const double z = 0.5, r = std::sqrt(1.0 - z * z);
    std::vector<Vec3> out;
    for (int i = 0; i < 3; ++i) {
        const double t = 2.0 * M_PI * i / 3.0;
        out.emplace_back(r * std::cos(t), r * std::sin(t), z);
        out.emplace_back(r * std::cos(t + M_PI / 3.0),
                         r * std::sin(t + M_PI / 3.0), -z);
    }
    return out;
}

inline MinisumProblem unit_problem(const std::vector<Vec3>& dirs,
                                   MinisumKernel k) {
    std::vector<UnitVector3> e;
    for (const auto& d : dirs) e.emplace_back(d);
    return MinisumProblem(e, std::vector<double>(dirs.size(), 1.0), k);
}

}  // namespace decaf::test

#endif
