#ifndef DECAF_MINISUM_HPP
#define DECAF_MINISUM_HPP

#include "errors.hpp"
#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace decaf {

enum class MinisumKernel { SquareAngle, ExpCosine };

/// Weighted direction set defining a kernel minisum problem on the sphere.
/// Zero-weight entries cannot influence the objective and are dropped at
/// construction.
struct MinisumProblem {
    std::vector<UnitVector3> directions;
    std::vector<double> weights;
    MinisumKernel kernel = MinisumKernel::SquareAngle;

    MinisumProblem() = default;

    MinisumProblem(std::vector<UnitVector3> dirs, std::vector<double> wts,
                   MinisumKernel k)
        : kernel(k) {
        if (dirs.empty()) throw EmptyNeighborhood("minisum: no directions");
        if (dirs.size() != wts.size())
            throw Error("minisum: directions/weights length mismatch");
        double total = 0.0;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            if (wts[i] < 0.0) throw Error("minisum: negative weight");
            if (wts[i] > 0.0) {
                directions.push_back(dirs[i]);
                weights.push_back(wts[i]);
                total += wts[i];
            }
        }
        if (!(total > 0.0))
            throw Error("minisum: all weights are zero");
    }

    std::size_t size() const { return directions.size(); }
};

struct SolverSettings {
    double tolerance = 1e-14;
    int max_iterations = 64;
    double bootstrap_step = 0.01;
    int max_restarts = 8;
    double pole_clip = 1e-12;  // lower clamp on 1 - (w.e)^2 near w.e = -1
};

inline double sa_objective(const MinisumProblem& p, const UnitVector3& w) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double c = std::clamp(w.dot(p.directions[i]), -1.0, 1.0);
        const double a = std::acos(c);
        sum += p.weights[i] * a * a;
    }
    return 0.5 * sum;
}

/// SA gradient with the removable singularity at w.e = 1 replaced by its
/// left-limit 1 and the pole at w.e = -1 clipped.
inline Vec3 sa_gradient(const MinisumProblem& p, const UnitVector3& w,
                        double pole_clip = 1e-12) {
    Vec3 grad = Vec3::Zero();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double c = std::clamp(w.dot(p.directions[i]), -1.0, 1.0);
        double factor;
        if (c >= 1.0 - 1e-14) {
            factor = 1.0;
        } else {
            const double s2 = std::max(1.0 - c * c, pole_clip);
            factor = std::acos(c) / std::sqrt(s2);
        }
        grad -= p.weights[i] * factor * p.directions[i].vec();
    }
    return grad;
}

inline double ec_objective(const MinisumProblem& p, const UnitVector3& w) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        sum += p.weights[i] * std::exp(-w.dot(p.directions[i]));
    return sum;
}

inline Vec3 ec_gradient(const MinisumProblem& p, const UnitVector3& w) {
    Vec3 grad = Vec3::Zero();
    for (std::size_t i = 0; i < p.size(); ++i)
        grad -= p.weights[i] * std::exp(-w.dot(p.directions[i])) *
                p.directions[i].vec();
    return grad;
}

inline double minisum_objective(const MinisumProblem& p, const UnitVector3& w) {
    return p.kernel == MinisumKernel::SquareAngle ? sa_objective(p, w)
                                                  : ec_objective(p, w);
}

inline Vec3 minisum_gradient(const MinisumProblem& p, const UnitVector3& w,
                             double pole_clip = 1e-12) {
    return p.kernel == MinisumKernel::SquareAngle ? sa_gradient(p, w, pole_clip)
                                                  : ec_gradient(p, w);
}

/// Kernel value for a single direction pair, matching the problem's kernel.
inline double minisum_kernel_value(MinisumKernel k, const UnitVector3& a,
                                   const UnitVector3& b) {
    const double c = std::clamp(a.dot(b), -1.0, 1.0);
    if (k == MinisumKernel::SquareAngle) {
        const double t = std::acos(c);
        return 0.5 * t * t;
    }
    return std::exp(-c);
}

struct MinisumResult {
    UnitVector3 minimizer;
    double objective = 0.0;
    int iterations = 0;
};

namespace detail {

// Projected gradient descent with Barzilai-Borwein steps and a two-pair
// secant-Newton acceleration. The tangent space of the sphere is 2D, so the
// last two (step, gradient-change) pairs determine the local Hessian; when
// that estimate is safely positive definite the Newton step replaces the BB
// step, which removes the slow tail on ill-conditioned (nearly degenerate)
// problems. When `constraint` is non-null, probe and gradient stay
// perpendicular to it throughout; the feasible set is then a great circle
// whose tangent space is 1D, where the BB step already is the secant-Newton
// step.
inline MinisumResult minisum_descend(const MinisumProblem& p,
                                     const SolverSettings& s,
                                     const UnitVector3& initial,
                                     const Vec3* constraint) {
    auto project = [&](Vec3 v, const Vec3& w) {
        v -= v.dot(w) * w;
        if (constraint) v -= v.dot(*constraint) * (*constraint);
        return v;
    };

    Vec3 w = initial.vec();
    if (constraint) {
        w -= w.dot(*constraint) * (*constraint);
        const double n = w.norm();
        if (n < 1e-12)
            throw Error("minisum: initial guess parallel to constraint axis");
        w /= n;
    }

    Vec3 w_prev = w, g_prev = Vec3::Zero();
    Vec3 s_older = Vec3::Zero(), y_older = Vec3::Zero();
    bool have_older_pair = false;
    for (int iter = 1; iter <= s.max_iterations; ++iter) {
        const Vec3 grad =
            minisum_gradient(p, UnitVector3(w), s.pole_clip);
        const Vec3 g = project(grad, w);
        if (g.norm() < s.tolerance)
            return {UnitVector3(w), minisum_objective(p, UnitVector3(w)), iter};

        Vec3 step;
        bool have_step = false;
        if (iter > 1) {
            const Vec3 s_last = w - w_prev;
            const Vec3 y_last = g - g_prev;
            if (y_last.squaredNorm() < 1e-300) {
                // gradient stalled; w is already stationary
                return {UnitVector3(w), minisum_objective(p, UnitVector3(w)),
                        iter};
            }
            if (!constraint && have_older_pair) {
                const Vec3 u = any_perpendicular(w).normalized();
                const Vec3 v = w.cross(u);
                Eigen::Matrix2d sm, ym;
                sm << s_last.dot(u), s_older.dot(u), s_last.dot(v),
                    s_older.dot(v);
                ym << y_last.dot(u), y_older.dot(u), y_last.dot(v),
                    y_older.dot(v);
                if (std::abs(sm.determinant()) >
                    1e-12 * sm.squaredNorm()) {
                    Eigen::Matrix2d h = ym * sm.inverse();
                    h = 0.5 * (h + h.transpose());
                    const double tr = h.trace(), det = h.determinant();
                    if (tr > 0.0 && det > 1e-8 * tr * tr) {
                        const Eigen::Vector2d gt(g.dot(u), g.dot(v));
                        const Eigen::Vector2d d = h.inverse() * gt;
                        step = d(0) * u + d(1) * v;
                        // distrust jumps outside the local model's reach
                        have_step = step.norm() < 0.5;
                    }
                }
            }
            if (!have_step) {
                const double sy = s_last.dot(y_last);
                const double alpha =
                    std::abs(sy) > 1e-300
                        ? std::abs(s_last.squaredNorm() / sy)
                        : s.bootstrap_step;
                step = alpha * g;
                have_step = true;
            }
            s_older = s_last;
            y_older = y_last;
            have_older_pair = true;
        } else {
            step = s.bootstrap_step * g;
            have_step = true;
        }

        w_prev = w;
        g_prev = g;
        w -= step;
        if (constraint) w -= w.dot(*constraint) * (*constraint);
        const double n = w.norm();
        if (n < 1e-12) {
            // stepped through the origin; nudge back to the previous iterate
            w = w_prev;
            continue;
        }
        w /= n;

        if ((w - w_prev).norm() < s.tolerance)
            return {UnitVector3(w), minisum_objective(p, UnitVector3(w)), iter};
    }
    throw NotConverged("minisum: no convergence within max_iterations");
}

}  // namespace detail

inline MinisumResult solve_minisum(const MinisumProblem& p,
                                   const SolverSettings& s,
                                   const UnitVector3& initial) {
    return detail::minisum_descend(p, s, initial, nullptr);
}

/// Minimization restricted to the great circle perpendicular to `axis`.
inline MinisumResult solve_minisum_constrained(const MinisumProblem& p,
                                               const SolverSettings& s,
                                               const UnitVector3& axis,
                                               const UnitVector3& initial) {
    bool degenerate = true;
    for (const auto& e : p.directions) {
        const double c = std::abs(e.dot(axis));
        if (std::acos(std::clamp(c, -1.0, 1.0)) > 1e-8) {
            degenerate = false;
            break;
        }
    }
    if (degenerate)
        throw DegenerateInPlane(
            "minisum: all directions along the constraint axis");
    const Vec3 ax = axis.vec();
    return detail::minisum_descend(p, s, initial, &ax);
}

namespace detail {

// Merge converged minimizers closer than 1e-4 rad; sort by objective.
inline std::vector<MinisumResult> cluster_minima(
    std::vector<MinisumResult> found) {
    std::vector<MinisumResult> out;
    for (const auto& r : found) {
        bool dup = false;
        for (auto& o : out) {
            if (r.minimizer.angle_to(o.minimizer) < 1e-4) {
                if (r.objective < o.objective) o = r;
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.objective < b.objective;
    });
    return out;
}

}  // namespace detail

/// All distinct local minima reachable from the deterministic start set,
/// sorted by objective. Entries within 1e-9 of the best objective are the
/// co-global minima.
inline std::vector<MinisumResult> solve_minisum_global(
    const MinisumProblem& p, const SolverSettings& s) {
    std::vector<MinisumResult> found;
    int failures = 0;
    for (const auto& start : sphere_start_directions()) {
        try {
            found.push_back(solve_minisum(p, s, start));
        } catch (const NotConverged&) {
            ++failures;
        }
    }
    if (found.empty())
        throw NotConverged("minisum: all restarts failed to converge");
    return detail::cluster_minima(std::move(found));
}

/// Co-global subset of a sorted minima list (absolute objective tie 1e-9).
inline std::vector<MinisumResult> coglobal_minima(
    const std::vector<MinisumResult>& sorted, double tol = 1e-9) {
    std::vector<MinisumResult> out;
    for (const auto& r : sorted)
        if (r.objective <= sorted.front().objective + tol) out.push_back(r);
    return out;
}

/// Constrained counterpart of solve_minisum_global: starts spread evenly on
/// the great circle perpendicular to `axis`.
inline std::vector<MinisumResult> solve_minisum_constrained_global(
    const MinisumProblem& p, const SolverSettings& s, const UnitVector3& axis,
    int n_starts = 16) {
    const Vec3 u = any_perpendicular(axis.vec());
    const Vec3 v = axis.vec().cross(u);
    std::vector<MinisumResult> found;
    for (int i = 0; i < n_starts; ++i) {
        const double t = 2.0 * M_PI * i / n_starts;
        const UnitVector3 start(std::cos(t) * u + std::sin(t) * v);
        try {
            found.push_back(solve_minisum_constrained(p, s, axis, start));
        } catch (const NotConverged&) {
        }
    }
    if (found.empty())
        throw NotConverged("minisum: all constrained restarts failed");
    return detail::cluster_minima(std::move(found));
}

}  // namespace decaf

#endif
