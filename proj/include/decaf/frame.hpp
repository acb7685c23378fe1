#ifndef DECAF_FRAME_HPP
#define DECAF_FRAME_HPP

#include "minisum.hpp"

#include <cmath>
#include <vector>

namespace decaf {

/// Ordered orthonormal triple spanning the canonical projection basis.
/// The triple may be improper (determinant -1): b_gamma is chosen by the
/// half-space rule, not by handedness.
struct CanonicalFrame {
    UnitVector3 b_alpha;
    UnitVector3 b_beta;
    UnitVector3 b_gamma;

    Mat3 matrix() const {
        Mat3 R;
        R.col(0) = b_alpha.vec();
        R.col(1) = b_beta.vec();
        R.col(2) = b_gamma.vec();
        return R;
    }

    double determinant() const { return matrix().determinant(); }
};

/// Projection into frame coordinates, y~ = R^T y, and its inverse.
inline Vec3 project_vector(const CanonicalFrame& f, const Vec3& y) {
    return f.matrix().transpose() * y;
}

inline Vec3 unproject_vector(const CanonicalFrame& f, const Vec3& y) {
    return f.matrix() * y;
}

namespace detail {

// Deterministic second axis for neighborhoods that give no in-plane signal:
// component of world z orthogonal to b_alpha, falling back to world y when
// b_alpha is (anti)parallel to z.
inline UnitVector3 fallback_second_axis(const UnitVector3& b_alpha) {
    if (std::abs(b_alpha.dot(Vec3::UnitZ())) > 1.0 - 1e-8)
        return UnitVector3(
            Vec3::UnitY() - b_alpha.dot(Vec3::UnitY()) * b_alpha.vec());
    return UnitVector3(Vec3::UnitZ() -
                       b_alpha.dot(Vec3::UnitZ()) * b_alpha.vec());
}

// Sign of b_gamma: compare the kernel sum against the bisector of
// (b_alpha, b_beta) over the two half-spaces split by b_alpha x b_beta.
inline UnitVector3 resolve_third_axis(const MinisumProblem& p,
                                      const UnitVector3& b_alpha,
                                      const UnitVector3& b_beta) {
    const Vec3 n = b_alpha.vec().cross(b_beta.vec());
    const UnitVector3 bisector(b_alpha.vec() + b_beta.vec());
    double pos = 0.0, neg = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double k =
            p.weights[i] * minisum_kernel_value(p.kernel, bisector,
                                                p.directions[i]);
        const double side = p.directions[i].vec().dot(n);
        // atoms numerically on the splitting plane contribute to neither
        // side; their assignment would otherwise follow rounding noise
        if (std::abs(side) < 1e-12)
            continue;
        if (side >= 0.0)
            pos += k;
        else
            neg += k;
    }
    // ties (mirror-symmetric neighborhoods) must resolve consistently, so
    // compare with a relative margin instead of raw floating-point order
    const double margin = 1e-9 * (pos + neg);
    return pos <= neg + margin ? UnitVector3(n) : UnitVector3(-n);
}

}  // namespace detail

/// Canonical coordinate frames of a neighborhood direction set. One frame is
/// returned per co-global (b_alpha, b_beta) combination, so symmetric
/// configurations yield their full multiplicity of equivalent frames.
inline std::vector<CanonicalFrame> canonical_frame(const MinisumProblem& p,
                                                   const SolverSettings& s) {
    if (p.size() == 0) throw EmptyNeighborhood("canonical_frame: no atoms");

    const auto alpha_candidates = coglobal_minima(solve_minisum_global(p, s));

    std::vector<CanonicalFrame> frames;
    for (const auto& a : alpha_candidates) {
        const UnitVector3& b_alpha = a.minimizer;

        std::vector<UnitVector3> betas;
        if (p.size() == 1) {
            betas.push_back(detail::fallback_second_axis(b_alpha));
        } else {
            try {
                for (const auto& b : coglobal_minima(
                         solve_minisum_constrained_global(p, s, b_alpha)))
                    betas.push_back(b.minimizer);
            } catch (const DegenerateInPlane&) {
                betas.push_back(detail::fallback_second_axis(b_alpha));
            }
        }

        for (const auto& b_beta : betas) {
            UnitVector3 b_gamma =
                p.size() == 1
                    ? UnitVector3(b_alpha.vec().cross(b_beta.vec()))
                    : detail::resolve_third_axis(p, b_alpha, b_beta);
            frames.push_back({b_alpha, b_beta, b_gamma});
        }
    }

    // clustering may produce near-identical frames; keep one of each
    std::vector<CanonicalFrame> unique;
    for (const auto& f : frames) {
        bool dup = false;
        for (const auto& g : unique) {
            if (f.b_alpha.angle_to(g.b_alpha) < 1e-6 &&
                f.b_beta.angle_to(g.b_beta) < 1e-6 &&
                f.b_gamma.angle_to(g.b_gamma) < 1e-6) {
                dup = true;
                break;
            }
        }
        if (!dup) unique.push_back(f);
    }
    return unique;
}

}  // namespace decaf

#endif
