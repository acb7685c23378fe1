#ifndef DECAF_FINGERPRINT_HPP
#define DECAF_FINGERPRINT_HPP

#include "frame.hpp"
#include "grid.hpp"
#include "structure.hpp"
#include "weights.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace decaf {

/// Density model: per-species smoothing kernels plus the cutoff scaling.
/// With `multichannel` set, each species gets its own concatenated block of
/// density samples instead of contributing to a single shared channel.
struct DensityModel {
    std::map<std::string, SpeciesKernel> kernels;
    DensityScaling scaling = DensityScaling::tent(3.0, 6.0);
    bool multichannel = false;

    const SpeciesKernel& kernel_for(const std::string& species) const {
        auto it = kernels.find(species);
        if (it == kernels.end())
            throw UnknownSpecies("DensityModel: no kernel for " + species);
        return it->second;
    }
};

struct Fingerprint {
    Eigen::VectorXd values;
    std::uint64_t grid_hash = 0;
    CanonicalFrame frame;
    Vec3 center = Vec3::Zero();
    std::string provenance;
};

/// Density at a sample point r, in frame coordinates:
/// rho(r) = sum_i W_c(|x_i|) W_d(|x_i|, |R^T x_i - r|).
inline double evaluate_density(const AtomicNeighborhood& neigh,
                               const CanonicalFrame& frame,
                               const DensityModel& model, const Vec3& r) {
    const Mat3 rt = frame.matrix().transpose();
    double rho = 0.0;
    for (std::size_t i = 0; i < neigh.size(); ++i) {
        const double dist = neigh.displacements[i].norm();
        const double wc = model.scaling(dist);
        if (wc == 0.0) continue;
        const Vec3 projected = rt * neigh.displacements[i];
        rho += wc * model.kernel_for(neigh.species[i])
                        .value(dist, (projected - r).squaredNorm());
    }
    return rho;
}

/// Weights used for the minisum problem of a neighborhood.
enum class MinisumWeighting {
    DensityScaled,  // g_i = W_c(|x_i|), atoms fade at the cutoff
    Uniform         // g_i = 1
};

inline MinisumProblem minisum_problem_of(const AtomicNeighborhood& neigh,
                                         const DensityModel& model,
                                         MinisumKernel kernel,
                                         MinisumWeighting weighting) {
    if (neigh.size() == 0)
        throw EmptyNeighborhood("minisum_problem_of: empty neighborhood");
    std::vector<UnitVector3> dirs;
    std::vector<double> weights;
    dirs.reserve(neigh.size());
    for (std::size_t i = 0; i < neigh.size(); ++i) {
        dirs.emplace_back(neigh.displacements[i]);
        weights.push_back(weighting == MinisumWeighting::Uniform
                              ? 1.0
                              : model.scaling(neigh.displacements[i].norm()));
    }
    return MinisumProblem(std::move(dirs), std::move(weights), kernel);
}

struct AutoMinisum {
    SolverSettings settings;
    MinisumKernel kernel = MinisumKernel::SquareAngle;
    MinisumWeighting weighting = MinisumWeighting::DensityScaled;
};

using FrameSource = std::variant<AutoMinisum, CanonicalFrame>;

namespace detail {

inline Eigen::VectorXd sample_density(const AtomicNeighborhood& neigh,
                                      const CanonicalFrame& frame,
                                      const DensityModel& model,
                                      const QuadratureGrid& grid) {
    if (!model.multichannel) {
        Eigen::VectorXd v(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k)
            v(k) = evaluate_density(neigh, frame, model, grid.nodes()[k]);
        return v;
    }
    // one block per species, ordered by the model's (sorted) kernel map
    Eigen::VectorXd v(grid.size() * model.kernels.size());
    const Mat3 rt = frame.matrix().transpose();
    std::size_t block = 0;
    for (const auto& [species, kernel] : model.kernels) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            double rho = 0.0;
            for (std::size_t i = 0; i < neigh.size(); ++i) {
                if (neigh.species[i] != species) continue;
                const double dist = neigh.displacements[i].norm();
                const double wc = model.scaling(dist);
                if (wc == 0.0) continue;
                const Vec3 projected = rt * neigh.displacements[i];
                rho += wc * kernel.value(
                                dist,
                                (projected - grid.nodes()[k]).squaredNorm());
            }
            v(block * grid.size() + k) = rho;
        }
        ++block;
    }
    return v;
}

}  // namespace detail

inline double fingerprint_distance(const QuadratureGrid& grid,
                                   const Fingerprint& a, const Fingerprint& b);
inline double fingerprint_norm(const QuadratureGrid& grid,
                               const Fingerprint& a);

/// One fingerprint per canonical frame; symmetry-equivalent frames that give
/// the same samples are deduplicated at relative distance 1e-8.
inline std::vector<Fingerprint> extract_fingerprint(
    const AtomicNeighborhood& neigh, const DensityModel& model,
    const QuadratureGrid& grid, const FrameSource& frame_source,
    const std::string& provenance = {}) {
    std::vector<CanonicalFrame> frames;
    if (const auto* fixed = std::get_if<CanonicalFrame>(&frame_source)) {
        frames.push_back(*fixed);
    } else {
        const auto& am = std::get<AutoMinisum>(frame_source);
        frames = canonical_frame(
            minisum_problem_of(neigh, model, am.kernel, am.weighting),
            am.settings);
    }

    std::vector<Fingerprint> out;
    for (const auto& frame : frames) {
        Fingerprint fp;
        fp.values = detail::sample_density(neigh, frame, model, grid);
        fp.grid_hash = grid.hash();
        fp.frame = frame;
        fp.center = neigh.center;
        fp.provenance = provenance;

        bool dup = false;
        for (const auto& prev : out) {
            const double scale = std::max(fingerprint_norm(grid, prev), 1e-300);
            if (fingerprint_distance(grid, prev, fp) < 1e-8 * scale) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(std::move(fp));
    }
    return out;
}

namespace detail {

inline void check_grid(const QuadratureGrid& grid, const Fingerprint& a,
                       const Fingerprint& b) {
    if (a.grid_hash != b.grid_hash || a.grid_hash != grid.hash())
        throw GridMismatch("fingerprints were sampled on different grids");
    if (a.values.size() != b.values.size())
        throw GridMismatch("fingerprint length mismatch");
}

// multichannel fingerprints repeat the grid weights per block
inline double weighted_dot(const QuadratureGrid& grid,
                           const Eigen::VectorXd& a,
                           const Eigen::VectorXd& b) {
    const std::size_t n = grid.size();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        sum += grid.weights()[i % n] * a(i) * b(i);
    return sum;
}

}  // namespace detail

inline double fingerprint_norm(const QuadratureGrid& grid,
                               const Fingerprint& a) {
    return std::sqrt(detail::weighted_dot(grid, a.values, a.values));
}

/// Weighted L2 distance between density samples on a shared grid.
inline double fingerprint_distance(const QuadratureGrid& grid,
                                   const Fingerprint& a,
                                   const Fingerprint& b) {
    detail::check_grid(grid, a, b);
    const Eigen::VectorXd diff = a.values - b.values;
    return std::sqrt(detail::weighted_dot(grid, diff, diff));
}

/// Normalized weighted inner product; 1 for identical nonzero fingerprints.
inline double fingerprint_similarity(const QuadratureGrid& grid,
                                     const Fingerprint& a,
                                     const Fingerprint& b) {
    detail::check_grid(grid, a, b);
    const double na = fingerprint_norm(grid, a);
    const double nb = fingerprint_norm(grid, b);
    if (na == 0.0 || nb == 0.0)
        throw ZeroFingerprint("similarity undefined for zero fingerprints");
    return std::clamp(detail::weighted_dot(grid, a.values, b.values) /
                          (na * nb),
                      -1.0, 1.0);
}

}  // namespace decaf

#endif
