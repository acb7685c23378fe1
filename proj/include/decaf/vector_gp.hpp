#ifndef DECAF_VECTOR_GP_HPP
#define DECAF_VECTOR_GP_HPP

#include "gp.hpp"

#include <array>
#include <vector>

namespace decaf {

/// A training sample for vector regression: the fingerprint set of one
/// center plus the world-coordinate vector target measured there.
struct VectorSample {
    std::vector<Fingerprint> fingerprints;
    Vec3 target = Vec3::Zero();
};

enum class VectorTargetMode { PerAtom, Molecular };

/// Three independent scalar processes over frame-projected components.
/// Targets are projected into each fingerprint's canonical frame at fit
/// time; predictions are unprojected back to world coordinates, so the
/// composite model is rotation-equivariant.
class VectorGPModel {
public:
    VectorGPModel() = default;

    static VectorGPModel fit(const QuadratureGrid& grid,
                             const std::vector<VectorSample>& samples,
                             VectorTargetMode mode,
                             const GPFitConfig& config = {}) {
        std::vector<Fingerprint> train;
        std::array<std::vector<double>, 3> comps;
        for (const auto& s : samples) {
            for (const auto& fp : s.fingerprints) {
                const Vec3 local = project_vector(fp.frame, s.target);
                train.push_back(fp);
                for (int c = 0; c < 3; ++c) comps[c].push_back(local(c));
            }
        }
        if (train.size() < 2)
            throw Error("VectorGPModel: need at least 2 training points");

        VectorGPModel m;
        m.mode_ = mode;
        const auto kind = mode == VectorTargetMode::PerAtom
                              ? GPModel::TargetKind::PerAtomVectorComponent
                              : GPModel::TargetKind::MolecularVectorComponent;
        for (int c = 0; c < 3; ++c) {
            Eigen::Map<const Eigen::VectorXd> y(
                comps[c].data(), static_cast<Eigen::Index>(comps[c].size()));
            m.components_[c] = gp_fit(grid, train, y, config, kind);
        }
        return m;
    }

    /// World-coordinate prediction, averaged over the query's frame set.
    Vec3 predict(const std::vector<Fingerprint>& query) const {
        if (query.empty()) throw Error("VectorGPModel: empty query");
        Vec3 sum = Vec3::Zero();
        for (const auto& fp : query) {
            Vec3 local;
            for (int c = 0; c < 3; ++c)
                local(c) = components_[c].predict(fp).mean;
            sum += unproject_vector(fp.frame, local);
        }
        return sum / static_cast<double>(query.size());
    }

    /// Per-component posterior variance of a single fingerprint, in frame
    /// coordinates.
    Vec3 predict_variance(const Fingerprint& fp) const {
        Vec3 v;
        for (int c = 0; c < 3; ++c)
            v(c) = components_[c].predict(fp).variance;
        return v;
    }

    const GPModel& component(int c) const { return components_[c]; }
    VectorTargetMode mode() const { return mode_; }

private:
    std::array<GPModel, 3> components_;
    VectorTargetMode mode_ = VectorTargetMode::PerAtom;
};

}  // namespace decaf

#endif
