#ifndef DECAF_ACTIVE_HPP
#define DECAF_ACTIVE_HPP

#include "gp.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace decaf {

/// One pool entry: a structure reduced to its fingerprint set. Symmetric
/// configurations carry several equivalent fingerprints; all of them enter
/// the training set when the candidate is acquired.
struct ActiveCandidate {
    std::string id;
    std::vector<Fingerprint> fingerprints;
};

struct ActiveStop {
    double max_uncertainty = 0.1;  // stop when 2 * posterior std < this
    std::size_t max_samples = 100;
};

enum class Acquisition {
    MaxVariance,
    /// posterior variance + squared prediction error; needs pool labels
    VariancePlusError
};

struct ActiveTraceEntry {
    std::size_t iteration = 0;
    std::size_t acquired = 0;  // candidate index
    double max_uncertainty = 0.0;
};

struct ActiveResult {
    GPModel model;
    std::vector<ActiveTraceEntry> trace;
    std::vector<std::size_t> acquired;  // includes seeds, in order
};

/// Greedy active learning: fit, acquire the candidate with the largest
/// posterior std (ties broken by lowest index), query the oracle, repeat
/// until 2 * max std over the pool drops below the stop threshold or the
/// sample budget is exhausted.
inline ActiveResult active_learn(
    const QuadratureGrid& grid, const std::vector<ActiveCandidate>& pool,
    const std::function<double(std::size_t)>& oracle,
    const std::vector<std::size_t>& seed_indices, const ActiveStop& stop,
    const GPFitConfig& fit_config = {},
    Acquisition acquisition = Acquisition::MaxVariance) {
    if (seed_indices.empty()) throw Error("active_learn: empty seed set");

    ActiveResult result;
    std::set<std::size_t> used;
    std::vector<Fingerprint> train;
    std::vector<double> targets;

    auto query = [&](std::size_t idx) {
        double label;
        try {
            label = oracle(idx);
        } catch (const std::exception& e) {
            throw OracleFailure("oracle failed for candidate " +
                                pool[idx].id + ": " + e.what());
        }
        for (const auto& fp : pool[idx].fingerprints) {
            train.push_back(fp);
            targets.push_back(label);
        }
        used.insert(idx);
        result.acquired.push_back(idx);
    };

    for (std::size_t idx : seed_indices) query(idx);

    for (std::size_t iter = 0;; ++iter) {
        result.model = gp_fit(
            grid, train,
            Eigen::Map<const Eigen::VectorXd>(targets.data(),
                                              static_cast<Eigen::Index>(
                                                  targets.size())),
            fit_config);

        double max_std = 0.0;
        double best_score = -1.0;
        std::size_t best_idx = pool.size();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            double cand_std = 0.0, cand_err2 = 0.0;
            for (const auto& fp : pool[i].fingerprints) {
                const auto p = result.model.predict(fp);
                cand_std = std::max(cand_std, std::sqrt(p.variance));
                if (acquisition == Acquisition::VariancePlusError) {
                    const double err = p.mean - oracle(i);
                    cand_err2 = std::max(cand_err2, err * err);
                }
            }
            max_std = std::max(max_std, cand_std);
            if (used.count(i)) continue;
            const double score =
                acquisition == Acquisition::MaxVariance
                    ? cand_std
                    : cand_std * cand_std + cand_err2;
            if (score > best_score) {  // strict: ties keep the lowest index
                best_score = score;
                best_idx = i;
            }
        }

        result.trace.push_back({iter, best_idx, 2.0 * max_std});

        if (2.0 * max_std < stop.max_uncertainty) break;
        if (result.acquired.size() >= stop.max_samples) break;
        if (best_idx == pool.size()) break;  // pool exhausted
        query(best_idx);
    }
    return result;
}

}  // namespace decaf

#endif
