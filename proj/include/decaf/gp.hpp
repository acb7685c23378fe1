#ifndef DECAF_GP_HPP
#define DECAF_GP_HPP

#include "fingerprint.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace decaf {

struct GPHyperparameters {
    double output_scale = 1.0;  // sigma
    double length_scale = 1.0;  // l
    double jitter = 1e-8;       // relative to sigma^2

    void validate() const {
        if (!(output_scale > 0.0) || !(length_scale > 0.0) || !(jitter > 0.0))
            throw Error("GPHyperparameters: all fields must be positive");
    }
};

/// Squared-exponential covariance over fingerprint distance.
inline double se_kernel(const QuadratureGrid& grid, const Fingerprint& a,
                        const Fingerprint& b, const GPHyperparameters& hp) {
    const double d = fingerprint_distance(grid, a, b);
    const double s2 = hp.output_scale * hp.output_scale;
    return s2 * std::exp(-0.5 * d * d /
                         (hp.length_scale * hp.length_scale));
}

struct GPFitConfig {
    int n_starts = 8;
    int max_evals_per_start = 200;
    double sigma_lo_rel = 1e-3, sigma_hi_rel = 1e3;    // x target std
    double length_lo_rel = 1e-2, length_hi_rel = 1e2;  // x median distance
    unsigned seed = 20170501;
    bool optimize = true;  // false: use `fixed` as-is
    GPHyperparameters fixed;
};

/// Gaussian process over fingerprints with zero-mean prior and target
/// centering. Fitting factorizes the covariance once; prediction is
/// read-only afterwards.
class GPModel {
public:
    enum class TargetKind { Scalar, PerAtomVectorComponent, MolecularVectorComponent };

    GPModel() = default;

    const GPHyperparameters& hyperparameters() const { return hp_; }
    double log_likelihood() const { return loglik_; }
    const std::vector<Fingerprint>& training_set() const { return train_; }
    const Eigen::VectorXd& targets() const { return y_; }
    double raw_target(std::size_t i) const {
        return y_(static_cast<Eigen::Index>(i)) + y_mean_;
    }
    const QuadratureGrid& grid() const { return grid_; }
    TargetKind target_kind() const { return kind_; }
    std::size_t size() const { return train_.size(); }

    struct Prediction {
        double mean = 0.0;
        double variance = 0.0;
    };

    Prediction predict(const Fingerprint& query) const {
        Eigen::VectorXd k(train_.size());
        for (std::size_t i = 0; i < train_.size(); ++i)
            k(i) = se_kernel(grid_, train_[i], query, hp_);
        const double mean = y_mean_ + k.dot(alpha_);
        const Eigen::VectorXd v = llt_.matrixL().solve(k);
        const double var =
            hp_.output_scale * hp_.output_scale - v.squaredNorm();
        return {mean, std::max(var, 0.0)};
    }

    double max_posterior_std(const std::vector<Fingerprint>& pool,
                             std::size_t* argmax = nullptr) const {
        double best = -1.0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const double s = std::sqrt(predict(pool[i]).variance);
            if (s > best) {
                best = s;
                if (argmax) *argmax = i;
            }
        }
        return best;
    }

    friend GPModel gp_fit(const QuadratureGrid&, std::vector<Fingerprint>,
                          Eigen::VectorXd, const GPFitConfig&,
                          GPModel::TargetKind);

private:
    // Cholesky of K + jitter*sigma^2*I with escalation 1e-8 -> 1e-6 -> 1e-4.
    // Returns the jitter that succeeded.
    static double factorize(const Eigen::MatrixXd& k_raw, double sigma2,
                            double base_jitter, Eigen::LLT<Eigen::MatrixXd>& llt) {
        for (double jitter :
             {base_jitter, std::max(base_jitter, 1e-6), 1e-4}) {
            Eigen::MatrixXd k = k_raw;
            k.diagonal().array() += jitter * sigma2;
            llt.compute(k);
            if (llt.info() == Eigen::Success) return jitter;
        }
        throw SingularCovariance(
            "GPModel: covariance not positive definite after jitter "
            "escalation");
    }

    QuadratureGrid grid_;
    std::vector<Fingerprint> train_;
    Eigen::VectorXd y_;  // centered targets
    double y_mean_ = 0.0;
    GPHyperparameters hp_;
    double loglik_ = 0.0;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;
    TargetKind kind_ = TargetKind::Scalar;
};

namespace detail {

struct NegLogLik {
    const Eigen::MatrixXd& dist2;  // squared pairwise distances
    const Eigen::VectorXd& y;      // centered targets
    double base_jitter;

    double operator()(double log_sigma, double log_length) const {
        const double sigma2 = std::exp(2.0 * log_sigma);
        const double l2 = std::exp(2.0 * log_length);
        const auto n = y.size();
        Eigen::MatrixXd k =
            sigma2 * (-0.5 * dist2.array() / l2).exp().matrix();
        k.diagonal().array() += base_jitter * sigma2;
        Eigen::LLT<Eigen::MatrixXd> llt(k);
        if (llt.info() != Eigen::Success)
            return std::numeric_limits<double>::infinity();
        const Eigen::VectorXd alpha = llt.solve(y);
        double logdet = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            logdet += std::log(llt.matrixL()(i, i));
        return 0.5 * y.dot(alpha) + logdet +
               0.5 * n * std::log(2.0 * M_PI);
    }
};

// Nelder-Mead in 2D with box clamping; small and deterministic.
template <typename F>
std::array<double, 3> nelder_mead_2d(F f, std::array<double, 2> x0,
                                     std::array<double, 2> lo,
                                     std::array<double, 2> hi, int max_evals) {
    auto clamp = [&](std::array<double, 2> x) {
        x[0] = std::clamp(x[0], lo[0], hi[0]);
        x[1] = std::clamp(x[1], lo[1], hi[1]);
        return x;
    };
    struct Pt {
        std::array<double, 2> x;
        double f;
    };
    std::array<Pt, 3> s;
    int evals = 0;
    auto eval = [&](std::array<double, 2> x) {
        ++evals;
        x = clamp(x);
        return Pt{x, f(x[0], x[1])};
    };
    s[0] = eval(x0);
    s[1] = eval({x0[0] + 0.5, x0[1]});
    s[2] = eval({x0[0], x0[1] + 0.5});

    while (evals < max_evals) {
        std::sort(s.begin(), s.end(),
                  [](const Pt& a, const Pt& b) { return a.f < b.f; });
        if (std::abs(s[2].f - s[0].f) < 1e-10) break;
        const std::array<double, 2> c = {(s[0].x[0] + s[1].x[0]) / 2.0,
                                         (s[0].x[1] + s[1].x[1]) / 2.0};
        auto along = [&](double t) {
            return std::array<double, 2>{c[0] + t * (c[0] - s[2].x[0]),
                                         c[1] + t * (c[1] - s[2].x[1])};
        };
        Pt refl = eval(along(1.0));
        if (refl.f < s[0].f) {
            Pt exp_ = eval(along(2.0));
            s[2] = exp_.f < refl.f ? exp_ : refl;
        } else if (refl.f < s[1].f) {
            s[2] = refl;
        } else {
            Pt con = eval(along(-0.5));
            if (con.f < s[2].f) {
                s[2] = con;
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].x = {(s[i].x[0] + s[0].x[0]) / 2.0,
                              (s[i].x[1] + s[0].x[1]) / 2.0};
                    s[i] = eval(s[i].x);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(),
              [](const Pt& a, const Pt& b) { return a.f < b.f; });
    return {s[0].x[0], s[0].x[1], s[0].f};
}

}  // namespace detail

/// Fit a scalar GP. Hyperparameters maximize the log marginal likelihood via
/// multi-start Nelder-Mead in log space unless `config.optimize` is off.
inline GPModel gp_fit(const QuadratureGrid& grid,
                      std::vector<Fingerprint> train, Eigen::VectorXd targets,
                      const GPFitConfig& config = {},
                      GPModel::TargetKind kind = GPModel::TargetKind::Scalar) {
    if (train.size() < 2) throw Error("gp_fit: need at least 2 points");
    if (static_cast<Eigen::Index>(train.size()) != targets.size())
        throw Error("gp_fit: targets/fingerprints length mismatch");

    const auto n = static_cast<Eigen::Index>(train.size());
    Eigen::MatrixXd dist2(n, n);
    std::vector<double> flat;
    for (Eigen::Index i = 0; i < n; ++i) {
        dist2(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = fingerprint_distance(grid, train[i], train[j]);
            dist2(i, j) = dist2(j, i) = d * d;
            flat.push_back(d);
        }
    }

    GPModel m;
    m.grid_ = grid;
    m.kind_ = kind;
    m.y_mean_ = targets.mean();
    m.y_ = targets.array() - m.y_mean_;
    m.train_ = std::move(train);

    GPHyperparameters hp = config.fixed;
    if (config.optimize) {
        std::sort(flat.begin(), flat.end());
        const double median_d =
            flat.empty() ? 1.0 : std::max(flat[flat.size() / 2], 1e-12);
        double y_std = std::sqrt(m.y_.squaredNorm() /
                                 static_cast<double>(m.y_.size()));
        if (!(y_std > 0.0)) y_std = 1.0;  // constant targets

        const std::array<double, 2> lo = {
            std::log(config.sigma_lo_rel * y_std),
            std::log(config.length_lo_rel * median_d)};
        const std::array<double, 2> hi = {
            std::log(config.sigma_hi_rel * y_std),
            std::log(config.length_hi_rel * median_d)};

        detail::NegLogLik nll{dist2, m.y_, config.fixed.jitter};
        std::mt19937 rng(config.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);

        double best = std::numeric_limits<double>::infinity();
        std::array<double, 2> best_x = {std::log(y_std), std::log(median_d)};
        for (int start = 0; start < config.n_starts; ++start) {
            std::array<double, 2> x0 =
                start == 0 ? best_x
                           : std::array<double, 2>{
                                 lo[0] + u(rng) * (hi[0] - lo[0]),
                                 lo[1] + u(rng) * (hi[1] - lo[1])};
            const auto r = detail::nelder_mead_2d(
                nll, x0, lo, hi, config.max_evals_per_start);
            if (r[2] < best) {
                best = r[2];
                best_x = {r[0], r[1]};
            }
        }
        hp.output_scale = std::exp(best_x[0]);
        hp.length_scale = std::exp(best_x[1]);
        hp.jitter = config.fixed.jitter;
        m.loglik_ = -best;
    }
    hp.validate();
    m.hp_ = hp;

    const double sigma2 = hp.output_scale * hp.output_scale;
    Eigen::MatrixXd k =
        sigma2 *
        (-0.5 * dist2.array() / (hp.length_scale * hp.length_scale))
            .exp()
            .matrix();
    m.hp_.jitter = GPModel::factorize(k, sigma2, hp.jitter, m.llt_);
    m.alpha_ = m.llt_.solve(m.y_);

    if (!config.optimize) {
        const Eigen::VectorXd alpha = m.alpha_;
        double logdet = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            logdet += std::log(m.llt_.matrixL()(i, i));
        m.loglik_ = -(0.5 * m.y_.dot(alpha) + logdet +
                      0.5 * n * std::log(2.0 * M_PI));
    }
    return m;
}

}  // namespace decaf

#endif
