#ifndef DECAF_LAGUERRE_HPP
#define DECAF_LAGUERRE_HPP

#include "errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace decaf {

/// Radial Gaussian quadrature for the weight r^2 e^-r on [0, inf).
struct RadialRule {
    std::vector<double> nodes;    // strictly increasing
    std::vector<double> weights;  // sum to Gamma(3) = 2
    int order = 0;
};

/// Nodes and weights of the generalized Laguerre rule (alpha = 2), computed
/// by diagonalizing the Jacobi matrix of the recurrence (Golub-Welsch).
/// Orders 2..6 are the tabulated range; higher orders follow the same
/// recurrence and are allowed up to 32.
inline RadialRule laguerre_rule(int order) {
    if (order < 2 || order > 32)
        throw UnsupportedOrder("laguerre_rule: order must be in [2, 32]");

    constexpr double alpha = 2.0;
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int i = 0; i < order; ++i) {
        jacobi(i, i) = 2.0 * i + alpha + 1.0;
        if (i > 0) {
            const double b = std::sqrt(i * (i + alpha));
            jacobi(i, i - 1) = b;
            jacobi(i - 1, i) = b;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    const double mu0 = 2.0;  // Gamma(alpha + 1)

    RadialRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace decaf

#endif
