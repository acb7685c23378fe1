#ifndef DECAF_GRAPHSPEC_HPP
#define DECAF_GRAPHSPEC_HPP

#include "errors.hpp"
#include "geometry.hpp"
#include "weights.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <functional>
#include <vector>

// Experimental: spectral view of the atom-to-node incidence graph. The node
// graph's edges are bridged by atoms; its normalized Laplacian spectrum is
// probed for approximate rotation invariance.

namespace decaf {

using RadialKernel = std::function<double(const Vec3&, const Vec3&)>;

/// Default incidence kernel: isotropic Gaussian with fixed width.
inline RadialKernel gaussian_incidence_kernel(double amplitude, double sigma) {
    return [amplitude, sigma](const Vec3& x, const Vec3& z) {
        return amplitude / sigma *
               std::exp(-0.5 * (x - z).squaredNorm() / (sigma * sigma));
    };
}

struct IncidenceMatrix {
    Eigen::MatrixXd entries;  // N atoms x M nodes, nonnegative
};

inline IncidenceMatrix incidence(const std::vector<Vec3>& atoms,
                                 const std::vector<Vec3>& nodes,
                                 const RadialKernel& kernel) {
    IncidenceMatrix m;
    m.entries.resize(static_cast<Eigen::Index>(atoms.size()),
                     static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j)
            m.entries(static_cast<Eigen::Index>(i),
                      static_cast<Eigen::Index>(j)) =
                kernel(atoms[i], nodes[j]);
    return m;
}

struct LaplacianSpectrum {
    std::vector<double> eigenvalues;      // smallest non-trivial, ascending
    std::vector<std::size_t> dropped;     // zero-degree node indices
};

/// Smallest `count` eigenvalues of L = I - D^-1/2 A D^-1/2 with A = E^T E,
/// excluding the trivial zero eigenvalue. Nodes with (near-)zero degree are
/// dropped and reported.
inline LaplacianSpectrum laplacian_spectrum(const IncidenceMatrix& e,
                                            std::size_t count) {
    const Eigen::MatrixXd a = e.entries.transpose() * e.entries;
    const Eigen::VectorXd degree = a.rowwise().sum();
    const double floor = 1e-12 * degree.maxCoeff();

    LaplacianSpectrum out;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < degree.size(); ++i) {
        if (degree(i) > floor)
            keep.push_back(i);
        else
            out.dropped.push_back(static_cast<std::size_t>(i));
    }
    if (keep.empty())
        throw AllDisconnected("laplacian_spectrum: every node has zero degree");

    const auto m = static_cast<Eigen::Index>(keep.size());
    Eigen::MatrixXd lap(m, m);
    for (Eigen::Index r = 0; r < m; ++r)
        for (Eigen::Index c = 0; c < m; ++c)
            lap(r, c) = (r == c ? 1.0 : 0.0) -
                        a(keep[r], keep[c]) /
                            std::sqrt(degree(keep[r]) * degree(keep[c]));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
    // skip the single trivial zero (connected case); tolerance covers rounding
    Eigen::Index first = 0;
    if (es.eigenvalues()(0) < 1e-10) first = 1;
    for (Eigen::Index i = first;
         i < es.eigenvalues().size() &&
         out.eigenvalues.size() < count;
         ++i)
        out.eigenvalues.push_back(es.eigenvalues()(i));
    return out;
}

}  // namespace decaf

#endif
