#ifndef DECAF_GRID_HPP
#define DECAF_GRID_HPP

#include "laguerre.hpp"
#include "lebedev.hpp"
#include "weights.hpp"

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace decaf {

/// Composite Laguerre x Lebedev quadrature grid for sampling density fields.
/// Layers are ordered inner to outer; the integral weight is evaluated once
/// per node at build time and baked into the flattened weights.
class QuadratureGrid {
public:
    struct Layer {
        double radius = 0.0;         // scaled radius tau * r_n
        double radial_node = 0.0;    // unscaled Laguerre node r_n
        double radial_weight = 0.0;  // alpha_n
        int angular_count = 0;
    };

    QuadratureGrid() = default;

    const std::vector<Vec3>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<int>& layer_of_node() const { return layer_; }
    const std::vector<Layer>& layers() const { return layers_; }
    double scale() const { return tau_; }
    double effective_radius() const { return r_star_; }
    bool keeps_scale_factor() const { return keep_tau3_; }
    const std::string& weight_description() const { return weight_desc_; }
    std::size_t size() const { return nodes_.size(); }

    /// Stable identity over node positions and weights; identical
    /// configurations hash bit-identically.
    std::uint64_t hash() const { return hash_; }

    friend QuadratureGrid composite_grid(int, const std::vector<int>&, double,
                                         const IntegralWeight&, bool);

private:
    std::vector<Vec3> nodes_;
    std::vector<double> weights_;
    std::vector<int> layer_;
    std::vector<Layer> layers_;
    double tau_ = 1.0;
    double r_star_ = 0.0;
    bool keep_tau3_ = true;
    std::string weight_desc_;
    std::uint64_t hash_ = 0;
};

namespace detail {

inline void fnv1a(std::uint64_t& h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
}

}  // namespace detail

/// Build a scaled composite grid: Laguerre radii scaled so the outermost
/// layer sits at r_star, one Lebedev shell per radial node. Flattened node
/// weights are 4 pi alpha_n beta_m w(|node|) e^{r_n}, times tau^3 unless the
/// constant scale factor is dropped for relative-distance workflows.
inline QuadratureGrid composite_grid(int radial_order,
                                     const std::vector<int>& angular_per_layer,
                                     double r_star,
                                     const IntegralWeight& weight_fn,
                                     bool keep_scale_factor = true) {
    if (!(r_star > 0.0)) throw Error("composite_grid: R* must be positive");
    if (static_cast<int>(angular_per_layer.size()) != radial_order)
        throw Error("composite_grid: need one angular count per radial node");

    const RadialRule radial = laguerre_rule(radial_order);
    const double tau = r_star / radial.nodes.back();
    const double tau3 = keep_scale_factor ? tau * tau * tau : 1.0;

    QuadratureGrid g;
    g.tau_ = tau;
    g.r_star_ = r_star;
    g.keep_tau3_ = keep_scale_factor;
    g.weight_desc_ = weight_fn.describe();

    for (int n = 0; n < radial_order; ++n) {
        const AngularRule angular = lebedev_rule(angular_per_layer[n]);
        const double radius = tau * radial.nodes[n];
        g.layers_.push_back(
            {radius, radial.nodes[n], radial.weights[n], angular.count});
        const double radial_factor = 4.0 * M_PI * radial.weights[n] *
                                     std::exp(radial.nodes[n]) * tau3;
        for (std::size_t m = 0; m < angular.nodes.size(); ++m) {
            const Vec3 node = radius * angular.nodes[m].vec();
            const double w =
                radial_factor * angular.weights[m] * weight_fn(node.norm());
            if (!(w > 0.0))
                throw Error(
                    "composite_grid: node weight not positive; R* must stay "
                    "inside the weight function's support");
            g.nodes_.push_back(node);
            g.weights_.push_back(w);
            g.layer_.push_back(n);
        }
    }

    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t k = 0; k < g.nodes_.size(); ++k) {
        detail::fnv1a(h, g.nodes_[k].data(), 3 * sizeof(double));
        detail::fnv1a(h, &g.weights_[k], sizeof(double));
    }
    g.hash_ = h;
    return g;
}

}  // namespace decaf

#endif
