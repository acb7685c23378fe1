#ifndef DECAF_CONFIG_HPP
#define DECAF_CONFIG_HPP

#include "active.hpp"
#include "fingerprint.hpp"
#include "gp.hpp"
#include "grid.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace decaf {

/// Full run configuration. Defaults follow the reference parameterization:
/// cutoff 6.0 A, tent(3) density scaling, bell(6,4) integral weight, a
/// 3-layer 14/26/38 grid, and per-species Gaussians for H, C, N, O.
struct RunConfig {
    int version = 1;
    double cutoff = 6.0;

    // grid
    int radial_order = 3;
    std::vector<int> angular_per_layer = {14, 26, 38};
    double effective_radius = 4.5;
    bool keep_scale_factor = true;

    std::map<std::string, SpeciesKernel> species = {
        {"H", SpeciesKernel(0.75, 0.9, 0.15)},
        {"C", SpeciesKernel(1.0, 1.2, 0.2)},
        {"N", SpeciesKernel(1.0, 1.2, 0.2)},
        {"O", SpeciesKernel(1.0, 1.5, 0.25)},
    };
    bool multichannel = false;

    // density scaling W_c
    std::string scaling_kind = "tent";  // or "bellpoly"
    double scaling_t = 3.0;
    double scaling_a = 6.0, scaling_b = 4.0;

    // integral weight w(r)
    std::string weight_kind = "bellpoly";  // tent | laplacian | constant
    double weight_t = 3.0;
    double weight_a = 6.0, weight_b = 4.0;
    double weight_l = 1.5;

    // minisum
    std::string minisum_kernel = "sa";  // or "ec"
    std::string minisum_weighting = "density_scaled";  // or "uniform"
    SolverSettings solver;

    // gp / active learning
    GPFitConfig gp;
    std::string acquisition = "max_variance";  // or "variance_plus_error"
    ActiveStop stop;

    unsigned seed = 20170501;

    DensityScaling make_scaling() const {
        if (scaling_kind == "tent")
            return DensityScaling::tent(scaling_t, cutoff);
        return DensityScaling::bell_poly(scaling_a, scaling_b, cutoff);
    }

    IntegralWeight make_weight() const {
        if (weight_kind == "bellpoly")
            return IntegralWeight::bell_poly(weight_a, weight_b, cutoff);
        if (weight_kind == "tent") return IntegralWeight::tent(weight_t, cutoff);
        if (weight_kind == "laplacian")
            return IntegralWeight::laplacian(weight_l, cutoff);
        return IntegralWeight::constant(cutoff);
    }

    QuadratureGrid make_grid() const {
        return composite_grid(radial_order, angular_per_layer,
                              effective_radius, make_weight(),
                              keep_scale_factor);
    }

    DensityModel make_density_model() const {
        return DensityModel{species, make_scaling(), multichannel};
    }

    AutoMinisum make_frame_source() const {
        AutoMinisum am;
        am.settings = solver;
        am.kernel = minisum_kernel == "ec" ? MinisumKernel::ExpCosine
                                           : MinisumKernel::SquareAngle;
        am.weighting = minisum_weighting == "uniform"
                           ? MinisumWeighting::Uniform
                           : MinisumWeighting::DensityScaled;
        return am;
    }

    Acquisition make_acquisition() const {
        return acquisition == "variance_plus_error"
                   ? Acquisition::VariancePlusError
                   : Acquisition::MaxVariance;
    }
};

namespace detail {

using json = nlohmann::json;

inline void reject_unknown(const json& j, const std::set<std::string>& known,
                           const std::string& path) {
    for (const auto& [key, _] : j.items())
        if (!known.count(key))
            throw SchemaError(path + "/" + key, "unknown key");
}

inline void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
}

template <typename T>
void get_to(const json& j, const char* key, T& out, const std::string& path) {
    if (!j.contains(key)) return;
    try {
        j.at(key).get_to(out);
    } catch (const json::exception& e) {
        throw SchemaError(path + "/" + key, e.what());
    }
}

inline void check_choice(const std::string& v,
                         const std::set<std::string>& allowed,
                         const std::string& path) {
    if (!allowed.count(v)) throw SchemaError(path, "invalid value '" + v + "'");
}

}  // namespace detail

inline RunConfig load_config(const std::string& text) {
    namespace dj = detail;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text.empty() ? "{}" : text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("/", e.what());
    }
    dj::expect_object(j, "/");
    dj::reject_unknown(j,
                       {"version", "cutoff", "grid", "species", "multichannel",
                        "density_scaling", "integral_weight", "minisum", "gp",
                        "active_learning", "seed"},
                       "");

    RunConfig c;
    dj::get_to(j, "version", c.version, "");
    if (c.version != 1) throw SchemaError("/version", "unsupported version");
    dj::get_to(j, "cutoff", c.cutoff, "");
    if (!(c.cutoff > 0.0)) throw SchemaError("/cutoff", "must be positive");
    dj::get_to(j, "multichannel", c.multichannel, "");
    dj::get_to(j, "seed", c.seed, "");

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        dj::expect_object(g, "/grid");
        dj::reject_unknown(g,
                           {"radial_order", "angular_per_layer",
                            "effective_radius", "keep_scale_factor"},
                           "/grid");
        dj::get_to(g, "radial_order", c.radial_order, "/grid");
        dj::get_to(g, "angular_per_layer", c.angular_per_layer, "/grid");
        dj::get_to(g, "effective_radius", c.effective_radius, "/grid");
        dj::get_to(g, "keep_scale_factor", c.keep_scale_factor, "/grid");
        if (static_cast<int>(c.angular_per_layer.size()) != c.radial_order)
            throw SchemaError("/grid/angular_per_layer",
                              "length must equal radial_order");
    }

    if (j.contains("species")) {
        const auto& sp = j["species"];
        dj::expect_object(sp, "/species");
        c.species.clear();
        for (const auto& [name, val] : sp.items()) {
            const std::string path = "/species/" + name;
            dj::expect_object(val, path);
            dj::reject_unknown(val,
                               {"amplitude", "base_width", "width_slope",
                                "norm_exponent"},
                               path);
            SpeciesKernel k;
            dj::get_to(val, "amplitude", k.amplitude, path);
            dj::get_to(val, "base_width", k.base_width, path);
            dj::get_to(val, "width_slope", k.width_slope, path);
            dj::get_to(val, "norm_exponent", k.norm_exponent, path);
            if (!(k.amplitude > 0.0) || !(k.base_width > 0.0) ||
                k.width_slope < 0.0)
                throw SchemaError(path, "invalid kernel parameters");
            c.species.emplace(name, k);
        }
    }

    if (j.contains("density_scaling")) {
        const auto& ds = j["density_scaling"];
        dj::expect_object(ds, "/density_scaling");
        dj::reject_unknown(ds, {"kind", "t", "a", "b"}, "/density_scaling");
        dj::get_to(ds, "kind", c.scaling_kind, "/density_scaling");
        dj::check_choice(c.scaling_kind, {"tent", "bellpoly"},
                         "/density_scaling/kind");
        dj::get_to(ds, "t", c.scaling_t, "/density_scaling");
        dj::get_to(ds, "a", c.scaling_a, "/density_scaling");
        dj::get_to(ds, "b", c.scaling_b, "/density_scaling");
    }

    if (j.contains("integral_weight")) {
        const auto& w = j["integral_weight"];
        dj::expect_object(w, "/integral_weight");
        dj::reject_unknown(w, {"kind", "t", "a", "b", "l"}, "/integral_weight");
        dj::get_to(w, "kind", c.weight_kind, "/integral_weight");
        dj::check_choice(c.weight_kind,
                         {"bellpoly", "tent", "laplacian", "constant"},
                         "/integral_weight/kind");
        dj::get_to(w, "t", c.weight_t, "/integral_weight");
        dj::get_to(w, "a", c.weight_a, "/integral_weight");
        dj::get_to(w, "b", c.weight_b, "/integral_weight");
        dj::get_to(w, "l", c.weight_l, "/integral_weight");
    }

    if (j.contains("minisum")) {
        const auto& ms = j["minisum"];
        dj::expect_object(ms, "/minisum");
        dj::reject_unknown(ms,
                           {"kernel", "weighting", "tolerance",
                            "max_iterations", "bootstrap_step", "max_restarts",
                            "pole_clip"},
                           "/minisum");
        dj::get_to(ms, "kernel", c.minisum_kernel, "/minisum");
        dj::check_choice(c.minisum_kernel, {"sa", "ec"}, "/minisum/kernel");
        dj::get_to(ms, "weighting", c.minisum_weighting, "/minisum");
        dj::check_choice(c.minisum_weighting, {"density_scaled", "uniform"},
                         "/minisum/weighting");
        dj::get_to(ms, "tolerance", c.solver.tolerance, "/minisum");
        dj::get_to(ms, "max_iterations", c.solver.max_iterations, "/minisum");
        dj::get_to(ms, "bootstrap_step", c.solver.bootstrap_step, "/minisum");
        dj::get_to(ms, "max_restarts", c.solver.max_restarts, "/minisum");
        dj::get_to(ms, "pole_clip", c.solver.pole_clip, "/minisum");
        if (!(c.solver.tolerance > 0.0) || c.solver.max_iterations < 1 ||
            !(c.solver.bootstrap_step > 0.0))
            throw SchemaError("/minisum", "invalid solver settings");
    }

    if (j.contains("gp")) {
        const auto& g = j["gp"];
        dj::expect_object(g, "/gp");
        dj::reject_unknown(
            g, {"n_starts", "jitter", "sigma_bounds", "length_bounds"}, "/gp");
        dj::get_to(g, "n_starts", c.gp.n_starts, "/gp");
        dj::get_to(g, "jitter", c.gp.fixed.jitter, "/gp");
        std::vector<double> b;
        if (g.contains("sigma_bounds")) {
            dj::get_to(g, "sigma_bounds", b, "/gp");
            if (b.size() != 2 || !(b[0] > 0.0) || !(b[1] > b[0]))
                throw SchemaError("/gp/sigma_bounds", "need [lo, hi], 0 < lo < hi");
            c.gp.sigma_lo_rel = b[0];
            c.gp.sigma_hi_rel = b[1];
        }
        if (g.contains("length_bounds")) {
            b.clear();
            dj::get_to(g, "length_bounds", b, "/gp");
            if (b.size() != 2 || !(b[0] > 0.0) || !(b[1] > b[0]))
                throw SchemaError("/gp/length_bounds", "need [lo, hi], 0 < lo < hi");
            c.gp.length_lo_rel = b[0];
            c.gp.length_hi_rel = b[1];
        }
    }

    if (j.contains("active_learning")) {
        const auto& al = j["active_learning"];
        dj::expect_object(al, "/active_learning");
        dj::reject_unknown(
            al, {"acquisition", "max_uncertainty", "max_samples"},
            "/active_learning");
        dj::get_to(al, "acquisition", c.acquisition, "/active_learning");
        dj::check_choice(c.acquisition,
                         {"max_variance", "variance_plus_error"},
                         "/active_learning/acquisition");
        dj::get_to(al, "max_uncertainty", c.stop.max_uncertainty,
                   "/active_learning");
        dj::get_to(al, "max_samples", c.stop.max_samples, "/active_learning");
    }

    c.gp.seed = c.seed;
    // constructors validate parameter ranges
    c.make_scaling();
    c.make_weight();
    return c;
}

/// Canonical serialized form; reloading it reproduces the config exactly.
inline std::string write_config(const RunConfig& c) {
    nlohmann::json j;
    j["version"] = c.version;
    j["cutoff"] = c.cutoff;
    j["seed"] = c.seed;
    j["multichannel"] = c.multichannel;
    j["grid"] = {{"radial_order", c.radial_order},
                 {"angular_per_layer", c.angular_per_layer},
                 {"effective_radius", c.effective_radius},
                 {"keep_scale_factor", c.keep_scale_factor}};
    nlohmann::json sp = nlohmann::json::object();
    for (const auto& [name, k] : c.species)
        sp[name] = {{"amplitude", k.amplitude},
                    {"base_width", k.base_width},
                    {"width_slope", k.width_slope},
                    {"norm_exponent", k.norm_exponent}};
    j["species"] = sp;
    j["density_scaling"] = {{"kind", c.scaling_kind},
                            {"t", c.scaling_t},
                            {"a", c.scaling_a},
                            {"b", c.scaling_b}};
    j["integral_weight"] = {{"kind", c.weight_kind},
                            {"t", c.weight_t},
                            {"a", c.weight_a},
                            {"b", c.weight_b},
                            {"l", c.weight_l}};
    j["minisum"] = {{"kernel", c.minisum_kernel},
                    {"weighting", c.minisum_weighting},
                    {"tolerance", c.solver.tolerance},
                    {"max_iterations", c.solver.max_iterations},
                    {"bootstrap_step", c.solver.bootstrap_step},
                    {"max_restarts", c.solver.max_restarts},
                    {"pole_clip", c.solver.pole_clip}};
    j["gp"] = {{"n_starts", c.gp.n_starts},
               {"jitter", c.gp.fixed.jitter},
               {"sigma_bounds", {c.gp.sigma_lo_rel, c.gp.sigma_hi_rel}},
               {"length_bounds", {c.gp.length_lo_rel, c.gp.length_hi_rel}}};
    j["active_learning"] = {{"acquisition", c.acquisition},
                            {"max_uncertainty", c.stop.max_uncertainty},
                            {"max_samples", c.stop.max_samples}};
    return j.dump(2) + "\n";
}

}  // namespace decaf

#endif
