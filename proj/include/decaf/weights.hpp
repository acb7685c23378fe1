#ifndef DECAF_WEIGHTS_HPP
#define DECAF_WEIGHTS_HPP

#include "errors.hpp"
#include "geometry.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace decaf {

/// Density scaling function W_c: unity at the origin, smoothly zero at the
/// cutoff, twice continuously differentiable.
class DensityScaling {
public:
    enum class Kind { Tent, BellPoly };

    static DensityScaling tent(double t, double cutoff) {
        if (!(t > 2.0)) throw Error("DensityScaling: tent requires t > 2");
        DensityScaling w;
        w.kind_ = Kind::Tent;
        w.t_ = t;
        w.cutoff_ = check_cutoff(cutoff);
        return w;
    }

    static DensityScaling bell_poly(double a, double b, double cutoff) {
        if (!(a > b && b > 2.0))
            throw Error("DensityScaling: bell poly requires a > b > 2");
        DensityScaling w;
        w.kind_ = Kind::BellPoly;
        w.a_ = a;
        w.b_ = b;
        w.cutoff_ = check_cutoff(cutoff);
        return w;
    }

    double operator()(double r) const {
        if (r >= cutoff_) return 0.0;
        const double s = 1.0 - r / cutoff_;
        if (kind_ == Kind::Tent) return std::pow(s, t_);
        return (-b_ * std::pow(s, a_) + a_ * std::pow(s, b_)) / (a_ - b_);
    }

    Kind kind() const { return kind_; }
    double cutoff() const { return cutoff_; }
    double tent_exponent() const { return t_; }
    double poly_a() const { return a_; }
    double poly_b() const { return b_; }

    std::string describe() const {
        if (kind_ == Kind::Tent)
            return "tent(t=" + std::to_string(t_) + ")";
        return "bellpoly(a=" + std::to_string(a_) +
               ",b=" + std::to_string(b_) + ")";
    }

private:
    static double check_cutoff(double c) {
        if (!(c > 0.0)) throw Error("DensityScaling: cutoff must be positive");
        return c;
    }

    Kind kind_ = Kind::Tent;
    double t_ = 3.0, a_ = 0.0, b_ = 0.0, cutoff_ = 1.0;
};

/// Weight of integral w(r), normalized to unit mass over its reference
/// domain. The normalization is checked numerically at construction.
class IntegralWeight {
public:
    enum class Kind { BellPoly, Tent, Laplacian, Constant };

    static IntegralWeight bell_poly(double a, double b, double cutoff) {
        if (!(a > b && b > 2.0))
            throw Error("IntegralWeight: bell poly requires a > b > 2");
        IntegralWeight w;
        w.kind_ = Kind::BellPoly;
        w.a_ = a;
        w.b_ = b;
        w.cutoff_ = cutoff;
        // closed-form ball normalization of -b s^a + a s^b
        w.norm_ = 8.0 * M_PI * cutoff * cutoff * cutoff *
                  (a / ((b + 1.0) * (b + 2.0) * (b + 3.0)) -
                   b / ((a + 1.0) * (a + 2.0) * (a + 3.0)));
        w.verify();
        return w;
    }

    static IntegralWeight tent(double t, double cutoff) {
        if (!(t > 2.0)) throw Error("IntegralWeight: tent requires t > 2");
        IntegralWeight w;
        w.kind_ = Kind::Tent;
        w.t_ = t;
        w.cutoff_ = cutoff;
        w.norm_ = 8.0 * M_PI * cutoff * cutoff * cutoff /
                  ((t + 1.0) * (t + 2.0) * (t + 3.0));
        w.verify();
        return w;
    }

    static IntegralWeight laplacian(double l, double cutoff) {
        if (!(l > 0.0)) throw Error("IntegralWeight: laplacian requires l > 0");
        IntegralWeight w;
        w.kind_ = Kind::Laplacian;
        w.l_ = l;
        w.cutoff_ = cutoff;
        w.norm_ = 8.0 * M_PI * l * l * l;
        w.verify();
        return w;
    }

    static IntegralWeight constant(double cutoff) {
        IntegralWeight w;
        w.kind_ = Kind::Constant;
        w.cutoff_ = cutoff;
        w.norm_ = 4.0 * M_PI * cutoff * cutoff * cutoff / 3.0;
        w.verify();
        return w;
    }

    double operator()(double r) const {
        switch (kind_) {
            case Kind::Laplacian:
                return std::exp(-std::abs(r) / l_) / norm_;
            case Kind::Constant:
                return r < cutoff_ ? 1.0 / norm_ : 0.0;
            case Kind::Tent: {
                if (r >= cutoff_) return 0.0;
                return std::pow(1.0 - r / cutoff_, t_) / norm_;
            }
            case Kind::BellPoly: {
                if (r >= cutoff_) return 0.0;
                const double s = 1.0 - r / cutoff_;
                return (-b_ * std::pow(s, a_) + a_ * std::pow(s, b_)) / norm_;
            }
        }
        return 0.0;
    }

    Kind kind() const { return kind_; }
    double cutoff() const { return cutoff_; }
    double laplacian_scale() const { return l_; }
    double tent_exponent() const { return t_; }
    double poly_a() const { return a_; }
    double poly_b() const { return b_; }

    std::string describe() const {
        switch (kind_) {
            case Kind::BellPoly:
                return "bellpoly(a=" + std::to_string(a_) +
                       ",b=" + std::to_string(b_) + ")";
            case Kind::Tent:
                return "tent(t=" + std::to_string(t_) + ")";
            case Kind::Laplacian:
                return "laplacian(l=" + std::to_string(l_) + ")";
            case Kind::Constant:
                return "constant";
        }
        return "?";
    }

private:
    // numeric check that the analytic normalization gives unit mass
    void verify() const {
        if (!(cutoff_ > 0.0))
            throw Error("IntegralWeight: cutoff must be positive");
        const double upper =
            kind_ == Kind::Laplacian ? 60.0 * l_ : cutoff_;
        const int n = 20000;
        const double h = upper / n;
        double sum = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double r = i * h;
            // left limit at the endpoint: the constant kind is
            // discontinuous exactly at the cutoff
            const double f = (*this)(i == n ? r * (1.0 - 1e-12) : r) * r * r;
            const double c = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            sum += c * f;
        }
        sum *= 4.0 * M_PI * h / 3.0;
        if (std::abs(sum - 1.0) > 1e-6)
            throw Error("IntegralWeight: normalization check failed (" +
                        std::to_string(sum) + ")");
    }

    Kind kind_ = Kind::Constant;
    double a_ = 0.0, b_ = 0.0, t_ = 0.0, l_ = 0.0;
    double cutoff_ = 1.0;
    double norm_ = 1.0;
};

/// Non-stationary Gaussian smoothing kernel attached to one species.
/// The width grows with the atom's distance from the fingerprint center:
/// sigma(r) = sigma0 + k r. The printed form uses a sigma^-1 prefactor;
/// the exponent is configurable.
struct SpeciesKernel {
    double amplitude = 1.0;    // c
    double base_width = 1.0;   // sigma0, in Angstrom
    double width_slope = 0.0;  // k, dimensionless
    double norm_exponent = 1.0;

    SpeciesKernel() = default;
    SpeciesKernel(double c, double sigma0, double k, double exponent = 1.0)
        : amplitude(c),
          base_width(sigma0),
          width_slope(k),
          norm_exponent(exponent) {
        if (!(c > 0.0) || !(sigma0 > 0.0) || k < 0.0)
            throw Error("SpeciesKernel: invalid parameters");
    }

    double width(double center_distance) const {
        return base_width + width_slope * center_distance;
    }

    /// Kernel value; center_distance sets the width, offset2 is the squared
    /// distance from the projected atom to the sample point.
    double value(double center_distance, double offset2) const {
        const double sigma = width(center_distance);
        return amplitude * std::pow(sigma, -norm_exponent) *
               std::exp(-0.5 * offset2 / (sigma * sigma));
    }
};

}  // namespace decaf

#endif
