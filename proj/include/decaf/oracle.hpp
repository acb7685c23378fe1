#ifndef DECAF_ORACLE_HPP
#define DECAF_ORACLE_HPP

#include "errors.hpp"
#include "structure.hpp"
#include "xyz.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

// Built-in analytic oracles for desk-scale experiments, plus an external
// command bridge for real calculators.

namespace decaf {

struct OracleLabels {
    std::optional<double> energy;
    std::optional<std::vector<Vec3>> forces;
};

/// Pairwise Lennard-Jones: V(r) = 4 eps [(s/r)^12 - (s/r)^6].
struct LennardJonesOracle {
    double epsilon = 1.0;
    double sigma = 1.0;

    double pair_energy(double r) const {
        const double s6 = std::pow(sigma / r, 6);
        return 4.0 * epsilon * (s6 * s6 - s6);
    }

    /// Scalar force magnitude along the pair axis, -dV/dr.
    double pair_force(double r) const {
        const double s6 = std::pow(sigma / r, 6);
        return 24.0 * epsilon * (2.0 * s6 * s6 - s6) / r;
    }

    OracleLabels operator()(const Structure& s) const {
        OracleLabels out;
        double energy = 0.0;
        std::vector<Vec3> forces(s.atoms.size(), Vec3::Zero());
        for (std::size_t i = 0; i < s.atoms.size(); ++i)
            for (std::size_t j = i + 1; j < s.atoms.size(); ++j) {
                const Vec3 d = s.atoms[i].position - s.atoms[j].position;
                const double r = d.norm();
                energy += pair_energy(r);
                const Vec3 f = pair_force(r) * d / r;
                forces[i] += f;
                forces[j] -= f;
            }
        out.energy = energy;
        out.forces = std::move(forces);
        return out;
    }
};

/// Pairwise Morse: V(r) = D (1 - exp(-a (r - r0)))^2 - D.
struct MorseOracle {
    double depth = 1.0;
    double stiffness = 1.0;
    double equilibrium = 1.0;

    double pair_energy(double r) const {
        const double x = 1.0 - std::exp(-stiffness * (r - equilibrium));
        return depth * x * x - depth;
    }

    double pair_force(double r) const {
        const double e = std::exp(-stiffness * (r - equilibrium));
        return -2.0 * depth * stiffness * e * (1.0 - e);
    }

    OracleLabels operator()(const Structure& s) const {
        OracleLabels out;
        double energy = 0.0;
        std::vector<Vec3> forces(s.atoms.size(), Vec3::Zero());
        for (std::size_t i = 0; i < s.atoms.size(); ++i)
            for (std::size_t j = i + 1; j < s.atoms.size(); ++j) {
                const Vec3 d = s.atoms[i].position - s.atoms[j].position;
                const double r = d.norm();
                energy += pair_energy(r);
                const Vec3 f = pair_force(r) * d / r;
                forces[i] += f;
                forces[j] -= f;
            }
        out.energy = energy;
        out.forces = std::move(forces);
        return out;
    }
};

/// Analytic two-variable surrogate with a mirror symmetry phi <-> -phi and
/// period pi in phi: two identical head-to-head triatomic units whose planes
/// form a dihedral angle. Geometry and energy share the symmetry, so a model
/// trained on a quarter domain must generalize to the full circle.
struct SymmetricDimerSurrogate {
    double bond_length = 1.0;   // O-H analogue
    double bond_angle = 1.91;   // ~109.5 deg, H-O-H analogue
    double well_depth = 1.0;
    double well_radius = 2.5;   // preferred O-O separation
    double torsion_barrier = 0.3;

    Structure make(double separation, double dihedral) const {
        const double beta = bond_angle / 2.0;
        const double cb = std::cos(beta) * bond_length;
        const double sb = std::sin(beta) * bond_length;
        Structure s;
        const Vec3 o1(-separation / 2.0, 0.0, 0.0);
        const Vec3 o2(+separation / 2.0, 0.0, 0.0);
        s.atoms.push_back({"O", o1});
        s.atoms.push_back({"O", o2});
        s.atoms.push_back({"H", o1 + Vec3(-cb, sb, 0.0)});
        s.atoms.push_back({"H", o1 + Vec3(-cb, -sb, 0.0)});
        const double cp = std::cos(dihedral), sp = std::sin(dihedral);
        s.atoms.push_back({"H", o2 + Vec3(cb, sb * cp, sb * sp)});
        s.atoms.push_back({"H", o2 + Vec3(cb, -sb * cp, -sb * sp)});
        return s;
    }

    double energy(double separation, double dihedral) const {
        const double x = separation - well_radius;
        return well_depth * (x * x - 1.0) * std::exp(-0.5 * x * x) +
               torsion_barrier * (1.0 - std::cos(2.0 * dihedral)) /
                   (1.0 + x * x);
    }
};

/// Bridge to an external calculator. The child receives one extended-XYZ
/// frame on stdin and must print one labeled frame (energy= comment and/or
/// force columns) on stdout. A timeout is enforced through timeout(1).
struct ExternalCommandOracle {
    std::string command;
    int timeout_seconds = 60;

    OracleLabels operator()(const Structure& s) const {
        const std::string input = write_xyz({s});

        char path[] = "/tmp/decaf_oracle_XXXXXX";
        const int fd = mkstemp(path);
        if (fd < 0) throw OracleFailure("cannot create temp file");
        close(fd);

        const std::string cmd = "timeout " +
                                std::to_string(timeout_seconds) + " " +
                                command + " > " + path;
        FILE* pipe = popen(cmd.c_str(), "w");
        if (!pipe) {
            std::remove(path);
            throw OracleFailure("cannot launch: " + command);
        }
        std::fwrite(input.data(), 1, input.size(), pipe);
        const int wstatus = pclose(pipe);
        if (wstatus != 0) {
            std::remove(path);
            throw OracleFailure("external oracle exited with status " +
                                std::to_string(wstatus));
        }

        FILE* out = std::fopen(path, "rb");
        if (!out) throw OracleFailure("no output from external oracle");
        std::string text;
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, out)) > 0)
            text.append(buf, n);
        std::fclose(out);
        std::remove(path);

        const auto frames = parse_xyz(text);
        OracleLabels labels;
        labels.energy = frames.front().energy;
        labels.forces = frames.front().forces;
        return labels;
    }
};

}  // namespace decaf

#endif
