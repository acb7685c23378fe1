#ifndef DECAF_STRUCTURE_HPP
#define DECAF_STRUCTURE_HPP

#include "errors.hpp"
#include "geometry.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace decaf {

inline bool is_known_element(const std::string& symbol) {
    static const std::array<const char*, 118> table = {
        "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
        "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti",
        "V",  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
        "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru",
        "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs",
        "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy",
        "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",  "Re", "Os", "Ir",
        "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra",
        "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es",
        "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds",
        "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};
    for (const char* s : table)
        if (symbol == s) return true;
    return false;
}

struct Atom {
    std::string element;
    Vec3 position = Vec3::Zero();  // absolute, Angstrom
};

/// A molecular structure with optional labels (energy, forces, dipole).
struct Structure {
    std::vector<Atom> atoms;
    std::optional<std::vector<Vec3>> forces;
    std::optional<double> energy;
    std::optional<Vec3> dipole;
    std::string source_id;

    void validate() const {
        if (atoms.empty()) throw Error("Structure: no atoms");
        for (const auto& a : atoms) {
            if (!is_known_element(a.element))
                throw UnknownElement("Structure: unknown element " + a.element);
            if (!a.position.allFinite())
                throw Error("Structure: non-finite coordinates");
        }
        if (forces && forces->size() != atoms.size())
            throw Error("Structure: forces/atoms length mismatch");
    }

    Vec3 center_of_geometry() const {
        Vec3 c = Vec3::Zero();
        for (const auto& a : atoms) c += a.position;
        return c / static_cast<double>(atoms.size());
    }
};

/// Atoms within the cutoff of a fingerprint center, stored as center-relative
/// displacements. The inequality is strict: atoms at exactly R_c are out.
struct AtomicNeighborhood {
    Vec3 center = Vec3::Zero();
    std::vector<std::string> species;
    std::vector<Vec3> displacements;
    double cutoff = 0.0;

    std::size_t size() const { return species.size(); }
};

/// Build the neighborhood of `center` from a structure. The center itself is
/// not an atom; an atom sitting exactly at the center is skipped (it carries
/// no direction).
inline AtomicNeighborhood make_neighborhood(const Structure& s,
                                            const Vec3& center,
                                            double cutoff) {
    if (!(cutoff > 0.0)) throw Error("make_neighborhood: cutoff must be > 0");
    AtomicNeighborhood n;
    n.center = center;
    n.cutoff = cutoff;
    for (const auto& a : s.atoms) {
        const Vec3 d = a.position - center;
        const double r = d.norm();
        if (r < cutoff && r > 1e-12) {
            n.species.push_back(a.element);
            n.displacements.push_back(d);
        }
    }
    return n;
}

}  // namespace decaf

#endif
