#ifndef DECAF_XYZ_HPP
#define DECAF_XYZ_HPP

#include "errors.hpp"
#include "structure.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace decaf {

namespace detail {

inline double parse_double(std::string_view tok, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "bad number '" + std::string(tok) + "'");
    return v;
}

inline long parse_long(std::string_view tok, std::size_t line) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "bad integer '" + std::string(tok) + "'");
    return v;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

// key=value pairs; values may be double-quoted to contain spaces
inline std::map<std::string, std::string> parse_comment_fields(
    const std::string& comment) {
    std::map<std::string, std::string> out;
    std::size_t i = 0;
    const std::size_t n = comment.size();
    while (i < n) {
        while (i < n && std::isspace(static_cast<unsigned char>(comment[i])))
            ++i;
        std::size_t eq = comment.find('=', i);
        if (eq == std::string::npos) break;
        const std::string key = comment.substr(i, eq - i);
        std::string value;
        i = eq + 1;
        if (i < n && comment[i] == '"') {
            std::size_t close = comment.find('"', i + 1);
            if (close == std::string::npos) break;
            value = comment.substr(i + 1, close - i - 1);
            i = close + 1;
        } else {
            std::size_t end = i;
            while (end < n &&
                   !std::isspace(static_cast<unsigned char>(comment[end])))
                ++end;
            value = comment.substr(i, end - i);
            i = end;
        }
        if (!key.empty()) out[key] = value;
    }
    return out;
}

}  // namespace detail

/// Parse (extended) XYZ text: one or more concatenated frames of
///   <count>\n<comment>\nEl x y z [fx fy fz]...
/// The comment line may carry key=value pairs; `energy=` and `dipole=`
/// (three numbers, quoted) are recognized.
inline std::vector<Structure> parse_xyz(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(std::move(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) lines.push_back(std::move(cur));
    }

    std::vector<Structure> frames;
    std::size_t li = 0;
    while (li < lines.size()) {
        // skip blank separator lines between frames
        if (detail::split_ws(lines[li]).empty()) {
            ++li;
            continue;
        }
        const std::size_t count_line = li + 1;  // 1-based for messages
        const auto count_toks = detail::split_ws(lines[li]);
        if (count_toks.size() != 1)
            throw ParseError(count_line, "expected atom count");
        const long count = detail::parse_long(count_toks[0], count_line);
        if (count <= 0) throw ParseError(count_line, "atom count must be > 0");
        ++li;
        if (li >= lines.size())
            throw ParseError(count_line, "missing comment line");

        Structure s;
        const auto fields = detail::parse_comment_fields(lines[li]);
        if (auto it = fields.find("energy"); it != fields.end())
            s.energy = detail::parse_double(it->second, li + 1);
        if (auto it = fields.find("dipole"); it != fields.end()) {
            const auto toks = detail::split_ws(it->second);
            if (toks.size() != 3)
                throw ParseError(li + 1, "dipole needs three components");
            s.dipole = Vec3(detail::parse_double(toks[0], li + 1),
                            detail::parse_double(toks[1], li + 1),
                            detail::parse_double(toks[2], li + 1));
        }
        ++li;

        bool has_forces = false;
        for (long a = 0; a < count; ++a, ++li) {
            if (li >= lines.size())
                throw ParseError(li, "unexpected end of file inside frame");
            const auto toks = detail::split_ws(lines[li]);
            if (toks.size() != 4 && toks.size() != 7)
                throw ParseError(li + 1,
                                 "expected 'El x y z' or 'El x y z fx fy fz'");
            if (!is_known_element(toks[0]))
                throw UnknownElement("line " + std::to_string(li + 1) +
                                     ": unknown element " + toks[0]);
            Atom atom;
            atom.element = toks[0];
            atom.position = Vec3(detail::parse_double(toks[1], li + 1),
                                 detail::parse_double(toks[2], li + 1),
                                 detail::parse_double(toks[3], li + 1));
            if (toks.size() == 7) {
                if (a == 0) {
                    has_forces = true;
                    s.forces.emplace();
                } else if (!has_forces) {
                    throw ParseError(li + 1, "inconsistent force columns");
                }
                s.forces->emplace_back(detail::parse_double(toks[4], li + 1),
                                       detail::parse_double(toks[5], li + 1),
                                       detail::parse_double(toks[6], li + 1));
            } else if (has_forces) {
                throw ParseError(li + 1, "inconsistent force columns");
            }
            s.atoms.push_back(std::move(atom));
        }
        s.source_id = "frame" + std::to_string(frames.size());
        s.validate();
        frames.push_back(std::move(s));
    }
    if (frames.empty()) throw ParseError(1, "no frames found");
    return frames;
}

namespace detail {

inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// Write frames in the format parse_xyz reads; doubles at 17 significant
/// digits so a round trip is bit-exact for finite values.
inline std::string write_xyz(const std::vector<Structure>& frames) {
    std::string out;
    for (const auto& s : frames) {
        out += std::to_string(s.atoms.size()) + "\n";
        std::string comment;
        if (s.energy) comment += "energy=" + detail::fmt17(*s.energy) + " ";
        if (s.dipole)
            comment += "dipole=\"" + detail::fmt17(s.dipole->x()) + " " +
                       detail::fmt17(s.dipole->y()) + " " +
                       detail::fmt17(s.dipole->z()) + "\" ";
        if (!comment.empty()) comment.pop_back();
        out += comment + "\n";
        for (std::size_t i = 0; i < s.atoms.size(); ++i) {
            const auto& a = s.atoms[i];
            out += a.element + " " + detail::fmt17(a.position.x()) + " " +
                   detail::fmt17(a.position.y()) + " " +
                   detail::fmt17(a.position.z());
            if (s.forces) {
                const Vec3& f = (*s.forces)[i];
                out += " " + detail::fmt17(f.x()) + " " +
                       detail::fmt17(f.y()) + " " + detail::fmt17(f.z());
            }
            out += "\n";
        }
    }
    return out;
}

}  // namespace decaf

#endif
