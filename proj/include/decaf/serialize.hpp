#ifndef DECAF_SERIALIZE_HPP
#define DECAF_SERIALIZE_HPP

#include "gp.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

// Little-endian binary containers for fingerprints and GP models. Layouts
// are documented in docs/formats.md; a magic string and version lead each
// file.

namespace decaf {

static_assert(std::endian::native == std::endian::little,
              "binary containers assume a little-endian host");

namespace detail {

inline void put_bytes(std::string& out, const void* p, std::size_t n) {
    out.append(static_cast<const char*>(p), n);
}

template <typename T>
void put(std::string& out, T v) {
    put_bytes(out, &v, sizeof v);
}

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;

    void take(void* p, std::size_t n) {
        if (pos + n > buf.size()) throw Error("container truncated");
        std::memcpy(p, buf.data() + pos, n);
        pos += n;
    }

    template <typename T>
    T get() {
        T v;
        take(&v, sizeof v);
        return v;
    }
};

inline void put_fingerprint(std::string& out, const Fingerprint& fp) {
    put_bytes(out, fp.center.data(), 3 * sizeof(double));
    const Mat3 r = fp.frame.matrix();
    put_bytes(out, r.data(), 9 * sizeof(double));
    put<std::uint64_t>(out, fp.values.size());
    put_bytes(out, fp.values.data(), fp.values.size() * sizeof(double));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(fp.provenance.size()));
    put_bytes(out, fp.provenance.data(), fp.provenance.size());
}

inline Fingerprint get_fingerprint(Reader& r, std::uint64_t grid_hash) {
    Fingerprint fp;
    fp.grid_hash = grid_hash;
    r.take(fp.center.data(), 3 * sizeof(double));
    Mat3 m;
    r.take(m.data(), 9 * sizeof(double));
    fp.frame = {UnitVector3(Vec3(m.col(0))), UnitVector3(Vec3(m.col(1))),
                UnitVector3(Vec3(m.col(2)))};
    const auto len = r.get<std::uint64_t>();
    fp.values.resize(static_cast<Eigen::Index>(len));
    r.take(fp.values.data(), len * sizeof(double));
    const auto plen = r.get<std::uint32_t>();
    fp.provenance.resize(plen);
    r.take(fp.provenance.data(), plen);
    return fp;
}

}  // namespace detail

inline constexpr char kFingerprintMagic[8] = {'D', 'E', 'C', 'A',
                                              'F', 'F', 'P', 'R'};
inline constexpr char kModelMagic[8] = {'D', 'E', 'C', 'A', 'F', 'G', 'P', 'M'};

inline std::string serialize_fingerprints(
    const std::vector<Fingerprint>& fps, std::uint64_t grid_hash) {
    std::string out;
    detail::put_bytes(out, kFingerprintMagic, 8);
    detail::put<std::uint32_t>(out, 1);  // version
    detail::put<std::uint64_t>(out, grid_hash);
    detail::put<std::uint64_t>(out, fps.empty() ? 0 : fps.front().values.size());
    detail::put<std::uint64_t>(out, fps.size());
    for (const auto& fp : fps) {
        if (fp.grid_hash != grid_hash)
            throw GridMismatch("serialize_fingerprints: mixed grids");
        detail::put_fingerprint(out, fp);
    }
    return out;
}

struct FingerprintFile {
    std::uint64_t grid_hash = 0;
    std::vector<Fingerprint> fingerprints;
};

inline FingerprintFile deserialize_fingerprints(const std::string& buf) {
    detail::Reader r{buf};
    char magic[8];
    r.take(magic, 8);
    if (std::memcmp(magic, kFingerprintMagic, 8) != 0)
        throw Error("not a fingerprint container");
    if (r.get<std::uint32_t>() != 1)
        throw Error("unsupported fingerprint container version");
    FingerprintFile f;
    f.grid_hash = r.get<std::uint64_t>();
    r.get<std::uint64_t>();  // node count, informational
    const auto n = r.get<std::uint64_t>();
    for (std::uint64_t i = 0; i < n; ++i)
        f.fingerprints.push_back(detail::get_fingerprint(r, f.grid_hash));
    return f;
}

/// Model container: hyperparameters + training data; the covariance
/// factorization is regenerated on load.
inline std::string serialize_model(const GPModel& model) {
    std::string out;
    detail::put_bytes(out, kModelMagic, 8);
    detail::put<std::uint32_t>(out, 1);
    detail::put(out, model.hyperparameters().output_scale);
    detail::put(out, model.hyperparameters().length_scale);
    detail::put(out, model.hyperparameters().jitter);
    detail::put<std::uint32_t>(out,
                               static_cast<std::uint32_t>(model.target_kind()));
    detail::put<std::uint64_t>(out, model.grid().hash());
    detail::put<std::uint64_t>(out, model.size());
    // targets are stored uncentered; centering is re-derived on load
    for (std::size_t i = 0; i < model.size(); ++i) {
        detail::put_fingerprint(out, model.training_set()[i]);
        detail::put(out, model.raw_target(i));
    }
    return out;
}

inline GPModel deserialize_model(const std::string& buf,
                                 const QuadratureGrid& grid) {
    detail::Reader r{buf};
    char magic[8];
    r.take(magic, 8);
    if (std::memcmp(magic, kModelMagic, 8) != 0)
        throw Error("not a model container");
    if (r.get<std::uint32_t>() != 1)
        throw Error("unsupported model container version");

    GPFitConfig cfg;
    cfg.optimize = false;
    cfg.fixed.output_scale = r.get<double>();
    cfg.fixed.length_scale = r.get<double>();
    cfg.fixed.jitter = r.get<double>();
    const auto kind = static_cast<GPModel::TargetKind>(r.get<std::uint32_t>());
    const auto grid_hash = r.get<std::uint64_t>();
    if (grid_hash != grid.hash())
        throw GridMismatch("model was trained on a different grid");
    const auto n = r.get<std::uint64_t>();

    std::vector<Fingerprint> train;
    Eigen::VectorXd targets(static_cast<Eigen::Index>(n));
    for (std::uint64_t i = 0; i < n; ++i) {
        train.push_back(detail::get_fingerprint(r, grid_hash));
        targets(static_cast<Eigen::Index>(i)) = r.get<double>();
    }
    return gp_fit(grid, std::move(train), std::move(targets), cfg, kind);
}

}  // namespace decaf

#endif
