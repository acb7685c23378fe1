// decaf: command-line surface over the fingerprint library.
//
// Every subcommand accepts --config (JSON, also via $DECAF_CONFIG) and
// --seed. Exit codes: 0 success, 2 input error (parsing, schema, missing
// files), 3 domain error (empty neighborhoods, grid mismatches, ...),
// 4 numerical failure (non-convergence, singular covariance, oracle).

#include <CLI11.hpp>

#include <decaf/active.hpp>
#include <decaf/config.hpp>
#include <decaf/fingerprint.hpp>
#include <decaf/frame.hpp>
#include <decaf/gp.hpp>
#include <decaf/graphspec.hpp>
#include <decaf/oracle.hpp>
#include <decaf/serialize.hpp>
#include <decaf/xyz.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace decaf;

// ---------------------------------------------------------------------------
// plumbing

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << data;
    if (!out) throw Error("short write to " + path);
}

struct CommonOptions {
    std::string config_path;
    std::optional<unsigned> seed;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path,
                    "JSON run configuration (default: built-in reference "
                    "parameters; $DECAF_CONFIG overrides the default path)");
    cmd->add_option("--seed", opt.seed,
                    "Random seed override (default: value from config)");
}

RunConfig make_config(const CommonOptions& opt) {
    std::string path = opt.config_path;
    if (path.empty())
        if (const char* env = std::getenv("DECAF_CONFIG")) path = env;
    RunConfig c = load_config(path.empty() ? "" : read_file(path));
    if (opt.seed) {
        c.seed = *opt.seed;
        c.gp.seed = *opt.seed;
    }
    return c;
}

std::vector<Structure> read_structures(const std::string& path) {
    auto frames = parse_xyz(read_file(path));
    for (auto& s : frames) s.validate();
    return frames;
}

// ---------------------------------------------------------------------------
// fingerprint centers

struct CenterChoice {
    enum class Mode { Cog, Atoms, Point } mode = Mode::Cog;
    Vec3 point = Vec3::Zero();
};

CenterChoice parse_center(const std::string& text) {
    CenterChoice c;
    if (text == "cog") return c;
    if (text == "atoms") {
        c.mode = CenterChoice::Mode::Atoms;
        return c;
    }
    std::istringstream ss(text);
    double x, y, z;
    char c1, c2;
    if (ss >> x >> c1 >> y >> c2 >> z && c1 == ',' && c2 == ',' &&
        (ss >> std::ws).eof()) {
        c.mode = CenterChoice::Mode::Point;
        c.point = Vec3(x, y, z);
        return c;
    }
    throw Error("--center must be 'cog', 'atoms', or 'x,y,z'");
}

void add_center(CLI::App* cmd, std::string& center) {
    cmd->add_option("--center", center,
                    "Fingerprint center: cog (center of geometry), atoms "
                    "(one per atom), or an explicit x,y,z point")
        ->default_val("cog");
}

struct CenteredEntry {
    std::string id;
    Vec3 center;
    AtomicNeighborhood neighborhood;
};

std::vector<CenteredEntry> centers_of(const Structure& s,
                                      const CenterChoice& choice,
                                      double cutoff) {
    std::vector<CenteredEntry> out;
    switch (choice.mode) {
        case CenterChoice::Mode::Cog: {
            const Vec3 c = s.center_of_geometry();
            out.push_back({s.source_id, c, make_neighborhood(s, c, cutoff)});
            break;
        }
        case CenterChoice::Mode::Point:
            out.push_back({s.source_id, choice.point,
                           make_neighborhood(s, choice.point, cutoff)});
            break;
        case CenterChoice::Mode::Atoms:
            for (std::size_t i = 0; i < s.atoms.size(); ++i) {
                const Vec3 c = s.atoms[i].position;
                out.push_back({s.source_id + ":" + std::to_string(i), c,
                               make_neighborhood(s, c, cutoff)});
            }
            break;
    }
    return out;
}

std::vector<Fingerprint> fingerprints_of(const CenteredEntry& e,
                                         const RunConfig& cfg,
                                         const QuadratureGrid& grid,
                                         const DensityModel& model) {
    return extract_fingerprint(e.neighborhood, model, grid,
                               cfg.make_frame_source(), e.id);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_frame(const CommonOptions& common, const std::string& input,
              const std::string& center_text) {
    const RunConfig cfg = make_config(common);
    const CenterChoice center = parse_center(center_text);
    const DensityModel model = cfg.make_density_model();
    const AutoMinisum am = cfg.make_frame_source();

    for (const auto& s : read_structures(input)) {
        for (const auto& e : centers_of(s, center, cfg.cutoff)) {
            const auto problem = minisum_problem_of(e.neighborhood, model,
                                                    am.kernel, am.weighting);
            const auto minima =
                coglobal_minima(solve_minisum_global(problem, am.settings));
            const auto frames = canonical_frame(problem, am.settings);

            std::cout << "# " << e.id << " center " << fmt(e.center.x()) << " "
                      << fmt(e.center.y()) << " " << fmt(e.center.z()) << " ("
                      << e.neighborhood.size() << " neighbors)\n";
            for (std::size_t i = 0; i < minima.size(); ++i) {
                const auto& m = minima[i];
                std::cout << "# axis minimum " << i << ": "
                          << fmt(m.minimizer.x()) << " " << fmt(m.minimizer.y())
                          << " " << fmt(m.minimizer.z())
                          << " objective=" << fmt(m.objective)
                          << " iterations=" << m.iterations << "\n";
            }
            for (std::size_t i = 0; i < frames.size(); ++i) {
                const Mat3 r = frames[i].matrix();
                std::cout << "frame " << i << ":";
                for (int row = 0; row < 3; ++row)
                    for (int col = 0; col < 3; ++col)
                        std::cout << " " << fmt(r(row, col));
                std::cout << " det=" << fmt(frames[i].determinant()) << "\n";
            }
        }
    }
    return 0;
}

int cmd_quadrature(const CommonOptions& common, const std::string& output) {
    const RunConfig cfg = make_config(common);
    const QuadratureGrid grid = cfg.make_grid();

    std::ostringstream out;
    out << "# radial_order=" << cfg.radial_order << " layers=";
    for (std::size_t i = 0; i < grid.layers().size(); ++i)
        out << (i ? "," : "") << grid.layers()[i].angular_count;
    char hash[32];
    std::snprintf(hash, sizeof hash, "0x%016llx",
                  static_cast<unsigned long long>(grid.hash()));
    out << " r_star=" << fmt(grid.effective_radius())
        << " weight=" << grid.weight_description() << " hash=" << hash << "\n";
    out << "x,y,z,weight,layer\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Vec3& n = grid.nodes()[k];
        out << fmt(n.x()) << "," << fmt(n.y()) << "," << fmt(n.z()) << ","
            << fmt(grid.weights()[k]) << "," << grid.layer_of_node()[k]
            << "\n";
    }
    write_file(output, out.str());
    return 0;
}

int cmd_fingerprint(const CommonOptions& common, const std::string& input,
                    const std::string& center_text, const std::string& output,
                    const std::string& format) {
    const RunConfig cfg = make_config(common);
    const CenterChoice center = parse_center(center_text);
    const QuadratureGrid grid = cfg.make_grid();
    const DensityModel model = cfg.make_density_model();

    std::vector<Fingerprint> all;
    std::vector<std::size_t> frame_index;
    for (const auto& s : read_structures(input))
        for (const auto& e : centers_of(s, center, cfg.cutoff)) {
            const auto fps = fingerprints_of(e, cfg, grid, model);
            for (std::size_t i = 0; i < fps.size(); ++i) {
                all.push_back(fps[i]);
                frame_index.push_back(i);
            }
        }

    if (format == "bin") {
        write_file(output, serialize_fingerprints(all, grid.hash()));
        return 0;
    }

    std::ostringstream out;
    out << "id,frame,center_x,center_y,center_z";
    for (int i = 0; i < 9; ++i) out << ",r" << i / 3 << i % 3;
    for (Eigen::Index i = 0; i < (all.empty() ? 0 : all[0].values.size()); ++i)
        out << ",v" << i;
    out << "\n";
    for (std::size_t k = 0; k < all.size(); ++k) {
        const auto& fp = all[k];
        out << fp.provenance << "," << frame_index[k] << ","
            << fmt(fp.center.x()) << "," << fmt(fp.center.y()) << ","
            << fmt(fp.center.z());
        const Mat3 r = fp.frame.matrix();
        for (int row = 0; row < 3; ++row)
            for (int col = 0; col < 3; ++col) out << "," << fmt(r(row, col));
        for (Eigen::Index i = 0; i < fp.values.size(); ++i)
            out << "," << fmt(fp.values(i));
        out << "\n";
    }
    write_file(output, out.str());
    return 0;
}

// distance between two structures: best match over their equivalent frame sets
double set_distance(const QuadratureGrid& grid,
                    const std::vector<Fingerprint>& a,
                    const std::vector<Fingerprint>& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : a)
        for (const auto& y : b)
            best = std::min(best, fingerprint_distance(grid, x, y));
    return best;
}

int cmd_distmat(const CommonOptions& common, const std::string& input,
                const std::string& center_text, const std::string& output) {
    const RunConfig cfg = make_config(common);
    const CenterChoice center = parse_center(center_text);
    const QuadratureGrid grid = cfg.make_grid();
    const DensityModel model = cfg.make_density_model();

    std::vector<std::string> ids;
    std::vector<std::vector<Fingerprint>> sets;
    for (const auto& s : read_structures(input))
        for (const auto& e : centers_of(s, center, cfg.cutoff)) {
            ids.push_back(e.id);
            sets.push_back(fingerprints_of(e, cfg, grid, model));
        }

    std::ostringstream out;
    out << "id";
    for (const auto& id : ids) out << "," << id;
    out << "\n";
    for (std::size_t i = 0; i < sets.size(); ++i) {
        out << ids[i];
        for (std::size_t j = 0; j < sets.size(); ++j)
            out << ","
                << fmt(i == j ? 0.0 : set_distance(grid, sets[i], sets[j]));
        out << "\n";
    }
    write_file(output, out.str());
    return 0;
}

int cmd_fit(const CommonOptions& common, const std::string& input,
            const std::string& center_text, const std::string& output) {
    const RunConfig cfg = make_config(common);
    const CenterChoice center = parse_center(center_text);
    const QuadratureGrid grid = cfg.make_grid();
    const DensityModel model = cfg.make_density_model();

    std::vector<Fingerprint> train;
    std::vector<double> targets;
    for (const auto& s : read_structures(input)) {
        if (!s.energy)
            throw Error("fit: structure " + s.source_id +
                        " carries no energy= label");
        for (const auto& e : centers_of(s, center, cfg.cutoff))
            for (auto& fp : fingerprints_of(e, cfg, grid, model)) {
                train.push_back(std::move(fp));
                targets.push_back(*s.energy);
            }
    }

    const auto m = gp_fit(
        grid, train,
        Eigen::Map<const Eigen::VectorXd>(
            targets.data(), static_cast<Eigen::Index>(targets.size())),
        cfg.gp);
    write_file(output, serialize_model(m));
    std::cerr << "fit: " << m.size() << " points, log likelihood "
              << fmt(m.log_likelihood()) << ", sigma "
              << fmt(m.hyperparameters().output_scale) << ", length "
              << fmt(m.hyperparameters().length_scale) << "\n";
    return 0;
}

int cmd_predict(const CommonOptions& common, const std::string& input,
                const std::string& center_text,
                const std::string& model_path, const std::string& output) {
    const RunConfig cfg = make_config(common);
    const CenterChoice center = parse_center(center_text);
    const QuadratureGrid grid = cfg.make_grid();
    const DensityModel model = cfg.make_density_model();
    const GPModel gp = deserialize_model(read_file(model_path), grid);

    std::ostringstream out;
    out << "id,mean,std\n";
    for (const auto& s : read_structures(input))
        for (const auto& e : centers_of(s, center, cfg.cutoff)) {
            // equivalent frames predict identically up to dedup; average the
            // mean and report the largest posterior spread across the set
            double mean = 0.0, worst = 0.0;
            const auto fps = fingerprints_of(e, cfg, grid, model);
            for (const auto& fp : fps) {
                const auto p = gp.predict(fp);
                mean += p.mean;
                worst = std::max(worst, std::sqrt(p.variance));
            }
            mean /= static_cast<double>(fps.size());
            out << e.id << "," << fmt(mean) << "," << fmt(worst) << "\n";
        }
    write_file(output, out.str());
    return 0;
}

// ---------------------------------------------------------------------------
// oracles

double dihedral_of(const Structure& s) {
    // O-O axis plus the first H bonded to each O defines the torsion
    std::vector<std::size_t> o, h;
    for (std::size_t i = 0; i < s.atoms.size(); ++i)
        (s.atoms[i].element == "O" ? o : h).push_back(i);
    if (o.size() < 2 || h.size() < 2)
        throw Error("surrogate oracle needs two O atoms with bonded H");
    const Vec3 axis =
        (s.atoms[o[1]].position - s.atoms[o[0]].position).normalized();
    auto arm = [&](std::size_t oxygen) {
        double best = std::numeric_limits<double>::infinity();
        Vec3 out = Vec3::Zero();
        for (std::size_t i : h) {
            const Vec3 d = s.atoms[i].position - s.atoms[oxygen].position;
            if (d.norm() < best) {
                best = d.norm();
                out = d;
            }
        }
        return (out - out.dot(axis) * axis).normalized();
    };
    const Vec3 u = arm(o[0]), v = arm(o[1]);
    return std::atan2(axis.dot(u.cross(v)), u.dot(v));
}

std::function<OracleLabels(const Structure&)> make_oracle(
    const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::vector<double> params;
    std::string tail =
        colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind != "command") {
        std::istringstream ss(tail);
        std::string tok;
        while (std::getline(ss, tok, ','))
            params.push_back(std::stod(tok));
    }
    auto param = [&](std::size_t i, double fallback) {
        return i < params.size() ? params[i] : fallback;
    };

    if (kind == "lj") {
        LennardJonesOracle o{param(0, 1.0), param(1, 1.0)};
        return [o](const Structure& s) { return o(s); };
    }
    if (kind == "morse") {
        MorseOracle o{param(0, 1.0), param(1, 1.0), param(2, 1.0)};
        return [o](const Structure& s) { return o(s); };
    }
    if (kind == "surrogate") {
        SymmetricDimerSurrogate o;
        o.well_depth = param(0, o.well_depth);
        o.well_radius = param(1, o.well_radius);
        o.torsion_barrier = param(2, o.torsion_barrier);
        return [o](const Structure& s) {
            std::vector<Vec3> oxy;
            for (const auto& a : s.atoms)
                if (a.element == "O") oxy.push_back(a.position);
            if (oxy.size() < 2)
                throw Error("surrogate oracle needs two O atoms");
            OracleLabels labels;
            labels.energy = o.energy((oxy[1] - oxy[0]).norm(), dihedral_of(s));
            return labels;
        };
    }
    if (kind == "command") {
        if (tail.empty()) throw Error("oracle 'command:' needs a program");
        ExternalCommandOracle o{tail};
        return [o](const Structure& s) { return o(s); };
    }
    throw Error("unknown oracle '" + kind +
                "' (expected lj | morse | surrogate | command)");
}

int cmd_active_learn(const CommonOptions& common, const std::string& input,
                     const std::string& center_text,
                     const std::string& oracle_spec,
                     std::vector<std::size_t> seeds,
                     const std::string& output,
                     const std::string& model_out) {
    const RunConfig cfg = make_config(common);
    const CenterChoice center = parse_center(center_text);
    const QuadratureGrid grid = cfg.make_grid();
    const DensityModel model = cfg.make_density_model();
    const auto oracle = make_oracle(oracle_spec);

    std::vector<ActiveCandidate> pool;
    std::vector<Structure> pool_structures;
    for (const auto& s : read_structures(input))
        for (const auto& e : centers_of(s, center, cfg.cutoff)) {
            pool.push_back({e.id, fingerprints_of(e, cfg, grid, model)});
            pool_structures.push_back(s);
        }
    if (pool.empty()) throw Error("active-learn: empty candidate pool");
    if (seeds.empty()) seeds = {0, pool.size() - 1};
    for (std::size_t s : seeds)
        if (s >= pool.size())
            throw Error("active-learn: seed index " + std::to_string(s) +
                        " out of range");

    auto label = [&](std::size_t i) {
        const auto out = oracle(pool_structures[i]);
        if (!out.energy)
            throw OracleFailure("oracle returned no energy for " + pool[i].id);
        return *out.energy;
    };

    const auto result = active_learn(grid, pool, label, seeds, cfg.stop,
                                     cfg.gp, cfg.make_acquisition());

    std::ostringstream out;
    out << "iteration,acquired,max_uncertainty\n";
    for (const auto& t : result.trace)
        out << t.iteration << ","
            << (t.acquired < pool.size() ? pool[t.acquired].id : "-") << ","
            << fmt(t.max_uncertainty) << "\n";
    write_file(output, out.str());
    if (!model_out.empty())
        write_file(model_out, serialize_model(result.model));
    std::cerr << "active-learn: " << result.acquired.size()
              << " acquisitions, final 2*std "
              << fmt(result.trace.back().max_uncertainty) << "\n";
    return 0;
}

int cmd_graphspec(const CommonOptions& common, const std::string& input,
                  double amplitude, double sigma, std::size_t count,
                  const std::string& output) {
    const RunConfig cfg = make_config(common);
    const QuadratureGrid grid = cfg.make_grid();
    const auto kernel = gaussian_incidence_kernel(amplitude, sigma);

    std::ostringstream out;
    out << "id,dropped";
    for (std::size_t i = 0; i < count; ++i) out << ",ev" << i;
    out << "\n";
    for (const auto& s : read_structures(input)) {
        const Vec3 cog = s.center_of_geometry();
        std::vector<Vec3> atoms;
        for (const auto& a : s.atoms) atoms.push_back(a.position - cog);
        const auto spec =
            laplacian_spectrum(incidence(atoms, grid.nodes(), kernel), count);
        out << s.source_id << "," << spec.dropped.size();
        for (double ev : spec.eigenvalues) out << "," << fmt(ev);
        out << "\n";
    }
    write_file(output, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decaf: density-field fingerprints, canonical frames, and "
                 "Gaussian-process regression for atomistic structures"};
    app.name("decaf");  // stable usage line regardless of install path
    app.require_subcommand(1);

    CommonOptions common;
    std::string input = "-", center = "cog", output = "-";
    std::string oracle_spec = "lj", model_path, model_out, format = "csv";
    std::vector<std::size_t> seeds;
    double amplitude = 1.0, sigma = 1.0;
    std::size_t count = 10;

    auto* frame = app.add_subcommand(
        "frame", "Report canonical frames and minisum diagnostics");
    frame->add_option("input", input, "Input XYZ file ('-' for stdin)");
    add_center(frame, center);
    add_common(frame, common);

    auto* quad = app.add_subcommand(
        "quadrature", "Dump the composite quadrature grid as CSV");
    quad->add_option("-o,--output", output, "Output file ('-' for stdout)");
    add_common(quad, common);

    auto* fp = app.add_subcommand(
        "fingerprint", "Extract fingerprints to CSV or a binary container");
    fp->add_option("input", input, "Input XYZ file ('-' for stdin)");
    add_center(fp, center);
    fp->add_option("-o,--output", output, "Output file ('-' for stdout)");
    fp->add_option("--format", format, "Output format: csv or bin")
        ->check(CLI::IsMember({"csv", "bin"}));
    add_common(fp, common);

    auto* dm = app.add_subcommand(
        "distmat", "Symmetric fingerprint distance matrix as CSV");
    dm->add_option("input", input, "Input XYZ file ('-' for stdin)");
    add_center(dm, center);
    dm->add_option("-o,--output", output, "Output file ('-' for stdout)");
    add_common(dm, common);

    auto* fit = app.add_subcommand(
        "fit", "Train a GP on energy-labeled structures");
    fit->add_option("input", input, "Training XYZ file with energy= labels");
    add_center(fit, center);
    fit->add_option("-o,--output", output, "Model file to write")->required();
    add_common(fit, common);

    auto* pred = app.add_subcommand(
        "predict", "Predict energies with a trained model");
    pred->add_option("input", input, "Input XYZ file ('-' for stdin)");
    add_center(pred, center);
    pred->add_option("-m,--model", model_path, "Trained model file")
        ->required();
    pred->add_option("-o,--output", output, "Output file ('-' for stdout)");
    add_common(pred, common);

    auto* al = app.add_subcommand(
        "active-learn",
        "Greedy max-variance active learning over a candidate pool");
    al->add_option("input", input, "Candidate pool XYZ file");
    add_center(al, center);
    al->add_option("--oracle", oracle_spec,
                   "Oracle: lj[:eps,sigma], morse[:depth,stiffness,r0], "
                   "surrogate[:depth,radius,barrier], or command:PROGRAM");
    al->add_option("--seeds", seeds,
                   "Seed candidate indices (default: first and last)");
    al->add_option("-o,--output", output, "Trace CSV ('-' for stdout)");
    al->add_option("--model-output", model_out, "Final model file (optional)");
    add_common(al, common);

    auto* gs = app.add_subcommand(
        "graphspec", "Normalized density-graph Laplacian spectra as CSV");
    gs->add_option("input", input, "Input XYZ file ('-' for stdin)");
    gs->add_option("--amplitude", amplitude, "Incidence kernel amplitude")
        ->default_val(1.0);
    gs->add_option("--sigma", sigma, "Incidence kernel width")
        ->default_val(1.0);
    gs->add_option("--count", count, "Number of eigenvalues")
        ->default_val(10);
    gs->add_option("-o,--output", output, "Output file ('-' for stdout)");
    add_common(gs, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*frame) return cmd_frame(common, input, center);
        if (*quad) return cmd_quadrature(common, output);
        if (*fp) return cmd_fingerprint(common, input, center, output, format);
        if (*dm) return cmd_distmat(common, input, center, output);
        if (*fit) return cmd_fit(common, input, center, output);
        if (*pred)
            return cmd_predict(common, input, center, model_path, output);
        if (*al)
            return cmd_active_learn(common, input, center, oracle_spec, seeds,
                                    output, model_out);
        if (*gs)
            return cmd_graphspec(common, input, amplitude, sigma, count,
                                 output);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "error: config " << e.path << ": " << e.what() << "\n";
        return 2;
    } catch (const UnknownElement& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotConverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const SingularCovariance& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const OracleFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const EmptyNeighborhood& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const UnknownSpecies& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const GridMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ZeroFingerprint& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const AllDisconnected& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateInPlane& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const UnsupportedOrder& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
