#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace decaf;
using namespace decaf::test;

namespace {

DensityModel model() {
    DensityModel m;
    m.kernels["O"] = SpeciesKernel(1.0, 1.5, 0.25);
    m.kernels["H"] = SpeciesKernel(0.75, 0.9, 0.15);
    m.scaling = DensityScaling::tent(3.0, 6.0);
    return m;
}

const QuadratureGrid& grid() {
    static const QuadratureGrid g = composite_grid(
        2, {6, 14}, 4.5, IntegralWeight::bell_poly(6.0, 4.0, 6.0));
    return g;
}

// one-parameter family: a single O atom at distance r from the center
Fingerprint radial_fp(double r) {
    AtomicNeighborhood n;
    n.cutoff = 6.0;
    n.species = {"O"};
    n.displacements = {Vec3(r, 0.0, 0.0)};
    return extract_fingerprint(n, model(), grid(), AutoMinisum{}).front();
}

Fingerprint random_fp(std::mt19937& rng) {
    std::uniform_real_distribution<double> radius(0.6, 4.5);
    std::uniform_int_distribution<int> count(1, 5);
    AtomicNeighborhood n;
    n.cutoff = 6.0;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
        n.species.push_back(i % 2 ? "H" : "O");
        n.displacements.push_back(radius(rng) * random_unit(rng).vec());
    }
    return extract_fingerprint(n, model(), grid(), AutoMinisum{}).front();
}

}  // namespace

TEST_CASE("se kernel basics") {
    std::mt19937 rng(31);
    GPHyperparameters hp{2.0, 0.5, 1e-8};
    const auto a = radial_fp(1.0);
    CHECK(se_kernel(grid(), a, a, hp) == doctest::Approx(4.0));

    // decreases monotonically with distance
    double prev = 5.0;
    for (double r = 1.0; r <= 3.5; r += 0.25) {
        const double k = se_kernel(grid(), a, radial_fp(r), hp);
        CHECK(k <= prev + 1e-12);
        CHECK(k > 0.0);
        prev = k;
    }
}

TEST_CASE("gram matrix with jitter is positive definite") {
    std::mt19937 rng(32);
    GPHyperparameters hp{1.0, 0.3, 1e-8};
    const int n = 50;
    std::vector<Fingerprint> fps;
    for (int i = 0; i < n; ++i) fps.push_back(random_fp(rng));
    Eigen::MatrixXd k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            k(i, j) = se_kernel(grid(), fps[i], fps[j], hp);
    k.diagonal().array() += hp.jitter * hp.output_scale * hp.output_scale;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("constant targets are reproduced") {
    std::vector<Fingerprint> train;
    for (double r = 1.0; r <= 3.0 + 1e-9; r += 0.5) train.push_back(radial_fp(r));
    Eigen::VectorXd y = Eigen::VectorXd::Constant(
        static_cast<Eigen::Index>(train.size()), 3.7);
    const auto m = gp_fit(grid(), train, y);
    for (double r = 1.1; r <= 2.9; r += 0.3)
        CHECK(m.predict(radial_fp(r)).mean == doctest::Approx(3.7).epsilon(1e-6));
}

TEST_CASE("training points are interpolated and far-field reverts to prior") {
    std::vector<Fingerprint> train;
    std::vector<double> rs = {0.8, 1.3, 1.9, 2.6, 3.4, 4.2};
    Eigen::VectorXd y(static_cast<Eigen::Index>(rs.size()));
    for (std::size_t i = 0; i < rs.size(); ++i) {
        train.push_back(radial_fp(rs[i]));
        y(static_cast<Eigen::Index>(i)) = std::sin(2.0 * rs[i]);
    }
    const auto m = gp_fit(grid(), train, y);
    const auto& hp = m.hyperparameters();

    const double tol = 10.0 * std::sqrt(hp.jitter) * hp.output_scale;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto p = m.predict(train[i]);
        CHECK(std::abs(p.mean - y(static_cast<Eigen::Index>(i))) <= tol);
        CHECK(p.variance <= 10.0 * hp.jitter * hp.output_scale);
        CHECK(p.variance >= 0.0);
    }

    // synthetic far query: huge values, same grid identity
    Fingerprint far = train[0];
    far.values.setConstant(1e3);
    const auto p = m.predict(far);
    CHECK(std::abs(p.variance - hp.output_scale * hp.output_scale) <
          1e-6 * hp.output_scale * hp.output_scale);
}

TEST_CASE("returned hyperparameters beat fixed alternatives in likelihood") {
    std::vector<Fingerprint> train;
    std::vector<double> rs = {0.8, 1.4, 2.0, 2.7, 3.5};
    Eigen::VectorXd y(5);
    for (int i = 0; i < 5; ++i) {
        train.push_back(radial_fp(rs[i]));
        y(i) = std::cos(1.5 * rs[i]);
    }
    const auto fitted = gp_fit(grid(), train, y);

    for (double sigma : {0.3, 1.0, 2.5}) {
        for (double l : {0.05, 0.3, 1.0}) {
            GPFitConfig cfg;
            cfg.optimize = false;
            cfg.fixed = {sigma, l, 1e-8};
            const auto alt = gp_fit(grid(), train, y, cfg);
            CHECK(fitted.log_likelihood() >= alt.log_likelihood() - 1e-6);
        }
    }
}

TEST_CASE("fixed-hyperparameter predictions are linear in targets") {
    std::vector<Fingerprint> train;
    std::vector<double> rs = {0.9, 1.5, 2.2, 3.0};
    Eigen::VectorXd y(4);
    for (int i = 0; i < 4; ++i) {
        train.push_back(radial_fp(rs[i]));
        y(i) = 0.5 * rs[i] * rs[i] - rs[i];
    }
    GPFitConfig cfg;
    cfg.optimize = false;
    cfg.fixed = {1.0, 0.4, 1e-8};
    const auto m1 = gp_fit(grid(), train, y, cfg);
    const auto m2 = gp_fit(grid(), train, Eigen::VectorXd(2.0 * y), cfg);
    for (double r = 1.0; r <= 2.8; r += 0.3) {
        const auto q = radial_fp(r);
        CHECK(m2.predict(q).mean ==
              doctest::Approx(2.0 * m1.predict(q).mean).epsilon(1e-9));
        // variance does not depend on targets
        CHECK(m2.predict(q).variance ==
              doctest::Approx(m1.predict(q).variance).epsilon(1e-12));
    }
}

TEST_CASE("duplicate training inputs survive via the jitter ladder") {
    std::vector<Fingerprint> train;
    Eigen::VectorXd y(6);
    for (int i = 0; i < 6; ++i) {
        train.push_back(radial_fp(i < 3 ? 1.5 : 2.5));  // two triplets
        y(i) = i < 3 ? 1.0 : -1.0;
    }
    const auto m = gp_fit(grid(), train, y);
    CHECK(m.predict(radial_fp(1.5)).mean == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(m.predict(radial_fp(2.5)).mean ==
          doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("fit input validation") {
    std::vector<Fingerprint> one = {radial_fp(1.0)};
    Eigen::VectorXd y1(1);
    y1 << 1.0;
    CHECK_THROWS_AS(gp_fit(grid(), one, y1), Error);

    std::vector<Fingerprint> two = {radial_fp(1.0), radial_fp(2.0)};
    CHECK_THROWS_AS(gp_fit(grid(), two, y1), Error);
}

TEST_CASE("max posterior std locates the most uncertain candidate") {
    std::vector<Fingerprint> train = {radial_fp(1.0), radial_fp(1.2),
                                      radial_fp(3.8), radial_fp(4.0)};
    Eigen::VectorXd y(4);
    y << 0.1, 0.2, 0.8, 0.9;
    const auto m = gp_fit(grid(), train, y);

    std::vector<Fingerprint> pool = {radial_fp(1.1), radial_fp(2.5),
                                     radial_fp(3.9)};
    std::size_t argmax = 99;
    const double s = m.max_posterior_std(pool, &argmax);
    CHECK(s > 0.0);
    CHECK(argmax == 1);  // the gap in the middle of the scan
}

TEST_CASE("active learning runs the greedy max-variance loop") {
    std::vector<ActiveCandidate> pool;
    std::vector<double> labels;
    for (int i = 0; i <= 40; ++i) {
        const double r = 0.9 + i * (4.3 - 0.9) / 40.0;
        pool.push_back({"r" + std::to_string(i), {radial_fp(r)}});
        labels.push_back(std::exp(-r) * std::sin(3.0 * r));
    }
    const auto oracle = [&](std::size_t i) { return labels[i]; };

    ActiveStop stop;
    stop.max_uncertainty = 0.02;
    stop.max_samples = 30;
    const auto res =
        active_learn(grid(), pool, oracle, {0, 40}, stop);

    REQUIRE(!res.trace.empty());
    CHECK(res.acquired.size() >= 2);
    CHECK(res.acquired[0] == 0);
    CHECK(res.acquired[1] == 40);
    // stop contract: threshold met or budget exhausted
    const bool met = res.trace.back().max_uncertainty < stop.max_uncertainty;
    CHECK((met || res.acquired.size() >= stop.max_samples));
    // no candidate acquired twice
    std::set<std::size_t> unique(res.acquired.begin(), res.acquired.end());
    CHECK(unique.size() == res.acquired.size());
    // the final model predicts the curve to within the stop uncertainty
    if (met) {
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const auto p = res.model.predict(pool[i].fingerprints[0]);
            CHECK(std::abs(p.mean - labels[i]) < 5.0 * stop.max_uncertainty);
        }
    }
}

TEST_CASE("oracle failures carry the candidate id") {
    std::vector<ActiveCandidate> pool = {{"good", {radial_fp(1.0)}},
                                         {"bad", {radial_fp(2.0)}}};
    const auto oracle = [&](std::size_t i) -> double {
        if (i == 1) throw std::runtime_error("backend exploded");
        return 1.0;
    };
    ActiveStop stop;
    stop.max_uncertainty = 1e-12;  // force acquisition of candidate 1
    try {
        active_learn(grid(), pool, oracle, {0, 1}, stop);
        FAIL("expected OracleFailure");
    } catch (const OracleFailure& e) {
        CHECK(std::string(e.what()).find("bad") != std::string::npos);
    }
}

TEST_CASE("empty seed set is rejected") {
    std::vector<ActiveCandidate> pool = {{"a", {radial_fp(1.0)}}};
    CHECK_THROWS_AS(active_learn(
                        grid(), pool, [](std::size_t) { return 0.0; }, {},
                        ActiveStop{}),
                    Error);
}

TEST_CASE("vector model predictions are rotation equivariant") {
    std::mt19937 rng(33);
    const auto dm = model();

    // training set: random structures with a smooth vector label
    std::vector<VectorSample> samples;
    std::vector<AtomicNeighborhood> neighborhoods;
    for (int i = 0; i < 12; ++i) {
        AtomicNeighborhood n;
        n.cutoff = 6.0;
        std::uniform_real_distribution<double> radius(0.8, 4.0);
        for (int a = 0; a < 3; ++a) {
            n.species.push_back(a % 2 ? "H" : "O");
            n.displacements.push_back(radius(rng) * random_unit(rng).vec());
        }
        VectorSample s;
        s.fingerprints = extract_fingerprint(n, dm, grid(), AutoMinisum{});
        Vec3 t = Vec3::Zero();  // sum of displacements: equivariant label
        for (const auto& d : n.displacements) t += d;
        s.target = t;
        samples.push_back(s);
        neighborhoods.push_back(n);
    }
    const auto m =
        VectorGPModel::fit(grid(), samples, VectorTargetMode::PerAtom);

    for (int rep = 0; rep < 5; ++rep) {
        const auto& n = neighborhoods[rep];
        const Mat3 R = random_rotation(rng);
        AtomicNeighborhood rotated = n;
        for (auto& d : rotated.displacements) d = R * d;

        const Vec3 base = m.predict(
            extract_fingerprint(n, dm, grid(), AutoMinisum{}));
        const Vec3 rot = m.predict(
            extract_fingerprint(rotated, dm, grid(), AutoMinisum{}));
        CHECK((rot - R * base).norm() < 1e-5 * std::max(1.0, base.norm()));
    }
}

TEST_CASE("rotated duplicate queries reproduce the training mean") {
    std::mt19937 rng(34);
    std::vector<Fingerprint> train;
    Eigen::VectorXd y(5);
    std::vector<double> rs = {1.0, 1.7, 2.4, 3.1, 3.8};
    for (int i = 0; i < 5; ++i) {
        train.push_back(radial_fp(rs[i]));
        y(i) = rs[i] * rs[i];
    }
    const auto m = gp_fit(grid(), train, y);

    // a rotated copy of a training structure maps to the same fingerprint
    const Mat3 R = random_rotation(rng);
    AtomicNeighborhood n;
    n.cutoff = 6.0;
    n.species = {"O"};
    n.displacements = {R * Vec3(2.4, 0.0, 0.0)};
    const auto q = extract_fingerprint(n, model(), grid(), AutoMinisum{});
    CHECK(m.predict(q.front()).mean ==
          doctest::Approx(m.predict(train[2]).mean).epsilon(1e-5));
}
