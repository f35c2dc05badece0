#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "mcg/analyze.hpp"
#include "mcg/integrate.hpp"
#include "mcg/model.hpp"

using namespace mcg;

namespace {

ModelParams random_valid_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> alpha_d(0.05, 6.0);
    std::uniform_real_distribution<double> eta_d(1.0, 20.0);
    std::uniform_real_distribution<double> a_d(-8.0, 2.0);
    std::uniform_real_distribution<double> b_d(-2.0, 4.0);
    std::uniform_real_distribution<double> mu_d(0.5, 5.0);
    std::uniform_real_distribution<double> theta_d(0.5, 5.0);
    std::uniform_real_distribution<double> eps_d(0.1, 2.0);
    std::uniform_real_distribution<double> unit(-0.9, 0.9);
    const double mu = mu_d(rng);
    const double theta = theta_d(rng);
    const double gamma = unit(rng) * 2.0 * std::sqrt(mu * theta);
    return ModelParams(alpha_d(rng), eta_d(rng), a_d(rng), b_d(rng), mu, gamma, theta,
                       eps_d(rng));
}

LyapunovSpectrum spectrum_of(double l1, double l2, double l3) {
    LyapunovSpectrum ls;
    ls.exponents = {l1, l2, l3};
    return ls;
}

}  // namespace

TEST_CASE("closed-form origin eigenvalues match a dense solver") {
    std::mt19937 rng(101);
    for (int i = 0; i < 100; ++i) {
        const ModelParams p = random_valid_params(rng);
        const Mat3 j = jacobian({0, 0, 0}, p);
        Eigen::Matrix3d m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m(r, c) = j[r][c];
        Eigen::EigenSolver<Eigen::Matrix3d> solver(m, false);
        REQUIRE(solver.info() == Eigen::Success);

        const EigenReport rep = origin_eigenvalues(p);
        std::vector<std::complex<double>> mine{
            {rep.lambda1, 0.0}, rep.lambda2, rep.lambda3};
        for (int k = 0; k < 3; ++k) {
            const std::complex<double> ev = solver.eigenvalues()(k);
            auto best = std::min_element(mine.begin(), mine.end(),
                                         [&](const auto& a, const auto& b) {
                                             return std::abs(a - ev) < std::abs(b - ev);
                                         });
            CHECK(std::abs(*best - ev) <= 1e-10);
            mine.erase(best);
        }
    }
}

TEST_CASE("first eigenvalue is minus epsilon, bitwise") {
    std::mt19937 rng(102);
    for (int i = 0; i < 50; ++i) {
        const ModelParams p = random_valid_params(rng);
        CHECK(origin_eigenvalues(p).lambda1 == -p.epsilon);
    }
}

TEST_CASE("quadratic factor satisfies the vieta identities") {
    std::mt19937 rng(103);
    for (int i = 0; i < 100; ++i) {
        const ModelParams p = random_valid_params(rng);
        const EigenReport rep = origin_eigenvalues(p);
        const std::complex<double> prod = rep.lambda2 * rep.lambda3;
        const std::complex<double> sum = rep.lambda2 + rep.lambda3;
        CHECK(std::abs(prod - 1.0 / (p.alpha * p.eta)) <= 1e-10);
        CHECK(std::abs(sum + (p.a + p.theta) / p.eta) <= 1e-10);
        CHECK(rep.discriminant ==
              doctest::Approx((p.a + p.theta) * (p.a + p.theta) - 4.0 * p.eta / p.alpha)
                  .epsilon(1e-12));
    }
}

TEST_CASE("study parameters at alpha=0.5 give an unstable focus") {
    const EigenReport rep = origin_eigenvalues(reference_params(0.5));
    CHECK(rep.classification == FixedPointKind::SaddleFocus);
    CHECK(rep.lambda1 == -0.6);
    // lambda2/3 = [3 +/- sqrt(9 - 97.6)] / 24.4
    CHECK(rep.lambda2.real() == doctest::Approx(3.0 / 24.4).epsilon(1e-13));
    CHECK(std::fabs(rep.lambda2.imag()) ==
          doctest::Approx(std::sqrt(88.6) / 24.4).epsilon(1e-13));
    CHECK(rep.lambda3 == std::conj(rep.lambda2));
    REQUIRE(rep.alpha_star.has_value());
    CHECK(*rep.alpha_star == doctest::Approx(48.8 / 9.0).epsilon(1e-14));
}

TEST_CASE("fixed point kind flips at the threshold") {
    // below alpha_star = 48.8/9 ~ 5.42: complex pair with positive real part
    for (double alpha = 0.1; alpha < 5.4; alpha += 0.2) {
        const EigenReport rep = origin_eigenvalues(reference_params(alpha));
        CHECK(rep.classification == FixedPointKind::SaddleFocus);
        CHECK(rep.lambda2.real() > 0.0);
        CHECK(rep.lambda2.imag() != 0.0);
    }
    // above: two positive real eigenvalues alongside lambda1 = -epsilon
    for (double alpha = 5.5; alpha <= 10.0; alpha += 0.5) {
        const EigenReport rep = origin_eigenvalues(reference_params(alpha));
        CHECK(rep.classification == FixedPointKind::SaddleNode);
        CHECK(rep.lambda2.imag() == 0.0);
        CHECK(rep.lambda2.real() > 0.0);
        CHECK(rep.lambda3.real() > 0.0);
    }

    // an exactly zero discriminant counts as the node side: eta=9, alpha=4
    // puts 4*eta/alpha right at (a+theta)^2 = 9
    const ModelParams boundary(4.0, 9.0, -6.0, 3.0, 3.0, -2.0, 3.0, 0.6);
    const EigenReport rep = origin_eigenvalues(boundary);
    CHECK(rep.discriminant == 0.0);
    CHECK(rep.classification == FixedPointKind::SaddleNode);
    CHECK(rep.lambda2.real() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(rep.lambda2 == rep.lambda3);

    CHECK(to_string(FixedPointKind::SaddleFocus) != to_string(FixedPointKind::SaddleNode));
}

TEST_CASE("threshold is undefined when a + theta vanishes") {
    const ModelParams p(1.0, 12.2, -3.0, 3.0, 3.0, -2.0, 3.0, 0.6);
    const EigenReport rep = origin_eigenvalues(p);
    CHECK(!rep.alpha_star.has_value());
    CHECK(rep.discriminant < 0.0);
    CHECK(rep.classification == FixedPointKind::SaddleFocus);
    CHECK(rep.lambda2.real() == doctest::Approx(0.0));
}

TEST_CASE("lyapunov spectrum in the three reference regimes") {
    SUBCASE("chaotic at alpha=0.5") {
        const LyapunovSpectrum ls = lyapunov_spectrum(reference_params(0.5), kDefaultInitialState);
        CHECK(ls.exponents[0] > 0.05);
        CHECK(ls.exponents[0] < 0.11);
        CHECK(std::fabs(ls.exponents[1]) <= 0.02);
        CHECK(ls.exponents[2] > -0.5);
        CHECK(ls.exponents[2] < -0.3);
        CHECK(ls.exponents[0] >= ls.exponents[1]);
        CHECK(ls.exponents[1] >= ls.exponents[2]);
        CHECK(ls.averaging_time == 5000.0);
        CHECK(ls.renorm_interval == 1.0);
        for (double tv : ls.tail_variation) CHECK(tv < 0.02);
    }
    SUBCASE("chaotic at alpha=1.2") {
        const LyapunovSpectrum ls = lyapunov_spectrum(reference_params(1.2), kDefaultInitialState);
        CHECK(ls.exponents[0] > 0.04);
        CHECK(ls.exponents[0] < 0.09);
        CHECK(std::fabs(ls.exponents[1]) <= 0.02);
    }
    SUBCASE("torus at alpha=0.05") {
        const LyapunovSpectrum ls = lyapunov_spectrum(reference_params(0.05), kDefaultInitialState);
        CHECK(std::fabs(ls.exponents[0]) <= 0.02);
        CHECK(std::fabs(ls.exponents[1]) <= 0.02);
        CHECK(ls.exponents[2] < -0.05);
        CHECK(ls.exponents[2] > -0.2);
    }
}

TEST_CASE("exponent sum equals the average divergence of the flow") {
    const ModelParams p = reference_params(0.5);
    const LyapunovSpectrum ls = lyapunov_spectrum(p, kDefaultInitialState);
    const double sum = ls.exponents[0] + ls.exponents[1] + ls.exponents[2];

    // independent estimate: time average of trace(J) along a fresh trajectory
    IntegrationSettings cfg;
    cfg.t_end = 5500.0;
    cfg.t_skip = 500.0;
    cfg.stride = 1;
    const Trajectory tr = integrate(p, kDefaultInitialState, cfg);
    double acc = 0.0;
    for (const State& s : tr.states) acc += trace(jacobian(s, p));
    acc /= static_cast<double>(tr.states.size());

    CHECK(std::fabs(sum - acc) / std::fabs(acc) < 0.02);
}

TEST_CASE("mirrored start yields the identical spectrum") {
    LyapunovSettings fast;
    fast.transient = 200.0;
    fast.averaging = 1000.0;
    const ModelParams p = reference_params(0.5);
    const LyapunovSpectrum a = lyapunov_spectrum(p, kDefaultInitialState, fast);
    const LyapunovSpectrum b = lyapunov_spectrum(p, mirror(kDefaultInitialState), fast);
    // the tangent flow is mirror-equivariant and negation is exact, so the
    // two runs agree bitwise
    for (int k = 0; k < 3; ++k) CHECK(a.exponents[k] == b.exponents[k]);
}

TEST_CASE("lyapunov guards") {
    CHECK_THROWS_WITH_AS(lyapunov_spectrum(reference_params(0.5), {0, 0, 0}),
                         doctest::Contains("fixed point"), std::invalid_argument);

    LyapunovSettings s;
    s.step = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.averaging = -1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.renorm_interval = 1e-4;  // below step
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("kaplan-yorke dimension") {
    CHECK(kaplan_yorke(spectrum_of(0.08, 0.0, -0.4)) == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(kaplan_yorke(spectrum_of(0.0, -0.08, -0.08)) == 1.0);
    CHECK(kaplan_yorke(spectrum_of(-0.1, -0.2, -0.3)) == 0.0);
    CHECK(kaplan_yorke(spectrum_of(0.3, 0.2, 0.1)) == 3.0);

    SUBCASE("zero snapping") {
        // (0,-,-) snaps to exactly 1, (0,0,-) to exactly 2
        CHECK(kaplan_yorke(spectrum_of(0.01, -0.05, -0.13), 0.02) == 1.0);
        CHECK(kaplan_yorke(spectrum_of(0.019, 0.01, -0.13), 0.02) == 2.0);
        // genuinely positive exponents are left alone
        CHECK(kaplan_yorke(spectrum_of(0.08, 0.001, -0.4), 0.02) ==
              doctest::Approx(2.2).epsilon(1e-12));
        CHECK_THROWS_AS(kaplan_yorke(spectrum_of(0.1, 0.0, -0.2), 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("attractor taxonomy by sign pattern") {
    auto kind = [](double l1, double l2, double l3) {
        return classify_attractor(spectrum_of(l1, l2, l3), 0.02).kind;
    };
    CHECK(kind(0.08, 0.001, -0.4) == AttractorKind::Chaos);
    CHECK(kind(0.01, -0.01, -0.2) == AttractorKind::Torus2);
    CHECK(kind(0.005, -0.06, -0.06) == AttractorKind::LimitCycle1);
    CHECK(kind(0.08, 0.05, -0.4) == AttractorKind::Unclassified);
    CHECK(kind(-0.1, -0.2, -0.3) == AttractorKind::Unclassified);

    const AttractorClass cyc = classify_attractor(spectrum_of(0.0, -0.06, -0.06), 0.02);
    CHECK(cyc.period == 1);
    CHECK(!cyc.double_spiral);
    CHECK(to_string(AttractorKind::Chaos) == "Chaos");

    CHECK_THROWS_AS(classify_attractor(spectrum_of(0.1, 0.0, -0.2), -1.0),
                    std::invalid_argument);
}

TEST_CASE("periodic refinement via maxima clustering") {
    const LyapunovSpectrum cyc = spectrum_of(0.001, -0.06, -0.06);

    std::vector<double> alternating;
    for (int i = 0; i < 8; ++i) alternating.push_back(i % 2 == 0 ? 1.0 : 2.0);
    const AttractorClass two = classify_attractor(cyc, 0.02, alternating, 0.02);
    CHECK(two.kind == AttractorKind::PeriodicN);
    CHECK(two.period == 2);

    const std::vector<double> flat(10, 1.5);
    const AttractorClass one = classify_attractor(cyc, 0.02, flat, 0.02);
    CHECK(one.kind == AttractorKind::LimitCycle1);
    CHECK(one.period == 1);

    // an aperiodic visit order falls back to the unrefined class
    const std::vector<double> scrambled{1, 2, 1, 1, 2, 2, 1, 2, 1, 1};
    const AttractorClass fallback = classify_attractor(cyc, 0.02, scrambled, 0.02);
    CHECK(fallback.kind == AttractorKind::LimitCycle1);
    CHECK(fallback.period == 1);

    // too few maxima: no refinement attempted
    const std::vector<double> few{1, 2, 1, 2};
    CHECK(classify_attractor(cyc, 0.02, few, 0.02).kind == AttractorKind::LimitCycle1);

    // non-periodic spectra are never refined
    const std::vector<double> any(10, 1.0);
    CHECK(classify_attractor(spectrum_of(0.08, 0.0, -0.4), 0.02, any, 0.02).kind ==
          AttractorKind::Chaos);
}

TEST_CASE("period detection") {
    std::vector<double> three;
    for (int i = 0; i < 4; ++i) {
        three.insert(three.end(), {1.0, 2.0, 3.0});
    }
    const PeriodDetection d3 = detect_period(three, 0.02);
    CHECK(d3.period == 3);
    CHECK(!d3.ambiguous);
    CHECK(d3.sequence_periodic);

    const std::vector<double> flat(8, 5.0);
    const PeriodDetection d1 = detect_period(flat, 0.02);
    CHECK(d1.period == 1);
    CHECK(!d1.ambiguous);
    CHECK(d1.sequence_periodic);

    // pair separation of 0.025 on a range of 1.025: 4 clusters at the nominal
    // 0.02 tolerance but 2 at 1.5x, so the count is flagged ambiguous
    std::vector<double> pairs;
    for (int i = 0; i < 3; ++i) {
        pairs.insert(pairs.end(), {0.0, 0.025, 1.0, 1.025});
    }
    const PeriodDetection dp = detect_period(pairs, 0.02);
    CHECK(dp.period == 4);
    CHECK(dp.ambiguous);

    // cluster count right but visit order broken
    const std::vector<double> swapped{1, 2, 3, 1, 3, 2, 1, 2, 3, 1, 2, 3};
    const PeriodDetection ds = detect_period(swapped, 0.02);
    CHECK(ds.period == 3);
    CHECK(!ds.sequence_periodic);

    CHECK_THROWS_AS(detect_period(std::vector<double>{1, 2, 3}, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(detect_period(flat, 0.0), std::invalid_argument);
}

TEST_CASE("per-lobe maxima count the branches of each spiral") {
    IntegrationSettings cfg;
    cfg.t_end = 3000.0;
    cfg.t_skip = 1500.0;
    const Trajectory tr = integrate(reference_params(7.5), kDefaultInitialState, cfg);
    const auto lobes = maxima_by_lobe(tr);
    REQUIRE(lobes[0].size() >= 8);
    REQUIRE(lobes[1].size() >= 8);
    // the alpha=7.5 attractor winds three branches around each spiral
    for (const auto& lobe : lobes) {
        const PeriodDetection det = detect_period(lobe, 0.05);
        CHECK(det.period == 3);
        CHECK(!det.ambiguous);
        CHECK(det.sequence_periodic);
    }
    const std::size_t total = lobes[0].size() + lobes[1].size();
    CHECK(total == peak_values(z_maxima(tr)).size());
}

TEST_CASE("double-spiral symmetry detector") {
    const std::vector<State> cross{{1, 1, 0}, {-1, -1, 0}, {2, 0, 1}, {-2, 0, 1}};
    CHECK(detect_double_spiral(cross, 0.05));

    // one pair broken: half the samples lose their mirror
    const std::vector<State> broken{{1, 1, 0}, {-1, -1, 0}, {2, 0, 1}, {-2, 0, 5}};
    CHECK(!detect_double_spiral(broken, 0.05));

    // everything on one side: occupancy veto
    const std::vector<State> lopsided{{1, 1, 0}, {1.5, 0.5, 0}, {2, 0, 1}, {2.5, 1, 1}};
    CHECK(!detect_double_spiral(lopsided, 0.05));

    // symmetric but concentrated on the mirror plane: neither half occupied
    const std::vector<State> planar{{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 0, 3}};
    CHECK(!detect_double_spiral(planar, 0.05));

    CHECK_THROWS_AS(detect_double_spiral(cross, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(detect_double_spiral(cross, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(detect_double_spiral(std::vector<State>{}, 0.05), std::invalid_argument);

    // the trajectory form requires a usable sample count
    IntegrationSettings tiny;
    tiny.t_end = 1.0;
    tiny.t_skip = 0.0;
    const Trajectory small = integrate(reference_params(0.5), kDefaultInitialState, tiny);
    CHECK_THROWS_WITH_AS(detect_double_spiral(small, 0.05), doctest::Contains("10^4"),
                         std::invalid_argument);
}
