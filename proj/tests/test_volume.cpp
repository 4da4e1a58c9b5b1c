#include <doctest.h>

#include "oracles.hpp"
#include "pleat/volume.hpp"

using namespace pleat;

namespace {

const cplx I(0.0, 1.0);
const PantsDecomposition kPd = theta_decomposition();

RepresentationPath family(std::function<Representation(double)> f) {
    return sample_family(std::move(f), 16, RepresentationPath::Recipe::QuakeBend);
}

RepresentationPath bend_path(double theta0, double length = 2.0) {
    return family([=](double t) {
        return fenchel_nielsen_rep(kPd, {length, length, length}, {I * (theta0 * t), 0.0, 0.0});
    });
}

OrientationAssignment forward() { return OrientationAssignment::from_bits(0, 3); }

} // namespace

TEST_CASE("Lobachevsky function against quadrature") {
    CHECK(lobachevsky(0.0) == 0.0);
    CHECK(std::abs(lobachevsky(M_PI / 2)) < 1e-15);
    // frozen from the quadrature oracle
    CHECK(std::abs(lobachevsky(M_PI / 3) - 0.338313868803217882) < 1e-14);
    CHECK(std::abs(oracle::lobachevsky_quadrature(M_PI / 3) - 0.338313868803217882) < 1e-12);
    CHECK(std::abs(3.0 * lobachevsky(M_PI / 3) - oracle::kRegularIdealTetra) < 1e-13);
    for (int i = 0; i <= 200; ++i) {
        double th = -4.0 + 8.0 * i / 200.0;
        CHECK(std::abs(lobachevsky(th) - oracle::lobachevsky_quadrature(th)) < 1e-10);
        CHECK(std::abs(lobachevsky(-th) + lobachevsky(th)) < 1e-15);
        CHECK(std::abs(lobachevsky(th + M_PI) - lobachevsky(th)) < 1e-13);
    }
}

TEST_CASE("Fourier partial sums converge to the closed form") {
    for (double th : {0.2, 0.7, 1.3, 2.9}) {
        SeriesValue s = lobachevsky_fourier(th, 20000);
        CHECK(std::abs(s.value - lobachevsky(th)) <= s.tail_bound);
        CHECK(std::abs(s.value - lobachevsky(th)) < 1e-4);
    }
}

TEST_CASE("ideal tetrahedra") {
    CHECK(ideal_tetra_volume(std::polar(1.0, M_PI / 3)) == doctest::Approx(oracle::kRegularIdealTetra).epsilon(1e-13));
    CHECK(ideal_tetra_volume(std::polar(1.0, -M_PI / 3)) == doctest::Approx(-oracle::kRegularIdealTetra).epsilon(1e-13));
    CHECK(std::abs(ideal_tetra_volume(2.5)) < 1e-15);
    cplx z(0.3, 0.9);
    CHECK(std::abs(ideal_tetra_volume(z) - ideal_tetra_volume(1.0 / (1.0 - z))) < 1e-14);
    CHECK_THROWS_AS(ideal_tetra_volume(1.0), Error);
    CHECK_THROWS_AS(ideal_tetra_volume(0.0), Error);
}

TEST_CASE("Schlafli derivative vanishes without bending change") {
    TruncationConvention conv = TruncationConvention::uniform(3);
    RepresentationPath fuchsian = family([](double t) { return fenchel_nielsen_rep(kPd, {2.0 + t, 1.5, 2.0}, {0.0, 0.0, 0.0}); });
    RepresentationPath quake = family([](double t) { return fenchel_nielsen_rep(kPd, {2.0, 1.5, 2.0}, {0.0, 0.7 * t, 0.0}); });
    for (const auto* p : {&fuchsian, &quake}) {
        TrackedPath tp(*p, kPd, forward());
        for (double t : {0.0, 0.3, 1.0}) CHECK(std::abs(schlafli_derivative(tp, t, conv).derivative) < 1e-8);
    }
}

TEST_CASE("pure bend derivative is half the cuff length") {
    TrackedPath tp(bend_path(1.0), kPd, forward());
    TruncationConvention conv = TruncationConvention::uniform(3);
    for (double t : {0.0, 0.25, 0.9}) CHECK(schlafli_derivative(tp, t, conv).derivative == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("integrated volume change") {
    TrackedPath tp(bend_path(0.5), kPd, forward());
    VolumeChange v = integrate_volume_change(tp);
    CHECK(std::abs(v.delta - 0.5) < 0.5e-6);
    CHECK(v.t.size() == 65);
    CHECK(v.cumulative.back() == doctest::Approx(v.delta).epsilon(1e-8));

    VolumeChange fine = integrate_volume_change(tp, 128);
    CHECK(std::abs(fine.delta - v.delta) <= std::max(v.error_estimate, 1e-9));

    RepresentationPath generic = family([](double t) {
        return fenchel_nielsen_rep(kPd, {cplx(2.0, 0.3 * t), 1.8, 2.2}, {cplx(0.3, 0.4 * t), cplx(-0.1, 0.1), cplx(0.2, -0.3 * t)});
    });
    RepresentationPath reversed = generic;
    reversed.family = [f = generic.family](double t) { return f(1.0 - t); };
    double fwd = integrate_volume_change(TrackedPath(generic, kPd, forward())).delta;
    double bwd = integrate_volume_change(TrackedPath(reversed, kPd, forward())).delta;
    CHECK(std::abs(fwd) > 1e-3);
    CHECK(std::abs(fwd + bwd) < 1e-8);

    // concatenation: [0, 1/2] followed by [1/2, 1]
    RepresentationPath first = generic, second = generic;
    first.family = [f = generic.family](double t) { return f(0.5 * t); };
    second.family = [f = generic.family](double t) { return f(0.5 + 0.5 * t); };
    double a = integrate_volume_change(TrackedPath(first, kPd, forward())).delta;
    double b = integrate_volume_change(TrackedPath(second, kPd, forward())).delta;
    CHECK(std::abs(a + b - fwd) < 1e-8);

    RepresentationPath constant = family([](double) { return fenchel_nielsen_rep(kPd, {2.0, 2.0, 2.0}, {I, 0.0, 0.0}); });
    VolumeChange c = integrate_volume_change(TrackedPath(constant, kPd, forward()));
    for (double d : c.derivative) CHECK(std::abs(d) < 1e-12);

    CHECK_THROWS_AS(integrate_volume_change(tp, 30), Error);
}

TEST_CASE("horoball scale does not change the derivative") {
    RepresentationPath p = family([](double t) {
        return fenchel_nielsen_rep(kPd, {cplx(0.3 - 0.6 * t, 1.0), 2.0, 2.0}, {cplx(0.2, 0.1), 0.0, cplx(0.0, 0.2)});
    });
    for (std::uint64_t bits : {0u, 5u}) {
        TrackedPath tp(p, kPd, OrientationAssignment::from_bits(bits, 3));
        for (double t : {0.2, 0.5, 0.8}) {
            double base = schlafli_derivative(tp, t, TruncationConvention::uniform(3)).derivative;
            for (double s : {std::exp(1.0), std::exp(-1.0)})
                CHECK(std::abs(schlafli_derivative(tp, t, TruncationConvention::uniform(3, s)).derivative - base) < 1e-8);
            TruncationConvention mixed{{std::exp(1.0), 1.0, std::exp(-1.0)}};
            CHECK(std::abs(schlafli_derivative(tp, t, mixed).derivative - base) < 1e-8);
        }
    }
}

TEST_CASE("orientation sum") {
    GammaVolumeChange g = vol_gamma_change(bend_path(0.5), kPd, 16);
    CHECK(g.per_orientation.size() == 8);
    for (double v : g.per_orientation) CHECK(v == doctest::Approx(0.5).epsilon(1e-6));

    RepresentationPath fuchsian = family([](double t) { return fenchel_nielsen_rep(kPd, {2.0, 1.5 + t, 2.0}, {0.3 * t, 0.0, 0.0}); });
    CHECK(std::abs(vol_gamma_change(fuchsian, kPd, 16).delta) < 1e-10);

    CHECK_THROWS_AS(loop_defect(bend_path(0.5), kPd, 16), Error);
}

TEST_CASE("tetrahedron family Schlafli integral") {
    TetraFamily f = [](double t) {
        return std::array<ProjectivePoint, 4>{ProjectivePoint::finite(0), ProjectivePoint::infinity(),
                                              ProjectivePoint::finite(1),
                                              ProjectivePoint::finite(std::polar(1.3, 0.4 + 1.5 * t))};
    };
    double direct = ideal_tetra_volume(tetra_shape(f(1.0))) - ideal_tetra_volume(tetra_shape(f(0.0)));
    CHECK(std::abs(integrate_tetra_schlafli(f) - direct) < 1e-6);
}
