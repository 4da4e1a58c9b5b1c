#include <doctest.h>

#include "arcs.hpp"
#include "pleat/pleated.hpp"
#include "pleat/random.hpp"

using namespace pleat;

namespace {

const cplx I(0.0, 1.0);
auto P = ProjectivePoint::finite;

Representation fuchsian() { return fenchel_nielsen_rep(theta_decomposition(), {2.0, 1.7, 2.3}, {0.4, -0.3, 0.1}); }

Representation bent() {
    return fenchel_nielsen_rep(theta_decomposition(), {cplx(2.0, 0.2), 1.7, cplx(2.3, -0.1)},
                               {cplx(0.4, 0.5), cplx(-0.3, -0.4), cplx(0.1, 0.3)});
}

PleatedRealization realize_with(const Representation& rho, std::uint64_t bits) {
    PantsDecomposition pd = theta_decomposition();
    OrientationAssignment o = OrientationAssignment::from_bits(bits, 3);
    return realize(rho, pd, build_lamination(pd, o), EndpointChoice::from_orientation(o));
}

} // namespace

TEST_CASE("shared endpoint test") {
    Moebius m1{2.0, 0.0, 0.0, 0.5}, m2{1.0, 1.0, 0.0, 1.0};
    SharedEndpointTest t = shared_endpoint_test(m1, m2);
    CHECK(t.flagged);
    CHECK(std::abs(t.tr2_commutator - 4.0) == 0.0);

    Moebius g{1.0, -1.0, 1.0, 1.0};  // sends infinity to 1 and 0 to -1
    Moebius m3 = Moebius::normalized(g.a, g.b, g.c, g.d) * m1 * Moebius::normalized(g.a, g.b, g.c, g.d).inverse();
    SharedEndpointTest u = shared_endpoint_test(m1, m3);
    CHECK(!u.flagged);
    FixedPoints f1 = fixed_points(m1), f3 = fixed_points(m3);
    double d = std::min({chordal_distance(f1.first, f3.first), chordal_distance(f1.first, *f3.second),
                         chordal_distance(*f1.second, f3.first), chordal_distance(*f1.second, *f3.second)});
    CHECK(d > 0.5);
}

TEST_CASE("adaptedness report") {
    PantsDecomposition pd = theta_decomposition();
    AdaptednessReport ok = check_adapted(fuchsian(), pd);
    CHECK(ok.adapted);
    CHECK(ok.pairs.size() == 6);

    Representation broken = fuchsian();
    broken.gens['a'] = Moebius::identity();
    AdaptednessReport bad = check_adapted(broken, pd);
    CHECK(!bad.adapted);
    CHECK(bad.cuff_class[0] == MapClass::Identity);
    CHECK_THROWS_AS(realize_with(broken, 0), Error);
}

TEST_CASE("Fuchsian realization is flat") {
    for (std::uint64_t bits = 0; bits < 8; ++bits) {
        PleatedRealization r = realize_with(fuchsian(), bits);
        for (const auto& p : r.pants)
            for (const Triangle* t : {&p.t1, &p.t2})
                for (const auto& v : *t)
                    if (!v.is_infinity()) CHECK(std::abs(v.value().imag()) < 1e-8);
        BendingData bd = bending_data(r, TruncationConvention::uniform(3));
        for (double a : bd.leaf_angle) CHECK(std::abs(a) < 1e-10);
        for (double a : bd.cuff_angle) CHECK(std::abs(a) < 1e-10);
        CHECK(std::abs(arc_bending(r, parse_arc("L0,L2,C0+,L3"))) < 1e-10);
    }
}

TEST_CASE("adjacent triangles share their leaf") {
    PleatedRealization r = realize_with(bent(), 5);
    for (const auto& p : r.pants) {
        // T1 = (p0, p1, p2) and T2 = (p0, M1 p2, p1) share the edge p0 p1
        CHECK(chordal_distance(p.t1[0], p.t2[0]) < 1e-12);
        CHECK(chordal_distance(p.t1[1], p.t2[2]) < 1e-12);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                CHECK(chordal_distance(p.t1[i], p.t1[j]) > kEpsSep);
                CHECK(chordal_distance(p.t2[i], p.t2[j]) > kEpsSep);
            }
    }
}

TEST_CASE("flipping the endpoint choice matches the re-oriented lamination") {
    PantsDecomposition pd = theta_decomposition();
    Representation rho = bent();
    OrientationAssignment o = OrientationAssignment::from_bits(0, 3);
    OrientationAssignment flipped = o.flipped(1);
    EndpointChoice zeta = EndpointChoice::from_orientation(o);
    zeta.select[1] = zeta.select[1] == EndpointSelect::Attracting ? EndpointSelect::Repelling : EndpointSelect::Attracting;
    PleatedRealization a = realize(rho, pd, build_lamination(pd, flipped), zeta);
    PleatedRealization b = realize(rho, pd, build_lamination(pd, flipped), EndpointChoice::from_orientation(flipped));
    for (int e = 0; e < 6; ++e) {
        auto [p, q] = a.leaf_endpoints(e);
        auto [u, v] = b.leaf_endpoints(e);
        CHECK(chordal_distance(p, u) + chordal_distance(q, v) < 1e-10);
    }
}

TEST_CASE("elliptic cuffs") {
    PantsDecomposition pd = theta_decomposition();
    Representation rho = fenchel_nielsen_rep(pd, {cplx(0.0, 1.0), 2.0, 2.0}, {cplx(0.2, 0.1), 0.0, 0.0});
    PleatedRealization r = realize_with(rho, 0);
    BendingData bd = bending_data(r, TruncationConvention::uniform(3));
    CHECK(bd.cuff_class[0] == MapClass::Elliptic);
    CHECK(bd.cuff_length[0] == 0.0);
    CHECK(std::abs(complex_length(rho(pd.cuffs[0].word)).real()) < 1e-12);
    // leaves 0 (ends 0,1) and 2 (ends 2,0) of pants 0 both end at the cuff's preferred point
    CHECK(chordal_distance(r.leaf_endpoints(0).first, r.leaf_endpoints(2).second) < 1e-12);
    for (double l : bd.leaf_length) CHECK(std::isfinite(l));
}

TEST_CASE("plaque angles") {
    ProjectivePoint zero = P(0), inf = ProjectivePoint::infinity(), one = P(1);
    CHECK(plaque_angle(zero, inf, one, P(I)) == doctest::Approx(M_PI / 2).epsilon(1e-14));
    CHECK(std::abs(plaque_angle(zero, inf, one, P(2))) < 1e-15);
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        Moebius m = random_moebius(rng);
        double a = plaque_angle(m.apply(zero), m.apply(inf), m.apply(one), m.apply(P(cplx(0.3, 0.8))));
        CHECK(std::abs(a - std::arg(cplx(0.3, 0.8))) < 1e-10);
    }
}

TEST_CASE("bending data is conjugation invariant") {
    Rng rng(12);
    PleatedRealization r = realize_with(bent(), 3);
    BendingData bd = bending_data(r, TruncationConvention::uniform(3));
    for (int n = 0; n < 20; ++n) {
        PleatedRealization rc = realize_with(bent().conjugated(random_moebius(rng)), 3);
        BendingData bc = bending_data(rc, TruncationConvention::uniform(3));
        for (int e = 0; e < 6; ++e) {
            CHECK(std::abs(wrap_angle(bd.leaf_angle[e] - bc.leaf_angle[e])) < 1e-10);
            CHECK(std::abs(bd.leaf_length[e] - bc.leaf_length[e]) < 1e-9);
        }
        for (int i = 0; i < 3; ++i) CHECK(std::abs(wrap_angle(bd.cuff_angle[i] - bc.cuff_angle[i])) < 1e-10);
    }
}

TEST_CASE("pure bend shows up on the cuff only") {
    PantsDecomposition pd = theta_decomposition();
    Representation rho = fenchel_nielsen_rep(pd, {2.0, 2.0, 2.0}, {cplx(0.0, 0.3), 0.0, 0.0});
    for (std::uint64_t bits = 0; bits < 8; ++bits) {
        BendingData bd = bending_data(realize_with(rho, bits), TruncationConvention::uniform(3));
        CHECK(bd.cuff_angle[0] == doctest::Approx(0.3).epsilon(1e-10));
        CHECK(std::abs(bd.cuff_angle[1]) < 1e-10);
        for (double a : bd.leaf_angle) CHECK(std::abs(a) < 1e-10);
    }
}

TEST_CASE("arc bending is additive") {
    std::mt19937_64 rng(77);
    for (std::uint64_t bits = 0; bits < 8; ++bits) {
        PleatedRealization r = realize_with(bent(), bits);
        for (int n = 0; n < 25; ++n) {
            TransverseArc arc = testing_arcs::random_fan_arc(r.pd, r.lamination.orientation, rng);
            double whole = arc_bending(r, arc), parts = 0.0;
            for (const auto& p : testing_arcs::random_subdivision(arc, rng)) parts += arc_bending(r, p);
            CHECK(std::abs(wrap_angle(whole - parts)) < 1e-10);
        }
    }
    PleatedRealization r = realize_with(bent(), 0);
    double a = leaf_bending(r, 0), b = leaf_bending(r, 4);
    CHECK(std::abs(wrap_angle(arc_bending(r, parse_arc("L0,L4")) - a - b)) < 1e-12);
    CHECK_THROWS_AS(arc_bending(r, parse_arc("L9")), Error);
}

TEST_CASE("horoballs and truncated lengths") {
    ProjectivePoint zero = P(0), inf = ProjectivePoint::infinity();
    CHECK(std::abs(truncated_length(Horoball::at(zero), Horoball::at(inf))) < 1e-15);
    CHECK(truncated_length(Horoball::at(zero, std::exp(-1.0)), Horoball::at(inf)) == doctest::Approx(1.0));
    Rng rng(2);
    Horoball a = Horoball::at(P(cplx(0.4, 1.0)), 0.7), b = Horoball::at(P(cplx(-2.0, 0.3)), 1.9);
    for (int i = 0; i < 20; ++i) {
        Moebius m = random_moebius(rng);
        CHECK(std::abs(truncated_length(a.moved(m), b.moved(m)) - truncated_length(a, b)) < 1e-9);
    }

    PleatedRealization r = realize_with(bent(), 6);
    TruncationConvention one = TruncationConvention::uniform(3), scaled = one;
    scaled.scale[1] = std::exp(0.5);
    for (int e = 0; e < 6; ++e) {
        int touches = 0;
        for (const auto& end : r.lamination.spiral_leaves[e].ends) touches += end.cuff == 1;
        double delta = leaf_truncated_length(r, e, scaled) - leaf_truncated_length(r, e, one);
        CHECK(delta == doctest::Approx(-0.5 * touches).epsilon(1e-10));
    }
}
