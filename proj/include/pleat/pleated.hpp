#pragma once

#include <array>
#include <string>
#include <vector>

#include "pleat/representation.hpp"
#include "pleat/topology.hpp"

namespace pleat {

inline constexpr double kEpsSep = 1e-9;

enum class EndpointSelect { Attracting, Repelling, Elliptic0, Elliptic1 };

struct EndpointChoice {
    std::vector<EndpointSelect> select;

    // Forward cuffs pick the attracting (or first elliptic) point, backward the other.
    static EndpointChoice from_orientation(const OrientationAssignment& o);
};

// Fixed points of rho(cuff word) picked by the choice; throws NotAdapted for identity or
// parabolic cuffs.
std::vector<ProjectivePoint> resolve_endpoints(const Representation& rho, const PantsDecomposition& pd,
                                               const EndpointChoice& zeta, double eps_class = kEpsClass);

struct SharedEndpointTest {
    cplx tr2_commutator;
    bool flagged = false;
};

SharedEndpointTest shared_endpoint_test(const Moebius& m, const Moebius& n, double eps_class = kEpsClass);

struct AdaptednessReport {
    std::vector<MapClass> cuff_class;
    struct Pair {
        int pants = 0, end_a = 0, end_b = 0;
        SharedEndpointTest test;
    };
    std::vector<Pair> pairs;
    bool adapted = true;
    std::vector<std::string> reasons;
};

// Cuff images must be neither identity nor parabolic, and the boundary elements of any two
// ends of one pants must not share a fixed point.
AdaptednessReport check_adapted(const Representation& rho, const PantsDecomposition& pd,
                                double eps_class = kEpsClass);

using Triangle = std::array<ProjectivePoint, 3>;

struct PantsRealization {
    std::array<Moebius, 3> boundary;      // M0 M1 M2 = 1
    std::array<ProjectivePoint, 3> vertex; // preferred endpoint of each end
    std::array<Moebius, 3> conjugator;    // rho(conjugator word) of each end
    Triangle t1, t2;                       // positively ordered ideal triangles
};

struct PleatedRealization {
    PantsDecomposition pd;
    Lamination lamination;
    Representation rho;
    std::vector<ProjectivePoint> zeta;
    std::vector<PantsRealization> pants;

    // Endpoints of spiral leaf id = 3 j + k: vertices k and k+1 of pants j.
    std::pair<ProjectivePoint, ProjectivePoint> leaf_endpoints(int leaf) const;
};

PleatedRealization realize(const Representation& rho, const PantsDecomposition& pd, const Lamination& lam,
                           const EndpointChoice& zeta, double eps_sep = kEpsSep);
PleatedRealization realize_at(const Representation& rho, const PantsDecomposition& pd, const Lamination& lam,
                              const std::vector<ProjectivePoint>& zeta, double eps_sep = kEpsSep);

// Angle arg(w) in (-pi, pi] where the cross ratio sends the shared edge (x, y) to (0, inf)
// and the opposite vertices u, v to 1 and w. Zero for coplanar plaques on the same side.
double plaque_angle(const ProjectivePoint& x, const ProjectivePoint& y, const ProjectivePoint& u,
                    const ProjectivePoint& v);

// Exterior bending angle across a spiral leaf: zero when the two plaques are coplanar.
double leaf_bending(const PleatedRealization& r, int leaf);

// Bending across cuff i, measured at its preferred endpoint between the base plaques of the
// two sides, signed so that it does not depend on the side it is read from.
double cuff_bending(const PleatedRealization& r, int cuff);

// Bending cocycle on an arc, reduced to (-pi, pi].
double arc_bending(const PleatedRealization& r, const TransverseArc& arc);

// Horoball given by a spinor v: centre [v], and larger |v| means a smaller horoball.
struct Horoball {
    cplx v1{1.0}, v2{0.0};

    // Scale s = 1 is the unit horoball after normalizing the centre's coordinates;
    // scaling s by e^delta grows the horoball and shortens truncated lengths by delta.
    static Horoball at(const ProjectivePoint& centre, double scale = 1.0);
    Horoball moved(const Moebius& m) const;
    ProjectivePoint centre() const { return ProjectivePoint{v1, v2}.normalized(); }
};

// Signed length of the geodesic between two horoball centres outside both horoballs.
double truncated_length(const Horoball& a, const Horoball& b);

// Per-cuff scale of the base horoball at each cuff's preferred endpoint. The scale-one
// horoball is the one determined by the base plaque on the non-inverted side.
struct TruncationConvention {
    std::vector<double> scale;

    static TruncationConvention uniform(int cuffs, double s = 1.0) { return {std::vector<double>(cuffs, s)}; }
};

double leaf_truncated_length(const PleatedRealization& r, int leaf, const TruncationConvention& conv);

struct BendingData {
    std::vector<double> leaf_angle;
    std::vector<double> leaf_length;
    std::vector<double> cuff_angle;
    std::vector<double> cuff_length;  // Re of the complex length, zero for elliptic cuffs
    std::vector<MapClass> cuff_class;
};

BendingData bending_data(const PleatedRealization& r, const TruncationConvention& conv);

double wrap_angle(double a);

} // namespace pleat
