#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>

#include "pleat/errors.hpp"

namespace pleat {

using cplx = std::complex<double>;

inline constexpr double kEpsNum = 1e-10;
inline constexpr double kEpsClass = 1e-9;

// Point of CP^1 in homogeneous coordinates (z1 : z2). Infinity is (1 : 0).
struct ProjectivePoint {
    cplx z1{0.0}, z2{1.0};

    static ProjectivePoint finite(cplx z) { return {z, 1.0}; }
    static ProjectivePoint infinity() { return {1.0, 0.0}; }

    bool is_infinity(double eps = kEpsNum) const;
    // Affine value z1/z2; only meaningful away from infinity.
    cplx value() const { return z1 / z2; }
    ProjectivePoint normalized() const;
};

// Chordal distance on the unit sphere, 2|z1 w2 - z2 w1| / (|z| |w|), so at most 2.
double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q);

// z1 w2 - z2 w1
cplx det2(const ProjectivePoint& p, const ProjectivePoint& q);

enum class MapClass { Identity, Parabolic, Elliptic, Loxodromic };
const char* map_class_name(MapClass c);

struct Moebius {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static Moebius identity() { return {}; }
    // Scales to determinant one; throws DegenerateMap if the determinant vanishes.
    static Moebius normalized(cplx a, cplx b, cplx c, cplx d);
    static Moebius diagonal(cplx lambda) { return {lambda, 0.0, 0.0, 1.0 / lambda}; }

    cplx det() const { return a * d - b * c; }
    cplx tr() const { return a + d; }
    cplx tr2() const { return tr() * tr(); }

    Moebius inverse() const { return {d, -b, -c, a}; }
    Moebius operator*(const Moebius& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Moebius operator-() const { return {-a, -b, -c, -d}; }

    ProjectivePoint apply(const ProjectivePoint& p) const;
    cplx apply(cplx z) const { return (a * z + b) / (c * z + d); }

    // Frobenius norm of the 2x2 matrix.
    double norm() const;
    std::array<cplx, 4> entries() const { return {a, b, c, d}; }
};

// Equality in PSL(2,C): min over the sign of the entrywise distance.
double projective_distance(const Moebius& m, const Moebius& n);
bool projectively_equal(const Moebius& m, const Moebius& n, double eps = kEpsNum);

MapClass classify(const Moebius& m, double eps = kEpsClass);

struct FixedPoints {
    ProjectivePoint first;
    std::optional<ProjectivePoint> second;
};

// Loxodromic: attracting point first. Elliptic: the point whose eigenvalue mu has
// arg(mu^2) in (0, pi] comes first. Parabolic: single point.
FixedPoints fixed_points(const Moebius& m, double eps = kEpsClass);

// Derivative of the map at a fixed point; modulus < 1 means attracting.
cplx multiplier_at(const Moebius& m, const ProjectivePoint& p);

// Complex translation length: 4 cosh^2(lambda/2) = tr^2, Re >= 0, Im in (-pi, pi].
// Elliptic maps get Im in [0, pi].
cplx complex_length(const Moebius& m, double eps = kEpsClass);

// Cross ratio normalized so that (0, inf, 1, z) -> z.
cplx cross_ratio(const ProjectivePoint& p1, const ProjectivePoint& p2,
                 const ProjectivePoint& p3, const ProjectivePoint& p4, double eps = kEpsNum);

// The map sending p1, p2, p3 to 0, inf, 1.
Moebius map_to_standard(const ProjectivePoint& p1, const ProjectivePoint& p2,
                        const ProjectivePoint& p3);

// A unitary map sending p to infinity.
Moebius unitary_to_infinity(const ProjectivePoint& p);

// Commutator [m, n] = m n m^-1 n^-1.
Moebius commutator(const Moebius& m, const Moebius& n);

std::string to_string(const Moebius& m);

} // namespace pleat
