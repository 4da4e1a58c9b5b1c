#include "pleat/moebius.hpp"

#include <cmath>
#include <sstream>
#include <iomanip>

namespace pleat {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::IdentityMap: return "IdentityMap";
    case ErrorKind::DegenerateLength: return "DegenerateLength";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::InvalidArc: return "InvalidArc";
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::RelatorViolated: return "RelatorViolated";
    case ErrorKind::ReducibleRepresentation: return "ReducibleRepresentation";
    case ErrorKind::NonHyperbolicParameters: return "NonHyperbolicParameters";
    case ErrorKind::NotAdapted: return "NotAdapted";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::AngleUnwrapFailure: return "AngleUnwrapFailure";
    case ErrorKind::OrientationTrackingFailure: return "OrientationTrackingFailure";
    case ErrorKind::EndpointsMismatch: return "EndpointsMismatch";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Error";
}

const char* map_class_name(MapClass c) {
    switch (c) {
    case MapClass::Identity: return "identity";
    case MapClass::Parabolic: return "parabolic";
    case MapClass::Elliptic: return "elliptic";
    case MapClass::Loxodromic: return "loxodromic";
    }
    return "?";
}

bool ProjectivePoint::is_infinity(double eps) const {
    return std::abs(z2) <= eps * std::abs(z1);
}

ProjectivePoint ProjectivePoint::normalized() const {
    double n = std::sqrt(std::norm(z1) + std::norm(z2));
    return {z1 / n, z2 / n};
}

cplx det2(const ProjectivePoint& p, const ProjectivePoint& q) {
    return p.z1 * q.z2 - p.z2 * q.z1;
}

double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
    double np = std::sqrt(std::norm(p.z1) + std::norm(p.z2));
    double nq = std::sqrt(std::norm(q.z1) + std::norm(q.z2));
    return 2.0 * std::abs(det2(p, q)) / (np * nq);
}

Moebius Moebius::normalized(cplx a, cplx b, cplx c, cplx d) {
    cplx det = a * d - b * c;
    double scale = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
    if (scale == 0.0 || std::abs(det) <= kEpsNum * scale * scale)
        throw Error(ErrorKind::DegenerateMap, "determinant is zero");
    cplx s = std::sqrt(det);
    return {a / s, b / s, c / s, d / s};
}

ProjectivePoint Moebius::apply(const ProjectivePoint& p) const {
    return ProjectivePoint{a * p.z1 + b * p.z2, c * p.z1 + d * p.z2}.normalized();
}

double Moebius::norm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
}

double projective_distance(const Moebius& m, const Moebius& n) {
    auto dist = [](const Moebius& x, const Moebius& y) {
        return std::sqrt(std::norm(x.a - y.a) + std::norm(x.b - y.b) + std::norm(x.c - y.c) +
                         std::norm(x.d - y.d));
    };
    return std::min(dist(m, n), dist(m, -n));
}

bool projectively_equal(const Moebius& m, const Moebius& n, double eps) {
    return projective_distance(m, n) <= eps * std::max(1.0, std::max(m.norm(), n.norm()));
}

MapClass classify(const Moebius& m, double eps) {
    cplx det = m.det();
    double scale = std::max(1.0, m.norm());
    if (std::abs(m.b) <= eps * scale && std::abs(m.c) <= eps * scale &&
        std::abs(m.a - m.d) <= eps * scale)
        return MapClass::Identity;
    cplx t2 = m.tr2() / det;
    if (std::abs(t2 - 4.0) < eps) return MapClass::Parabolic;
    if (std::abs(t2.imag()) < eps && t2.real() > -eps && t2.real() < 4.0)
        return MapClass::Elliptic;
    return MapClass::Loxodromic;
}

namespace {

struct Eigen2 {
    cplx mu;
    ProjectivePoint v;
};

ProjectivePoint eigenvector(const Moebius& m, cplx mu) {
    ProjectivePoint v1{m.b, mu - m.a};
    ProjectivePoint v2{mu - m.d, m.c};
    double n1 = std::norm(v1.z1) + std::norm(v1.z2);
    double n2 = std::norm(v2.z1) + std::norm(v2.z2);
    return (n1 >= n2 ? v1 : v2).normalized();
}

std::pair<Eigen2, Eigen2> eigen_pairs(const Moebius& m0) {
    Moebius m = Moebius::normalized(m0.a, m0.b, m0.c, m0.d);
    cplx tr = m.tr();
    cplx disc = std::sqrt(tr * tr - 4.0);
    // Choose the sum with larger modulus to avoid cancellation, get the other from mu1 mu2 = 1.
    cplx mu1 = (std::abs(tr + disc) >= std::abs(tr - disc)) ? (tr + disc) / 2.0 : (tr - disc) / 2.0;
    cplx mu2 = 1.0 / mu1;
    return {{mu1, eigenvector(m, mu1)}, {mu2, eigenvector(m, mu2)}};
}

} // namespace

FixedPoints fixed_points(const Moebius& m, double eps) {
    MapClass cls = classify(m, eps);
    if (cls == MapClass::Identity) throw Error(ErrorKind::IdentityMap, "identity has no isolated fixed points");
    auto [e1, e2] = eigen_pairs(m);
    if (cls == MapClass::Parabolic) {
        Moebius n = Moebius::normalized(m.a, m.b, m.c, m.d);
        cplx mu = n.tr() / 2.0;
        return {eigenvector(n, mu), std::nullopt};
    }
    if (cls == MapClass::Loxodromic) {
        if (std::abs(e1.mu) >= std::abs(e2.mu)) return {e1.v, e2.v};
        return {e2.v, e1.v};
    }
    double a1 = std::arg(e1.mu * e1.mu);
    double a2 = std::arg(e2.mu * e2.mu);
    bool first1;
    if (std::abs(a1 - a2) > eps) {
        first1 = a1 > a2;
    } else {
        // Half turn: both eigenvalues square to -1. Order by distance from 0.
        ProjectivePoint zero = ProjectivePoint::finite(0.0);
        first1 = chordal_distance(e1.v, zero) <= chordal_distance(e2.v, zero);
    }
    return first1 ? FixedPoints{e1.v, e2.v} : FixedPoints{e2.v, e1.v};
}

cplx multiplier_at(const Moebius& m0, const ProjectivePoint& p) {
    Moebius m = Moebius::normalized(m0.a, m0.b, m0.c, m0.d);
    // Eigenvalue of (z1, z2): (c z1 + d z2) / z2 or (a z1 + b z2) / z1.
    cplx mu = std::abs(p.z2) >= std::abs(p.z1) ? (m.c * p.z1 + m.d * p.z2) / p.z2
                                                : (m.a * p.z1 + m.b * p.z2) / p.z1;
    return 1.0 / (mu * mu);
}

cplx complex_length(const Moebius& m, double eps) {
    MapClass cls = classify(m, eps);
    if (cls == MapClass::Identity || cls == MapClass::Parabolic)
        throw Error(ErrorKind::DegenerateLength, std::string("complex length of a ") + map_class_name(cls) + " map");
    auto [e1, e2] = eigen_pairs(m);
    cplx mu = std::abs(e1.mu) >= std::abs(e2.mu) ? e1.mu : e2.mu;
    cplx lambda = std::log(mu * mu);
    if (cls == MapClass::Elliptic) return {0.0, std::abs(lambda.imag())};
    return lambda;
}

cplx cross_ratio(const ProjectivePoint& p1, const ProjectivePoint& p2,
                 const ProjectivePoint& p3, const ProjectivePoint& p4, double eps) {
    const ProjectivePoint* pts[4] = {&p1, &p2, &p3, &p4};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (chordal_distance(*pts[i], *pts[j]) < eps)
                throw Error(ErrorKind::DegenerateConfiguration, "coincident points in cross ratio");
    return (det2(p4, p1) * det2(p3, p2)) / (det2(p4, p2) * det2(p3, p1));
}

Moebius map_to_standard(const ProjectivePoint& p1, const ProjectivePoint& p2,
                        const ProjectivePoint& p3) {
    cplx k1 = det2(p3, p2), k2 = det2(p3, p1);
    return Moebius::normalized(k1 * p1.z2, -k1 * p1.z1, k2 * p2.z2, -k2 * p2.z1);
}

Moebius unitary_to_infinity(const ProjectivePoint& p0) {
    ProjectivePoint p = p0.normalized();
    return {std::conj(p.z1), std::conj(p.z2), -p.z2, p.z1};
}

Moebius commutator(const Moebius& m, const Moebius& n) {
    return m * n * m.inverse() * n.inverse();
}

std::string to_string(const Moebius& m) {
    std::ostringstream os;
    os << std::setprecision(15) << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
    return os.str();
}

} // namespace pleat
