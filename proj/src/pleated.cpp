#include "pleat/pleated.hpp"

#include <cmath>

namespace pleat {

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    return a;
}

EndpointChoice EndpointChoice::from_orientation(const OrientationAssignment& o) {
    EndpointChoice z;
    for (bool f : o.forward) z.select.push_back(f ? EndpointSelect::Attracting : EndpointSelect::Repelling);
    return z;
}

std::vector<ProjectivePoint> resolve_endpoints(const Representation& rho, const PantsDecomposition& pd,
                                               const EndpointChoice& zeta, double eps_class) {
    if (static_cast<int>(zeta.select.size()) != pd.cuff_count())
        throw Error(ErrorKind::InvalidInput, "endpoint choice size does not match cuff count");
    std::vector<ProjectivePoint> out;
    for (int i = 0; i < pd.cuff_count(); ++i) {
        Moebius m = rho(pd.cuffs[i].word);
        MapClass cls = classify(m, eps_class);
        if (cls == MapClass::Identity || cls == MapClass::Parabolic)
            throw Error(ErrorKind::NotAdapted, "cuff " + pd.cuffs[i].id + " is " + map_class_name(cls));
        FixedPoints fp = fixed_points(m, eps_class);
        bool first = zeta.select[i] == EndpointSelect::Attracting || zeta.select[i] == EndpointSelect::Elliptic0;
        out.push_back(first ? fp.first : *fp.second);
    }
    return out;
}

SharedEndpointTest shared_endpoint_test(const Moebius& m, const Moebius& n, double eps_class) {
    Moebius a = Moebius::normalized(m.a, m.b, m.c, m.d);
    Moebius b = Moebius::normalized(n.a, n.b, n.c, n.d);
    SharedEndpointTest t;
    t.tr2_commutator = commutator(a, b).tr2();
    t.flagged = std::abs(t.tr2_commutator - 4.0) < eps_class;
    return t;
}

AdaptednessReport check_adapted(const Representation& rho, const PantsDecomposition& pd, double eps_class) {
    AdaptednessReport rep;
    for (int i = 0; i < pd.cuff_count(); ++i) {
        MapClass cls = classify(rho(pd.cuffs[i].word), eps_class);
        rep.cuff_class.push_back(cls);
        if (cls == MapClass::Identity || cls == MapClass::Parabolic) {
            rep.adapted = false;
            rep.reasons.push_back("cuff " + pd.cuffs[i].id + " is " + map_class_name(cls));
        }
    }
    for (int j = 0; j < pd.pants_count(); ++j)
        for (int k = 0; k < 3; ++k) {
            int k2 = (k + 1) % 3;
            AdaptednessReport::Pair p;
            p.pants = j;
            p.end_a = k;
            p.end_b = k2;
            p.test = shared_endpoint_test(rho(pd.end_word(j, k)), rho(pd.end_word(j, k2)), eps_class);
            if (p.test.flagged) {
                rep.adapted = false;
                rep.reasons.push_back("pants " + std::to_string(j) + " ends " + std::to_string(k) + "," +
                                      std::to_string(k2) + " share a fixed point");
            }
            rep.pairs.push_back(p);
        }
    return rep;
}

std::pair<ProjectivePoint, ProjectivePoint> PleatedRealization::leaf_endpoints(int leaf) const {
    const PantsRealization& p = pants.at(leaf / 3);
    int k = leaf % 3;
    return {p.vertex[k], p.vertex[(k + 1) % 3]};
}

PleatedRealization realize_at(const Representation& rho, const PantsDecomposition& pd, const Lamination& lam,
                              const std::vector<ProjectivePoint>& zeta, double eps_sep) {
    AdaptednessReport adapted = check_adapted(rho, pd);
    if (!adapted.adapted) throw Error(ErrorKind::NotAdapted, adapted.reasons.front());
    PleatedRealization r;
    r.pd = pd;
    r.lamination = lam;
    r.rho = rho;
    r.zeta = zeta;
    std::vector<Moebius> cuff_map;
    for (const auto& c : pd.cuffs) {
        Moebius m = rho(c.word);
        cuff_map.push_back(Moebius::normalized(m.a, m.b, m.c, m.d));
    }
    for (int j = 0; j < pd.pants_count(); ++j) {
        PantsRealization pr;
        for (int k = 0; k < 3; ++k) {
            const CuffEnd& e = pd.pants[j].ends[k];
            Moebius g = rho(e.conjugator);
            g = Moebius::normalized(g.a, g.b, g.c, g.d);
            const Moebius& m = cuff_map[e.cuff];
            pr.conjugator[k] = g;
            pr.boundary[k] = g * (e.inverted ? m.inverse() : m) * g.inverse();
            pr.vertex[k] = g.apply(zeta[e.cuff]);
        }
        if (!projectively_equal(pr.boundary[0] * pr.boundary[1] * pr.boundary[2], Moebius::identity(), kEpsRel))
            throw Error(ErrorKind::InvalidDecomposition,
                        "boundary elements of pants " + std::to_string(j) + " do not multiply to 1");
        pr.t1 = {pr.vertex[0], pr.vertex[1], pr.vertex[2]};
        pr.t2 = {pr.vertex[0], pr.boundary[1].apply(pr.vertex[2]), pr.vertex[1]};
        for (const Triangle* t : {&pr.t1, &pr.t2})
            for (int a = 0; a < 3; ++a)
                if (chordal_distance((*t)[a], (*t)[(a + 1) % 3]) < eps_sep)
                    throw Error(ErrorKind::DegenerateTriangle, "plaque of pants " + std::to_string(j) + " collapses");
        r.pants.push_back(pr);
    }
    return r;
}

PleatedRealization realize(const Representation& rho, const PantsDecomposition& pd, const Lamination& lam,
                           const EndpointChoice& zeta, double eps_sep) {
    return realize_at(rho, pd, lam, resolve_endpoints(rho, pd, zeta), eps_sep);
}

double plaque_angle(const ProjectivePoint& x, const ProjectivePoint& y, const ProjectivePoint& u,
                    const ProjectivePoint& v) {
    return std::arg(cross_ratio(x, y, u, v));
}

double leaf_bending(const PleatedRealization& r, int leaf) {
    const PantsRealization& p = r.pants.at(leaf / 3);
    int k = leaf % 3, k1 = (k + 1) % 3, k2 = (k + 2) % 3;
    cplx w = cross_ratio(p.vertex[k], p.vertex[k1], p.vertex[k2], p.boundary[k1].apply(p.vertex[k2]));
    // Adjacent plaques of an unbent surface give w < 0. The sign makes the fold agree with
    // the turning of fan plaques measured at a cuff endpoint.
    return std::arg(-1.0 / w);
}

namespace {

Moebius power(const Moebius& m, int n) {
    Moebius base = n >= 0 ? m : m.inverse();
    Moebius out = Moebius::identity();
    for (int i = 0; i < std::abs(n); ++i) out = out * base;
    return out;
}

// Link segment (u, v) of fan plaque n at end k of a pants: the plaque is (p_k, u, v),
// positively ordered. Plaques 2m and 2m+1 are M_k^-m T1 and M_k^-m T2.
std::pair<ProjectivePoint, ProjectivePoint> fan_segment(const PantsRealization& p, int k, int n) {
    int m = (n >= 0) ? n / 2 : -((-n + 1) / 2);
    bool odd = (n - 2 * m) == 1;
    Moebius g = power(p.boundary[k], -m);
    int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
    if (!odd) return {g.apply(p.vertex[k1]), g.apply(p.vertex[k2])};
    return {g.apply(p.boundary[k1].apply(p.vertex[k2])), g.apply(p.vertex[k1])};
}

// Leaf orbit (as k index within the pants) separating fan plaques n and n+1 at end k.
int fan_leaf_between(int k, int n) {
    int parity = ((n % 2) + 2) % 2;
    return parity == 0 ? k : (k + 2) % 3;
}

// Direction of the segment of fan plaque n, read at the base lift of the cuff.
cplx link_direction(const PleatedRealization& r, int j, int k, int n) {
    const PantsRealization& p = r.pants[j];
    auto [u, v] = fan_segment(p, k, n);
    Moebius back = p.conjugator[k].inverse();
    Moebius to_inf = unitary_to_infinity(r.zeta[r.pd.pants[j].ends[k].cuff]);
    ProjectivePoint a = to_inf.apply(back.apply(u)), b = to_inf.apply(back.apply(v));
    return b.value() - a.value();
}

int outward_step(const PleatedRealization& r, int j, int k) {
    return end_prefers_attracting(r.pd, r.lamination.orientation, j, k) ? -1 : 1;
}

double cuff_sign(const PleatedRealization& r, int cuff) {
    return r.lamination.orientation.forward.at(cuff) ? 1.0 : -1.0;
}

// Walks outward from the base plaque across the given leaves (nearest the cuff first) as
// long as they continue the fan; returns the fan position reached and leaves consumed.
std::pair<int, std::size_t> fan_walk(const PleatedRealization& r, int j, int k, const std::vector<int>& leaves) {
    int s = outward_step(r, j, k);
    int n = 0;
    std::size_t used = 0;
    for (int leaf : leaves) {
        if (leaf / 3 != j) break;
        int between = s > 0 ? fan_leaf_between(k, n) : fan_leaf_between(k, n - 1);
        if (leaf % 3 != between) break;
        n += s;
        ++used;
    }
    return {n, used};
}

double cuff_piece_angle(const PleatedRealization& r, int cuff, int nx, int ny) {
    auto ends = r.pd.cuff_ends(cuff);
    cplx dx = link_direction(r, ends[0].first, ends[0].second, nx);
    cplx dy = link_direction(r, ends[1].first, ends[1].second, ny);
    return cuff_sign(r, cuff) * std::arg(dy / dx);
}

} // namespace

double cuff_bending(const PleatedRealization& r, int cuff) {
    return cuff_piece_angle(r, cuff, 0, 0);
}

double arc_bending(const PleatedRealization& r, const TransverseArc& arc) {
    int nleaves = 3 * r.pd.pants_count();
    for (const auto& c : arc.crossings) {
        if (c.kind == Crossing::Kind::Leaf && (c.id < 0 || c.id >= nleaves))
            throw Error(ErrorKind::InvalidArc, "unknown spiral leaf " + std::to_string(c.id));
        if (c.kind == Crossing::Kind::Cuff && (c.id < 0 || c.id >= r.pd.cuff_count()))
            throw Error(ErrorKind::InvalidArc, "unknown cuff " + std::to_string(c.id));
    }
    double total = 0.0;
    for (const auto& piece : subdivide_arc(arc)) {
        const auto& cs = piece.crossings;
        std::size_t ci = cs.size();
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (cs[i].kind == Crossing::Kind::Cuff) ci = i;
        if (ci == cs.size()) {
            for (const auto& c : cs) total += leaf_bending(r, c.id);
            continue;
        }
        const Crossing& cc = cs[ci];
        auto ends = r.pd.cuff_ends(cc.id);
        auto start = cc.forward ? ends[0] : ends[1];
        auto finish = cc.forward ? ends[1] : ends[0];
        std::vector<int> before, after;
        for (std::size_t i = ci; i-- > 0;) before.push_back(cs[i].id);
        for (std::size_t i = ci + 1; i < cs.size(); ++i) after.push_back(cs[i].id);
        auto [n_start, used_before] = fan_walk(r, start.first, start.second, before);
        auto [n_finish, used_after] = fan_walk(r, finish.first, finish.second, after);
        int nx = cc.forward ? n_start : n_finish;
        int ny = cc.forward ? n_finish : n_start;
        total += cuff_piece_angle(r, cc.id, nx, ny);
        for (std::size_t i = used_before; i < before.size(); ++i) total += leaf_bending(r, before[i]);
        for (std::size_t i = used_after; i < after.size(); ++i) total += leaf_bending(r, after[i]);
    }
    return wrap_angle(total);
}

Horoball Horoball::at(const ProjectivePoint& centre, double scale) {
    ProjectivePoint c = centre.normalized();
    double f = 1.0 / std::sqrt(scale);
    return {c.z1 * f, c.z2 * f};
}

Horoball Horoball::moved(const Moebius& m0) const {
    Moebius m = Moebius::normalized(m0.a, m0.b, m0.c, m0.d);
    return {m.a * v1 + m.b * v2, m.c * v1 + m.d * v2};
}

double truncated_length(const Horoball& a, const Horoball& b) {
    cplx d = a.v1 * b.v2 - a.v2 * b.v1;
    if (std::abs(d) == 0.0) throw Error(ErrorKind::DegenerateConfiguration, "horoballs share their centre");
    return 2.0 * std::log(std::abs(d));
}

namespace {

// Base horoball at the preferred endpoint of a cuff: the horoball of the base plaque on the
// non-inverted side that is tangent-normalized against the plaque's other two vertices.
Horoball base_horoball(const PleatedRealization& r, int cuff, double scale) {
    auto ends = r.pd.cuff_ends(cuff);
    const PantsRealization& p = r.pants[ends[0].first];
    int k = ends[0].second;
    auto [u, v] = fan_segment(p, k, 0);
    Moebius back = p.conjugator[k].inverse();
    ProjectivePoint z = r.zeta[cuff].normalized();
    ProjectivePoint uu = back.apply(u).normalized(), vv = back.apply(v).normalized();
    double a = std::sqrt(std::abs(det2(uu, vv)) / (std::abs(det2(z, uu)) * std::abs(det2(z, vv))));
    double f = a / std::sqrt(scale);
    return {z.z1 * f, z.z2 * f};
}

} // namespace

double leaf_truncated_length(const PleatedRealization& r, int leaf, const TruncationConvention& conv) {
    int j = leaf / 3, k = leaf % 3, k1 = (k + 1) % 3;
    const PantsRealization& p = r.pants.at(j);
    int c0 = r.pd.pants[j].ends[k].cuff, c1 = r.pd.pants[j].ends[k1].cuff;
    Horoball h0 = base_horoball(r, c0, conv.scale.at(c0)).moved(p.conjugator[k]);
    Horoball h1 = base_horoball(r, c1, conv.scale.at(c1)).moved(p.conjugator[k1]);
    return truncated_length(h0, h1);
}

BendingData bending_data(const PleatedRealization& r, const TruncationConvention& conv) {
    BendingData b;
    int nleaves = 3 * r.pd.pants_count();
    for (int e = 0; e < nleaves; ++e) {
        b.leaf_angle.push_back(leaf_bending(r, e));
        b.leaf_length.push_back(leaf_truncated_length(r, e, conv));
    }
    for (int i = 0; i < r.pd.cuff_count(); ++i) {
        b.cuff_angle.push_back(cuff_bending(r, i));
        Moebius m = r.rho(r.pd.cuffs[i].word);
        MapClass cls = classify(m);
        b.cuff_class.push_back(cls);
        b.cuff_length.push_back(cls == MapClass::Loxodromic ? complex_length(m).real() : 0.0);
    }
    return b;
}

} // namespace pleat
