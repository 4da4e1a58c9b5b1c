#include "pleat/volume.hpp"

#include <cmath>

namespace pleat {

namespace {

// c_k = |B_2k| / (2k (2k+1)!) = 2 zeta(2k) / ((2 pi)^2k 2k (2k+1)).
std::vector<double> clausen_coefficients() {
    std::vector<double> c;
    const int terms = 40;
    for (int k = 1; k <= terms; ++k) {
        int s = 2 * k;
        double zeta = 0.0;
        if (k <= 4) {
            static const double exact[4] = {M_PI * M_PI / 6.0, std::pow(M_PI, 4) / 90.0, std::pow(M_PI, 6) / 945.0,
                                            std::pow(M_PI, 8) / 9450.0};
            zeta = exact[k - 1];
        } else {
            const int n_max = 100;
            for (int n = n_max; n >= 1; --n) zeta += std::pow(static_cast<double>(n), -s);
            double N = n_max;
            // Euler-Maclaurin tail beyond n_max.
            zeta += std::pow(N, 1 - s) / (s - 1) - 0.5 * std::pow(N, -s) + s * std::pow(N, -s - 1) / 12.0;
        }
        c.push_back(2.0 * zeta / (std::pow(2.0 * M_PI, s) * s * (s + 1)));
    }
    return c;
}

// Cl_2(x) for x in (-pi, pi].
double clausen2(double x) {
    static const std::vector<double> c = clausen_coefficients();
    if (x == 0.0) return 0.0;
    double x2 = x * x;
    double p = x;
    double sum = x - x * std::log(std::abs(x));
    for (double ck : c) {
        p *= x2;
        double term = ck * p;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

} // namespace

double lobachevsky(double theta) {
    double x = std::remainder(2.0 * theta, 2.0 * M_PI);
    return 0.5 * clausen2(x);
}

SeriesValue lobachevsky_fourier(double theta, long terms) {
    SeriesValue s;
    for (long n = terms; n >= 1; --n) {
        double dn = static_cast<double>(n);
        s.value += std::sin(2.0 * dn * theta) / (dn * dn);
    }
    s.value *= 0.5;
    s.tail_bound = 0.5 / static_cast<double>(terms);
    return s;
}

double ideal_tetra_volume(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) < kEpsNum || std::abs(z - 1.0) < kEpsNum)
        throw Error(ErrorKind::DegenerateConfiguration, "tetrahedron shape at 0, 1 or infinity");
    return lobachevsky(std::arg(z)) + lobachevsky(std::arg(1.0 / (1.0 - z))) + lobachevsky(std::arg(1.0 - 1.0 / z));
}

TrackedPath::TrackedPath(const RepresentationPath& path, const PantsDecomposition& pd,
                         const OrientationAssignment& orientation, int steps)
    : path_(path), pd_(pd), lam_(build_lamination(pd, orientation)) {
    if (steps < 1) throw Error(ErrorKind::InvalidInput, "tracking needs at least one step");
    for (int i = 0; i <= steps; ++i) grid_.push_back(static_cast<double>(i) / steps);
    zeta_.push_back(resolve_endpoints(path_.at(0.0), pd_, EndpointChoice::from_orientation(orientation)));
    for (int i = 1; i <= steps; ++i) zeta_.push_back(track_from(path_.at(grid_[i]), zeta_.back()));
}

std::vector<ProjectivePoint> TrackedPath::track_from(const Representation& rho,
                                                     const std::vector<ProjectivePoint>& prev) const {
    std::vector<ProjectivePoint> out;
    for (int c = 0; c < pd_.cuff_count(); ++c) {
        Moebius m = rho(pd_.cuffs[c].word);
        MapClass cls = classify(m);
        if (cls == MapClass::Identity || cls == MapClass::Parabolic)
            throw Error(ErrorKind::NotAdapted, "cuff " + pd_.cuffs[c].id + " became " + map_class_name(cls));
        FixedPoints fp = fixed_points(m);
        double d1 = chordal_distance(fp.first, prev[c]);
        double d2 = chordal_distance(*fp.second, prev[c]);
        if (std::min(d1, d2) >= 0.5 * std::max(d1, d2))
            throw Error(ErrorKind::OrientationTrackingFailure,
                        "fixed points of cuff " + pd_.cuffs[c].id + " are equidistant from the tracked endpoint");
        out.push_back(d1 <= d2 ? fp.first : *fp.second);
    }
    return out;
}

PleatedRealization TrackedPath::realization(double t) const {
    int n = static_cast<int>(grid_.size()) - 1;
    int i = static_cast<int>(std::lround(t * n));
    i = std::max(0, std::min(n, i));
    Representation rho = path_.at(t);
    return realize_at(rho, pd_, lam_, track_from(rho, zeta_[i]));
}

namespace {

double rate(double plus, double minus, double h) {
    double d = wrap_angle(plus - minus);
    if (std::abs(d) > M_PI / 2)
        throw Error(ErrorKind::AngleUnwrapFailure, "bending angle jumps between nearby samples");
    return d / (2.0 * h);
}

struct Simpson {
    double value, coarse;
};

Simpson simpson(const std::vector<double>& f) {
    int n = static_cast<int>(f.size()) - 1;
    double h = 1.0 / n;
    double s = f[0] + f[n], sc = f[0] + f[n];
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f[k];
    for (int k = 2; k < n; k += 2) sc += ((k / 2) % 2 ? 4.0 : 2.0) * f[k];
    return {s * h / 3.0, sc * 2.0 * h / 3.0};
}

VolumeChange integrate_samples(const std::vector<double>& f) {
    VolumeChange v;
    int n = static_cast<int>(f.size()) - 1;
    Simpson s = simpson(f);
    v.delta = s.value + (s.value - s.coarse) / 15.0;
    v.error_estimate = std::abs(s.value - s.coarse) / 15.0;
    v.derivative = f;
    double h = 1.0 / n, acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        v.t.push_back(k * h);
        if (k == 0) {
            v.cumulative.push_back(0.0);
        } else if (k % 2 == 0) {
            acc += h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
            v.cumulative.push_back(acc);
        } else {
            v.cumulative.push_back(acc + 0.5 * h * (f[k - 1] + f[k]));
        }
    }
    return v;
}

int checked_steps(int steps) {
    if (steps < 4 || steps % 4 != 0)
        throw Error(ErrorKind::InvalidInput, "step count must be a positive multiple of 4");
    return steps;
}

} // namespace

SchlafliSample schlafli_derivative(const TrackedPath& tp, double t, const TruncationConvention& conv, double h) {
    PleatedRealization r0 = tp.realization(t);
    PleatedRealization rp = tp.realization(t + h);
    PleatedRealization rm = tp.realization(t - h);
    SchlafliSample s;
    s.t = t;
    s.data = bending_data(r0, conv);
    double sum = 0.0;
    int nleaves = 3 * tp.pd().pants_count();
    for (int e = 0; e < nleaves; ++e) {
        s.leaf_rate.push_back(rate(leaf_bending(rp, e), leaf_bending(rm, e), h));
        sum += s.data.leaf_length[e] * s.leaf_rate.back();
    }
    for (int i = 0; i < tp.pd().cuff_count(); ++i) {
        s.cuff_rate.push_back(rate(cuff_bending(rp, i), cuff_bending(rm, i), h));
        sum += s.data.cuff_length[i] * s.cuff_rate.back();
    }
    s.derivative = 0.5 * sum;
    return s;
}

VolumeChange integrate_volume_change(const TrackedPath& tp, int steps, const TruncationConvention* conv) {
    checked_steps(steps);
    TruncationConvention c = conv ? *conv : TruncationConvention::uniform(tp.pd().cuff_count());
    std::vector<double> f;
    for (int k = 0; k <= steps; ++k) f.push_back(schlafli_derivative(tp, static_cast<double>(k) / steps, c).derivative);
    return integrate_samples(f);
}

GammaVolumeChange vol_gamma_change(const RepresentationPath& path, const PantsDecomposition& pd, int steps,
                                   double horoball_scale) {
    checked_steps(steps);
    GammaVolumeChange g;
    TruncationConvention conv = TruncationConvention::uniform(pd.cuff_count(), horoball_scale);
    for (const auto& o : all_orientations(pd.cuff_count())) {
        TrackedPath tp(path, pd, o, std::max(256, 4 * steps));
        VolumeChange v = integrate_volume_change(tp, steps, &conv);
        g.per_orientation.push_back(v.delta);
        g.delta += v.delta;
        g.error_estimate += v.error_estimate;
    }
    return g;
}

GammaVolumeChange loop_defect(const RepresentationPath& path, const PantsDecomposition& pd, int steps,
                              double horoball_scale) {
    if (!path.is_loop()) throw Error(ErrorKind::EndpointsMismatch, "path does not return to its starting representation");
    return vol_gamma_change(path, pd, steps, horoball_scale);
}

cplx tetra_shape(const std::array<ProjectivePoint, 4>& v) {
    return cross_ratio(v[0], v[1], v[2], v[3]);
}

namespace {

struct EdgeData {
    std::array<double, 6> angle, length;
};

EdgeData tetra_edges(const std::array<ProjectivePoint, 4>& v) {
    // For each edge (a, b) order the other two vertices so that (a, b, c, d) is an even
    // permutation; then arg of the cross ratio is the interior dihedral angle.
    static const int quads[6][4] = {{0, 1, 2, 3}, {2, 3, 0, 1}, {0, 2, 3, 1}, {1, 3, 2, 0}, {0, 3, 1, 2}, {1, 2, 0, 3}};
    EdgeData e;
    for (int i = 0; i < 6; ++i) {
        const int* q = quads[i];
        e.angle[i] = std::arg(cross_ratio(v[q[0]], v[q[1]], v[q[2]], v[q[3]]));
        e.length[i] = truncated_length(Horoball::at(v[q[0]]), Horoball::at(v[q[1]]));
    }
    return e;
}

} // namespace

double tetra_schlafli_derivative(const TetraFamily& f, double t, double h) {
    EdgeData e0 = tetra_edges(f(t)), ep = tetra_edges(f(t + h)), em = tetra_edges(f(t - h));
    double sum = 0.0;
    for (int i = 0; i < 6; ++i) sum -= e0.length[i] * rate(ep.angle[i], em.angle[i], h);
    return 0.5 * sum;
}

double integrate_tetra_schlafli(const TetraFamily& f, int steps) {
    checked_steps(steps);
    std::vector<double> vals;
    for (int k = 0; k <= steps; ++k) vals.push_back(tetra_schlafli_derivative(f, static_cast<double>(k) / steps));
    return integrate_samples(vals).delta;
}

} // namespace pleat
