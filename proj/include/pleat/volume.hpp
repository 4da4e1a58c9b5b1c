#pragma once

#include <array>
#include <functional>
#include <vector>

#include "pleat/pleated.hpp"

namespace pleat {

// Lobachevsky function L(theta) = -int_0^theta log|2 sin u| du, odd and pi-periodic.
double lobachevsky(double theta);

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

// Partial sum of (1/2) sum_{n<=terms} sin(2 n theta) / n^2 with a bound on the omitted tail.
SeriesValue lobachevsky_fourier(double theta, long terms);

// Signed volume of the ideal tetrahedron with shape z (negative for Im z < 0).
double ideal_tetra_volume(cplx z);

// Tracks each cuff's preferred endpoint along a path by continuity: at every step the fixed
// point nearest to the previous one is taken.
class TrackedPath {
public:
    TrackedPath(const RepresentationPath& path, const PantsDecomposition& pd,
                const OrientationAssignment& orientation, int steps = 256);

    PleatedRealization realization(double t) const;
    const PantsDecomposition& pd() const { return pd_; }
    const Lamination& lamination() const { return lam_; }
    const std::vector<ProjectivePoint>& endpoints_at_grid(int i) const { return zeta_.at(i); }

private:
    std::vector<ProjectivePoint> track_from(const Representation& rho, const std::vector<ProjectivePoint>& prev) const;

    RepresentationPath path_;
    PantsDecomposition pd_;
    Lamination lam_;
    std::vector<double> grid_;
    std::vector<std::vector<ProjectivePoint>> zeta_;
};

struct SchlafliSample {
    double t = 0.0;
    BendingData data;
    std::vector<double> leaf_rate;  // d theta / dt per leaf
    std::vector<double> cuff_rate;  // d theta / dt per cuff
    double derivative = 0.0;
};

inline constexpr double kAngleStep = 1e-4;

// (1/2) [sum_cuffs l_i theta_i' + sum_leaves l_trunc(e) theta'(e)] at parameter t, with
// central differences of the bending angles.
SchlafliSample schlafli_derivative(const TrackedPath& tp, double t, const TruncationConvention& conv,
                                   double h = kAngleStep);

struct VolumeChange {
    double delta = 0.0;
    double error_estimate = 0.0;
    std::vector<double> t;
    std::vector<double> derivative;
    std::vector<double> cumulative;
};

// Composite Simpson on [0, 1] with `steps` intervals plus a Richardson step against the
// half-resolution rule.
VolumeChange integrate_volume_change(const TrackedPath& tp, int steps = 64,
                                     const TruncationConvention* conv = nullptr);

struct GammaVolumeChange {
    double delta = 0.0;
    double error_estimate = 0.0;
    std::vector<double> per_orientation;
};

// Sum over all 2^(3g-3) orientations of the cuffs.
GammaVolumeChange vol_gamma_change(const RepresentationPath& path, const PantsDecomposition& pd, int steps = 64,
                                   double horoball_scale = 1.0);

// Volume change around a closed loop; throws EndpointsMismatch if the path is not closed.
GammaVolumeChange loop_defect(const RepresentationPath& path, const PantsDecomposition& pd, int steps = 64,
                              double horoball_scale = 1.0);

// Ideal tetrahedra moving in a one-parameter family, used to compare the Schlafli integral
// with volumes computed directly from shapes.
using TetraFamily = std::function<std::array<ProjectivePoint, 4>(double)>;

cplx tetra_shape(const std::array<ProjectivePoint, 4>& v);
// (1/2) sum over the six edges of l(e) times the rate of the exterior angle pi - alpha(e).
double tetra_schlafli_derivative(const TetraFamily& f, double t, double h = kAngleStep);
double integrate_tetra_schlafli(const TetraFamily& f, int steps = 64);

} // namespace pleat
