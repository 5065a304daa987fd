#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "soapfilm/graph.hpp"
#include "soapfilm/surface.hpp"

namespace soapfilm {

// How far a surface is from being minimal, measured several ways:
// delta_inf = sup|H|, delta_p = ||H||_{L^p}, delta_weak = dual norm of the
// area first variation (graphs only), delta_dual_lb = certified lower bounds
// for the duality deficits sup{ integral of div^M X : ||grad X||_{L^p} <= 1 }.
struct DeficitReport {
    double delta_inf = 0.0;
    std::map<double, double> delta_p;
    double delta_weak = std::numeric_limits<double>::quiet_NaN();
    std::map<double, double> delta_dual_lb;
    std::string meta;
};

// Unnormalized curvature norms; H analytic for revolution surfaces, pulled
// back from the image for graphs. p values must be finite and >= 1.
DeficitReport integral_deficits(const BaseSurface& base, const std::vector<double>& ps);
DeficitReport integral_deficits(const NormalGraph& g, const std::vector<double>& ps);

// delta(u) = sup{ first_variation(g, phi) : ||grad phi||_{L^2(base)} <= 1 },
// computed by solving the discrete Dirichlet problem K w = L (conservative
// Laplace-Beltrami on the base, zero boundary values) and returning
// sqrt(w . L) = ||grad w||_{L^2}. Axisymmetric charts only.
double weak_deficit(const NormalGraph& g);

// Ambient test field X(x) = eta(|x - center| / radius) * V(x) with the bump
// eta(t) = (1 - t^2)^2 on [0, 1]. V is a unit coordinate direction, the
// infinitesimal rotation e_axis x (x - center), or the radial (x - center)/3.
struct BumpField {
    enum class Kind { Coordinate, Rotation, Radial };
    Kind kind = Kind::Coordinate;
    int axis = 0;  // ignored for Radial
    Vec3 center = Vec3::Zero();
    double radius = 1.0;
};

// Embedded samples of a revolution surface together with its boundary rings.
struct SurfaceSamples {
    std::vector<Vec3> points;
    std::vector<Vec3> normals;
    std::vector<double> weights;  // quadrature weight per sample
    std::vector<Vec3> boundary;   // dense samples of the boundary curves
    Vec3 box_lo = Vec3::Zero(), box_hi = Vec3::Zero();
    double diameter = 0.0;
};

SurfaceSamples sample_surface(const BaseSurface& base, int ntheta = 64);

// Quadrature of div^M X = div X - nu . (grad X) nu over the samples.
double tangential_divergence_integral(const SurfaceSamples& s, const BumpField& X);

// ||grad X||_{L^p(R^3)} with the pointwise Frobenius norm; p may be infinity,
// in which case an analytic upper bound for the sup is returned so that
// normalized dictionary values remain valid lower bounds.
double field_gradient_norm(const BumpField& X, double p, int quad = 64);

struct DualBoundOptions {
    int n_radii = 5;   // bump radii diameter / 2^k, k = 1..n_radii
    int lattice = 5;   // center lattice points per axis
    int ntheta = 64;   // azimuthal surface samples
    int quad = 64;     // ambient quadrature points per axis for finite p
};

// Lower bound for the duality deficit: max over the bump-field dictionary of
// |integral of div^M X| / ||grad X||_{L^p}, restricted to fields whose support
// stays clear of the boundary. Monotone nondecreasing in dictionary size.
double dual_deficit_lower_bound(const BaseSurface& base, double p,
                                const DualBoundOptions& opt = {},
                                int* dictionary_size = nullptr);

}  // namespace soapfilm
