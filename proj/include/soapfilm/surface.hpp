#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "soapfilm/profile.hpp"

namespace soapfilm {

using Vec3 = Eigen::Vector3d;

struct SurfaceSummary {
    double area = 0.0;
    double h_linf = 0.0;
    double h_l1 = 0.0;
    double h_l2 = 0.0;
    double h_lp = 0.0;
    double p = 2.0;
    double diameter = 0.0;
};

// Chart-based description of a smooth base surface of revolution about the
// z-axis. The chart is a meridian grid (uniform in s) crossed with ntheta
// azimuthal samples; ntheta == 1 denotes the axisymmetric reduction in which
// quadrature weights carry the full 2*pi angular measure.
//
// Principal frame per node: tau1 = meridian tangent, tau2 = azimuthal
// direction; normal points away from the axis for revolution kinds and along
// +e3 for flat horizontal bases.
struct BaseSurface {
    enum class Kind { FlatDisk, FlatAnnulus, Catenoid, Revolution };

    Kind kind = Kind::Revolution;
    int ns = 0;
    int ntheta = 1;
    double ds = 0.0;
    double dtheta = 0.0;
    // When true, meridian node 0 sits on an excised core of a disk; it is a
    // free (non-Dirichlet) node handled by even extension through the axis.
    bool inner_axis = false;
    double orient = 1.0;

    // Meridian data, length ns.
    std::vector<double> s, r, z;
    std::vector<double> g;            // |x_s|
    std::vector<double> nu_r, nu_z;   // unit normal components in (e_r, e_z)
    std::vector<double> kappa1;       // meridian principal curvature
    std::vector<double> kappa2;       // parallel principal curvature
    std::vector<double> w;            // meridian quadrature weight (full ring)
    std::vector<bool> dirichlet;      // meridian Dirichlet endpoints

    int node_count() const { return ns * ntheta; }
    int idx(int i, int j) const { return j * ns + i; }
    double theta(int j) const { return j * dtheta; }

    Vec3 position(int i, int j) const;
    Vec3 normal(int i, int j) const;
    Vec3 tau_meridian(int i, int j) const;
    Vec3 tau_azimuthal(int i, int j) const;
    // Per-node quadrature weight for integrals over the full surface.
    double weight(int i, int j) const;
    bool is_dirichlet(int i, int j) const { return dirichlet[i]; }

    double max_abs_curvature() const;
    double area() const;

    void check_invariants(double tol = 1e-12) const;
};

struct GridSpec {
    int ns = 129;
    int ntheta = 1;  // 1 = axisymmetric reduction
};

BaseSurface build_flat_disk(double radius, const GridSpec& grid);
BaseSurface build_flat_annulus(double r_in, double r_out, const GridSpec& grid);
// Catenoid r = c*cosh((z - z0)/c) for z in [z_min, z_max].
BaseSurface build_catenoid(double c, double z_min, double z_max, const GridSpec& grid, double z0 = 0.0);
BaseSurface build_revolution(const ProfileCurve& curve, int ntheta = 1);

// Quadrature of a per-node scalar field over the surface.
double integrate(const BaseSurface& surface, const std::vector<double>& field);

// Norm summary of the revolved surface described by a profile, with mean
// curvature from revolution_curvatures at interior nodes.
SurfaceSummary summarize_profile(const ProfileCurve& curve, double p);

}  // namespace soapfilm
