#pragma once

#include <vector>

#include "soapfilm/surface.hpp"

namespace soapfilm {

// Principal curvatures of the parallel surface at signed distance t from the
// base, kappa_i / (1 + t*kappa_i) per node.
struct OffsetCurvatures {
    double t = 0.0;
    std::vector<double> kappa1, kappa2;
    std::vector<double> H;
};

OffsetCurvatures offset_curvatures(const BaseSurface& base, double t);

// Normal graph over a base surface: the image of psi_u(p) = p + u(p) nu_N(p).
// All derived fields are computed eagerly at construction; instances are
// immutable and safe to share between threads.
class NormalGraph {
  public:
    // eps_graph <= 0 picks the default regime bound 0.1*min(1, 1/max|kappa|).
    NormalGraph(BaseSurface base, std::vector<double> u, double eps_graph = 0.0);

    const BaseSurface& base() const { return base_; }
    const std::vector<double>& u() const { return u_; }

    // Area Jacobian of psi_u per node; integrate(base, jacobian()) is the
    // area of the image surface.
    const std::vector<double>& jacobian() const { return jac_; }
    // Mean curvature (sum convention) of the image, pulled back to the base
    // grid. Computed from the divergence form of the area gradient at free
    // nodes; boundary nodes carry the nearest free value for norm reporting.
    const std::vector<double>& mean_curvature() const { return H_; }
    // (nu_{Psi_u} o psi_u) . e3 and . nu_N per node.
    const std::vector<double>& normal_vertical() const { return nu_e3_; }
    const std::vector<double>& normal_base_component() const { return nu_base_; }
    // Frame components of Du (meridian, azimuthal) per node.
    const std::vector<double>& du_meridian() const { return du1_; }
    const std::vector<double>& du_azimuthal() const { return du2_; }

    // Area of the image surface under the discrete functional whose exact
    // gradient first_variation evaluates.
    double area() const { return area_; }
    // Graph-regime size sup|u| + Lip(u) and the bound it was checked against.
    double eps() const { return eps_; }
    double eps_graph() const { return eps_graph_; }

  private:
    BaseSurface base_;
    std::vector<double> u_;
    std::vector<double> du1_, du2_;
    std::vector<double> jac_, H_, nu_e3_, nu_base_;
    double area_ = 0.0, eps_ = 0.0, eps_graph_ = 0.0;
};

// d/dt area(Psi_{u+t*phi}) at t = 0; phi must vanish on Dirichlet nodes.
// On axisymmetric charts this is the exact derivative of g.area().
double first_variation(const NormalGraph& g, const std::vector<double>& phi);

// Meridian profile of the embedded image surface (axisymmetric charts only).
ProfileCurve image_profile(const NormalGraph& g);

}  // namespace soapfilm
