#pragma once

#include <functional>
#include <vector>

#include "soapfilm/dual.hpp"
#include "soapfilm/graph.hpp"

namespace soapfilm {

// Gravity enters only through kappa^2 * h (squared inverse capillary length
// times film half-thickness) and a unit direction.
struct GravityParams {
    double kappa2h = 0.0;
    Vec3 gravity_dir = Vec3(0.0, 0.0, 1.0);
};

struct SolveReport {
    NormalGraph graph;
    double residual_linf = 0.0;  // max nodal |H - target| at the solution
    int newton_iters = 0;
    int continuation_steps = 0;
    std::vector<double> residual_history;  // sup-norm residual per Newton iterate
};

// Per-node data handed to the target-curvature callback. All fields are dual
// numbers seeded by the solver, so the Newton linearization is exact through
// the right-hand side (the anisotropic nu.e3 coupling is fully implicit).
struct PmcNode {
    int i = 0, j = 0;
    Dual u, du1, du2;        // unknown and its frame slopes
    Dual q1, q2, inv_root;   // starred slopes and 1/sqrt(1 + |D*u|^2)
    Vec3 nu, t1, t2;         // base frame at the node

    // Component of the image unit normal along an ambient direction.
    Dual nu_dot(const Vec3& dir) const {
        return (Dual(nu.dot(dir)) - q1 * Dual(t1.dot(dir)) - q2 * Dual(t2.dot(dir))) * inv_root;
    }
    Dual nu_e3() const { return nu_dot(Vec3(0.0, 0.0, 1.0)); }
};

// Prescribed mean curvature (sum convention) of the image surface.
using TargetH = std::function<Dual(const PmcNode&)>;

struct PmcOptions {
    double tol = 1e-10;
    int max_iters = 30;
    double eps_graph = 0.0;  // 0 = default graph-regime bound
};

// Newton solve of H_{Psi_u} = target with u = 0 on the boundary. 2D tensor
// grids require ntheta divisible by 3 (Jacobian stencil coloring).
SolveReport solve_pmc(const BaseSurface& base, const TargetH& target, const PmcOptions& opt = {});

// H_{Psi_u} = kappa2h * nu_{Psi_u} . gravity_dir by continuation in kappa2h
// from 0 (at most 20 steps, step halved on Newton failure, abandoned below
// step 1e-6 with the largest kappa2h reached reported in the error).
SolveReport solve_gravity_film(const BaseSurface& base, const GravityParams& params,
                               const PmcOptions& opt = {});

// Equilibrium residual of a film of thickness alpha + beta around the base:
//   H_upper(alpha) + H_lower(-beta) - kappa2 * (alpha + beta) * nu . e3
// per meridian node, where H_lower is the curvature of the lower offset with
// respect to its own outward (downward) normal. Offsets are exact for
// constant alpha, beta and evaluated on the embedded offset profile when they
// vary (slopes at most 0.05).
std::vector<double> two_interface_residual(const BaseSurface& base,
                                           const std::vector<double>& alpha,
                                           const std::vector<double>& beta, double kappa2);

}  // namespace soapfilm
