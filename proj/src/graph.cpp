#include "soapfilm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soapfilm/graph_ops.hpp"

namespace soapfilm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Frame derivatives of a nodal field: centered interior, one-sided 2nd-order
// at meridian ends, periodic in theta.
void frame_derivatives(const BaseSurface& b, const std::vector<double>& u, std::vector<double>& d1,
                       std::vector<double>& d2) {
    const int ns = b.ns, nt = b.ntheta;
    d1.assign(ns * nt, 0.0);
    d2.assign(ns * nt, 0.0);
    for (int j = 0; j < nt; ++j) {
        for (int i = 0; i < ns; ++i) {
            double us;
            if (i == 0)
                us = (-3.0 * u[b.idx(0, j)] + 4.0 * u[b.idx(1, j)] - u[b.idx(2, j)]) / (2.0 * b.ds);
            else if (i == ns - 1)
                us = (3.0 * u[b.idx(ns - 1, j)] - 4.0 * u[b.idx(ns - 2, j)] + u[b.idx(ns - 3, j)]) /
                     (2.0 * b.ds);
            else
                us = (u[b.idx(i + 1, j)] - u[b.idx(i - 1, j)]) / (2.0 * b.ds);
            d1[b.idx(i, j)] = us / b.g[i];
            if (nt > 1) {
                const int jp = (j + 1) % nt, jm = (j + nt - 1) % nt;
                d2[b.idx(i, j)] = (u[b.idx(i, jp)] - u[b.idx(i, jm)]) / (2.0 * b.dtheta * b.r[i]);
            }
        }
    }
}

}  // namespace

OffsetCurvatures offset_curvatures(const BaseSurface& base, double t) {
    OffsetCurvatures out;
    out.t = t;
    out.kappa1.resize(base.ns);
    out.kappa2.resize(base.ns);
    out.H.resize(base.ns);
    for (int i = 0; i < base.ns; ++i) {
        const double d1 = 1.0 + t * base.kappa1[i];
        const double d2 = 1.0 + t * base.kappa2[i];
        if (d1 <= 0.0 || d2 <= 0.0) {
            std::ostringstream msg;
            msg << "offset_curvatures: offset " << t << " reaches the focal distance at node " << i;
            throw Error(msg.str());
        }
        out.kappa1[i] = base.kappa1[i] / d1;
        out.kappa2[i] = base.kappa2[i] / d2;
        out.H[i] = out.kappa1[i] + out.kappa2[i];
    }
    return out;
}

NormalGraph::NormalGraph(BaseSurface base, std::vector<double> u, double eps_graph)
    : base_(std::move(base)), u_(std::move(u)) {
    const int n = base_.node_count();
    if (static_cast<int>(u_.size()) != n) throw Error("normal graph: u size does not match grid");
    for (int j = 0; j < base_.ntheta; ++j)
        for (int i = 0; i < base_.ns; ++i)
            if (base_.is_dirichlet(i, j) && u_[base_.idx(i, j)] != 0.0)
                throw Error("normal graph: u must vanish exactly on boundary nodes");

    frame_derivatives(base_, u_, du1_, du2_);

    const double kmax = base_.max_abs_curvature();
    eps_graph_ = eps_graph > 0.0 ? eps_graph : 0.1 * std::min(1.0, kmax > 0.0 ? 1.0 / kmax : 1.0);
    double sup_u = 0.0, lip = 0.0;
    int worst = 0;
    double worst_val = -1.0;
    for (int k = 0; k < n; ++k) {
        sup_u = std::max(sup_u, std::abs(u_[k]));
        const double slope = std::hypot(du1_[k], du2_[k]);
        lip = std::max(lip, slope);
        if (std::abs(u_[k]) + slope > worst_val) {
            worst_val = std::abs(u_[k]) + slope;
            worst = k;
        }
    }
    eps_ = sup_u + lip;
    if (eps_ > eps_graph_) {
        std::ostringstream msg;
        msg << "normal graph: |u| + |Du| = " << worst_val << " at node " << worst
            << " exceeds the graph-regime bound " << eps_graph_;
        throw Error(msg.str());
    }

    jac_.resize(n);
    nu_e3_.resize(n);
    nu_base_.resize(n);
    for (int j = 0; j < base_.ntheta; ++j) {
        for (int i = 0; i < base_.ns; ++i) {
            const int k = base_.idx(i, j);
            const auto gv = gops::eval_G(base_.kappa1[i], base_.kappa2[i], u_[k], du1_[k], du2_[k]);
            jac_[k] = gv.G;
            if (jac_[k] <= 0.0) {
                std::ostringstream msg;
                msg << "normal graph: nonpositive Jacobian at node " << k;
                throw Error(msg.str());
            }
            // nu_Psi o psi = (nu_N - sum d*_i u tau_i)/sqrt(1 + |D*u|^2)
            const double ds1 = du1_[k] / (1.0 + u_[k] * base_.kappa1[i]);
            const double ds2 = du2_[k] / (1.0 + u_[k] * base_.kappa2[i]);
            const double root = std::sqrt(1.0 + ds1 * ds1 + ds2 * ds2);
            nu_base_[k] = 1.0 / root;
            const Vec3 nu = base_.normal(i, j);
            const Vec3 t1 = base_.tau_meridian(i, j);
            const Vec3 t2 = base_.tau_azimuthal(i, j);
            nu_e3_[k] = (nu.z() - ds1 * t1.z() - ds2 * t2.z()) / root;
        }
    }

    // Mean curvature from the divergence form shared with the solver.
    H_.assign(n, 0.0);
    std::vector<double> strong;
    if (base_.ntheta == 1) {
        gops::axisym_strong_form(base_, u_, strong);
    } else {
        gops::grid2d_strong_form(base_, u_, strong);
    }
    for (int j = 0; j < base_.ntheta; ++j) {
        for (int i = 0; i < base_.ns; ++i) {
            const int k = base_.idx(i, j);
            H_[k] = strong[k] / (jac_[k] * nu_base_[k]);
        }
    }
    // boundary rows have no operator value; copy the nearest free node so the
    // norms see a sensible field there
    for (int j = 0; j < base_.ntheta; ++j) {
        for (int i = 0; i < base_.ns; ++i) {
            if (gops::axi_free_node(base_, i)) continue;
            const int src = std::clamp(i == 0 ? 1 : base_.ns - 2, 0, base_.ns - 1);
            H_[base_.idx(i, j)] = H_[base_.idx(src, j)];
        }
    }

    if (base_.ntheta == 1) {
        area_ = gops::axisym_area(base_, u_);
    } else {
        area_ = 0.0;
        for (int j = 0; j < base_.ntheta; ++j)
            for (int i = 0; i < base_.ns; ++i) area_ += base_.weight(i, j) * jac_[base_.idx(i, j)];
    }
}

double first_variation(const NormalGraph& g, const std::vector<double>& phi) {
    const BaseSurface& b = g.base();
    if (static_cast<int>(phi.size()) != b.node_count())
        throw Error("first_variation: phi size does not match grid");
    for (int j = 0; j < b.ntheta; ++j)
        for (int i = 0; i < b.ns; ++i)
            if (b.is_dirichlet(i, j) && phi[b.idx(i, j)] != 0.0)
                throw Error("first_variation: phi must vanish on boundary nodes");
    if (b.ntheta == 1) {
        std::vector<double> grad;
        gops::axisym_gradient(b, g.u(), grad);
        double acc = 0.0;
        for (int i = 0; i < b.ns; ++i) acc += grad[i] * phi[i];
        return acc;
    }
    // node-centered weak form on tensor grids (second-order)
    std::vector<double> p1, p2;
    frame_derivatives(b, phi, p1, p2);
    double acc = 0.0;
    for (int j = 0; j < b.ntheta; ++j) {
        for (int i = 0; i < b.ns; ++i) {
            const int k = b.idx(i, j);
            const auto gv =
                gops::eval_G(b.kappa1[i], b.kappa2[i], g.u()[k], g.du_meridian()[k], g.du_azimuthal()[k]);
            acc += b.weight(i, j) * (gv.Gz * phi[k] + gv.Gx1 * p1[k] + gv.Gx2 * p2[k]);
        }
    }
    return acc;
}

ProfileCurve image_profile(const NormalGraph& g) {
    const BaseSurface& b = g.base();
    if (b.ntheta != 1) throw Error("image_profile: axisymmetric charts only");
    ProfileCurve p;
    p.s = b.s;
    p.r.resize(b.ns);
    p.z.resize(b.ns);
    for (int i = 0; i < b.ns; ++i) {
        p.r[i] = b.r[i] + g.u()[i] * b.nu_r[i];
        p.z[i] = b.z[i] + g.u()[i] * b.nu_z[i];
    }
    return p;
}

}  // namespace soapfilm
