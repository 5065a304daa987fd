#pragma once

// Low-level area-integrand machinery shared by the graph analysis and the
// prescribed-mean-curvature Newton solver. Everything is templated on the
// scalar so the solver can push Dual numbers through the exact same
// expressions it linearizes.

#include <vector>

#include "soapfilm/dual.hpp"
#include "soapfilm/surface.hpp"

namespace soapfilm::gops {

template <class T>
struct GVals {
    T G;    // area integrand: Prod(1 + k_i z) * sqrt(1 + sum (xi_i/(1+k_i z))^2)
    T Gz;   // d/dz
    T Gx1;  // d/dxi_1 (meridian slot)
    T Gx2;  // d/dxi_2 (azimuthal slot)
};

template <class T>
GVals<T> eval_G(double k1, double k2, const T& z, const T& x1, const T& x2) {
    const T a1 = 1.0 + z * k1;
    const T a2 = 1.0 + z * k2;
    const T q1 = x1 / a1;
    const T q2 = x2 / a2;
    const T Q = 1.0 + q1 * q1 + q2 * q2;
    using std::sqrt;
    const T rootQ = sqrt(Q);
    GVals<T> out;
    out.G = a1 * a2 * rootQ;
    out.Gz = out.G * (k1 / a1 * (1.0 - q1 * q1 / Q) + k2 / a2 * (1.0 - q2 * q2 / Q));
    out.Gx1 = out.G * x1 / (a1 * a1 * Q);
    out.Gx2 = out.G * x2 / (a2 * a2 * Q);
    return out;
}

// ---------------------------------------------------------------------------
// Axisymmetric meridian chart: staggered half-edge discretization whose
// nodal gradient is the exact derivative of the discrete area. Half-edge h
// between nodes i, i+1 carries the averaged base data, u_h = (u_i+u_{i+1})/2
// and the compact slope xi_h = (u_{i+1}-u_i)/(g_h ds).

struct AxiEdge {
    double k1, k2, rg;  // averaged curvatures and r_h*g_h
    double gh;          // averaged metric factor
    double w;           // full-ring half-edge weight 2*pi*r_h*g_h*ds
};

inline AxiEdge axi_edge(const BaseSurface& b, int i) {
    AxiEdge e;
    e.k1 = 0.5 * (b.kappa1[i] + b.kappa1[i + 1]);
    e.k2 = 0.5 * (b.kappa2[i] + b.kappa2[i + 1]);
    const double rh = 0.5 * (b.r[i] + b.r[i + 1]);
    e.gh = 0.5 * (b.g[i] + b.g[i + 1]);
    e.rg = rh * e.gh;
    e.w = 2.0 * 3.14159265358979323846 * e.rg * b.ds;
    return e;
}

// Leftover core measure of an excised-axis disk chart not covered by the
// half-edge quadrature (the area weight of node 0 minus its edge half).
inline double axi_core_weight(const BaseSurface& b) {
    if (!b.inner_axis) return 0.0;
    return std::max(0.0, b.w[0] - 0.5 * axi_edge(b, 0).w);
}

// Control-volume measure of a free node under the staggered quadrature.
inline double axi_node_measure(const BaseSurface& b, int i) {
    double m = 0.0;
    if (i > 0) m += 0.5 * axi_edge(b, i - 1).w;
    if (i < b.ns - 1) m += 0.5 * axi_edge(b, i).w;
    if (i == 0) m += axi_core_weight(b);
    return m;
}

template <class T>
T axisym_area(const BaseSurface& b, const std::vector<T>& u) {
    T area(0.0);
    for (int i = 0; i + 1 < b.ns; ++i) {
        const AxiEdge e = axi_edge(b, i);
        const T uh = 0.5 * (u[i] + u[i + 1]);
        const T xi = (u[i + 1] - u[i]) / (e.gh * b.ds);
        area = area + e.w * eval_G(e.k1, e.k2, uh, xi, T(0.0)).G;
    }
    const double wc = axi_core_weight(b);
    if (wc > 0.0)
        area = area + wc * eval_G(b.kappa1[0], b.kappa2[0], u[0], T(0.0), T(0.0)).G;
    return area;
}

inline bool axi_free_node(const BaseSurface& b, int i) {
    return !b.dirichlet[i] && (i > 0 || b.inner_axis) && i < b.ns - 1;
}

// Raw gradient dA/du_i of the discrete area (exact derivative of
// axisym_area); Dirichlet rows are zeroed.
template <class T>
void axisym_gradient(const BaseSurface& b, const std::vector<T>& u, std::vector<T>& out) {
    const int ns = b.ns;
    out.assign(ns, T(0.0));
    for (int i = 0; i + 1 < ns; ++i) {
        const AxiEdge e = axi_edge(b, i);
        const T uh = 0.5 * (u[i] + u[i + 1]);
        const T xi = (u[i + 1] - u[i]) / (e.gh * b.ds);
        const GVals<T> gv = eval_G(e.k1, e.k2, uh, xi, T(0.0));
        const T gz_share = 0.5 * e.w * gv.Gz;
        const T flux = e.w * gv.Gx1 / (e.gh * b.ds);
        out[i] = out[i] + gz_share - flux;
        out[i + 1] = out[i + 1] + gz_share + flux;
    }
    const double wc = axi_core_weight(b);
    if (wc > 0.0)
        out[0] = out[0] + wc * eval_G(b.kappa1[0], b.kappa2[0], u[0], T(0.0), T(0.0)).Gz;
    for (int i = 0; i < ns; ++i)
        if (!axi_free_node(b, i)) out[i] = T(0.0);
}

// Strong-form density (H o psi_u) * J / sqrt(1 + |D*u|^2): the gradient per
// control-volume measure at interior nodes, with a finite-volume flux row at
// an excised-core node (exact for linear flux through the axis region).
template <class T>
void axisym_strong_form(const BaseSurface& b, const std::vector<T>& u, std::vector<T>& out) {
    axisym_gradient(b, u, out);
    for (int i = 0; i < b.ns; ++i)
        if (axi_free_node(b, i)) out[i] = out[i] / axi_node_measure(b, i);
    if (b.inner_axis && axi_free_node(b, 0)) {
        const AxiEdge e = axi_edge(b, 0);
        const double rhalf = 0.5 * (b.r[0] + b.r[1]);
        const T uh = 0.5 * (u[0] + u[1]);
        const T xi = (u[1] - u[0]) / (e.gh * b.ds);
        const GVals<T> gv = eval_G(e.k1, e.k2, uh, xi, T(0.0));
        const T gz0 = eval_G(b.kappa1[0], b.kappa2[0], u[0], xi, T(0.0)).Gz;
        out[0] = gz0 - 2.0 * gv.Gx1 / rhalf;
    }
}

// ---------------------------------------------------------------------------
// 2D tensor grid (s x periodic theta): compact node-centered divergence form
//   Gz(p, u, Du) - div_h(Gxi)  with half-edge fluxes,
// second-order accurate with a 3x3 stencil (used for cross-checks; the exact
// integration-by-parts identity is an axisymmetric-chart contract).

template <class T>
void grid2d_strong_form(const BaseSurface& b, const std::vector<T>& u, std::vector<T>& out) {
    const int ns = b.ns, nt = b.ntheta;
    const double ds = b.ds, dth = b.dtheta;
    out.assign(ns * nt, T(0.0));
    auto U = [&](int i, int j) -> const T& { return u[b.idx(i, (j % nt + nt) % nt)]; };
    auto dtheta_u = [&](int i, int j) -> T { return (U(i, j + 1) - U(i, j - 1)) / (2.0 * dth * b.r[i]); };
    for (int j = 0; j < nt; ++j) {
        for (int i = 1; i < ns - 1; ++i) {
            if (b.dirichlet[i]) continue;
            // meridian fluxes at (i +/- 1/2, j)
            T flux_s[2];
            double rgh[2];
            for (int kdir = 0; kdir < 2; ++kdir) {
                const int a = i - 1 + kdir;  // edge a -- a+1
                const double k1 = 0.5 * (b.kappa1[a] + b.kappa1[a + 1]);
                const double k2 = 0.5 * (b.kappa2[a] + b.kappa2[a + 1]);
                const double gh = 0.5 * (b.g[a] + b.g[a + 1]);
                const double rh = 0.5 * (b.r[a] + b.r[a + 1]);
                const T uh = 0.5 * (U(a, j) + U(a + 1, j));
                const T x1 = (U(a + 1, j) - U(a, j)) / (gh * ds);
                const T x2 = 0.5 * (dtheta_u(a, j) + dtheta_u(a + 1, j));
                flux_s[kdir] = eval_G(k1, k2, uh, x1, x2).Gx1;
                rgh[kdir] = rh;
            }
            // azimuthal fluxes at (i, j +/- 1/2)
            T flux_t[2];
            for (int kdir = 0; kdir < 2; ++kdir) {
                const int jj = j - 1 + kdir;  // edge jj -- jj+1
                const T uh = 0.5 * (U(i, jj) + U(i, jj + 1));
                const T x2 = (U(i, jj + 1) - U(i, jj)) / (b.r[i] * dth);
                const T x1 = (U(i + 1, jj) - U(i - 1, jj) + U(i + 1, jj + 1) - U(i - 1, jj + 1)) /
                             (4.0 * b.g[i] * ds);
                flux_t[kdir] = eval_G(b.kappa1[i], b.kappa2[i], uh, x1, x2).Gx2;
            }
            const T x1c = (U(i + 1, j) - U(i - 1, j)) / (2.0 * b.g[i] * ds);
            const T x2c = dtheta_u(i, j);
            const T gz = eval_G(b.kappa1[i], b.kappa2[i], U(i, j), x1c, x2c).Gz;
            const T div = (rgh[1] * flux_s[1] - rgh[0] * flux_s[0]) / (b.r[i] * b.g[i] * ds) +
                          (flux_t[1] - flux_t[0]) / (b.r[i] * dth);
            out[b.idx(i, j)] = gz - div;
        }
        if (b.inner_axis) {
            // Excised-core node: finite-volume row with zero flux through the
            // axis side; the core disk of radius r_{1/2} owns the measure.
            const int i = 0;
            const double rhalf = 0.5 * (b.r[0] + b.r[1]);
            const double k1 = 0.5 * (b.kappa1[0] + b.kappa1[1]);
            const double k2 = 0.5 * (b.kappa2[0] + b.kappa2[1]);
            const double gh = 0.5 * (b.g[0] + b.g[1]);
            const T uh = 0.5 * (U(0, j) + U(1, j));
            const T x1h = (U(1, j) - U(0, j)) / (gh * ds);
            const T x2h = 0.5 * (dtheta_u(0, j) + dtheta_u(1, j));
            const T f1 = eval_G(k1, k2, uh, x1h, x2h).Gx1;
            T flux_t[2];
            for (int kdir = 0; kdir < 2; ++kdir) {
                const int jj = j - 1 + kdir;
                const T uh2 = 0.5 * (U(i, jj) + U(i, jj + 1));
                const T x2 = (U(i, jj + 1) - U(i, jj)) / (b.r[i] * dth);
                const T x1 = (U(1, jj) - U(0, jj) + U(1, jj + 1) - U(0, jj + 1)) / (2.0 * b.g[i] * ds);
                flux_t[kdir] = eval_G(b.kappa1[i], b.kappa2[i], uh2, x1, x2).Gx2;
            }
            const T x1c = (U(1, j) - U(0, j)) / (b.g[i] * ds);
            const T gz = eval_G(b.kappa1[i], b.kappa2[i], U(i, j), x1c, dtheta_u(i, j)).Gz;
            out[b.idx(0, j)] = gz - 2.0 * f1 / rhalf - (flux_t[1] - flux_t[0]) / (b.r[i] * dth);
        }
    }
}

}  // namespace soapfilm::gops
