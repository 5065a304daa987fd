#include "soapfilm/pmc.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "soapfilm/graph_ops.hpp"

namespace soapfilm {

namespace {

// Node-centered frame slopes on dual numbers, with the same stencils the
// graph module uses so the assembled residual is exactly H - target.
void dual_frame_derivatives(const BaseSurface& b, const std::vector<Dual>& u, std::vector<Dual>& d1,
                            std::vector<Dual>& d2) {
    const int ns = b.ns, nt = b.ntheta;
    d1.assign(ns * nt, Dual(0.0));
    d2.assign(ns * nt, Dual(0.0));
    for (int j = 0; j < nt; ++j) {
        for (int i = 0; i < ns; ++i) {
            Dual us;
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

// Residual in mean-curvature units: F_k = H_k(u) - target_k(u) at free nodes,
// F_k = u_k at Dirichlet nodes.
void pmc_residual(const BaseSurface& b, const std::vector<Dual>& u, const TargetH& target,
                  std::vector<Dual>& out) {
    if (b.ntheta == 1)
        gops::axisym_strong_form(b, u, out);
    else
        gops::grid2d_strong_form(b, u, out);
    std::vector<Dual> d1, d2;
    dual_frame_derivatives(b, u, d1, d2);
    for (int j = 0; j < b.ntheta; ++j) {
        for (int i = 0; i < b.ns; ++i) {
            const int k = b.idx(i, j);
            if (!gops::axi_free_node(b, i)) {
                out[k] = u[k];
                continue;
            }
            const auto gv = gops::eval_G(b.kappa1[i], b.kappa2[i], u[k], d1[k], d2[k]);
            PmcNode node;
            node.i = i;
            node.j = j;
            node.u = u[k];
            node.du1 = d1[k];
            node.du2 = d2[k];
            node.q1 = d1[k] / (Dual(1.0) + u[k] * Dual(b.kappa1[i]));
            node.q2 = d2[k] / (Dual(1.0) + u[k] * Dual(b.kappa2[i]));
            const Dual root = sqrt(Dual(1.0) + node.q1 * node.q1 + node.q2 * node.q2);
            node.inv_root = Dual(1.0) / root;
            node.nu = b.normal(i, j);
            node.t1 = b.tau_meridian(i, j);
            node.t2 = b.tau_azimuthal(i, j);
            out[k] = out[k] * root / gv.G - target(node);
        }
    }
}

double residual_values(const BaseSurface& b, const std::vector<double>& u, const TargetH& target,
                       std::vector<double>& f) {
    const int n = b.node_count();
    std::vector<Dual> ud(n), out;
    for (int k = 0; k < n; ++k) ud[k] = Dual(u[k]);
    pmc_residual(b, ud, target, out);
    f.resize(n);
    double norm = 0.0;
    for (int k = 0; k < n; ++k) {
        f[k] = out[k].v;
        norm = std::max(norm, std::abs(f[k]));
    }
    return norm;
}

// Candidate Jacobian columns of a residual row (contiguous 3-wide meridian
// stencil, widened by the one-sided slope stencils at the chart ends, crossed
// with the periodic 3-wide azimuthal stencil).
void row_columns(const BaseSurface& b, int i, int j, std::vector<int>& cols) {
    cols.clear();
    if (!gops::axi_free_node(b, i)) {
        cols.push_back(b.idx(i, j));
        return;
    }
    std::vector<int> is;
    if (i == 0)
        is = {0, 1, 2};
    else if (i == b.ns - 1)
        is = {b.ns - 3, b.ns - 2, b.ns - 1};
    else
        is = {i - 1, i, i + 1};
    const int nt = b.ntheta;
    for (int ii : is) {
        if (nt == 1) {
            cols.push_back(b.idx(ii, 0));
        } else {
            for (int dj = -1; dj <= 1; ++dj) cols.push_back(b.idx(ii, (j + dj + nt) % nt));
        }
    }
}

struct NewtonOutcome {
    bool ok = false;
    std::vector<double> u;
    double res = std::numeric_limits<double>::infinity();
    int iters = 0;
    std::vector<double> history;
    std::string why;
};

NewtonOutcome newton_solve(const BaseSurface& b, const TargetH& target, std::vector<double> u,
                           const PmcOptions& opt) {
    NewtonOutcome nr;
    const int n = b.node_count();
    if (b.ntheta > 1 && b.ntheta % 3 != 0)
        throw Error("solve_pmc: tensor grids need ntheta divisible by 3 (Jacobian coloring)");
    const int ncolor = b.ntheta == 1 ? 3 : 9;
    auto color_of = [&](int i, int j) { return b.ntheta == 1 ? i % 3 : (i % 3) + 3 * (j % 3); };

    std::vector<double> f;
    double norm = residual_values(b, u, target, f);
    nr.history.push_back(norm);

    std::vector<Dual> ud(n), out;
    std::vector<int> cols;
    for (int iter = 0; iter < opt.max_iters; ++iter) {
        if (!std::isfinite(norm)) {
            nr.why = "residual not finite";
            return nr;
        }
        if (norm <= opt.tol) {
            nr.ok = true;
            nr.u = std::move(u);
            nr.res = norm;
            nr.iters = iter;
            return nr;
        }

        std::vector<Eigen::Triplet<double>> trips;
        for (int c = 0; c < ncolor; ++c) {
            for (int j = 0; j < b.ntheta; ++j)
                for (int i = 0; i < b.ns; ++i) {
                    const int k = b.idx(i, j);
                    ud[k] = Dual(u[k], color_of(i, j) == c ? 1.0 : 0.0);
                }
            pmc_residual(b, ud, target, out);
            for (int j = 0; j < b.ntheta; ++j)
                for (int i = 0; i < b.ns; ++i) {
                    const int k = b.idx(i, j);
                    if (out[k].d == 0.0) continue;
                    row_columns(b, i, j, cols);
                    for (int col : cols) {
                        const int ci = col % b.ns, cj = col / b.ns;
                        if (color_of(ci, cj) == c) trips.emplace_back(k, col, out[k].d);
                    }
                }
        }
        Eigen::SparseMatrix<double> J(n, n);
        J.setFromTriplets(trips.begin(), trips.end());
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(J);
        if (lu.info() != Eigen::Success) {
            nr.why = "singular Newton linearization";
            return nr;
        }
        Eigen::VectorXd rhs(n);
        for (int k = 0; k < n; ++k) rhs[k] = f[k];
        const Eigen::VectorXd delta = lu.solve(rhs);

        // backtracking on the sup norm
        double step = 1.0;
        std::vector<double> trial(n), ftrial;
        double trial_norm = std::numeric_limits<double>::infinity();
        for (int bs = 0; bs < 12; ++bs) {
            for (int k = 0; k < n; ++k) trial[k] = u[k] - step * delta[k];
            // boundary values stay exactly zero (their rows are identities)
            for (int j = 0; j < b.ntheta; ++j)
                for (int i = 0; i < b.ns; ++i)
                    if (!gops::axi_free_node(b, i)) trial[b.idx(i, j)] = 0.0;
            trial_norm = residual_values(b, trial, target, ftrial);
            if (std::isfinite(trial_norm) && trial_norm < norm) break;
            step *= 0.5;
        }
        if (!(trial_norm < norm)) {
            nr.res = norm;
            nr.why = "no descent direction";
            return nr;
        }
        u.swap(trial);
        f.swap(ftrial);
        norm = trial_norm;
        nr.history.push_back(norm);
        // guard against drifting far outside any graph regime
        double sup = 0.0;
        for (double v : u) sup = std::max(sup, std::abs(v));
        if (sup > 10.0) {
            nr.res = norm;
            nr.why = "iterates left the graph regime";
            return nr;
        }
    }
    nr.res = norm;
    nr.why = "iteration limit reached";
    return nr;
}

SolveReport finish(const BaseSurface& b, NewtonOutcome&& nr, const PmcOptions& opt,
                   int continuation_steps) {
    NormalGraph g(b, std::move(nr.u), opt.eps_graph);  // regime checked here
    SolveReport rep{std::move(g), nr.res, nr.iters, continuation_steps, std::move(nr.history)};
    return rep;
}

}  // namespace

SolveReport solve_pmc(const BaseSurface& base, const TargetH& target, const PmcOptions& opt) {
    NewtonOutcome nr =
        newton_solve(base, target, std::vector<double>(base.node_count(), 0.0), opt);
    if (!nr.ok) {
        std::ostringstream msg;
        msg << "solve_pmc: Newton failed (" << nr.why << "; last residual " << nr.res
            << "); reduce the prescribed curvature (e.g. kappa2h)";
        throw Error(msg.str());
    }
    return finish(base, std::move(nr), opt, 0);
}

SolveReport solve_gravity_film(const BaseSurface& base, const GravityParams& params,
                               const PmcOptions& opt) {
    if (params.kappa2h < 0.0) throw Error("solve_gravity_film: kappa2h must be >= 0");
    const Vec3 dir = params.gravity_dir.normalized();
    auto target_at = [&dir](double k2h) {
        return TargetH([k2h, dir](const PmcNode& n) { return Dual(k2h) * n.nu_dot(dir); });
    };

    const double total = params.kappa2h;
    std::vector<double> u(base.node_count(), 0.0);
    double reached = 0.0;
    double step = total > 0.0 ? total : 1.0;
    int steps = 0;
    NewtonOutcome nr = newton_solve(base, target_at(0.0), u, opt);
    if (!nr.ok) throw Error("solve_gravity_film: failed at kappa2h = 0 (" + nr.why + ")");
    u = nr.u;
    while (reached < total * (1.0 - 1e-14)) {
        if (steps >= 20 || step < 1e-6) {
            std::ostringstream msg;
            msg << "solve_gravity_film: continuation stalled; largest kappa2h reached " << reached
                << " of " << total << " (physical non-existence scale)";
            throw Error(msg.str());
        }
        const double next = std::min(total, reached + step);
        NewtonOutcome attempt = newton_solve(base, target_at(next), u, opt);
        bool in_regime = attempt.ok;
        if (attempt.ok) {
            // reject steps that leave the graph regime
            try {
                NormalGraph probe(base, attempt.u, opt.eps_graph);
            } catch (const Error&) {
                in_regime = false;
            }
        }
        if (!in_regime) {
            step *= 0.5;
            continue;
        }
        nr = std::move(attempt);
        u = nr.u;
        reached = next;
        ++steps;
    }
    return finish(base, std::move(nr), opt, steps);
}

std::vector<double> two_interface_residual(const BaseSurface& base,
                                           const std::vector<double>& alpha,
                                           const std::vector<double>& beta, double kappa2) {
    const int ns = base.ns;
    if (base.ntheta != 1)
        throw Error("two_interface_residual: axisymmetric charts only");
    if (static_cast<int>(alpha.size()) != ns || static_cast<int>(beta.size()) != ns)
        throw Error("two_interface_residual: alpha/beta size does not match grid");
    auto check = [&](const std::vector<double>& a, const char* name) {
        double lo = a[0], hi = a[0];
        for (int i = 0; i < ns; ++i) {
            if (a[i] < 0.0)
                throw Error(std::string("two_interface_residual: ") + name + " must be >= 0");
            lo = std::min(lo, a[i]);
            hi = std::max(hi, a[i]);
            const double focal = std::max(std::abs(a[i] * base.kappa1[i]),
                                          std::abs(a[i] * base.kappa2[i]));
            if (focal >= 1.0)
                throw Error(std::string("two_interface_residual: ") + name +
                            " exceeds the focal distance");
        }
        for (int i = 0; i + 1 < ns; ++i) {
            const double slope = std::abs(a[i + 1] - a[i]) / (base.g[i] * base.ds);
            if (slope > 0.05)
                throw Error(std::string("two_interface_residual: ") + name +
                            " varies too fast (|grad| > 0.05)");
        }
        return hi - lo <= 1e-13 * (1.0 + std::abs(hi));
    };
    const bool const_a = check(alpha, "alpha");
    const bool const_b = check(beta, "beta");

    // H of the offset sheets, each with respect to its own outward normal:
    // the lower sheet's outward normal is the opposite of the base normal, so
    // its curvature enters with the sign offset_curvatures already produces
    // for the offset at -beta, i.e. the two terms ADD.
    std::vector<double> h_up(ns), h_dn(ns);
    auto embedded_H = [&](const std::vector<double>& t, std::vector<double>& h) {
        ProfileCurve p;
        p.s = base.s;
        p.r.resize(ns);
        p.z.resize(ns);
        for (int i = 0; i < ns; ++i) {
            p.r[i] = base.r[i] + t[i] * base.nu_r[i];
            p.z[i] = base.z[i] + t[i] * base.nu_z[i];
        }
        for (int i = 1; i < ns - 1; ++i) h[i] = revolution_curvatures(p, i).mean;
        h[0] = h[1];
        h[ns - 1] = h[ns - 2];
    };
    if (const_a && const_b) {
        const OffsetCurvatures up = offset_curvatures(base, alpha[0]);
        const OffsetCurvatures dn = offset_curvatures(base, -beta[0]);
        h_up = up.H;
        h_dn = dn.H;
    } else {
        std::vector<double> neg(ns);
        for (int i = 0; i < ns; ++i) neg[i] = -beta[i];
        embedded_H(alpha, h_up);
        embedded_H(neg, h_dn);
    }
    std::vector<double> res(ns);
    for (int i = 0; i < ns; ++i)
        res[i] = h_up[i] + h_dn[i] - kappa2 * (alpha[i] + beta[i]) * base.nu_z[i];
    return res;
}

}  // namespace soapfilm
