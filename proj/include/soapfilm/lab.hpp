#pragma once

#include <string>
#include <vector>

#include "soapfilm/graph.hpp"
#include "soapfilm/pmc.hpp"

namespace soapfilm {

// One gravity solve at sweep parameter h (= kappa^2 * half-thickness), with
// the norms entering the sharp estimates. All curvature norms are taken on
// the image surface (jacobian-weighted).
struct SweepRecord {
    double h = 0.0;
    double u_c0 = 0.0;         // sup |u|
    double u_h1 = 0.0;         // full H^1 norm of u on the base
    double area_excess = 0.0;  // area(image) - area(base), always >= 0
    double H_linf = 0.0;
    double H_l2 = 0.0;
    double H_lp = 0.0;
    double delta_weak = 0.0;   // dual-norm deficit of the solved graph
    std::string grid;
};

// Gravity sweep over h_values on a strictly stable base. Solves run in
// parallel (SOAPFILM_THREADS env or hardware concurrency).
std::vector<SweepRecord> run_sweep(const BaseSurface& base, const std::vector<double>& h_values,
                                   double p = 3.0);

// Nine log-spaced values per decade convention used by the sweeps.
std::vector<double> log_spaced(double lo, double hi, int n);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;  // log-log intercept
    double r2 = 0.0;
    double window_lo = 0.0, window_hi = 0.0;  // x-range used
};

// Least-squares line through (log x, log y). Norm names: h, u_c0, u_h1,
// area_excess, H_linf, H_l2, H_lp, delta_weak.
SlopeFit fit_estimate(const std::vector<SweepRecord>& records, const std::string& x_norm,
                      const std::string& y_norm);

// CSV with header h,u_c0,u_h1,area_excess,H_linf,H_l2,H_lp,delta_weak,grid.
void write_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_sweep_csv(const std::string& path);

// Flat-case energy chains evaluated on a graph over a flat base, with
// eps = sup|u| + Lip(u):
//   (1/3 - eps^2) * int |grad u|^2      <= delta(u) * ||grad u||_L2
//   (1/3 - eps^2) * (area excess)       <= delta(u)^2
struct FlatCaseReport {
    double eps = 0.0;
    double factor = 0.0;       // 1/3 - eps^2
    double grad_sq = 0.0;      // int |grad u|^2
    double delta = 0.0;        // weak deficit
    double area_excess = 0.0;
    double lhs_energy = 0.0, rhs_energy = 0.0, slack_energy = 0.0;
    double lhs_area = 0.0, rhs_area = 0.0, slack_area = 0.0;
};

FlatCaseReport flat_case_constant_check(const NormalGraph& g);

// Axisymmetric bubbling profile over two coaxial unit-radius-R circles
// (Gamma_1 at z = 0, Gamma_2 at z = R/2): a catenoid sheet from Gamma_2, a
// sharp turn of scale eps inside the eps-ball around Gamma_1, a near-flat
// double sheet joined by a small catenoidal neck, and a disk ending on
// Gamma_1. The turn carries curvature ~1/eps but sits inside the eps-ball;
// everything outside is exactly or nearly minimal.
struct BubblingReport {
    ProfileCurve profile;
    double neck_radius = 0.0;        // waist radius of the inner neck
    double ring_length = 0.0;        // H^1 of (surface intersect dB_eps(Gamma_1))
    double h_sup_away = 0.0;         // sup |H| at distance > eps from Gamma_1
    double h_l1 = 0.0;               // int |H| over the whole surface
    double area = 0.0;
    double area_limit = 0.0;         // area(catenoid) + 2 * area(disk)
    double delta_minus_inf_lb = 0.0; // dictionary lower bound on the weakest deficit
};

BubblingReport bubbling_family(double circle_radius, double eps, bool with_dual_bound = true);

}  // namespace soapfilm
