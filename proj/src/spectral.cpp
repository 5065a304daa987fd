#include "soapfilm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace soapfilm {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double jacobi_mode_eigenvalue(const BaseSurface& base, int mode) {
    if (mode < 0) throw Error("jacobi_mode_eigenvalue: mode must be nonnegative");
    const int ns = base.ns;
    if (ns < 5) throw Error("jacobi_mode_eigenvalue: grid too coarse");

    // Free meridian nodes: interior ones, plus the excised-core node of a disk
    // chart in the axisymmetric mode (zero-flux even extension through the axis).
    const bool core_free = base.inner_axis && mode == 0;
    const int i0 = core_free ? 0 : 1;
    const int n = ns - 1 - i0;  // nodes i0 .. ns-2
    if (n < 3) throw Error("jacobi_mode_eigenvalue: grid too coarse");

    // Generalized problem K phi = lambda M phi with
    //   phi' K phi = sum_edges (r/g)_h (dphi)^2/ds
    //              + sum_i (m^2/r_i^2 - |A_i|^2) what_i,
    //   M = diag(what_i),  what_i = r_i g_i ds = meridian share of the weight.
    std::vector<double> Kd(n, 0.0), Ko(n - 1, 0.0), M(n, 0.0);
    double a2max = 0.0;
    for (int i = i0; i < ns - 1; ++i) {
        const int a = i - i0;
        const double rh = 0.5 * (base.r[i] + base.r[i + 1]);
        const double gh = 0.5 * (base.g[i] + base.g[i + 1]);
        const double ce = (rh / gh) / base.ds;
        Kd[a] += ce;
        if (i + 1 <= ns - 2) {
            Kd[a + 1] += ce;
            Ko[a] -= ce;
        }
    }
    if (!core_free) {
        // edge from the pinned node 0 into node 1
        const double rh = 0.5 * (base.r[0] + base.r[1]);
        const double gh = 0.5 * (base.g[0] + base.g[1]);
        Kd[0] += (rh / gh) / base.ds;
    }
    for (int i = i0; i <= ns - 2; ++i) {
        const int a = i - i0;
        // meridian share of the ring weight; already carries the r*g metric
        const double what = base.w[i] / (2.0 * kPi);
        const double a2 = base.kappa1[i] * base.kappa1[i] + base.kappa2[i] * base.kappa2[i];
        a2max = std::max(a2max, a2);
        Kd[a] += (mode * mode / (base.r[i] * base.r[i]) - a2) * what;
        M[a] = what;
    }

    // Symmetrize to an ordinary problem via the diagonal mass matrix.
    std::vector<double> Ad(n), Ao(n - 1), sm(n);
    for (int a = 0; a < n; ++a) sm[a] = 1.0 / std::sqrt(M[a]);
    for (int a = 0; a < n; ++a) Ad[a] = Kd[a] * sm[a] * sm[a];
    for (int a = 0; a + 1 < n; ++a) Ao[a] = Ko[a] * sm[a] * sm[a + 1];

    // Smallest eigenvalue by Sturm-count bisection: the number of negative
    // pivots of LDL^T of (A - t*I) equals the number of eigenvalues below t.
    auto count_below = [&](double t) {
        int cnt = 0;
        double piv = Ad[0] - t;
        if (piv < 0) ++cnt;
        for (int a = 1; a < n; ++a) {
            const double denom = std::abs(piv) < 1e-300 ? 1e-300 : piv;
            piv = (Ad[a] - t) - Ao[a - 1] * Ao[a - 1] / denom;
            if (piv < 0) ++cnt;
        }
        return cnt;
    };
    // Bracket: the quadratic form is bounded below by -max|A|^2 in the mass
    // norm; Gershgorin bounds it above.
    double lo = -a2max - 1.0;
    double hi = Ad[0];
    for (int a = 0; a < n; ++a) {
        double row = Ad[a];
        if (a > 0) row += std::abs(Ao[a - 1]);
        if (a + 1 < n) row += std::abs(Ao[a]);
        hi = std::max(hi, row);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++it) {
        const double m = 0.5 * (lo + hi);
        (count_below(m) >= 1 ? hi : lo) = m;
    }
    return 0.5 * (lo + hi);
}

double jacobi_smallest_eigenvalue(const BaseSurface& base, int max_mode) {
    double best = jacobi_mode_eigenvalue(base, 0);
    for (int m = 1; m <= max_mode; ++m) best = std::min(best, jacobi_mode_eigenvalue(base, m));
    return best;
}

}  // namespace soapfilm
