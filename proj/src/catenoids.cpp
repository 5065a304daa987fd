#include "soapfilm/catenoids.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soapfilm/spectral.hpp"

namespace soapfilm {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Meridian slope magnitude at a 120-degree junction: the catenoid sheet makes
// a 60-degree angle with the horizontal disk, i.e. dr/dz = tan(30 deg).
const double kJunctionSlope = 1.0 / std::sqrt(3.0);
const double kJunctionS = std::asinh(kJunctionSlope);  // = ln(3)/2

double safe_cosh(double x) { return std::cosh(std::clamp(x, -50.0, 50.0)); }
double safe_sinh(double x) { return std::sinh(std::clamp(x, -50.0, 50.0)); }

// Roots of f on (lo, hi) by sign-change scan on a log-spaced grid + bisection.
template <class F>
std::vector<double> scan_roots(F&& f, double lo, double hi, int samples) {
    std::vector<double> roots;
    double cprev = lo, fprev = f(lo);
    for (int k = 1; k <= samples; ++k) {
        const double c = lo * std::pow(hi / lo, double(k) / samples);
        const double fc = f(c);
        if (std::isfinite(fprev) && std::isfinite(fc) && fprev * fc < 0.0) {
            double a = cprev, b = c;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                if (f(a) * f(m) <= 0.0)
                    b = m;
                else
                    a = m;
                if (b - a < 1e-16 * b) break;
            }
            roots.push_back(0.5 * (a + b));
        }
        cprev = c;
        fprev = fc;
    }
    return roots;
}

CatenoidSolution make_disks(const TwoCircleBoundary& b) {
    CatenoidSolution s;
    s.kind = CatenoidKind::TwoDisks;
    s.boundary = b;
    s.area = kPi * (b.r1 * b.r1 + b.r2 * b.r2);
    s.residual = 0.0;
    s.stability_eig = std::numeric_limits<double>::quiet_NaN();
    return s;
}

CatenoidSolution make_catenoid(const TwoCircleBoundary& b, double c, double z0) {
    CatenoidSolution s;
    s.kind = CatenoidKind::Catenoid;
    s.boundary = b;
    s.c = c;
    s.z0 = z0;
    s.area = catenoid_area(c, z0, -b.sep / 2, b.sep / 2);
    s.residual = std::max(std::abs(c * safe_cosh((-b.sep / 2 - z0) / c) - b.r1),
                          std::abs(c * safe_cosh((b.sep / 2 - z0) / c) - b.r2));
    s.stability_eig = jacobi_smallest_eigenvalue(s);
    return s;
}

std::vector<CatenoidSolution> regular_catenoids(const TwoCircleBoundary& b, std::string* diag) {
    std::vector<CatenoidSolution> out;
    const double d = b.sep;
    if (std::abs(b.r1 - b.r2) < 1e-12) {
        const double r = b.r1;
        auto f = [&](double c) { return c * safe_cosh(d / (2 * c)) - r; };
        const double lo = 1e-4 * r, hi = r;
        for (double c : scan_roots(f, lo, hi, 600)) out.push_back(make_catenoid(b, c, 0.0));
        if (diag) {
            std::ostringstream os;
            os << "regular branch: scanned c in [" << lo << ", " << hi << "], found " << out.size()
               << " root(s)\n";
            *diag += os.str();
        }
    } else {
        // 2D Newton on the two boundary conditions, seeded from a coarse scan.
        auto F = [&](double c, double z0, double& f1, double& f2) {
            f1 = c * safe_cosh((-d / 2 - z0) / c) - b.r1;
            f2 = c * safe_cosh((d / 2 - z0) / c) - b.r2;
        };
        const double rmax = std::max(b.r1, b.r2);
        std::vector<std::pair<double, double>> seeds;
        for (int ic = 0; ic < 48; ++ic)
            for (int iz = 0; iz < 48; ++iz)
                seeds.emplace_back(1e-3 * rmax * std::pow(1e3, ic / 47.0),
                                   -d + 2.0 * d * iz / 47.0);
        std::vector<std::pair<double, double>> found;
        for (auto [c, z0] : seeds) {
            bool ok = true;
            for (int it = 0; it < 60; ++it) {
                double f1, f2;
                F(c, z0, f1, f2);
                if (std::abs(f1) + std::abs(f2) < 1e-13 * rmax) break;
                const double t1 = (-d / 2 - z0) / c, t2 = (d / 2 - z0) / c;
                const double j11 = safe_cosh(t1) - t1 * safe_sinh(t1), j12 = -safe_sinh(t1);
                const double j21 = safe_cosh(t2) - t2 * safe_sinh(t2), j22 = -safe_sinh(t2);
                const double det = j11 * j22 - j12 * j21;
                if (std::abs(det) < 1e-14) {
                    ok = false;
                    break;
                }
                const double dc = (f1 * j22 - f2 * j12) / det;
                const double dz = (f2 * j11 - f1 * j21) / det;
                c -= dc;
                z0 -= dz;
                if (!(c > 0.0) || !std::isfinite(c) || !std::isfinite(z0)) {
                    ok = false;
                    break;
                }
            }
            double f1, f2;
            if (ok) F(c, z0, f1, f2);
            if (ok && std::abs(f1) + std::abs(f2) < 1e-11 * rmax) {
                bool dup = false;
                for (auto [cc, zz] : found)
                    if (std::abs(cc - c) < 1e-7 * rmax && std::abs(zz - z0) < 1e-7 * rmax) dup = true;
                if (!dup) found.emplace_back(c, z0);
            }
        }
        for (auto [c, z0] : found) out.push_back(make_catenoid(b, c, z0));
        if (diag) {
            std::ostringstream os;
            os << "regular branch (unequal radii): Newton over seed grid, found " << out.size()
               << " root(s)\n";
            *diag += os.str();
        }
    }
    std::sort(out.begin(), out.end(),
              [](const CatenoidSolution& a, const CatenoidSolution& b2) { return a.c > b2.c; });
    return out;
}

}  // namespace

const char* to_string(CatenoidKind k) {
    switch (k) {
        case CatenoidKind::TwoDisks: return "two-disks";
        case CatenoidKind::Catenoid: return "catenoid";
        case CatenoidKind::SingularCatenoid: return "singular-catenoid";
    }
    return "?";
}

double catenoid_area(double c, double z0, double z_lo, double z_hi) {
    // 2*pi*c^2 * integral of cosh^2 over t = (z - z0)/c
    const double t1 = (z_lo - z0) / c, t2 = (z_hi - z0) / c;
    auto prim = [](double t) { return 0.5 * t + 0.25 * std::sinh(2.0 * t); };
    return 2.0 * kPi * c * c * (prim(t2) - prim(t1));
}

std::vector<CatenoidSolution> solve_singular_catenoid(const TwoCircleBoundary& b,
                                                      std::string* diag) {
    b.validate();
    if (std::abs(b.r1 - b.r2) > 1e-12)
        throw Error("singular catenoids: unequal radii are not supported");
    const double r = b.r1, d = b.sep;
    // Each piece r = c*cosh((z - z0)/c) must leave its boundary circle and
    // reach the mid-plane with meridian slope tan(30 deg); by symmetry the
    // junction sits at z = 0 with z0 = -c*kJunctionS for the upper piece.
    auto f = [&](double c) { return c * safe_cosh(d / (2 * c) + kJunctionS) - r; };
    const double lo = 1e-4 * r, hi = std::sqrt(3.0) / 2.0 * r;
    std::vector<CatenoidSolution> out;
    for (double c : scan_roots(f, lo, hi, 600)) {
        CatenoidSolution s;
        s.kind = CatenoidKind::SingularCatenoid;
        s.boundary = b;
        s.c = c;
        s.z0 = -c * kJunctionS;  // upper piece; lower piece mirrors in z
        s.r_junction = c * std::cosh(kJunctionS);  // = 2c/sqrt(3)
        s.floating_disk = true;
        s.area = 2.0 * catenoid_area(c, s.z0, 0.0, d / 2) + kPi * s.r_junction * s.r_junction;
        // conormal sum at the junction circle: two mirrored sheet conormals
        // plus the outward disk conormal, in the (e_r, e_z) meridian plane
        const double rp = safe_sinh((0.0 - s.z0) / c);  // dr/dz at junction
        const double g = std::hypot(rp, 1.0);
        const double sum_r = -rp / g - rp / g + 1.0;
        const double sum_z = -1.0 / g + 1.0 / g;
        s.residual = std::max(std::abs(f(c)), std::hypot(sum_r, sum_z));
        out.push_back(s);
    }
    std::sort(out.begin(), out.end(),
              [](const CatenoidSolution& a, const CatenoidSolution& b2) {
                  return a.r_junction > b2.r_junction;
              });
    if (diag) {
        std::ostringstream os;
        os << "singular branch: scanned c in [" << lo << ", " << hi << "], found " << out.size()
           << " root(s)\n";
        *diag += os.str();
    }
    return out;
}

std::vector<CatenoidSolution> enumerate_family(const TwoCircleBoundary& b, std::string* diag) {
    b.validate();
    std::vector<CatenoidSolution> out;
    out.push_back(make_disks(b));
    for (auto& s : regular_catenoids(b, diag)) out.push_back(std::move(s));
    if (std::abs(b.r1 - b.r2) < 1e-12) {
        for (auto& s : solve_singular_catenoid(b, diag)) out.push_back(std::move(s));
    } else if (diag) {
        *diag += "singular branch: skipped (unequal radii unsupported)\n";
    }
    return out;
}

double critical_separation(double r1, double r2) {
    if (!(r1 > 0.0 && r2 > 0.0)) throw Error("critical_separation: radii must be positive");
    if (std::abs(r1 - r2) < 1e-12) {
        // maximize the attainable separation d(c) = 2c*arccosh(r/c)
        const double r = r1;
        double a = 1e-6 * r, b = r * (1.0 - 1e-12);
        auto D = [&](double c) { return 2.0 * c * std::acosh(r / c); };
        for (int it = 0; it < 300; ++it) {
            const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
            if (D(m1) < D(m2))
                a = m1;
            else
                b = m2;
        }
        return D(0.5 * (a + b));
    }
    // unequal radii: bisection on existence of a regular catenoid
    auto has_root = [&](double d) {
        TwoCircleBoundary b{r1, r2, d};
        std::vector<CatenoidSolution> sols;
        // root finding only; avoid eigen solves by duplicating the scan
        const double rmax = std::max(r1, r2);
        auto F = [&](double c, double z0, double& f1, double& f2) {
            f1 = c * safe_cosh((-d / 2 - z0) / c) - r1;
            f2 = c * safe_cosh((d / 2 - z0) / c) - r2;
        };
        for (int ic = 0; ic < 32; ++ic)
            for (int iz = 0; iz < 32; ++iz) {
                double c = 1e-3 * rmax * std::pow(1e3, ic / 31.0);
                double z0 = -d + 2.0 * d * iz / 31.0;
                for (int it = 0; it < 60; ++it) {
                    double f1, f2;
                    F(c, z0, f1, f2);
                    if (std::abs(f1) + std::abs(f2) < 1e-12 * rmax) return true;
                    const double t1 = (-d / 2 - z0) / c, t2 = (d / 2 - z0) / c;
                    const double j11 = safe_cosh(t1) - t1 * safe_sinh(t1), j12 = -safe_sinh(t1);
                    const double j21 = safe_cosh(t2) - t2 * safe_sinh(t2), j22 = -safe_sinh(t2);
                    const double det = j11 * j22 - j12 * j21;
                    if (std::abs(det) < 1e-14 || !std::isfinite(det)) break;
                    c -= (f1 * j22 - f2 * j12) / det;
                    z0 -= (f2 * j11 - f1 * j21) / det;
                    if (!(c > 0.0) || !std::isfinite(c) || !std::isfinite(z0)) break;
                }
            }
        return false;
    };
    double lo = 1e-3 * std::min(r1, r2), hi = 2.0 * (r1 + r2);
    if (!has_root(lo)) throw Error("critical_separation: no catenoid even at tiny separation");
    while (hi - lo > 1e-7) {
        const double m = 0.5 * (lo + hi);
        (has_root(m) ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

double goldschmidt_separation(double r) {
    if (!(r > 0.0)) throw Error("goldschmidt_separation: radius must be positive");
    const double dstar = critical_separation(r, r);
    auto excess = [&](double d) {
        // area of the larger-c (stable) catenoid minus the two-disk area
        auto f = [&](double c) { return c * safe_cosh(d / (2 * c)) - r; };
        const auto roots = scan_roots(f, 1e-4 * r, r, 600);
        if (roots.empty()) throw Error("goldschmidt_separation: no catenoid in bracket");
        const double c = *std::max_element(roots.begin(), roots.end());
        return catenoid_area(c, 0.0, -d / 2, d / 2) - 2.0 * kPi * r * r;
    };
    double lo = 0.2 * r, hi = dstar - 1e-3 * r;  // stay off the fold, where the
                                                 // two roots merge and the scan
                                                 // loses the sign change
    if (excess(lo) >= 0.0 || excess(hi) <= 0.0)
        throw Error("goldschmidt_separation: bracket failure");
    for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (lo + hi);
        (excess(m) < 0.0 ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

BaseSurface catenoid_chart(const CatenoidSolution& sol, const GridSpec& grid) {
    if (sol.kind != CatenoidKind::Catenoid)
        throw Error("catenoid_chart: regular catenoid solutions only");
    return build_catenoid(sol.c, -sol.boundary.sep / 2, sol.boundary.sep / 2, grid, sol.z0);
}

double jacobi_smallest_eigenvalue(const CatenoidSolution& sol, const GridSpec& grid) {
    return jacobi_smallest_eigenvalue(catenoid_chart(sol, grid));
}

ProfileCurve singular_upper_profile(const CatenoidSolution& sol, int n) {
    if (sol.kind != CatenoidKind::SingularCatenoid)
        throw Error("singular_upper_profile: singular solutions only");
    ProfileCurve p;
    p.s.resize(n);
    p.r.resize(n);
    p.z.resize(n);
    const double d2 = sol.boundary.sep / 2;
    for (int i = 0; i < n; ++i) {
        const double z = d2 * i / (n - 1);
        p.s[i] = z;
        p.z[i] = z;
        p.r[i] = sol.c * std::cosh((z - sol.z0) / sol.c);
    }
    p.start_kind = EndpointKind::Junction;
    p.end_kind = EndpointKind::FixedBoundary;
    return p;
}

}  // namespace soapfilm
