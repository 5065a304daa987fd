#include "soapfilm/surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace soapfilm {

namespace {

constexpr double kPi = 3.14159265358979323846;

void finish_weights(BaseSurface& b) {
    b.w.assign(b.ns, 0.0);
    for (int i = 0; i < b.ns; ++i) {
        double cell = b.ds;
        if (i == 0 || i == b.ns - 1) cell *= 0.5;
        b.w[i] = 2.0 * kPi * b.r[i] * b.g[i] * cell;
    }
    if (b.inner_axis) {
        // Node 0 owns the excised-core disk out to the first half cell; the
        // flux face on the axis side carries zero flux by symmetry.
        const double r_half = 0.5 * (b.r[0] + b.r[1]);
        b.w[0] = kPi * r_half * r_half * b.g[0];
    }
}

void check_resolution(const BaseSurface& b) {
    const double k = b.max_abs_curvature();
    if (k * b.ds > 0.5) {
        std::ostringstream msg;
        msg << "grid too coarse to resolve curvature: max|kappa|*spacing = " << k * b.ds
            << " > 0.5; need spacing <= " << 0.5 / k;
        throw Error(msg.str());
    }
}

}  // namespace

Vec3 BaseSurface::position(int i, int j) const {
    const double th = theta(j);
    return {r[i] * std::cos(th), r[i] * std::sin(th), z[i]};
}

Vec3 BaseSurface::normal(int i, int j) const {
    const double th = theta(j);
    return {nu_r[i] * std::cos(th), nu_r[i] * std::sin(th), nu_z[i]};
}

Vec3 BaseSurface::tau_meridian(int i, int j) const {
    const double th = theta(j);
    // tau1 = (r', z')/g, recovered from the stored normal:
    // nu = orient*(z' e_r - r' e_z)/g  =>  (r', z')/g = orient*(-nu_z, nu_r).
    const double t_r = -nu_z[i] * orient;
    const double t_z = nu_r[i] * orient;
    return {t_r * std::cos(th), t_r * std::sin(th), t_z};
}

Vec3 BaseSurface::tau_azimuthal(int i, int j) const {
    const double th = theta(j);
    return {-std::sin(th), std::cos(th), 0.0};
}

double BaseSurface::weight(int i, int j) const {
    (void)j;
    if (ntheta == 1) return w[i];
    return w[i] * dtheta / (2.0 * kPi);
}

double BaseSurface::max_abs_curvature() const {
    double k = 0.0;
    for (int i = 0; i < ns; ++i)
        k = std::max(k, std::max(std::abs(kappa1[i]), std::abs(kappa2[i])));
    return k;
}

double BaseSurface::area() const {
    double a = 0.0;
    for (int i = 0; i < ns; ++i) a += w[i];
    return a;
}

void BaseSurface::check_invariants(double tol) const {
    for (int i = 0; i < ns; ++i) {
        const double n2 = nu_r[i] * nu_r[i] + nu_z[i] * nu_z[i];
        if (std::abs(n2 - 1.0) > tol) throw Error("base surface: normal not unit");
        const Vec3 nu = normal(i, 0);
        const Vec3 t1 = tau_meridian(i, 0);
        const Vec3 t2 = tau_azimuthal(i, 0);
        if (std::abs(nu.dot(t1)) > tol || std::abs(nu.dot(t2)) > tol)
            throw Error("base surface: normal not orthogonal to frame");
        if (std::abs(t1.dot(t2)) > tol || std::abs(t1.norm() - 1.0) > tol)
            throw Error("base surface: frame not orthonormal");
    }
}

BaseSurface build_flat_disk(double radius, const GridSpec& grid) {
    if (radius <= 0.0) throw Error("flat disk: radius must be positive");
    BaseSurface b;
    b.kind = BaseSurface::Kind::FlatDisk;
    b.ns = grid.ns;
    b.ntheta = grid.ntheta;
    b.inner_axis = true;
    b.orient = -1.0;  // flat horizontal base: normal is +e3
    const double r0 = 1e-3 * radius;
    b.ds = (radius - r0) / (b.ns - 1);
    b.dtheta = 2.0 * kPi / b.ntheta;
    b.s.resize(b.ns);
    b.r.resize(b.ns);
    b.z.assign(b.ns, 0.0);
    b.g.assign(b.ns, 1.0);
    b.nu_r.assign(b.ns, 0.0);
    b.nu_z.assign(b.ns, 1.0);
    b.kappa1.assign(b.ns, 0.0);
    b.kappa2.assign(b.ns, 0.0);
    b.dirichlet.assign(b.ns, false);
    for (int i = 0; i < b.ns; ++i) {
        b.s[i] = r0 + i * b.ds;
        b.r[i] = b.s[i];
    }
    b.dirichlet[b.ns - 1] = true;
    finish_weights(b);
    return b;
}

BaseSurface build_flat_annulus(double r_in, double r_out, const GridSpec& grid) {
    if (!(0.0 < r_in && r_in < r_out)) throw Error("flat annulus: need 0 < r_in < r_out");
    BaseSurface b;
    b.kind = BaseSurface::Kind::FlatAnnulus;
    b.ns = grid.ns;
    b.ntheta = grid.ntheta;
    b.orient = -1.0;
    b.ds = (r_out - r_in) / (b.ns - 1);
    b.dtheta = 2.0 * kPi / b.ntheta;
    b.s.resize(b.ns);
    b.r.resize(b.ns);
    b.z.assign(b.ns, 0.0);
    b.g.assign(b.ns, 1.0);
    b.nu_r.assign(b.ns, 0.0);
    b.nu_z.assign(b.ns, 1.0);
    b.kappa1.assign(b.ns, 0.0);
    b.kappa2.assign(b.ns, 0.0);
    b.dirichlet.assign(b.ns, false);
    for (int i = 0; i < b.ns; ++i) {
        b.s[i] = r_in + i * b.ds;
        b.r[i] = b.s[i];
    }
    b.dirichlet[0] = b.dirichlet[b.ns - 1] = true;
    finish_weights(b);
    return b;
}

BaseSurface build_catenoid(double c, double z_min, double z_max, const GridSpec& grid, double z0) {
    if (!(c > 0.0) || !(z_max > z_min)) throw Error("catenoid: need c > 0 and z_max > z_min");
    BaseSurface b;
    b.kind = BaseSurface::Kind::Catenoid;
    b.ns = grid.ns;
    b.ntheta = grid.ntheta;
    b.orient = 1.0;
    b.ds = (z_max - z_min) / (b.ns - 1);
    b.dtheta = 2.0 * kPi / b.ntheta;
    b.s.resize(b.ns);
    b.r.resize(b.ns);
    b.z.resize(b.ns);
    b.g.resize(b.ns);
    b.nu_r.resize(b.ns);
    b.nu_z.resize(b.ns);
    b.kappa1.resize(b.ns);
    b.kappa2.resize(b.ns);
    b.dirichlet.assign(b.ns, false);
    for (int i = 0; i < b.ns; ++i) {
        const double zz = z_min + i * b.ds;
        const double t = (zz - z0) / c;
        b.s[i] = zz;
        b.z[i] = zz;
        b.r[i] = c * std::cosh(t);
        b.g[i] = std::cosh(t);  // sqrt(1 + sinh^2)
        b.nu_r[i] = 1.0 / std::cosh(t);
        b.nu_z[i] = -std::tanh(t);
        const double k = 1.0 / (c * std::cosh(t) * std::cosh(t));
        b.kappa1[i] = -k;
        b.kappa2[i] = k;
    }
    b.dirichlet[0] = b.dirichlet[b.ns - 1] = true;
    finish_weights(b);
    check_resolution(b);
    return b;
}

BaseSurface build_revolution(const ProfileCurve& curve, int ntheta) {
    curve.validate();
    const int n = curve.size();
    const double ds = curve.s[1] - curve.s[0];
    for (int i = 0; i + 1 < n; ++i)
        if (std::abs((curve.s[i + 1] - curve.s[i]) - ds) > 1e-9 * std::abs(ds))
            throw Error("build_revolution: chart requires a uniform sample parameter; resample the profile");
    for (int i = 0; i < n; ++i)
        if (curve.r[i] <= 0.0) throw Error("build_revolution: profile touches the axis (r = 0)");

    BaseSurface b;
    b.kind = BaseSurface::Kind::Revolution;
    b.ns = n;
    b.ntheta = ntheta;
    b.orient = 1.0;
    b.ds = ds;
    b.dtheta = 2.0 * kPi / ntheta;
    b.s = curve.s;
    b.r = curve.r;
    b.z = curve.z;
    b.g.resize(n);
    b.nu_r.resize(n);
    b.nu_z.resize(n);
    b.kappa1.resize(n);
    b.kappa2.resize(n);
    b.dirichlet.assign(n, false);
    b.dirichlet[0] = b.dirichlet[n - 1] = true;

    auto deriv1 = [&](const std::vector<double>& f, int i) {
        if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * ds);
        if (i == n - 1) return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * ds);
        return (f[i + 1] - f[i - 1]) / (2.0 * ds);
    };
    auto deriv2 = [&](const std::vector<double>& f, int i) {
        if (i == 0) return (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (ds * ds);
        if (i == n - 1) return (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (ds * ds);
        return (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (ds * ds);
    };

    for (int i = 0; i < n; ++i) {
        const double rp = deriv1(b.r, i);
        const double zp = deriv1(b.z, i);
        const double rpp = deriv2(b.r, i);
        const double zpp = deriv2(b.z, i);
        const double g2 = rp * rp + zp * zp;
        if (g2 <= 0.0) throw Error("build_revolution: irregular parameterization");
        b.g[i] = std::sqrt(g2);
        b.nu_r[i] = zp / b.g[i];
        b.nu_z[i] = -rp / b.g[i];
        b.kappa1[i] = (rp * zpp - zp * rpp) / (g2 * b.g[i]);
        b.kappa2[i] = zp / (b.r[i] * b.g[i]);
    }
    finish_weights(b);
    check_resolution(b);
    return b;
}

double integrate(const BaseSurface& surface, const std::vector<double>& field) {
    if (static_cast<int>(field.size()) != surface.node_count())
        throw Error("integrate: field size does not match surface grid");
    double acc = 0.0;
    for (int j = 0; j < surface.ntheta; ++j)
        for (int i = 0; i < surface.ns; ++i) acc += surface.weight(i, j) * field[surface.idx(i, j)];
    return acc;
}

SurfaceSummary summarize_profile(const ProfileCurve& curve, double p) {
    curve.validate();
    SurfaceSummary out;
    out.p = p;
    out.area = revolution_area(curve);
    out.diameter = revolution_diameter(curve);
    double l1 = 0.0, l2 = 0.0, lp = 0.0;
    for (int i = 1; i + 1 < curve.size(); ++i) {
        const CurvatureSample k = revolution_curvatures(curve, i);
        const double h = std::abs(k.mean);
        out.h_linf = std::max(out.h_linf, h);
        const double dl_m = 0.5 * (std::hypot(curve.r[i] - curve.r[i - 1], curve.z[i] - curve.z[i - 1]) +
                                   std::hypot(curve.r[i + 1] - curve.r[i], curve.z[i + 1] - curve.z[i]));
        const double wq = 2.0 * kPi * curve.r[i] * dl_m;
        l1 += wq * h;
        l2 += wq * h * h;
        if (std::isfinite(p)) lp += wq * std::pow(h, p);
    }
    out.h_l1 = l1;
    out.h_l2 = std::sqrt(l2);
    out.h_lp = std::isfinite(p) ? std::pow(lp, 1.0 / p) : out.h_linf;
    return out;
}

}  // namespace soapfilm
