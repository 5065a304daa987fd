#include "soapfilm/lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "soapfilm/deficits.hpp"
#include "soapfilm/spectral.hpp"

namespace soapfilm {

namespace {

constexpr double kPi = 3.14159265358979323846;

int thread_count(int jobs) {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SOAPFILM_THREADS")) {
        const int k = std::atoi(env);
        if (k > 0) n = k;
    }
    if (n < 1) n = 1;
    return std::min(n, jobs);
}

std::string grid_tag(const BaseSurface& base) {
    std::ostringstream tag;
    tag << "ns=" << base.ns << ";ntheta=" << base.ntheta;
    return tag.str();
}

// Area of the discrete functional at u = 0 on the same base; the excess is
// measured against this rather than the node-weight base area so the two
// quadratures cancel and the excess stays nonnegative down to roundoff.
double zero_graph_area(const BaseSurface& base) {
    return NormalGraph(base, std::vector<double>(base.node_count(), 0.0)).area();
}

SweepRecord record_from_graph(const NormalGraph& g, double h, double p, double area0) {
    const BaseSurface& base = g.base();
    SweepRecord rec;
    rec.h = h;
    rec.grid = grid_tag(base);
    for (double v : g.u()) rec.u_c0 = std::max(rec.u_c0, std::abs(v));

    std::vector<double> h1_density(base.node_count());
    const auto& u = g.u();
    const auto& d1 = g.du_meridian();
    const auto& d2 = g.du_azimuthal();
    for (int k = 0; k < base.node_count(); ++k)
        h1_density[k] = u[k] * u[k] + d1[k] * d1[k] + d2[k] * d2[k];
    rec.u_h1 = std::sqrt(std::max(0.0, integrate(base, h1_density)));

    rec.area_excess = g.area() - area0;
    DeficitReport dr = integral_deficits(g, {2.0, p});
    rec.H_linf = dr.delta_inf;
    rec.H_l2 = dr.delta_p.at(2.0);
    rec.H_lp = dr.delta_p.at(p);
    rec.delta_weak = base.ntheta == 1 ? weak_deficit(g) : std::numeric_limits<double>::quiet_NaN();
    return rec;
}

double field_by_name(const SweepRecord& r, const std::string& name) {
    if (name == "h") return r.h;
    if (name == "u_c0") return r.u_c0;
    if (name == "u_h1") return r.u_h1;
    if (name == "area_excess") return r.area_excess;
    if (name == "H_linf") return r.H_linf;
    if (name == "H_l2") return r.H_l2;
    if (name == "H_lp") return r.H_lp;
    if (name == "delta_weak") return r.delta_weak;
    throw Error("unknown sweep norm: " + name);
}

}  // namespace

std::vector<double> log_spaced(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw Error("log_spaced: need 0 < lo < hi, n >= 2");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    return v;
}

std::vector<SweepRecord> run_sweep(const BaseSurface& base, const std::vector<double>& h_values,
                                   double p) {
    if (h_values.empty()) throw Error("run_sweep: no h values");
    const double lam = jacobi_smallest_eigenvalue(base);
    if (!(lam > 0.0)) {
        std::ostringstream msg;
        msg << "run_sweep: base is not strictly stable (smallest Jacobi eigenvalue " << lam
            << "); the sharp estimates assume strict stability";
        throw Error(msg.str());
    }

    const double area0 = zero_graph_area(base);
    std::vector<SweepRecord> records(h_values.size());
    std::vector<std::string> errors(h_values.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t k = next.fetch_add(1);
            if (k >= h_values.size()) return;
            try {
                const double h = h_values[k];
                if (h == 0.0) {
                    NormalGraph g(base, std::vector<double>(base.node_count(), 0.0));
                    records[k] = record_from_graph(g, 0.0, p, area0);
                } else {
                    SolveReport rep = solve_gravity_film(base, GravityParams{h});
                    records[k] = record_from_graph(rep.graph, h, p, area0);
                }
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = thread_count(static_cast<int>(h_values.size()));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (size_t k = 0; k < errors.size(); ++k)
        if (!errors[k].empty()) {
            std::ostringstream msg;
            msg << "run_sweep: solve at h = " << h_values[k] << " failed: " << errors[k];
            throw Error(msg.str());
        }
    return records;
}

SlopeFit fit_estimate(const std::vector<SweepRecord>& records, const std::string& x_norm,
                      const std::string& y_norm) {
    if (records.size() < 5) throw Error("fit_estimate: need at least 5 records");
    const int n = static_cast<int>(records.size());
    std::vector<double> lx(n), ly(n);
    SlopeFit fit;
    fit.window_lo = std::numeric_limits<double>::infinity();
    fit.window_hi = -fit.window_lo;
    for (int i = 0; i < n; ++i) {
        const double x = field_by_name(records[i], x_norm);
        const double y = field_by_name(records[i], y_norm);
        if (!(x > 0.0) || !(y > 0.0)) throw Error("fit_estimate: nonpositive value in records");
        lx[i] = std::log(x);
        ly[i] = std::log(y);
        fit.window_lo = std::min(fit.window_lo, x);
        fit.window_hi = std::max(fit.window_hi, x);
    }
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) mx += lx[i], my += ly[i];
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw Error("fit_estimate: degenerate x values");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write sweep CSV: " + path);
    out.precision(17);
    out << "h,u_c0,u_h1,area_excess,H_linf,H_l2,H_lp,delta_weak,grid\n";
    for (const auto& r : records)
        out << r.h << ',' << r.u_c0 << ',' << r.u_h1 << ',' << r.area_excess << ',' << r.H_linf
            << ',' << r.H_l2 << ',' << r.H_lp << ',' << r.delta_weak << ',' << r.grid << '\n';
}

std::vector<SweepRecord> read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open sweep CSV: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("h,u_c0,u_h1,area_excess", 0) != 0)
        throw Error("sweep CSV header mismatch: " + path);
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        SweepRecord r;
        double* slots[8] = {&r.h,      &r.u_c0, &r.u_h1, &r.area_excess,
                            &r.H_linf, &r.H_l2, &r.H_lp, &r.delta_weak};
        for (double* slot : slots) {
            if (!std::getline(row, cell, ',')) throw Error("sweep CSV: short row");
            *slot = std::stod(cell);
        }
        std::getline(row, r.grid, ',');
        records.push_back(r);
    }
    return records;
}

FlatCaseReport flat_case_constant_check(const NormalGraph& g) {
    const BaseSurface& base = g.base();
    if (base.kind != BaseSurface::Kind::FlatDisk && base.kind != BaseSurface::Kind::FlatAnnulus)
        throw Error("flat_case_constant_check: base surface must be flat");

    FlatCaseReport rep;
    rep.eps = g.eps();
    rep.factor = 1.0 / 3.0 - rep.eps * rep.eps;

    std::vector<double> grad_density(base.node_count());
    const auto& d1 = g.du_meridian();
    const auto& d2 = g.du_azimuthal();
    for (int k = 0; k < base.node_count(); ++k)
        grad_density[k] = d1[k] * d1[k] + d2[k] * d2[k];
    rep.grad_sq = std::max(0.0, integrate(base, grad_density));
    rep.delta = weak_deficit(g);
    rep.area_excess = g.area() - zero_graph_area(base);

    rep.lhs_energy = rep.factor * rep.grad_sq;
    rep.rhs_energy = rep.delta * std::sqrt(rep.grad_sq);
    rep.slack_energy = rep.rhs_energy - rep.lhs_energy;
    rep.lhs_area = rep.factor * rep.area_excess;
    rep.rhs_area = rep.delta * rep.delta;
    rep.slack_area = rep.rhs_area - rep.lhs_area;
    return rep;
}

// ---------------------------------------------------------------------------
// Bubbling profile: piecewise-analytic meridian with C1 junctions and
// continuous parameter speed, so both the analytic curvature reports and the
// resampled ProfileCurve are clean.

namespace {

// One meridian piece parametrized over [0, len] at (approximately) unit
// speed, with exact unit tangents at its endpoints.
struct Piece {
    double len = 0.0;
    // r, z and their first/second derivatives with respect to the local
    // parameter.
    std::function<void(double, double*, double*, double*, double*, double*, double*)> eval;
};

// Catenoid meridian r = c*cosh((z - z0)/c) parametrized by its own arc
// length sigma = c*sinh((z - z0)/c), traversed from sigma_a to sigma_b.
Piece catenoid_piece(double c, double z0, double sigma_a, double sigma_b) {
    Piece p;
    p.len = std::abs(sigma_b - sigma_a);
    const double sgn = sigma_b >= sigma_a ? 1.0 : -1.0;
    p.eval = [=](double t, double* r, double* z, double* rp, double* zp, double* rpp,
                 double* zpp) {
        const double s = sigma_a + sgn * t;
        const double rad = std::sqrt(c * c + s * s);
        *r = rad;
        *z = z0 + c * std::asinh(s / c);
        *rp = sgn * s / rad;
        *zp = sgn * c / rad;
        *rpp = c * c / (rad * rad * rad);
        *zpp = -c * s / (rad * rad * rad);
    };
    return p;
}

Piece line_piece(double r0, double z0, double r1, double z1) {
    Piece p;
    p.len = std::hypot(r1 - r0, z1 - z0);
    const double dr = (r1 - r0) / p.len, dz = (z1 - z0) / p.len;
    p.eval = [=](double t, double* r, double* z, double* rp, double* zp, double* rpp,
                 double* zpp) {
        *r = r0 + dr * t;
        *z = z0 + dz * t;
        *rp = dr;
        *zp = dz;
        *rpp = 0.0;
        *zpp = 0.0;
    };
    return p;
}

// Cubic Hermite with unit endpoint speeds: tangent vectors are the unit
// directions scaled by the piece length, so the global parametrization stays
// C1 across junctions.
Piece hermite_piece(double r0, double z0, double dr0, double dz0, double r1, double z1,
                    double dr1, double dz1) {
    // estimate the arc length, then rescale so endpoint speeds are exactly 1
    double len = std::hypot(r1 - r0, z1 - z0);
    for (int pass = 0; pass < 3; ++pass) {
        double acc = 0.0, pr = r0, pz = z0;
        for (int k = 1; k <= 256; ++k) {
            const double t = static_cast<double>(k) / 256;
            const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
            const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
            const double r = h00 * r0 + h10 * len * dr0 + h01 * r1 + h11 * len * dr1;
            const double z = h00 * z0 + h10 * len * dz0 + h01 * z1 + h11 * len * dz1;
            acc += std::hypot(r - pr, z - pz);
            pr = r;
            pz = z;
        }
        len = acc;
    }
    Piece p;
    p.len = len;
    p.eval = [=](double s, double* r, double* z, double* rp, double* zp, double* rpp,
                 double* zpp) {
        const double t = s / len;
        const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
        const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
        const double g00 = 6 * t * (t - 1), g10 = (1 - t) * (1 - 3 * t);
        const double g01 = -6 * t * (t - 1), g11 = t * (3 * t - 2);
        const double w00 = 12 * t - 6, w10 = 6 * t - 4, w01 = 6 - 12 * t, w11 = 6 * t - 2;
        *r = h00 * r0 + h10 * len * dr0 + h01 * r1 + h11 * len * dr1;
        *z = h00 * z0 + h10 * len * dz0 + h01 * z1 + h11 * len * dz1;
        *rp = (g00 * r0 + g10 * len * dr0 + g01 * r1 + g11 * len * dr1) / len;
        *zp = (g00 * z0 + g10 * len * dz0 + g01 * z1 + g11 * len * dz1) / len;
        *rpp = (w00 * r0 + w10 * len * dr0 + w01 * r1 + w11 * len * dr1) / (len * len);
        *zpp = (w00 * z0 + w10 * len * dz0 + w01 * z1 + w11 * len * dz1) / (len * len);
    };
    return p;
}

double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    if (fa * f(b) > 0.0) throw Error("bubbling_family: bracketing failed");
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (f(m) * fa <= 0.0)
            b = m;
        else
            a = m, fa = f(a);
    }
    return 0.5 * (a + b);
}

}  // namespace

BubblingReport bubbling_family(double circle_radius, double eps, bool with_dual_bound) {
    const double R = circle_radius;
    if (!(R > 0.0)) throw Error("bubbling_family: circle radius must be positive");
    if (!(eps > 0.0) || eps > 0.2 * R)
        throw Error("bubbling_family: neck scale must lie in (0, 0.2*radius] to embed");
    const double e = eps / R;  // work at unit radius, rescale at the end

    // outer catenoid between unit circles at z = 0 and z = 0.5
    const double sep = 0.5;
    const double c0 =
        bisect([&](double c) { return c * std::cosh(0.5 * sep / c) - 1.0; }, 0.2, 1.0);
    const double z0 = 0.5 * sep;
    auto sigma_of = [&](double z) { return c0 * std::sinh((z - z0) / c0); };
    auto r_outer = [&](double z) { return c0 * std::cosh((z - z0) / c0); };

    // the catenoid sheet stops where it is 0.85*eps away from Gamma_1 = (1,0)
    const double z_q = bisect(
        [&](double z) { return std::hypot(r_outer(z) - 1.0, z) - 0.85 * e; }, 1e-9, 0.45);

    // inner double sheet at heights z_s and 0, joined by a catenoidal neck
    // whose wings reach the junction radius rho exactly at the sheet levels
    const double z_s = 0.6 * e;
    const double rho = 0.25;
    const double cn = bisect(
        [&](double c) { return c * std::acosh(rho / c) - 0.5 * z_s; }, 1e-9, 0.8 * rho);
    const double zn = 0.5 * z_s;  // neck center height
    const double sig_wing = std::sqrt(rho * rho - cn * cn);  // neck arc length to the junction

    std::vector<Piece> pieces;
    // S1: outer catenoid from Gamma_2 down to the ball around Gamma_1
    pieces.push_back(catenoid_piece(c0, z0, sigma_of(sep), sigma_of(z_q)));
    // unit tangent of S1 at its end (sigma decreasing)
    {
        const double s = sigma_of(z_q), rad = std::sqrt(c0 * c0 + s * s);
        const double dr_in = -s / rad, dz_in = -c0 / rad;
        // S2: the sharp turn, fully inside the eps-ball
        pieces.push_back(hermite_piece(r_outer(z_q), z_q, dr_in, dz_in, 1.0 - 0.6 * e, z_s,
                                       -1.0, 0.0));
    }
    // S3: upper sheet inward
    pieces.push_back(line_piece(1.0 - 0.6 * e, z_s, rho + 0.1, z_s));
    // S4: gentle fillet onto the upper neck wing (slope mismatch cn/sig_wing)
    pieces.push_back(hermite_piece(rho + 0.1, z_s, -1.0, 0.0, rho, z_s, -sig_wing / rho,
                                   -cn / rho));
    // S5: through the neck, upper junction to lower junction, by arc length
    pieces.push_back(catenoid_piece(cn, zn, sig_wing, -sig_wing));
    // S6: fillet from the lower wing back to the horizontal disk
    pieces.push_back(hermite_piece(rho, 0.0, sig_wing / rho, -cn / rho, rho + 0.1, 0.0, 1.0,
                                   0.0));
    // S7: disk sheet out to Gamma_1
    pieces.push_back(line_piece(rho + 0.1, 0.0, 1.0, 0.0));

    BubblingReport rep;
    rep.neck_radius = cn * R;

    // analytic sweep over the pieces: curvature reports, area, ring crossings
    double total_len = 0.0;
    for (const auto& p : pieces) total_len += p.len;
    double prev_dist = -1.0, prev_r = 0.0;
    for (const auto& p : pieces) {
        const int m = std::max(2000, static_cast<int>(std::ceil(p.len / (0.25 * cn))));
        double prev_val = 0.0;
        for (int k = 0; k <= m; ++k) {
            const double t = p.len * k / m;
            double r, z, rp, zp, rpp, zpp;
            p.eval(t, &r, &z, &rp, &zp, &rpp, &zpp);
            const double g = std::hypot(rp, zp);
            const double km = (rp * zpp - zp * rpp) / (g * g * g);
            const double kp = zp / (r * g);
            const double H = std::abs(km + kp);
            const double dist = std::hypot(r - 1.0, z);
            if (dist > e) rep.h_sup_away = std::max(rep.h_sup_away, H);
            const double val = H * 2.0 * kPi * r * g;  // |H| dA per unit parameter
            const double area_val = 2.0 * kPi * r * g;
            if (k > 0) {
                rep.h_l1 += 0.5 * (prev_val + val) * (p.len / m);
                rep.area += 0.5 * area_val * (p.len / m);  // trapezoid, second half below
            }
            if (k < m) rep.area += 0.5 * area_val * (p.len / m);
            // crossings of the eps-sphere around Gamma_1
            if (prev_dist > 0.0 && (prev_dist - e) * (dist - e) < 0.0) {
                const double w = (e - prev_dist) / (dist - prev_dist);
                rep.ring_length += 2.0 * kPi * ((1.0 - w) * prev_r + w * r);
            }
            prev_val = val;
            prev_dist = dist;
            prev_r = r;
        }
    }

    // limit object: the full outer catenoid plus the unit disk twice
    auto cat_area = [&](double sig) {
        return kPi * (sig * std::sqrt(c0 * c0 + sig * sig) +
                      c0 * c0 * std::asinh(sig / c0));
    };
    rep.area_limit = cat_area(sigma_of(sep)) - cat_area(sigma_of(0.0)) + 2.0 * kPi;

    // resample to a uniform-parameter profile fine enough for the neck
    const int N = std::max(4001, static_cast<int>(std::ceil(total_len / (0.35 * cn))) + 1);
    ProfileCurve curve;
    curve.s.resize(N);
    curve.r.resize(N);
    curve.z.resize(N);
    const double hparam = total_len / (N - 1);
    int seg = 0;
    double seg_start = 0.0;
    for (int i = 0; i < N; ++i) {
        double t = i * hparam;
        while (seg + 1 < static_cast<int>(pieces.size()) && t > seg_start + pieces[seg].len) {
            seg_start += pieces[seg].len;
            ++seg;
        }
        const double local = std::clamp(t - seg_start, 0.0, pieces[seg].len);
        double r, z, rp, zp, rpp, zpp;
        pieces[seg].eval(local, &r, &z, &rp, &zp, &rpp, &zpp);
        curve.s[i] = t;
        curve.r[i] = r;
        curve.z[i] = z;
    }
    // exact endpoints on the boundary circles
    curve.r.front() = 1.0;
    curve.z.front() = sep;
    curve.r.back() = 1.0;
    curve.z.back() = 0.0;

    // rescale to the requested radius
    for (int i = 0; i < N; ++i) {
        curve.s[i] *= R;
        curve.r[i] *= R;
        curve.z[i] *= R;
    }
    rep.h_sup_away /= R;
    rep.h_l1 *= R;
    rep.area *= R * R;
    rep.area_limit *= R * R;
    rep.ring_length *= R;
    rep.profile = curve;

    if (with_dual_bound) {
        BaseSurface base = build_revolution(curve);
        DualBoundOptions opt;
        opt.n_radii = 4;
        opt.lattice = 3;
        opt.ntheta = 8;
        opt.quad = 24;
        rep.delta_minus_inf_lb =
            dual_deficit_lower_bound(base, std::numeric_limits<double>::infinity(), opt);
    }
    return rep;
}

}  // namespace soapfilm
