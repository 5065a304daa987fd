// Command-line front end: catenoid families, gravity films, estimate sweeps,
// boundary accessibility, deficit reports, and the cross-module invariant
// suite. All file outputs go through a write-temp-then-rename path so a
// failing run never leaves a partial artifact behind.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "soapfilm/boundary.hpp"
#include "soapfilm/catenoids.hpp"
#include "soapfilm/deficits.hpp"
#include "soapfilm/graph.hpp"
#include "soapfilm/lab.hpp"
#include "soapfilm/pmc.hpp"
#include "soapfilm/spectral.hpp"
#include "soapfilm/surface.hpp"

namespace {

using namespace soapfilm;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitEmpty = 2;
constexpr int kExitContinuation = 3;
constexpr int kExitUsage = 64;

// 17 significant digits: doubles round-trip exactly through the JSON text.
std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    if (s == "inf") return "1e9999";  // not produced in practice
    return s;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.good()) throw Error("write to '" + tmp + "' failed");
    }
    std::filesystem::rename(tmp, path);
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::fputs(content.c_str(), stdout);
    else
        atomic_write(path, content);
}

// ---------------------------------------------------------------- catenoids

int cmd_catenoids(double r1, double r2, double sep, bool singular, const std::string& json_out) {
    const TwoCircleBoundary b{r1, r2, sep};
    std::string diag;
    std::vector<CatenoidSolution> sols =
        singular ? solve_singular_catenoid(b, &diag) : enumerate_family(b, &diag);

    std::ostringstream js;
    js << "[\n";
    for (size_t k = 0; k < sols.size(); ++k) {
        const CatenoidSolution& s = sols[k];
        js << "  {\"kind\": \"" << to_string(s.kind) << "\""
           << ", \"c\": " << num(s.c) << ", \"z0\": " << num(s.z0)
           << ", \"r_junction\": " << num(s.r_junction)
           << ", \"floating_disk\": " << (s.floating_disk ? "true" : "false")
           << ", \"area\": " << num(s.area) << ", \"stability_eig\": "
           << (std::isnan(s.stability_eig) ? "null" : num(s.stability_eig))
           << ", \"residual\": " << num(s.residual) << "}" << (k + 1 < sols.size() ? "," : "")
           << "\n";
    }
    js << "]\n";
    emit(json_out, js.str());

    if (sols.empty()) {
        std::fprintf(stderr, "no solutions: %s\n", diag.empty() ? "(no diagnostics)" : diag.c_str());
        return kExitEmpty;
    }
    return kExitOk;
}

// --------------------------------------------------------------------- film

BaseSurface make_base(const std::string& shape, double size, double inner, double sep, int grid) {
    const GridSpec gs{grid, 1};
    if (shape == "disk") return build_flat_disk(size, gs);
    if (shape == "annulus") return build_flat_annulus(inner, size, gs);
    if (shape == "catenoid") {
        const TwoCircleBoundary b{size, size, sep};
        const CatenoidSolution* best = nullptr;
        std::vector<CatenoidSolution> sols = enumerate_family(b);
        for (const CatenoidSolution& s : sols)
            if (s.kind == CatenoidKind::Catenoid && (!best || s.c > best->c)) best = &s;
        if (!best)
            throw Error("no catenoid spans radius " + std::to_string(size) + " at separation " +
                        std::to_string(sep));
        return catenoid_chart(*best, gs);
    }
    throw Error("unknown shape '" + shape + "'");
}

int cmd_film(const std::string& shape, double size, double inner, double sep, double kappa2h,
             int grid, const std::string& csv_out, const std::string& json_out) {
    const BaseSurface base = make_base(shape, size, inner, sep, grid);
    const SolveReport rep = solve_gravity_film(base, {kappa2h, Vec3(0, 0, 1)});
    const ProfileCurve img = image_profile(rep.graph);
    const std::vector<double>& u = rep.graph.u();

    std::ostringstream csv;
    csv.precision(17);
    csv << "s,r,z,u,r_image,z_image\n";
    for (int i = 0; i < base.ns; ++i)
        csv << base.s[i] << ',' << base.r[i] << ',' << base.z[i] << ',' << u[i] << ',' << img.r[i]
            << ',' << img.z[i] << '\n';
    if (!csv_out.empty()) atomic_write(csv_out, csv.str());

    double u_c0 = 0.0;
    for (double v : u) u_c0 = std::max(u_c0, std::abs(v));
    std::ostringstream js;
    js << "{\"shape\": \"" << shape << "\", \"kappa2h\": " << num(kappa2h)
       << ", \"grid\": " << grid << ", \"residual_linf\": " << num(rep.residual_linf)
       << ", \"newton_iters\": " << rep.newton_iters
       << ", \"continuation_steps\": " << rep.continuation_steps << ", \"u_c0\": " << num(u_c0)
       << ", \"area\": " << num(rep.graph.area()) << "}\n";
    emit(json_out, js.str());
    return kExitOk;
}

// -------------------------------------------------------------------- sweep

struct EstimateSpec {
    const char* x;
    const char* y;
    double target;
    double tol;
};

EstimateSpec estimate_spec(const std::string& name) {
    if (name == "c0") return {"H_linf", "u_c0", 1.00, 0.05};
    if (name == "area") return {"H_l2", "area_excess", 2.00, 0.10};
    if (name == "h1") return {"delta_weak", "u_h1", 1.00, 0.05};
    if (name == "weak") return {"H_l2", "delta_weak", 1.00, 0.05};
    throw Error("unknown estimate '" + name + "' (use c0|area|h1|weak)");
}

int cmd_sweep(const std::string& base_name, const std::string& estimate, double p,
              const std::string& hspec, double size, double sep, int grid,
              const std::string& csv_out, const std::string& json_out) {
    double a = 0.0, b = 0.0;
    int n = 0;
    if (std::sscanf(hspec.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3)
        throw CLI::ValidationError("--h", "expected a:b:n, got '" + hspec + "'");
    const BaseSurface base = make_base(base_name, size, 0.0, sep, grid);
    const EstimateSpec es = estimate_spec(estimate);

    const std::vector<SweepRecord> records = run_sweep(base, log_spaced(a, b, n), p);
    if (!csv_out.empty()) write_sweep_csv(csv_out, records);

    const SlopeFit fit = fit_estimate(records, es.x, es.y);
    const bool pass = std::abs(fit.slope - es.target) <= es.tol;
    std::ostringstream js;
    js << "{\"base\": \"" << base_name << "\", \"x\": \"" << es.x << "\", \"y\": \"" << es.y
       << "\", \"slope\": " << num(fit.slope) << ", \"intercept\": " << num(fit.intercept)
       << ", \"r2\": " << num(fit.r2) << ", \"window\": [" << num(fit.window_lo) << ", "
       << num(fit.window_hi) << "], \"target\": " << num(es.target) << ", \"tol\": " << num(es.tol)
       << ", \"pass\": " << (pass ? "true" : "false") << "}\n";
    emit(json_out, js.str());
    return pass ? kExitOk : kExitEmpty;
}

// ------------------------------------------------------------------- access

int cmd_access(const std::string& input, int samples, const std::string& json_out) {
    BoundarySamples boundary = read_boundary_csv(input);
    if (samples > 0) {
        for (std::vector<Vec3>& comp : boundary.components) {
            if (static_cast<int>(comp.size()) <= samples) continue;
            std::vector<Vec3> kept;
            const double stride = static_cast<double>(comp.size()) / samples;
            for (int k = 0; k < samples; ++k) kept.push_back(comp[static_cast<size_t>(k * stride)]);
            comp = std::move(kept);
        }
    }
    const std::vector<ComponentAccess> report = accessibility_report(boundary);
    std::ostringstream js;
    js << "[\n";
    for (size_t k = 0; k < report.size(); ++k)
        js << "  {\"component\": " << k << ", \"accessible_any\": "
           << (report[k].accessible_any ? "true" : "false")
           << ", \"accessible_fraction\": " << num(report[k].accessible_fraction) << "}"
           << (k + 1 < report.size() ? "," : "") << "\n";
    js << "]\n";
    emit(json_out, js.str());
    return kExitOk;
}

// ----------------------------------------------------------------- deficits

int cmd_deficits(const std::string& profile_path, std::vector<double> ps,
                 const std::string& json_out) {
    if (ps.empty()) ps = {1.0, 2.0, 3.0};
    const ProfileCurve curve = read_profile_csv(profile_path);
    const BaseSurface base = build_revolution(curve);
    const DeficitReport rep = integral_deficits(base, ps);
    std::ostringstream js;
    js << "{\"delta_inf\": " << num(rep.delta_inf) << ", \"delta_p\": {";
    bool first = true;
    for (const auto& [p, v] : rep.delta_p) {
        js << (first ? "" : ", ") << "\"" << num(p) << "\": " << num(v);
        first = false;
    }
    js << "}}\n";
    emit(json_out, js.str());
    return kExitOk;
}

// -------------------------------------------------------------------- check

struct CheckRow {
    std::string name;
    bool pass = false;
    std::string detail;
};

void row(std::vector<CheckRow>& rows, const std::string& name, bool pass,
         const std::string& detail) {
    rows.push_back({name, pass, detail});
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::vector<CheckRow> run_check_suite(std::uint64_t seed) {
    std::vector<CheckRow> rows;

    // surface: chart invariants and quadrature against the closed-form area
    {
        const BaseSurface cat = build_catenoid(1.0, -0.5, 0.5, {513, 1});
        bool ok = true;
        std::string detail = "invariants ok";
        try {
            cat.check_invariants(1e-10);
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        const double exact = catenoid_area(1.0, 0.0, -0.5, 0.5);
        const double rel = std::abs(cat.area() - exact) / exact;
        ok = ok && rel <= 1e-4;
        row(rows, "surface: catenoid chart invariants + area quadrature", ok,
            detail + ", area rel err " + sci(rel));
    }

    // catenoids: family residuals and fold location
    {
        const std::vector<CatenoidSolution> sols = enumerate_family({1.0, 1.0, 0.5});
        int regular = 0;
        double worst = 0.0;
        for (const CatenoidSolution& s : sols)
            if (s.kind == CatenoidKind::Catenoid) {
                ++regular;
                worst = std::max(worst, std::abs(s.residual));
            }
        const double dstar = critical_separation(1.0, 1.0);
        const bool ok = regular == 2 && worst <= 1e-10 && dstar > 1.2 && dstar < 1.4;
        row(rows, "catenoids: two-circle family residuals + fold", ok,
            "regular " + std::to_string(regular) + ", max residual " + sci(worst) + ", d* " +
                sci(dstar));
    }

    // catenoids: singular configurations balance their conormals
    {
        const std::vector<CatenoidSolution> sing = solve_singular_catenoid({1.0, 1.0, 0.5});
        double worst = 0.0;
        for (const CatenoidSolution& s : sing) worst = std::max(worst, std::abs(s.residual));
        const bool ok = sing.size() == 2 && worst <= 1e-10 && sing[0].r_junction != sing[1].r_junction;
        row(rows, "catenoids: singular conormal balance", ok,
            std::to_string(sing.size()) + " configurations, max residual " + sci(worst));
    }

    // spectral: stability signs on the two branches of the fold
    {
        const std::vector<CatenoidSolution> sols = enumerate_family({1.0, 1.0, 0.5});
        double lo = 0.0, hi = 0.0;
        for (const CatenoidSolution& s : sols) {
            if (s.kind != CatenoidKind::Catenoid) continue;
            (s.c > 0.5 ? hi : lo) = jacobi_smallest_eigenvalue(s, {513, 1});
        }
        const bool ok = hi > 0.0 && lo < 0.0;
        row(rows, "spectral: fold separates stable and unstable branches", ok,
            "lambda(stable) " + sci(hi) + ", lambda(unstable) " + sci(lo));
    }

    // graph: the zero graph is the identity
    {
        const BaseSurface cat = build_catenoid(1.0, -0.5, 0.5, {513, 1});
        const NormalGraph g(cat, std::vector<double>(cat.node_count(), 0.0));
        double supH = 0.0;
        for (int i = 2; i < cat.ns - 2; ++i) supH = std::max(supH, std::abs(g.mean_curvature()[i]));
        // g.area() (half-edge functional) and cat.area() (nodal trapezoid)
        // are different quadratures; they agree to O(ds^2)
        const double darea = std::abs(g.area() - cat.area()) / cat.area();
        const bool ok = supH <= 1e-4 && darea <= 1e-6;
        row(rows, "graph: zero graph reproduces the base", ok,
            "sup|H| " + sci(supH) + ", area rel diff " + sci(darea));
    }

    // graph: first_variation against a centered difference quotient
    {
        const BaseSurface disk = build_flat_disk(1.0, {257, 1});
        std::vector<double> u(disk.ns), phi(disk.ns);
        for (int i = 0; i < disk.ns; ++i) {
            const double r = disk.r[i];
            u[i] = 0.02 * (1.0 - r * r);
            phi[i] = disk.is_dirichlet(i, 0) ? 0.0 : std::cos(1.5 * r) * (1.0 - r * r);
        }
        const NormalGraph g(disk, u);
        const double dv = first_variation(g, phi);
        const double t = 1e-4;
        auto shift = [&](double tt) {
            std::vector<double> v(u);
            for (int i = 0; i < disk.ns; ++i) v[i] += tt * phi[i];
            return NormalGraph(disk, v).area();
        };
        const double fd = (shift(t) - shift(-t)) / (2.0 * t);
        const double rel = std::abs(dv - fd) / std::max(1e-30, std::abs(fd));
        row(rows, "graph: first variation matches finite differences", rel <= 1e-5,
            "rel err " + sci(rel));
    }

    // pmc: Newton tail is quadratic and the residual meets its tolerance
    {
        const BaseSurface disk = build_flat_disk(1.0, {257, 1});
        const SolveReport rep = solve_gravity_film(disk, {0.05, Vec3(0, 0, 1)});
        bool quad = true;
        const std::vector<double>& h = rep.residual_history;
        for (size_t k = h.size() >= 3 ? h.size() - 3 : 0; k + 1 < h.size(); ++k)
            if (h[k + 1] > 1e-13 && h[k + 1] > 50.0 * h[k] * h[k]) quad = false;
        const bool ok = quad && rep.residual_linf <= 1e-10;
        row(rows, "pmc: quadratic Newton tail + residual tolerance", ok,
            "residual " + sci(rep.residual_linf) + ", iters " + std::to_string(rep.newton_iters));
    }

    // pmc: zero gravity is an exact fixed point
    {
        const BaseSurface cat = build_catenoid(1.0, -0.5, 0.5, {257, 1});
        const SolveReport rep = solve_gravity_film(cat, {0.0, Vec3(0, 0, 1)});
        double sup = 0.0;
        for (double v : rep.graph.u()) sup = std::max(sup, std::abs(v));
        row(rows, "pmc: zero gravity returns the base surface", sup <= 1e-12,
            "sup|u| " + sci(sup));
    }

    // deficits: a minimal catenoid carries no deficit, the Holder chain
    // delta_1 <= A^{1/2} delta_2 <= A delta_inf holds on a non-minimal
    // surface, and the dual bound is monotone in dictionary size
    {
        const BaseSurface cat = build_catenoid(1.0, -0.5, 0.5, {513, 1});
        const DeficitReport flatrep = integral_deficits(cat, {1.0, 2.0});
        const bool minimal_ok = flatrep.delta_inf <= 1e-5 && flatrep.delta_p.at(2.0) <= 1e-5;

        const BaseSurface disk = build_flat_disk(1.0, {257, 1});
        const SolveReport solved = solve_gravity_film(disk, {0.05, Vec3(0, 0, 1)});
        const BaseSurface image = build_revolution(image_profile(solved.graph));
        const DeficitReport rep = integral_deficits(image, {1.0, 2.0});
        const double A = image.area();
        const bool holder = rep.delta_p.at(1.0) <= std::sqrt(A) * rep.delta_p.at(2.0) * (1 + 1e-12) &&
                            std::sqrt(A) * rep.delta_p.at(2.0) <= A * rep.delta_inf * (1 + 1e-12);

        DualBoundOptions small, large;
        small.n_radii = 3, small.lattice = 5, small.ntheta = 8, small.quad = 16;
        large = small, large.n_radii = 6;  // strictly larger, nested dictionary
        const double lb_small = dual_deficit_lower_bound(image, 2.0, small);
        const double lb_large = dual_deficit_lower_bound(image, 2.0, large);
        const bool ok = minimal_ok && holder && lb_small <= lb_large * (1 + 1e-12);
        row(rows, "deficits: Holder chain + dual-bound dictionary monotonicity", ok,
            "delta_1 " + sci(rep.delta_p.at(1.0)) + " <= " + sci(std::sqrt(A) * rep.delta_p.at(2.0)) +
                " <= " + sci(A * rep.delta_inf) + ", lb " + sci(lb_small) + " -> " + sci(lb_large));
    }

    // boundary: nested coplanar rings shield the inner one
    {
        BoundarySamples b;
        b.components.push_back(sampled_circle(1.0, 0.0, 64));
        b.components.push_back(sampled_circle(2.0, 0.0, 64));
        const std::vector<ComponentAccess> rep = accessibility_report(b);
        const bool ok =
            !rep[0].accessible_any && rep[0].accessible_fraction == 0.0 && rep[1].accessible_any;
        row(rows, "boundary: nested rings shield the inner circle", ok,
            "inner fraction " + sci(rep[0].accessible_fraction) + ", outer fraction " +
                sci(rep[1].accessible_fraction));
    }

    // boundary: seeded wedge-sum trials never beat the pairing bound
    {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> half(1, 7);
        std::uniform_real_distribution<double> ang;
        bool ok = true;
        double min_sum = 1e300;
        for (int trial = 0; trial < 1000 && ok; ++trial) {
            const double phi = 1.3;
            const int p = half(rng);
            std::vector<double> t(2 * p + 1);
            for (double& v : t) v = (2.0 * ang(rng) - 1.0) * phi;
            const WedgeSumResult w = wedge_sum_lemma(t, phi);
            ok = w.sum_length > 1.0 && w.sum_length + 1e-12 >= w.pairing_lower_bound;
            min_sum = std::min(min_sum, w.sum_length);
        }
        row(rows, "boundary: wedge sums exceed 1 and the pairing bound", ok,
            "1000 trials, min sum " + sci(min_sum));
    }

    // lab: flat-case inequality chains hold with positive slack
    {
        const BaseSurface disk = build_flat_disk(1.0, {257, 1});
        const SolveReport rep = solve_gravity_film(disk, {0.05, Vec3(0, 0, 1)});
        const FlatCaseReport fc = flat_case_constant_check(rep.graph);
        const bool ok = fc.slack_energy > 0.0 && fc.slack_area > 0.0;
        row(rows, "lab: flat-case inequality chains have positive slack", ok,
            "energy slack " + sci(fc.slack_energy) + ", area slack " + sci(fc.slack_area));
    }

    // lab: log spacing hits its endpoints with a constant ratio
    {
        const std::vector<double> h = log_spaced(1e-3, 1e-1, 9);
        bool ok = std::abs(h.front() - 1e-3) <= 1e-18 && std::abs(h.back() - 1e-1) <= 1e-16;
        for (size_t k = 2; k < h.size(); ++k)
            ok = ok && std::abs(h[k] / h[k - 1] - h[1] / h[0]) <= 1e-12;
        row(rows, "lab: log spacing endpoints and ratio", ok,
            "ratio " + sci(h[1] / h[0]));
    }

    return rows;
}

int cmd_check(const std::string& suite, std::uint64_t seed) {
    if (suite != "all") throw Error("unknown suite '" + suite + "' (only 'all' is available)");
    const std::vector<CheckRow> rows = run_check_suite(seed);
    size_t width = 0;
    for (const CheckRow& r : rows) width = std::max(width, r.name.size());
    int failed = 0;
    for (const CheckRow& r : rows) {
        if (!r.pass) ++failed;
        std::printf("%s  %-*s  %s\n", r.pass ? "PASS" : "FAIL", static_cast<int>(width),
                    r.name.c_str(), r.detail.c_str());
    }
    std::printf("%d/%zu checks passed (seed %llu)\n", static_cast<int>(rows.size()) - failed,
                rows.size(), static_cast<unsigned long long>(seed));
    return failed == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"soap-film geometry toolbox: catenoid families, gravity films, "
                 "sharp-estimate sweeps, boundary accessibility, and deficits"};
    app.require_subcommand(1);

    // catenoids
    double r1 = 1.0, r2 = 1.0, sep = 0.5;
    bool singular = false;
    std::string cat_json;
    CLI::App* cat = app.add_subcommand("catenoids", "solve the two-circle Plateau family");
    cat->add_option("--r1", r1, "radius of the lower circle")->check(CLI::PositiveNumber);
    cat->add_option("--r2", r2, "radius of the upper circle")->check(CLI::PositiveNumber);
    cat->add_option("--sep", sep, "vertical separation")->check(CLI::PositiveNumber);
    cat->add_flag("--singular", singular, "solve the singular (junction) configurations instead");
    cat->add_option("--json", cat_json, "write the solution array here instead of stdout");

    // film
    std::string shape = "disk", film_csv, film_json;
    double size = 1.0, inner = 0.3, fsep = 0.5, kappa2h = 0.0;
    int grid = 257;
    CLI::App* film = app.add_subcommand("film", "solve the gravity-loaded film on a base surface");
    film->add_option("--shape", shape, "disk|annulus|catenoid")
        ->check(CLI::IsMember({"disk", "annulus", "catenoid"}));
    film->add_option("--size", size, "disk/annulus outer radius, or circle radius for catenoid")
        ->check(CLI::PositiveNumber);
    film->add_option("--inner", inner, "annulus inner radius")->check(CLI::PositiveNumber);
    film->add_option("--sep", fsep, "circle separation for the catenoid shape")
        ->check(CLI::PositiveNumber);
    film->add_option("--kappa2h", kappa2h, "gravity strength kappa^2 h")
        ->check(CLI::NonNegativeNumber);
    film->add_option("--grid", grid, "meridian node count")->check(CLI::Range(17, 100001));
    film->add_option("--out", film_csv, "solution grid CSV path");
    film->add_option("--json", film_json, "solve report JSON path (stdout if omitted)");

    // sweep
    std::string sweep_base = "disk", estimate = "c0", hspec = "1e-3:1e-1:9", sweep_csv, sweep_json;
    double sweep_p = 3.0, ssize = 1.0, ssep = 0.5;
    int sgrid = 257;
    CLI::App* sweep = app.add_subcommand("sweep", "gravity sweep + log-log estimate fit");
    sweep->set_help_flag("--help", "print help");  // frees -h for the --h range option
    sweep->add_option("--base", sweep_base, "disk|catenoid")
        ->check(CLI::IsMember({"disk", "catenoid"}));
    sweep->add_option("--estimate", estimate, "c0|area|h1|weak")
        ->check(CLI::IsMember({"c0", "area", "h1", "weak"}));
    sweep->add_option("--p", sweep_p, "extra curvature exponent recorded as H_lp")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--h", hspec, "log-spaced range a:b:n");
    sweep->add_option("--size", ssize, "base scale")->check(CLI::PositiveNumber);
    sweep->add_option("--sep", ssep, "circle separation for the catenoid base")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--grid", sgrid, "meridian node count")->check(CLI::Range(17, 100001));
    sweep->add_option("--out", sweep_csv, "sweep record CSV path");
    sweep->add_option("--json", sweep_json, "fit JSON path (stdout if omitted)");

    // access
    std::string access_in, access_json;
    int samples = 0;
    CLI::App* access = app.add_subcommand("access", "boundary accessibility from infinity");
    access->add_option("--input", access_in, "boundary CSV (component,x,y,z)")->required();
    access->add_option("--samples", samples, "subsample each component to at most this many points")
        ->check(CLI::NonNegativeNumber);
    access->add_option("--json", access_json, "report JSON path (stdout if omitted)");

    // deficits
    std::string def_profile, def_json;
    std::vector<double> def_ps;
    CLI::App* deficits = app.add_subcommand("deficits", "curvature deficits of a revolved profile");
    deficits->add_option("--profile", def_profile, "meridian profile CSV (s,r,z)")->required();
    deficits->add_option("--p", def_ps, "L^p exponents (default 1 2 3)");
    deficits->add_option("--json", def_json, "report JSON path (stdout if omitted)");

    // check
    std::string suite = "all";
    std::uint64_t seed = 12345;
    CLI::App* check = app.add_subcommand("check", "run the cross-module invariant suite");
    check->add_option("--suite", suite, "suite name (all)");
    check->add_option("--seed", seed, "seed for the randomized property trials");

    // flat key=value config: lines like `film.kappa2h=0.05` (subcommand.key);
    // explicit flags take precedence over config values
    app.set_config("--config", "",
                   "flat key=value config file with subcommand.key=value lines; flags win");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        std::fprintf(stderr, "run with --help for usage\n");
        return kExitUsage;
    }

    try {
        if (cat->parsed()) return cmd_catenoids(r1, r2, sep, singular, cat_json);
        if (film->parsed())
            return cmd_film(shape, size, inner, fsep, kappa2h, grid, film_csv, film_json);
        if (sweep->parsed())
            return cmd_sweep(sweep_base, estimate, sweep_p, hspec, ssize, ssep, sgrid, sweep_csv,
                             sweep_json);
        if (access->parsed()) return cmd_access(access_in, samples, access_json);
        if (deficits->parsed()) return cmd_deficits(def_profile, def_ps, def_json);
        if (check->parsed()) return cmd_check(suite, seed);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return std::string(e.what()).find("continuation stalled") != std::string::npos
                   ? kExitContinuation
                   : kExitInternal;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
    return kExitInternal;
}
