#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "soapfilm/catenoids.hpp"
#include "soapfilm/spectral.hpp"

using namespace soapfilm;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent root finder for the equal-radii shooting map, used as an oracle.
std::vector<double> oracle_roots(double r, double d) {
    auto f = [&](double c) { return c * std::cosh(d / (2 * c)) - r; };
    std::vector<double> roots;
    const int m = 20000;
    double prev = 0.02 * r;
    for (int k = 1; k <= m; ++k) {
        const double c = 0.02 * r + (r - 0.02 * r) * k / m;
        if (f(prev) * f(c) < 0.0) {
            double a = prev, b = c;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (a + b);
                (f(a) * f(mid) <= 0.0 ? b : a) = mid;
            }
            roots.push_back(0.5 * (a + b));
        }
        prev = c;
    }
    return roots;
}

std::vector<CatenoidSolution> catenoids_only(const std::vector<CatenoidSolution>& v) {
    std::vector<CatenoidSolution> out;
    for (const auto& s : v)
        if (s.kind == CatenoidKind::Catenoid) out.push_back(s);
    return out;
}

}  // namespace

TEST_CASE("equal radii, sep 0.5: two regular catenoids matching the oracle") {
    const TwoCircleBoundary b{1.0, 1.0, 0.5};
    const auto fam = enumerate_family(b);
    REQUIRE(fam.size() >= 3);
    CHECK(fam[0].kind == CatenoidKind::TwoDisks);
    CHECK(fam[0].area == doctest::Approx(2.0 * kPi));
    const auto cats = catenoids_only(fam);
    REQUIRE(cats.size() == 2);
    const auto oracle = oracle_roots(1.0, 0.5);
    REQUIRE(oracle.size() == 2);
    CHECK(cats[0].c == doctest::Approx(*std::max_element(oracle.begin(), oracle.end())).epsilon(1e-10));
    CHECK(cats[1].c == doctest::Approx(*std::min_element(oracle.begin(), oracle.end())).epsilon(1e-10));
    for (const auto& s : cats) {
        CHECK(s.residual <= 1e-10);
        CHECK(std::abs(s.z0) < 1e-12);
        // closed-form area vs quadrature on the chart
        const BaseSurface chart = catenoid_chart(s, {2049, 1});
        CHECK(chart.area() == doctest::Approx(s.area).epsilon(1e-5));
    }
    CHECK(cats[0].area < cats[1].area);  // larger-c branch has smaller area
}

TEST_CASE("equal radii, sep 2.0: disks only among regular kinds, with scan diagnostics") {
    std::string diag;
    const auto fam = enumerate_family({1.0, 1.0, 2.0}, &diag);
    CHECK(catenoids_only(fam).empty());
    CHECK(fam[0].kind == CatenoidKind::TwoDisks);
    CHECK(diag.find("scanned c in") != std::string::npos);
}

TEST_CASE("critical separation: oracle value, scaling, and count flip") {
    const double dstar = critical_separation(1.0, 1.0);
    CHECK(dstar == doctest::Approx(1.325487).epsilon(1e-3));
    CHECK(critical_separation(3.0, 3.0) == doctest::Approx(3.0 * dstar).epsilon(1e-9));
    CHECK(catenoids_only(enumerate_family({1.0, 1.0, dstar - 1e-4})).size() == 2);
    CHECK(catenoids_only(enumerate_family({1.0, 1.0, dstar + 1e-4})).empty());
}

TEST_CASE("unequal radii: Newton branch finds both catenoids to residual tolerance") {
    const auto cats = catenoids_only(enumerate_family({1.0, 0.8, 0.4}));
    REQUIRE(cats.size() == 2);
    for (const auto& s : cats) {
        CHECK(s.residual <= 1e-10);
        CHECK(s.z0 != doctest::Approx(0.0).epsilon(1e-6));  // asymmetric neck
    }
    CHECK(cats[0].c > cats[1].c);
}

TEST_CASE("disk calibration: lowest Dirichlet Laplace eigenvalues by Fourier mode") {
    const BaseSurface disk = build_flat_disk(1.0, {2049, 1});
    // squares of the first Bessel zeros j_{0,1}, j_{1,1}
    CHECK(jacobi_mode_eigenvalue(disk, 0) == doctest::Approx(5.783185963).epsilon(2e-4));
    CHECK(jacobi_mode_eigenvalue(disk, 1) == doctest::Approx(14.68197064).epsilon(2e-4));
    CHECK(jacobi_smallest_eigenvalue(disk) == doctest::Approx(5.783185963).epsilon(2e-4));
}

TEST_CASE("stability split across separations") {
    for (double sep : {0.3, 0.5, 0.8, 1.1}) {
        const auto cats = catenoids_only(enumerate_family({1.0, 1.0, sep}));
        REQUIRE(cats.size() == 2);
        CHECK(cats[0].stability_eig > 0.0);  // larger c
        CHECK(cats[1].stability_eig < 0.0);  // smaller c
    }
}

TEST_CASE("stable-branch eigenvalue decreases toward the fold") {
    const double dstar = critical_separation(1.0, 1.0);
    double prev = 1e300;
    for (double sep : {0.5, 0.9, 1.2, dstar - 1e-4}) {
        const auto cats = catenoids_only(enumerate_family({1.0, 1.0, sep}));
        REQUIRE(cats.size() == 2);
        CHECK(cats[0].stability_eig < prev);
        prev = cats[0].stability_eig;
    }
    CHECK(prev > 0.0);
    CHECK(prev < 0.15);  // near-degenerate at the fold
}

TEST_CASE("area crossover separation sits below the fold") {
    const double dg = goldschmidt_separation(1.0);
    const double dstar = critical_separation(1.0, 1.0);
    CHECK(dg < dstar);
    auto stable_area = [&](double d) {
        const auto cats = catenoids_only(enumerate_family({1.0, 1.0, d}));
        return cats.front().area;
    };
    CHECK(stable_area(dg - 0.05) < 2.0 * kPi);
    CHECK(stable_area(dg + 0.05) > 2.0 * kPi);
}

TEST_CASE("singular 120-degree junction configurations") {
    const auto sols = solve_singular_catenoid({1.0, 1.0, 0.5});
    REQUIRE(sols.size() == 2);
    CHECK(sols[0].r_junction > sols[1].r_junction);
    for (const auto& s : sols) {
        CHECK(s.residual <= 1e-10);
        CHECK(s.floating_disk);
        // junction circle on the mid-plane; meridian slope tan(30 deg) there
        const double slope = std::sinh((0.0 - s.z0) / s.c);
        CHECK(slope == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
        CHECK(s.r_junction == doctest::Approx(2.0 * s.c / std::sqrt(3.0)).epsilon(1e-12));
        // boundary circle interpolation
        const double r_top = s.c * std::cosh((0.25 - s.z0) / s.c);
        CHECK(r_top == doctest::Approx(1.0).epsilon(1e-12));
        // area = two pieces + junction disk, all positive and above the disk alone
        CHECK(s.area > kPi * s.r_junction * s.r_junction);
    }
    std::string diag;
    const auto none = solve_singular_catenoid({1.0, 1.0, 3.0}, &diag);
    CHECK(none.empty());
    CHECK(diag.find("scanned c in") != std::string::npos);
    CHECK_THROWS_AS(solve_singular_catenoid({1.0, 0.9, 0.5}), Error);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(enumerate_family({-1.0, 1.0, 0.5}), Error);
    CHECK_THROWS_AS(critical_separation(0.0, 1.0), Error);
}
