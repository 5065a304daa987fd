#pragma once

#include <limits>
#include <string>
#include <vector>

#include "soapfilm/surface.hpp"

namespace soapfilm {

// Two horizontal coaxial circles centered on the z-axis at z = -sep/2 (radius
// r1) and z = +sep/2 (radius r2).
struct TwoCircleBoundary {
    double r1 = 1.0;
    double r2 = 1.0;
    double sep = 0.5;

    void validate() const {
        if (!(r1 > 0.0 && r2 > 0.0 && sep > 0.0))
            throw Error("two-circle boundary: radii and separation must be positive");
    }
};

enum class CatenoidKind { TwoDisks, Catenoid, SingularCatenoid };

struct CatenoidSolution {
    CatenoidKind kind = CatenoidKind::TwoDisks;
    TwoCircleBoundary boundary;

    // Regular catenoid r = c*cosh((z - z0)/c); singular configurations store
    // the common neck scale of the two mirror pieces plus the junction circle.
    double c = 0.0;
    double z0 = 0.0;
    double r_junction = 0.0;
    bool floating_disk = false;

    double area = 0.0;
    double stability_eig = std::numeric_limits<double>::quiet_NaN();
    double residual = 0.0;
};

const char* to_string(CatenoidKind k);

// All members of the two-circle Plateau family found for this boundary:
// always the two disks, plus 0-2 regular catenoids (larger-c branch first)
// and 0-2 singular 120-degree-junction configurations (larger junction radius
// first). Branch scan ranges are appended to *diagnostics when given.
std::vector<CatenoidSolution> enumerate_family(const TwoCircleBoundary& b,
                                               std::string* diagnostics = nullptr);

// Separation of the catenoid fold: two regular catenoids below, none above.
double critical_separation(double r1, double r2);

// Equal radii r: separation at which the stable catenoid area crosses the
// two-disk area 2*pi*r^2.
double goldschmidt_separation(double r);

// The singular (junction) branch only; equal radii required.
std::vector<CatenoidSolution> solve_singular_catenoid(const TwoCircleBoundary& b,
                                                      std::string* diagnostics = nullptr);

// Chart of a regular catenoid solution between its boundary circles.
BaseSurface catenoid_chart(const CatenoidSolution& sol, const GridSpec& grid = {513, 1});

// Smallest Jacobi eigenvalue (modes 0..2) of a regular catenoid solution.
double jacobi_smallest_eigenvalue(const CatenoidSolution& sol, const GridSpec& grid = {1025, 1});

// Meridian profile of a singular solution's catenoid pieces plus junction
// disk, sampled for embedding-level diagnostics (junction first).
ProfileCurve singular_upper_profile(const CatenoidSolution& sol, int n = 257);

// Closed-form lateral area of r = c*cosh((z-z0)/c), z in [z_lo, z_hi].
double catenoid_area(double c, double z0, double z_lo, double z_hi);

}  // namespace soapfilm
