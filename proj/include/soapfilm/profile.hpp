#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace soapfilm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EndpointKind { FixedBoundary, Junction, Axis };

// Sampled meridian curve (r(s), z(s)) generating a surface of revolution
// about the z-axis.
struct ProfileCurve {
    std::vector<double> s;  // monotone sample parameter
    std::vector<double> r;  // radial coordinate, r >= 0
    std::vector<double> z;  // height
    EndpointKind start_kind = EndpointKind::FixedBoundary;
    EndpointKind end_kind = EndpointKind::FixedBoundary;

    int size() const { return static_cast<int>(s.size()); }
    void validate() const;
};

struct CurvatureSample {
    double kappa_meridian;
    double kappa_parallel;
    double mean;  // sum convention: kappa_meridian + kappa_parallel
};

// Principal curvatures of the revolved surface at an interior node, with the
// normal pointing away from the axis. Second-order centered stencils on the
// sample parameter (uniform spacing assumed over the stencil).
CurvatureSample revolution_curvatures(const ProfileCurve& curve, int node_index);

// Area of the revolved surface by trapezoidal quadrature of 2*pi*r*|x_s| ds.
double revolution_area(const ProfileCurve& curve);

// Extrinsic diameter of the revolved surface (over sampled points).
double revolution_diameter(const ProfileCurve& curve);

// CSV with header "s,r,z".
ProfileCurve read_profile_csv(const std::string& path);
void write_profile_csv(const std::string& path, const ProfileCurve& curve);

}  // namespace soapfilm
