#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soapfilm/surface.hpp"

namespace soapfilm {

// Sampled boundary curves, one closed component per point list.
struct BoundarySamples {
    std::vector<std::vector<Vec3>> components;
    void validate() const;
};

// Certificate that the whole boundary fits in an acute circular cone with
// apex x: every y satisfies (y - x).e >= |perp part| / tan(theta/2). The
// equivalent two-half-space form (y - x).nu_i >= 0 is derived from the cone
// by placing nu_1, nu_2 in a plane through e at angles +-(pi - theta)/2.
struct WedgeCertificate {
    Vec3 apex = Vec3::Zero();
    Vec3 axis = Vec3::UnitZ();  // e, unit
    double theta = 0.0;         // opening angle in [0, pi)
    double margin = 0.0;        // min over samples of the cone inequality slack
    Vec3 nu1 = Vec3::UnitZ(), nu2 = Vec3::UnitZ();
};

// Accessibility of the boundary at one of its sample points: the smallest
// enclosing spherical cap of the chord directions {(y - x)/|y - x|} must have
// angular radius strictly below pi/2.
std::optional<WedgeCertificate> is_accessible_at(const Vec3& x, const BoundarySamples& b);

struct ComponentAccess {
    bool accessible_any = false;
    double accessible_fraction = 0.0;
};

std::vector<ComponentAccess> accessibility_report(const BoundarySamples& b);

// Sum of 2p+1 unit plane vectors with angles in [-phi, phi], phi < pi/2:
// exact length of the sum and the pairing lower bound
// sum_j (v_j + v_{2p+2-j}) . v_{p+1} + 1, both strictly greater than 1.
struct WedgeSumResult {
    double sum_length = 0.0;
    double pairing_lower_bound = 0.0;
};

WedgeSumResult wedge_sum_lemma(const std::vector<double>& angles, double phi);

// CSV with header "component,x,y,z".
BoundarySamples read_boundary_csv(const std::string& path);
void write_boundary_csv(const std::string& path, const BoundarySamples& b);

// Convenience: circle of given radius and center height, axis e3.
std::vector<Vec3> sampled_circle(double radius, double z, int n, const Vec3& center_xy = Vec3::Zero());

}  // namespace soapfilm
