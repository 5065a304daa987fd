#include "soapfilm/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace soapfilm {

void ProfileCurve::validate() const {
    if (s.size() < 3 || s.size() != r.size() || s.size() != z.size())
        throw Error("profile: needs >= 3 samples with matching s/r/z lengths");
    for (size_t i = 0; i + 1 < s.size(); ++i)
        if (!(s[i + 1] > s[i])) throw Error("profile: sample parameter must be strictly increasing");
    for (double ri : r)
        if (!(ri >= 0.0) || !std::isfinite(ri)) throw Error("profile: r must be finite and >= 0");
}

namespace {

// Nonuniform 3-point first/second derivatives at the middle node.
struct Stencil {
    double d1m, d10, d1p;  // first-derivative weights
    double d2m, d20, d2p;  // second-derivative weights
};

Stencil stencil(double hm, double hp) {
    Stencil st;
    st.d1m = -hp / (hm * (hm + hp));
    st.d10 = (hp - hm) / (hm * hp);
    st.d1p = hm / (hp * (hm + hp));
    st.d2m = 2.0 / (hm * (hm + hp));
    st.d20 = -2.0 / (hm * hp);
    st.d2p = 2.0 / (hp * (hm + hp));
    return st;
}

}  // namespace

CurvatureSample revolution_curvatures(const ProfileCurve& curve, int node_index) {
    curve.validate();
    const int n = curve.size();
    if (node_index <= 0 || node_index >= n - 1)
        throw Error("revolution_curvatures: node must be interior");
    const int i = node_index;
    if (curve.r[i] <= 0.0)
        throw Error("revolution_curvatures: degenerate node on the axis (r = 0)");

    const double hm = curve.s[i] - curve.s[i - 1];
    const double hp = curve.s[i + 1] - curve.s[i];
    const Stencil st = stencil(hm, hp);
    const double rp = st.d1m * curve.r[i - 1] + st.d10 * curve.r[i] + st.d1p * curve.r[i + 1];
    const double zp = st.d1m * curve.z[i - 1] + st.d10 * curve.z[i] + st.d1p * curve.z[i + 1];
    const double rpp = st.d2m * curve.r[i - 1] + st.d20 * curve.r[i] + st.d2p * curve.r[i + 1];
    const double zpp = st.d2m * curve.z[i - 1] + st.d20 * curve.z[i] + st.d2p * curve.z[i + 1];

    const double g2 = rp * rp + zp * zp;
    if (g2 <= 0.0) throw Error("revolution_curvatures: irregular parameterization ((r')^2+(z')^2 = 0)");
    const double g = std::sqrt(g2);

    // Normal away from the axis: nu = (z' e_r - r' e_z) / g.
    CurvatureSample out;
    out.kappa_meridian = (rp * zpp - zp * rpp) / (g2 * g);
    out.kappa_parallel = zp / (curve.r[i] * g);
    out.mean = out.kappa_meridian + out.kappa_parallel;
    return out;
}

double revolution_area(const ProfileCurve& curve) {
    curve.validate();
    const double pi = 3.14159265358979323846;
    double area = 0.0;
    for (int i = 0; i + 1 < curve.size(); ++i) {
        const double dr = curve.r[i + 1] - curve.r[i];
        const double dz = curve.z[i + 1] - curve.z[i];
        const double dl = std::hypot(dr, dz);
        area += 2.0 * pi * 0.5 * (curve.r[i] + curve.r[i + 1]) * dl;
    }
    return area;
}

double revolution_diameter(const ProfileCurve& curve) {
    curve.validate();
    // Extrinsic diameter of the revolved set: realized either within one
    // meridian half-plane or between antipodal meridians.
    double best = 0.0;
    const int n = curve.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double dz = curve.z[i] - curve.z[j];
            const double same = std::hypot(curve.r[i] - curve.r[j], dz);
            const double anti = std::hypot(curve.r[i] + curve.r[j], dz);
            best = std::max(best, std::max(same, anti));
        }
    }
    return best;
}

ProfileCurve read_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open profile CSV: " + path);
    std::string line;
    if (!std::getline(in, line)) throw Error("empty profile CSV: " + path);
    ProfileCurve curve;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        double vals[3];
        for (int k = 0; k < 3; ++k) {
            if (!std::getline(row, cell, ',')) throw Error("malformed profile CSV row: " + line);
            vals[k] = std::stod(cell);
        }
        curve.s.push_back(vals[0]);
        curve.r.push_back(vals[1]);
        curve.z.push_back(vals[2]);
    }
    curve.validate();
    return curve;
}

void write_profile_csv(const std::string& path, const ProfileCurve& curve) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write profile CSV: " + path);
    out << "s,r,z\n";
    char buf[128];
    for (int i = 0; i < curve.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", curve.s[i], curve.r[i], curve.z[i]);
        out << buf;
    }
}

}  // namespace soapfilm
