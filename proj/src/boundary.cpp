#include "soapfilm/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <fstream>
#include <random>
#include <sstream>

namespace soapfilm {

namespace {

struct Ball {
    Vec3 c = Vec3::Zero();
    double r = -1.0;
    bool contains(const Vec3& p, double tol = 1e-12) const {
        return r >= 0.0 && (p - c).norm() <= r + tol;
    }
};

Ball ball_from(const std::vector<Vec3>& s) {
    switch (s.size()) {
        case 0:
            return {};
        case 1:
            return {s[0], 0.0};
        case 2: {
            const Vec3 c = 0.5 * (s[0] + s[1]);
            return {c, (s[0] - c).norm()};
        }
        case 3: {
            // circumcircle of a triangle, solved in its plane
            const Vec3 ab = s[1] - s[0], ac = s[2] - s[0];
            Eigen::Matrix2d M;
            M << ab.dot(ab), ab.dot(ac), ab.dot(ac), ac.dot(ac);
            const Eigen::Vector2d rhs(0.5 * ab.dot(ab), 0.5 * ac.dot(ac));
            if (std::abs(M.determinant()) < 1e-18) return {};
            const Eigen::Vector2d st = M.colPivHouseholderQr().solve(rhs);
            const Vec3 c = s[0] + st[0] * ab + st[1] * ac;
            return {c, (s[0] - c).norm()};
        }
        default: {
            // circumsphere of a tetrahedron
            Eigen::Matrix3d M;
            Eigen::Vector3d rhs;
            for (int i = 0; i < 3; ++i) {
                const Vec3 d = s[i + 1] - s[0];
                M.row(i) = d.transpose();
                rhs[i] = 0.5 * (s[i + 1].squaredNorm() - s[0].squaredNorm());
            }
            if (std::abs(M.determinant()) < 1e-18) return {};
            const Vec3 c = M.colPivHouseholderQr().solve(rhs);
            return {c, (s[0] - c).norm()};
        }
    }
}

// Welzl's incremental smallest enclosing ball (iterative move-to-front).
Ball welzl(std::vector<Vec3> pts) {
    std::mt19937_64 rng(0x5eb);
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<Vec3> support;
    std::function<Ball(size_t, std::vector<Vec3>&)> solve = [&](size_t n,
                                                                std::vector<Vec3>& sup) -> Ball {
        if (n == 0 || sup.size() == 4) return ball_from(sup);
        Ball b = solve(n - 1, sup);
        if (b.contains(pts[n - 1])) return b;
        sup.push_back(pts[n - 1]);
        b = solve(n - 1, sup);
        sup.pop_back();
        return b;
    };
    return solve(pts.size(), support);
}

}  // namespace

void BoundarySamples::validate() const {
    if (components.empty()) throw Error("boundary samples: no components");
    for (const auto& comp : components) {
        if (comp.empty()) throw Error("boundary samples: empty component");
        for (const Vec3& p : comp)
            if (!p.allFinite()) throw Error("boundary samples: non-finite point");
    }
}

std::optional<WedgeCertificate> is_accessible_at(const Vec3& x, const BoundarySamples& b) {
    b.validate();
    std::vector<Vec3> dirs;
    for (const auto& comp : b.components)
        for (const Vec3& y : comp) {
            const Vec3 d = y - x;
            const double len = d.norm();
            if (len > 1e-12) dirs.push_back(d / len);
        }

    WedgeCertificate cert;
    cert.apex = x;
    if (dirs.empty()) {
        // degenerate boundary: every wedge works, report theta = 0
        cert.axis = Vec3::UnitZ();
        cert.theta = 0.0;
        cert.nu1 = cert.nu2 = Vec3::UnitZ();
        return cert;
    }

    const Ball ball = welzl(dirs);
    if (ball.r < 0.0 || ball.c.norm() < 1e-12) return std::nullopt;  // spans a half sphere or more
    const Vec3 e = ball.c.normalized();
    double min_dot = 1.0;
    for (const Vec3& d : dirs) min_dot = std::min(min_dot, e.dot(d));
    if (min_dot <= 0.0) return std::nullopt;  // cap radius >= pi/2
    const double alpha = std::acos(std::clamp(min_dot, -1.0, 1.0));
    const double half = alpha + 1e-9;
    if (half >= 0.5 * 3.14159265358979323846) return std::nullopt;

    cert.axis = e;
    cert.theta = 2.0 * half;
    const double t = std::tan(half);
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& comp : b.components)
        for (const Vec3& y : comp) {
            const Vec3 z = y - x;
            if (z.norm() <= 1e-12) continue;
            const double along = z.dot(e);
            const double perp = (z - along * e).norm();
            margin = std::min(margin, along - (t > 0.0 ? perp / t : perp > 0.0 ? -1.0 : 0.0));
        }
    cert.margin = std::isfinite(margin) ? margin : 0.0;

    // two-half-space form: nu_i at angles +-(pi - theta)/2 from e
    Vec3 u = std::abs(e.z()) < 0.9 ? e.cross(Vec3::UnitZ()) : e.cross(Vec3::UnitX());
    u.normalize();
    const double beta = 0.5 * (3.14159265358979323846 - cert.theta);
    cert.nu1 = std::cos(beta) * e + std::sin(beta) * u;
    cert.nu2 = std::cos(beta) * e - std::sin(beta) * u;
    return cert;
}

std::vector<ComponentAccess> accessibility_report(const BoundarySamples& b) {
    b.validate();
    std::vector<ComponentAccess> out;
    for (const auto& comp : b.components) {
        ComponentAccess acc;
        int good = 0;
        for (const Vec3& x : comp)
            if (is_accessible_at(x, b)) ++good;
        acc.accessible_fraction = static_cast<double>(good) / comp.size();
        acc.accessible_any = good > 0;
        out.push_back(acc);
    }
    return out;
}

WedgeSumResult wedge_sum_lemma(const std::vector<double>& angles, double phi) {
    const int n = static_cast<int>(angles.size());
    if (n % 2 == 0 || n < 3) throw Error("wedge_sum_lemma: need an odd number (>= 3) of angles");
    if (!(phi < 0.5 * 3.14159265358979323846) || phi < 0.0)
        throw Error("wedge_sum_lemma: need 0 <= phi < pi/2");
    for (double a : angles)
        if (std::abs(a) > phi + 1e-15) throw Error("wedge_sum_lemma: angle outside [-phi, phi]");

    std::vector<double> sorted = angles;
    std::sort(sorted.begin(), sorted.end());
    const int p = (n - 1) / 2;
    double sx = 0.0, sy = 0.0;
    for (double a : sorted) {
        sx += std::cos(a);
        sy += std::sin(a);
    }
    WedgeSumResult res;
    res.sum_length = std::hypot(sx, sy);

    // pairing bound: w_j = v_j + v_{n+1-j} (1-indexed) dotted with the median
    const double cm = std::cos(sorted[p]), sm = std::sin(sorted[p]);
    double bound = 1.0;  // |v_{p+1}|
    for (int j = 0; j < p; ++j) {
        const double wx = std::cos(sorted[j]) + std::cos(sorted[n - 1 - j]);
        const double wy = std::sin(sorted[j]) + std::sin(sorted[n - 1 - j]);
        bound += wx * cm + wy * sm;
    }
    res.pairing_lower_bound = bound;
    if (res.sum_length < bound - 1e-12 || !(bound > 1.0))
        throw Error("wedge_sum_lemma: internal inequality violated");
    return res;
}

BoundarySamples read_boundary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open boundary CSV: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("component,x,y,z", 0) != 0)
        throw Error("boundary CSV must start with header 'component,x,y,z': " + path);
    BoundarySamples b;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        int comp;
        Vec3 pt;
        if (!std::getline(row, cell, ',')) throw Error("boundary CSV: short row");
        comp = std::stoi(cell);
        for (int a = 0; a < 3; ++a) {
            if (!std::getline(row, cell, ',')) throw Error("boundary CSV: short row");
            pt[a] = std::stod(cell);
        }
        if (comp < 0) throw Error("boundary CSV: negative component id");
        if (static_cast<int>(b.components.size()) <= comp) b.components.resize(comp + 1);
        b.components[comp].push_back(pt);
    }
    b.validate();
    return b;
}

void write_boundary_csv(const std::string& path, const BoundarySamples& b) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write boundary CSV: " + path);
    out << "component,x,y,z\n";
    out.precision(17);
    for (size_t c = 0; c < b.components.size(); ++c)
        for (const Vec3& p : b.components[c])
            out << c << ',' << p.x() << ',' << p.y() << ',' << p.z() << '\n';
}

std::vector<Vec3> sampled_circle(double radius, double z, int n, const Vec3& center_xy) {
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * 3.14159265358979323846 * k / n;
        pts.emplace_back(center_xy.x() + radius * std::cos(th),
                         center_xy.y() + radius * std::sin(th), z);
    }
    return pts;
}

}  // namespace soapfilm
