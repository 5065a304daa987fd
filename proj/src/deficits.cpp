#include "soapfilm/deficits.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "soapfilm/graph_ops.hpp"

namespace soapfilm {

namespace {

constexpr double kPi = 3.14159265358979323846;

DeficitReport norms_from_field(const BaseSurface& b, const std::vector<double>& H,
                               const std::vector<double>& jac, const std::vector<double>& ps) {
    DeficitReport rep;
    for (int j = 0; j < b.ntheta; ++j)
        for (int i = 0; i < b.ns; ++i)
            rep.delta_inf = std::max(rep.delta_inf, std::abs(H[b.idx(i, j)]));
    for (double p : ps) {
        if (!(p >= 1.0) || !std::isfinite(p))
            throw Error("integral_deficits: p must be finite and >= 1");
        double acc = 0.0;
        for (int j = 0; j < b.ntheta; ++j)
            for (int i = 0; i < b.ns; ++i) {
                const int k = b.idx(i, j);
                acc += b.weight(i, j) * jac[k] * std::pow(std::abs(H[k]), p);
            }
        rep.delta_p[p] = std::pow(acc, 1.0 / p);
    }
    std::ostringstream meta;
    meta << "ns=" << b.ns << ",ntheta=" << b.ntheta;
    rep.meta = meta.str();
    return rep;
}

// eta(t) = (1 - t^2)^2 and its radial derivative, t = |x - c| / rho.
inline double bump(double t) {
    const double s = 1.0 - t * t;
    return t < 1.0 ? s * s : 0.0;
}
inline double bump_prime(double t) { return t < 1.0 ? -4.0 * t * (1.0 - t * t) : 0.0; }

// V(x) and the constant/linear part of its gradient for each field kind.
inline Vec3 field_direction(const BumpField& X, const Vec3& d) {
    switch (X.kind) {
        case BumpField::Kind::Coordinate:
            return Vec3::Unit(X.axis);
        case BumpField::Kind::Rotation:
            return Vec3::Unit(X.axis).cross(d);
        case BumpField::Kind::Radial:
            return d / 3.0;
    }
    return Vec3::Zero();
}

// Full ambient gradient of X = eta * V at offset d = x - center.
inline Eigen::Matrix3d field_gradient(const BumpField& X, const Vec3& d) {
    const double rr = d.norm();
    const double t = rr / X.radius;
    if (t >= 1.0) return Eigen::Matrix3d::Zero();
    const Vec3 m = rr > 0.0 ? Vec3(d / rr) : Vec3::Zero();
    const Vec3 grad_eta = m * (bump_prime(t) / X.radius);
    Eigen::Matrix3d G = field_direction(X, d) * grad_eta.transpose();
    const double eta = bump(t);
    switch (X.kind) {
        case BumpField::Kind::Coordinate:
            break;
        case BumpField::Kind::Rotation: {
            const Vec3 a = Vec3::Unit(X.axis);
            Eigen::Matrix3d A;
            A << 0, -a.z(), a.y(), a.z(), 0, -a.x(), -a.y(), a.x(), 0;
            G += eta * A;
            break;
        }
        case BumpField::Kind::Radial:
            G += (eta / 3.0) * Eigen::Matrix3d::Identity();
            break;
    }
    return G;
}

// Unit-radius constants: ||grad X||_{L^p} = C(kind, p) * radius^{3/p - s} with
// s = 1 for coordinate fields (V independent of radius) and s = 0 otherwise
// (V scales linearly with the bump radius). Cached per (kind, p, quad).
double unit_norm_constant(BumpField::Kind kind, double p, int quad) {
    struct Key {
        int kind, quad;
        double p;
        bool operator<(const Key& o) const {
            if (kind != o.kind) return kind < o.kind;
            if (quad != o.quad) return quad < o.quad;
            return p < o.p;
        }
    };
    static std::map<Key, double> cache;
    static std::mutex mu;
    const Key key{static_cast<int>(kind), quad, p};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    BumpField X;
    X.kind = kind;
    X.radius = 1.0;
    double value;
    if (std::isinf(p)) {
        // sup bound: scan the (t, angle) profile of |grad X|_F, which covers
        // the whole ball by rotational symmetry about the field axis.
        double sup = 0.0;
        const int nt = 4096, na = kind == BumpField::Kind::Rotation ? 256 : 1;
        for (int ia = 0; ia < na; ++ia) {
            const double phi = (ia + 0.5) / na * 0.5 * kPi;
            const Vec3 dir(std::sin(phi), 0.0, std::cos(phi));  // axis = z here
            BumpField Z = X;
            Z.axis = 2;
            for (int it = 0; it <= nt; ++it) {
                const double t = static_cast<double>(it) / nt;
                sup = std::max(sup, field_gradient(Z, t * dir).norm());
            }
        }
        value = sup * (1.0 + 1e-6);  // scan safety margin
    } else {
        const double h = 2.0 / quad;
        double acc = 0.0;
        BumpField Z = X;
        Z.axis = 2;
        for (int ix = 0; ix < quad; ++ix)
            for (int iy = 0; iy < quad; ++iy)
                for (int iz = 0; iz < quad; ++iz) {
                    const Vec3 d(-1.0 + (ix + 0.5) * h, -1.0 + (iy + 0.5) * h,
                                 -1.0 + (iz + 0.5) * h);
                    if (d.squaredNorm() >= 1.0) continue;
                    acc += std::pow(field_gradient(Z, d).norm(), p);
                }
        value = std::pow(acc * h * h * h, 1.0 / p);
    }
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = value;
    return value;
}

}  // namespace

DeficitReport integral_deficits(const BaseSurface& base, const std::vector<double>& ps) {
    std::vector<double> H(base.node_count());
    for (int j = 0; j < base.ntheta; ++j)
        for (int i = 0; i < base.ns; ++i)
            H[base.idx(i, j)] = base.kappa1[i] + base.kappa2[i];
    return norms_from_field(base, H, std::vector<double>(base.node_count(), 1.0), ps);
}

DeficitReport integral_deficits(const NormalGraph& g, const std::vector<double>& ps) {
    DeficitReport rep = norms_from_field(g.base(), g.mean_curvature(), g.jacobian(), ps);
    rep.delta_weak = g.base().ntheta == 1 ? weak_deficit(g) : rep.delta_weak;
    return rep;
}

double weak_deficit(const NormalGraph& g) {
    const BaseSurface& b = g.base();
    if (b.ntheta != 1) throw Error("weak_deficit: axisymmetric charts only");

    std::vector<double> grad;
    gops::axisym_gradient(b, g.u(), grad);

    std::vector<int> dof(b.ns, -1);
    int n = 0;
    for (int i = 0; i < b.ns; ++i)
        if (gops::axi_free_node(b, i)) dof[i] = n++;
    if (n == 0) throw Error("weak_deficit: no interior degrees of freedom (grid too coarse)");

    // conservative Laplace-Beltrami: edge conductance w_h / (g_h ds)^2
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd L = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < b.ns; ++i)
        if (dof[i] >= 0) L[dof[i]] = grad[i];
    for (int i = 0; i + 1 < b.ns; ++i) {
        const gops::AxiEdge e = gops::axi_edge(b, i);
        const double c = e.w / (e.gh * b.ds * e.gh * b.ds);
        const int a = dof[i], bb = dof[i + 1];
        if (a >= 0) trips.emplace_back(a, a, c);
        if (bb >= 0) trips.emplace_back(bb, bb, c);
        if (a >= 0 && bb >= 0) {
            trips.emplace_back(a, bb, -c);
            trips.emplace_back(bb, a, -c);
        }
    }
    Eigen::SparseMatrix<double> K(n, n);
    K.setFromTriplets(trips.begin(), trips.end());

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-10);
    cg.setMaxIterations(20 * n);
    cg.compute(K);
    const Eigen::VectorXd w = cg.solve(L);
    if (cg.info() != Eigen::Success)
        throw Error("weak_deficit: Dirichlet solve failed to converge (grid too coarse?)");
    return std::sqrt(std::max(0.0, w.dot(L)));
}

SurfaceSamples sample_surface(const BaseSurface& base, int ntheta) {
    SurfaceSamples s;
    const int nt = std::max(ntheta, 8);
    s.points.reserve(static_cast<size_t>(base.ns) * nt);
    for (int i = 0; i < base.ns; ++i) {
        const double wi = base.w[i];  // full ring weight
        for (int j = 0; j < nt; ++j) {
            const double th = 2.0 * kPi * j / nt;
            const double c = std::cos(th), sn = std::sin(th);
            s.points.emplace_back(base.r[i] * c, base.r[i] * sn, base.z[i]);
            s.normals.emplace_back(base.nu_r[i] * c, base.nu_r[i] * sn, base.nu_z[i]);
            s.weights.push_back(wi / nt);
        }
        if (base.dirichlet[i] && base.r[i] > 1e-12) {
            const int nb = 4 * nt;
            for (int j = 0; j < nb; ++j) {
                const double th = 2.0 * kPi * j / nb;
                s.boundary.emplace_back(base.r[i] * std::cos(th), base.r[i] * std::sin(th),
                                        base.z[i]);
            }
        }
    }
    s.box_lo = s.points.front();
    s.box_hi = s.points.front();
    for (const Vec3& p : s.points) {
        s.box_lo = s.box_lo.cwiseMin(p);
        s.box_hi = s.box_hi.cwiseMax(p);
    }
    s.diameter = (s.box_hi - s.box_lo).norm();
    return s;
}

double tangential_divergence_integral(const SurfaceSamples& s, const BumpField& X) {
    double acc = 0.0;
    const double r2 = X.radius * X.radius;
    for (size_t k = 0; k < s.points.size(); ++k) {
        const Vec3 d = s.points[k] - X.center;
        if (d.squaredNorm() >= r2) continue;
        const Eigen::Matrix3d G = field_gradient(X, d);
        const Vec3& nu = s.normals[k];
        acc += s.weights[k] * (G.trace() - nu.dot(G * nu));
    }
    return acc;
}

double field_gradient_norm(const BumpField& X, double p, int quad) {
    const double c = unit_norm_constant(X.kind, p, quad);
    const double scale_exp =
        (std::isinf(p) ? 0.0 : 3.0 / p) - (X.kind == BumpField::Kind::Coordinate ? 1.0 : 0.0);
    return c * std::pow(X.radius, scale_exp);
}

double dual_deficit_lower_bound(const BaseSurface& base, double p, const DualBoundOptions& opt,
                                int* dictionary_size) {
    const SurfaceSamples s = sample_surface(base, opt.ntheta);
    const Vec3 pad = Vec3::Constant(0.25 * s.diameter);
    const Vec3 lo = s.box_lo - pad, hi = s.box_hi + pad;

    std::vector<BumpField> dict;
    for (int k = 1; k <= opt.n_radii; ++k) {
        const double rho = s.diameter / std::pow(2.0, k);
        for (int ix = 0; ix < opt.lattice; ++ix)
            for (int iy = 0; iy < opt.lattice; ++iy)
                for (int iz = 0; iz < opt.lattice; ++iz) {
                    Vec3 c;
                    for (int a = 0; a < 3; ++a) {
                        const double f =
                            opt.lattice == 1 ? 0.5 : static_cast<double>(a == 0 ? ix : a == 1 ? iy : iz) / (opt.lattice - 1);
                        c[a] = lo[a] + f * (hi[a] - lo[a]);
                    }
                    double dist2 = std::numeric_limits<double>::infinity();
                    for (const Vec3& q : s.boundary) dist2 = std::min(dist2, (q - c).squaredNorm());
                    if (dist2 <= rho * rho * 1.0201) continue;  // support must clear Gamma
                    for (int axis = 0; axis < 3; ++axis) {
                        BumpField X;
                        X.center = c;
                        X.radius = rho;
                        X.axis = axis;
                        X.kind = BumpField::Kind::Coordinate;
                        dict.push_back(X);
                        X.kind = BumpField::Kind::Rotation;
                        dict.push_back(X);
                    }
                }
    }
    if (dictionary_size) *dictionary_size = static_cast<int>(dict.size());
    if (dict.empty())
        throw Error("dual_deficit_lower_bound: every bump center intersects the boundary; "
                    "use smaller bump scales (more radii or a finer lattice)");

    double best = 0.0;
    for (const BumpField& X : dict) {
        const double val = std::abs(tangential_divergence_integral(s, X));
        if (val == 0.0) continue;
        best = std::max(best, val / field_gradient_norm(X, p, opt.quad));
    }
    return best;
}

}  // namespace soapfilm
