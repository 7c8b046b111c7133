#include "reebmin/cxonevol.hpp"

#include <cmath>

#include "reebmin/linalg.hpp"
#include "reebmin/optimize.hpp"

namespace reebmin {
namespace {

template <class T>
T lift(const Rat& q);
template <>
Rat lift<Rat>(const Rat& q) {
    return q;
}
template <>
Real lift<Real>(const Rat& q) {
    return to_real(q);
}

template <class T>
T vol_impl(const ComplexityOneData& c, const std::vector<T>& xi) {
    if (xi.size() != c.divisor().rank()) throw Error(ErrorCode::InvalidArgument, "Reeb vector dimension mismatch");
    if (!c.in_reeb_cone(xi)) throw Error(ErrorCode::NotInReebCone, "xi pairs non-positively with a ray of the dual cone");
    T total(0);
    for (const auto& cell : c.cells().cells) {
        T denom(1), avg(0);
        for (const auto& u : cell.rays) {
            T l = dot(u, xi);
            denom *= l;
            const Rat lu = dot(cell.ell, u);
            if (lu != 0) avg += lift<T>(lu) / l;
        }
        total += lift<T>(Rat(cell.det_abs)) * avg / denom;
    }
    return total;
}

template <class T>
T power(const T& x, std::size_t n) {
    T r(1);
    for (std::size_t i = 0; i < n; ++i) r *= x;
    return r;
}

// Step sizes balance truncation against rounding at the working precision.
Real fd_step(const RealVec& xi, int order) {
    const Real eps = std::numeric_limits<Real>::epsilon();
    return real_max_norm(xi) * mp::pow(eps, Real(1) / Real(order));
}

}  // namespace

PolyhedralDivisor::PolyhedralDivisor(VCone sigma, std::vector<DivisorPoint> points)
    : sigma_(std::move(sigma)), points_(std::move(points)) {
    if (!sigma_.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "tail cone must be full-dimensional");
    sigma_dual_ = dual_cone(sigma_);
    if (!sigma_dual_.full_dimensional()) throw Error(ErrorCode::NotStrictlyConvex, "tail cone contains a line");
    for (const auto& p : points_) {
        if (p.coefficient.ambient_dim() != sigma_.ambient_dim())
            throw Error(ErrorCode::InvalidArgument, "coefficient '" + p.label + "' has the wrong dimension");
        if (!same_cone(p.coefficient.tail(), sigma_))
            throw Error(ErrorCode::InvalidArgument, "coefficient '" + p.label + "' does not have tail cone sigma");
    }
}

Rat deg_D(const PolyhedralDivisor& d, const RatVec& u) {
    Rat total = 0;
    for (const auto& p : d.points()) {
        std::optional<Rat> m = polyhedron_min(p.coefficient, u);
        if (!m) throw Error(ErrorCode::UnboundedCoefficient, "coefficient '" + p.label + "' is unbounded below at u");
        total += *m;
    }
    return total;
}

CellComplex build_cells(const PolyhedralDivisor& d) {
    const std::size_t r = d.rank();
    CellComplex out;
    std::vector<std::size_t> choice(d.points().size(), 0);
    for (;;) {
        std::vector<RatVec> normals = d.sigma().rays();
        RatVec ell(r, Rat(0));
        for (std::size_t p = 0; p < choice.size(); ++p) {
            const auto& verts = d.points()[p].coefficient.vertices();
            const RatVec& v = verts[choice[p]];
            for (std::size_t i = 0; i < r; ++i) ell[i] += v[i];
            // v must attain the minimum: <u, w - v> >= 0 for every other vertex w.
            for (const auto& w : verts) {
                RatVec diff(r);
                for (std::size_t i = 0; i < r; ++i) diff[i] = w[i] - v[i];
                normals.push_back(std::move(diff));
            }
        }
        normals.push_back(ell);
        const VCone region = cone_from_inequalities(r, normals);
        if (region.full_dimensional()) {
            for (const auto& piece : triangulate_cone(region)) {
                Cell cell;
                for (auto i : piece.ray_indices) cell.rays.push_back(region.rays()[i]);
                cell.det_abs = piece.det_abs;
                cell.ell = ell;
                out.cells.push_back(std::move(cell));
            }
        }
        std::size_t p = 0;
        while (p < choice.size() && ++choice[p] == d.points()[p].coefficient.vertices().size()) choice[p++] = 0;
        if (p == choice.size()) break;
    }
    return out;
}

ComplexityOneData::ComplexityOneData(PolyhedralDivisor divisor, RatVec u0)
    : divisor_(std::move(divisor)), u0_(std::move(u0)) {
    if (u0_.size() != divisor_.rank()) throw Error(ErrorCode::InvalidArgument, "u0 dimension mismatch");
    if (!divisor_.sigma().strictly_positive_on(u0_))
        throw Error(ErrorCode::InvalidArgument, "u0 must be strictly positive on every ray of sigma");
    cells_ = build_cells(divisor_);
}

bool ComplexityOneData::in_reeb_cone(const RatVec& xi) const {
    return xi.size() == divisor_.rank() && divisor_.sigma_dual().strictly_positive_on(xi);
}

bool ComplexityOneData::in_reeb_cone(const RealVec& xi) const {
    if (xi.size() != divisor_.rank()) return false;
    for (const auto& u : divisor_.sigma_dual().rays())
        if (!(dot(u, xi) > 0)) return false;
    return true;
}

Rat vol_xi_c1(const ComplexityOneData& c, const RatVec& xi) { return vol_impl(c, xi); }
Real vol_xi_c1(const ComplexityOneData& c, const RealVec& xi) { return vol_impl(c, xi); }

Rat nvol_c1(const ComplexityOneData& c, const RatVec& xi) {
    return power(dot(c.u0(), xi), c.n()) * vol_xi_c1(c, xi);
}
Real nvol_c1(const ComplexityOneData& c, const RealVec& xi) {
    return power(dot(c.u0(), xi), c.n()) * vol_xi_c1(c, xi);
}

RealVec fd_grad_vol_c1(const ComplexityOneData& c, const RealVec& xi) {
    const Real h = fd_step(xi, 3);
    RealVec g(xi.size());
    for (std::size_t a = 0; a < xi.size(); ++a) {
        RealVec p = xi, m = xi;
        p[a] += h;
        m[a] -= h;
        g[a] = (vol_xi_c1(c, p) - vol_xi_c1(c, m)) / (2 * h);
    }
    return g;
}

RealMatrix fd_hessian_vol_c1(const ComplexityOneData& c, const RealVec& xi) {
    const std::size_t r = xi.size();
    const Real h = fd_step(xi, 4);
    RealMatrix hm(r, r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a; b < r; ++b) {
            auto at = [&](int sa, int sb) {
                RealVec x = xi;
                x[a] += sa * h;
                x[b] += sb * h;
                return vol_xi_c1(c, x);
            };
            Real v = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
            hm(a, b) = v;
            hm(b, a) = v;
        }
    return hm;
}

MinimizeResult minimize_c1(const ComplexityOneData& c, const MinimizeOptions& options) {
    const std::size_t r = c.divisor().rank();
    MinimizeResult out;
    SliceResult sr;
    {
        PrecisionGuard guard(options.precision_bits);
        RealVec start(r, Real(0));
        for (const auto& ray : c.divisor().sigma().rays())
            for (std::size_t i = 0; i < r; ++i) start[i] += to_real(ray[i]);
        const Real a0 = dot(c.u0(), start);
        for (auto& x : start) x /= a0;

        SliceObjective f;
        f.value = [&](const RealVec& x) { return vol_xi_c1(c, x); };
        f.gradient = [&](const RealVec& x) { return fd_grad_vol_c1(c, x); };
        f.hessian = [&](const RealVec& x) { return fd_hessian_vol_c1(c, x); };
        f.admissible = [&](const RealVec& x) { return c.in_reeb_cone(x); };
        sr = minimize_on_slice(c.u0(), std::move(start), f, options.tolerance, options.max_iter);
        out.iterations = sr.iterations;
    }

    PrecisionGuard certify(2 * options.precision_bits);
    const RealVec g = fd_grad_vol_c1(c, sr.x);
    out.grad_norm = real_norm2(project_to_slice(c.u0(), g));
    out.converged = sr.converged && out.grad_norm <= options.tolerance;

    // First-order residual |-grad vol / (n vol) - u0 / A|, homogeneous of degree -1
    // like the toric barycenter residual (to which it reduces for a trivial divisor).
    const Real a = dot(c.u0(), sr.x);
    RealVec scaled = sr.x;
    for (auto& x : scaled) x *= Real(static_cast<long>(c.n())) / a;
    const RealVec gs = fd_grad_vol_c1(c, scaled);
    const Real v = vol_xi_c1(c, scaled);
    RealVec resid(r);
    for (std::size_t i = 0; i < r; ++i)
        resid[i] = -gs[i] / (Real(static_cast<long>(c.n())) * v) - to_real(c.u0()[i]) / Real(static_cast<long>(c.n()));
    out.barycenter_residual = real_norm2(resid);
    out.nvol_star = nvol_c1(c, scaled);
    out.xi_star = ReebVector::from_real(scaled);
    return out;
}

}  // namespace reebmin
