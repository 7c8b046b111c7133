#include "reebmin/toricvol.hpp"

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
std::vector<T> pairings(const ToricData& t, const std::vector<T>& xi) {
    if (xi.size() != t.n()) throw Error(ErrorCode::InvalidArgument, "Reeb vector dimension mismatch");
    std::vector<T> l;
    l.reserve(t.sigma_dual().size());
    for (const auto& u : t.sigma_dual().rays()) {
        T v = dot(u, xi);
        if (!(v > 0)) throw Error(ErrorCode::NotInReebCone, "xi pairs non-positively with a ray of the dual cone");
        l.push_back(std::move(v));
    }
    return l;
}

// Per piece: weight |det| / prod L_i and the vector s = sum_i u_i / L_i.
template <class T>
struct PieceTerm {
    T weight;
    std::vector<T> s;
    const SimplicialPiece* piece;
};

template <class T>
std::vector<PieceTerm<T>> piece_terms(const ToricData& t, const std::vector<T>& xi) {
    const std::vector<T> l = pairings(t, xi);
    const auto& rays = t.sigma_dual().rays();
    std::vector<PieceTerm<T>> out;
    for (const auto& p : t.pieces()) {
        PieceTerm<T> term{lift<T>(Rat(p.det_abs)), std::vector<T>(t.n(), T(0)), &p};
        for (auto i : p.ray_indices) {
            term.weight /= l[i];
            for (std::size_t a = 0; a < t.n(); ++a)
                if (rays[i][a] != 0) term.s[a] += lift<T>(rays[i][a]) / l[i];
        }
        out.push_back(std::move(term));
    }
    return out;
}

template <class T>
T vol_impl(const ToricData& t, const std::vector<T>& xi) {
    T total(0);
    for (const auto& term : piece_terms(t, xi)) total += term.weight;
    return total;
}

template <class T>
T power(const T& x, std::size_t n) {
    T r(1);
    for (std::size_t i = 0; i < n; ++i) r *= x;
    return r;
}

template <class T>
std::vector<T> grad_impl(const ToricData& t, const std::vector<T>& xi) {
    std::vector<T> g(t.n(), T(0));
    for (const auto& term : piece_terms(t, xi))
        for (std::size_t a = 0; a < t.n(); ++a) g[a] -= term.weight * term.s[a];
    return g;
}

template <class T>
Matrix<T> hessian_impl(const ToricData& t, const std::vector<T>& xi) {
    const std::size_t n = t.n();
    const std::vector<T> l = pairings(t, xi);
    const auto& rays = t.sigma_dual().rays();
    Matrix<T> h(n, n, T(0));
    for (const auto& term : piece_terms(t, xi)) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                T sq(0);
                for (auto i : term.piece->ray_indices)
                    if (rays[i][a] != 0 && rays[i][b] != 0)
                        sq += lift<T>(rays[i][a] * rays[i][b]) / (l[i] * l[i]);
                h(a, b) += term.weight * (term.s[a] * term.s[b] + sq);
            }
    }
    return h;
}

// Candidate exact minimizer near x: snap coordinates to small-denominator
// rationals and accept when the exact gradient is parallel to u0.
std::optional<RatVec> snap_minimizer(const ToricData& t, const RealVec& x) {
    RatVec q;
    for (const auto& c : x) q.push_back(rationalize(c, Int(1000)));
    if (!t.in_reeb_cone(q)) return std::nullopt;
    const RatVec g = grad_vol(t, q);
    const RatVec& u = t.u0();
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (g[i] * u[j] != g[j] * u[i]) return std::nullopt;
    const Rat a = log_discrepancy(t, q);
    for (auto& c : q) c *= Rat(static_cast<long>(t.n())) / a;
    return q;
}

}  // namespace

ToricData::ToricData(VCone sigma, VCone sigma_dual, RatVec u0)
    : sigma_(std::move(sigma)), sigma_dual_(std::move(sigma_dual)), u0_(std::move(u0)) {
    if (u0_.size() != sigma_.ambient_dim()) throw Error(ErrorCode::InvalidArgument, "u0 dimension mismatch");
    if (!sigma_.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "sigma must be full-dimensional");
    if (!sigma_dual_.full_dimensional())
        throw Error(ErrorCode::NotStrictlyConvex, "sigma contains a line (its dual is not full-dimensional)");
    if (!sigma_.strictly_positive_on(u0_))
        throw Error(ErrorCode::InvalidArgument, "u0 must be strictly positive on every ray of sigma");
    pieces_ = triangulate_cone(sigma_dual_);
}

ToricData ToricData::from_sigma(const VCone& sigma, RatVec u0) {
    return ToricData(sigma, dual_cone(sigma), std::move(u0));
}

ToricData ToricData::from_sigma_dual(const VCone& sigma_dual, RatVec u0) {
    VCone sigma = dual_cone(sigma_dual);
    // Re-derive the dual so its ray list is canonical.
    return ToricData(sigma, dual_cone(sigma), std::move(u0));
}

bool ToricData::in_reeb_cone(const RatVec& xi) const {
    return xi.size() == n() && sigma_dual_.strictly_positive_on(xi);
}

bool ToricData::in_reeb_cone(const RealVec& xi) const {
    if (xi.size() != n()) return false;
    for (const auto& u : sigma_dual_.rays())
        if (!(dot(u, xi) > 0)) return false;
    return true;
}

Rat log_discrepancy(const ToricData& t, const RatVec& xi) { return dot(t.u0(), xi); }
Real log_discrepancy(const ToricData& t, const RealVec& xi) { return dot(t.u0(), xi); }

Rat vol_xi(const ToricData& t, const RatVec& xi) { return vol_impl(t, xi); }
Real vol_xi(const ToricData& t, const RealVec& xi) { return vol_impl(t, xi); }

Rat nvol(const ToricData& t, const RatVec& xi) { return power(log_discrepancy(t, xi), t.n()) * vol_xi(t, xi); }
Real nvol(const ToricData& t, const RealVec& xi) { return power(log_discrepancy(t, xi), t.n()) * vol_xi(t, xi); }

RatVec grad_vol(const ToricData& t, const RatVec& xi) { return grad_impl(t, xi); }
RealVec grad_vol(const ToricData& t, const RealVec& xi) { return grad_impl(t, xi); }

RatMatrix hessian_vol(const ToricData& t, const RatVec& xi) { return hessian_impl(t, xi); }
RealMatrix hessian_vol(const ToricData& t, const RealVec& xi) { return hessian_impl(t, xi); }

RealVec cross_section_barycenter(const ToricData& t, const RealVec& xi) {
    // Each piece of the truncated cone is a simplex with vertices 0 and u_i/L_i;
    // its centroid is s/(n+1). The cross-section barycenter is (n+1)/n times
    // the barycenter of the truncated cone.
    const std::size_t n = t.n();
    RealVec bc(n, Real(0));
    Real total = 0;
    for (const auto& term : piece_terms(t, xi)) {
        total += term.weight;
        for (std::size_t a = 0; a < n; ++a) bc[a] += term.weight * term.s[a];
    }
    for (auto& c : bc) c /= total * Real(static_cast<long>(n));
    return bc;
}

Real certify_barycenter(const ToricData& t, const RealVec& xi) {
    RealVec bc = cross_section_barycenter(t, xi);
    const Real a = log_discrepancy(t, xi);
    for (std::size_t i = 0; i < bc.size(); ++i) bc[i] -= to_real(t.u0()[i]) / a;
    return real_norm2(bc);
}

MinimizeResult minimize(const ToricData& t, const MinimizeOptions& options) {
    const std::size_t n = t.n();
    MinimizeResult out;
    SliceResult sr;
    {
        PrecisionGuard guard(options.precision_bits);
        RealVec start(n, Real(0));
        for (const auto& r : t.sigma().rays())
            for (std::size_t i = 0; i < n; ++i) start[i] += to_real(r[i]);
        const Real a0 = log_discrepancy(t, start);
        for (auto& c : start) c /= a0;

        SliceObjective f;
        f.value = [&](const RealVec& x) { return vol_xi(t, x); };
        f.gradient = [&](const RealVec& x) { return grad_vol(t, x); };
        f.hessian = [&](const RealVec& x) { return hessian_vol(t, x); };
        f.admissible = [&](const RealVec& x) { return t.in_reeb_cone(x); };
        sr = minimize_on_slice(t.u0(), std::move(start), f, options.tolerance, options.max_iter);
        out.iterations = sr.iterations;
        out.converged = sr.converged;
    }

    PrecisionGuard certify(2 * options.precision_bits);
    const RealVec& x = sr.x;
    out.grad_norm = real_norm2(project_to_slice(t.u0(), grad_vol(t, x)));
    out.converged = out.converged && out.grad_norm <= options.tolerance;

    RealVec scaled = x;
    const Real a = log_discrepancy(t, x);
    for (auto& c : scaled) c *= Real(static_cast<long>(n)) / a;
    out.barycenter_residual = certify_barycenter(t, scaled);
    out.nvol_star = nvol(t, scaled);
    out.xi_star = ReebVector::from_real(scaled);

    if (auto exact = snap_minimizer(t, scaled)) {
        out.xi_star = ReebVector::from_exact(*exact);
        out.nvol_exact = nvol(t, *exact);
        out.nvol_star = to_real(*out.nvol_exact);
        out.barycenter_residual = certify_barycenter(t, out.xi_star.xi);
    }
    return out;
}

}  // namespace reebmin
