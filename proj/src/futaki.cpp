#include "reebmin/futaki.hpp"

#include <functional>
#include <limits>

namespace reebmin {
namespace {

template <class T>
T power(const T& x, std::size_t n) {
    T r(1);
    for (std::size_t i = 0; i < n; ++i) r *= x;
    return r;
}

template <class Vec>
void check_dims(std::size_t n, const Vec& xi0, const Vec& eta) {
    if (xi0.size() != n || eta.size() != n) throw Error(ErrorCode::InvalidArgument, "direction dimension mismatch");
}

// grad nvol = n A^(n-1) vol u0 + A^n grad vol; the derivative along -eta is its negated pairing.
template <class T>
T toric_futaki(const ToricData& t, const std::vector<T>& xi0, const std::vector<T>& eta) {
    check_dims(t.n(), xi0, eta);
    const std::size_t n = t.n();
    const T a = dot(t.u0(), xi0);
    const T v = vol_xi(t, xi0);
    const std::vector<T> g = grad_vol(t, xi0);
    T d = T(static_cast<long>(n)) * power(a, n - 1) * v * dot(t.u0(), eta) + power(a, n) * dot(g, eta);
    return -d;
}

FutakiReport scan(const std::vector<RealVec>& etas, const Real& tolerance,
                  const std::function<Real(const RealVec&)>& fut,
                  const std::function<RealVec(const RealVec&)>& normalize) {
    FutakiReport report;
    report.tolerance = tolerance;
    report.min_fut = std::numeric_limits<Real>::infinity();
    for (const auto& eta : etas) {
        FutakiEntry e{eta, fut(eta), normalize(eta)};
        if (e.fut < report.min_fut) report.min_fut = e.fut;
        report.entries.push_back(std::move(e));
    }
    report.all_nonnegative = report.entries.empty() || report.min_fut >= -tolerance;
    return report;
}

}  // namespace

Real futaki_invariant(const ToricData& t, const RealVec& xi0, const RealVec& eta) {
    return toric_futaki(t, xi0, eta);
}

Rat futaki_invariant(const ToricData& t, const RatVec& xi0, const RatVec& eta) { return toric_futaki(t, xi0, eta); }

Real futaki_invariant(const ComplexityOneData& c, const RealVec& xi0, const RealVec& eta) {
    check_dims(c.divisor().rank(), xi0, eta);
    if (!c.in_reeb_cone(xi0)) throw Error(ErrorCode::NotInReebCone, "xi0 is outside the Reeb cone");
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real scale = real_max_norm(eta);
    if (scale == 0) return Real(0);
    // Step relative to xi0 measured in units of eta.
    const Real h = real_max_norm(xi0) / scale * mp::cbrt(eps);
    auto at = [&](const Real& e) {
        RealVec x = xi0;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= e * eta[i];
        return nvol_c1(c, x);
    };
    return (at(h) - at(-h)) / (2 * h);
}

RatVec normalized_direction(const RatVec& u0, const RatVec& xi0, const RatVec& eta) {
    const Rat a = dot(u0, xi0), ae = dot(u0, eta);
    if (a <= 0) throw Error(ErrorCode::InvalidArgument, "A(xi0) must be positive");
    RatVec out(xi0.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a * eta[i] - ae * xi0[i]) / (a * a);
    return out;
}

RealVec normalized_direction(const RatVec& u0, const RealVec& xi0, const RealVec& eta) {
    const Real a = dot(u0, xi0), ae = dot(u0, eta);
    if (!(a > 0)) throw Error(ErrorCode::InvalidArgument, "A(xi0) must be positive");
    RealVec out(xi0.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a * eta[i] - ae * xi0[i]) / (a * a);
    return out;
}

FutakiReport semistable_scan(const ToricData& t, const RealVec& xi0, const std::vector<RealVec>& etas,
                             const Real& tolerance) {
    return scan(
        etas, tolerance, [&](const RealVec& eta) { return futaki_invariant(t, xi0, eta); },
        [&](const RealVec& eta) { return normalized_direction(t.u0(), xi0, eta); });
}

FutakiReport semistable_scan(const ComplexityOneData& c, const RealVec& xi0, const std::vector<RealVec>& etas,
                             const Real& tolerance) {
    return scan(
        etas, tolerance, [&](const RealVec& eta) { return futaki_invariant(c, xi0, eta); },
        [&](const RealVec& eta) { return normalized_direction(c.u0(), xi0, eta); });
}

}  // namespace reebmin
