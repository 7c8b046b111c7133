#pragma once

#include <optional>
#include <vector>

#include "reebmin/numeric.hpp"
#include "reebmin/polyhedral.hpp"

namespace reebmin {

/// An affine toric singularity with its log-discrepancy functional u0.
/// vol is normalized as n! times the Euclidean volume of the truncated dual
/// cone, so that smooth points have vol(1,...,1) = 1 and nvol = n^n.
class ToricData {
public:
    ToricData() = default;
    static ToricData from_sigma(const VCone& sigma, RatVec u0);
    static ToricData from_sigma_dual(const VCone& sigma_dual, RatVec u0);

    std::size_t n() const noexcept { return sigma_.ambient_dim(); }
    const VCone& sigma() const noexcept { return sigma_; }
    const VCone& sigma_dual() const noexcept { return sigma_dual_; }
    const RatVec& u0() const noexcept { return u0_; }
    const std::vector<SimplicialPiece>& pieces() const noexcept { return pieces_; }

    bool in_reeb_cone(const RatVec& xi) const;
    bool in_reeb_cone(const RealVec& xi) const;

private:
    ToricData(VCone sigma, VCone sigma_dual, RatVec u0);

    VCone sigma_;
    VCone sigma_dual_;
    RatVec u0_;
    std::vector<SimplicialPiece> pieces_;  // triangulation of sigma_dual
};

/// A Reeb vector, floating point with an optional exact value.
struct ReebVector {
    RealVec xi;
    std::optional<RatVec> exact;

    static ReebVector from_exact(const RatVec& v) { return {to_real(v), v}; }
    static ReebVector from_real(RealVec v) { return {std::move(v), std::nullopt}; }
};

struct MinimizeOptions {
    Real tolerance = Real("1e-9");
    int max_iter = 200;
    unsigned precision_bits = 128;
};

struct MinimizeResult {
    ReebVector xi_star;  // scaled so that A(xi_star) = n
    Real nvol_star;
    std::optional<Rat> nvol_exact;  // set when xi_star snapped to a certified rational minimizer
    Real grad_norm;                 // slice-projected gradient of vol on {A = 1}
    Real barycenter_residual;
    int iterations = 0;
    bool converged = false;
};

Rat log_discrepancy(const ToricData& t, const RatVec& xi);
Real log_discrepancy(const ToricData& t, const RealVec& xi);

/// Throws NotInReebCone when some ray of the dual cone pairs non-positively with xi.
Rat vol_xi(const ToricData& t, const RatVec& xi);
Real vol_xi(const ToricData& t, const RealVec& xi);

Rat nvol(const ToricData& t, const RatVec& xi);
Real nvol(const ToricData& t, const RealVec& xi);

RatVec grad_vol(const ToricData& t, const RatVec& xi);
RealVec grad_vol(const ToricData& t, const RealVec& xi);

RatMatrix hessian_vol(const ToricData& t, const RatVec& xi);
RealMatrix hessian_vol(const ToricData& t, const RealVec& xi);

/// Barycenter of the bounded cross-section {u in dual cone : <u, xi> = 1}.
RealVec cross_section_barycenter(const ToricData& t, const RealVec& xi);

/// |bc(cross-section) - u0 / A(xi)|; zero exactly when xi minimizes nvol.
Real certify_barycenter(const ToricData& t, const RealVec& xi);

/// Runs at options.precision_bits; the reported gradient norm and residual are
/// re-evaluated at twice that precision.
MinimizeResult minimize(const ToricData& t, const MinimizeOptions& options = {});

}  // namespace reebmin
