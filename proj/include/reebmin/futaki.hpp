#pragma once

#include <vector>

#include "reebmin/cxonevol.hpp"
#include "reebmin/numeric.hpp"
#include "reebmin/toricvol.hpp"

namespace reebmin {

/// d/de at e = 0 of nvol(xi0 - e * eta). Analytic for toric data.
Real futaki_invariant(const ToricData& t, const RealVec& xi0, const RealVec& eta);
Rat futaki_invariant(const ToricData& t, const RatVec& xi0, const RatVec& eta);
/// Central finite differences for complexity-one data.
Real futaki_invariant(const ComplexityOneData& c, const RealVec& xi0, const RealVec& eta);

/// (A(xi0) eta - A(eta) xi0) / A(xi0)^2; satisfies A(result) = 0.
RatVec normalized_direction(const RatVec& u0, const RatVec& xi0, const RatVec& eta);
RealVec normalized_direction(const RatVec& u0, const RealVec& xi0, const RealVec& eta);

struct FutakiEntry {
    RealVec eta;
    Real fut;
    RealVec normalized_eta;
};

/// Only the supplied directions are tested; a nonnegative verdict is not a
/// proof of K-semistability.
struct FutakiReport {
    std::vector<FutakiEntry> entries;
    Real min_fut;  // +inf when no directions were supplied
    bool all_nonnegative = true;
    Real tolerance;
};

/// Default sign tolerances: analytic toric derivative and finite differences.
inline Real default_futaki_tolerance_toric() { return Real("1e-9"); }
inline Real default_futaki_tolerance_fd() { return Real("1e-6"); }

FutakiReport semistable_scan(const ToricData& t, const RealVec& xi0, const std::vector<RealVec>& etas,
                             const Real& tolerance = default_futaki_tolerance_toric());
FutakiReport semistable_scan(const ComplexityOneData& c, const RealVec& xi0, const std::vector<RealVec>& etas,
                             const Real& tolerance = default_futaki_tolerance_fd());

}  // namespace reebmin
