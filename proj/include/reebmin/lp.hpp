#pragma once

#include "reebmin/numeric.hpp"

namespace reebmin::lp {

enum class Status { Optimal, Unbounded, Infeasible };

struct Result {
    Status status = Status::Infeasible;
    Rat value;  // objective value when Optimal
    RatVec x;   // an optimal point when Optimal
};

/// Exact rational LP: minimize <c, x> subject to a x >= b, x free.
/// Two-phase dense tableau simplex with Bland's rule (no cycling).
Result minimize(const RatVec& c, const RatMatrix& a, const RatVec& b);

bool feasible(const RatMatrix& a, const RatVec& b);

}  // namespace reebmin::lp
