#pragma once

#include <functional>

#include "reebmin/numeric.hpp"

namespace reebmin {

/// A smooth convex function restricted to the affine slice {<u0, x> = 1}.
struct SliceObjective {
    std::function<Real(const RealVec&)> value;
    std::function<RealVec(const RealVec&)> gradient;
    std::function<RealMatrix(const RealVec&)> hessian;
    // False outside the open domain (the line search backs off).
    std::function<bool(const RealVec&)> admissible;
};

struct SliceResult {
    RealVec x;
    Real value;
    Real grad_norm;  // Euclidean norm of the gradient projected onto u0's orthogonal complement
    int iterations = 0;
    bool converged = false;
};

/// Orthogonal projection of g onto the hyperplane u0^perp.
RealVec project_to_slice(const RatVec& u0, const RealVec& g);

/// Damped Newton on the slice. Falls back to a projected gradient step when
/// the reduced Hessian is not positive definite or its condition number
/// exceeds 1e12. Armijo backtracking keeps iterates admissible.
SliceResult minimize_on_slice(const RatVec& u0, RealVec start, const SliceObjective& f, const Real& tolerance,
                              int max_iter);

}  // namespace reebmin
