#pragma once

#include <optional>
#include <vector>

#include "reebmin/numeric.hpp"

namespace reebmin::linalg {

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
RatMatrix rref(const RatMatrix& a, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const RatMatrix& a);
std::size_t rank(const std::vector<RatVec>& rows, std::size_t dim);

/// Basis of {x : a x = 0}, each vector primitive integral.
std::vector<RatVec> nullspace(const RatMatrix& a);

Rat determinant(const RatMatrix& a);
Int determinant(const IntMatrix& a);

/// Some solution of a x = b, or nullopt when the system is inconsistent.
std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b);

/// Throws RankDeficient for singular input.
RatMatrix inverse(const RatMatrix& a);

}  // namespace reebmin::linalg
