#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reebmin/cxonevol.hpp"
#include "reebmin/numeric.hpp"
#include "reebmin/polyhedral.hpp"
#include "reebmin/toricvol.hpp"

namespace reebmin {

/// 0 -> Z^r --F--> Z^N --P--> Z^(N-r) -> 0 with a section s (s F = id).
/// Row i of F is the torus weight of the coordinate z_i.
struct DowngradeData {
    IntMatrix f;  // N x r
    IntMatrix p;  // (N-r) x N
    IntMatrix s;  // r x N
};

/// Builds P and s from F via the Smith normal form.
/// Throws RankDeficient or TorsionCokernel.
DowngradeData complete_sequence(const IntMatrix& f);

/// Checks caller-supplied P and s: P F = 0, s F = id, rows of P span the
/// saturated kernel. Throws Inconsistent (or the complete_sequence errors).
DowngradeData validate_sequence(const IntMatrix& f, const IntMatrix& p, const IntMatrix& s);

/// sigma = {xi : F xi >= 0} and its dual.
std::pair<VCone, VCone> downgrade_sigma(const DowngradeData& d);

/// s({y >= 0 : P y = p}). Throws EmptyFiber.
Polyhedron downgrade_coefficient(const DowngradeData& d, const IntVec& p);

/// Distinct primitive rays spanned by the columns of P, in column order.
std::vector<IntVec> base_fan_rays(const DowngradeData& d);

/// Divisor over P^1 with one coefficient per (label, p).
PolyhedralDivisor downgrade_divisor(const DowngradeData& d, const std::vector<std::pair<std::string, IntVec>>& points);

/// z^a - z^b = 0 (sign irrelevant).
struct BinomialHypersurface {
    IntVec a;
    IntVec b;
    std::optional<RatVec> ambient_weight;
};

/// Toric data of the binomial hypersurface on the lattice Z^N / Z(a - b).
/// Throws InvalidArgument, TorsionQuotient or NotStrictlyConvex.
ToricData binomial_to_toric(const BinomialHypersurface& h);

/// The unique xi with F xi = w. Throws Inconsistent.
RatVec induced_reeb(const IntMatrix& f, const RatVec& w);
/// Floating version; rows outside a chosen basis must agree to `tolerance`.
RealVec induced_reeb(const IntMatrix& f, const RealVec& w, const Real& tolerance);

/// Common torus weight F^T m of the given monomial exponents. Throws NonInvariant.
IntVec equation_weight(const IntMatrix& f, const std::vector<IntVec>& monomials);

/// Column sums of F minus the weight of the defining equation.
RatVec hypersurface_u0(const IntMatrix& f, const IntVec& f_weight);

}  // namespace reebmin
