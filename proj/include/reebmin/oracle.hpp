#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "reebmin/cxonevol.hpp"
#include "reebmin/numeric.hpp"
#include "reebmin/toricvol.hpp"

namespace reebmin {

struct CountOptions {
    std::uint64_t cell_budget = 100'000'000;  // base-box cells walked, plus visited points for complexity-one
    unsigned threads = 1;
};

/// #{u in sigma^v cap M : <u, xi> < m}. Floating xi is widened by its rounding
/// error and a point counts only if the upper bound of <u, xi> is below m.
/// Throws NotInReebCone, InvalidArgument or TooLarge.
Int count_toric(const ToricData& t, const RatVec& xi, const Rat& m, const CountOptions& options = {});
Int count_toric(const ToricData& t, const RealVec& xi, const Rat& m, const CountOptions& options = {});

/// sum of h0(u) = max(sum_p floor(Delta_p(u)) + 1, 0) over the same u.
/// Throws NotInReebCone, InvalidArgument or TooLarge.
Int count_cxone(const PolyhedralDivisor& d, const RatVec& xi, const Rat& m, const CountOptions& options = {});
Int count_cxone(const PolyhedralDivisor& d, const RealVec& xi, const Rat& m, const CountOptions& options = {});

/// max(deg floor(D(u)) + 1, 0) for u in sigma^v cap M.
Int h0_cxone(const PolyhedralDivisor& d, const IntVec& u);

struct CountSeries {
    std::vector<std::pair<Rat, Int>> truncations;  // (m, count), m increasing
    std::size_t n = 0;
    std::vector<Real> estimates;  // n! count / m^n
};

CountSeries count_series_toric(const ToricData& t, const RealVec& xi, const std::vector<Rat>& ms,
                               const CountOptions& options = {});
CountSeries count_series_cxone(const ComplexityOneData& c, const RealVec& xi, const std::vector<Rat>& ms,
                               const CountOptions& options = {});

struct VolEstimate {
    Real value;      // extrapolated limit of the estimates
    Real last_raw;   // estimate at the largest m
    bool monotone = false;  // raw estimates move in one direction
    bool settling = false;  // successive changes shrink
    std::string diagnostic;
};

/// Fits e(m) = V + c1 / m + c2 / m^2 through the last three truncations.
/// Throws InvalidArgument for fewer than three truncations.
VolEstimate vol_estimate(const CountSeries& series);

}  // namespace reebmin
