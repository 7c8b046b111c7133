#pragma once

#include <string>
#include <vector>

#include "reebmin/numeric.hpp"
#include "reebmin/polyhedral.hpp"
#include "reebmin/toricvol.hpp"

namespace reebmin {

struct DivisorPoint {
    std::string label;        // opaque name of the point on P^1
    Polyhedron coefficient;   // tail cone must equal sigma
};

/// A polyhedral divisor over P^1 describing a complexity-one T-variety of
/// dimension n = rank + 1.
class PolyhedralDivisor {
public:
    PolyhedralDivisor() = default;
    PolyhedralDivisor(VCone sigma, std::vector<DivisorPoint> points);

    std::size_t rank() const noexcept { return sigma_.ambient_dim(); }
    std::size_t n() const noexcept { return rank() + 1; }
    const VCone& sigma() const noexcept { return sigma_; }
    const VCone& sigma_dual() const noexcept { return sigma_dual_; }
    const std::vector<DivisorPoint>& points() const noexcept { return points_; }

private:
    VCone sigma_;
    VCone sigma_dual_;
    std::vector<DivisorPoint> points_;
};

/// One simplicial cone of the dual cone on which deg D is the linear function <ell, .>.
struct Cell {
    std::vector<RatVec> rays;  // primitive, r of them
    Int det_abs;
    RatVec ell;
};

struct CellComplex {
    std::vector<Cell> cells;  // cover {u in dual cone : deg D(u) >= 0}
};

/// Sum over points of min over the coefficient of <u, .>.
/// Throws UnboundedCoefficient when u is outside the dual cone.
Rat deg_D(const PolyhedralDivisor& d, const RatVec& u);

/// Common refinement of the coefficients' normal fans inside the dual cone,
/// cut down to deg D >= 0 and triangulated.
CellComplex build_cells(const PolyhedralDivisor& d);

/// Divisor plus log-discrepancy functional, with the cell complex cached.
class ComplexityOneData {
public:
    ComplexityOneData() = default;
    ComplexityOneData(PolyhedralDivisor divisor, RatVec u0);

    std::size_t n() const noexcept { return divisor_.n(); }
    const PolyhedralDivisor& divisor() const noexcept { return divisor_; }
    const RatVec& u0() const noexcept { return u0_; }
    const CellComplex& cells() const noexcept { return cells_; }

    bool in_reeb_cone(const RatVec& xi) const;
    bool in_reeb_cone(const RealVec& xi) const;

private:
    PolyhedralDivisor divisor_;
    RatVec u0_;
    CellComplex cells_;
};

/// n! times the integral of max(deg D, 0) over the truncated dual cone.
Rat vol_xi_c1(const ComplexityOneData& c, const RatVec& xi);
Real vol_xi_c1(const ComplexityOneData& c, const RealVec& xi);

Rat nvol_c1(const ComplexityOneData& c, const RatVec& xi);
Real nvol_c1(const ComplexityOneData& c, const RealVec& xi);

/// Central-difference gradient and Hessian of vol_xi_c1.
RealVec fd_grad_vol_c1(const ComplexityOneData& c, const RealVec& xi);
RealMatrix fd_hessian_vol_c1(const ComplexityOneData& c, const RealVec& xi);

/// Same contract as the toric minimize(); derivatives by finite differences.
MinimizeResult minimize_c1(const ComplexityOneData& c, const MinimizeOptions& options = {});

}  // namespace reebmin
