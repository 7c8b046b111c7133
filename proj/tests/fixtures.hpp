#pragma once

#include "reebmin/cxonevol.hpp"
#include "reebmin/toricvol.hpp"
#include "test_support.hpp"

namespace reebmin::testing {

inline ToricData smooth(std::size_t n) {
    std::vector<RatVec> e;
    for (std::size_t i = 0; i < n; ++i) {
        RatVec v(n, Rat(0));
        v[i] = 1;
        e.push_back(v);
    }
    return ToricData::from_sigma(VCone(n, e), RatVec(n, Rat(1)));
}

inline ToricData a1() { return ToricData::from_sigma(VCone(2, rays({{0, 1}, {2, -1}})), rv({1, 1})); }

// {z1 z2 + z3^2 z4 = 0}
inline ToricData spp() {
    return ToricData::from_sigma(VCone(3, rays({{1, 0, 0}, {0, 1, 0}, {2, 0, 1}, {0, 2, 1}})), rv({1, 1, -1}));
}

// {z1 z2 = z3 z4}: dual cone over the unit square.
inline ToricData conifold() {
    return ToricData::from_sigma_dual(VCone(3, rays({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}})), rv({1, 1, 2}));
}

inline std::vector<ToricData> toric_zoo() { return {smooth(2), smooth(3), a1(), spp(), conifold()}; }

/// A random rational point in the interior of sigma: positive combination of its rays.
inline RatVec random_reeb(Rng& rng, const ToricData& t) {
    RatVec xi(t.n(), Rat(0));
    for (const auto& r : t.sigma().rays()) {
        Rat c = rng.rational(1, 5, 9);
        for (std::size_t i = 0; i < t.n(); ++i) xi[i] += c * r[i];
    }
    return xi;
}

inline RealVec sqrt3_spp_minimizer() {
    const Real s3 = mp::sqrt(Real(3));
    return {(3 + s3) / 2, (3 + s3) / 2, s3};
}

inline VCone dk_sigma() { return VCone(3, rays({{0, 1, 0}, {2, 1, 0}, {2, 1, 1}, {0, 1, 1}})); }

inline Polyhedron from_hrep(std::size_t dim, const std::vector<std::pair<RatVec, Rat>>& rows) {
    HRep h(dim);
    for (const auto& [n, b] : rows) h.add(n, b);
    return vertex_enumeration(h);
}

// Coefficients of the 4-dim D_{k+1} degeneration, from their half-space descriptions.
inline PolyhedralDivisor dk_divisor() {
    auto sigma_rows = [](Rat c4, Rat c5) {
        return std::vector<std::pair<RatVec, Rat>>{{rv({1, 0, 0}), 0}, {rv({0, 1, 0}), 0}, {rv({0, 0, 1}), 0},
                                                    {rv({-1, 2, 0}), c4}, {rv({0, 2, -2}), c5}};
    };
    return PolyhedralDivisor(dk_sigma(), {{"0", from_hrep(3, sigma_rows(0, 1))},
                                          {"1", from_hrep(3, sigma_rows(-1, -1))},
                                          {"inf", from_hrep(3, sigma_rows(1, 0))}});
}

inline ComplexityOneData dk_4dim() { return ComplexityOneData(dk_divisor(), rv({0, 3, -1})); }

// Weighted-hypersurface volume of {z1 z2 + z3^2 + z4^2 z5 = 0} with weights F xi.
template <class T>
T dk_hypersurface_vol(const std::vector<T>& xi) {
    return T(1) / (xi[0] * (2 * xi[1] - xi[0]) * xi[2] * (xi[1] - xi[2]));
}

// One point with coefficient e1 + orthant: C^(r+1) with weights (x1, x1, x2, ..., xr).
inline ComplexityOneData affine_space_c1(std::size_t r) {
    std::vector<RatVec> e;
    for (std::size_t i = 0; i < r; ++i) {
        RatVec v(r, Rat(0));
        v[i] = 1;
        e.push_back(v);
    }
    VCone orthant(r, e);
    RatVec u0(r, Rat(1));
    u0[0] = 2;
    return ComplexityOneData(PolyhedralDivisor(orthant, {{"0", Polyhedron({e[0]}, orthant)}}), u0);
}

inline RatVec random_reeb(Rng& rng, const VCone& sigma) {
    RatVec xi(sigma.ambient_dim(), Rat(0));
    for (const auto& r : sigma.rays()) {
        Rat c = rng.rational(1, 5, 9);
        for (std::size_t i = 0; i < xi.size(); ++i) xi[i] += c * r[i];
    }
    return xi;
}

inline Real dk_z() { return (mp::sqrt(Real(33)) - 3) / 4; }

}  // namespace reebmin::testing
