#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "reebmin/linalg.hpp"
#include "reebmin/optimize.hpp"

using namespace reebmin;
using namespace reebmin::testing;

namespace {

RealVec scaled(const RealVec& v, const Real& s) {
    RealVec out = v;
    for (auto& x : out) x *= s;
    return out;
}

RatVec scaled(const RatVec& v, const Rat& s) {
    RatVec out = v;
    for (auto& x : out) x *= s;
    return out;
}

// Slope of vol along direction e at xi: central differences at h and h/2,
// Richardson-combined.
Real fd_partial(const ToricData& t, const RealVec& xi, std::size_t a, const Real& h) {
    auto central = [&](const Real& step) {
        RealVec p = xi, m = xi;
        p[a] += step;
        m[a] -= step;
        return (vol_xi(t, p) - vol_xi(t, m)) / (2 * step);
    };
    Real d1 = central(h), d2 = central(h / 2);
    return (4 * d2 - d1) / 3;
}

// Random U in GL(n, Z): a product of elementary shears and a sign flip.
IntMatrix random_unimodular(Rng& rng, std::size_t n) {
    IntMatrix u = IntMatrix::identity(n);
    for (int k = 0; k < 6; ++k) {
        std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
        std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
        if (i == j) continue;
        Int f(rng.uniform_int(-2, 2));
        IntMatrix e = IntMatrix::identity(n);
        e(i, j) = f;
        u = e * u;
    }
    if (rng.uniform_int(0, 1)) {
        IntMatrix e = IntMatrix::identity(n);
        e(0, 0) = -1;
        u = e * u;
    }
    return u;
}

}  // namespace

TEST(LogDiscrepancy, Examples) {
    PrecisionGuard g(128);
    EXPECT_LT(rel_diff(log_discrepancy(spp(), sqrt3_spp_minimizer()), Real(3)), Real("1e-30"));
    EXPECT_EQ(log_discrepancy(smooth(2), rv({1, 1})), 2);
    EXPECT_EQ(log_discrepancy(a1(), rv({2, 0})), 2);
}

TEST(VolXi, SmoothPlane) { EXPECT_EQ(vol_xi(smooth(2), rv({1, 1})), 1); }

TEST(VolXi, A1ClosedForm) {
    const ToricData t = a1();
    EXPECT_EQ(vol_xi(t, rv({2, 0})), q(1, 2));
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        RatVec xi = random_reeb(rng, t);
        EXPECT_EQ(vol_xi(t, xi), Rat(2) / (xi[0] * (xi[0] + 2 * xi[1])));
    }
}

// The cone over a square is the conifold; vol = 1/(c1 c2) summed over the two
// triangles of the square, closed form from the two-piece decomposition.
TEST(VolXi, ConifoldClosedForm) {
    const ToricData t = conifold();
    const RatVec xi = rv({-1, -1, 3});
    // Rays pair to 3, 2, 2, 1.
    EXPECT_EQ(vol_xi(t, xi), Rat(1, 3 * 2 * 2) + Rat(1, 2 * 2 * 1));
}

TEST(VolXi, OutsideReebConeThrows) {
    try {
        (void)vol_xi(a1(), rv({0, 1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotInReebCone);
    }
    EXPECT_THROW((void)vol_xi(smooth(2), realv({1, -0.5})), Error);
}

TEST(Nvol, Examples) {
    EXPECT_EQ(nvol(smooth(2), rv({1, 1})), 4);
    EXPECT_EQ(nvol(a1(), rv({2, 0})), 2);
    EXPECT_EQ(nvol(smooth(3), rv({1, 1, 1})), 27);
}

TEST(GradVol, SmoothPlane) { EXPECT_EQ(grad_vol(smooth(2), rv({1, 1})), rv({-1, -1})); }

TEST(GradVol, A1) { EXPECT_EQ(grad_vol(a1(), rv({2, 0})), (RatVec{q(-1, 2), q(-1, 2)})); }

TEST(HessianVol, SmoothPlane) {
    EXPECT_EQ(hessian_vol(smooth(2), rv({1, 1})), (RatMatrix{{2, 1}, {1, 2}}));
}

TEST(CertifyBarycenter, SmoothPointsHaveZeroResidual) {
    PrecisionGuard g(128);
    for (std::size_t n = 2; n <= 5; ++n) EXPECT_LT(certify_barycenter(smooth(n), RealVec(n, Real(1))), Real("1e-35"));
}

TEST(CertifyBarycenter, SuspendedPinchPointMinimizer) {
    PrecisionGuard g(128);
    EXPECT_LT(certify_barycenter(spp(), sqrt3_spp_minimizer()), Real("1e-8"));
}

TEST(CertifyBarycenter, A1AwayFromMinimizer) { EXPECT_GT(certify_barycenter(a1(), realv({1, 1})), Real("0.05")); }

TEST(Minimize, SmoothPointsAreExact) {
    for (std::size_t n = 2; n <= 5; ++n) {
        MinimizeResult r = minimize(smooth(n));
        ASSERT_TRUE(r.converged) << n;
        ASSERT_TRUE(r.nvol_exact.has_value()) << n;
        Rat nn = 1;
        for (std::size_t i = 0; i < n; ++i) nn *= Rat(static_cast<long>(n));
        EXPECT_EQ(*r.nvol_exact, nn);
        EXPECT_EQ(*r.xi_star.exact, RatVec(n, Rat(1)));
    }
}

TEST(Minimize, SuspendedPinchPoint) {
    MinimizeResult r = minimize(spp());
    ASSERT_TRUE(r.converged);
    PrecisionGuard g(128);
    const RealVec expected = sqrt3_spp_minimizer();
    for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(mp::abs(r.xi_star.xi[i] - expected[i]), Real("1e-8"));
    EXPECT_LT(r.barycenter_residual, Real("1e-8"));
    EXPECT_LT(rel_diff(log_discrepancy(spp(), r.xi_star.xi), Real(3)), Real("1e-30"));
    EXPECT_FALSE(r.xi_star.exact.has_value());
}

TEST(Minimize, A1) {
    MinimizeResult r = minimize(a1());
    ASSERT_TRUE(r.converged);
    ASSERT_TRUE(r.nvol_exact.has_value());
    EXPECT_EQ(*r.nvol_exact, 2);
    EXPECT_EQ(*r.xi_star.exact, rv({2, 0}));
}

TEST(Minimize, ConifoldSymmetric) {
    MinimizeResult r = minimize(conifold());
    ASSERT_TRUE(r.converged);
    ASSERT_TRUE(r.nvol_exact.has_value());
    EXPECT_EQ(*r.nvol_exact, 16);
    // Symmetric under swapping the first two coordinates.
    EXPECT_EQ((*r.xi_star.exact)[0], (*r.xi_star.exact)[1]);
}

TEST(Minimize, DirectionIndependentOfU0Scale) {
    const ToricData base = spp();
    const ToricData big = ToricData::from_sigma(base.sigma(), scaled(base.u0(), Rat(7, 2)));
    MinimizeResult a = minimize(base), b = minimize(big);
    PrecisionGuard g(128);
    // A_big = 7/2 A_base, both normalized to n, so xi_big = (2/7) xi_base.
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_LT(mp::abs(a.xi_star.xi[i] * 2 / 7 - b.xi_star.xi[i]), Real("1e-12"));
}

TEST(SliceProjection, RemovesU0Component) {
    PrecisionGuard g(128);
    RealVec p = project_to_slice(rv({1, 1, -1}), realv({3, 1, 2}));
    EXPECT_LT(mp::abs(p[0] + p[1] - p[2]), Real("1e-35"));
}

// ---------------------------------------------------------------- properties

TEST(ToricProperty, RescalingInvarianceOfNvol) {
    PrecisionGuard g(128);
    Rng rng(101);
    int cases = 0;
    for (const auto& t : toric_zoo())
        for (int k = 0; k < 20; ++k) {
            const RealVec xi = to_real(random_reeb(rng, t));
            const Real base = nvol(t, xi);
            for (const Real& lam : {Real(1) / 3, Real(2), Real(17)}) {
                EXPECT_LT(rel_diff(nvol(t, scaled(xi, lam)), base), Real("1e-12"));
                ++cases;
            }
        }
    EXPECT_GE(cases, 300);
}

TEST(ToricProperty, HomogeneityExact) {
    Rng rng(102);
    for (const auto& t : toric_zoo())
        for (int k = 0; k < 20; ++k) {
            const RatVec xi = random_reeb(rng, t);
            const Rat lam = rng.rational(1, 4, 5);
            Rat lam_n = 1;
            for (std::size_t i = 0; i < t.n(); ++i) lam_n *= lam;
            EXPECT_EQ(vol_xi(t, scaled(xi, lam)), vol_xi(t, xi) / lam_n);
        }
}

TEST(ToricProperty, GradientMatchesFiniteDifferences) {
    PrecisionGuard g(128);
    Rng rng(103);
    int cases = 0;
    for (const auto& t : toric_zoo())
        for (int k = 0; k < 20; ++k) {
            const RealVec xi = to_real(random_reeb(rng, t));
            const RealVec grad = grad_vol(t, xi);
            for (std::size_t a = 0; a < t.n(); ++a) {
                Real fd = fd_partial(t, xi, a, Real("1e-5"));
                EXPECT_LT(mp::abs(fd - grad[a]), Real("1e-6") * (mp::abs(grad[a]) + vol_xi(t, xi)));
            }
            ++cases;
        }
    EXPECT_GE(cases, 100);
}

TEST(ToricProperty, HessianSymmetricPositiveDefinite) {
    PrecisionGuard g(128);
    Rng rng(104);
    using EMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    int cases = 0;
    for (const auto& t : toric_zoo())
        for (int k = 0; k < 20; ++k) {
            const RealMatrix h = hessian_vol(t, to_real(random_reeb(rng, t)));
            EMatrix e(h.rows(), h.cols());
            for (std::size_t i = 0; i < h.rows(); ++i)
                for (std::size_t j = 0; j < h.cols(); ++j) {
                    EXPECT_LT(mp::abs(h(i, j) - h(j, i)), Real("1e-12") * mp::abs(h(i, j)) + Real("1e-30"));
                    e(i, j) = h(i, j);
                }
            Eigen::LLT<EMatrix> llt(e);
            EXPECT_EQ(llt.info(), Eigen::Success);
            ++cases;
        }
    EXPECT_GE(cases, 100);
}

TEST(ToricProperty, EulerIdentitiesExact) {
    Rng rng(105);
    for (const auto& t : toric_zoo())
        for (int k = 0; k < 20; ++k) {
            const RatVec xi = random_reeb(rng, t);
            const Rat v = vol_xi(t, xi);
            const Rat n(static_cast<long>(t.n()));
            EXPECT_EQ(dot(grad_vol(t, xi), xi), -n * v);
            EXPECT_EQ(dot(xi, hessian_vol(t, xi) * xi), n * (n + 1) * v);
        }
}

TEST(ToricProperty, EulerIdentitiesFloating) {
    PrecisionGuard g(128);
    Rng rng(106);
    for (const auto& t : toric_zoo())
        for (int k = 0; k < 20; ++k) {
            const RealVec xi = to_real(random_reeb(rng, t));
            const Real v = vol_xi(t, xi);
            const Real n(static_cast<long>(t.n()));
            EXPECT_LT(rel_diff(dot(grad_vol(t, xi), xi), -n * v), Real("1e-10"));
            EXPECT_LT(rel_diff(dot(xi, hessian_vol(t, xi) * xi), n * (n + 1) * v), Real("1e-10"));
        }
}

TEST(ToricProperty, MidpointStrictConvexityOnSlice) {
    Rng rng(107);
    int cases = 0;
    for (const auto& t : toric_zoo())
        for (int k = 0; k < 20; ++k) {
            RatVec a = random_reeb(rng, t), b = random_reeb(rng, t);
            a = scaled(a, 1 / log_discrepancy(t, a));
            b = scaled(b, 1 / log_discrepancy(t, b));
            if (a == b) continue;
            RatVec mid(t.n());
            for (std::size_t i = 0; i < t.n(); ++i) mid[i] = (a[i] + b[i]) / 2;
            EXPECT_LT(vol_xi(t, mid), (vol_xi(t, a) + vol_xi(t, b)) / 2);
            ++cases;
        }
    EXPECT_GE(cases, 95);
}

TEST(ToricProperty, UnimodularInvarianceExact) {
    Rng rng(108);
    int cases = 0;
    for (const auto& t : toric_zoo())
        for (int k = 0; k < 20; ++k) {
            const IntMatrix u = random_unimodular(rng, t.n());
            const RatMatrix ur = to_rat(u);
            const RatMatrix u_inv_t = linalg::inverse(ur).transpose();
            std::vector<RatVec> new_rays;
            for (const auto& r : t.sigma().rays()) new_rays.push_back(ur * r);
            const ToricData moved = ToricData::from_sigma(VCone(t.n(), new_rays), u_inv_t * t.u0());
            const RatVec xi = random_reeb(rng, t);
            EXPECT_EQ(nvol(moved, ur * xi), nvol(t, xi));
            ++cases;
        }
    EXPECT_GE(cases, 100);
}
