#include <algorithm>

#include <gtest/gtest.h>

#include "reebmin/linalg.hpp"
#include "reebmin/lp.hpp"
#include "reebmin/polyhedral.hpp"
#include "test_support.hpp"

using namespace reebmin;
using namespace reebmin::testing;

namespace {

bool same_ray_set(const VCone& c, const std::vector<RatVec>& expected) {
    if (c.rays().size() != expected.size()) return false;
    for (const auto& e : expected)
        if (std::find(c.rays().begin(), c.rays().end(), primitive(e)) == c.rays().end()) return false;
    return true;
}

// sigma for the 4-dim example: {x>=0, y>=0, z>=0, -x+2y>=0, y-z>=0}
VCone dk_sigma() { return VCone(3, rays({{0, 1, 0}, {2, 1, 0}, {2, 1, 1}, {0, 1, 1}})); }

Rat piece_volume_sum(const VCone& c, const std::vector<SimplicialPiece>& pieces, const RatVec& xi) {
    Rat total = 0;
    for (const auto& p : pieces) {
        Rat denom = 1;
        for (auto i : p.ray_indices) denom *= dot(c.rays()[i], xi);
        total += Rat(p.det_abs) / denom;
    }
    return total;
}

}  // namespace

TEST(DualCone, OrthantIsSelfDual) {
    VCone c(2, rays({{1, 0}, {0, 1}}));
    EXPECT_TRUE(same_ray_set(dual_cone(c), rays({{1, 0}, {0, 1}})));
}

TEST(DualCone, SuspendedPinchPointSigma) {
    VCone sigma(3, rays({{1, 0, 0}, {0, 1, 0}, {2, 0, 1}, {0, 2, 1}}));
    EXPECT_TRUE(same_ray_set(dual_cone(sigma), rays({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -2}})));
}

TEST(DualCone, A1Cone) {
    VCone c(2, rays({{0, 1}, {2, -1}}));
    EXPECT_TRUE(same_ray_set(dual_cone(c), rays({{1, 0}, {1, 2}})));
}

TEST(DualCone, ZeroConeDualIsWholeSpace) {
    VCone zero(3, {});
    VCone d = dual_cone(zero);
    EXPECT_EQ(d.rays().size(), 6u);
    EXPECT_EQ(d.dimension(), 3u);
    EXPECT_FALSE(d.pointed());
}

TEST(DualCone, HalfPlaneHasLowerDimensionalDual) {
    VCone half(2, rays({{1, 0}, {-1, 0}, {0, 1}}));
    EXPECT_TRUE(same_ray_set(dual_cone(half), rays({{0, 1}})));
}

TEST(DualCone, LowerDimensionalConeDualHasLineality) {
    VCone ray(2, rays({{1, 1}}));
    VCone d = dual_cone(ray);
    EXPECT_TRUE(d.contains(rv({1, -1})));
    EXPECT_TRUE(d.contains(rv({-1, 1})));
    EXPECT_TRUE(d.contains(rv({1, 0})));
    EXPECT_FALSE(d.contains(rv({-1, 0})));
}

TEST(DualCone, DoubleDualRecoversConeProperty) {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 4));
        const int nrays = static_cast<int>(rng.uniform_int(1, 6));
        std::vector<RatVec> gens;
        for (int i = 0; i < nrays; ++i) {
            RatVec r(d);
            do {
                for (auto& x : r) x = Rat(rng.uniform_int(-3, 3));
            } while (is_zero(r));
            gens.push_back(r);
        }
        VCone c(d, gens);
        EXPECT_TRUE(same_cone(dual_cone(dual_cone(c)), c)) << "trial " << trial;
    }
}

TEST(FourierMotzkin, TriangleProjection) {
    HRep h(2);
    h.add(rv({1, 0}), 0);
    h.add(rv({0, 1}), 0);
    h.add(rv({-1, -1}), 1);
    HRep p = fm_eliminate(h, 1);
    ASSERT_EQ(p.ambient_dim(), 1u);
    ASSERT_EQ(p.inequalities().size(), 2u);
    HRep expected(1);
    expected.add(rv({1}), 0);
    expected.add(rv({-1}), 1);
    for (const auto& row : expected.inequalities())
        EXPECT_NE(std::find(p.inequalities().begin(), p.inequalities().end(), row), p.inequalities().end());
}

TEST(FourierMotzkin, EqualityCollapse) {
    HRep h(2);
    h.add(rv({0, 1}), 0);
    h.add(rv({0, -1}), 0);
    h.add(rv({1, -1}), 0);
    HRep p = fm_eliminate(h, 1);
    ASSERT_EQ(p.inequalities().size(), 1u);
    EXPECT_EQ(p.inequalities()[0].normal, rv({1}));
    EXPECT_EQ(p.inequalities()[0].offset, 0);
}

TEST(FourierMotzkin, InfeasibleCollapsesToContradiction) {
    HRep h(2);
    h.add(rv({0, 1}), -2);  // y >= 2
    h.add(rv({0, -1}), 1);  // y <= 1
    HRep p = fm_eliminate(h, 1);
    ASSERT_EQ(p.inequalities().size(), 1u);
    EXPECT_TRUE(is_zero(p.inequalities()[0].normal));
    EXPECT_LT(p.inequalities()[0].offset, 0);
}

// Variables (v1,v2,v3, y1..y5): y >= 0, P y = (1,0), s y = v with the downgrade
// example's P and s. Eliminating y leaves the coefficient polyhedron over (1,0).
TEST(FourierMotzkin, DowngradeFiberProjection) {
    const std::vector<RatVec> p_rows = {rv({-1, -1, 0, 2, 1}), rv({-1, -1, 2, 0, 0})};
    const std::vector<RatVec> s_rows = {rv({1, 0, 0, 0, 0}), rv({0, 0, 1, 0, 0}), rv({0, 0, 0, 1, 0})};
    const RatVec target = rv({1, 0});
    HRep h(8);
    auto add_eq = [&](RatVec normal, Rat offset) {
        h.add(normal, offset);
        for (auto& x : normal) x = -x;
        h.add(normal, -offset);
    };
    for (std::size_t i = 0; i < 5; ++i) {
        RatVec n(8, Rat(0));
        n[3 + i] = 1;
        h.add(n, 0);
    }
    for (std::size_t k = 0; k < 2; ++k) {
        RatVec n(8, Rat(0));
        for (std::size_t i = 0; i < 5; ++i) n[3 + i] = p_rows[k][i];
        add_eq(n, -target[k]);
    }
    for (std::size_t k = 0; k < 3; ++k) {
        RatVec n(8, Rat(0));
        n[k] = -1;
        for (std::size_t i = 0; i < 5; ++i) n[3 + i] = s_rows[k][i];
        add_eq(n, 0);
    }
    HRep cur = h;
    for (int i = 0; i < 5; ++i) cur = fm_eliminate(cur, cur.ambient_dim() - 1);

    HRep expected(3);  // {x>=0, y>=0, z>=0, -x+2y>=0, 2y-2z+1>=0}
    expected.add(rv({1, 0, 0}), 0);
    expected.add(rv({0, 1, 0}), 0);
    expected.add(rv({0, 0, 1}), 0);
    expected.add(rv({-1, 2, 0}), 0);
    expected.add(rv({0, 2, -2}), 1);
    EXPECT_TRUE(same_polyhedron(vertex_enumeration(cur), vertex_enumeration(expected)));
    // y >= 0 is implied by x >= 0 and -x + 2y >= 0, so four rows survive.
    EXPECT_EQ(cur.inequalities().size(), 4u);
}

TEST(FourierMotzkin, CommutesWithVertexEnumerationProperty) {
    Rng rng(11);
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 4));
        HRep h(d);
        const int rows = static_cast<int>(rng.uniform_int(d, d + 3));
        for (int i = 0; i < rows; ++i) {
            RatVec n(d);
            for (auto& x : n) x = Rat(rng.uniform_int(-2, 2));
            h.add(n, Rat(rng.uniform_int(0, 3)));
        }
        Polyhedron full = vertex_enumeration(h);  // feasible: origin satisfies all rows
        const std::size_t k = static_cast<std::size_t>(rng.uniform_int(0, d - 1));
        auto project = [&](const RatVec& v) {
            RatVec out;
            for (std::size_t j = 0; j < d; ++j)
                if (j != k) out.push_back(v[j]);
            return out;
        };
        std::vector<RatVec> pv, pt;
        for (const auto& v : full.vertices()) pv.push_back(project(v));
        for (const auto& r : full.tail().rays()) {
            RatVec pr = project(r);
            if (!is_zero(pr)) pt.push_back(pr);
        }
        Polyhedron hull(pv, VCone(d - 1, pt));
        Polyhedron via_fm = vertex_enumeration(fm_eliminate(h, k));
        EXPECT_TRUE(same_polyhedron(hull, via_fm)) << "trial " << trial;
        ++checked;
    }
    EXPECT_EQ(checked, 80);
}

TEST(VertexEnumeration, Triangle) {
    HRep h(2);
    h.add(rv({1, 0}), 0);
    h.add(rv({0, 1}), 0);
    h.add(rv({-1, -1}), 1);
    Polyhedron p = vertex_enumeration(h);
    EXPECT_EQ(p.vertices(), (std::vector<RatVec>{rv({0, 0}), rv({0, 1}), rv({1, 0})}));
    EXPECT_TRUE(p.tail().rays().empty());
}

TEST(VertexEnumeration, SegmentPlusSigma) {
    HRep h(3);  // {x>=0, y>=0, z>=0, -x+2y+1>=0, 2y-2z>=0}
    h.add(rv({1, 0, 0}), 0);
    h.add(rv({0, 1, 0}), 0);
    h.add(rv({0, 0, 1}), 0);
    h.add(rv({-1, 2, 0}), 1);
    h.add(rv({0, 2, -2}), 0);
    Polyhedron p = vertex_enumeration(h);
    EXPECT_EQ(p.vertices(), (std::vector<RatVec>{rv({0, 0, 0}), rv({1, 0, 0})}));
    EXPECT_TRUE(same_cone(p.tail(), dk_sigma()));
}

TEST(VertexEnumeration, HalfLine) {
    HRep h(1);
    h.add(rv({1}), 0);
    Polyhedron p = vertex_enumeration(h);
    EXPECT_EQ(p.vertices(), std::vector<RatVec>{rv({0})});
    ASSERT_EQ(p.tail().rays().size(), 1u);
    EXPECT_EQ(p.tail().rays()[0], rv({1}));
}

TEST(VertexEnumeration, InfeasibleThrows) {
    HRep h(1);
    h.add(rv({1}), -2);
    h.add(rv({-1}), 1);
    try {
        vertex_enumeration(h);
        FAIL() << "expected InfeasibleSystem";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InfeasibleSystem);
    }
}

TEST(VertexEnumeration, RoundTripProperty) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = static_cast<std::size_t>(rng.uniform_int(1, 4));
        std::vector<RatVec> verts;
        for (int i = 0; i < rng.uniform_int(1, 5); ++i) {
            RatVec v(d);
            for (auto& x : v) x = rng.rational(-3, 3, 3);
            verts.push_back(v);
        }
        std::vector<RatVec> tail;
        for (int i = 0; i < rng.uniform_int(0, 2); ++i) {
            RatVec r(d);
            for (auto& x : r) x = Rat(rng.uniform_int(0, 2));
            if (!is_zero(r)) tail.push_back(r);
        }
        Polyhedron p(verts, VCone(d, tail));
        Polyhedron back = vertex_enumeration(p.to_hrep());
        EXPECT_TRUE(same_polyhedron(p, back)) << "trial " << trial;
        for (const auto& v : verts) EXPECT_TRUE(p.contains(v));
    }
}

TEST(Polyhedron, RedundantVerticesAreDropped) {
    // {(0,t,0) : 0 <= t <= 1/2} + sigma: (0,1,0) lies in sigma, so this is sigma itself.
    Polyhedron p({rv({0, 0, 0}), RatVec{0, q(1, 2), 0}}, dk_sigma());
    EXPECT_EQ(p.vertices(), std::vector<RatVec>{rv({0, 0, 0})});
}

TEST(Triangulation, Orthant) {
    auto pieces = triangulate_cone(VCone(2, rays({{1, 0}, {0, 1}})));
    ASSERT_EQ(pieces.size(), 1u);
    EXPECT_EQ(pieces[0].det_abs, 1);
}

TEST(Triangulation, SuspendedPinchPointDualCone) {
    VCone c(3, rays({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -2}}));
    auto pieces = triangulate_cone(c);
    EXPECT_EQ(pieces.size(), 2u);
    // Raw |det| sums depend on the chosen diagonal; the volume functional does not.
    VCone rc(3, rays({{1, 1, -2}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
    auto rev = triangulate_cone(rc);
    const RatVec xi = rv({2, 2, 1});
    EXPECT_EQ(piece_volume_sum(c, pieces, xi), piece_volume_sum(rc, rev, xi));
}

TEST(Triangulation, ConeOverSquare) {
    VCone c(3, rays({{1, 1, 1}, {-1, 1, 1}, {-1, -1, 1}, {1, -1, 1}}));
    auto pieces = triangulate_cone(c);
    ASSERT_EQ(pieces.size(), 2u);
    for (const auto& p : pieces) EXPECT_EQ(p.det_abs, 4);  // twice the triangle area
}

TEST(Triangulation, DegenerateInputThrows) {
    VCone flat(3, rays({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}));
    try {
        triangulate_cone(flat);
        FAIL() << "expected NotFullDimensional";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotFullDimensional);
    }
}

TEST(Triangulation, VolumeFunctionalIsOrderIndependentProperty) {
    const std::vector<std::vector<RatVec>> cones = {
        rays({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -2}}),
        rays({{1, 0, 0}, {0, 0, 1}, {-1, 2, 0}, {0, 1, -1}}),
        rays({{1, 1, 1}, {-1, 1, 1}, {-1, -1, 1}, {1, -1, 1}, {0, 2, 1}}),
        rays({{1, 0}, {1, 2}, {1, 1}}),
    };
    Rng rng(5);
    for (const auto& rs : cones) {
        VCone fwd(rs.front().size(), rs);
        std::vector<RatVec> rrev(rs.rbegin(), rs.rend());
        VCone bwd(rs.front().size(), rrev);
        auto pf = triangulate_cone(fwd);
        auto pb = triangulate_cone(bwd);
        // Interior point of the dual: sum of dual rays, perturbed inside.
        VCone dual = dual_cone(fwd);
        int accepted = 0;
        while (accepted < 100) {
            RatVec xi(fwd.ambient_dim(), Rat(0));
            for (const auto& r : dual.rays()) {
                Rat w = rng.rational(1, 5, 9);
                for (std::size_t j = 0; j < xi.size(); ++j) xi[j] += w * r[j];
            }
            if (!fwd.strictly_positive_on(xi)) continue;
            EXPECT_EQ(piece_volume_sum(fwd, pf, xi), piece_volume_sum(bwd, pb, xi));
            ++accepted;
        }
    }
}

TEST(Smith, Identity) {
    auto s = smith_decompose(IntMatrix::identity(2));
    EXPECT_EQ(s.d, IntMatrix::identity(2));
}

TEST(Smith, BinomialColumn) {
    IntMatrix m(4, 1);
    m(0, 0) = 1;
    m(1, 0) = 1;
    m(2, 0) = -2;
    m(3, 0) = -1;
    auto s = smith_decompose(m);
    EXPECT_EQ(s.d(0, 0), 1);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(s.d(i, 0), 0);
}

TEST(Smith, OneByOne) {
    IntMatrix m(1, 1);
    m(0, 0) = 2;
    EXPECT_EQ(smith_decompose(m).d(0, 0), 2);
}

TEST(Smith, DecompositionProperty) {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t r = static_cast<std::size_t>(rng.uniform_int(1, 5));
        const std::size_t c = static_cast<std::size_t>(rng.uniform_int(1, 5));
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform_int(-6, 6);
        auto s = smith_decompose(m);
        EXPECT_EQ(s.u * m * s.v, s.d);
        EXPECT_EQ(mp::abs(linalg::determinant(s.u)), 1);
        EXPECT_EQ(mp::abs(linalg::determinant(s.v)), 1);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) EXPECT_EQ(s.d(i, j), 0);
        const std::size_t k = std::min(r, c);
        for (std::size_t i = 0; i + 1 < k; ++i) {
            EXPECT_GE(s.d(i, i), 0);
            if (s.d(i, i) != 0)
                EXPECT_EQ(s.d(i + 1, i + 1) % s.d(i, i), 0);
            else
                EXPECT_EQ(s.d(i + 1, i + 1), 0);
        }
    }
}

TEST(PolyhedronMin, SegmentCoefficients) {
    Polyhedron delta0({rv({0, 0, 0}), RatVec{0, 0, q(1, 2)}}, dk_sigma());
    Polyhedron delta2({rv({0, 0, 0}), rv({1, 0, 0})}, dk_sigma());
    EXPECT_EQ(*polyhedron_min(delta0, rv({0, 1, -1})), q(-1, 2));
    EXPECT_EQ(*polyhedron_min(delta0, rv({0, 0, 0})), 0);
    EXPECT_EQ(*polyhedron_min(delta2, rv({1, 0, 0})), 0);
    EXPECT_FALSE(polyhedron_min(delta2, rv({0, -1, 0})).has_value());
}

TEST(LinearProgram, SmallProblems) {
    // min x + y s.t. x >= 1, y >= 2, x + y >= 4
    RatMatrix a{{1, 0}, {0, 1}, {1, 1}};
    auto res = lp::minimize(rv({1, 1}), a, rv({1, 2, 4}));
    ASSERT_EQ(res.status, lp::Status::Optimal);
    EXPECT_EQ(res.value, 4);
    EXPECT_EQ(lp::minimize(rv({-1, 0}), a, rv({1, 2, 4})).status, lp::Status::Unbounded);
    RatMatrix b{{1}, {-1}};
    EXPECT_EQ(lp::minimize(rv({1}), b, rv({2, -1})).status, lp::Status::Infeasible);
}
