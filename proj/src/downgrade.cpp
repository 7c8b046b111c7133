#include "reebmin/downgrade.hpp"

#include <algorithm>

#include "reebmin/linalg.hpp"

namespace reebmin {
namespace {

IntMatrix rows_of(const IntMatrix& m, std::size_t from, std::size_t to) {
    IntMatrix out(to - from, m.cols());
    for (std::size_t i = from; i < to; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i - from, j) = m(i, j);
    return out;
}

// Checks the Smith invariants of m: all r of them must be 1.
void check_unit_invariants(const IntMatrix& m, std::size_t r, ErrorCode torsion_code, const char* what) {
    const SmithDecomposition sd = smith_decompose(m);
    for (std::size_t i = 0; i < r; ++i) {
        if (sd.d(i, i) == 0) throw Error(ErrorCode::RankDeficient, std::string(what) + " is rank deficient");
        if (sd.d(i, i) != 1) throw Error(torsion_code, std::string(what) + " has torsion (invariant factor " + sd.d(i, i).str() + ")");
    }
}

IntVec mat_vec(const IntMatrix& m, const IntVec& v) { return m * v; }

}  // namespace

DowngradeData complete_sequence(const IntMatrix& f) {
    const std::size_t n = f.rows(), r = f.cols();
    if (r == 0 || r > n) throw Error(ErrorCode::RankDeficient, "weight matrix must have 1 <= r <= N columns");
    check_unit_invariants(f, r, ErrorCode::TorsionCokernel, "cokernel of F");
    const SmithDecomposition sd = smith_decompose(f);
    // U F V = [I; 0]: the bottom rows of U annihilate F and s = V U_top is a section.
    DowngradeData out;
    out.f = f;
    out.p = rows_of(sd.u, r, n);
    out.s = sd.v * rows_of(sd.u, 0, r);
    return out;
}

DowngradeData validate_sequence(const IntMatrix& f, const IntMatrix& p, const IntMatrix& s) {
    const std::size_t n = f.rows(), r = f.cols();
    check_unit_invariants(f, r, ErrorCode::TorsionCokernel, "cokernel of F");
    if (p.rows() != n - r || p.cols() != n) throw Error(ErrorCode::Inconsistent, "P must be (N-r) x N");
    if (s.rows() != r || s.cols() != n) throw Error(ErrorCode::Inconsistent, "s must be r x N");
    if (!(p * f == IntMatrix(n - r, r, Int(0)))) throw Error(ErrorCode::Inconsistent, "P F != 0");
    if (!(s * f == IntMatrix::identity(r))) throw Error(ErrorCode::Inconsistent, "s F != id");
    // P F = 0 with rank N - r means the rows span ker(F^T) over Q; unit invariants make them a lattice basis.
    if (n > r) check_unit_invariants(p, n - r, ErrorCode::Inconsistent, "P");
    return {f, p, s};
}

std::pair<VCone, VCone> downgrade_sigma(const DowngradeData& d) {
    std::vector<RatVec> normals;
    for (std::size_t i = 0; i < d.f.rows(); ++i) normals.push_back(to_rat(d.f.row(i)));
    VCone sigma = cone_from_inequalities(d.f.cols(), normals);
    VCone dual = dual_cone(sigma);
    return {std::move(sigma), std::move(dual)};
}

Polyhedron downgrade_coefficient(const DowngradeData& d, const IntVec& p) {
    const std::size_t n = d.f.rows(), r = d.f.cols();
    if (p.size() != d.p.rows()) throw Error(ErrorCode::InvalidArgument, "p has the wrong dimension");
    std::optional<RatVec> y0 = linalg::solve(to_rat(d.p), to_rat(p));
    if (!y0) throw Error(ErrorCode::EmptyFiber, "P y = p has no solution");
    // The fiber is y0 + F(Q^r); its image under s is s(y0) + {xi : F xi + y0 >= 0}.
    HRep h(r);
    for (std::size_t i = 0; i < n; ++i) h.add(to_rat(d.f.row(i)), (*y0)[i]);
    Polyhedron base;
    try {
        base = vertex_enumeration(h);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InfeasibleSystem) throw Error(ErrorCode::EmptyFiber, "no y >= 0 with P y = p");
        throw;
    }
    const RatVec shift = to_rat(d.s) * *y0;
    std::vector<RatVec> verts;
    for (auto v : base.vertices()) {
        for (std::size_t i = 0; i < r; ++i) v[i] += shift[i];
        verts.push_back(std::move(v));
    }
    return Polyhedron(std::move(verts), base.tail());
}

std::vector<IntVec> base_fan_rays(const DowngradeData& d) {
    std::vector<IntVec> out;
    for (std::size_t j = 0; j < d.p.cols(); ++j) {
        IntVec c = d.p.col(j);
        bool zero = std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
        if (zero) continue;
        IntVec prim = primitive_int(to_rat(c));
        if (std::find(out.begin(), out.end(), prim) == out.end()) out.push_back(std::move(prim));
    }
    return out;
}

PolyhedralDivisor downgrade_divisor(const DowngradeData& d,
                                    const std::vector<std::pair<std::string, IntVec>>& points) {
    auto [sigma, dual] = downgrade_sigma(d);
    std::vector<DivisorPoint> pts;
    for (const auto& [label, p] : points) pts.push_back({label, downgrade_coefficient(d, p)});
    return PolyhedralDivisor(std::move(sigma), std::move(pts));
}

ToricData binomial_to_toric(const BinomialHypersurface& h) {
    const std::size_t n = h.a.size();
    if (n < 2 || h.b.size() != n) throw Error(ErrorCode::InvalidArgument, "exponent vectors must have equal length >= 2");
    IntMatrix c(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (h.a[i] < 0 || h.b[i] < 0) throw Error(ErrorCode::InvalidArgument, "exponents must be nonnegative");
        if (h.a[i] != 0 && h.b[i] != 0) throw Error(ErrorCode::InvalidArgument, "monomials must have disjoint supports");
        c(i, 0) = h.a[i] - h.b[i];
    }
    if (h.a == h.b) throw Error(ErrorCode::InvalidArgument, "a and b must differ");
    if (h.ambient_weight) {
        if (h.ambient_weight->size() != n) throw Error(ErrorCode::InvalidArgument, "ambient weight has the wrong length");
        if (dot(to_rat(c.col(0)), *h.ambient_weight) != 0)
            throw Error(ErrorCode::NonInvariant, "ambient weight does not preserve the binomial");
    }
    const SmithDecomposition sd = smith_decompose(c);
    if (sd.d(0, 0) != 1)
        throw Error(ErrorCode::TorsionQuotient, "Z^N / Z(a - b) has torsion (gcd " + sd.d(0, 0).str() + ")");
    // U maps a - b to +-e_1, so the remaining rows of U give Z^N -> Z^N / Z(a - b).
    const IntMatrix q = rows_of(sd.u, 1, n);
    std::vector<RatVec> images;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec img = q.col(i);
        if (std::all_of(img.begin(), img.end(), [](const Int& x) { return x == 0; })) continue;
        images.push_back(to_rat(img));
    }
    VCone dual(n - 1, images);
    if (!dual.pointed()) throw Error(ErrorCode::NotStrictlyConvex, "the character cone contains a line");
    IntVec ones_minus_a(n);
    for (std::size_t i = 0; i < n; ++i) ones_minus_a[i] = 1 - h.a[i];
    return ToricData::from_sigma_dual(dual, to_rat(mat_vec(q, ones_minus_a)));
}

RatVec induced_reeb(const IntMatrix& f, const RatVec& w) {
    if (w.size() != f.rows()) throw Error(ErrorCode::InvalidArgument, "ambient weight has the wrong length");
    std::optional<RatVec> xi = linalg::solve(to_rat(f), w);
    if (!xi) throw Error(ErrorCode::Inconsistent, "ambient weight is not in the image of F");
    if (linalg::rank(to_rat(f)) != f.cols()) throw Error(ErrorCode::RankDeficient, "F is rank deficient");
    return *xi;
}

RealVec induced_reeb(const IntMatrix& f, const RealVec& w, const Real& tolerance) {
    const std::size_t n = f.rows(), r = f.cols();
    if (w.size() != n) throw Error(ErrorCode::InvalidArgument, "ambient weight has the wrong length");
    // Pick r independent rows, invert exactly, then check the rest.
    std::vector<std::size_t> basis;
    std::vector<RatVec> chosen;
    for (std::size_t i = 0; i < n && basis.size() < r; ++i) {
        chosen.push_back(to_rat(f.row(i)));
        if (linalg::rank(chosen, r) == chosen.size())
            basis.push_back(i);
        else
            chosen.pop_back();
    }
    if (basis.size() < r) throw Error(ErrorCode::RankDeficient, "F is rank deficient");
    const RatMatrix inv = linalg::inverse(RatMatrix::from_rows(chosen, r));
    RealVec xi(r, Real(0));
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t k = 0; k < r; ++k)
            if (inv(a, k) != 0) xi[a] += to_real(inv(a, k)) * w[basis[k]];
    for (std::size_t i = 0; i < n; ++i) {
        Real fi = dot(to_rat(f.row(i)), xi);
        if (mp::abs(fi - w[i]) > tolerance * (1 + mp::abs(w[i])))
            throw Error(ErrorCode::Inconsistent, "ambient weight is not in the image of F");
    }
    return xi;
}

IntVec equation_weight(const IntMatrix& f, const std::vector<IntVec>& monomials) {
    if (monomials.empty()) throw Error(ErrorCode::InvalidArgument, "equation has no monomials");
    const IntMatrix ft = f.transpose();
    std::optional<IntVec> weight;
    for (const auto& m : monomials) {
        if (m.size() != f.rows()) throw Error(ErrorCode::InvalidArgument, "monomial exponent has the wrong length");
        IntVec w = ft * m;
        if (weight && w != *weight) throw Error(ErrorCode::NonInvariant, "monomials of the equation have different weights");
        weight = std::move(w);
    }
    return *weight;
}

RatVec hypersurface_u0(const IntMatrix& f, const IntVec& f_weight) {
    if (f_weight.size() != f.cols()) throw Error(ErrorCode::InvalidArgument, "equation weight has the wrong length");
    RatVec u0(f.cols(), Rat(0));
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) u0[j] += Rat(f(i, j));
    for (std::size_t j = 0; j < f.cols(); ++j) u0[j] -= Rat(f_weight[j]);
    return u0;
}

}  // namespace reebmin
