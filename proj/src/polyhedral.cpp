#include "reebmin/polyhedral.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "reebmin/linalg.hpp"
#include "reebmin/lp.hpp"

namespace reebmin {
namespace {

bool lex_less(const RatVec& a, const RatVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool lex_greater(const RatVec& a, const RatVec& b) { return lex_less(b, a); }

void push_unique(std::vector<RatVec>& out, RatVec v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
}

// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        visit(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Inequality normalize(RatVec normal, Rat offset) {
    if (is_zero(normal)) {
        offset = offset > 0 ? Rat(1) : (offset < 0 ? Rat(-1) : Rat(0));
        return {std::move(normal), offset};
    }
    IntVec prim = primitive_int(normal);
    // normal = factor * prim for a positive rational factor.
    Rat factor;
    for (std::size_t i = 0; i < normal.size(); ++i)
        if (prim[i] != 0) {
            factor = normal[i] / Rat(prim[i]);
            break;
        }
    return {to_rat(prim), offset / factor};
}

// Homogenized generators of a V-described polyhedron: (v, 1) and (r, 0).
VCone homogenize(const std::vector<RatVec>& vertices, const VCone& tail) {
    const std::size_t d = tail.ambient_dim();
    std::vector<RatVec> gens;
    for (const auto& v : vertices) {
        RatVec g = v;
        g.push_back(Rat(1));
        gens.push_back(std::move(g));
    }
    for (const auto& r : tail.rays()) {
        RatVec g = r;
        g.push_back(Rat(0));
        gens.push_back(std::move(g));
    }
    return VCone(d + 1, gens);
}

HRep hrep_of_homogenized(const VCone& hom) {
    const std::size_t d = hom.ambient_dim() - 1;
    HRep h(d);
    const VCone dual = dual_cone(hom);
    for (const auto& row : dual.rays()) {
        RatVec normal(row.begin(), row.end() - 1);
        if (is_zero(normal) && row.back() >= 0) continue;
        h.add(std::move(normal), row.back());
    }
    return h;
}

}  // namespace

// ---------------------------------------------------------------- VCone

VCone::VCone(std::size_t ambient_dim, const std::vector<RatVec>& rays) : dim_(ambient_dim) {
    if (ambient_dim == 0) throw Error(ErrorCode::InvalidArgument, "cone ambient dimension must be positive");
    for (const auto& r : rays) {
        if (r.size() != ambient_dim) throw Error(ErrorCode::InvalidArgument, "ray dimension mismatch");
        if (is_zero(r)) throw Error(ErrorCode::InvalidArgument, "cone rays must be nonzero");
        push_unique(rays_, primitive(r));
    }
}

std::size_t VCone::dimension() const { return linalg::rank(rays_, dim_); }

bool VCone::pointed() const {
    // Pointed iff the dual is full-dimensional.
    return dual_cone(*this).full_dimensional();
}

bool VCone::contains(const RatVec& x) const {
    if (x.size() != dim_) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
    const VCone dual = dual_cone(*this);
    for (const auto& y : dual.rays())
        if (dot(y, x) < 0) return false;
    return true;
}

bool VCone::strictly_positive_on(const RatVec& x) const {
    for (const auto& r : rays_)
        if (dot(r, x) <= 0) return false;
    return true;
}

bool same_cone(const VCone& a, const VCone& b) {
    if (a.ambient_dim() != b.ambient_dim()) return false;
    const VCone da = dual_cone(a);
    const VCone db = dual_cone(b);
    auto inside = [](const VCone& c, const VCone& dual_of_other) {
        for (const auto& r : c.rays())
            for (const auto& y : dual_of_other.rays())
                if (dot(y, r) < 0) return false;
        return true;
    };
    return inside(a, db) && inside(b, da);
}

// ---------------------------------------------------------------- HRep

HRep::HRep(std::size_t ambient_dim, const std::vector<Inequality>& rows) : dim_(ambient_dim) {
    for (const auto& r : rows) add(r.normal, r.offset);
}

void HRep::add(RatVec normal, Rat offset) {
    if (normal.size() != dim_) throw Error(ErrorCode::InvalidArgument, "inequality dimension mismatch");
    Inequality ineq = normalize(std::move(normal), std::move(offset));
    if (std::find(rows_.begin(), rows_.end(), ineq) == rows_.end()) rows_.push_back(std::move(ineq));
}

bool HRep::satisfies(const RatVec& x) const {
    for (const auto& r : rows_)
        if (dot(r.normal, x) + r.offset < 0) return false;
    return true;
}

// ---------------------------------------------------------------- Polyhedron

Polyhedron::Polyhedron(std::vector<RatVec> compact_vertices, VCone tail) {
    if (compact_vertices.empty()) throw Error(ErrorCode::InvalidArgument, "polyhedron needs at least one vertex");
    for (const auto& v : compact_vertices)
        if (v.size() != tail.ambient_dim()) throw Error(ErrorCode::InvalidArgument, "vertex dimension mismatch");
    *this = vertex_enumeration(hrep_of_homogenized(homogenize(compact_vertices, tail)));
}

HRep Polyhedron::to_hrep() const { return hrep_of_homogenized(homogenize(vertices_, tail_)); }

bool Polyhedron::contains(const RatVec& x) const { return to_hrep().satisfies(x); }

bool same_polyhedron(const Polyhedron& a, const Polyhedron& b) {
    return a.ambient_dim() == b.ambient_dim() && a.vertices() == b.vertices() && same_cone(a.tail(), b.tail());
}

// ---------------------------------------------------------------- operations

VCone dual_cone(const VCone& c) {
    const std::size_t d = c.ambient_dim();
    const auto& rays = c.rays();
    std::vector<RatVec> out;

    const std::size_t k = linalg::rank(rays, d);
    if (k == 0) {
        for (std::size_t i = 0; i < d; ++i) {
            RatVec e(d, Rat(0));
            e[i] = 1;
            out.push_back(e);
            e[i] = -1;
            out.push_back(e);
        }
        return VCone(d, out);
    }

    // Lineality of the dual: the orthogonal complement of span(rays).
    const std::vector<RatVec> perp = linalg::nullspace(RatMatrix::from_rows(rays, d));

    // Extreme rays of the pointed part: y orthogonal to perp with d-1 independent tight rows.
    std::vector<RatVec> extreme;
    for_each_subset(rays.size(), k - 1, [&](const std::vector<std::size_t>& idx) {
        std::vector<RatVec> tight;
        for (auto i : idx) tight.push_back(rays[i]);
        tight.insert(tight.end(), perp.begin(), perp.end());
        RatMatrix m = RatMatrix::from_rows(tight, d);
        std::vector<RatVec> ns = linalg::nullspace(m);
        if (ns.size() != 1) return;
        RatVec y = ns.front();
        bool has_pos = false, has_neg = false;
        for (const auto& r : rays) {
            Rat s = dot(y, r);
            if (s > 0) has_pos = true;
            if (s < 0) has_neg = true;
        }
        if (has_pos && has_neg) return;
        if (has_neg)
            for (auto& x : y) x = -x;
        push_unique(extreme, std::move(y));
    });
    std::sort(extreme.begin(), extreme.end(), lex_greater);
    out = std::move(extreme);
    for (const auto& p : perp) {
        out.push_back(p);
        RatVec neg = p;
        for (auto& x : neg) x = -x;
        out.push_back(std::move(neg));
    }
    return VCone(d, out);
}

VCone cone_from_inequalities(std::size_t ambient_dim, const std::vector<RatVec>& normals) {
    std::vector<RatVec> nz;
    for (const auto& n : normals)
        if (!is_zero(n)) nz.push_back(n);
    return dual_cone(VCone(ambient_dim, nz));
}

HRep remove_redundant(const HRep& h) {
    const std::size_t d = h.ambient_dim();
    std::vector<Inequality> rows;
    for (const auto& r : h.inequalities()) {
        if (is_zero(r.normal)) {
            if (r.offset >= 0) continue;
            HRep bad(d);
            bad.add(RatVec(d, Rat(0)), Rat(-1));
            return bad;
        }
        rows.push_back(r);
    }
    auto system = [&](const std::vector<std::size_t>& which, RatMatrix& a, RatVec& b) {
        a = RatMatrix(which.size(), d);
        b.assign(which.size(), Rat(0));
        for (std::size_t i = 0; i < which.size(); ++i) {
            for (std::size_t j = 0; j < d; ++j) a(i, j) = rows[which[i]].normal[j];
            b[i] = -rows[which[i]].offset;
        }
    };
    {
        std::vector<std::size_t> all(rows.size());
        std::iota(all.begin(), all.end(), 0);
        RatMatrix a;
        RatVec b;
        system(all, a, b);
        if (!rows.empty() && !lp::feasible(a, b)) {
            HRep bad(d);
            bad.add(RatVec(d, Rat(0)), Rat(-1));
            return bad;
        }
    }
    std::vector<bool> keep(rows.size(), true);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<std::size_t> others;
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != i && keep[j]) others.push_back(j);
        if (others.empty()) continue;
        RatMatrix a;
        RatVec b;
        system(others, a, b);
        lp::Result res = lp::minimize(rows[i].normal, a, b);
        if (res.status == lp::Status::Optimal && res.value + rows[i].offset >= 0) keep[i] = false;
    }
    HRep out(d);
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (keep[i]) out.add(rows[i].normal, rows[i].offset);
    return out;
}

HRep fm_eliminate(const HRep& h, std::size_t coordinate_index) {
    const std::size_t d = h.ambient_dim();
    if (coordinate_index >= d) throw Error(ErrorCode::InvalidArgument, "fm_eliminate: coordinate out of range");
    if (d == 1) throw Error(ErrorCode::InvalidArgument, "fm_eliminate: cannot eliminate the only coordinate");
    auto drop = [&](const RatVec& v) {
        RatVec out;
        for (std::size_t j = 0; j < d; ++j)
            if (j != coordinate_index) out.push_back(v[j]);
        return out;
    };
    std::vector<const Inequality*> pos, neg;
    HRep out(d - 1);
    for (const auto& r : h.inequalities()) {
        const Rat& a = r.normal[coordinate_index];
        if (a > 0)
            pos.push_back(&r);
        else if (a < 0)
            neg.push_back(&r);
        else
            out.add(drop(r.normal), r.offset);
    }
    for (const auto* p : pos)
        for (const auto* n : neg) {
            const Rat wp = -n->normal[coordinate_index];
            const Rat wn = p->normal[coordinate_index];
            RatVec combo(d);
            for (std::size_t j = 0; j < d; ++j) combo[j] = wp * p->normal[j] + wn * n->normal[j];
            out.add(drop(combo), wp * p->offset + wn * n->offset);
        }
    return remove_redundant(out);
}

Polyhedron vertex_enumeration(const HRep& h) {
    const std::size_t d = h.ambient_dim();
    std::vector<RatVec> gens;
    for (const auto& r : h.inequalities()) {
        RatVec g = r.normal;
        g.push_back(r.offset);
        if (!is_zero(g)) gens.push_back(std::move(g));
    }
    RatVec t_axis(d + 1, Rat(0));
    t_axis[d] = 1;
    gens.push_back(t_axis);
    const VCone hom = dual_cone(VCone(d + 1, gens));

    std::vector<RatVec> vertices, tail;
    for (const auto& g : hom.rays()) {
        RatVec x(g.begin(), g.end() - 1);
        if (g.back() > 0) {
            for (auto& xi : x) xi /= g.back();
            push_unique(vertices, std::move(x));
        } else {
            tail.push_back(std::move(x));
        }
    }
    if (vertices.empty()) throw Error(ErrorCode::InfeasibleSystem, "inequality system has no solution");
    std::sort(vertices.begin(), vertices.end(), lex_less);
    return Polyhedron(Polyhedron::Trusted{}, std::move(vertices), VCone(d, tail));
}

std::vector<SimplicialPiece> triangulate_cone(const VCone& c) {
    const std::size_t d = c.ambient_dim();
    const auto& rays = c.rays();

    std::vector<std::size_t> initial;
    {
        std::vector<RatVec> chosen;
        for (std::size_t i = 0; i < rays.size() && initial.size() < d; ++i) {
            chosen.push_back(rays[i]);
            if (linalg::rank(chosen, d) == chosen.size())
                initial.push_back(i);
            else
                chosen.pop_back();
        }
    }
    if (initial.size() < d) throw Error(ErrorCode::NotFullDimensional, "cone rays span a proper subspace");

    std::vector<std::vector<std::size_t>> simplices{initial};
    for (std::size_t j = 0; j < rays.size(); ++j) {
        if (std::find(initial.begin(), initial.end(), j) != initial.end()) continue;
        // Boundary facets: facets that belong to exactly one simplex.
        std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> facets;  // -> (count, opposite ray)
        for (const auto& s : simplices)
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<std::size_t> f;
                for (std::size_t t = 0; t < s.size(); ++t)
                    if (t != drop) f.push_back(s[t]);
                std::sort(f.begin(), f.end());
                auto& entry = facets[f];
                entry.first += 1;
                entry.second = s[drop];
            }
        std::vector<std::vector<std::size_t>> added;
        for (const auto& [f, info] : facets) {
            if (info.first != 1) continue;
            std::vector<RatVec> frows;
            for (auto i : f) frows.push_back(rays[i]);
            std::vector<RatVec> ns = linalg::nullspace(RatMatrix::from_rows(frows, d));
            RatVec normal = ns.front();
            if (dot(normal, rays[info.second]) < 0)
                for (auto& x : normal) x = -x;
            if (dot(normal, rays[j]) < 0) {
                std::vector<std::size_t> s = f;
                s.push_back(j);
                added.push_back(std::move(s));
            }
        }
        simplices.insert(simplices.end(), added.begin(), added.end());
    }

    std::vector<SimplicialPiece> pieces;
    for (auto& s : simplices) {
        std::sort(s.begin(), s.end());
        SimplicialPiece p;
        p.ray_indices = s;
        p.ray_matrix = IntMatrix(d, d);
        for (std::size_t col = 0; col < d; ++col) {
            IntVec r = to_int(rays[s[col]]);
            for (std::size_t row = 0; row < d; ++row) p.ray_matrix(row, col) = r[row];
        }
        p.det_abs = mp::abs(linalg::determinant(p.ray_matrix));
        pieces.push_back(std::move(p));
    }
    return pieces;
}

SmithDecomposition smith_decompose(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols; ++c) std::swap(a(i, c), a(j, c));
        for (std::size_t c = 0; c < rows; ++c) std::swap(u(i, c), u(j, c));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, i), a(r, j));
        for (std::size_t r = 0; r < cols; ++r) std::swap(v(r, i), v(r, j));
    };
    // row_i += f * row_j
    auto add_row = [&](std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t c = 0; c < cols; ++c) a(i, c) += f * a(j, c);
        for (std::size_t c = 0; c < rows; ++c) u(i, c) += f * u(j, c);
    };
    auto add_col = [&](std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t r = 0; r < rows; ++r) a(r, i) += f * a(r, j);
        for (std::size_t r = 0; r < cols; ++r) v(r, i) += f * v(r, j);
    };

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // Smallest nonzero magnitude in the trailing block becomes the pivot.
            bool found = false;
            std::size_t pr = t, pc = t;
            Int best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a(i, j) != 0 && (!found || mp::abs(a(i, j)) < best)) {
                        found = true;
                        best = mp::abs(a(i, j));
                        pr = i;
                        pc = j;
                    }
            if (!found) goto done;
            swap_rows(t, pr);
            swap_cols(t, pc);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                Int q = a(i, t) / a(t, t);
                add_row(i, t, -q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                Int q = a(t, j) / a(t, t);
                add_col(j, t, -q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            bool divisible = true;
            for (std::size_t i = t + 1; i < rows && divisible; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        add_row(t, i, Int(1));
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (a(t, t) < 0) {
            for (std::size_t c = 0; c < cols; ++c) a(t, c) = -a(t, c);
            for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
        }
    }
done:
    return SmithDecomposition{std::move(u), std::move(a), std::move(v)};
}

std::optional<Rat> polyhedron_min(const Polyhedron& p, const RatVec& u) {
    if (u.size() != p.ambient_dim()) throw Error(ErrorCode::InvalidArgument, "polyhedron_min: dimension mismatch");
    for (const auto& r : p.tail().rays())
        if (dot(u, r) < 0) return std::nullopt;
    std::optional<Rat> best;
    for (const auto& v : p.vertices()) {
        Rat val = dot(u, v);
        if (!best || val < *best) best = val;
    }
    return best;
}

}  // namespace reebmin
