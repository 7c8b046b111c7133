#pragma once

#include <optional>
#include <vector>

#include "reebmin/numeric.hpp"

/// Exact rational polyhedral kernel: cones by generators, half-space systems,
/// polyhedra as compact part plus tail cone, and the lattice tools around them.
/// Nothing in here touches floating point.
namespace reebmin {

/// A cone given by generators. Rays are stored as primitive integer vectors,
/// deduplicated, in first-seen order.
class VCone {
public:
    VCone() = default;
    VCone(std::size_t ambient_dim, const std::vector<RatVec>& rays);

    std::size_t ambient_dim() const noexcept { return dim_; }
    const std::vector<RatVec>& rays() const noexcept { return rays_; }
    std::size_t size() const noexcept { return rays_.size(); }

    /// Dimension of the linear span of the rays.
    std::size_t dimension() const;
    bool full_dimensional() const { return dimension() == dim_; }
    /// True when the cone contains no line.
    bool pointed() const;

    bool contains(const RatVec& x) const;
    /// x is strictly positive on every ray (x lies in the interior of the dual).
    bool strictly_positive_on(const RatVec& x) const;

private:
    std::size_t dim_ = 0;
    std::vector<RatVec> rays_;
};

/// Same cone as a set.
bool same_cone(const VCone& a, const VCone& b);

struct Inequality {
    RatVec normal;
    Rat offset;  // <normal, x> + offset >= 0

    friend bool operator==(const Inequality&, const Inequality&) = default;
};

/// Intersection of closed half-spaces. Rows are normalized (primitive integral
/// normal, offset scaled alongside) and duplicates are dropped on insertion.
class HRep {
public:
    HRep() = default;
    explicit HRep(std::size_t ambient_dim) : dim_(ambient_dim) {}
    HRep(std::size_t ambient_dim, const std::vector<Inequality>& rows);

    std::size_t ambient_dim() const noexcept { return dim_; }
    const std::vector<Inequality>& inequalities() const noexcept { return rows_; }

    void add(RatVec normal, Rat offset);
    bool satisfies(const RatVec& x) const;

private:
    std::size_t dim_ = 0;
    std::vector<Inequality> rows_;
};

/// conv(compact_vertices) + tail. Construction reduces the vertex list to the
/// vertices of the polyhedron (sorted) and the tail to its extreme rays.
class Polyhedron {
public:
    Polyhedron() = default;
    Polyhedron(std::vector<RatVec> compact_vertices, VCone tail);

    std::size_t ambient_dim() const noexcept { return tail_.ambient_dim(); }
    const std::vector<RatVec>& vertices() const noexcept { return vertices_; }
    const VCone& tail() const noexcept { return tail_; }

    HRep to_hrep() const;
    bool contains(const RatVec& x) const;

private:
    struct Trusted {};
    Polyhedron(Trusted, std::vector<RatVec> vertices, VCone tail)
        : vertices_(std::move(vertices)), tail_(std::move(tail)) {}
    friend Polyhedron vertex_enumeration(const HRep& h);

    std::vector<RatVec> vertices_;
    VCone tail_;
};

bool same_polyhedron(const Polyhedron& a, const Polyhedron& b);

/// One simplicial cell of a cone triangulation.
struct SimplicialPiece {
    std::vector<std::size_t> ray_indices;  // into the triangulated cone's rays()
    IntMatrix ray_matrix;                  // columns are the primitive rays
    Int det_abs;
};

/// Generators of {y : <y, r> >= 0 for all rays r}. Extreme rays are returned
/// primitive and sorted; a lineality space is returned as +/- basis vectors.
/// The dual of the zero cone is the full space (+/- standard basis).
VCone dual_cone(const VCone& c);

/// The cone {x : <a_i, x> >= 0} for the given normals, as generators.
VCone cone_from_inequalities(std::size_t ambient_dim, const std::vector<RatVec>& normals);

/// Fourier-Motzkin projection forgetting one coordinate, followed by exact
/// LP-based redundancy removal. An infeasible result collapses to the single
/// row 0 >= 1 (stored as offset -1).
HRep fm_eliminate(const HRep& h, std::size_t coordinate_index);

/// Drops every row implied by the others (exact LP); keeps one of each duplicate.
HRep remove_redundant(const HRep& h);

/// H -> V conversion via homogenization. Throws InfeasibleSystem on empty input.
Polyhedron vertex_enumeration(const HRep& h);

/// Lexicographic placing triangulation on the stored ray order, using only the
/// cone's rays. Throws NotFullDimensional.
std::vector<SimplicialPiece> triangulate_cone(const VCone& c);

struct SmithDecomposition {
    IntMatrix u;  // unimodular, rows x rows
    IntMatrix d;  // diagonal, d_ii | d_(i+1)(i+1), d_ii >= 0
    IntMatrix v;  // unimodular, cols x cols
};

/// u * m * v = d.
SmithDecomposition smith_decompose(const IntMatrix& m);

/// min over p of <u, x>; nullopt stands for minus infinity (u negative on the tail).
std::optional<Rat> polyhedron_min(const Polyhedron& p, const RatVec& u);

}  // namespace reebmin
