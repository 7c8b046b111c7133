#include "reebmin/lp.hpp"

#include <optional>

namespace reebmin::lp {
namespace {

// Tableau over standard form: rows are constraints, the last column is the rhs.
// basis[i] is the column basic in row i.
class Tableau {
public:
    Tableau(RatMatrix t, std::vector<std::size_t> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

    std::size_t rows() const { return t_.rows(); }
    std::size_t vars() const { return t_.cols() - 1; }
    const Rat& rhs(std::size_t i) const { return t_(i, vars()); }
    const Rat& at(std::size_t i, std::size_t j) const { return t_(i, j); }
    const std::vector<std::size_t>& basis() const { return basis_; }

    void pivot(std::size_t r, std::size_t c) {
        Rat inv = 1 / t_(r, c);
        for (std::size_t j = 0; j < t_.cols(); ++j) t_(r, j) *= inv;
        for (std::size_t i = 0; i < t_.rows(); ++i) {
            if (i == r || t_(i, c) == 0) continue;
            Rat f = t_(i, c);
            for (std::size_t j = 0; j < t_.cols(); ++j)
                if (t_(r, j) != 0) t_(i, j) -= f * t_(r, j);
        }
        basis_[r] = c;
    }

    // Minimizes cost over the columns flagged in `allowed`. Returns false on unboundedness.
    bool optimize(const RatVec& cost, const std::vector<bool>& allowed) {
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < vars() && !entering; ++j) {
                if (!allowed[j] || is_basic(j)) continue;
                Rat reduced = cost[j];
                for (std::size_t i = 0; i < rows(); ++i) reduced -= cost[basis_[i]] * t_(i, j);
                if (reduced < 0) entering = j;
            }
            if (!entering) return true;
            std::optional<std::size_t> leave;
            Rat best_ratio;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (t_(i, *entering) <= 0) continue;
                Rat ratio = rhs(i) / t_(i, *entering);
                if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, *entering);
        }
    }

    bool is_basic(std::size_t j) const {
        for (auto b : basis_)
            if (b == j) return true;
        return false;
    }

private:
    RatMatrix t_;
    std::vector<std::size_t> basis_;
};

}  // namespace

Result minimize(const RatVec& c, const RatMatrix& a, const RatVec& b) {
    const std::size_t m = a.rows();
    const std::size_t d = a.cols();
    if (c.size() != d || b.size() != m) throw Error(ErrorCode::InvalidArgument, "lp: dimension mismatch");

    // Columns: x+ (d), x- (d), surplus s (m), artificial (m).
    const std::size_t n_struct = 2 * d + m;
    const std::size_t n_total = n_struct + m;
    RatMatrix t(m, n_total + 1, Rat(0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int sign = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < d; ++j) {
            t(i, j) = sign * a(i, j);
            t(i, d + j) = -sign * a(i, j);
        }
        t(i, 2 * d + i) = -sign;
        t(i, n_struct + i) = 1;
        t(i, n_total) = sign * b[i];
        basis[i] = n_struct + i;
    }
    Tableau tab(std::move(t), std::move(basis));

    RatVec phase1(n_total, Rat(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n_struct + i] = 1;
    tab.optimize(phase1, std::vector<bool>(n_total, true));
    Rat infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis()[i] >= n_struct) infeas += tab.rhs(i);
    if (infeas > 0) return Result{Status::Infeasible, Rat(0), {}};

    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis()[i] < n_struct) continue;
        for (std::size_t j = 0; j < n_struct; ++j) {
            if (tab.at(i, j) != 0) {
                tab.pivot(i, j);
                break;
            }
        }
    }

    RatVec phase2(n_total, Rat(0));
    for (std::size_t j = 0; j < d; ++j) {
        phase2[j] = c[j];
        phase2[d + j] = -c[j];
    }
    std::vector<bool> allowed(n_total, false);
    for (std::size_t j = 0; j < n_struct; ++j) allowed[j] = true;
    if (!tab.optimize(phase2, allowed)) return Result{Status::Unbounded, Rat(0), {}};

    RatVec z(n_total, Rat(0));
    for (std::size_t i = 0; i < m; ++i) z[tab.basis()[i]] = tab.rhs(i);
    Result res;
    res.status = Status::Optimal;
    res.x.assign(d, Rat(0));
    for (std::size_t j = 0; j < d; ++j) res.x[j] = z[j] - z[d + j];
    res.value = dot(c, res.x);
    return res;
}

bool feasible(const RatMatrix& a, const RatVec& b) {
    return minimize(RatVec(a.cols(), Rat(0)), a, b).status != Status::Infeasible;
}

}  // namespace reebmin::lp
