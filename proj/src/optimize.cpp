#include "reebmin/optimize.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "reebmin/linalg.hpp"

namespace reebmin {
namespace {

using EMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using EVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Columns span u0^perp (exact basis, converted).
EMatrix slice_basis(const RatVec& u0) {
    RatMatrix row(1, u0.size());
    for (std::size_t j = 0; j < u0.size(); ++j) row(0, j) = u0[j];
    const std::vector<RatVec> ns = linalg::nullspace(row);
    EMatrix z(u0.size(), ns.size());
    for (std::size_t k = 0; k < ns.size(); ++k)
        for (std::size_t j = 0; j < u0.size(); ++j) z(j, k) = to_real(ns[k][j]);
    return z;
}

EVector to_eigen(const RealVec& v) {
    EVector e(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) e(i) = v[i];
    return e;
}

RealVec from_eigen(const EVector& e) {
    RealVec v(e.size());
    for (Eigen::Index i = 0; i < e.size(); ++i) v[i] = e(i);
    return v;
}

EMatrix to_eigen(const RealMatrix& m) {
    EMatrix e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

}  // namespace

RealVec project_to_slice(const RatVec& u0, const RealVec& g) {
    const RealVec u = to_real(u0);
    Real uu = 0, ug = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        uu += u[i] * u[i];
        ug += u[i] * g[i];
    }
    RealVec out = g;
    for (std::size_t i = 0; i < u.size(); ++i) out[i] -= ug / uu * u[i];
    return out;
}

SliceResult minimize_on_slice(const RatVec& u0, RealVec start, const SliceObjective& f, const Real& tolerance,
                              int max_iter) {
    const EMatrix z = slice_basis(u0);
    const Real eps = std::numeric_limits<Real>::epsilon();

    SliceResult res;
    res.x = std::move(start);
    res.value = f.value(res.x);
    RealVec g = f.gradient(res.x);
    res.grad_norm = real_norm2(project_to_slice(u0, g));

    int polish = 0;
    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        if (res.grad_norm <= tolerance) {
            res.converged = true;
            // A few extra Newton steps cost little and tighten the iterate well below the tolerance.
            if (++polish > 3 || res.grad_norm <= mp::sqrt(eps)) break;
        }
        const EVector rg = z.transpose() * to_eigen(g);
        const EMatrix rh = z.transpose() * to_eigen(f.hessian(res.x)) * z;

        EVector step;
        bool newton = false;
        if (rh.rows() > 0) {
            // Conditioning is judged in double; the solve itself stays at full precision.
            Eigen::MatrixXd hd = rh.unaryExpr([](const Real& v) { return v.convert_to<double>(); });
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hd);
            const double lo = eig.eigenvalues().minCoeff();
            const double hi = eig.eigenvalues().maxCoeff();
            Eigen::LDLT<EMatrix> ldlt(rh);
            if (eig.info() == Eigen::Success && lo > 0 && hi / lo <= 1e12 && ldlt.info() == Eigen::Success &&
                ldlt.isPositive()) {
                step = -(z * ldlt.solve(rg));
                newton = true;
            }
        }
        if (!newton) step = -(z * rg);

        const EVector x0 = to_eigen(res.x);
        const Real slope = to_eigen(g).dot(step);
        if (!(slope < 0)) break;  // no descent left at working precision
        Real t = 1;
        bool accepted = false;
        for (int k = 0; k < 200; ++k, t /= 2) {
            RealVec trial = from_eigen(x0 + t * step);
            if (!f.admissible(trial)) continue;
            Real v = f.value(trial);
            if (v <= res.value + Real("1e-4") * t * slope) {
                res.x = std::move(trial);
                res.value = v;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // Armijo cannot be met at this precision: accept a full Newton step only if it shrinks the gradient.
            RealVec trial = from_eigen(x0 + step);
            if (!newton || !f.admissible(trial)) break;
            RealVec gt = f.gradient(trial);
            Real nt = real_norm2(project_to_slice(u0, gt));
            if (!(nt < res.grad_norm)) break;
            res.x = std::move(trial);
            res.value = f.value(res.x);
        }
        g = f.gradient(res.x);
        res.grad_norm = real_norm2(project_to_slice(u0, g));
    }
    if (res.grad_norm <= tolerance) res.converged = true;
    return res;
}

}  // namespace reebmin
