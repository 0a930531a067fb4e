#ifndef MEPFIT_KERNELS_HPP
#define MEPFIT_KERNELS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <mepfit/errors.hpp>
#include <mepfit/types.hpp>

namespace mepfit
{

template <typename Real>
struct SvdResult
{
    ComplexMatrix<Real> U;     // thin left factor
    RealVector<Real> sigma;    // nonincreasing, nonnegative
    ComplexMatrix<Real> V;     // thin right factor; A = U diag(sigma) V^*
};

///
/// Thin singular value decomposition, A = U diag(sigma) V^*.
///
template <typename Real>
SvdResult<Real> svd(const ComplexMatrix<Real>& A)
{
    Eigen::JacobiSVD<ComplexMatrix<Real>> dec(
        A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success)
    {
        throw KernelFailureError("svd: did not converge");
    }
    return SvdResult<Real>{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

/// Singular values only.
template <typename Real>
RealVector<Real> singular_values(const ComplexMatrix<Real>& A)
{
    return Eigen::JacobiSVD<ComplexMatrix<Real>>(A).singularValues();
}

///
/// Joint factorization of an N x M pair (N >= M),
///
///     A = U [diag(sigma_a); 0] X,      B = V [diag(sigma_b); 0] X,
///
/// with U, V square unitary of order N, sigma_a/sigma_b nonnegative, and a
/// shared nonsingular right factor X of order M. Computed from a pivoted QR
/// of the stacked pair followed by a cosine-sine split of the orthonormal
/// blocks; the V block is re-orthogonalized column by column so that the
/// unitarity defect stays at the roundoff level even when a generalized
/// singular value is extreme.
///
template <typename Real>
struct GsvdFactors
{
    ComplexMatrix<Real> U;     // N x N unitary
    ComplexMatrix<Real> V;     // N x N unitary
    RealVector<Real> sigma_a;  // length M, diagonal core of A
    RealVector<Real> sigma_b;  // length M, diagonal core of B
    ComplexMatrix<Real> X;     // M x M nonsingular
};

template <typename Real>
GsvdFactors<Real> gsvd(const ComplexMatrix<Real>& A,
                       const ComplexMatrix<Real>& B)
{
    const Index n = A.rows();
    const Index m = A.cols();
    if (B.rows() != n || B.cols() != m || n < m || m < 1)
    {
        throw SizingError("gsvd: pair must share an N x M shape with N >= M");
    }

    ComplexMatrix<Real> stacked(2 * n, m);
    stacked.topRows(n)    = A;
    stacked.bottomRows(n) = B;

    Eigen::ColPivHouseholderQR<ComplexMatrix<Real>> qr(stacked);
    if (qr.rank() < m)
    {
        throw DegeneratePencilError(
            "gsvd: stacked pair is column-rank deficient (rank " +
            std::to_string(qr.rank()) + " of " + std::to_string(m) + ")");
    }
    ComplexMatrix<Real> q =
        qr.householderQ() * ComplexMatrix<Real>::Identity(2 * n, m);
    ComplexMatrix<Real> r =
        qr.matrixR()
            .topLeftCorner(m, m)
            .template triangularView<Eigen::Upper>();
    // stacked * P = Q R  =>  stacked = Q (R P^T)
    ComplexMatrix<Real> rp = r * qr.colsPermutation().transpose();

    Eigen::JacobiSVD<ComplexMatrix<Real>> top(
        q.topRows(n), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (top.info() != Eigen::Success)
    {
        throw KernelFailureError("gsvd: inner svd did not converge");
    }

    GsvdFactors<Real> f;
    f.U       = top.matrixU();
    f.sigma_a = top.singularValues();
    f.X       = top.matrixV().adjoint() * rp;

    // Cosine-sine split of the bottom block: T = Q2 W has orthogonal columns
    // with norms sqrt(1 - sigma_a_i^2). Columns are orthonormalized in order
    // of decreasing norm; a vanished column is replaced by an orthonormal
    // complement direction.
    ComplexMatrix<Real> t = q.bottomRows(n) * top.matrixV();
    f.sigma_b.resize(m);
    ComplexMatrix<Real> vm(n, m);
    std::vector<Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Index(0));
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        return t.col(a).norm() > t.col(b).norm();
    });
    std::vector<Index> done;
    done.reserve(order.size());
    for (Index i : order)
    {
        ComplexVector<Real> w = t.col(i);
        for (int pass = 0; pass < 2; ++pass)
        {
            for (Index j : done)
            {
                w -= vm.col(j) * (vm.col(j).dot(w));
            }
        }
        const Real nrm = w.norm();
        if (nrm > Real(100) * Eigen::NumTraits<Real>::epsilon())
        {
            vm.col(i) = w / nrm;
        }
        else
        {
            // pick the coordinate direction with the largest residual
            Index best   = 0;
            Real best_nr = Real(-1);
            for (Index k = 0; k < n; ++k)
            {
                ComplexVector<Real> e = ComplexVector<Real>::Unit(n, k);
                for (Index j : done)
                {
                    e -= vm.col(j) * (vm.col(j).dot(e));
                }
                if (e.norm() > best_nr)
                {
                    best_nr = e.norm();
                    best    = k;
                }
            }
            ComplexVector<Real> e = ComplexVector<Real>::Unit(n, best);
            for (int pass = 0; pass < 2; ++pass)
            {
                for (Index j : done)
                {
                    e -= vm.col(j) * (vm.col(j).dot(e));
                }
            }
            vm.col(i) = e / e.norm();
        }
        f.sigma_b(i) = std::max(Real(0), vm.col(i).dot(t.col(i)).real());
        done.push_back(i);
    }

    if (n > m)
    {
        Eigen::HouseholderQR<ComplexMatrix<Real>> comp(vm);
        ComplexMatrix<Real> full =
            comp.householderQ() * ComplexMatrix<Real>::Identity(n, n);
        f.V.resize(n, n);
        f.V.leftCols(m)      = vm;
        f.V.rightCols(n - m) = full.rightCols(n - m);
    }
    else
    {
        f.V = vm;
    }
    return f;
}

namespace detail
{

/// Diagonal similarity scaling by powers of two (Parlett-Reinsch) so that
/// row and column norms are comparable; leaves eigenvalues unchanged.
template <typename Real>
void balance_in_place(ComplexMatrix<Real>& a)
{
    const Index n = a.rows();
    bool converged = false;
    while (!converged)
    {
        converged = true;
        for (Index i = 0; i < n; ++i)
        {
            Real r(0), c(0);
            for (Index j = 0; j < n; ++j)
            {
                if (j != i)
                {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            }
            if (c == Real(0) || r == Real(0))
            {
                continue;
            }
            const Real total = c + r;
            Real g = r / Real(2);
            Real scale(1);
            while (c < g)
            {
                scale *= Real(2);
                c *= Real(4);
            }
            g = r * Real(2);
            while (c > g)
            {
                scale /= Real(2);
                c /= Real(4);
            }
            if ((c + r) / scale < Real(0.95) * total)
            {
                converged = false;
                a.row(i) /= scale;
                a.col(i) *= scale;
            }
        }
    }
}

} // namespace detail

///
/// All eigenvalues of a square complex matrix, with algebraic multiplicity,
/// via a balanced complex Schur reduction. Iterations are capped at 100 per
/// dimension; exceeding the cap raises instead of returning a partial
/// spectrum.
///
template <typename Real>
ComplexVector<Real> eigenvalues(const ComplexMatrix<Real>& A)
{
    if (A.rows() != A.cols() || A.rows() < 1)
    {
        throw SizingError("eigenvalues: square matrix required");
    }
    ComplexMatrix<Real> work = A;
    detail::balance_in_place(work);
    Eigen::ComplexSchur<ComplexMatrix<Real>> schur;
    schur.setMaxIterations(100 * A.rows());
    schur.compute(work, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
    {
        throw KernelFailureError("eigenvalues: schur iteration cap exceeded");
    }
    return schur.matrixT().diagonal();
}

///
/// Least-squares solution of an overdetermined system A x = b (rows >=
/// cols, full column rank). Columns are equilibrated before the pivoted QR
/// solve; rank deficiency raises with the detected numerical rank.
///
template <typename Real>
ComplexVector<Real> lstsq(const ComplexMatrix<Real>& A,
                          const ComplexVector<Real>& b)
{
    if (A.rows() < A.cols() || A.cols() < 1)
    {
        throw SizingError("lstsq: system must have rows >= cols >= 1");
    }
    if (b.size() != A.rows())
    {
        throw SizingError("lstsq: right-hand side length mismatch");
    }
    RealVector<Real> scale = A.colwise().norm().transpose();
    for (Index j = 0; j < scale.size(); ++j)
    {
        if (scale(j) == Real(0))
        {
            scale(j) = Real(1);
        }
    }
    ComplexVector<Real> inv_scale =
        scale.cwiseInverse().template cast<Complex<Real>>();
    ComplexMatrix<Real> eq = A * inv_scale.asDiagonal();
    Eigen::ColPivHouseholderQR<ComplexMatrix<Real>> qr(eq);
    if (qr.rank() < A.cols())
    {
        throw IllPosedSystemError("lstsq: numerical rank " +
                                  std::to_string(qr.rank()) + " below " +
                                  std::to_string(A.cols()) + " columns");
    }
    ComplexVector<Real> y = qr.solve(b);
    return inv_scale.asDiagonal() * y;
}

} // namespace mepfit

#endif // MEPFIT_KERNELS_HPP
