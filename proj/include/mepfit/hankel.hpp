#ifndef MEPFIT_HANKEL_HPP
#define MEPFIT_HANKEL_HPP

#include <algorithm>
#include <optional>
#include <string>

#include <Eigen/Core>

#include <mepfit/errors.hpp>
#include <mepfit/kernels.hpp>
#include <mepfit/model.hpp>
#include <mepfit/types.hpp>

namespace mepfit
{

///
/// The shifted pair of N x Mhat Hankel windows over one sample set:
/// H0(i,j) = h(k0+i+j) and H1(i,j) = h(k0+1+i+j). The first Mhat-1 columns
/// of H1 coincide with the trailing columns of H0.
///
template <typename Real>
struct HankelPair
{
    ComplexMatrix<Real> H0;
    ComplexMatrix<Real> H1;
    Index k0 = 0;

    Index rows() const { return H0.rows(); }
    Index cols() const { return H0.cols(); }
};

template <typename Real>
HankelPair<Real> build_hankel_pair(const SampleSet<Real>& samples, Index n,
                                   Index mhat)
{
    if (mhat < 1 || n < mhat)
    {
        throw SizingError("hankel: need N >= Mhat >= 1");
    }
    if (samples.count() < n + mhat)
    {
        throw SizingError("hankel: " + std::to_string(n + mhat) +
                          " samples required, got " +
                          std::to_string(samples.count()));
    }
    HankelPair<Real> pair;
    pair.k0 = samples.grid.k0;
    pair.H0.resize(n, mhat);
    pair.H1.resize(n, mhat);
    for (Index j = 0; j < mhat; ++j)
    {
        pair.H0.col(j) = samples.values.segment(j, n);
        pair.H1.col(j) = samples.values.segment(j + 1, n);
    }
    return pair;
}

/// First `m` columns of both windows.
template <typename Real>
HankelPair<Real> truncate(const HankelPair<Real>& pair, Index m)
{
    if (m < 1 || m > pair.cols())
    {
        throw SizingError("hankel: truncation width out of range");
    }
    HankelPair<Real> out;
    out.k0 = pair.k0;
    out.H0 = pair.H0.leftCols(m);
    out.H1 = pair.H1.leftCols(m);
    return out;
}

///
/// Threshold rule for counting significant singular values. With exact data
/// the conventional max(rows, cols) * eps * sigma_max cutoff applies; when a
/// noise amplitude is known the floor is 10 * delta * sqrt(rows * cols), and
/// an explicit floor overrides both.
///
template <typename Real>
struct RankPolicy
{
    Real noise_delta = Real(0);
    std::optional<Real> noise_floor;

    Real threshold(Index rows, Index cols, Real sigma_max) const
    {
        if (noise_floor)
        {
            return *noise_floor;
        }
        if (noise_delta > Real(0))
        {
            return Real(10) * noise_delta *
                   std::sqrt(Real(rows) * Real(cols));
        }
        return Real(std::max(rows, cols)) *
               Eigen::NumTraits<Real>::epsilon() * sigma_max;
    }
};

template <typename Real>
Index estimate_order_from_spectrum(const RealVector<Real>& sigma, Index rows,
                                   Index cols, const RankPolicy<Real>& policy)
{
    if (sigma.size() == 0 || sigma(0) == Real(0))
    {
        throw OrderZeroError("estimate_order: zero matrix");
    }
    const Real thr = policy.threshold(rows, cols, sigma(0));
    Index m        = 0;
    while (m < sigma.size() && sigma(m) > thr)
    {
        ++m;
    }
    if (m == 0)
    {
        throw OrderZeroError(
            "estimate_order: all singular values below threshold, signal "
            "indistinguishable from noise");
    }
    return m;
}

/// Numerical rank of `h` under `policy`; this is the model-order estimate
/// for an exact-data Hankel window.
template <typename Real>
Index estimate_order(const ComplexMatrix<Real>& h,
                     const RankPolicy<Real>& policy = {})
{
    return estimate_order_from_spectrum(singular_values(h), h.rows(),
                                        h.cols(), policy);
}

} // namespace mepfit

#endif // MEPFIT_HANKEL_HPP
