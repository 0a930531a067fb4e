#ifndef MEPFIT_MARCHENKO_HPP
#define MEPFIT_MARCHENKO_HPP

#include <utility>
#include <vector>

#include <Eigen/Core>

#include <mepfit/errors.hpp>
#include <mepfit/kernels.hpp>
#include <mepfit/types.hpp>

namespace mepfit
{

///
/// Basis matrix for the right reflectionless kernel
///
///     Omega_r(x) = sum_j exp(a_j x) sum_s (Gamma_r)_{js} x^s / s!
///
/// evaluated at integer nodes (negative on the kernel's natural domain):
/// one column per (j, s) with entries exp(a_j k) k^s / s!.
///
template <typename Real>
ComplexMatrix<Real> marchenko_right_basis(
    const std::vector<std::pair<Complex<Real>, Index>>& exponents,
    const std::vector<long long>& nodes)
{
    Index m = 0;
    for (const auto& [a, mult] : exponents)
    {
        if (mult < 1)
        {
            throw SizingError("marchenko: multiplicity must be >= 1");
        }
        m += mult;
    }
    const Index rows = static_cast<Index>(nodes.size());
    if (rows < m)
    {
        throw SizingError("marchenko: fewer nodes than unknowns");
    }
    ComplexMatrix<Real> basis(rows, m);
    for (Index r = 0; r < rows; ++r)
    {
        const Real x = static_cast<Real>(nodes[static_cast<std::size_t>(r)]);
        Index col    = 0;
        for (const auto& [a, mult] : exponents)
        {
            const Complex<Real> ex = std::exp(a * x);
            Real monomial          = Real(1);  // x^0 / 0!, also at x == 0
            Real factorial         = Real(1);
            for (Index s = 0; s < mult; ++s)
            {
                basis(r, col++) = ex * (monomial / factorial);
                monomial *= x;
                factorial *= Real(s + 1);
            }
        }
    }
    return basis;
}

/// Evaluate Omega_r with given coefficients at the nodes.
template <typename Real>
ComplexVector<Real> sample_omega_r(
    const std::vector<std::pair<Complex<Real>, Index>>& exponents,
    const ComplexVector<Real>& gamma_r, const std::vector<long long>& nodes)
{
    return marchenko_right_basis(exponents, nodes) * gamma_r;
}

///
/// Recover the (Gamma_r)_{js} coefficients of the right kernel by a
/// least-squares solve, given the exponents a_j with multiplicities (from a
/// prior left-kernel estimate) and Omega_r sampled at negative integer
/// nodes. Coefficients are returned term-major with ascending degree.
///
template <typename Real>
ComplexVector<Real> recover_gamma_r(
    const std::vector<std::pair<Complex<Real>, Index>>& exponents,
    const ComplexVector<Real>& omega_r_values,
    const std::vector<long long>& nodes)
{
    if (omega_r_values.size() != static_cast<Index>(nodes.size()))
    {
        throw SizingError("marchenko: node/value count mismatch");
    }
    return lstsq(marchenko_right_basis(exponents, nodes), omega_r_values);
}

} // namespace mepfit

#endif // MEPFIT_MARCHENKO_HPP
