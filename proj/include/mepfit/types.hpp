#ifndef MEPFIT_TYPES_HPP
#define MEPFIT_TYPES_HPP

#include <complex>

#include <Eigen/Core>

namespace mepfit
{

using Index = Eigen::Index;

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

} // namespace mepfit

#endif // MEPFIT_TYPES_HPP
