#ifndef MEPFIT_ERRORS_HPP
#define MEPFIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mepfit
{

/// Base class for all recoverable failures raised by the library. The
/// concrete type identifies the pipeline stage that failed.
class Error : public std::runtime_error
{
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A model violates its construction invariants (zero or duplicate zeros,
/// empty terms, coefficient count mismatch).
class InvalidModelError : public Error
{
public:
    using Error::Error;
};

/// Not enough samples (or an inconsistent grid) for the requested operation.
class SizingError : public Error
{
public:
    using Error::Error;
};

/// Every singular value fell below the rank threshold: the data are
/// indistinguishable from noise.
class OrderZeroError : public Error
{
public:
    using Error::Error;
};

/// A dense kernel failed to converge within its iteration cap.
class KernelFailureError : public Error
{
public:
    using Error::Error;
};

/// The stacked matrix [A; B] of a GSVD request is column-rank deficient.
class DegeneratePencilError : public Error
{
public:
    using Error::Error;
};

/// A diagonal entry of the Sigma factor to be inverted fell below the
/// configured floor.
class SingularPencilError : public Error
{
public:
    using Error::Error;
};

/// Least-squares matrix is numerically rank deficient.
class IllPosedSystemError : public Error
{
public:
    using Error::Error;
};

/// An eigenvalue cluster center is too close to zero for a logarithm.
class DegenerateZeroError : public Error
{
public:
    using Error::Error;
};

/// File could not be read, written, or parsed.
class IoError : public Error
{
public:
    using Error::Error;
};

} // namespace mepfit

#endif // MEPFIT_ERRORS_HPP
