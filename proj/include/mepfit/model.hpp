#ifndef MEPFIT_MODEL_HPP
#define MEPFIT_MODEL_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include <mepfit/errors.hpp>
#include <mepfit/types.hpp>

namespace mepfit
{

///
/// One term of a monomial-exponential sum,
///
///     x^0..x^{m-1} multiplied by exp(f x),
///
/// with m complex coefficients ordered by ascending monomial degree.
///
template <typename Real>
struct ModelTerm
{
    Complex<Real> exponent;              // f, with derived zero z = exp(f)
    ComplexVector<Real> coefficients;    // c_0 .. c_{m-1}

    Index multiplicity() const { return coefficients.size(); }
    Complex<Real> zero() const { return std::exp(exponent); }
};

///
/// A sum h(x) = sum_j sum_s c_{js} x^s exp(f_j x).
///
/// Construction enforces: every exponent nonzero, derived zeros pairwise
/// distinct, every term carrying at least one coefficient. The exponents are
/// canonical; zeros are always derived.
///
template <typename Real>
class MonomialExponentialModel
{
public:
    using Term = ModelTerm<Real>;

    MonomialExponentialModel() = default;

    explicit MonomialExponentialModel(std::vector<Term> terms)
        : m_terms(std::move(terms))
    {
        if (m_terms.empty())
        {
            throw InvalidModelError("model: at least one term required");
        }
        for (std::size_t j = 0; j < m_terms.size(); ++j)
        {
            if (m_terms[j].coefficients.size() == 0)
            {
                throw InvalidModelError("model: empty coefficient list");
            }
            if (m_terms[j].exponent == Complex<Real>(0))
            {
                throw InvalidModelError("model: zero exponent not allowed");
            }
            for (std::size_t i = 0; i < j; ++i)
            {
                if (m_terms[i].zero() == m_terms[j].zero())
                {
                    throw InvalidModelError("model: duplicate zeros");
                }
            }
        }
    }

    const std::vector<Term>& terms() const { return m_terms; }

    Index num_terms() const { return static_cast<Index>(m_terms.size()); }

    /// Total order M = sum of multiplicities.
    Index order() const
    {
        Index m = 0;
        for (const auto& t : m_terms)
        {
            m += t.multiplicity();
        }
        return m;
    }

private:
    std::vector<Term> m_terms;
};

///
/// Equispaced integer sampling grid k0, k0+1, ..., k0+count-1 (unit step).
///
struct SampleGrid
{
    Index k0    = 0;
    Index count = 0;

    SampleGrid() = default;

    SampleGrid(Index k0_, Index count_) : k0(k0_), count(count_)
    {
        if (k0 < 0)
        {
            throw SizingError("grid: k0 must be nonnegative");
        }
        if (count < 2)
        {
            throw SizingError("grid: at least two samples required");
        }
    }
};

///
/// Samples of a monomial-exponential sum on an integer grid, together with
/// the noise amplitude (0 for exact data) and the seed that produced it.
///
template <typename Real>
struct SampleSet
{
    SampleGrid grid;
    ComplexVector<Real> values;
    Real noise_sigma = Real(0);
    std::optional<std::uint64_t> seed;

    Index count() const { return grid.count; }
};

///
/// Evaluate h at a complex point. Monomial powers x^s use iterated
/// multiplication with the convention 0^0 == 1; the exponential part is
/// computed as exp(x f), never through a complex power of the zero, so a
/// single branch is used for non-integer x.
///
template <typename Real>
Complex<Real> evaluate(const MonomialExponentialModel<Real>& model,
                       const Complex<Real>& x)
{
    Complex<Real> acc(0);
    for (const auto& term : model.terms())
    {
        Complex<Real> poly(0);
        Complex<Real> xpow(1);
        for (Index s = 0; s < term.multiplicity(); ++s)
        {
            poly += term.coefficients(s) * xpow;
            xpow *= x;
        }
        acc += poly * std::exp(x * term.exponent);
    }
    return acc;
}

/// Evaluate h on every node of `grid`. The result carries noise_sigma = 0.
template <typename Real>
SampleSet<Real> sample(const MonomialExponentialModel<Real>& model,
                       const SampleGrid& grid)
{
    SampleSet<Real> out;
    out.grid = grid;
    out.values.resize(grid.count);
    for (Index i = 0; i < grid.count; ++i)
    {
        out.values(i) =
            evaluate(model, Complex<Real>(Real(grid.k0 + i), Real(0)));
    }
    return out;
}

namespace detail
{

/// Uniform double in [0, 1) from the top 53 bits of the engine output, so
/// streams are reproducible independent of the standard library's
/// distribution implementation.
inline double uniform01(std::mt19937_64& eng)
{
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

} // namespace detail

///
/// Perturb samples by delta * e_k where e_k = u + i v with u, v independent
/// uniform draws on [0, 1). Deterministic for a fixed seed; delta = 0
/// returns the input values unchanged.
///
template <typename Real>
SampleSet<Real> add_noise(const SampleSet<Real>& samples, Real delta,
                          std::uint64_t seed)
{
    if (delta < Real(0))
    {
        throw SizingError("add_noise: negative noise amplitude");
    }
    SampleSet<Real> out = samples;
    out.noise_sigma     = delta;
    out.seed            = seed;
    if (delta == Real(0))
    {
        return out;
    }
    std::mt19937_64 eng(seed);
    for (Index i = 0; i < out.values.size(); ++i)
    {
        const Real u = static_cast<Real>(detail::uniform01(eng));
        const Real v = static_cast<Real>(detail::uniform01(eng));
        out.values(i) += delta * Complex<Real>(u, v);
    }
    return out;
}

///
/// Build a model from zeros with multiplicities and a flat coefficient list
/// (term-major, ascending degree). Exponents are the principal logarithms of
/// the zeros; zero or duplicate z are rejected.
///
template <typename Real>
MonomialExponentialModel<Real>
from_zeros(const std::vector<std::pair<Complex<Real>, Index>>& zeros,
           const ComplexVector<Real>& coefficients)
{
    Index total = 0;
    for (std::size_t j = 0; j < zeros.size(); ++j)
    {
        if (zeros[j].first == Complex<Real>(0))
        {
            throw InvalidModelError("from_zeros: zero is not admissible");
        }
        if (zeros[j].second < 1)
        {
            throw InvalidModelError("from_zeros: multiplicity must be >= 1");
        }
        for (std::size_t i = 0; i < j; ++i)
        {
            if (zeros[i].first == zeros[j].first)
            {
                throw InvalidModelError("from_zeros: duplicate zeros");
            }
        }
        total += zeros[j].second;
    }
    if (total != coefficients.size())
    {
        throw InvalidModelError("from_zeros: coefficient count mismatch");
    }
    std::vector<ModelTerm<Real>> terms;
    terms.reserve(zeros.size());
    Index offset = 0;
    for (const auto& [z, m] : zeros)
    {
        ModelTerm<Real> t;
        t.exponent     = std::log(z);
        t.coefficients = coefficients.segment(offset, m);
        offset += m;
        terms.push_back(std::move(t));
    }
    return MonomialExponentialModel<Real>(std::move(terms));
}

} // namespace mepfit

#endif // MEPFIT_MODEL_HPP
