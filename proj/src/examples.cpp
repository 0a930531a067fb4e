#include <mepfit/examples.hpp>

#include <cmath>
#include <random>

#include <mepfit/errors.hpp>

namespace mepfit
{

namespace
{

using C = Complex<double>;

MonomialExponentialModel<double>
model_from_zero_list(const std::vector<C>& zeros,
                     const std::vector<Index>& mults,
                     const std::vector<C>& coeffs)
{
    std::vector<std::pair<C, Index>> zm;
    zm.reserve(zeros.size());
    for (std::size_t j = 0; j < zeros.size(); ++j)
    {
        zm.emplace_back(zeros[j], mults[j]);
    }
    ComplexVector<double> c(static_cast<Index>(coeffs.size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
    {
        c(static_cast<Index>(i)) = coeffs[i];
    }
    return from_zeros(zm, c);
}

MonomialExponentialModel<double>
model_from_exponents(const std::vector<C>& exponents,
                     const std::vector<Index>& mults,
                     const std::vector<C>& coeffs)
{
    std::vector<ModelTerm<double>> terms;
    std::size_t offset = 0;
    for (std::size_t j = 0; j < exponents.size(); ++j)
    {
        ModelTerm<double> t;
        t.exponent = exponents[j];
        t.coefficients.resize(mults[j]);
        for (Index s = 0; s < mults[j]; ++s)
        {
            t.coefficients(s) = coeffs[offset++];
        }
        terms.push_back(std::move(t));
    }
    return MonomialExponentialModel<double>(std::move(terms));
}

// Zeros shared by the six-term example and its multiple-zero variant.
const std::vector<C> kSixZeros = {
    {0.9856, -0.1628}, {0.9856, 0.1628}, {0.8976, -0.4305},
    {0.8976, 0.4305},  {0.8127, -0.5690}, {0.8127, 0.5690}};

// Damped-oscillation exponents; the 2e-5 scale puts the zeros just inside
// the unit circle.
std::vector<C> signal_exponents()
{
    const double s      = 2e-5;
    const double two_pi = 2.0 * EIGEN_PI;
    return {s * C(-208.0, -two_pi * 1379.0), s * C(-256.0, -two_pi * 685.0),
            s * C(-197.0, -two_pi * 271.0), s * C(-117.0, two_pi * 353.0),
            s * C(-808.0, two_pi * 478.0)};
}

std::vector<C> signal_coefficients()
{
    const C phase = std::exp(C(0.0, 15.0));
    return {phase * 3.1, phase * 9.9, phase * 6.0, phase * 2.8, phase * 17.0};
}

Example circle_example(double radius, std::uint64_t seed)
{
    constexpr Index kNodes = 40;
    std::mt19937_64 eng(seed);
    std::vector<C> zeros;
    std::vector<Index> mults(kNodes, 1);
    std::vector<C> coeffs;
    zeros.reserve(kNodes);
    coeffs.reserve(kNodes);
    for (Index j = 0; j < kNodes; ++j)
    {
        const double angle = 2.0 * EIGEN_PI * static_cast<double>(j) /
                             static_cast<double>(kNodes);
        zeros.push_back(radius * std::exp(C(0.0, angle)));
        coeffs.push_back(C(detail::uniform01(eng), 0.0));
    }
    return Example{model_from_zero_list(zeros, mults, coeffs), 50.0};
}

MonomialExponentialModel<double> soliton_model(const SolitonCase& sc)
{
    std::vector<C> exps;
    std::vector<Index> mults;
    std::vector<C> coeffs;
    Index offset = 0;
    for (const auto& [a, m] : sc.exponents)
    {
        exps.push_back(-a);
        mults.push_back(m);
        double factorial = 1.0;
        for (Index s = 0; s < m; ++s)
        {
            if (s > 0)
            {
                factorial *= static_cast<double>(s);
            }
            coeffs.push_back(sc.gamma(offset + s) / factorial);
        }
        offset += m;
    }
    return model_from_exponents(exps, mults, coeffs);
}

} // namespace

std::optional<ExampleId> parse_example_id(const std::string& name)
{
    if (name == "ex1") return ExampleId::ex1;
    if (name == "ex2") return ExampleId::ex2;
    if (name == "ex3") return ExampleId::ex3;
    if (name == "ex4") return ExampleId::ex4;
    if (name == "ex5") return ExampleId::ex5;
    if (name == "ex6_r07") return ExampleId::ex6_r07;
    if (name == "ex6_r08") return ExampleId::ex6_r08;
    if (name == "ex6_r09") return ExampleId::ex6_r09;
    if (name == "soliton_a") return ExampleId::soliton_a;
    if (name == "soliton_b") return ExampleId::soliton_b;
    if (name == "custom") return ExampleId::custom;
    return std::nullopt;
}

std::string to_string(ExampleId id)
{
    switch (id)
    {
    case ExampleId::ex1: return "ex1";
    case ExampleId::ex2: return "ex2";
    case ExampleId::ex3: return "ex3";
    case ExampleId::ex4: return "ex4";
    case ExampleId::ex5: return "ex5";
    case ExampleId::ex6_r07: return "ex6_r07";
    case ExampleId::ex6_r08: return "ex6_r08";
    case ExampleId::ex6_r09: return "ex6_r09";
    case ExampleId::soliton_a: return "soliton_a";
    case ExampleId::soliton_b: return "soliton_b";
    case ExampleId::custom: return "custom";
    }
    return "custom";
}

SolitonCase soliton_case(ExampleId id)
{
    SolitonCase sc;
    if (id == ExampleId::soliton_a)
    {
        sc.exponents = {{0.1 * C(1.0, 7.0), 1},
                        {0.1 * C(1.2, 3.0), 1},
                        {0.1 * C(1.4, 6.0), 1},
                        {0.1 * C(3.0, 1.6), 1}};
    }
    else if (id == ExampleId::soliton_b)
    {
        sc.exponents = {{0.1 * C(1.0, 7.0), 2},
                        {0.1 * C(1.4, 6.0), 1},
                        {0.1 * C(3.0, 1.6), 1}};
    }
    else
    {
        throw SizingError("soliton_case: not a soliton id");
    }
    sc.gamma.resize(4);
    sc.gamma << C(1, 1), C(2, 1), C(3, 1), C(4, 1);
    return sc;
}

Example generate_example(ExampleId id, std::uint64_t seed)
{
    switch (id)
    {
    case ExampleId::ex1:
        return Example{model_from_zero_list(
                           kSixZeros, std::vector<Index>(6, 1),
                           {C(1), C(2), C(3), C(4), C(5), C(6)}),
                       50.0};
    case ExampleId::ex2:
        return Example{model_from_exponents(signal_exponents(),
                                            std::vector<Index>(5, 1),
                                            signal_coefficients()),
                       50.0};
    case ExampleId::ex3:
    {
        const auto f = signal_exponents();
        return Example{model_from_exponents({f[0], f[2], f[3], f[4]},
                                            {2, 1, 1, 1},
                                            signal_coefficients()),
                       50.0};
    }
    case ExampleId::ex4:
    {
        const auto f = signal_exponents();
        return Example{model_from_exponents({f[0], f[1], f[2]}, {2, 2, 1},
                                            signal_coefficients()),
                       50.0};
    }
    case ExampleId::ex5:
        return Example{model_from_zero_list(
                           {kSixZeros[0], kSixZeros[2], kSixZeros[4],
                            kSixZeros[5]},
                           {2, 2, 1, 1},
                           {C(1), C(2), C(3), C(4), C(5), C(6)}),
                       50.0};
    case ExampleId::ex6_r07: return circle_example(0.7, seed);
    case ExampleId::ex6_r08: return circle_example(0.8, seed);
    case ExampleId::ex6_r09: return circle_example(0.9, seed);
    case ExampleId::soliton_a:
    case ExampleId::soliton_b:
        return Example{soliton_model(soliton_case(id)), 5.0};
    case ExampleId::custom:
        break;
    }
    throw SizingError("generate_example: no generator for this id");
}

} // namespace mepfit
