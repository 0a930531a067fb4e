#ifndef MEPFIT_EXAMPLES_HPP
#define MEPFIT_EXAMPLES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <mepfit/model.hpp>
#include <mepfit/types.hpp>

namespace mepfit
{

/// Benchmark signals: six published test sums plus the two reflectionless
/// multisoliton kernels.
enum class ExampleId
{
    ex1,
    ex2,
    ex3,
    ex4,
    ex5,
    ex6_r07,
    ex6_r08,
    ex6_r09,
    soliton_a,
    soliton_b,
    custom
};

std::optional<ExampleId> parse_example_id(const std::string& name);
std::string to_string(ExampleId id);

struct Example
{
    MonomialExponentialModel<double> model;
    double b;  // evaluation-domain bound for the h-error grid
};

/// Ground-truth model and domain bound for a benchmark id. The seed feeds
/// only the randomized coefficients of the circle examples.
Example generate_example(ExampleId id, std::uint64_t seed = 0);

/// Bound-state data of a soliton case: exponents a_j with multiplicities
/// (real parts positive) and the flat left-kernel coefficient vector.
struct SolitonCase
{
    std::vector<std::pair<Complex<double>, Index>> exponents;
    ComplexVector<double> gamma;
};

SolitonCase soliton_case(ExampleId id);

} // namespace mepfit

#endif // MEPFIT_EXAMPLES_HPP
