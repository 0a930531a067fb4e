#include <doctest.h>

#include <algorithm>
#include <random>

#include <mepfit/examples.hpp>
#include <mepfit/metrics.hpp>

#include "oracles.hpp"

using namespace mepfit;
using oracles::C;

namespace
{

MonomialExponentialModel<double> reorder(
    const MonomialExponentialModel<double>& model,
    const std::vector<std::size_t>& order)
{
    std::vector<ModelTerm<double>> terms;
    for (std::size_t j : order)
    {
        terms.push_back(model.terms()[j]);
    }
    return MonomialExponentialModel<double>(terms);
}

} // namespace

TEST_CASE("matching identical models is the identity")
{
    const auto example  = generate_example(ExampleId::ex1);
    const auto matching = match_parameters(example.model, example.model);
    REQUIRE(!matching.structural_mismatch);
    for (Index j = 0; j < example.model.num_terms(); ++j)
    {
        CHECK(matching.est_to_true[j] == j);
    }
}

TEST_CASE("matching recovers a swap")
{
    const auto example = generate_example(ExampleId::ex2);
    const auto swapped = reorder(example.model, {1, 0, 2, 3, 4});
    const auto matching = match_parameters(swapped, example.model);
    REQUIRE(!matching.structural_mismatch);
    CHECK(matching.est_to_true[0] == 1);
    CHECK(matching.est_to_true[1] == 0);
    CHECK(matching.est_to_true[2] == 2);
}

TEST_CASE("matching respects multiplicity groups")
{
    const auto example = generate_example(ExampleId::ex4);
    const auto shuffled = reorder(example.model, {1, 2, 0});
    const auto matching = match_parameters(shuffled, example.model);
    REQUIRE(!matching.structural_mismatch);
    CHECK(matching.est_to_true[0] == 1);
    CHECK(matching.est_to_true[1] == 2);
    CHECK(matching.est_to_true[2] == 0);
}

TEST_CASE("structural mismatch is reported, not thrown")
{
    const auto six  = generate_example(ExampleId::ex1).model;
    const auto five = generate_example(ExampleId::ex2).model;
    const auto count_mismatch = match_parameters(five, six);
    CHECK(count_mismatch.structural_mismatch);

    const auto confluent = generate_example(ExampleId::ex3).model;
    const auto simple    = generate_example(ExampleId::ex2).model;
    const auto mult_mismatch = match_parameters(confluent, simple);
    CHECK(mult_mismatch.structural_mismatch);

    const auto report = compute_error_report(five, six, 50.0);
    CHECK(std::isinf(report.e_f));
    CHECK(std::isinf(report.e_c));
    CHECK(std::isinf(report.e_h));
}

TEST_CASE("matching cost is minimal against brute force")
{
    std::mt19937_64 eng(55);
    for (int trial = 0; trial < 20; ++trial)
    {
        oracles::RandomModelParams params;
        params.max_multiplicity = 1;
        params.max_terms        = 6;
        params.max_order        = 6;
        const auto truth = oracles::random_model(eng, params);
        auto terms       = truth.terms();
        for (auto& t : terms)
        {
            t.exponent += C(1e-4 * (detail::uniform01(eng) - 0.5),
                            1e-4 * (detail::uniform01(eng) - 0.5));
        }
        std::shuffle(terms.begin(), terms.end(), eng);
        const MonomialExponentialModel<double> est(terms);

        const auto matching = match_parameters(est, truth);
        REQUIRE(!matching.structural_mismatch);
        double total = 0.0;
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic> cost(
            est.num_terms(), est.num_terms());
        for (Index i = 0; i < est.num_terms(); ++i)
        {
            total += std::abs(est.terms()[i].zero() -
                              truth.terms()[matching.est_to_true[i]].zero());
            for (Index j = 0; j < est.num_terms(); ++j)
            {
                cost(i, j) =
                    std::abs(est.terms()[i].zero() - truth.terms()[j].zero());
            }
        }
        CHECK(total <=
              oracles::brute_force_total_cost(cost) * (1.0 + 1e-12) + 1e-15);
    }
}

TEST_CASE("error_f of a perfect and a perturbed estimate")
{
    const auto example  = generate_example(ExampleId::ex1);
    const auto matching = match_parameters(example.model, example.model);
    CHECK(error_f(example.model, example.model, matching) == 0.0);

    MonomialExponentialModel<double> truth({ModelTerm<double>{
        C(2.0), (ComplexVector<double>(1) << C(1.0)).finished()}});
    MonomialExponentialModel<double> est({ModelTerm<double>{
        C(2.002), (ComplexVector<double>(1) << C(1.0)).finished()}});
    const auto m = match_parameters(est, truth);
    CHECK(error_f(est, truth, m) == doctest::Approx(1e-3).epsilon(1e-9));
}

TEST_CASE("error_f reconciles 2 pi i branch offsets")
{
    MonomialExponentialModel<double> truth({ModelTerm<double>{
        C(0.3, 0.4), (ComplexVector<double>(1) << C(1.0)).finished()}});
    MonomialExponentialModel<double> est({ModelTerm<double>{
        C(0.3, 0.4 - 2.0 * EIGEN_PI),
        (ComplexVector<double>(1) << C(1.0)).finished()}});
    const auto m = match_parameters(est, truth);
    CHECK(error_f(est, truth, m) <= 1e-14);
}

TEST_CASE("error_c direct values and the undefined case")
{
    MonomialExponentialModel<double> truth({ModelTerm<double>{
        C(1.0), (ComplexVector<double>(1) << C(4.0)).finished()}});
    MonomialExponentialModel<double> est({ModelTerm<double>{
        C(1.0), (ComplexVector<double>(1) << C(5.0)).finished()}});
    const auto m = match_parameters(est, truth);
    CHECK(*error_c(est, truth, m) == doctest::Approx(0.25));

    MonomialExponentialModel<double> zero_truth({ModelTerm<double>{
        C(1.0), (ComplexVector<double>(1) << C(0.0)).finished()}});
    const auto m2 = match_parameters(est, zero_truth);
    CHECK(!error_c(est, zero_truth, m2).has_value());
    const auto report = compute_error_report(est, zero_truth, 10.0);
    CHECK(!report.e_c_applicable);
}

TEST_CASE("error_h of scaled coefficients is the scale offset")
{
    const auto example = generate_example(ExampleId::ex1);
    auto terms         = example.model.terms();
    for (auto& t : terms)
    {
        t.coefficients *= 1.01;
    }
    const MonomialExponentialModel<double> scaled(terms);
    CHECK(error_h(scaled, example.model, 50.0) ==
          doctest::Approx(0.01).epsilon(1e-10));
    CHECK(error_h(example.model, example.model, 50.0) == 0.0);
}

TEST_CASE("error_h is invariant under term permutation")
{
    const auto example  = generate_example(ExampleId::ex2);
    const auto shuffled = reorder(example.model, {4, 2, 0, 1, 3});
    auto terms          = example.model.terms();
    terms[0].coefficients *= 1.003;
    const MonomialExponentialModel<double> bumped(terms);
    const double a = error_h(bumped, example.model, 50.0);
    const double b = error_h(bumped, shuffled, 50.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("all errors vanish on identical models")
{
    for (ExampleId id : {ExampleId::ex1, ExampleId::ex3, ExampleId::ex5,
                         ExampleId::soliton_b})
    {
        const auto example = generate_example(id);
        const auto report =
            compute_error_report(example.model, example.model, example.b);
        CHECK(report.e_f == 0.0);
        CHECK(report.e_c == 0.0);
        CHECK(report.e_h == 0.0);
    }
}
