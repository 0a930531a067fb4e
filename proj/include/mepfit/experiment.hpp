#ifndef MEPFIT_EXPERIMENT_HPP
#define MEPFIT_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <mepfit/estimator.hpp>
#include <mepfit/examples.hpp>
#include <mepfit/metrics.hpp>
#include <mepfit/model.hpp>

namespace mepfit
{

///
/// One benchmark run: which signal, how many samples (2N), the noise
/// amplitude, the seed, and the column bound Mhat (absent selects the
/// min(10, N) policy used throughout the benchmark tables).
///
struct ExperimentConfig
{
    ExampleId example = ExampleId::ex1;
    Index n           = 0;
    double delta      = 0.0;
    std::uint64_t seed = 0;
    std::optional<Index> mhat;
    std::optional<double> b;  // evaluation bound override
    Index k0          = 0;
    double cluster_tol = 1e-3;
};

/// One line of a benchmark table.
struct TableRow
{
    Index n            = 0;
    double delta       = 0.0;
    Index mhat_used    = 0;
    double e_f         = 0.0;
    double e_c         = 0.0;
    double e_h         = 0.0;
    bool e_c_applicable = true;
    Index estimated_M  = 0;
    double runtime_seconds = 0.0;
    std::string error;  // failure marker, empty on success
};

///
/// Row result plus everything the JSON sidecar carries: the recovered
/// model, truth, error report, and (for soliton runs) the right-kernel
/// coefficient recovery check.
///
struct ExperimentResult
{
    ExperimentConfig config;
    TableRow row;
    MonomialExponentialModel<double> truth;
    double b = 0.0;
    std::optional<RecoveredModel<double>> recovered;
    std::optional<ErrorReport<double>> report;
    std::optional<ComplexVector<double>> gamma_r;
    std::optional<double> gamma_r_error;
};

Index auto_mhat(Index n);

/// Deterministic per-row RNG stream derived from a base seed (splitmix64).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

ExperimentResult run_experiment(const ExperimentConfig& config);

struct RowSpec
{
    ExampleId example;
    Index n;
    double delta = 0.0;
    std::optional<Index> mhat;
    double cluster_tol = 1e-3;
};

struct TableSpec
{
    std::string name;
    std::string title;
    std::vector<RowSpec> rows;
};

/// All registered benchmark tables, table1 through table12.
const std::vector<TableSpec>& table_presets();

std::optional<TableSpec> find_table_preset(const std::string& name);

/// Run every row of a preset; row i uses the stream mix_seed(seed, i).
std::vector<ExperimentResult> reproduce_table(const TableSpec& spec,
                                              std::uint64_t seed);

} // namespace mepfit

#endif // MEPFIT_EXPERIMENT_HPP
