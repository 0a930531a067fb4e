#ifndef MEPFIT_TABLE_IO_HPP
#define MEPFIT_TABLE_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <mepfit/experiment.hpp>
#include <mepfit/model.hpp>

namespace mepfit
{

/// Benchmark table as CSV: N, delta, Mhat, e(f), e(c), e(h), estimated M,
/// status. Errors use two-digit scientific notation; runtimes are not
/// serialized so reruns are byte-identical.
std::string table_to_csv(const std::vector<ExperimentResult>& results);

/// Full-precision sidecar with per-row diagnostics.
nlohmann::json table_to_json(const TableSpec& spec, std::uint64_t seed,
                             const std::vector<ExperimentResult>& results);

/// Recovered model with diagnostics as JSON.
nlohmann::json recovered_to_json(const RecoveredModel<double>& recovered);

/// Recovered model as CSV: one line per (term, degree) with the exponent,
/// multiplicity, degree, and coefficient.
std::string recovered_to_csv(const RecoveredModel<double>& recovered);

/// True-versus-recovered nodes of a circle run, four columns re/im each.
std::string nodes_to_csv(const MonomialExponentialModel<double>& truth,
                         const RecoveredModel<double>& recovered);

/// Write <name>.csv and <name>.json under `out_dir` (plus a node scatter
/// file per circle row); returns the paths written.
std::vector<std::filesystem::path>
write_table_outputs(const TableSpec& spec, std::uint64_t seed,
                    const std::vector<ExperimentResult>& results,
                    const std::filesystem::path& out_dir);

/// One complex sample per line, "re,im", full double precision.
void write_samples_csv(const std::filesystem::path& path,
                       const SampleSet<double>& samples);

/// Parse a sample CSV written by `write_samples_csv` (or by hand); the grid
/// starts at k0 with unit step.
SampleSet<double> read_samples_csv(const std::filesystem::path& path,
                                   Index k0);

} // namespace mepfit

#endif // MEPFIT_TABLE_IO_HPP
