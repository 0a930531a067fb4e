#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <mepfit/errors.hpp>
#include <mepfit/estimator.hpp>
#include <mepfit/examples.hpp>
#include <mepfit/experiment.hpp>
#include <mepfit/table_io.hpp>

namespace
{

constexpr int kExitOk         = 0;
constexpr int kExitEstimation = 2;
constexpr int kExitIo         = 3;

struct EstimateArgs
{
    std::string input;
    std::string out;
    std::string format      = "json";
    std::string mhat        = "auto";
    std::int64_t k0         = 0;
    double cluster_tol      = 1e-3;
    double delta            = 0.0;
};

struct GenerateArgs
{
    std::string example;
    std::string out;
    std::int64_t n     = 0;
    std::int64_t k0    = 0;
    double delta       = 0.0;
    std::uint64_t seed = 0;
};

struct ReproduceArgs
{
    std::vector<std::string> tables;
    std::string out_dir = ".";
    std::uint64_t seed  = 7;
};

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
    {
        throw mepfit::IoError("cannot write " + path.string());
    }
}

int run_estimate(const EstimateArgs& args)
{
    mepfit::SampleSet<double> samples =
        mepfit::read_samples_csv(args.input, args.k0);
    if (samples.count() % 2 != 0)
    {
        throw mepfit::IoError("sample file must hold 2N samples, got " +
                              std::to_string(samples.count()));
    }
    if (args.delta < 0.0)
    {
        throw mepfit::IoError("--delta must be nonnegative");
    }
    samples.noise_sigma = args.delta;
    const mepfit::Index n = samples.count() / 2;
    mepfit::Index mhat    = mepfit::auto_mhat(n);
    if (args.mhat != "auto")
    {
        try
        {
            mhat = static_cast<mepfit::Index>(std::stoll(args.mhat));
        }
        catch (const std::exception&)
        {
            throw mepfit::IoError("--mhat expects an integer or `auto`");
        }
    }
    mepfit::EstimatorOptions<double> opts;
    opts.cluster_tol = args.cluster_tol;

    mepfit::RecoveredModel<double> recovered =
        mepfit::estimate(samples, mhat, opts);

    std::string text;
    if (args.format == "json")
    {
        text = mepfit::recovered_to_json(recovered).dump(2) + "\n";
    }
    else if (args.format == "csv")
    {
        text = mepfit::recovered_to_csv(recovered);
    }
    else
    {
        throw mepfit::IoError("--format expects `csv` or `json`");
    }
    write_text(args.out, text);
    std::cout << "estimated order " << recovered.estimated_M << " ("
              << recovered.model.num_terms() << " terms), residual "
              << recovered.fit_residual << ", wrote " << args.out << "\n";
    return kExitOk;
}

int run_generate(const GenerateArgs& args)
{
    const auto id = mepfit::parse_example_id(args.example);
    if (!id || *id == mepfit::ExampleId::custom)
    {
        throw mepfit::IoError("unknown example id `" + args.example + "`");
    }
    if (args.n < 2)
    {
        throw mepfit::IoError("--n must be at least 2");
    }
    const mepfit::Example example = mepfit::generate_example(*id, args.seed);
    mepfit::SampleSet<double> samples = mepfit::sample(
        example.model, mepfit::SampleGrid(args.k0, 2 * args.n));
    if (args.delta > 0.0)
    {
        samples = mepfit::add_noise(samples, args.delta, args.seed);
    }
    mepfit::write_samples_csv(args.out, samples);
    std::cout << "wrote " << samples.count() << " samples of "
              << mepfit::to_string(*id) << " to " << args.out << "\n";
    return kExitOk;
}

int run_reproduce(const ReproduceArgs& args)
{
    std::vector<mepfit::TableSpec> specs;
    for (const auto& name : args.tables)
    {
        if (name == "all")
        {
            specs = mepfit::table_presets();
            break;
        }
        const auto spec = mepfit::find_table_preset(name);
        if (!spec)
        {
            throw mepfit::IoError("unknown table `" + name +
                                  "` (expected table1..table12 or all)");
        }
        specs.push_back(*spec);
    }
    for (const auto& spec : specs)
    {
        const auto results = mepfit::reproduce_table(spec, args.seed);
        const auto written = mepfit::write_table_outputs(
            spec, args.seed, results, args.out_dir);
        std::cout << spec.name << ": " << results.size() << " rows";
        for (const auto& p : written)
        {
            std::cout << " " << p.filename().string();
        }
        std::cout << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Matrix-pencil parameter estimation for "
                 "monomial-exponential sums"};
    app.require_subcommand(1);
    app.set_config("--config");

    EstimateArgs est;
    auto* cmd_est = app.add_subcommand(
        "estimate", "Recover a model from a CSV of 2N complex samples");
    cmd_est->fallthrough();
    cmd_est->add_option("--input", est.input, "sample CSV, one `re,im` per line")
        ->required();
    cmd_est->add_option("--k0", est.k0, "start index of the sample grid");
    cmd_est->add_option("--mhat", est.mhat,
                        "column bound for the Hankel window, or `auto`");
    cmd_est->add_option("--cluster-tol", est.cluster_tol,
                        "relative eigenvalue clustering radius");
    cmd_est->add_option("--delta", est.delta,
                        "known noise amplitude of the samples");
    cmd_est->add_option("--out", est.out, "output path")->required();
    cmd_est->add_option("--format", est.format, "csv or json");

    GenerateArgs gen;
    auto* cmd_gen = app.add_subcommand(
        "generate", "Sample a benchmark model onto a CSV");
    cmd_gen->fallthrough();
    cmd_gen->add_option("example", gen.example, "example id (ex1..soliton_b)")
        ->required();
    cmd_gen->add_option("--n", gen.n, "half sample count N (2N samples)")
        ->required();
    cmd_gen->add_option("--delta", gen.delta, "noise amplitude");
    cmd_gen->add_option("--seed", gen.seed, "noise / coefficient seed");
    cmd_gen->add_option("--k0", gen.k0, "start index of the sample grid");
    cmd_gen->add_option("--out", gen.out, "output path")->required();

    ReproduceArgs rep;
    auto* cmd_rep = app.add_subcommand(
        "reproduce", "Rerun benchmark tables and write CSV/JSON outputs");
    cmd_rep->fallthrough();
    cmd_rep->add_option("tables", rep.tables, "table1..table12 or all")
        ->required();
    cmd_rep->add_option("--seed", rep.seed, "base seed for noise streams");
    cmd_rep->add_option("--out-dir", rep.out_dir, "output directory");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kExitIo;
    }

    try
    {
        if (cmd_est->parsed())
        {
            return run_estimate(est);
        }
        if (cmd_gen->parsed())
        {
            return run_generate(gen);
        }
        return run_reproduce(rep);
    }
    catch (const mepfit::IoError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    catch (const mepfit::Error& e)
    {
        std::cerr << "estimation failed: " << e.what() << "\n";
        return kExitEstimation;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
