#include <mepfit/table_io.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include <mepfit/errors.hpp>

namespace mepfit
{

namespace
{

std::string fmt(const char* format, double value)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, value);
    return buf;
}

std::string sci(double value)
{
    return fmt("%.2e", value);
}

std::string full(double value)
{
    return fmt("%.17g", value);
}

nlohmann::json complex_json(const Complex<double>& z)
{
    return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json model_json(const MonomialExponentialModel<double>& model)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : model.terms())
    {
        nlohmann::json coeffs = nlohmann::json::array();
        for (Index s = 0; s < t.multiplicity(); ++s)
        {
            coeffs.push_back(complex_json(t.coefficients(s)));
        }
        terms.push_back({{"exponent", complex_json(t.exponent)},
                         {"zero", complex_json(t.zero())},
                         {"multiplicity", t.multiplicity()},
                         {"coefficients", coeffs}});
    }
    return {{"terms", terms}, {"order", model.order()}};
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out)
    {
        throw IoError("write failed for " + path.string());
    }
}

} // namespace

std::string table_to_csv(const std::vector<ExperimentResult>& results)
{
    std::ostringstream out;
    out << "example,N,delta,Mhat,e_f,e_c,e_h,estimated_M,status\n";
    for (const auto& r : results)
    {
        out << to_string(r.config.example) << ',' << r.row.n << ','
            << sci(r.row.delta) << ',' << r.row.mhat_used << ','
            << sci(r.row.e_f) << ','
            << (r.row.e_c_applicable ? sci(r.row.e_c) : std::string("n/a"))
            << ',' << sci(r.row.e_h) << ',' << r.row.estimated_M << ','
            << (r.row.error.empty() ? "ok" : "failed") << '\n';
    }
    return out.str();
}

nlohmann::json recovered_to_json(const RecoveredModel<double>& recovered)
{
    nlohmann::json eigs = nlohmann::json::array();
    for (Index i = 0; i < recovered.raw_eigenvalues.size(); ++i)
    {
        eigs.push_back(complex_json(recovered.raw_eigenvalues(i)));
    }
    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& cl : recovered.clusters)
    {
        clusters.push_back({{"center", complex_json(cl.center)},
                            {"multiplicity", cl.multiplicity},
                            {"members", cl.members}});
    }
    nlohmann::json spectrum = nlohmann::json::array();
    for (Index i = 0; i < recovered.order_spectrum.size(); ++i)
    {
        spectrum.push_back(recovered.order_spectrum(i));
    }
    return {{"model", model_json(recovered.model)},
            {"estimated_M", recovered.estimated_M},
            {"raw_eigenvalues", eigs},
            {"clusters", clusters},
            {"fit_residual", recovered.fit_residual},
            {"order_spectrum", spectrum}};
}

std::string recovered_to_csv(const RecoveredModel<double>& recovered)
{
    std::ostringstream out;
    out << "term,f_re,f_im,multiplicity,degree,c_re,c_im\n";
    Index term = 0;
    for (const auto& t : recovered.model.terms())
    {
        for (Index s = 0; s < t.multiplicity(); ++s)
        {
            out << term << ',' << full(t.exponent.real()) << ','
                << full(t.exponent.imag()) << ',' << t.multiplicity() << ','
                << s << ',' << full(t.coefficients(s).real()) << ','
                << full(t.coefficients(s).imag()) << '\n';
        }
        ++term;
    }
    return out.str();
}

nlohmann::json table_to_json(const TableSpec& spec, std::uint64_t seed,
                             const std::vector<ExperimentResult>& results)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : results)
    {
        nlohmann::json row = {
            {"example", to_string(r.config.example)},
            {"N", r.row.n},
            {"delta", r.row.delta},
            {"Mhat", r.row.mhat_used},
            {"k0", r.config.k0},
            {"seed", r.config.seed},
            {"cluster_tol", r.config.cluster_tol},
            {"b", r.b},
            {"e_f", r.row.e_f},
            {"e_c", r.row.e_c_applicable ? nlohmann::json(r.row.e_c)
                                         : nlohmann::json("n/a")},
            {"e_h", r.row.e_h},
            {"estimated_M", r.row.estimated_M},
            {"status", r.row.error.empty() ? "ok" : r.row.error}};
        if (r.recovered)
        {
            row["recovered"] = recovered_to_json(*r.recovered);
        }
        if (r.report && !r.report->matching.structural_mismatch)
        {
            row["matching"] = r.report->matching.est_to_true;
        }
        if (r.gamma_r)
        {
            nlohmann::json g = nlohmann::json::array();
            for (Index i = 0; i < r.gamma_r->size(); ++i)
            {
                g.push_back(complex_json((*r.gamma_r)(i)));
            }
            row["gamma_r"] = g;
            if (r.gamma_r_error)
            {
                row["gamma_r_error"] = *r.gamma_r_error;
            }
        }
        rows.push_back(row);
    }
    return {{"table", spec.name},
            {"title", spec.title},
            {"seed", seed},
            {"rows", rows}};
}

std::string nodes_to_csv(const MonomialExponentialModel<double>& truth,
                         const RecoveredModel<double>& recovered)
{
    const TermMatching matching =
        match_parameters(recovered.model, truth);
    std::ostringstream out;
    out << "true_re,true_im,recovered_re,recovered_im\n";
    if (matching.structural_mismatch)
    {
        return out.str();
    }
    for (Index i = 0; i < recovered.model.num_terms(); ++i)
    {
        const auto zt =
            truth.terms()[matching.est_to_true[i]].zero();
        const auto ze = recovered.model.terms()[i].zero();
        out << full(zt.real()) << ',' << full(zt.imag()) << ','
            << full(ze.real()) << ',' << full(ze.imag()) << '\n';
    }
    return out.str();
}

std::vector<std::filesystem::path>
write_table_outputs(const TableSpec& spec, std::uint64_t seed,
                    const std::vector<ExperimentResult>& results,
                    const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;

    const auto csv_path = out_dir / (spec.name + ".csv");
    write_file(csv_path, table_to_csv(results));
    written.push_back(csv_path);

    const auto json_path = out_dir / (spec.name + ".json");
    write_file(json_path, table_to_json(spec, seed, results).dump(2) + "\n");
    written.push_back(json_path);

    for (const auto& r : results)
    {
        const bool circle = r.config.example == ExampleId::ex6_r07 ||
                            r.config.example == ExampleId::ex6_r08 ||
                            r.config.example == ExampleId::ex6_r09;
        if (circle && r.recovered)
        {
            const auto nodes_path =
                out_dir / (spec.name + "_nodes_" +
                           to_string(r.config.example) + ".csv");
            write_file(nodes_path, nodes_to_csv(r.truth, *r.recovered));
            written.push_back(nodes_path);
        }
    }
    return written;
}

void write_samples_csv(const std::filesystem::path& path,
                       const SampleSet<double>& samples)
{
    std::ostringstream out;
    for (Index i = 0; i < samples.values.size(); ++i)
    {
        out << full(samples.values(i).real()) << ','
            << full(samples.values(i).imag()) << '\n';
    }
    write_file(path, out.str());
}

SampleSet<double> read_samples_csv(const std::filesystem::path& path,
                                   Index k0)
{
    std::ifstream in(path);
    if (!in)
    {
        throw IoError("cannot open " + path.string());
    }
    std::vector<Complex<double>> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty() || line[0] == '#')
        {
            continue;
        }
        double re = 0.0, im = 0.0;
        if (std::sscanf(line.c_str(), "%lf , %lf", &re, &im) != 2 &&
            std::sscanf(line.c_str(), "%lf%lf", &re, &im) != 2)
        {
            throw IoError("malformed sample at " + path.string() + ":" +
                          std::to_string(line_no) +
                          " (expected `re,im` per line)");
        }
        values.emplace_back(re, im);
    }
    if (values.size() < 2)
    {
        throw IoError("sample file " + path.string() +
                      " holds fewer than two samples");
    }
    SampleSet<double> samples;
    samples.grid = SampleGrid(k0, static_cast<Index>(values.size()));
    samples.values.resize(static_cast<Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        samples.values(static_cast<Index>(i)) = values[i];
    }
    return samples;
}

} // namespace mepfit
