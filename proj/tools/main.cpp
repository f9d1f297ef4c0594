#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hilberg/codes.hpp"
#include "hilberg/errors.hpp"
#include "hilberg/experiment.hpp"
#include "hilberg/process.hpp"
#include "hilberg/schedule.hpp"

namespace {

hilberg::Schedule load_schedule(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hilberg::resource_error("cannot open '" + path + "' for reading");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return hilberg::Schedule::from_json_string(buffer.str());
}

hilberg::ProcessSpec make_process(const std::string& name, std::optional<double> beta,
                                  const std::string& schedule_path) {
    using hilberg::parameter_error;
    if (name == "mixture") return hilberg::ProcessSpec::mixture_bernoulli();
    if (name == "santa-fe") {
        if (!beta) throw parameter_error("--beta is required for process santa-fe");
        return hilberg::ProcessSpec::santa_fe(*beta);
    }
    if (name == "modified-santa-fe") {
        if (!beta) throw parameter_error("--beta is required for process modified-santa-fe");
        if (schedule_path.empty())
            throw parameter_error("--schedule is required for process modified-santa-fe");
        return hilberg::ProcessSpec::modified_santa_fe(*beta, load_schedule(schedule_path));
    }
    throw parameter_error("unknown process '" + name +
                          "'; expected mixture, santa-fe, or modified-santa-fe");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate block mutual information and estimate its growth exponents"};
    app.require_subcommand(1);

    std::string process_name = "mixture";
    std::optional<double> beta;
    std::string schedule_path;
    std::uint32_t k_min = 4, k_max = 12;
    std::uint64_t replicates = 100;
    std::uint64_t seed = 0;
    std::string codec_flag;
    bool attach_analytic = false;
    double tol = 1e-8;
    std::uint32_t threads = 0;
    std::string out_path = "-";

    CLI::App* sim = app.add_subcommand(
        "simulate", "Sample two-sided windows and write a pointwise MI curve (CSV)");
    sim->add_option("--process", process_name,
                    "mixture, santa-fe, or modified-santa-fe")->capture_default_str();
    sim->add_option("--beta", beta, "Zipf tail exponent in (0,1), Santa Fe kinds only");
    sim->add_option("--schedule", schedule_path,
                    "Schedule JSON file, modified-santa-fe only");
    sim->add_option("--k-min", k_min, "Smallest half-length exponent")->capture_default_str();
    sim->add_option("--k-max", k_max, "Largest half-length exponent")->capture_default_str();
    sim->add_option("--replicates", replicates, "Independent windows per run")
        ->capture_default_str();
    sim->add_option("--seed", seed, "Master RNG seed")->capture_default_str();
    sim->add_option("--codec", codec_flag,
                    "Replace exact MI with a code-length difference: lz78 or shannon-fano");
    sim->add_flag("--analytic", attach_analytic,
                  "Also fill the analytic_mi column where a closed form exists");
    sim->add_option("--tol", tol, "Absolute tolerance for analytic series")
        ->capture_default_str();
    sim->add_option("--threads", threads, "Replicate workers, 0 = hardware default")
        ->capture_default_str();
    sim->add_option("--out", out_path, "Output CSV path, - for stdout")->capture_default_str();

    std::string an_process = "mixture";
    std::optional<double> an_beta;
    std::string an_schedule_path;
    std::uint32_t an_k_min = 4, an_k_max = 12;
    double an_tol = 1e-8;
    std::uint64_t an_seed = 0;
    std::string an_out = "-";

    CLI::App* an = app.add_subcommand(
        "analytic", "Evaluate the expected MI curve from closed forms (CSV)");
    an->add_option("--process", an_process,
                   "mixture, santa-fe, or modified-santa-fe")->capture_default_str();
    an->add_option("--beta", an_beta, "Zipf tail exponent in (0,1), Santa Fe kinds only");
    an->add_option("--schedule", an_schedule_path,
                   "Schedule JSON file, modified-santa-fe only");
    an->add_option("--k-min", an_k_min, "Smallest half-length exponent")->capture_default_str();
    an->add_option("--k-max", an_k_max, "Largest half-length exponent")->capture_default_str();
    an->add_option("--tol", an_tol, "Absolute tolerance for the series tail")
        ->capture_default_str();
    an->add_option("--seed", an_seed, "Accepted for interface uniformity; unused");
    an->add_option("--out", an_out, "Output CSV path, - for stdout")->capture_default_str();

    std::string est_in = "-";
    std::optional<std::uint32_t> est_k0;
    std::uint64_t est_seed = 0;
    std::string est_out = "-";

    CLI::App* est = app.add_subcommand(
        "estimate", "Read a curve CSV and write an exponent report (JSON)");
    est->add_option("--in", est_in, "Input CSV path, - for stdin")->capture_default_str();
    est->add_option("--k0", est_k0,
                    "First exponent of the tail window; default: upper half of the grid");
    est->add_option("--seed", est_seed, "Accepted for interface uniformity; unused");
    est->add_option("--out", est_out, "Output JSON path, - for stdout")->capture_default_str();

    std::string cm_in;
    std::string cm_codec = "lz78";
    std::uint32_t cm_k_min = 4, cm_k_max = 10;
    std::uint64_t cm_seed = 0;
    std::string cm_out = "-";
    std::string cm_report;

    CLI::App* cm = app.add_subcommand(
        "code-mi", "Estimate MI of a raw byte file from code lengths (CSV + JSON report)");
    cm->add_option("--in", cm_in, "Input file, read as bytes")->required();
    cm->add_option("--codec", cm_codec, "Code to use; only lz78 applies to raw bytes")
        ->capture_default_str();
    cm->add_option("--k-min", cm_k_min, "Smallest half-length exponent")->capture_default_str();
    cm->add_option("--k-max", cm_k_max, "Largest half-length exponent")->capture_default_str();
    cm->add_option("--seed", cm_seed, "Accepted for interface uniformity; unused");
    cm->add_option("--out", cm_out, "Curve CSV path, - for stdout")->capture_default_str();
    cm->add_option("--report", cm_report,
                   "Exponent report JSON path; default: <out>.report.json, or - when --out is -");

    double sch_beta = 0.0;
    std::uint32_t sch_blocks = 2;
    std::uint64_t sch_seed = 0;
    std::string sch_out = "-";

    CLI::App* sch = app.add_subcommand(
        "schedule", "Construct a valid activation schedule and write it as JSON");
    sch->add_option("--beta", sch_beta, "Target exponent in (0,1)")->required();
    sch->add_option("--blocks", sch_blocks, "Number of blocks")->capture_default_str();
    sch->add_option("--seed", sch_seed, "Accepted for interface uniformity; unused");
    sch->add_option("--out", sch_out, "Output JSON path, - for stdout")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            hilberg::ExperimentConfig config;
            config.process = make_process(process_name, beta, schedule_path);
            config.k_min = k_min;
            config.k_max = k_max;
            config.replicates = replicates;
            config.seed = seed;
            config.attach_analytic = attach_analytic;
            config.tol = tol;
            config.threads = threads;
            if (!codec_flag.empty()) config.codec = hilberg::codec_from_name(codec_flag);
            return hilberg::run_simulate(config, out_path);
        }
        if (an->parsed()) {
            hilberg::ProcessSpec process = make_process(an_process, an_beta, an_schedule_path);
            return hilberg::run_analytic(process, an_k_min, an_k_max, an_tol, an_out);
        }
        if (est->parsed()) return hilberg::run_estimate(est_in, est_k0, est_out);
        if (cm->parsed()) {
            hilberg::Codec codec = hilberg::codec_from_name(cm_codec);
            std::string report_path = cm_report;
            if (report_path.empty())
                report_path = cm_out == "-" ? "-" : cm_out + ".report.json";
            return hilberg::run_code_mi(cm_in, codec, cm_k_min, cm_k_max, cm_out, report_path);
        }
        if (sch->parsed()) return hilberg::run_schedule(sch_beta, sch_blocks, sch_out);
    } catch (const hilberg::parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hilberg::impossible_event_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
