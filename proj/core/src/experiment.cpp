#include "hilberg/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <mutex>
#include <span>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hilberg/codes.hpp"
#include "hilberg/curve_io.hpp"
#include "hilberg/errors.hpp"
#include "hilberg/measures.hpp"
#include "hilberg/pmi.hpp"
#include "hilberg/rng.hpp"
#include "hilberg/sampling.hpp"
#include "internal_math.hpp"

namespace hilberg {
namespace {

void check_k_range(std::uint32_t k_min, std::uint32_t k_max) {
    if (k_min < 2 || k_min >= k_max || k_max > 24)
        throw parameter_error("block-length range must satisfy 2 <= k_min < k_max <= 24");
}

double analytic_value(const ProcessSpec& process, std::uint64_t n, double tol) {
    if (process.is_santa_fe_kind()) return expected_mi_santa_fe(process, n, tol);
    return expected_mi_mixture(n);
}

// Aggregates per-replicate values (rows) into one CurveRecord per grid
// point, in ascending-n order. The shift B is shared by every row: one plus
// the sampled minimum's negative part.
std::vector<CurveRecord> aggregate(const std::vector<std::vector<double>>& rows,
                                   const std::vector<std::uint64_t>& grid,
                                   const std::string& source) {
    double min_value = 0.0;
    for (const std::vector<double>& row : rows)
        for (double v : row) min_value = std::min(min_value, v);
    const double b = 1.0 - min_value;

    std::vector<CurveRecord> curve;
    curve.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        detail::Kahan mean_acc, harm_acc;
        for (const std::vector<double>& row : rows) {
            mean_acc.add(row[i]);
            harm_acc.add(1.0 / (row[i] + b));
        }
        const double count = static_cast<double>(rows.size());
        CurveRecord rec;
        rec.n = grid[i];
        rec.replicates = rows.size();
        rec.mean_mi = mean_acc.sum / count;
        rec.harmonic_mean_shifted = harm_acc.sum / count;
        rec.B = b;
        rec.source = source;
        if (rows.size() > 1) {
            detail::Kahan var_acc;
            for (const std::vector<double>& row : rows) {
                double d = row[i] - rec.mean_mi;
                var_acc.add(d * d);
            }
            rec.var_mi = var_acc.sum / (count - 1.0);
        }
        curve.push_back(rec);
    }
    return curve;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw resource_error("cannot open '" + path + "' for writing");
    return file;
}

void finish_out(const std::string& path, std::ofstream& file) {
    if (path == "-") {
        std::cout.flush();
        return;
    }
    file.flush();
    if (!file) throw resource_error("write to '" + path + "' failed");
}

} // namespace

void ExperimentConfig::validate() const {
    check_k_range(k_min, k_max);
    if (replicates == 0) throw parameter_error("replicates must be >= 1");
    if (!(tol > 1e-12) || !(tol < 1e-2))
        throw parameter_error("tol must lie in (1e-12, 1e-2)");
}

std::string ExperimentConfig::describe() const {
    std::ostringstream os;
    os << "process=" << process.name();
    if (process.is_santa_fe_kind()) os << " beta=" << format_double(process.beta());
    if (process.kind() == ProcessKind::ModifiedSantaFe)
        os << " schedule_blocks=" << process.schedule().blocks().size();
    os << " k_min=" << k_min << " k_max=" << k_max << " replicates=" << replicates
       << " seed=" << seed;
    if (codec) os << " codec=" << codec_name(*codec);
    if (attach_analytic) os << " analytic=1 tol=" << format_double(tol);
    return os.str();
}

SimulationResult run_simulation(const ExperimentConfig& config) {
    config.validate();

    std::vector<std::uint64_t> grid;
    for (std::uint32_t k = config.k_min; k <= config.k_max; ++k)
        grid.push_back(std::uint64_t{1} << k);

    SimulationResult result;
    result.trajectories.assign(config.replicates, std::vector<double>(grid.size(), 0.0));

    // Each replicate owns one realization at the largest length; smaller
    // lengths are its central slices, so the grid points of a replicate are
    // nested and the whole batch is reproducible replicate by replicate.
    auto run_replicate = [&](std::uint64_t r) {
        RngStream rng = RngStream::for_replicate(config.seed, r);
        Window window = sample_window(config.process, std::size_t{1} << config.k_max, rng);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            Window inner = window.inner(grid[i]);
            PmiSample sample = config.codec ? code_pmi(*config.codec, inner, config.process)
                                            : pmi_exact(inner, config.process);
            result.trajectories[r][i] = sample.value;
        }
    };

    std::uint32_t workers = config.threads != 0 ? config.threads
                                                : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(workers, config.replicates));
    if (workers <= 1) {
        for (std::uint64_t r = 0; r < config.replicates; ++r) run_replicate(r);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr first_error;
        std::mutex error_mutex;
        for (std::uint32_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::uint64_t r = w; r < config.replicates; r += workers)
                        run_replicate(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    std::string source = config.codec ? std::string("code:") + codec_name(*config.codec)
                                      : std::string("exact");
    result.curve = aggregate(result.trajectories, grid, source);

    if (config.attach_analytic)
        for (CurveRecord& rec : result.curve)
            rec.analytic_mi = analytic_value(config.process, rec.n, config.tol);
    return result;
}

std::vector<CurveRecord> analytic_curve(const ProcessSpec& process, std::uint32_t k_min,
                                        std::uint32_t k_max, double tol) {
    check_k_range(k_min, k_max);
    std::vector<CurveRecord> curve;
    for (std::uint32_t k = k_min; k <= k_max; ++k) {
        std::uint64_t n = std::uint64_t{1} << k;
        double value = analytic_value(process, n, tol);
        CurveRecord rec;
        rec.n = n;
        rec.replicates = 0;
        rec.mean_mi = value;
        rec.var_mi = 0.0;
        rec.B = 1.0;
        rec.harmonic_mean_shifted = 1.0 / (value + rec.B);
        rec.analytic_mi = value;
        rec.source = "analytic";
        curve.push_back(rec);
    }
    return curve;
}

int run_simulate(const ExperimentConfig& config, const std::string& out_path) {
    SimulationResult result = run_simulation(config);
    std::ofstream file;
    std::ostream& os = open_out(out_path, file);
    write_curve_csv(os, result.curve, config.describe());
    finish_out(out_path, file);
    return 0;
}

int run_analytic(const ProcessSpec& process, std::uint32_t k_min, std::uint32_t k_max,
                 double tol, const std::string& out_path) {
    std::vector<CurveRecord> curve = analytic_curve(process, k_min, k_max, tol);
    std::ostringstream comment;
    comment << "process=" << process.name();
    if (process.is_santa_fe_kind()) comment << " beta=" << format_double(process.beta());
    comment << " analytic=1 k_min=" << k_min << " k_max=" << k_max
            << " tol=" << format_double(tol);
    std::ofstream file;
    std::ostream& os = open_out(out_path, file);
    write_curve_csv(os, curve, comment.str());
    finish_out(out_path, file);
    return 0;
}

std::string report_to_json(const ExponentReport& report,
                           const std::vector<std::pair<std::string, std::string>>& config_echo) {
    nlohmann::ordered_json doc;
    doc["gamma_plus"] = report.gamma_plus;
    doc["gamma_minus"] = report.gamma_minus;
    doc["delta_plus"] = report.delta_plus;
    doc["delta_minus"] = report.delta_minus;
    doc["zeta_plus"] = report.zeta_plus;
    doc["zeta_minus"] = report.zeta_minus;
    doc["epsilon_hat"] = report.epsilon_hat;
    if (report.fit) {
        doc["fit"] = {{"power_slope", report.fit->power_slope},
                      {"power_r2", report.fit->power_r2},
                      {"log_slope", report.fit->log_slope},
                      {"log_r2", report.fit->log_r2},
                      {"classification", report.fit->classification}};
    } else {
        doc["fit"] = nullptr;
    }
    doc["k_min"] = report.k_min;
    doc["k_max"] = report.k_max;
    doc["k0"] = report.k0;
    doc["B"] = report.B;
    doc["gamma_source"] = report.gamma_source;
    if (!config_echo.empty()) {
        nlohmann::ordered_json cfg;
        for (const auto& [key, value] : config_echo) cfg[key] = value;
        doc["config"] = cfg;
    }
    return doc.dump(2) + "\n";
}

int run_estimate(const std::string& curve_csv_path, std::optional<std::uint32_t> k0,
                 const std::string& out_path) {
    std::string comment;
    std::vector<CurveRecord> curve;
    if (curve_csv_path == "-")
        curve = read_curve_csv(std::cin, comment);
    else
        curve = read_curve_csv_file(curve_csv_path, comment);

    ExponentReport report;
    try {
        report = estimate_report(curve, k0);
    } catch (const parameter_error&) {
        throw;
    } catch (const std::logic_error& e) {
        // Orderings hold by construction on self-consistent statistics, so a
        // violation here means the input columns disagree with each other.
        throw parameter_error(std::string("input curve is internally inconsistent: ") + e.what());
    }

    std::vector<std::pair<std::string, std::string>> echo;
    echo.emplace_back("input", curve_csv_path);
    if (!comment.empty()) echo.emplace_back("source_config", comment);

    std::ofstream file;
    std::ostream& os = open_out(out_path, file);
    os << report_to_json(report, echo);
    finish_out(out_path, file);
    return 0;
}

int run_code_mi(const std::string& input_path, Codec codec, std::uint32_t k_min,
                std::uint32_t k_max, const std::string& out_path,
                const std::string& report_path) {
    if (codec != Codec::Lz78)
        throw parameter_error("code-mi reads raw bytes with no process measure attached; "
                              "only the lz78 codec applies");
    check_k_range(k_min, k_max);
    if (k_max < k_min + 4)
        throw parameter_error("code-mi needs at least five lengths (k_max >= k_min + 4)");

    std::ifstream in(input_path, std::ios::binary);
    if (!in) throw resource_error("cannot open '" + input_path + "' for reading");
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::uint64_t need = std::uint64_t{1} << (k_max + 1);
    if (raw.size() < need)
        throw parameter_error("input file holds " + std::to_string(raw.size()) +
                              " bytes; k_max=" + std::to_string(k_max) + " needs at least " +
                              std::to_string(need));
    std::vector<std::uint32_t> bytes(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        bytes[i] = static_cast<std::uint8_t>(raw[i]);

    // Non-overlapping windows per length keep the per-length samples
    // independent, at the price of differing replicate counts per row.
    std::vector<std::uint64_t> grid;
    std::vector<std::vector<double>> samples_per_k;
    double min_value = 0.0;
    for (std::uint32_t k = k_min; k <= k_max; ++k) {
        const std::uint64_t half = std::uint64_t{1} << k;
        const std::uint64_t full = 2 * half;
        std::vector<double> samples;
        for (std::uint64_t start = 0; start + full <= bytes.size(); start += full) {
            std::span<const std::uint32_t> left(bytes.data() + start, half);
            std::span<const std::uint32_t> joined(bytes.data() + start, full);
            std::span<const std::uint32_t> right(bytes.data() + start + half, half);
            double value = static_cast<double>(lz78_length(left, 256).bits) +
                           static_cast<double>(lz78_length(right, 256).bits) -
                           static_cast<double>(lz78_length(joined, 256).bits);
            samples.push_back(value);
            min_value = std::min(min_value, value);
        }
        grid.push_back(half);
        samples_per_k.push_back(std::move(samples));
    }

    const double b = 1.0 - min_value;
    std::vector<CurveRecord> curve;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::vector<double>& samples = samples_per_k[i];
        detail::Kahan mean_acc, harm_acc;
        for (double v : samples) {
            mean_acc.add(v);
            harm_acc.add(1.0 / (v + b));
        }
        const double count = static_cast<double>(samples.size());
        CurveRecord rec;
        rec.n = grid[i];
        rec.replicates = samples.size();
        rec.mean_mi = mean_acc.sum / count;
        rec.harmonic_mean_shifted = harm_acc.sum / count;
        rec.B = b;
        rec.source = "code:lz78";
        if (samples.size() > 1) {
            detail::Kahan var_acc;
            for (double v : samples) {
                double d = v - rec.mean_mi;
                var_acc.add(d * d);
            }
            rec.var_mi = var_acc.sum / (count - 1.0);
        }
        curve.push_back(rec);
    }

    std::ostringstream comment;
    comment << "code-mi input=" << input_path << " codec=lz78 k_min=" << k_min
            << " k_max=" << k_max;
    std::ofstream curve_file;
    std::ostream& curve_os = open_out(out_path, curve_file);
    write_curve_csv(curve_os, curve, comment.str());
    finish_out(out_path, curve_file);

    // Code-length MI of weakly dependent data can sit below zero outside a
    // central band of lengths, and rows with nonpositive means carry no
    // growth signal. Estimate on the longest contiguous run of positive-mean
    // rows (ties go to larger n) so the report's preconditions hold.
    std::size_t best_begin = 0, best_len = 0;
    for (std::size_t i = 0; i < curve.size();) {
        if (curve[i].mean_mi <= 0.0) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < curve.size() && curve[j].mean_mi > 0.0) ++j;
        if (j - i >= best_len) {
            best_begin = i;
            best_len = j - i;
        }
        i = j;
    }
    if (best_len < 5)
        throw parameter_error("code lengths gave positive mean MI on only " +
                              std::to_string(best_len) +
                              " consecutive rows; at least 5 are needed for a report, "
                              "widen the length range");
    std::vector<CurveRecord> reported(
        curve.begin() + static_cast<std::ptrdiff_t>(best_begin),
        curve.begin() + static_cast<std::ptrdiff_t>(best_begin + best_len));

    ExponentReport report = estimate_report(reported, std::nullopt);
    std::vector<std::pair<std::string, std::string>> echo;
    echo.emplace_back("input", input_path);
    echo.emplace_back("codec", "lz78");
    echo.emplace_back("k_min", std::to_string(k_min));
    echo.emplace_back("k_max", std::to_string(k_max));
    if (best_len != curve.size())
        echo.emplace_back("rows_dropped_nonpositive",
                          std::to_string(curve.size() - best_len));
    std::ofstream report_file;
    std::ostream& report_os = open_out(report_path, report_file);
    report_os << report_to_json(report, echo);
    finish_out(report_path, report_file);
    return 0;
}

int run_schedule(double beta, std::uint32_t num_blocks, const std::string& out_path) {
    Schedule schedule = build_schedule(beta, num_blocks);
    std::ofstream file;
    std::ostream& os = open_out(out_path, file);
    os << schedule.to_json_string();
    finish_out(out_path, file);
    return 0;
}

} // namespace hilberg
