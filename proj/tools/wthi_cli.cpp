// Command-line driver for the WT-HI secrecy-rate toolkit.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage or validation error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wthi/binning_sim.hpp"
#include "wthi/dmc_whi.hpp"
#include "wthi/gwt_hi.hpp"
#include "wthi/info_measures.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        write_file(out_path, text);
    }
}

std::string record_text(const nlohmann::json& j) {
    std::ostringstream os;
    for (const auto& [key, value] : j.items()) {
        os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
           << '\n';
    }
    return os.str();
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        seeds.push_back(std::stoull(item));
    }
    if (seeds.empty()) throw std::invalid_argument("seed list is empty");
    return seeds;
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("WTHI_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return static_cast<int>(std::thread::hardware_concurrency());
}

std::vector<wthi::ProductInput> sampled_inputs(const wthi::Dmc& ch, std::size_t samples,
                                               std::uint64_t seed) {
    std::vector<wthi::ProductInput> inputs;
    const auto uniform = [](std::size_t k) {
        return std::vector<double>(k, 1.0 / static_cast<double>(k));
    };
    inputs.push_back({uniform(ch.n_x1()), uniform(ch.n_x2())});
    std::mt19937_64 rng(seed);
    auto draw = [&](std::size_t k) {
        // Dirichlet(1,...,1) via normalized exponentials.
        std::vector<double> p(k);
        double sum = 0.0;
        for (auto& v : p) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            v = -std::log(1.0 - u);
            sum += v;
        }
        for (auto& v : p) v /= sum;
        // Renormalize exactly against accumulation error.
        double s2 = 0.0;
        for (double v : p) s2 += v;
        p.back() += 1.0 - s2;
        return p;
    };
    for (std::size_t i = 0; i < samples; ++i) {
        inputs.push_back({draw(ch.n_x1()), draw(ch.n_x2())});
    }
    return inputs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy rates for the wiretap channel with a helping interferer"};
    app.require_subcommand(1);
    std::string format = "json";
    auto* format_opt = app.add_option("--format", format, "Output format")
                           ->check(CLI::IsMember({"json", "text"}));
    int threads_flag = 0;
    app.add_option("--threads", threads_flag, "Worker thread cap (default: machine parallelism)");

    // rate
    double a = 0, p1 = 0, p2 = 0;
    auto* cmd_rate = app.add_subcommand("rate", "Closed-form secrecy rate at fixed powers");
    cmd_rate->add_option("--a", a, "Cross-channel gain")->required()->check(CLI::NonNegativeNumber);
    cmd_rate->add_option("--p1", p1, "Transmit power")->required()->check(CLI::NonNegativeNumber);
    cmd_rate->add_option("--p2", p2, "Interferer power")->required()->check(CLI::NonNegativeNumber);

    // power-control
    double p1max = 0, p2max = 0;
    auto* cmd_pc = app.add_subcommand("power-control", "Rate-maximizing power allocation");
    cmd_pc->add_option("--a", a, "Cross-channel gain")->required()->check(CLI::NonNegativeNumber);
    cmd_pc->add_option("--p1max", p1max, "Transmitter power constraint")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd_pc->add_option("--p2max", p2max, "Interferer power constraint")
        ->required()
        ->check(CLI::NonNegativeNumber);

    // asymptotic
    auto* cmd_asym = app.add_subcommand("asymptotic", "Power-unconstrained secrecy rate");
    cmd_asym->add_option("--a", a, "Cross-channel gain")->required();

    // sweep
    std::string var, power_control_flag = "on", out_path;
    double from = 0, to = 0;
    unsigned steps = 0;
    auto* cmd_sweep = app.add_subcommand("sweep", "Rate table over a parameter grid");
    cmd_sweep->add_option("--var", var, "Swept variable")
        ->required()
        ->check(CLI::IsMember({"a", "p1", "p2"}));
    cmd_sweep->add_option("--from", from, "Grid start")->required()->check(CLI::NonNegativeNumber);
    cmd_sweep->add_option("--to", to, "Grid end")->required()->check(CLI::NonNegativeNumber);
    cmd_sweep->add_option("--steps", steps, "Grid size (>= 2)")->required();
    cmd_sweep->add_option("--a", a, "Fixed gain");
    cmd_sweep->add_option("--p1max", p1max, "Fixed transmitter power constraint");
    cmd_sweep->add_option("--p2max", p2max, "Fixed interferer power constraint");
    cmd_sweep->add_option("--power-control", power_control_flag, "Apply Theorem-style power control")
        ->check(CLI::IsMember({"on", "off"}));
    cmd_sweep->add_option("--out", out_path, "Output file (default: stdout)");

    // dmc-rate
    std::string channel_path;
    unsigned grid = 8;
    auto* cmd_dmc = app.add_subcommand("dmc-rate", "Optimize the DMC secrecy rate");
    cmd_dmc->add_option("--channel", channel_path, "Channel JSON file")->required();
    cmd_dmc->add_option("--grid", grid, "Simplex lattice resolution")->check(CLI::PositiveNumber);

    // dmc-classify
    std::size_t samples = 100;
    std::uint64_t sample_seed = 1;
    auto* cmd_cls = app.add_subcommand("dmc-classify", "Interference class over sampled inputs");
    cmd_cls->add_option("--channel", channel_path, "Channel JSON file")->required();
    cmd_cls->add_option("--samples", samples, "Number of random product inputs");
    cmd_cls->add_option("--seed", sample_seed, "Sampling seed");

    // simulate
    std::size_t block_n = 1;
    double r1s = 0, r1d = 0, r2 = 0;
    std::string seeds_text = "1";
    std::size_t trials = 0;
    std::string mode_text = "joint_ml";
    auto* cmd_sim = app.add_subcommand("simulate", "Exact binning-code simulation");
    cmd_sim->add_option("--channel", channel_path, "Channel JSON file")->required();
    cmd_sim->add_option("--n", block_n, "Block length")->required()->check(CLI::PositiveNumber);
    cmd_sim->add_option("--r1s", r1s, "Secret rate")->required()->check(CLI::NonNegativeNumber);
    cmd_sim->add_option("--r1d", r1d, "Dummy rate")->required()->check(CLI::NonNegativeNumber);
    cmd_sim->add_option("--r2", r2, "Helper rate")->required()->check(CLI::NonNegativeNumber);
    cmd_sim->add_option("--seeds", seeds_text, "Comma-separated codebook seeds")->required();
    cmd_sim->add_option("--trials", trials, "Monte Carlo decoding trials (0: skip Pe)");
    cmd_sim->add_option("--mode", mode_text, "Receiver decoding mode")
        ->check(CLI::IsMember({"joint_ml", "treat_as_noise"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_rate) {
            const double rate = wthi::secrecy_rate(a, {p1, p2});
            const nlohmann::json j{{"a", a},
                                   {"p1", p1},
                                   {"p2", p2},
                                   {"regime", wthi::to_string(wthi::classify_regime(a, p2))},
                                   {"rate_bits", rate},
                                   {"baseline_bits", wthi::wiretap_baseline(a, p1)}};
            emit(format == "json" ? j.dump() : record_text(j), "");
        } else if (*cmd_pc) {
            const wthi::GaussianWthi ch{a, p1max, p2max};
            const auto res = wthi::power_control(ch);
            const nlohmann::json j{{"a", a},
                                   {"p1max", p1max},
                                   {"p2max", p2max},
                                   {"p1", res.alloc.p1},
                                   {"p2", res.alloc.p2},
                                   {"regime",
                                    wthi::to_string(wthi::classify_regime(a, res.alloc.p2))},
                                   {"rate_bits", res.rate},
                                   {"baseline_bits", wthi::wiretap_baseline(a, p1max)}};
            emit(format == "json" ? j.dump() : record_text(j), "");
        } else if (*cmd_asym) {
            const nlohmann::json j{{"a", a}, {"rate_bits", wthi::asymptotic_rate(a)}};
            emit(format == "json" ? j.dump() : record_text(j), "");
        } else if (*cmd_sweep) {
            if (steps < 2) throw std::invalid_argument("--steps must be >= 2");
            if (from > to) throw std::invalid_argument("--from must not exceed --to");
            std::vector<double> values(steps);
            for (unsigned i = 0; i < steps; ++i) {
                values[i] = from + (to - from) * static_cast<double>(i) /
                                       static_cast<double>(steps - 1);
            }
            const wthi::GaussianWthi ch{a, p1max, p2max};
            const auto variable = var == "a"    ? wthi::SweepVariable::Gain
                                  : var == "p1" ? wthi::SweepVariable::P1Max
                                                : wthi::SweepVariable::P2Max;
            const auto rows = wthi::sweep(ch, variable, values, power_control_flag == "on");
            // Sweeps are tabular: CSV unless JSON is explicitly requested.
            const bool want_json = format_opt->count() > 0 && format == "json";
            emit(want_json ? wthi::sweep_to_json(rows) : wthi::sweep_to_csv(rows), out_path);
        } else if (*cmd_dmc) {
            const auto ch = wthi::Dmc::from_json(read_file(channel_path));
            const auto res = wthi::theorem1_rate(ch, grid, resolve_threads(threads_flag));
            const auto cls =
                wthi::classify_interference(ch, sampled_inputs(ch, 64, sample_seed));
            const nlohmann::json j{{"rate_bits", res.rate},
                                   {"px1", res.input.px1},
                                   {"px2", res.input.px2},
                                   {"r1s", res.triple.r1s},
                                   {"r1d", res.triple.r1d},
                                   {"r2", res.triple.r2},
                                   {"class", wthi::to_string(cls)}};
            emit(format == "json" ? j.dump() : record_text(j), "");
        } else if (*cmd_cls) {
            const auto ch = wthi::Dmc::from_json(read_file(channel_path));
            const auto cls =
                wthi::classify_interference(ch, sampled_inputs(ch, samples, sample_seed));
            const nlohmann::json j{{"class", wthi::to_string(cls)},
                                   {"samples", samples},
                                   {"seed", sample_seed}};
            emit(format == "json" ? j.dump() : record_text(j), "");
        } else if (*cmd_sim) {
            const auto ch = wthi::Dmc::from_json(read_file(channel_path));
            const wthi::ProductInput input{
                std::vector<double>(ch.n_x1(), 1.0 / static_cast<double>(ch.n_x1())),
                std::vector<double>(ch.n_x2(), 1.0 / static_cast<double>(ch.n_x2()))};
            const auto mode = mode_text == "joint_ml" ? wthi::DecoderMode::JointMl
                                                      : wthi::DecoderMode::TreatAsNoise;
            const auto report = wthi::run_experiment(ch, input, block_n, {r1s, r1d, r2},
                                                     parse_seed_list(seeds_text), trials, mode);
            if (format == "json") {
                emit(report.to_json(), "");
            } else {
                std::ostringstream os;
                for (const auto& rep : report.per_seed) {
                    os << record_text(nlohmann::json::parse(rep.to_json())) << '\n';
                }
                emit(os.str(), "");
            }
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}
