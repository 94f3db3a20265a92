#include "wthi/binning_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wthi/info_measures.hpp"
#include "json.hpp"

namespace wthi {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform double in [0,1) with a fixed, platform-independent mapping.
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_index(std::mt19937_64& rng, const std::vector<double>& p) {
    const double u = next_uniform(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        if (u < acc) return i;
    }
    return p.size() - 1;
}

std::size_t rate_to_size(double rate, std::size_t n) {
    const double raw = std::exp2(rate * static_cast<double>(n));
    const auto rounded = static_cast<long long>(std::llround(raw));
    return rounded < 1 ? 1 : static_cast<std::size_t>(rounded);
}

double realized(std::size_t size, std::size_t n) {
    return std::log2(static_cast<double>(size)) / static_cast<double>(n);
}

// Flattened p(y2|x1,x2) and p(y1|x1,x2) lookup tables.
struct KernelTables {
    std::size_t n_x2, n_y1, n_y2;
    std::vector<double> y1_tab, y2_tab;

    explicit KernelTables(const Dmc& ch)
        : n_x2(ch.n_x2()), n_y1(ch.n_y1()), n_y2(ch.n_y2()) {
        y1_tab.resize(ch.n_x1() * n_x2 * n_y1);
        y2_tab.resize(ch.n_x1() * n_x2 * n_y2);
        for (std::size_t x1 = 0; x1 < ch.n_x1(); ++x1) {
            for (std::size_t x2 = 0; x2 < n_x2; ++x2) {
                for (std::size_t y1 = 0; y1 < n_y1; ++y1) {
                    y1_tab[(x1 * n_x2 + x2) * n_y1 + y1] = ch.p_y1(x1, x2, y1);
                }
                for (std::size_t y2 = 0; y2 < n_y2; ++y2) {
                    y2_tab[(x1 * n_x2 + x2) * n_y2 + y2] = ch.p_y2(x1, x2, y2);
                }
            }
        }
    }
    double py1(std::size_t x1, std::size_t x2, std::size_t y1) const {
        return y1_tab[(x1 * n_x2 + x2) * n_y1 + y1];
    }
    double py2(std::size_t x1, std::size_t x2, std::size_t y2) const {
        return y2_tab[(x1 * n_x2 + x2) * n_y2 + y2];
    }
};

void check_budget(const Dmc& ch, std::size_t n, std::size_t num_messages, std::size_t bin_size,
                  std::size_t helper_size, double budget) {
    const double outputs = std::pow(static_cast<double>(ch.n_y2()), static_cast<double>(n));
    const double combos = static_cast<double>(num_messages) * static_cast<double>(bin_size) *
                          static_cast<double>(helper_size);
    if (outputs * combos > budget) {
        throw BudgetError("enumeration budget exceeded: |Y2|^n * codeword combinations = " +
                          std::to_string(outputs) + " * " + std::to_string(combos) + " > " +
                          std::to_string(budget));
    }
}

} // namespace

double BinnedCodebook::realized_r1s() const { return realized(num_messages, n); }
double BinnedCodebook::realized_r1d() const { return realized(bin_size, n); }
double BinnedCodebook::realized_r2() const { return realized(helper_codebook.size(), n); }

std::string SimReport::to_json() const {
    const nlohmann::json j{{"n", n},
                           {"realized_r1s", realized_r1s},
                           {"realized_r1d", realized_r1d},
                           {"realized_r2", realized_r2},
                           {"pe", pe},
                           {"pe_halfwidth", pe_halfwidth},
                           {"equivocation_rate", equivocation_rate},
                           {"leakage", leakage},
                           {"secrecy_gap", secrecy_gap},
                           {"seed", seed}};
    return j.dump();
}

BinnedCodebook sample_codebooks(const Dmc& ch, const ProductInput& input, std::size_t n,
                                const RateTriple& rates, std::uint64_t seed, double budget) {
    if (n < 1) throw std::invalid_argument("block length must be >= 1");
    if (input.px1.size() != ch.n_x1() || input.px2.size() != ch.n_x2()) {
        throw std::invalid_argument("input distribution dimensions do not match the channel");
    }
    validate_prob_vector(input.px1);
    validate_prob_vector(input.px2);
    if (rates.r1s < 0 || rates.r1d < 0 || rates.r2 < 0) {
        throw std::invalid_argument("rates must be >= 0");
    }

    BinnedCodebook cb;
    cb.n = n;
    cb.num_messages = rate_to_size(rates.r1s, n);
    cb.bin_size = rate_to_size(rates.r1d, n);
    const std::size_t helper_size = rate_to_size(rates.r2, n);
    check_budget(ch, n, cb.num_messages, cb.bin_size, helper_size, budget);

    std::mt19937_64 rng(splitmix64(seed));
    cb.codewords.reserve(cb.num_messages * cb.bin_size);
    for (std::size_t i = 0; i < cb.num_messages * cb.bin_size; ++i) {
        std::vector<std::size_t> word(n);
        for (auto& s : word) s = sample_index(rng, input.px1);
        cb.codewords.push_back(std::move(word));
    }
    cb.helper_codebook.reserve(helper_size);
    for (std::size_t i = 0; i < helper_size; ++i) {
        std::vector<std::size_t> word(n);
        for (auto& s : word) s = sample_index(rng, input.px2);
        cb.helper_codebook.push_back(std::move(word));
    }
    return cb;
}

SimReport exact_equivocation(const Dmc& ch, const BinnedCodebook& cb, double budget) {
    check_budget(ch, cb.n, cb.num_messages, cb.bin_size, cb.helper_codebook.size(), budget);
    const KernelTables tab(ch);
    const std::size_t ny2 = ch.n_y2();
    const std::size_t n = cb.n;
    const std::size_t msgs = cb.num_messages;
    const double inv_msgs = 1.0 / static_cast<double>(msgs);
    const double inv_combo =
        1.0 / (static_cast<double>(cb.bin_size) * static_cast<double>(cb.helper_codebook.size()));

    std::vector<std::size_t> y2(n, 0);
    std::vector<double> p_given_w(msgs);
    double h_w_given_y2 = 0.0;
    while (true) {
        for (std::size_t w = 0; w < msgs; ++w) {
            double sum = 0.0;
            for (std::size_t b = 0; b < cb.bin_size; ++b) {
                const auto& c = cb.codewords[w * cb.bin_size + b];
                for (const auto& v : cb.helper_codebook) {
                    double lik = 1.0;
                    for (std::size_t k = 0; k < n; ++k) {
                        lik *= tab.py2(c[k], v[k], y2[k]);
                        if (lik == 0.0) break;
                    }
                    sum += lik;
                }
            }
            p_given_w[w] = sum * inv_combo;
        }
        double py = 0.0;
        for (double v : p_given_w) py += v;
        py *= inv_msgs;
        if (py > 0.0) {
            for (std::size_t w = 0; w < msgs; ++w) {
                const double pwy = p_given_w[w] * inv_msgs; // p(w, y2^n)
                if (pwy > 0.0) h_w_given_y2 += pwy * std::log2(py / pwy);
            }
        }
        // Odometer over Y2^n.
        std::size_t k = 0;
        while (k < n && ++y2[k] == ny2) y2[k++] = 0;
        if (k == n) break;
    }

    SimReport rep;
    rep.n = n;
    rep.realized_r1s = cb.realized_r1s();
    rep.realized_r1d = cb.realized_r1d();
    rep.realized_r2 = cb.realized_r2();
    rep.equivocation_rate = h_w_given_y2 / static_cast<double>(n);
    rep.leakage = rep.realized_r1s - rep.equivocation_rate;
    if (rep.leakage < 0.0 && rep.leakage > -kEqTol) rep.leakage = 0.0;
    rep.secrecy_gap = rep.realized_r1s - rep.equivocation_rate;
    return rep;
}

PeEstimate error_probability(const Dmc& ch, const BinnedCodebook& cb, DecoderMode mode,
                             std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const KernelTables tab(ch);
    const std::size_t n = cb.n;
    const std::size_t total_cw = cb.codewords.size();
    const std::size_t helpers = cb.helper_codebook.size();

    std::size_t errors = 0;
    std::vector<std::size_t> y1(n);
    for (std::size_t t = 0; t < trials; ++t) {
        // Per-trial substream: reproducible independently of trial order.
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(t + 1)));
        const std::size_t w = static_cast<std::size_t>(next_uniform(rng) * cb.num_messages);
        const std::size_t b = static_cast<std::size_t>(next_uniform(rng) * cb.bin_size);
        const std::size_t v_idx = static_cast<std::size_t>(next_uniform(rng) * helpers);
        const auto& c = cb.codewords[w * cb.bin_size + b];
        const auto& v = cb.helper_codebook[v_idx];

        for (std::size_t k = 0; k < n; ++k) {
            const double u = next_uniform(rng);
            double acc = 0.0;
            std::size_t pick = ch.n_y1() - 1;
            for (std::size_t y = 0; y < ch.n_y1(); ++y) {
                acc += tab.py1(c[k], v[k], y);
                if (u < acc) {
                    pick = y;
                    break;
                }
            }
            y1[k] = pick;
        }

        std::size_t best_cw = 0;
        double best_lik = -1.0;
        if (mode == DecoderMode::JointMl) {
            for (std::size_t ci = 0; ci < total_cw; ++ci) {
                for (std::size_t vi = 0; vi < helpers; ++vi) {
                    double lik = 1.0;
                    for (std::size_t k = 0; k < n; ++k) {
                        lik *= tab.py1(cb.codewords[ci][k], cb.helper_codebook[vi][k], y1[k]);
                        if (lik == 0.0) break;
                    }
                    if (lik > best_lik) {
                        best_lik = lik;
                        best_cw = ci;
                    }
                }
            }
        } else {
            for (std::size_t ci = 0; ci < total_cw; ++ci) {
                double lik = 0.0;
                for (std::size_t vi = 0; vi < helpers; ++vi) {
                    double term = 1.0;
                    for (std::size_t k = 0; k < n; ++k) {
                        term *= tab.py1(cb.codewords[ci][k], cb.helper_codebook[vi][k], y1[k]);
                        if (term == 0.0) break;
                    }
                    lik += term;
                }
                if (lik > best_lik) {
                    best_lik = lik;
                    best_cw = ci;
                }
            }
        }
        if (best_cw / cb.bin_size != w) ++errors;
    }

    PeEstimate est;
    est.trials = trials;
    est.pe = static_cast<double>(errors) / static_cast<double>(trials);
    est.halfwidth = 1.96 * std::sqrt(est.pe * (1.0 - est.pe) / static_cast<double>(trials));
    return est;
}

namespace {

template <typename F>
void for_each_metric(SimReport& dst, const SimReport& src, F&& combine) {
    combine(dst.pe, src.pe);
    combine(dst.pe_halfwidth, src.pe_halfwidth);
    combine(dst.equivocation_rate, src.equivocation_rate);
    combine(dst.leakage, src.leakage);
    combine(dst.secrecy_gap, src.secrecy_gap);
}

} // namespace

std::string ExperimentReport::to_json() const {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : per_seed) reports.push_back(nlohmann::json::parse(r.to_json()));
    const nlohmann::json j{{"reports", std::move(reports)},
                           {"mean", nlohmann::json::parse(mean.to_json())},
                           {"min", nlohmann::json::parse(min.to_json())},
                           {"max", nlohmann::json::parse(max.to_json())}};
    return j.dump();
}

ExperimentReport run_experiment(const Dmc& ch, const ProductInput& input, std::size_t n,
                                const RateTriple& rates, const std::vector<std::uint64_t>& seeds,
                                std::size_t pe_trials, DecoderMode mode, double budget) {
    if (seeds.empty()) throw std::invalid_argument("run_experiment needs at least one seed");
    ExperimentReport out;
    for (const auto seed : seeds) {
        const auto cb = sample_codebooks(ch, input, n, rates, seed, budget);
        SimReport rep = exact_equivocation(ch, cb, budget);
        rep.seed = seed;
        if (pe_trials > 0) {
            const auto est = error_probability(ch, cb, mode, pe_trials, seed);
            rep.pe = est.pe;
            rep.pe_halfwidth = est.halfwidth;
        }
        out.per_seed.push_back(rep);
    }
    out.mean = out.min = out.max = out.per_seed.front();
    out.mean.seed = out.min.seed = out.max.seed = 0;
    for (std::size_t i = 1; i < out.per_seed.size(); ++i) {
        const auto& r = out.per_seed[i];
        for_each_metric(out.mean, r, [](double& d, double s) { d += s; });
        for_each_metric(out.min, r, [](double& d, double s) { d = std::min(d, s); });
        for_each_metric(out.max, r, [](double& d, double s) { d = std::max(d, s); });
    }
    const auto count = static_cast<double>(out.per_seed.size());
    for_each_metric(out.mean, out.mean, [count](double& d, double) { d /= count; });
    return out;
}

} // namespace wthi
