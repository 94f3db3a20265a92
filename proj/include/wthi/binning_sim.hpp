// Ground-truth oracle for the random-binning coding scheme on tiny
// finite-alphabet channels: sample concrete codebooks, compute the exact
// equivocation H(W|Y2^n) for a fixed code, and estimate the intended
// receiver's error probability under maximum-likelihood decoding.

#ifndef WTHI_BINNING_SIM_HPP
#define WTHI_BINNING_SIM_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wthi/dmc_whi.hpp"

namespace wthi {

/// Enumeration-cost limit was exceeded.
class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Default cap on |Y2|^n * (num_messages * bin_size * helper words)
// elementary products.
inline constexpr double kDefaultEnumBudget = 1e8;

struct BinnedCodebook {
    std::size_t n = 0;
    std::size_t num_messages = 1; // 2^(n*r1s), rounded, >= 1
    std::size_t bin_size = 1;     // 2^(n*r1d), rounded, >= 1
    // num_messages * bin_size codewords over X1; bin w holds indices
    // [w*bin_size, (w+1)*bin_size).
    std::vector<std::vector<std::size_t>> codewords;
    // 2^(n*r2) rounded X2-sequences.
    std::vector<std::vector<std::size_t>> helper_codebook;

    double realized_r1s() const;
    double realized_r1d() const;
    double realized_r2() const;
};

struct SimReport {
    std::size_t n = 0;
    double realized_r1s = 0.0;
    double realized_r1d = 0.0;
    double realized_r2 = 0.0;
    double pe = 0.0;
    double pe_halfwidth = 0.0;
    double equivocation_rate = 0.0;
    double leakage = 0.0;
    double secrecy_gap = 0.0;
    std::uint64_t seed = 0;

    std::string to_json() const;
};

/// Draws the transmitter and helper codebooks i.i.d. from the product input
/// distribution; deterministic given the seed. Requested rates are rounded
/// to integer codebook sizes (>= 1). Throws BudgetError when the implied
/// exact-equivocation cost exceeds `budget`.
BinnedCodebook sample_codebooks(const Dmc& ch, const ProductInput& input, std::size_t n,
                                const RateTriple& rates, std::uint64_t seed,
                                double budget = kDefaultEnumBudget);

/// Exact H(W|Y2^n) for the given code with W uniform over messages, by
/// summation over all |Y2|^n eavesdropper sequences. Fills the
/// equivocation_rate / leakage / secrecy_gap fields.
SimReport exact_equivocation(const Dmc& ch, const BinnedCodebook& cb,
                             double budget = kDefaultEnumBudget);

enum class DecoderMode {
    JointMl,      // maximize over (codeword, helper word) pairs
    TreatAsNoise, // marginalize the helper codebook out of the likelihood
};

struct PeEstimate {
    double pe = 0.0;
    double halfwidth = 0.0; // 95% binomial normal-approximation halfwidth
    std::size_t trials = 0;
};

/// Monte Carlo error probability at the intended receiver. Ties break
/// toward the lowest codeword index; deterministic given the seed and
/// independent of any parallel split (per-trial substreams).
PeEstimate error_probability(const Dmc& ch, const BinnedCodebook& cb, DecoderMode mode,
                             std::size_t trials, std::uint64_t seed);

struct ExperimentReport {
    std::vector<SimReport> per_seed;
    SimReport mean;
    SimReport min;
    SimReport max;

    std::string to_json() const;
};

/// Batch harness: one exact report per seed plus mean/min/max aggregates
/// over the numeric fields.
ExperimentReport run_experiment(const Dmc& ch, const ProductInput& input, std::size_t n,
                                const RateTriple& rates, const std::vector<std::uint64_t>& seeds,
                                std::size_t pe_trials = 0,
                                DecoderMode mode = DecoderMode::JointMl,
                                double budget = kDefaultEnumBudget);

} // namespace wthi

#endif
