// Scalar information-theoretic kernels shared by all modules.
//
// All rates are in bits per channel use (log base 2). The 0*log(0) := 0
// convention is applied everywhere.

#ifndef WTHI_INFO_MEASURES_HPP
#define WTHI_INFO_MEASURES_HPP

#include <span>
#include <vector>

namespace wthi {

// Tolerance policy: distributions must normalize to this accuracy;
// test-level equality assertions use kEqTol.
inline constexpr double kProbTol = 1e-12;
inline constexpr double kEqTol = 1e-9;

/// Gaussian rate function g(x) = (1/2) log2(1+x). Throws std::domain_error
/// for negative x.
double g(double x);

/// Throws std::invalid_argument if p has a negative entry or does not sum
/// to 1 within kProbTol.
void validate_prob_vector(std::span<const double> p);

/// Shannon entropy in bits of a validated distribution.
double entropy(std::span<const double> p);

/// Mutual information in bits of a joint distribution given as a row-major
/// matrix. Computed as H(rows) + H(cols) - H(joint); tiny negative results
/// from rounding are clamped to 0.
double mutual_information(const std::vector<std::vector<double>>& joint);

} // namespace wthi

#endif
