#include "wthi/info_measures.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wthi {

double g(double x) {
    if (!(x >= 0.0)) {
        throw std::domain_error("g(x) requires x >= 0, got " + std::to_string(x));
    }
    return 0.5 * std::log2(1.0 + x);
}

void validate_prob_vector(std::span<const double> p) {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("probability entry out of range: " + std::to_string(v));
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kProbTol) {
        throw std::invalid_argument("probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
}

namespace {

// -sum p log2 p without validation; 0 log 0 = 0.
double entropy_raw(std::span<const double> p) {
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

} // namespace

double entropy(std::span<const double> p) {
    validate_prob_vector(p);
    return entropy_raw(p);
}

double mutual_information(const std::vector<std::vector<double>>& joint) {
    if (joint.empty() || joint.front().empty()) {
        throw std::invalid_argument("joint distribution is empty");
    }
    const std::size_t rows = joint.size();
    const std::size_t cols = joint.front().size();

    std::vector<double> flat;
    flat.reserve(rows * cols);
    std::vector<double> row_marg(rows, 0.0), col_marg(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        if (joint[i].size() != cols) {
            throw std::invalid_argument("joint distribution rows have unequal lengths");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = joint[i][j];
            flat.push_back(v);
            row_marg[i] += v;
            col_marg[j] += v;
        }
    }
    validate_prob_vector(flat);

    const double mi = entropy_raw(row_marg) + entropy_raw(col_marg) - entropy_raw(flat);
    return mi < 0.0 ? 0.0 : mi;
}

} // namespace wthi
