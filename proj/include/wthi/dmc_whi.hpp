// Discrete-memoryless wiretap channel with a helping interferer: channel
// representation, mutual-information profiles, the (R1,R2)-plane rate
// regions, and the exact secrecy-rate optimizer for a fixed product input.

#ifndef WTHI_DMC_WHI_HPP
#define WTHI_DMC_WHI_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "wthi/gwt_hi.hpp"

namespace wthi {

// Finite-alphabet channel p(y1,y2|x1,x2), kernel indexed [x1][x2][y1][y2]
// flattened row-major.
class Dmc {
  public:
    Dmc(std::size_t n_x1, std::size_t n_x2, std::size_t n_y1, std::size_t n_y2,
        std::vector<double> kernel);

    std::size_t n_x1() const { return n_x1_; }
    std::size_t n_x2() const { return n_x2_; }
    std::size_t n_y1() const { return n_y1_; }
    std::size_t n_y2() const { return n_y2_; }

    double p(std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2) const {
        return kernel_[((x1 * n_x2_ + x2) * n_y1_ + y1) * n_y2_ + y2];
    }
    /// Marginal p(y1|x1,x2).
    double p_y1(std::size_t x1, std::size_t x2, std::size_t y1) const;
    /// Marginal p(y2|x1,x2).
    double p_y2(std::size_t x1, std::size_t x2, std::size_t y2) const;

    /// Parse {"nx1":..,"nx2":..,"ny1":..,"ny2":..,"kernel":[[[[...]]]]}.
    /// Validation failures report the offending (x1,x2) slice.
    static Dmc from_json(const std::string& text);
    std::string to_json() const;

  private:
    std::size_t n_x1_, n_x2_, n_y1_, n_y2_;
    std::vector<double> kernel_;
};

struct ProductInput {
    std::vector<double> px1;
    std::vector<double> px2;
};

// Rate split R1 = r1s + r1d of the stochastic encoder, plus the helper
// codebook rate r2.
struct RateTriple {
    double r1s = 0.0;
    double r1d = 0.0;
    double r2 = 0.0;
};

/// Mutual-information profiles at both receivers under a product input.
MiProfilePair mi_profile_dmc(const Dmc& ch, const ProductInput& input);

// Half-space a1*R1 + a2*R2 <= rhs in the (R1,R2) plane; (a1,a2) is one of
// (1,0),(0,1),(1,1),(-1,0),(0,-1). strict records the paper's open faces.
struct HalfSpace {
    double a1 = 0.0;
    double a2 = 0.0;
    double rhs = 0.0;
    bool strict = false;
};

struct Region {
    std::vector<HalfSpace> faces;

    /// Closure membership (strict faces treated as closed).
    bool contains(double r1, double r2, double tol = 1e-12) const;
    /// Vertices of the closure, by pairwise face intersection.
    std::vector<std::pair<double, double>> vertices() const;
};

struct RegionSet {
    Region r1_mac; // receiver decodes both codebooks
    Region r1_s;   // receiver treats the helper as noise
    Region r2_mac; // same pair at the eavesdropper
    Region r2_s;
};

RegionSet build_regions(const MiProfilePair& profiles);

struct FixedInputRate {
    double rate = 0.0;
    RateTriple triple;
};

/// Largest secret rate r1s over rate triples with (R1,R2) in the closure of
/// the receiver's union region and (r1d,r2) outside the eavesdropper's union
/// region. The eavesdropper complement is decomposed into at most six
/// polyhedral pieces; empty open pieces are discarded before taking
/// closures, and each receiver-piece crossing is maximized exactly by
/// vertex enumeration in (r1s, r1d, r2).
FixedInputRate theorem1_rate_fixed_input(const MiProfilePair& profiles);

struct DmcRateResult {
    double rate = 0.0;
    ProductInput input;
    RateTriple triple;
};

/// Maximizes theorem1_rate_fixed_input over a simplex lattice of product
/// inputs with step 1/grid_resolution per coordinate. Ties break toward the
/// lexicographically smallest distribution. threads <= 0 means hardware
/// parallelism.
DmcRateResult theorem1_rate(const Dmc& ch, unsigned grid_resolution, int threads = 0);

enum class InterferenceClass { VeryStrong, Strong, Weak, Mixed };

std::string to_string(InterferenceClass c);

/// Classification certified only over the tested profiles: VeryStrong if
/// I(X1;Y2) >= I(X1;Y1|X2) at every one, else Strong/Weak if the respective
/// inequality pairs hold at every one, else Mixed.
InterferenceClass classify_profiles(const std::vector<MiProfilePair>& profiles);

/// classify_profiles over mi_profile_dmc at each tested input.
InterferenceClass classify_interference(const Dmc& ch, const std::vector<ProductInput>& inputs);

/// Simplified strong-interference rate:
/// min[I(X1,X2;Y1)-I(X1,X2;Y2), I(X1;Y1|X2)-I(X1;Y2)], clamped at 0.
double strong_formula(const MiProfilePair& profiles);

/// Simplified weak-interference rate: max(Delta1, Delta2) with
/// Delta1 = I(X1;Y1|X2)-I(X1;Y2|X2), Delta2 = I(X1;Y1)-I(X1;Y2); clamped.
double weak_formula(const MiProfilePair& profiles);

/// All product distributions whose entries are multiples of 1/resolution.
std::vector<std::vector<double>> simplex_lattice(std::size_t alphabet, unsigned resolution);

} // namespace wthi

#endif
