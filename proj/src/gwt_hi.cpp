#include "wthi/gwt_hi.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wthi/info_measures.hpp"
#include "json.hpp"

namespace wthi {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::VeryStrong: return "VeryStrong";
        case Regime::Strong: return "Strong";
        case Regime::Weak: return "Weak";
    }
    return "?";
}

Regime classify_regime(double a, double p2) {
    if (a < 1.0) return Regime::Weak;
    if (a >= 1.0 + p2) return Regime::VeryStrong;
    return Regime::Strong;
}

MiProfilePair gaussian_mi_profile(double a, PowerAllocation alloc) {
    const double p1 = alloc.p1;
    const double p2 = alloc.p2;
    MiProfilePair out;
    // Receiver 1 sees X1 at unit gain, X2 at gain a.
    out.receiver.i1_given_2 = g(p1);
    out.receiver.i2_given_1 = g(a * p2);
    out.receiver.i_sum = g(p1 + a * p2);
    out.receiver.i1_alone = g(p1 / (1.0 + a * p2));
    out.receiver.i2_alone = g(a * p2 / (1.0 + p1));
    // The eavesdropper sees the roles of a swapped.
    out.eavesdropper.i1_given_2 = g(a * p1);
    out.eavesdropper.i2_given_1 = g(p2);
    out.eavesdropper.i_sum = g(a * p1 + p2);
    out.eavesdropper.i1_alone = g(a * p1 / (1.0 + p2));
    out.eavesdropper.i2_alone = g(p2 / (1.0 + a * p1));
    return out;
}

double wiretap_baseline(double a, double p1) {
    if (a >= 1.0) return 0.0;
    const double r = g(p1) - g(a * p1);
    return r > 0.0 ? r : 0.0;
}

double secrecy_rate(double a, PowerAllocation alloc) {
    const double p1 = alloc.p1;
    const double p2 = alloc.p2;
    double r = 0.0;
    if (a >= 1.0 + p2) {
        r = 0.0; // very strong interference
    } else if (a >= 1.0) {
        // Strong interference. The a == 1+p1 boundary belongs to the
        // decode-and-cancel branch (non-strict inequality).
        if (p1 < p2 && a > 1.0 + p1) {
            r = g(p1) - g(a * p1 / (1.0 + p2));
        } else if (p1 < p2) {
            r = g(p1 + a * p2) - g(a * p1 + p2);
        } else {
            r = 0.0;
        }
    } else {
        // Weak interference; p1 == p2 takes the no-helper-gain branch
        // (the paper's condition is strictly p1 > p2).
        if (p1 > p2) {
            r = g(p1 / (1.0 + a * p2)) - g(a * p1 / (1.0 + p2));
        } else {
            r = g(p1) - g(a * p1);
        }
    }
    return r > 0.0 ? r : 0.0;
}

PowerControlResult power_control(const GaussianWthi& ch) {
    PowerControlResult res;
    if (ch.a >= 1.0) {
        if (ch.p2_max > ch.a - 1.0) {
            res.alloc = {std::min(ch.p1_max, ch.a - 1.0), ch.p2_max};
        } else {
            res.alloc = {0.0, 0.0};
        }
    } else {
        const double p2_star = (std::sqrt(1.0 + (1.0 + ch.a) * ch.p1_max) - 1.0) / (1.0 + ch.a);
        res.alloc = {ch.p1_max, std::min(ch.p2_max, p2_star)};
    }
    res.rate = secrecy_rate(ch.a, res.alloc);
    return res;
}

double asymptotic_rate(double a) {
    if (!(a > 0.0)) {
        throw std::domain_error("asymptotic_rate requires a > 0");
    }
    return a >= 1.0 ? 0.5 * std::log2(a) : std::log2(1.0 / a);
}

std::vector<SweepRow> sweep(const GaussianWthi& ch, SweepVariable variable,
                            const std::vector<double>& grid, bool with_power_control) {
    if (grid.empty()) {
        throw std::invalid_argument("sweep grid is empty");
    }
    for (double v : grid) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("sweep grid values must be finite and >= 0");
        }
    }
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double v : grid) {
        GaussianWthi pt = ch;
        switch (variable) {
            case SweepVariable::Gain: pt.a = v; break;
            case SweepVariable::P1Max: pt.p1_max = v; break;
            case SweepVariable::P2Max: pt.p2_max = v; break;
        }
        SweepRow row;
        row.value = v;
        if (with_power_control) {
            const auto pc = power_control(pt);
            row.rate = pc.rate;
            row.p1 = pc.alloc.p1;
            row.p2 = pc.alloc.p2;
        } else {
            row.p1 = pt.p1_max;
            row.p2 = pt.p2_max;
            row.rate = secrecy_rate(pt.a, {row.p1, row.p2});
        }
        row.baseline = wiretap_baseline(pt.a, pt.p1_max);
        row.regime = classify_regime(pt.a, row.p2);
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "value,rate_bits,baseline_bits,regime,p1,p2\n";
    for (const auto& r : rows) {
        os << r.value << ',' << r.rate << ',' << r.baseline << ','
           << to_string(r.regime) << ',' << r.p1 << ',' << r.p2 << '\n';
    }
    return os.str();
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"value", r.value},
                       {"rate_bits", r.rate},
                       {"baseline_bits", r.baseline},
                       {"regime", to_string(r.regime)},
                       {"p1", r.p1},
                       {"p2", r.p2}});
    }
    return arr.dump();
}

} // namespace wthi
