#include "wthi/dmc_whi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "wthi/info_measures.hpp"
#include "json.hpp"

namespace wthi {

Dmc::Dmc(std::size_t n_x1, std::size_t n_x2, std::size_t n_y1, std::size_t n_y2,
         std::vector<double> kernel)
    : n_x1_(n_x1), n_x2_(n_x2), n_y1_(n_y1), n_y2_(n_y2), kernel_(std::move(kernel)) {
    if (n_x1_ < 1 || n_x2_ < 1 || n_y1_ < 1 || n_y2_ < 1) {
        throw std::invalid_argument("alphabet sizes must be >= 1");
    }
    if (kernel_.size() != n_x1_ * n_x2_ * n_y1_ * n_y2_) {
        throw std::invalid_argument("kernel size does not match alphabet sizes");
    }
    for (std::size_t x1 = 0; x1 < n_x1_; ++x1) {
        for (std::size_t x2 = 0; x2 < n_x2_; ++x2) {
            double sum = 0.0;
            for (std::size_t y1 = 0; y1 < n_y1_; ++y1) {
                for (std::size_t y2 = 0; y2 < n_y2_; ++y2) {
                    const double v = p(x1, x2, y1, y2);
                    if (!(v >= 0.0) || !std::isfinite(v)) {
                        throw std::invalid_argument(
                            "kernel slice (x1=" + std::to_string(x1) + ",x2=" +
                            std::to_string(x2) + ") has a negative or non-finite entry");
                    }
                    sum += v;
                }
            }
            if (std::abs(sum - 1.0) > kProbTol) {
                throw std::invalid_argument(
                    "kernel slice (x1=" + std::to_string(x1) + ",x2=" + std::to_string(x2) +
                    ") sums to " + std::to_string(sum) + ", expected 1");
            }
        }
    }
}

double Dmc::p_y1(std::size_t x1, std::size_t x2, std::size_t y1) const {
    double sum = 0.0;
    for (std::size_t y2 = 0; y2 < n_y2_; ++y2) sum += p(x1, x2, y1, y2);
    return sum;
}

double Dmc::p_y2(std::size_t x1, std::size_t x2, std::size_t y2) const {
    double sum = 0.0;
    for (std::size_t y1 = 0; y1 < n_y1_; ++y1) sum += p(x1, x2, y1, y2);
    return sum;
}

Dmc Dmc::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("channel JSON parse error: ") + e.what());
    }
    for (const char* key : {"nx1", "nx2", "ny1", "ny2", "kernel"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(std::string("channel JSON missing field: ") + key);
        }
    }
    const auto nx1 = j["nx1"].get<std::size_t>();
    const auto nx2 = j["nx2"].get<std::size_t>();
    const auto ny1 = j["ny1"].get<std::size_t>();
    const auto ny2 = j["ny2"].get<std::size_t>();
    const auto& k = j["kernel"];
    std::vector<double> kernel;
    kernel.reserve(nx1 * nx2 * ny1 * ny2);
    if (!k.is_array() || k.size() != nx1) {
        throw std::invalid_argument("kernel must be a 4-level array indexed [x1][x2][y1][y2]");
    }
    for (std::size_t x1 = 0; x1 < nx1; ++x1) {
        if (!k[x1].is_array() || k[x1].size() != nx2) {
            throw std::invalid_argument("kernel slice (x1=" + std::to_string(x1) +
                                        ") has wrong x2 dimension");
        }
        for (std::size_t x2 = 0; x2 < nx2; ++x2) {
            const auto& slice = k[x1][x2];
            if (!slice.is_array() || slice.size() != ny1) {
                throw std::invalid_argument("kernel slice (x1=" + std::to_string(x1) + ",x2=" +
                                            std::to_string(x2) + ") has wrong y1 dimension");
            }
            for (std::size_t y1 = 0; y1 < ny1; ++y1) {
                if (!slice[y1].is_array() || slice[y1].size() != ny2) {
                    throw std::invalid_argument("kernel slice (x1=" + std::to_string(x1) + ",x2=" +
                                                std::to_string(x2) + ") has wrong y2 dimension");
                }
                for (std::size_t y2 = 0; y2 < ny2; ++y2) {
                    kernel.push_back(slice[y1][y2].get<double>());
                }
            }
        }
    }
    return Dmc(nx1, nx2, ny1, ny2, std::move(kernel));
}

std::string Dmc::to_json() const {
    nlohmann::json k = nlohmann::json::array();
    for (std::size_t x1 = 0; x1 < n_x1_; ++x1) {
        nlohmann::json lx2 = nlohmann::json::array();
        for (std::size_t x2 = 0; x2 < n_x2_; ++x2) {
            nlohmann::json ly1 = nlohmann::json::array();
            for (std::size_t y1 = 0; y1 < n_y1_; ++y1) {
                nlohmann::json ly2 = nlohmann::json::array();
                for (std::size_t y2 = 0; y2 < n_y2_; ++y2) ly2.push_back(p(x1, x2, y1, y2));
                ly1.push_back(std::move(ly2));
            }
            lx2.push_back(std::move(ly1));
        }
        k.push_back(std::move(lx2));
    }
    nlohmann::json j{{"nx1", n_x1_}, {"nx2", n_x2_}, {"ny1", n_y1_}, {"ny2", n_y2_},
                     {"kernel", std::move(k)}};
    return j.dump();
}

namespace {

double entropy_raw(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

double clamp0(double v) { return v > 0.0 ? v : 0.0; }

// Profile at one receiver from the joint p(x1,x2,y) with independent inputs.
MiProfile profile_from_joint(const std::vector<double>& joint, std::size_t n1, std::size_t n2,
                             std::size_t ny, const std::vector<double>& px1,
                             const std::vector<double>& px2) {
    std::vector<double> py(ny, 0.0), px1y(n1 * ny, 0.0), px2y(n2 * ny, 0.0);
    for (std::size_t x1 = 0; x1 < n1; ++x1) {
        for (std::size_t x2 = 0; x2 < n2; ++x2) {
            for (std::size_t y = 0; y < ny; ++y) {
                const double v = joint[(x1 * n2 + x2) * ny + y];
                py[y] += v;
                px1y[x1 * ny + y] += v;
                px2y[x2 * ny + y] += v;
            }
        }
    }
    const double h1 = entropy_raw(px1);
    const double h2 = entropy_raw(px2);
    const double hy = entropy_raw(py);
    const double h1y = entropy_raw(px1y);
    const double h2y = entropy_raw(px2y);
    const double hall = entropy_raw(joint);

    MiProfile pr;
    pr.i1_given_2 = clamp0(h1 + h2y - hall);
    pr.i2_given_1 = clamp0(h2 + h1y - hall);
    pr.i_sum = clamp0(h1 + h2 + hy - hall);
    pr.i1_alone = clamp0(h1 + hy - h1y);
    pr.i2_alone = clamp0(h2 + hy - h2y);
    return pr;
}

} // namespace

MiProfilePair mi_profile_dmc(const Dmc& ch, const ProductInput& input) {
    if (input.px1.size() != ch.n_x1() || input.px2.size() != ch.n_x2()) {
        throw std::invalid_argument("input distribution dimensions do not match the channel");
    }
    validate_prob_vector(input.px1);
    validate_prob_vector(input.px2);

    const std::size_t n1 = ch.n_x1(), n2 = ch.n_x2();
    std::vector<double> joint1(n1 * n2 * ch.n_y1(), 0.0);
    std::vector<double> joint2(n1 * n2 * ch.n_y2(), 0.0);
    for (std::size_t x1 = 0; x1 < n1; ++x1) {
        for (std::size_t x2 = 0; x2 < n2; ++x2) {
            const double px = input.px1[x1] * input.px2[x2];
            for (std::size_t y1 = 0; y1 < ch.n_y1(); ++y1) {
                joint1[(x1 * n2 + x2) * ch.n_y1() + y1] += px * ch.p_y1(x1, x2, y1);
            }
            for (std::size_t y2 = 0; y2 < ch.n_y2(); ++y2) {
                joint2[(x1 * n2 + x2) * ch.n_y2() + y2] += px * ch.p_y2(x1, x2, y2);
            }
        }
    }
    MiProfilePair out;
    out.receiver = profile_from_joint(joint1, n1, n2, ch.n_y1(), input.px1, input.px2);
    out.eavesdropper = profile_from_joint(joint2, n1, n2, ch.n_y2(), input.px1, input.px2);
    return out;
}

bool Region::contains(double r1, double r2, double tol) const {
    for (const auto& f : faces) {
        if (f.a1 * r1 + f.a2 * r2 > f.rhs + tol) return false;
    }
    return true;
}

std::vector<std::pair<double, double>> Region::vertices() const {
    std::vector<std::pair<double, double>> verts;
    const double tol = 1e-9;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        for (std::size_t j = i + 1; j < faces.size(); ++j) {
            const auto& a = faces[i];
            const auto& b = faces[j];
            const double det = a.a1 * b.a2 - a.a2 * b.a1;
            if (std::abs(det) < 1e-12) continue;
            const double r1 = (a.rhs * b.a2 - a.a2 * b.rhs) / det;
            const double r2 = (a.a1 * b.rhs - a.rhs * b.a1) / det;
            if (!contains(r1, r2, tol)) continue;
            bool dup = false;
            for (const auto& v : verts) {
                if (std::abs(v.first - r1) < tol && std::abs(v.second - r2) < tol) {
                    dup = true;
                    break;
                }
            }
            if (!dup) verts.emplace_back(r1, r2);
        }
    }
    return verts;
}

RegionSet build_regions(const MiProfilePair& profiles) {
    const MiProfile& r = profiles.receiver;
    const MiProfile& e = profiles.eavesdropper;
    RegionSet rs;
    rs.r1_mac.faces = {{-1, 0, 0, false},
                       {0, -1, 0, false},
                       {1, 0, r.i1_given_2, false},
                       {0, 1, r.i2_given_1, false},
                       {1, 1, r.i_sum, false}};
    rs.r1_s.faces = {{-1, 0, 0, false},
                     {0, -1, 0, false},
                     {1, 0, r.i1_alone, false},
                     {0, -1, -r.i2_given_1, true}}; // R2 > I(X2;Y1|X1)
    rs.r2_mac.faces = {{-1, 0, 0, false},
                       {0, -1, 0, false},
                       {1, 0, e.i1_given_2, true},
                       {0, 1, e.i2_given_1, true},
                       {1, 1, e.i_sum, true}};
    rs.r2_s.faces = {{-1, 0, 0, false},
                     {0, -1, 0, false},
                     {1, 0, e.i1_alone, true},
                     {0, -1, -e.i2_given_1, true}};
    return rs;
}

namespace {

// Constraint cs*r1s + cd*r1d + c2*r2 <= rhs.
struct Constraint {
    double cs, cd, c2, rhs;
};

struct Vertex3 {
    double r1s, r1d, r2;
};

// Exact maximization of r1s over a bounded 3-variable polyhedron by
// enumerating plane-triple intersections.
bool maximize_r1s(const std::vector<Constraint>& cons, Vertex3& best) {
    bool found = false;
    const std::size_t n = cons.size();
    const double feas_tol = 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const Constraint& a = cons[i];
                const Constraint& b = cons[j];
                const Constraint& c = cons[k];
                const double det = a.cs * (b.cd * c.c2 - b.c2 * c.cd) -
                                   a.cd * (b.cs * c.c2 - b.c2 * c.cs) +
                                   a.c2 * (b.cs * c.cd - b.cd * c.cs);
                if (std::abs(det) < 1e-12) continue;
                const double xs = (a.rhs * (b.cd * c.c2 - b.c2 * c.cd) -
                                   a.cd * (b.rhs * c.c2 - b.c2 * c.rhs) +
                                   a.c2 * (b.rhs * c.cd - b.cd * c.rhs)) / det;
                const double xd = (a.cs * (b.rhs * c.c2 - b.c2 * c.rhs) -
                                   a.rhs * (b.cs * c.c2 - b.c2 * c.cs) +
                                   a.c2 * (b.cs * c.rhs - b.rhs * c.cs)) / det;
                const double x2 = (a.cs * (b.cd * c.rhs - b.rhs * c.cd) -
                                   a.cd * (b.cs * c.rhs - b.rhs * c.cs) +
                                   a.rhs * (b.cs * c.cd - b.cd * c.cs)) / det;
                bool feasible = true;
                for (const auto& f : cons) {
                    if (f.cs * xs + f.cd * xd + f.c2 * x2 > f.rhs + feas_tol) {
                        feasible = false;
                        break;
                    }
                }
                if (!feasible) continue;
                if (!found || xs > best.r1s) {
                    best = {xs, xd, x2};
                    found = true;
                }
            }
        }
    }
    return found;
}

} // namespace

FixedInputRate theorem1_rate_fixed_input(const MiProfilePair& profiles) {
    const MiProfile& r = profiles.receiver;
    const MiProfile& e = profiles.eavesdropper;

    // r2 is capped for enumeration only; the objective does not depend on it.
    const double cap =
        std::max({r.i2_given_1, r.i_sum, e.i2_given_1, e.i_sum}) + 1.0;

    const std::vector<Constraint> base = {{-1, 0, 0, 0},  // r1s >= 0
                                          {0, -1, 0, 0},  // r1d >= 0
                                          {0, 0, -1, 0},  // r2 >= 0
                                          {0, 0, 1, cap}};

    // Receiver pieces over (R1, R2) with R1 = r1s + r1d.
    const std::vector<Constraint> rx_mac = {{1, 1, 0, r.i1_given_2},
                                            {0, 0, 1, r.i2_given_1},
                                            {1, 1, 1, r.i_sum}};
    const std::vector<Constraint> rx_noise = {{1, 1, 0, r.i1_alone},
                                              {0, 0, -1, -r.i2_given_1}};

    // Complement of the eavesdropper union over (r1d, r2):
    //   not-MAC: r1d >= e1 (C1) or r2 >= e2 (C2) or r1d+r2 >= es (C3)
    //   not-S:   r1d >= e1a (D1) or r2 <= e2 (D2)
    // Pieces are formed from the paper's strict inequalities, so a piece
    // whose open interior is empty contributes nothing; only then is the
    // closure taken. C2&D2 is always empty and the D2 pieces require e2 > 0.
    const Constraint c1{0, -1, 0, -e.i1_given_2};
    const Constraint c2{0, 0, -1, -e.i2_given_1};
    const Constraint c3{0, -1, -1, -e.i_sum};
    const Constraint d1{0, -1, 0, -e.i1_alone};
    const Constraint d2{0, 0, 1, e.i2_given_1};

    std::vector<std::vector<Constraint>> eve_pieces;
    eve_pieces.push_back({c1, d1});
    eve_pieces.push_back({c2, d1});
    eve_pieces.push_back({c3, d1});
    if (e.i2_given_1 > 0.0) {
        eve_pieces.push_back({c1, d2});
        eve_pieces.push_back({c3, d2});
    }

    FixedInputRate out;
    bool found = false;
    for (const auto* rx : {&rx_mac, &rx_noise}) {
        for (const auto& eve : eve_pieces) {
            std::vector<Constraint> cons = base;
            cons.insert(cons.end(), rx->begin(), rx->end());
            cons.insert(cons.end(), eve.begin(), eve.end());
            Vertex3 v{};
            if (!maximize_r1s(cons, v)) continue;
            if (!found || v.r1s > out.rate) {
                out.rate = v.r1s;
                out.triple = {v.r1s, v.r1d, v.r2};
                found = true;
            }
        }
    }
    if (!found || out.rate < 0.0) {
        return {0.0, {0.0, 0.0, 0.0}};
    }
    out.rate = clamp0(out.rate);
    out.triple.r1s = out.rate;
    return out;
}

std::vector<std::vector<double>> simplex_lattice(std::size_t alphabet, unsigned resolution) {
    if (alphabet < 1 || resolution < 1) {
        throw std::invalid_argument("simplex_lattice needs alphabet >= 1 and resolution >= 1");
    }
    std::vector<std::vector<double>> out;
    std::vector<unsigned> counts(alphabet, 0);
    // Lexicographic enumeration of compositions of `resolution`.
    auto rec = [&](auto&& self, std::size_t idx, unsigned remaining) -> void {
        if (idx + 1 == alphabet) {
            counts[idx] = remaining;
            std::vector<double> p(alphabet);
            for (std::size_t i = 0; i < alphabet; ++i) {
                p[i] = static_cast<double>(counts[i]) / resolution;
            }
            out.push_back(std::move(p));
            return;
        }
        for (unsigned c = 0; c <= remaining; ++c) {
            counts[idx] = c;
            self(self, idx + 1, remaining - c);
        }
    };
    rec(rec, 0, resolution);
    return out;
}

DmcRateResult theorem1_rate(const Dmc& ch, unsigned grid_resolution, int threads) {
    if (grid_resolution < 1) {
        throw std::invalid_argument("grid_resolution must be >= 1");
    }
    const auto grid1 = simplex_lattice(ch.n_x1(), grid_resolution);
    const auto grid2 = simplex_lattice(ch.n_x2(), grid_resolution);
    const std::size_t total = grid1.size() * grid2.size();

    std::vector<FixedInputRate> results(total);
    auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const ProductInput input{grid1[idx / grid2.size()], grid2[idx % grid2.size()]};
            results[idx] = theorem1_rate_fixed_input(mi_profile_dmc(ch, input));
        }
    };

    unsigned n_workers = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<std::size_t>(n_workers, total);
    if (n_workers <= 1) {
        eval_range(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + n_workers - 1) / n_workers;
        for (unsigned w = 0; w < n_workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(total, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(eval_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    // Strict comparison in index order keeps the lexicographically smallest
    // maximizing distribution regardless of worker count.
    std::size_t best = 0;
    for (std::size_t idx = 1; idx < total; ++idx) {
        if (results[idx].rate > results[best].rate) best = idx;
    }
    DmcRateResult out;
    out.rate = results[best].rate;
    out.input = {grid1[best / grid2.size()], grid2[best % grid2.size()]};
    out.triple = results[best].triple;
    return out;
}

std::string to_string(InterferenceClass c) {
    switch (c) {
        case InterferenceClass::VeryStrong: return "VeryStrong";
        case InterferenceClass::Strong: return "Strong";
        case InterferenceClass::Weak: return "Weak";
        case InterferenceClass::Mixed: return "Mixed";
    }
    return "?";
}

InterferenceClass classify_profiles(const std::vector<MiProfilePair>& profiles) {
    if (profiles.empty()) {
        throw std::invalid_argument("classify needs at least one tested profile");
    }
    bool very_strong = true, strong = true, weak = true;
    for (const auto& p : profiles) {
        const MiProfile& r = p.receiver;
        const MiProfile& e = p.eavesdropper;
        if (!(e.i1_alone >= r.i1_given_2 - kEqTol)) very_strong = false;
        if (!(r.i1_given_2 <= e.i1_given_2 + kEqTol && e.i2_given_1 <= r.i2_given_1 + kEqTol)) {
            strong = false;
        }
        if (!(r.i1_given_2 >= e.i1_given_2 - kEqTol && e.i2_given_1 >= r.i2_given_1 - kEqTol)) {
            weak = false;
        }
    }
    if (very_strong) return InterferenceClass::VeryStrong;
    if (strong) return InterferenceClass::Strong;
    if (weak) return InterferenceClass::Weak;
    return InterferenceClass::Mixed;
}

InterferenceClass classify_interference(const Dmc& ch, const std::vector<ProductInput>& inputs) {
    if (inputs.empty()) {
        throw std::invalid_argument("classify_interference needs at least one input");
    }
    std::vector<MiProfilePair> profiles;
    profiles.reserve(inputs.size());
    for (const auto& in : inputs) profiles.push_back(mi_profile_dmc(ch, in));
    return classify_profiles(profiles);
}

double strong_formula(const MiProfilePair& profiles) {
    const double v = std::min(profiles.receiver.i_sum - profiles.eavesdropper.i_sum,
                              profiles.receiver.i1_given_2 - profiles.eavesdropper.i1_alone);
    return clamp0(v);
}

double weak_formula(const MiProfilePair& profiles) {
    const double d1 = profiles.receiver.i1_given_2 - profiles.eavesdropper.i1_given_2;
    const double d2 = profiles.receiver.i1_alone - profiles.eavesdropper.i1_alone;
    return clamp0(std::max(d1, d2));
}

} // namespace wthi
