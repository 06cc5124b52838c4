#include "perron/models.hpp"

#include <algorithm>
#include <limits>

namespace perron {

// ----------------------------------------------------------------------
// SIS
// ----------------------------------------------------------------------

void SISConfig::validate() const {
    const int d = dim();
    if (d < 1) throw invalid_input("sis: empty config");
    if (static_cast<int>(delta_prime.size()) != d || static_cast<int>(B.size()) != d)
        throw invalid_input("sis: field sizes disagree");
    for (Int m : M)
        if (m < 1) throw invalid_input("sis: populations must be >= 1");
    for (const Rat& v : delta_prime)
        if (v < 0 || v > 1) throw invalid_input("sis: delta' outside [0,1]");
    for (const auto& row : B) {
        if (static_cast<int>(row.size()) != d) throw invalid_input("sis: B is not d x d");
        for (const Rat& v : row)
            if (v < 0) throw invalid_input("sis: negative contact rate");
    }
}

Int SISConfig::min_population() const { return *std::min_element(M.begin(), M.end()); }

Rat SISConfig::delta_lo() const { return *std::min_element(delta_prime.begin(), delta_prime.end()); }
Rat SISConfig::delta_hi() const { return *std::max_element(delta_prime.begin(), delta_prime.end()); }

Rat SISConfig::b_lo() const {
    Rat m = B[0][0];
    for (const auto& row : B)
        for (const Rat& v : row) m = std::min(m, v);
    return m;
}

Rat SISConfig::b_hi() const {
    Rat m = B[0][0];
    for (const auto& row : B)
        for (const Rat& v : row) m = std::max(m, v);
    return m;
}

Rat SISConfig::ratio_lo() const {
    const Int lo = min_population();
    const Int hi = *std::max_element(M.begin(), M.end());
    return make_rat(lo, hi);
}

Rat SISConfig::ratio_hi() const {
    const Int lo = min_population();
    const Int hi = *std::max_element(M.begin(), M.end());
    return make_rat(hi, lo);
}

bool SISConfig::in_domain(const LatticeVector& x) const {
    if (static_cast<int>(x.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (x[i] < 0 || x[i] > M[i]) return false;
    return true;
}

RationalVector sis_pressure(const SISConfig& cfg, const LatticeVector& x) {
    if (!cfg.in_domain(x))
        throw map_domain_error("sis: point outside the population box");
    const int d = cfg.dim();
    RationalVector P(d);
    for (int i = 0; i < d; ++i) {
        Rat contact = 0;
        for (int j = 0; j < d; ++j)
            contact += cfg.B[i][j] * make_rat(x[j], cfg.M[j]);
        P[i] = cfg.delta_prime[i] * static_cast<long>(x[i]) +
               contact * Rat(static_cast<long>(cfg.M[i] - x[i]));
    }
    return P;
}

LatticeVector sis_evaluate(const SISConfig& cfg, const LatticeVector& x) {
    RationalVector P = sis_pressure(cfg, x);
    LatticeVector out(cfg.dim());
    for (int i = 0; i < cfg.dim(); ++i)
        out[i] = std::min(cfg.M[i], ceil_rat_int(P[i]));
    return out;
}

SISConstants sis_constants(const SISConfig& cfg) {
    cfg.validate();
    const Rat dl = cfg.delta_lo(), dh = cfg.delta_hi();
    const Rat bl = cfg.b_lo(), bh = cfg.b_hi();
    const Rat rl = cfg.ratio_lo(), rh = cfg.ratio_hi();
    if (dl <= 0 || bl <= 0)
        throw invalid_input("sis: closed-form constants need delta_* > 0 and B_* > 0");

    const long d = cfg.dim();
    const Rat upper = dh + rh * bh + 1;        // delta* + R* B* + 1
    const Rat rlbl = rl * bl;
    const Rat lower = std::min(dl, rlbl);  // min{delta_*, R_* B_*}

    SISConstants out;
    const Rat dl_sq = dl * dl;
    const Rat rlbl_sq = rlbl * rlbl;
    out.L = 4 * upper * (dh + rh * bh * d + bh * d + 2) / std::min(dl_sq, rlbl_sq);
    out.a = lower * d / 2;
    out.b = upper * d;
    out.c = lower / (2 * d * upper);
    out.k_max_domain = cfg.min_population();
    out.k_max_lipschitz = Rat(static_cast<long>(out.k_max_domain)) / upper;
    return out;
}

// ----------------------------------------------------------------------
// AIMD
// ----------------------------------------------------------------------

Rat PiecewiseAffine::eval(const Rat& t) const {
    if (pieces.empty()) throw invalid_input("piecewise-affine function with no pieces");
    Rat best = pieces[0].slope * t + pieces[0].intercept;
    for (std::size_t p = 1; p < pieces.size(); ++p) {
        const Rat v = pieces[p].slope * t + pieces[p].intercept;
        if (v < best) best = v;
    }
    return best;
}

bool PiecewiseAffine::nondecreasing() const {
    return std::all_of(pieces.begin(), pieces.end(),
                       [](const Piece& p) { return p.slope >= 0; });
}

bool PiecewiseAffine::eventually_constant() const {
    return std::any_of(pieces.begin(), pieces.end(),
                       [](const Piece& p) { return p.slope == 0; });
}

Rat PiecewiseAffine::limit_at_infinity() const {
    Rat best;
    bool found = false;
    for (const Piece& p : pieces) {
        if (p.slope != 0) continue;
        if (!found || p.intercept < best) {
            best = p.intercept;
            found = true;
        }
    }
    if (!found) throw std::logic_error("limit of a strictly increasing function");
    return best;
}

void AIMDConfig::validate() const {
    const int d = dim();
    if (d < 1) throw invalid_input("aimd: no users");
    if (static_cast<int>(B.size()) != d) throw invalid_input("aimd: A/B sizes disagree");
    if (capacity < 1) throw invalid_input("aimd: capacity must be >= 1");
    for (const auto& f : A) {
        if (f.pieces.empty()) throw invalid_input("aimd: A_i has no pieces");
        // concave on [0, k]: nonnegative at both endpoints suffices
        if (f.eval(0) < 0 || f.eval(Rat(static_cast<long>(capacity))) < 0)
            throw invalid_input("aimd: A_i negative on [0, capacity]");
    }
    for (const auto& f : B) {
        if (f.pieces.empty()) throw invalid_input("aimd: B_i has no pieces");
        if (!f.nondecreasing()) throw invalid_input("aimd: B_i must be nondecreasing");
        if (f.eval(0) < 0) throw invalid_input("aimd: B_i negative at 0");
    }
}

namespace {

// Largest T with q + B(T) <= n; nullopt when even T = 0 fails, +inf
// (signaled via the bool) when the level is never crossed.
struct LevelSolution {
    bool unbounded = false;
    Rat T;
};

std::optional<LevelSolution> solve_level(const PiecewiseAffine& B, const Rat& q, long n) {
    // q + min_p (s_p T + t_p) <= n  iff  some piece satisfies s_p T + t_p <= n - q.
    const Rat target = Rat(n) - q;
    bool any = false;
    LevelSolution out;
    for (const auto& p : B.pieces) {
        if (p.slope == 0) {
            if (p.intercept <= target) {
                out.unbounded = true;
                return out;
            }
            continue;
        }
        Rat T = (target - p.intercept) / p.slope;
        if (T < 0) continue;
        if (!any || T > out.T) {
            out.T = T;
            any = true;
        }
    }
    if (!any) {
        // No positive-slope piece reaches the level with T >= 0; T = 0 may
        // still satisfy it directly.
        if (B.eval(0) + q <= Rat(n)) {
            out.T = 0;
            return out;
        }
        return std::nullopt;
    }
    return out;
}

}  // namespace

AimdStep aimd_step(const AIMDConfig& cfg, const LatticeVector& x) {
    const int d = cfg.dim();
    if (static_cast<int>(x.size()) != d) throw invalid_input("aimd: dimension mismatch");
    if (norm1(x) != cfg.capacity)
        throw map_domain_error("aimd: point off the capacity sphere");

    std::vector<Rat> q(d);
    for (int i = 0; i < d; ++i) q[i] = cfg.A[i].eval(Rat(static_cast<long>(x[i])));

    const auto sum_at = [&](const Rat& T) {
        Int s = 0;
        for (int i = 0; i < d; ++i) s += ceil_rat_int(q[i] + cfg.B[i].eval(T));
        return s;
    };

    if (sum_at(0) > cfg.capacity)
        throw map_domain_error("aimd: infeasible step (capacity exceeded at T = 0)");

    // Unbounded T: every B_i levels off and the limiting sum stays within
    // capacity.
    bool all_level = true;
    for (const auto& f : cfg.B) all_level = all_level && f.eventually_constant();
    if (all_level) {
        Int s = 0;
        for (int i = 0; i < d; ++i)
            s += ceil_rat_int(q[i] + cfg.B[i].limit_at_infinity());
        if (s <= cfg.capacity)
            throw map_domain_error("aimd: unbounded T (release laws level off below capacity)");
    }

    // Candidate event times: for each user, each integer level its term can
    // reach; T* is the largest candidate keeping the total within capacity.
    std::vector<Rat> candidates{Rat(0)};
    for (int i = 0; i < d; ++i) {
        const long base = static_cast<long>(ceil_rat_int(q[i] + cfg.B[i].eval(0)));
        for (long n = base; n <= base + cfg.capacity; ++n) {
            auto sol = solve_level(cfg.B[i], q[i], n);
            if (sol && !sol->unbounded && sol->T > 0) candidates.push_back(sol->T);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // sum_at is nondecreasing in T: binary search the last admissible one.
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (sum_at(candidates[mid]) <= cfg.capacity) lo = mid;
        else hi = mid - 1;
    }
    const Rat T = candidates[lo];

    // Maximality: the next candidate (there is one unless T was unbounded,
    // handled above) must break capacity.
    if (lo + 1 < candidates.size() && sum_at(candidates[lo + 1]) <= cfg.capacity)
        throw std::logic_error("aimd: breakpoint scan missed a jump");

    AimdStep out;
    out.T = T;
    out.next.resize(d);
    for (int i = 0; i < d; ++i) out.next[i] = ceil_rat_int(q[i] + cfg.B[i].eval(T));
    return out;
}

double aimd_residual_bound(const Rat& a, const Rat& c, int d, Int k) {
    if (a <= 0 || c <= 0) throw invalid_input("aimd bound needs a > 0 and c > 0");
    if (d < 1 || k < 1) throw invalid_input("aimd bound needs d >= 1 and k >= 1");
    const Rat L = 1 + 1 / (a * c);
    const Rat lead = 4 * L * d / (c * c);
    return (rat_to_double(lead) + 2.0 * std::sqrt(static_cast<double>(d))) /
           static_cast<double>(k);
}

// ----------------------------------------------------------------------
// Interference
// ----------------------------------------------------------------------

void InterferenceConfig::validate() const {
    const int d = users(), m = bases();
    if (d < 1 || m < 1) throw invalid_input("interference: empty config");
    if (static_cast<int>(h.size()) != m) throw invalid_input("interference: h is not bases x users");
    for (const auto& row : h) {
        if (static_cast<int>(row.size()) != d)
            throw invalid_input("interference: h is not bases x users");
        for (Int v : row)
            if (v < 1) throw invalid_input("interference: gains must be >= 1");
    }
    for (Int v : sigma)
        if (v < 1) throw invalid_input("interference: noise must be >= 1");
    for (Int v : gamma)
        if (v < 0) throw invalid_input("interference: negative target");
    if (static_cast<int>(assignment.size()) != d)
        throw invalid_input("interference: assignment size mismatch");
    for (int j = 0; j < d; ++j) {
        const Int base = assignment[j];
        if (base < 1 || base > m) throw invalid_input("interference: assignment out of range");
        if (mode == Mode::integral && gamma[j] % h[base - 1][j] != 0)
            throw invalid_input(
                "interference: integral mode needs h_{a_j,j} | gamma_j (use ceiling mode)");
    }
}

LatticeVector interference_evaluate(const InterferenceConfig& cfg, const LatticeVector& x,
                                    bool* ceiling_applied) {
    const int d = cfg.users();
    if (static_cast<int>(x.size()) != d) throw invalid_input("interference: dimension mismatch");
    for (Int v : x)
        if (v < 0) throw invalid_input("interference: negative power");
    if (ceiling_applied) *ceiling_applied = false;

    LatticeVector out(d);
    for (int j = 0; j < d; ++j) {
        const int base = static_cast<int>(cfg.assignment[j]) - 1;
        Int interference = cfg.sigma[base];
        for (int i = 0; i < d; ++i)
            if (i != j) interference += cfg.h[base][i] * x[i];
        const Int num = cfg.gamma[j] * interference;
        const Int den = cfg.h[base][j];
        if (cfg.mode == InterferenceConfig::Mode::integral) {
            // validated: den | gamma_j, hence den | num
            out[j] = num / den;
        } else {
            out[j] = num / den;
            if (num % den != 0) {
                out[j] += 1;
                if (ceiling_applied) *ceiling_applied = true;
            }
        }
    }
    return out;
}

FeasibilityResult feasibility_check(const InterferenceConfig& cfg, const LatticeVector& x) {
    LatticeVector I = interference_evaluate(cfg, x);
    FeasibilityResult out;
    out.feasible = true;
    out.factor = 0;
    for (int j = 0; j < cfg.users(); ++j) {
        if (I[j] > x[j]) out.feasible = false;
        if (x[j] > 0) {
            const Rat ratio = make_rat(I[j], x[j]);
            if (ratio > out.factor) out.factor = ratio;
        } else if (I[j] > 0) {
            out.factor_infinite = true;
        }
    }
    return out;
}

}  // namespace perron
