#include "perron/simulate.hpp"

#include <cmath>
#include <map>

namespace perron {

namespace {

double direction_residual(const LatticeVector& prev, const LatticeVector& cur) {
    const Int sp = norm1(prev), sc = norm1(cur);
    if (sp == 0 || sc == 0) return 0.0;
    // || cur/sc - prev/sp ||_2 on the exact squared value
    BigInt num = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
        BigInt diff = BigInt(static_cast<long>(cur[i])) * static_cast<long>(sp) -
                      BigInt(static_cast<long>(prev[i])) * static_cast<long>(sc);
        num += diff * diff;
    }
    BigInt den = BigInt(static_cast<long>(sp)) * static_cast<long>(sc);
    return std::sqrt(make_rat(num, den * den).get_d());
}

}  // namespace

Trajectory simulate(const IntegerMap& map, const LatticeVector& x0, Int steps) {
    if (!map.in_domain(x0)) throw map_domain_error("simulate: x0 outside the map domain");

    Trajectory out;
    std::map<LatticeVector, std::size_t> seen;
    const AIMDConfig* aimd = map.as<AIMDConfig>();

    LatticeVector x = x0;
    out.rows.push_back(TrajectoryRow{0, x, norm1(x), 0.0, std::nullopt});
    seen.emplace(x, 0);

    for (Int step = 1; step <= steps; ++step) {
        LatticeVector next;
        std::optional<Rat> T;
        try {
            if (aimd) {
                AimdStep s = aimd_step(*aimd, x);
                next = std::move(s.next);
                T = std::move(s.T);
            } else {
                next = map.evaluate(x);
            }
        } catch (const map_domain_error& e) {
            out.reason = Trajectory::Termination::domain_exit;
            out.exit_detail = e.what();
            return out;
        }

        if (next == x) {
            out.reason = Trajectory::Termination::fixed_point;
            return out;
        }
        const double dir = direction_residual(x, next);
        x = std::move(next);
        out.rows.push_back(TrajectoryRow{step, x, norm1(x), dir, T});

        auto it = seen.find(x);
        if (it != seen.end()) {
            out.reason = Trajectory::Termination::cycle;
            out.cycle_start = it->second;
            return out;
        }
        seen.emplace(x, out.rows.size() - 1);

        if (aimd && norm1(x) != aimd->capacity) {
            // AIMD trajectories stay on the capacity sphere only when the
            // step refills it; a shortfall ends the event sequence.
            out.reason = Trajectory::Termination::domain_exit;
            out.exit_detail = "aimd: step left the capacity sphere";
            return out;
        }
    }
    out.reason = Trajectory::Termination::max_steps;
    return out;
}

}  // namespace perron
