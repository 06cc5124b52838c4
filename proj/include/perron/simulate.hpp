#pragma once

/**
 * @file simulate.hpp
 * @brief Trajectory iteration x(n+1) = A(x(n)) with fixed-point and cycle
 *        detection; AIMD steps carry their event time T.
 */

#include <optional>
#include <string>
#include <vector>

#include "perron/maps.hpp"

namespace perron {

struct TrajectoryRow {
    Int step = 0;
    LatticeVector x;
    Int l1 = 0;
    /// || x(n)/||x(n)||_1 - x(n-1)/||x(n-1)||_1 ||_2, 0 for the first row
    /// and when either norm is zero.
    double direction_residual = 0.0;
    std::optional<Rat> aimd_T;  // event time of the step that produced this row
};

struct Trajectory {
    enum class Termination { max_steps, fixed_point, cycle, domain_exit };

    std::vector<TrajectoryRow> rows;
    Termination reason = Termination::max_steps;
    std::size_t cycle_start = 0;   // when reason == cycle
    std::string exit_detail;       // when reason == domain_exit
};

Trajectory simulate(const IntegerMap& map, const LatticeVector& x0, Int steps);

}  // namespace perron
