#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace perron {

/// Malformed inputs: dimension mismatch, zero vector where forbidden,
/// invalid config values. CLI maps these to exit code 1.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Slice-specific validation failures (c > 1/d, empty slice where one is
/// required).
struct invalid_slice : invalid_input {
    using invalid_input::invalid_input;
};

/// Point outside a map's declared domain (SIS box, AIMD capacity sphere,
/// custom-table coverage).
struct map_domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// A hypothesis of the theorem failed on the scanned slice. Carries the
/// violating witness so the caller can print or re-check it. CLI maps
/// these to exit code 2.
struct certification_error : std::runtime_error {
    enum class Kind {
        zero_image,               // some A(x) = 0 on the slice
        zero_positivity,          // min_i (Ax)_i / ||Ax||_1 = 0
        infinite_image_distance,  // finite d_H(x,y) but d_H(Ax,Ay) = inf
        empty_slice,
        internal,                 // argmin residual exceeded the bound
    };

    certification_error(Kind k, std::string msg, std::vector<long long> wx = {},
                        std::vector<long long> wy = {}, int index = -1)
        : std::runtime_error(std::move(msg)),
          kind(k),
          witness_x(std::move(wx)),
          witness_y(std::move(wy)),
          coordinate(index) {}

    Kind kind;
    std::vector<long long> witness_x;
    std::vector<long long> witness_y;  // second half of a pair witness, if any
    int coordinate;                    // violating coordinate, if any
};

/// Scan would exceed the configured pair cap; advises sampling mode.
struct too_large_error : std::runtime_error {
    too_large_error(std::string msg, unsigned long long pairs_needed, unsigned long long cap)
        : std::runtime_error(std::move(msg)), pairs(pairs_needed), cap(cap) {}
    unsigned long long pairs;
    unsigned long long cap;
};

}  // namespace perron
