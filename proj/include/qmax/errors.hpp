#pragma once

#include <stdexcept>
#include <string>

namespace qmax {

// Error taxonomy shared by the whole library. The CLI maps these to exit
// codes (usage error -> 2, resource limit -> 3).
struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct resource_limit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct precondition_violation : std::logic_error {
    using std::logic_error::logic_error;
};

// A condition the underlying theory forbids. Reaching one of these is a bug
// (or a falsified theorem) and is always a test failure.
struct internal_inconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

// Resource caps. All caps are overridable (CLI flags, test setup); the
// defaults keep every operation comfortably interactive: tables are
// O(size^2) and the worst exhaustive scans O(size^3).
struct Limits {
    int max_ring_size = 4096;
    int max_ideals = 20000;
    int max_intermediate_ring_size = 64;

    static Limits& global() {
        static Limits g;
        return g;
    }
};

inline void require(bool cond, const char* what) {
    if (!cond) throw internal_inconsistency(what);
}

}  // namespace qmax
