#pragma once

#include "normord/highprec.hpp"

#include <string>

namespace normord {

// Outcome of comparing two independently computed sides of an identity.
// Exact checks never carry a tolerance; numeric checks record the precision,
// the tolerance and the largest relative deviation seen.
struct CheckResult {
    bool pass = true;
    bool numeric = false;
    std::string first_mismatch;
    unsigned digits = 0;
    HighPrecReal tolerance{0L};
    HighPrecReal max_deviation{0L};

    static CheckResult exact() { return {}; }
    static CheckResult numeric_mode(unsigned digits, const HighPrecReal& tol) {
        CheckResult c;
        c.numeric = true;
        c.digits = digits;
        c.tolerance = tol;
        c.max_deviation = HighPrecReal(0L, digits);
        return c;
    }

    // Keeps the first reported mismatch.
    void fail(std::string what) {
        if (pass) first_mismatch = std::move(what);
        pass = false;
    }
    // Records a relative deviation and fails when it reaches the tolerance.
    void deviation(const HighPrecReal& dev, const std::string& where) {
        if (max_deviation < dev) max_deviation = dev;
        if (!(dev < tolerance)) fail(where + ": relative deviation " + dev.to_string(6));
    }
    void merge(const CheckResult& other) {
        if (!other.pass) fail(other.first_mismatch);
        if (other.numeric && max_deviation < other.max_deviation) max_deviation = other.max_deviation;
    }
};

}  // namespace normord
