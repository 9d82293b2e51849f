#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <mpfr.h>

namespace ciani {

struct SelftestResult {
    int checks = 0;
    int failures = 0;
};

// Runs one invariant suite ("algebra", "counting", "theta", "klein") or
// "all", printing one ok/FAIL line per check. Randomized checks draw from
// the given seed, so a fixed seed gives byte-identical output. The theta
// and klein suites require prec >= 64.
SelftestResult run_selftest(const std::string& suite, mpfr_prec_t prec,
                            int workers, std::uint64_t seed, std::ostream& out);

}  // namespace ciani
