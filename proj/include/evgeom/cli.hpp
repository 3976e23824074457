#pragma once

// Command-line orchestration: construct, verify, bounds, code export and
// distance measurement. run() takes a parsed configuration; run_cli()
// parses argv. Exit codes: 0 pass/success, 1 verification failure,
// 2 usage, I/O or budget errors.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "evgeom/intmath.hpp"

namespace evgeom {

struct RunConfig {
    std::string command;  // construct | verify-general | verify-rs | verify-spectrum |
                          // verify-cubic-lemma | verify-seven-lemma | verify-transitive |
                          // verify-complete | verify-affine | bounds | code-export | code-mindist
    std::string family;
    std::string kind;  // bounds kind: n2 | g5 | g4
    std::uint32_t q = 0;
    int n = 0;
    int r = 0, s = 0, k = 0;
    u64 budget = 2'000'000'000;
    int threads = 0;
    std::string input, output;
    bool census = false;
    bool json = false;
    bool with_group = true;
    bool unreduced = false;
    std::uint32_t modulus_index = 0;
};

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace evgeom
