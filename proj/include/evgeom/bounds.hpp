#pragma once

// Closed-form upper bounds on (r,s)-set sizes, evaluated with exact
// integer roots. `value` is the floor of the bound; `real_value` is a
// floating approximation used only for ratio reporting.

#include <cstdint>
#include <string>

#include "evgeom/intmath.hpp"

namespace evgeom {

struct BoundResult {
    std::string kind;
    int n = 0;
    std::uint32_t q = 0;
    u64 value = 0;
    std::string exact_expression;
    double real_value = 0.0;
};

// (n, n-2)-sets: ( n!(q^{n+1}-1)(q^n-1) / ((q-1)(q^2-1)) )^{1/(n-1)} + n-2.
BoundResult bound_n_minus2(int n, std::uint32_t q);

// 5-general sets: ( sqrt(8q^n + q^2 - 6q + 1) + 3q - 5 ) / (2(q-1)).
BoundResult bound_5general(int n, std::uint32_t q);

// 4-general sets: ( sqrt(8q^{n+1} + q^2 - 6q + 1) + q - 3 ) / (2(q-1)).
BoundResult bound_4general(int n, std::uint32_t q);

}  // namespace evgeom
