#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace smoothsched {

using BigInt = boost::multiprecision::cpp_int;

/// Class sizes for the restricted lex-jump family:
///   a_0 = k^2, a_1 = k^3, a_h = ceil((a_{h-1} / a_{h-2} - 7/15) a_{h-1}),
/// stopped at z, the first h with a_h <= a_{h-1}. Evaluated in exact integer
/// arithmetic; a_h outgrows 64 bits already for moderate k.
struct ClassSizes {
    int k = 0;
    int z = 0;
    std::vector<BigInt> a;  ///< a_0 .. a_z

    /// sum_{h=0}^{z-1} a_h, the number of machines.
    BigInt machine_count() const;

    /// sum_{h=1}^{z} (a_h + 17 a_{h-1}), the number of jobs.
    BigInt job_count() const;
};

/// Throws InvalidArgument for k < 2.
ClassSizes recurrence_a(int k);

struct ClassSizeChecks {
    /// a_h / a_{h-1} <= k - (h - 1) * 2/5 for h = 1..z, checked exactly.
    bool ratio_decay = true;
    int first_ratio_violation = -1;
    /// z < 5k/2.
    bool class_count = true;
    /// machine count <= Gamma(ceil(5k/2) + 3), compared in log space.
    bool machine_count = true;
    double log_machine_count = 0.0;
    double log_gamma_bound = 0.0;

    bool all() const { return ratio_decay && class_count && machine_count; }
};

ClassSizeChecks check_class_sizes(const ClassSizes& sizes);

/// Natural logarithm of a positive big integer.
double log_big(const BigInt& value);

} // namespace smoothsched
