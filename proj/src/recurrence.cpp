#include "smoothsched/recurrence.hpp"

#include "smoothsched/errors.hpp"

#include <cmath>

namespace smoothsched {

BigInt ClassSizes::machine_count() const {
    BigInt total = 0;
    for (int h = 0; h < z; ++h) total += a[h];
    return total;
}

BigInt ClassSizes::job_count() const {
    BigInt total = 0;
    for (int h = 1; h <= z; ++h) total += a[h] + 17 * a[h - 1];
    return total;
}

ClassSizes recurrence_a(int k) {
    if (k < 2) throw InvalidArgument("recurrence needs k >= 2");
    ClassSizes out;
    out.k = k;
    const BigInt kk = k;
    out.a = {kk * kk, kk * kk * kk};
    // a_1 / a_0 = k > 1, so the first candidate stop is h = 2
    for (int h = 2;; ++h) {
        const BigInt prev = out.a[h - 1];
        const BigInt prev2 = out.a[h - 2];
        // ceil((15 prev^2 - 7 prev prev2) / (15 prev2)); numerator > 0 while prev > prev2
        const BigInt numerator = 15 * prev * prev - 7 * prev * prev2;
        const BigInt denominator = 15 * prev2;
        out.a.push_back((numerator + denominator - 1) / denominator);
        if (out.a[h] <= prev) {
            out.z = h;
            break;
        }
    }
    return out;
}

double log_big(const BigInt& value) {
    if (value <= 0) throw InvalidArgument("logarithm of a non-positive integer");
    const unsigned bits = boost::multiprecision::msb(value);
    if (bits < 60) return std::log(value.convert_to<double>());
    const unsigned shift = bits - 60;
    const BigInt top = value >> shift;
    return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

ClassSizeChecks check_class_sizes(const ClassSizes& sizes) {
    ClassSizeChecks out;
    const int k = sizes.k;
    for (int h = 1; h <= sizes.z; ++h) {
        // 5 a_h <= (5k - 2(h - 1)) a_{h-1}
        if (5 * sizes.a[h] > (5 * k - 2 * (h - 1)) * sizes.a[h - 1]) {
            out.ratio_decay = false;
            if (out.first_ratio_violation < 0) out.first_ratio_violation = h;
        }
    }
    out.class_count = 2 * sizes.z < 5 * k;
    const int k_prime = (5 * k + 1) / 2;  // ceil(5k / 2)
    out.log_machine_count = log_big(sizes.machine_count());
    out.log_gamma_bound = std::lgamma(static_cast<double>(k_prime) + 3.0);
    out.machine_count = out.log_machine_count <= out.log_gamma_bound * (1.0 + 1e-12);
    return out;
}

} // namespace smoothsched
