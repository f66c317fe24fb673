#include "tvar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tvar {

namespace {

void check_threshold(double c) {
    if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("oracle: threshold c must be finite and >= 0");
}

}  // namespace

std::vector<double> brute_force_tv_prefix(const SamplePath& p, double c) {
    check_threshold(c);
    const std::vector<double>& v = p.values;
    const std::size_t n = v.size();
    // best[i]: largest truncated-increment sum of a chain ending exactly at i.
    // The prefix value is the running maximum of best.
    std::vector<double> best(n, 0.0), out(n, 0.0);
    double run = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double b = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            const double gain = std::fabs(v[i] - v[j]) - c;
            const double cand = best[j] + (gain > 0.0 ? gain : 0.0);
            b = std::max(b, cand);
        }
        best[i] = b;
        run = std::max(run, b);
        out[i] = run;
    }
    return out;
}

std::vector<double> brute_force_utv_prefix(const SamplePath& p, double c) {
    check_threshold(c);
    const std::vector<double>& v = p.values;
    const std::size_t n = v.size();
    // A[i]: best value over pair systems contained in samples [0..i]; the last
    // pair either ends before i (A[i-1]) or is (j, i) on top of a system inside
    // [0..j-1]. A is nondecreasing, so A[i] is already the prefix value.
    std::vector<double> A(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        double a = A[i - 1];
        for (std::size_t j = 0; j < i; ++j) {
            const double gain = v[i] - v[j] - c;
            if (gain > 0.0) {
                const double prev = (j > 0) ? A[j - 1] : 0.0;
                a = std::max(a, prev + gain);
            }
        }
        A[i] = a;
    }
    return A;
}

std::vector<double> brute_force_dtv_prefix(const SamplePath& p, double c) {
    return brute_force_utv_prefix(negate(p), c);
}

double brute_force_tv(const SamplePath& p, double c) {
    return brute_force_tv_prefix(p, c).back();
}

double brute_force_utv(const SamplePath& p, double c) {
    return brute_force_utv_prefix(p, c).back();
}

double brute_force_dtv(const SamplePath& p, double c) {
    return brute_force_dtv_prefix(p, c).back();
}

}  // namespace tvar
