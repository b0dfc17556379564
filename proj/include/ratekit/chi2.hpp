#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratekit {

namespace detail {

// Regularized lower incomplete gamma P(a,x) by its power series
//
//            x^a e^-x    inf      x^n
//  P(a,x) = ---------  (sum) ---------------
//            Gamma(a)    n=0  a(a+1)...(a+n)
//
// Converges fastest for x < a+1.
inline double gamma_p_series(double a, double x) {
    if (x <= 0.0) return 0.0;
    const int max_iter = 10000;
    const double eps = 1e-16;
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < max_iter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * eps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a,x) by the Legendre continued
// fraction, evaluated with the modified Lentz algorithm:
//
//            x^a e^-x     1   1-a   1   2-a   2
//  Q(a,x) = ---------  ( --- ----- --- ----- --- ... )
//            Gamma(a)    x+   1+   x+   1+   x+
//
// Converges fastest for x > a+1.
inline double gamma_q_contfrac(double a, double x) {
    const int max_iter = 10000;
    const double eps = 1e-16;
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iter; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < eps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

/// Upper tail probability of the chi-squared distribution with `dof`
/// degrees of freedom: Q(dof/2, x/2) where Q is the regularized upper
/// incomplete gamma function. Series branch for x < dof+1, continued
/// fraction otherwise.
inline double chi2_survival(int dof, double x) {
    if (dof < 1) throw std::invalid_argument("chi2_survival: dof must be >= 1");
    if (x < 0.0) throw std::invalid_argument("chi2_survival: x must be >= 0");
    if (x == 0.0) return 1.0;
    const double a = 0.5 * static_cast<double>(dof);
    const double z = 0.5 * x;
    double q;
    if (x < static_cast<double>(dof) + 1.0) {
        q = 1.0 - detail::gamma_p_series(a, z);
    } else {
        q = detail::gamma_q_contfrac(a, z);
    }
    if (q < 0.0) q = 0.0;
    if (q > 1.0) q = 1.0;
    return q;
}

struct Chi2Result {
    double statistic = 0.0;
    int dof = 1;
    double p_value = 1.0;
};

/// Pearson chi-squared independence test on a 2xK contingency table
/// (feature present / absent across K classes). Cells with zero expected
/// count are skipped; a feature present or absent in every document gets
/// statistic 0. No continuity correction. dof = K-1.
///
/// present_per_class[c] = documents of class c containing the feature,
/// total_per_class[c]   = documents of class c.
inline Chi2Result chi2_statistic(const std::vector<std::int64_t>& present_per_class,
                                 const std::vector<std::int64_t>& total_per_class) {
    const size_t k = total_per_class.size();
    if (k < 2) throw std::invalid_argument("chi2_statistic: at least 2 classes required");
    if (present_per_class.size() != k)
        throw std::invalid_argument("chi2_statistic: class count mismatch");

    std::int64_t n = 0, present_total = 0;
    for (size_t c = 0; c < k; ++c) {
        if (total_per_class[c] <= 0)
            throw std::invalid_argument("chi2_statistic: class " + std::to_string(c) +
                                        " has zero documents");
        if (present_per_class[c] < 0 || present_per_class[c] > total_per_class[c])
            throw std::invalid_argument("chi2_statistic: presence count out of range");
        n += total_per_class[c];
        present_total += present_per_class[c];
    }

    const int dof = static_cast<int>(k) - 1;
    const std::int64_t absent_total = n - present_total;

    double stat = 0.0;
    // Row totals of zero (constant feature) leave all their expected
    // counts at zero; those cells are skipped, giving statistic 0.
    for (size_t c = 0; c < k; ++c) {
        const double col = static_cast<double>(total_per_class[c]);
        const double e_present = static_cast<double>(present_total) * col / static_cast<double>(n);
        const double e_absent = static_cast<double>(absent_total) * col / static_cast<double>(n);
        if (e_present > 0.0) {
            const double o = static_cast<double>(present_per_class[c]);
            stat += (o - e_present) * (o - e_present) / e_present;
        }
        if (e_absent > 0.0) {
            const double o = static_cast<double>(total_per_class[c] - present_per_class[c]);
            stat += (o - e_absent) * (o - e_absent) / e_absent;
        }
    }

    return Chi2Result{stat, dof, chi2_survival(dof, stat)};
}

}  // namespace ratekit
