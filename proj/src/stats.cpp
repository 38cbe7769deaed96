#include "creditlens/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "creditlens/error.hpp"

namespace creditlens::stats {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 200000;
// Below this the plain log-gamma route is exact enough.
constexpr double kStirlingThreshold = 20.0;

// Stirling remainder: ln Γ(z) − [(z − ½) ln z − z + ½ ln 2π].
double stirling_remainder(double z) {
    const double z2 = z * z;
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / (1188.0 * z2)) / z2) / z2) / z2) / z;
}

// log( x^a e^-x / Γ(a) ), arranged to avoid cancelling large terms.
double log_gamma_prefactor(double a, double x) {
    if (a < kStirlingThreshold) return a * std::log(x) - x - std::lgamma(a);
    const double d = (x - a) / a;
    return a * (std::log1p(d) - d) + 0.5 * std::log(a / (2.0 * std::numbers::pi)) -
           stirling_remainder(a);
}

double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete beta: continued fraction did not converge");
}

// Direct continued-fraction evaluation, valid when x < (a+1)/(a+b+2).
double incomplete_beta_direct(double a, double b, double x, double y) {
    const double log_front = a * std::log(x) + b * std::log(y) - log_beta(a, b);
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
}

double gamma_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < kMaxIterations; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) {
            return sum * std::exp(log_gamma_prefactor(a, x));
        }
    }
    throw std::runtime_error("incomplete gamma: series did not converge");
}

double gamma_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return std::exp(log_gamma_prefactor(a, x)) * h;
    }
    throw std::runtime_error("incomplete gamma: continued fraction did not converge");
}

double clamp_p(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

double lgamma_difference(double a, double b) {
    if (a < kStirlingThreshold) return std::lgamma(a) - std::lgamma(a + b);
    const double ab = a + b;
    return -(a - 0.5) * std::log1p(b / a) - b * std::log(ab) + b + stirling_remainder(a) -
           stirling_remainder(ab);
}

double log_beta(double a, double b) {
    const double big = std::max(a, b);
    const double small = std::min(a, b);
    if (big < kStirlingThreshold) return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    return std::lgamma(small) + lgamma_difference(big, small);
}

double incomplete_beta(double a, double b, double x) { return incomplete_beta(a, b, x, 1.0 - x); }

double incomplete_beta(double a, double b, double x, double y) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("incomplete beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    if (x < (a + 1.0) / (a + b + 2.0)) return incomplete_beta_direct(a, b, x, y);
    return 1.0 - incomplete_beta_direct(b, a, y, x);
}

double gamma_p(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("incomplete gamma: a must be positive");
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return gamma_series(a, x);
    return 1.0 - gamma_continued_fraction(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("incomplete gamma: a must be positive");
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_series(a, x);
    return gamma_continued_fraction(a, x);
}

double student_t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) throw std::domain_error("t distribution: df must be positive");
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return 0.0;
    const double t2 = t * t;
    // P(|T| ≥ |t|) = I_{df/(df+t²)}(df/2, 1/2)
    const double x = df / (df + t2);
    const double y = t2 / (df + t2);
    return clamp_p(incomplete_beta(df / 2.0, 0.5, x, y));
}

double student_t_cdf(double t, double df) {
    const double tail = 0.5 * student_t_two_sided_p(t, df);
    return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("t quantile: p must lie in (0, 1)");
    if (p == 0.5) return 0.0;
    const bool upper = p > 0.5;
    const double target_tail = upper ? 1.0 - p : p;  // one-sided tail mass
    double lo = 0.0;
    double hi = 1.0;
    while (0.5 * student_t_two_sided_p(hi, df) > target_tail) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) break;
    }
    for (int i = 0; i < 400 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (0.5 * student_t_two_sided_p(mid, df) > target_tail) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double q = 0.5 * (lo + hi);
    return upper ? q : -q;
}

double chi_square_sf(double x, double df) {
    if (!(df > 0.0)) throw std::domain_error("chi-square: df must be positive");
    if (x <= 0.0) return 1.0;
    return clamp_p(gamma_q(df / 2.0, x / 2.0));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal quantile: p must lie in (0, 1)");
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double mean(std::span<const double> xs) {
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return ss / static_cast<double>(xs.size() - 1);
}

std::string_view to_string(TestKind k) {
    switch (k) {
        case TestKind::WelchT: return "welch_t";
        case TestKind::PooledT: return "pooled_t";
        case TestKind::PairedT: return "paired_t";
        case TestKind::ChiSquare: return "chi_square";
    }
    return "";
}

TestResult t_test_independent(std::span<const double> xs, std::span<const double> ys,
                              TTestVariant variant) {
    if (xs.size() < 2 || ys.size() < 2) {
        throw DegenerateError("t-test needs at least two observations per sample");
    }
    const double n1 = static_cast<double>(xs.size());
    const double n2 = static_cast<double>(ys.size());
    const double m1 = mean(xs);
    const double m2 = mean(ys);
    const double v1 = sample_variance(xs);
    const double v2 = sample_variance(ys);

    TestResult r;
    r.kind = variant == TTestVariant::Welch ? TestKind::WelchT : TestKind::PooledT;
    r.n1 = xs.size();
    r.n2 = ys.size();

    if (v1 == 0.0 && v2 == 0.0) {
        if (m1 != m2) throw DegenerateError("t-test: both samples constant with different means");
        r.statistic = 0.0;
        r.df = n1 + n2 - 2.0;
        r.p_value = 1.0;
        return r;
    }
    if (variant == TTestVariant::Welch) {
        const double a = v1 / n1;
        const double b = v2 / n2;
        r.statistic = (m1 - m2) / std::sqrt(a + b);
        r.df = (a + b) * (a + b) / (a * a / (n1 - 1.0) + b * b / (n2 - 1.0));
    } else {
        const double pooled = ((n1 - 1.0) * v1 + (n2 - 1.0) * v2) / (n1 + n2 - 2.0);
        r.statistic = (m1 - m2) / std::sqrt(pooled * (1.0 / n1 + 1.0 / n2));
        r.df = n1 + n2 - 2.0;
    }
    r.p_value = student_t_two_sided_p(r.statistic, r.df);
    return r;
}

TestResult t_test_paired(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("paired t-test: samples differ in length");
    if (xs.size() < 2) throw DegenerateError("paired t-test needs at least two pairs");
    std::vector<double> diffs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) diffs[i] = xs[i] - ys[i];

    TestResult r;
    r.kind = TestKind::PairedT;
    r.n1 = r.n2 = xs.size();
    r.df = static_cast<double>(xs.size()) - 1.0;
    const double m = mean(diffs);
    const double v = sample_variance(diffs);
    if (v == 0.0) {
        if (m != 0.0) throw DegenerateError("paired t-test: constant non-zero differences");
        r.statistic = 0.0;
        r.p_value = 1.0;
        return r;
    }
    r.statistic = m / std::sqrt(v / static_cast<double>(diffs.size()));
    r.p_value = student_t_two_sided_p(r.statistic, r.df);
    return r;
}

TestResult chi_square(const std::vector<std::vector<double>>& table) {
    const std::size_t rows = table.size();
    if (rows < 2) throw DegenerateError("chi-square: need at least two rows");
    const std::size_t cols = table.front().size();
    if (cols < 2) throw DegenerateError("chi-square: need at least two columns");
    std::vector<double> row_sum(rows, 0.0);
    std::vector<double> col_sum(cols, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (table[i].size() != cols) throw DegenerateError("chi-square: ragged table");
        for (std::size_t j = 0; j < cols; ++j) {
            if (table[i][j] < 0.0) throw DegenerateError("chi-square: negative count");
            row_sum[i] += table[i][j];
            col_sum[j] += table[i][j];
            total += table[i][j];
        }
    }
    for (double s : row_sum) {
        if (s <= 0.0) throw DegenerateError("chi-square: zero row total");
    }
    for (double s : col_sum) {
        if (s <= 0.0) throw DegenerateError("chi-square: zero column total");
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double expected = row_sum[i] * col_sum[j] / total;
            const double diff = table[i][j] - expected;
            stat += diff * diff / expected;
        }
    }
    TestResult r;
    r.kind = TestKind::ChiSquare;
    r.statistic = stat;
    r.df = static_cast<double>((rows - 1) * (cols - 1));
    r.p_value = chi_square_sf(stat, r.df);
    r.n1 = rows;
    r.n2 = cols;
    return r;
}

Interval mean_ci(std::span<const double> xs, double level) {
    if (xs.size() < 2) throw DegenerateError("confidence interval needs at least two observations");
    if (!(level > 0.0 && level < 1.0)) throw std::domain_error("confidence level must lie in (0, 1)");
    const double n = static_cast<double>(xs.size());
    const double m = mean(xs);
    const double half =
        student_t_quantile(0.5 + level / 2.0, n - 1.0) * std::sqrt(sample_variance(xs) / n);
    return {m - half, m + half};
}

}  // namespace creditlens::stats
