#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace creditlens::stats {

// -- special functions -----------------------------------------------------

/// ln Γ(a) − ln Γ(a + b), accurate for large a where the two log-gammas
/// would cancel.
double lgamma_difference(double a, double b);
double log_beta(double a, double b);

/// I_x(a, b). Continued fraction (modified Lentz), evaluated directly when
/// x < (a + 1) / (a + b + 2) and through I_x(a, b) = 1 − I_{1−x}(b, a) otherwise.
double incomplete_beta(double a, double b, double x);
/// Same, with y = 1 − x supplied separately so callers can keep precision near x = 1.
double incomplete_beta(double a, double b, double x, double y);

/// Regularized lower and upper incomplete gamma. Series for x < a + 1,
/// continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// -- distributions ---------------------------------------------------------

double student_t_cdf(double t, double df);
/// P(|T| ≥ |t|).
double student_t_two_sided_p(double t, double df);
/// Inverse of student_t_cdf for p in (0, 1).
double student_t_quantile(double p, double df);

/// P(X ≥ x) for X ~ χ²(df).
double chi_square_sf(double x, double df);

double normal_cdf(double z);
double normal_quantile(double p);

// -- descriptive -----------------------------------------------------------

double mean(std::span<const double> xs);
/// Unbiased (n − 1) variance; 0 for fewer than two values.
double sample_variance(std::span<const double> xs);

// -- tests -----------------------------------------------------------------

enum class TestKind { WelchT, PooledT, PairedT, ChiSquare };
std::string_view to_string(TestKind k);

enum class TTestVariant { Welch, Pooled };

struct TestResult {
    double statistic = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    TestKind kind = TestKind::WelchT;
    std::size_t n1 = 0;
    std::size_t n2 = 0;

    bool significant(double alpha = 0.05) const { return p_value <= alpha; }
};

/// Two-sided two-sample t-test of mean(xs) − mean(ys). Needs two values per
/// sample. Both variances zero: equal means give (0, p = 1), different means
/// throw DegenerateError.
TestResult t_test_independent(std::span<const double> xs, std::span<const double> ys,
                              TTestVariant variant = TTestVariant::Welch);

/// Two-sided one-sample t-test on xs[i] − ys[i], df = n − 1. All-zero
/// differences give (0, p = 1); constant non-zero differences throw.
TestResult t_test_paired(std::span<const double> xs, std::span<const double> ys);

/// Pearson chi-square test of homogeneity on an r × c table of counts.
/// Throws DegenerateError for a zero row or column total or a ragged table.
TestResult chi_square(const std::vector<std::vector<double>>& table);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// mean ± t*(level, n − 1) · sd / √n. Throws DegenerateError for n < 2.
Interval mean_ci(std::span<const double> xs, double level = 0.95);

}  // namespace creditlens::stats
