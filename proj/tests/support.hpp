#pragma once

// Independent reference computations and fixture builders shared by the unit
// tests and the acceptance runner.

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "creditlens/corpus.hpp"
#include "creditlens/metrics.hpp"
#include "creditlens/status.hpp"

namespace oracle {

using creditlens::ContributionEvent;
using creditlens::Gender;
using creditlens::Role;

/// Two-sided Student t tail by adaptive Gauss–Kronrod integration of the density.
long double t_two_sided_quadrature(double t, double df);
/// Chi-square upper tail by integration of the density.
long double chi_square_sf_quadrature(double x, double k);

/// Exact permutation p-value for |mean(x) − mean(y)| over all relabelings.
double permutation_p(std::span<const double> xs, std::span<const double> ys);
/// Exact sign-flip p-value for |mean(x − y)|.
double sign_flip_p(std::span<const double> xs, std::span<const double> ys);
/// Monte Carlo p-value of the chi-square statistic under fixed margins.
double chi_square_monte_carlo_p(const std::vector<std::vector<double>>& table, int resamples,
                                std::uint64_t seed);

double normal_draw(std::mt19937_64& rng);

struct PaperAr {
    std::string doi;
    Gender gender;
    std::int64_t authors;
    std::int64_t contributors;
    friend auto operator<=>(const PaperAr&, const PaperAr&) = default;
};
std::vector<PaperAr> naive_paper_level(const std::vector<ContributionEvent>& events, Role role);

struct Pair {
    std::string man, woman;
    std::int64_t n, j, k;
    friend auto operator<=>(const Pair&, const Pair&) = default;
};
std::vector<Pair> naive_pairs(const std::vector<ContributionEvent>& events, Role role);

struct Bucket {
    std::size_t authors;
    double mean;
    std::size_t papers;
};
std::vector<Bucket> naive_ack_buckets(const creditlens::Corpus& corpus);

/// counts[gender][role] for one credit type.
std::map<Gender, std::map<Role, std::size_t>> naive_role_counts(
    const std::vector<ContributionEvent>& events, creditlens::CreditType type);

/// person_id → tier by counting strictly lower / higher citations in the group.
std::map<std::string, creditlens::StatusTier> naive_tiers(
    const std::vector<creditlens::ScholarProfile>& scholars, double q, bool by_discipline);

}  // namespace oracle

namespace fixture {

/// One paper: I&A credited to a man author and a man acknowledgee, and to a
/// woman author and two women acknowledgees.
creditlens::Corpus paper_level_example();
/// A man and a woman share three papers on I&A; he is an author on two, she
/// on one.
creditlens::Corpus collaboration_example();
/// Small synthetic corpus with some genders and ids removed and some
/// authors also thanked.
creditlens::Corpus random_corpus(std::uint64_t seed, std::size_t max_papers);

std::string read_file(const std::string& path);

}  // namespace fixture
