#pragma once

#include "cutseq/cf.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cutseq {

// A density sampled on a rational grid in [0,1]. The grid keeps the generating
// function around so transfer operators can evaluate it off-grid.
enum class DensityTag { gauss, farey, custom };

struct DensityGrid {
    std::vector<Rat> points;  // strictly increasing, within [0,1]
    std::vector<double> values;
    DensityTag tag = DensityTag::custom;
    std::function<double(double)> fn;
};

// k/n for k = 0..n, or k = 1..n when zero is excluded (the Farey density has a
// pole there).
std::vector<Rat> unit_grid(size_t n, bool exclude_zero);

DensityGrid make_density_grid(std::vector<Rat> points, std::function<double(double)> fn,
                              DensityTag tag = DensityTag::custom);

double gauss_density(double x);  // (1/ln 2)/(1+x) on [0,1]

// Truncated Gauss transfer operator: (Lf)(x) = sum_{n=1..N} (n+x)^-2 f(1/(n+x)).
DensityGrid transfer_gauss(const DensityGrid& f, long branches);

// Two-branch Farey transfer operator: (Lf)(y) = (1+y)^-2 [f(y/(1+y)) + f(1/(1+y))].
DensityGrid transfer_farey(const DensityGrid& f);

double sup_diff(const DensityGrid& a, const DensityGrid& b);

// Exact partial sum sum_{n=1..N} 1/((n+x)(n+x+1)) and its closed form
// 1/(1+x) - 1/(N+1+x); they agree termwise by partial fractions.
Rat gauss_telescope_partial(const Rat& x, long branches);
Rat gauss_telescope_closed(const Rat& x, long branches);

// Exact image of f(t) = 1/t under the Farey transfer operator; equals 1/y.
Rat farey_transfer_reciprocal(const Rat& y);

// Composite Simpson rule on [a,b] with n subintervals (n made even).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

struct ExperimentReport {
    std::string name;
    nlohmann::ordered_json params;
    nlohmann::ordered_json stats;
    bool pass = false;

    nlohmann::ordered_json json() const;  // {name, params, stats, pass}
    std::string str() const;
};

// Samples the Gauss measure by inverse CDF (x = 2^u - 1) from a seeded
// generator and compares first-digit frequencies with log2(1+1/(k(k+2))).
ExperimentReport digit_statistics(size_t sample_count, std::uint64_t seed);

// Enumerates purely periodic continued fractions with digits <= bound and
// period <= 4 for every bound 1..digit_bound and reports the KS distance of
// their values to the Gauss CDF log2(1+x).
ExperimentReport quadratic_equidistribution(long digit_bound);

// Enumerates primitive closed-geodesic classes up to the given length and
// reports (word, length) pairs plus the KS distance of the orbit factor
// values to the Gauss CDF. Checks orbit-summed lengths against the
// eigenvalue formula.
ExperimentReport closed_geodesic_census(double max_length);

// Two-sided KS distance of a sample against a CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

}  // namespace cutseq
