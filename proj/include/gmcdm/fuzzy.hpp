#pragma once

#include <compare>
#include <span>
#include <vector>

#include "gmcdm/classic.hpp"
#include "gmcdm/model.hpp"

namespace gmcdm {

// Intuitionistic fuzzy algebra on (mu, nu) pairs.

Ifv ifv_add(const Ifv& a, const Ifv& b);

/// lambda-multiple of an IFV; throws BadLambda for lambda <= 0.
Ifv ifv_scale(double lambda, const Ifv& a);

/// Intuitionistic fuzzy weighted average. Zero weights contribute a factor
/// of 1 (0^0 = 1), so the operator is total.
Ifv ifwa(std::span<const Ifv> values, std::span<const double> weights);

inline double ifv_score(const Ifv& a) { return a.mu - a.nu; }
inline double ifv_accuracy(const Ifv& a) { return a.mu + a.nu; }

/// Greater score wins, then greater accuracy (both compared to 1e-12);
/// otherwise equivalent.
std::partial_ordering ifv_compare(const Ifv& a, const Ifv& b);

/// Per-cell IFWA over makers, IFWA across criteria with the maker-weighted
/// criterion weights, then ordered by ifv_compare (alternative id on ties).
/// Throws NonIfsCell if any cell is not an IFV.
RankResult ifwa_group_rank(const GroupProblem& problem);

}  // namespace gmcdm
