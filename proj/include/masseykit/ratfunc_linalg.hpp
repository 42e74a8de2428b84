// Linear algebra over F_l(t).
//
// Exact elimination works on canonical rational functions and is used for
// the small systems (inverses in a Kummer algebra). For large matrices the
// rank is bounded from below by reducing at places of F_l(t): if every entry
// is integral at a monic irreducible q, the rank over F_l[t]/(q) never
// exceeds the rank over F_l(t), so a full-rank reduction certifies full rank.

#ifndef MASSEYKIT_RATFUNC_LINALG_HPP
#define MASSEYKIT_RATFUNC_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "masseykit/function_field.hpp"

namespace masseykit {

using RatMatrix = std::vector<std::vector<RatFunc>>;  // row-major, rectangular

std::size_t rank(const RatMatrix& m);
/// Some x with m x = b, or nullopt.
std::optional<std::vector<RatFunc>> solve(const RatMatrix& m, const std::vector<RatFunc>& b);
/// Basis of {x : m x = 0}.
std::vector<std::vector<RatFunc>> kernel_basis(const RatMatrix& m, std::size_t cols);

struct PlaceRank {
    std::size_t rank = 0;     // lower bound for the rank over F_l(t)
    std::size_t places = 0;   // places tried
    unsigned max_degree = 0;  // largest place degree tried
};

/// Tries places of increasing degree until the reduced rank reaches `target`
/// or `max_places` have been used; returns the best lower bound found.
PlaceRank rank_lower_bound(const RatMatrix& m, fp_t ell, std::size_t target, std::size_t max_places = 24);

}  // namespace masseykit

#endif  // MASSEYKIT_RATFUNC_LINALG_HPP
