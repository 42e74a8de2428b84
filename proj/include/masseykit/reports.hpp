// JSON reports for the verification runs. Every run emits one object per
// verification unit through a sink and returns whether all checks passed.
// Output is a pure function of the arguments (and the seed).

#ifndef MASSEYKIT_REPORTS_HPP
#define MASSEYKIT_REPORTS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "masseykit/cochains.hpp"
#include "masseykit/crossed_product.hpp"

namespace masseykit::reports {

using Json = nlohmann::ordered_json;
using Sink = std::function<void(const Json&)>;

/// {group, degree, p, values} with values in row-major element-index order.
Json cochain_to_json(const Cochain& c, std::string_view spec);
/// Inverse of cochain_to_json; throws std::invalid_argument or ParseError.
Cochain cochain_from_json(const Json& j);

/// Coefficient prime of a run: `p` if given (checked prime), else the
/// natural prime of the specifier.
fp_t run_prime(std::string_view spec, std::optional<fp_t> p);

/// One record: dimensions of H^1 and H^2 (H^2 null above kMaxH2Order), plus
/// the representatives as cochains when `with_basis`.
bool cohomology(std::string_view spec, std::optional<fp_t> p, bool with_basis, const Sink& out);

/// One record per triple of nonzero H^1 vectors (one per line up to scalars):
/// {triple, defined, contains_zero, lift_exists, agree}. On ubar:4,p an extra
/// record flagged "tautological" covers the superdiagonal triple.
bool massey_scan(std::string_view spec, std::optional<fp_t> p, const Sink& out);

/// `samples` random defining systems for triples: validity, homomorphism
/// property of the unipotent map, and the round trip through it.
bool dwyer_check(std::string_view spec, std::optional<fp_t> p, unsigned samples, std::uint64_t seed,
                 const Sink& out);

/// The degree p^3 tower for b and v (random v from `seed` when absent).
bool tower(const PrimeFieldSpec& field, std::string_view b, std::optional<std::string> v, std::uint64_t seed,
           const Sink& out);

struct CrossedOptions {
    std::optional<std::string> v2;   // random from the seed when absent
    unsigned associativity = 100;    // random monomial triples
    bool center = true;
};

bool crossed(const PrimeFieldSpec& field, std::string_view a2, const CrossedOptions& opts, std::uint64_t seed,
             const Sink& out);

}  // namespace masseykit::reports

#endif  // MASSEYKIT_REPORTS_HPP
