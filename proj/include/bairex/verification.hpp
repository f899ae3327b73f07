#pragma once

#include <map>
#include <string>
#include <vector>

#include "bairex/extension.hpp"
#include "bairex/rational.hpp"

namespace bairex {

// One verified property. `slack` is the worst measured quantity for the
// check (deviation from an identity, final restriction residual, measured
// sup, violation count for set checks); zero means nothing was off at all.
struct CheckEntry {
    std::string name;
    bool pass = true;
    double slack = 0.0;
    std::string witness;
};

struct VerificationReport {
    std::vector<CheckEntry> checks;
    bool overall = true;

    const CheckEntry* find(const std::string& name) const;
};

// Canonical check names, in report order. Every report carries each exactly
// once; checks that do not apply to a run pass vacuously with zero slack.
namespace checks {
inline constexpr const char* term_magnitude = "term_magnitude";
inline constexpr const char* restriction_bound = "restriction_bound";
inline constexpr const char* sup_norm_bounds = "sup_norm_bounds";
inline constexpr const char* separation_containment = "separation_containment";
inline constexpr const char* separation_reproduction = "separation_reproduction";
inline constexpr const char* partial_sum_identity = "partial_sum_identity";
inline constexpr const char* truncation_certificate = "truncation_certificate";
inline constexpr const char* series_consistency = "series_consistency";
inline constexpr const char* positivity = "positivity";
inline constexpr const char* complement_consistency = "complement_consistency";
inline constexpr const char* affine_identity = "affine_identity";
inline constexpr const char* scaling_equivariance = "scaling_equivariance";

inline constexpr const char* all[] = {
    term_magnitude,       restriction_bound,       sup_norm_bounds,
    separation_containment, separation_reproduction, partial_sum_identity,
    truncation_certificate, series_consistency,      positivity,
    complement_consistency, affine_identity,         scaling_equivariance,
};
}  // namespace checks

// Replays the recursion against a completed outcome and measures every
// invariant of the construction: exact term magnitudes, per-prefix
// restriction bounds, the two-sided sup-norm bounds, per-step containment and
// reproduction of the separating sets, the partial-sum identity, the
// truncation certificate, positivity and the affine identity (positive mode),
// and scaling equivariance. Exact comparisons in rational mode; documented
// slacks (1e-12 relative on coefficients, 1e-9 absolute on bounds) in float
// mode. Results that were not produced from (space, f) throw MismatchError.
template <class S>
VerificationReport check_equations(const AmbientSpace& space, const SampledFunction<S>& f,
                                   const ExtensionOutcome<S>& out);

// Asserts 2*S+(x)/scale - Sg(x) = 1 - (2/3)^(K+1) at every point, where S+ is
// the positive extension of f and Sg the signed extension of g = 2 f/scale - 1
// sharing its separating sets. Throws MismatchError when the depths or set
// sequences differ.
template <class S>
CheckEntry check_positive_identity(const ExtensionOutcome<S>& signed_out,
                                   const ExtensionOutcome<S>& positive_out, const S& scale);

// Ground truth for small instances: a straight-line, unoptimized rerun of the
// series construction in exact rational arithmetic, sharing nothing with the
// engine beyond the distance matrix. Scale guard: at most 64 points, depth 64.
struct OracleRun {
    Rational scale;
    std::vector<Rational> coefficients;      // scale * (2/3)^(n+1) per step
    std::vector<std::vector<PointId>> sets;  // separating sets (complements in positive mode)
    std::vector<Rational> extended;
};

OracleRun oracle_extend(const AmbientSpace& space, const std::vector<PointId>& domain,
                        const std::map<PointId, Rational>& values, int depth, Mode mode);

extern template VerificationReport check_equations<double>(const AmbientSpace&,
                                                           const SampledFunction<double>&,
                                                           const ExtensionOutcome<double>&);
extern template VerificationReport check_equations<Rational>(const AmbientSpace&,
                                                             const SampledFunction<Rational>&,
                                                             const ExtensionOutcome<Rational>&);
extern template CheckEntry check_positive_identity<double>(const ExtensionOutcome<double>&,
                                                           const ExtensionOutcome<double>&,
                                                           const double&);
extern template CheckEntry check_positive_identity<Rational>(const ExtensionOutcome<Rational>&,
                                                             const ExtensionOutcome<Rational>&,
                                                             const Rational&);

}  // namespace bairex
