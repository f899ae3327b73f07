#include "bairex/verification.hpp"

#include <algorithm>
#include <limits>

namespace bairex {

namespace {

double as_double(double v) { return v; }
double as_double(const Rational& v) { return v.get_d(); }

template <class S>
S rel_deviation(const S& value, const S& reference) {
    S dev = detail::abs_value(S(value - reference));
    S ref = detail::abs_value(reference);
    return ref > S(0) ? S(dev / ref) : dev;
}

std::string step_witness(int n) { return "n=" + std::to_string(n); }
std::string point_witness(PointId x) { return "x=" + std::to_string(x); }
std::string step_point_witness(int n, PointId x) {
    return "n=" + std::to_string(n) + ",x=" + std::to_string(x);
}

// g = 2 f/s - 1, the signed companion of a positive-mode input. Mirrors the
// engine's expression shape so float replays agree bit for bit.
template <class S>
SampledFunction<S> signed_companion(const SampledFunction<S>& f, const S& s) {
    std::map<PointId, S> gvals;
    for (const auto& [id, v] : f.values()) gvals.emplace(id, v / s * S(2) - S(1));
    return SampledFunction<S>(f.domain(), std::move(gvals));
}

template <class S>
struct Tolerances {
    S coefficient_rel;  // relative, coefficients and certificates
    S bound_abs;        // absolute, bounds and identities
};

template <class S>
Tolerances<S> tolerances() {
    if constexpr (detail::exact_scalar<S>) return {S(0), S(0)};
    else return {S(1e-12), S(1e-9)};
}

}  // namespace

const CheckEntry* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

template <class S>
VerificationReport check_equations(const AmbientSpace& space, const SampledFunction<S>& f,
                                   const ExtensionOutcome<S>& out) {
    if (out.extended.size() != space.size())
        throw MismatchError("result covers " + std::to_string(out.extended.size()) +
                            " points, space has " + std::to_string(space.size()));
    if (f.domain().space_size() != space.size())
        throw MismatchError("domain_subset indexes " + std::to_string(f.domain().space_size()) +
                            " points, space has " + std::to_string(space.size()));
    const int k = out.truncation_index;
    const std::size_t nterms = out.terms.size();
    if (k < 0 || (nterms != static_cast<std::size_t>(k) + 1 && nterms != 0))
        throw MismatchError("terms length " + std::to_string(nterms) +
                            " does not match truncation index " + std::to_string(k));
    for (std::size_t n = 0; n < nterms; ++n) {
        if (out.terms[n].index != static_cast<int>(n))
            throw MismatchError("terms are not indexed 0.." + std::to_string(k));
        if (out.terms[n].set.members.space_size() != space.size())
            throw MismatchError("term " + std::to_string(n) + " indexes a different space");
    }
    if (out.mode == Mode::Positive)
        for (const auto& [id, v] : f.values())
            if (v < S(0))
                throw MismatchError("positive-mode result checked against values[" +
                                    std::to_string(id) + "] < 0");

    const auto tol = tolerances<S>();
    const bool positive = out.mode == Mode::Positive;
    const ClassLabel label = out.alpha;
    const S c_true = sup_norm(f);
    const bool degenerate = nterms == 0;

    // (2/3)^m for m = 0..k+1, with the engine's expression shape.
    std::vector<S> pw(static_cast<std::size_t>(k) + 2);
    pw[0] = S(1);
    for (std::size_t m = 1; m < pw.size(); ++m) pw[m] = pw[m - 1] * S(2) / S(3);

    VerificationReport rep;
    auto push = [&rep](const char* name, bool pass, double slack, std::string witness) {
        rep.checks.push_back(CheckEntry{name, pass, slack, std::move(witness)});
        rep.overall = rep.overall && pass;
    };

    // --- term magnitude: coefficient_n == c (2/3)^(n+1), so every step has
    // |g_n(x)| = (c/2)(2/3)^(n+1) at every point.
    {
        S worst(0);
        std::string witness;
        bool pass = true;
        for (std::size_t n = 0; n < nterms; ++n) {
            S dev = rel_deviation(out.terms[n].coefficient, S(c_true * pw[n + 1]));
            if (dev > worst) {
                worst = dev;
                witness = step_witness(static_cast<int>(n));
            }
            if (dev > tol.coefficient_rel) pass = false;
        }
        push(checks::term_magnitude, pass, as_double(worst), witness);
    }

    // Per-point step value from a stored term.
    auto term_value = [&](const ExtensionTerm<S>& t, PointId x) -> S {
        S half = t.coefficient / S(2);
        if (positive) return t.set.members.contains(x) ? half : S(0);
        return t.set.members.contains(x) ? S(-half) : half;
    };

    // --- restriction bounds: |f(a) - S_{m-1}(a)| <= c (2/3)^m for every
    // prefix. Headline slack is the final residual max_a |f(a) - S_K(a)|.
    {
        bool pass = true;
        S final_worst(0);
        std::string witness, fail_witness;
        for (const auto& [a, fa] : f.values()) {
            S partial(0);
            for (std::size_t m = 0; m <= nterms; ++m) {
                if (m > 0) partial += term_value(out.terms[m - 1], a);
                S resid = detail::abs_value(S(fa - partial));
                if (resid > c_true * pw[m] + tol.bound_abs && pass) {
                    pass = false;
                    fail_witness = "a=" + std::to_string(a) + ",m=" + std::to_string(m);
                }
                if (m == nterms && resid > final_worst) {
                    final_worst = resid;
                    witness = "a=" + std::to_string(a);
                }
            }
        }
        push(checks::restriction_bound, pass, as_double(final_worst),
             pass ? witness : fail_witness);
    }

    // --- sup-norm bounds: the truncated series stays inside
    // c (1 - (2/3)^(K+1)) and reaches at least max_A|f| - c (2/3)^(K+1).
    {
        S measured(0);
        PointId arg = 0;
        for (PointId x = 0; x < out.extended.size(); ++x) {
            S a = detail::abs_value(out.extended[x]);
            if (a > measured) {
                measured = a;
                arg = x;
            }
        }
        const S tail = degenerate ? S(c_true) : S(c_true * pw[nterms]);
        // upper: c (1 - (2/3)^(K+1)); lower: max_A|f| - c (2/3)^(K+1), and
        // max_A|f| is c by definition of the sup norm, so the two coincide.
        const S upper = c_true - tail;
        const S lower = c_true - tail;
        bool pass = measured <= upper + tol.bound_abs && measured >= lower - tol.bound_abs;
        push(checks::sup_norm_bounds, pass, as_double(measured), point_witness(arg));
    }

    // --- separation checks: replay the residual with the stored sets, derive
    // each step's threshold sets, and test the stored set against them.
    {
        bool contain_pass = true, repro_pass = true;
        double contain_viol = 0, repro_viol = 0;
        std::string contain_witness, repro_witness;
        if (!degenerate && c_true > S(0)) {
            SampledFunction<S> base = positive ? signed_companion(f, c_true)
                                               : normalize(f).second;
            Residual<S> r{base.domain(), base.values(), S(1)};
            S power(1);
            for (std::size_t n = 0; n < nterms; ++n) {
                auto [mset, nset] = threshold_sets(r);
                const SubsetMask h = positive ? out.terms[n].set.members.complemented()
                                              : out.terms[n].set.members;

                if (!mset.is_subset_of(h)) {
                    for (PointId a : mset.ids())
                        if (!h.contains(a)) {
                            ++contain_viol;
                            if (contain_pass)
                                contain_witness = step_point_witness(static_cast<int>(n), a);
                            contain_pass = false;
                        }
                }
                if (nset.intersects(h)) {
                    for (PointId a : nset.ids())
                        if (h.contains(a)) {
                            ++contain_viol;
                            if (contain_pass)
                                contain_witness = step_point_witness(static_cast<int>(n), a);
                            contain_pass = false;
                        }
                }

                SeparatingSet fresh = separate(space, mset, nset, label);
                if (fresh.members != h) {
                    for (PointId x = 0; x < space.size(); ++x)
                        if (fresh.members.contains(x) != h.contains(x)) {
                            ++repro_viol;
                            if (repro_pass)
                                repro_witness = step_point_witness(static_cast<int>(n), x);
                            repro_pass = false;
                        }
                }

                S step = power * S(2) / S(3);
                S half_step = step / S(2);
                for (auto& [id, v] : r.values) {
                    if (h.contains(id)) v += half_step;
                    else v -= half_step;
                }
                r.bound = step;
                power = step;
            }
        }
        push(checks::separation_containment, contain_pass, contain_viol, contain_witness);
        push(checks::separation_reproduction, repro_pass, repro_viol, repro_witness);
    }

    // --- partial-sum identity: sum of coefficients equals 2 c (1 - (2/3)^(K+1)).
    {
        S sum(0);
        for (const auto& t : out.terms) sum += t.coefficient;
        const S target = degenerate ? S(0) : S(S(2) * c_true * (S(1) - pw[nterms]));
        S dev = detail::abs_value(S(sum - target));
        push(checks::partial_sum_identity, dev <= tol.bound_abs, as_double(dev), "");
    }

    // --- truncation certificate: stored scale and error bound match the
    // recomputed sup norm and tail, and only the zero function may carry an
    // empty term list.
    {
        const S dev_scale = rel_deviation(out.scale, c_true);
        const S tail = degenerate ? S(0) : S(c_true * pw[nterms]);
        const S dev_bound = rel_deviation(out.error_bound, tail);
        const bool scale_ok = dev_scale <= tol.coefficient_rel;
        const bool bound_ok = dev_bound <= tol.coefficient_rel;
        const bool shape_ok = !degenerate || c_true == S(0);
        std::string witness;
        if (!shape_ok) witness = "terms";
        else if (!scale_ok) witness = "scale";
        else if (!bound_ok) witness = "error_bound";
        push(checks::truncation_certificate, scale_ok && bound_ok && shape_ok,
             as_double(std::max(dev_scale, dev_bound)), witness);
    }

    // --- series consistency: the stored extension equals the series
    // recomputed from the stored terms at every point.
    {
        S worst(0);
        PointId arg = 0;
        for (PointId x = 0; x < space.size(); ++x) {
            S dev = detail::abs_value(S(out.extended[x] - evaluate(out, x)));
            if (dev > worst) {
                worst = dev;
                arg = x;
            }
        }
        push(checks::series_consistency, worst <= tol.bound_abs, as_double(worst),
             point_witness(arg));
    }

    // --- positivity (positive mode): the truncated series is non-negative
    // everywhere.
    {
        if (positive) {
            S low(0);
            PointId arg = 0;
            for (PointId x = 0; x < space.size(); ++x)
                if (out.extended[x] < low) {
                    low = out.extended[x];
                    arg = x;
                }
            bool pass = low >= -tol.bound_abs;
            push(checks::positivity, pass, as_double(detail::abs_value(low)),
                 low < S(0) ? point_witness(arg) : "");
        } else {
            push(checks::positivity, true, 0.0, "not applicable (signed mode)");
        }
    }

    // --- complement consistency and affine identity (positive mode): rerun
    // the signed companion g = 2 f/s - 1 at the same depth and compare.
    {
        if (positive && !degenerate && c_true > S(0)) {
            SampledFunction<S> g = signed_companion(f, c_true);
            ExtensionOutcome<S> companion = extend_at_depth(space, g, k, Mode::Signed, label);

            bool comp_pass = true;
            double comp_viol = 0;
            std::string comp_witness;
            for (std::size_t n = 0; n < nterms; ++n) {
                SubsetMask expect = companion.terms[n].set.members.complemented();
                if (out.terms[n].set.members != expect) {
                    for (PointId x = 0; x < space.size(); ++x)
                        if (out.terms[n].set.members.contains(x) != expect.contains(x)) {
                            ++comp_viol;
                            if (comp_pass)
                                comp_witness = step_point_witness(static_cast<int>(n), x);
                            comp_pass = false;
                        }
                }
            }
            push(checks::complement_consistency, comp_pass, comp_viol, comp_witness);

            // 2 S+/s - Sg == 1 - (2/3)^(K+1) pointwise, computed from values
            // alone so it stays meaningful when the sets were tampered with.
            S worst(0);
            PointId arg = 0;
            const S target = S(1) - pw[nterms];
            for (PointId x = 0; x < space.size(); ++x) {
                S lhs = S(2) * out.extended[x] / c_true - companion.extended[x];
                S dev = detail::abs_value(S(lhs - target));
                if (dev > worst) {
                    worst = dev;
                    arg = x;
                }
            }
            push(checks::affine_identity, worst <= tol.bound_abs, as_double(worst),
                 point_witness(arg));
        } else {
            push(checks::complement_consistency, true, 0.0,
                 positive ? "" : "not applicable (signed mode)");
            push(checks::affine_identity, true, 0.0,
                 positive ? "" : "not applicable (signed mode)");
        }
    }

    // --- scaling equivariance: doubling the input doubles every coefficient
    // and keeps every separating set.
    {
        if (c_true > S(0) && !degenerate) {
            std::map<PointId, S> doubled;
            for (const auto& [id, v] : f.values()) doubled.emplace(id, S(2) * v);
            SampledFunction<S> f2(f.domain(), std::move(doubled));
            ExtensionOutcome<S> base = extend_at_depth(space, f, k, out.mode, label);
            ExtensionOutcome<S> twice = extend_at_depth(space, f2, k, out.mode, label);
            S worst(0);
            std::string witness;
            bool pass = true;
            for (std::size_t n = 0; n < nterms; ++n) {
                S dev = rel_deviation(twice.terms[n].coefficient,
                                      S(S(2) * base.terms[n].coefficient));
                if (dev > worst) {
                    worst = dev;
                    witness = step_witness(static_cast<int>(n));
                }
                if (dev > tol.coefficient_rel) pass = false;
                if (twice.terms[n].set.members != base.terms[n].set.members) {
                    pass = false;
                    witness = step_witness(static_cast<int>(n));
                }
            }
            push(checks::scaling_equivariance, pass, as_double(worst), witness);
        } else {
            push(checks::scaling_equivariance, true, 0.0, "");
        }
    }

    return rep;
}

template <class S>
CheckEntry check_positive_identity(const ExtensionOutcome<S>& signed_out,
                                   const ExtensionOutcome<S>& positive_out, const S& scale) {
    if (signed_out.mode != Mode::Signed || positive_out.mode != Mode::Positive)
        throw MismatchError("check_positive_identity needs a signed and a positive result");
    if (!(scale > S(0))) throw ValidationError("scale must be positive");
    if (signed_out.truncation_index != positive_out.truncation_index ||
        signed_out.terms.size() != positive_out.terms.size())
        throw MismatchError("truncation depths differ");
    if (signed_out.extended.size() != positive_out.extended.size())
        throw MismatchError("results cover different spaces");
    for (std::size_t n = 0; n < signed_out.terms.size(); ++n)
        if (positive_out.terms[n].set.members.complemented() != signed_out.terms[n].set.members)
            throw MismatchError("separating sets differ at step " + std::to_string(n));

    const auto tol = tolerances<S>();
    S tail(1);
    for (std::size_t m = 0; m < signed_out.terms.size(); ++m) tail = tail * S(2) / S(3);
    const S target = S(1) - tail;

    S worst(0);
    PointId arg = 0;
    for (PointId x = 0; x < signed_out.extended.size(); ++x) {
        S lhs = S(2) * positive_out.extended[x] / scale - signed_out.extended[x];
        S dev = detail::abs_value(S(lhs - target));
        if (dev > worst) {
            worst = dev;
            arg = x;
        }
    }
    return CheckEntry{checks::affine_identity, worst <= tol.bound_abs, as_double(worst),
                      "x=" + std::to_string(arg)};
}

OracleRun oracle_extend(const AmbientSpace& space, const std::vector<PointId>& domain,
                        const std::map<PointId, Rational>& values, int depth, Mode mode) {
    if (space.size() > 64)
        throw ValidationError("oracle scale guard: at most 64 points, got " +
                              std::to_string(space.size()));
    if (depth < 0 || depth > 64)
        throw ValidationError("oracle scale guard: depth must be in [0, 64], got " +
                              std::to_string(depth));
    if (domain.empty()) throw ValidationError("domain_subset is empty");
    for (PointId a : domain) {
        if (a >= space.size())
            throw ValidationError("point id " + std::to_string(a) + " out of range");
        if (!values.count(a))
            throw ValidationError("values[" + std::to_string(a) + "] missing");
    }
    if (values.size() != domain.size())
        throw ValidationError("values must contain exactly one entry per domain id");

    const std::size_t n_pts = space.size();
    const double inf = std::numeric_limits<double>::infinity();

    OracleRun run;
    run.scale = 0;
    run.extended.assign(n_pts, Rational(0));

    // Transcribe the construction literally: normalize to sup-norm 1 (signed)
    // or map through 2 f / s - 1 (positive), then at each step cut the
    // residual at +-(1/3) of its running bound, separate the cuts by strict
    // nearest-distance comparison, and subtract the two-valued step.
    std::map<PointId, Rational> residual;
    if (mode == Mode::Signed) {
        for (const auto& [a, v] : values) {
            Rational mag = v < 0 ? Rational(-v) : v;
            if (mag > run.scale) run.scale = mag;
        }
        if (run.scale == 0) return run;
        for (const auto& [a, v] : values) residual.emplace(a, Rational(v / run.scale));
    } else {
        for (const auto& [a, v] : values) {
            if (v < 0)
                throw ValidationError("values[" + std::to_string(a) +
                                      "] is negative: positive mode requires non-negative values");
            if (v > run.scale) run.scale = v;
        }
        if (run.scale == 0) return run;
        for (const auto& [a, v] : values)
            residual.emplace(a, Rational(v / run.scale * 2 - 1));
    }

    std::vector<std::vector<char>> step_sets;
    Rational bound(1);
    for (int n = 0; n <= depth; ++n) {
        Rational cut = bound / 3;
        std::vector<char> in_m(n_pts, 0), in_n(n_pts, 0);
        for (const auto& [a, r] : residual) {
            if (r <= -cut) in_m[a] = 1;
            else if (r >= cut) in_n[a] = 1;
        }

        std::vector<char> in_h(n_pts, 0);
        for (PointId x = 0; x < n_pts; ++x) {
            double dm = inf, dn = inf;
            for (PointId y = 0; y < n_pts; ++y) {
                if (in_m[y] && space.distance(x, y) < dm) dm = space.distance(x, y);
                if (in_n[y] && space.distance(x, y) < dn) dn = space.distance(x, y);
            }
            if (dm < dn) in_h[x] = 1;
        }

        Rational step = bound * 2 / 3;
        Rational half = step / 2;
        for (auto& [a, r] : residual) {
            if (in_h[a]) r += half;
            else r -= half;
        }
        run.coefficients.push_back(Rational(run.scale * step));
        step_sets.push_back(std::move(in_h));
        bound = step;
    }

    for (int n = 0; n <= depth; ++n) {
        const auto& in_h = step_sets[static_cast<std::size_t>(n)];
        const Rational half = run.coefficients[static_cast<std::size_t>(n)] / 2;
        std::vector<PointId> ids;
        for (PointId x = 0; x < n_pts; ++x) {
            bool member = in_h[x] != 0;
            if (mode == Mode::Signed) {
                if (member) run.extended[x] -= half;
                else run.extended[x] += half;
                if (member) ids.push_back(x);
            } else {
                // store and evaluate the complement
                if (!member) {
                    run.extended[x] += half;
                    ids.push_back(x);
                }
            }
        }
        run.sets.push_back(std::move(ids));
    }
    return run;
}

template VerificationReport check_equations<double>(const AmbientSpace&,
                                                    const SampledFunction<double>&,
                                                    const ExtensionOutcome<double>&);
template VerificationReport check_equations<Rational>(const AmbientSpace&,
                                                      const SampledFunction<Rational>&,
                                                      const ExtensionOutcome<Rational>&);
template CheckEntry check_positive_identity<double>(const ExtensionOutcome<double>&,
                                                    const ExtensionOutcome<double>&,
                                                    const double&);
template CheckEntry check_positive_identity<Rational>(const ExtensionOutcome<Rational>&,
                                                      const ExtensionOutcome<Rational>&,
                                                      const Rational&);

}  // namespace bairex
