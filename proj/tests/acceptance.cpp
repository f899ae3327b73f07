// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 1-4 share one randomized instance family; criterion 6
// sweeps an exhaustive small-instance family against the rational oracle;
// criterion 8 drives the installed command-line binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bairex/io.hpp"
#include "bairex/verification.hpp"
#include "test_support.hpp"

using namespace bairex;
using nlohmann::json;

namespace {

const ClassLabel kLabel{1, LabelKind::Ambiguous};

Rational pow23q(int e) {
    Rational p(1);
    for (int i = 0; i < e; ++i) p = p * 2 / 3;
    return p;
}

struct FamilyInstance {
    AmbientSpace space;
    SubsetMask domain;
    std::map<PointId, double> values_float;
    std::map<PointId, Rational> values_exact;
    ExtensionOutcome<double> out_float;
    ExtensionOutcome<Rational> out_exact;
};

struct Failure {
    bool failed = false;
    std::string detail;

    void record(const std::string& msg) {
        if (!failed) detail = msg;
        failed = true;
    }
};

std::vector<FamilyInstance> g_family;          // criteria 1-4
std::vector<FamilyInstance> g_positive_family; // criterion 5 inputs (values >= 0)

std::vector<FamilyInstance> make_family(std::uint64_t seed, std::size_t count, double lo,
                                        double hi) {
    std::mt19937_64 rng(seed);
    std::vector<FamilyInstance> family;
    family.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        FamilyInstance inst;
        inst.space = testsupport::random_space(rng, 32);
        inst.domain = testsupport::random_subset(rng, inst.space.size(), 16);
        auto vals = testsupport::random_values(rng, inst.domain, lo, hi);
        inst.values_float = std::move(vals.values_float);
        inst.values_exact = std::move(vals.values_exact);
        family.push_back(std::move(inst));
    }
    return family;
}

// ---------------------------------------------------------------------------
// criterion 1: exact term magnitudes over the randomized family
// ---------------------------------------------------------------------------
bool criterion_term_magnitude(std::string& detail) {
    g_family = make_family(2024, 1000, -1.0, 1.0);
    Failure fail;

    for (std::size_t i = 0; i < g_family.size(); ++i) {
        auto& inst = g_family[i];
        SampledFunction<double> ff(inst.domain, inst.values_float);
        SampledFunction<Rational> fq(inst.domain, inst.values_exact);
        inst.out_float = extend(inst.space, ff, 1e-6, kLabel);
        inst.out_exact = extend(inst.space, fq, Rational(1, 1000000), kLabel);

        const Rational cq = sup_norm(fq);
        for (const auto& t : inst.out_exact.terms) {
            if (t.coefficient != cq * pow23q(t.index + 1))
                fail.record("instance " + std::to_string(i) + " exact term " +
                            std::to_string(t.index));
            // |g_n(x)| is coefficient/2 at every point by the two-valued step
        }
        const double cf = sup_norm(ff);
        double power = 1.0;
        for (const auto& t : inst.out_float.terms) {
            power = power * 2.0 / 3.0;
            const double ref = cf * power;
            if (std::abs(t.coefficient - ref) > 1e-12 * ref)
                fail.record("instance " + std::to_string(i) + " float term " +
                            std::to_string(t.index));
        }
    }
    detail = std::to_string(g_family.size()) + " instances, both arithmetics";
    if (fail.failed) detail = fail.detail;
    return !fail.failed;
}

// ---------------------------------------------------------------------------
// criterion 2: restriction prefix bounds, zero violations
// ---------------------------------------------------------------------------
bool criterion_prefix_bounds(std::string& detail) {
    Failure fail;
    std::size_t prefixes = 0;

    for (std::size_t i = 0; i < g_family.size(); ++i) {
        const auto& inst = g_family[i];

        const Rational cq = [&] {
            Rational c(0);
            for (const auto& [id, v] : inst.values_exact) {
                Rational m = v < 0 ? Rational(-v) : v;
                if (m > c) c = m;
            }
            return c;
        }();
        for (const auto& [a, fa] : inst.values_exact) {
            Rational partial(0);
            for (std::size_t m = 0; m <= inst.out_exact.terms.size(); ++m) {
                if (m > 0) {
                    const auto& t = inst.out_exact.terms[m - 1];
                    partial += t.set.members.contains(a) ? Rational(-t.coefficient / 2)
                                                         : Rational(t.coefficient / 2);
                }
                Rational resid = fa - partial;
                if (resid < 0) resid = -resid;
                if (resid > cq * pow23q(static_cast<int>(m)))
                    fail.record("exact violation, instance " + std::to_string(i));
                ++prefixes;
            }
        }

        const double cf = sup_norm(SampledFunction<double>(inst.domain, inst.values_float));
        for (const auto& [a, fa] : inst.values_float) {
            double partial = 0;
            double bound = cf;
            for (std::size_t m = 0; m <= inst.out_float.terms.size(); ++m) {
                if (m > 0) {
                    const auto& t = inst.out_float.terms[m - 1];
                    partial += t.set.members.contains(a) ? -t.coefficient / 2
                                                         : t.coefficient / 2;
                    bound = bound * 2.0 / 3.0;
                }
                if (std::abs(fa - partial) > bound + 1e-9)
                    fail.record("float violation, instance " + std::to_string(i));
                ++prefixes;
            }
        }
    }
    detail = std::to_string(prefixes) + " prefix bounds, zero violations";
    if (fail.failed) detail = fail.detail;
    return !fail.failed;
}

// ---------------------------------------------------------------------------
// criterion 3: two-sided sup bounds, and monotone approach under halved
// tolerances
// ---------------------------------------------------------------------------
bool criterion_sup_bounds(std::string& detail) {
    Failure fail;

    for (std::size_t i = 0; i < g_family.size(); ++i) {
        const auto& inst = g_family[i];

        const Rational cq = inst.out_exact.scale;
        Rational maxq(0);
        for (const auto& v : inst.out_exact.extended) {
            Rational m = v < 0 ? Rational(-v) : v;
            if (m > maxq) maxq = m;
        }
        const Rational tailq =
            inst.out_exact.terms.empty() ? cq : Rational(cq * pow23q(inst.out_exact.truncation_index + 1));
        if (maxq > cq - tailq || maxq < cq - tailq)
            fail.record("exact sup bound, instance " + std::to_string(i));

        const double cf = inst.out_float.scale;
        double maxf = 0;
        for (double v : inst.out_float.extended) maxf = std::max(maxf, std::abs(v));
        const double tailf =
            inst.out_float.terms.empty()
                ? cf
                : cf * std::pow(2.0 / 3.0, inst.out_float.truncation_index + 1);
        if (maxf > cf - tailf + 1e-9 || maxf < cf - tailf - 1e-9)
            fail.record("float sup bound, instance " + std::to_string(i));
    }

    // halve the tolerance five times; the measured sup must not decrease and
    // must close in on the sup norm from below
    std::size_t tested = 0;
    for (std::size_t i = 0; i < g_family.size() && tested < 40; ++i) {
        const auto& inst = g_family[i];
        if (inst.out_exact.scale == 0) continue;
        ++tested;
        SampledFunction<Rational> fq(inst.domain, inst.values_exact);
        const Rational cq = inst.out_exact.scale;

        Rational previous(-1);
        Rational eps(1, 1000000);
        for (int j = 0; j <= 5; ++j) {
            ExtensionOutcome<Rational> out = extend(inst.space, fq, eps, kLabel);
            Rational maxq(0);
            for (const auto& v : out.extended) {
                Rational m = v < 0 ? Rational(-v) : v;
                if (m > maxq) maxq = m;
            }
            if (maxq < previous) fail.record("sup not monotone, instance " + std::to_string(i));
            if (maxq != cq - cq * pow23q(out.truncation_index + 1))
                fail.record("sup < pinned value, instance " + std::to_string(i));
            if (maxq > cq) fail.record("sup exceeds the norm, instance " + std::to_string(i));
            previous = maxq;
            eps /= 2;
        }
    }
    detail = std::to_string(g_family.size()) + " instances, " + std::to_string(tested) +
             " halving ladders";
    if (fail.failed) detail = fail.detail;
    return !fail.failed;
}

// ---------------------------------------------------------------------------
// criterion 4: separation containments per step, plus the exhaustive sweep of
// all disjoint (M, N) pairs on line spaces of up to 6 points
// ---------------------------------------------------------------------------
template <class S>
bool replay_containment(const ExtensionOutcome<S>& out, const std::map<PointId, S>& values,
                        Failure& fail, std::size_t index) {
    if (out.terms.empty()) return true;
    const S c = out.scale;
    std::map<PointId, S> r;
    for (const auto& [id, v] : values) r.emplace(id, S(v / c));
    S power(1);
    for (const auto& t : out.terms) {
        const S cut = power / S(3);
        for (const auto& [a, v] : r) {
            if (v <= -cut && !t.set.members.contains(a))
                fail.record("low set escapes H, instance " + std::to_string(index));
            if (v >= cut && t.set.members.contains(a))
                fail.record("high set meets H, instance " + std::to_string(index));
        }
        const S step = power * S(2) / S(3);
        const S half = step / S(2);
        for (auto& [a, v] : r) {
            if (t.set.members.contains(a)) v += half;
            else v -= half;
        }
        power = step;
    }
    return !fail.failed;
}

bool criterion_containment(std::string& detail) {
    Failure fail;
    for (std::size_t i = 0; i < g_family.size(); ++i) {
        const auto& inst = g_family[i];
        replay_containment(inst.out_exact, inst.values_exact, fail, i);
        replay_containment(inst.out_float, inst.values_float, fail, i);
    }

    std::size_t pairs = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        AmbientSpace space = testsupport::line_space(n);
        std::size_t assignments = 1;
        for (std::size_t i = 0; i < n; ++i) assignments *= 3;
        for (std::size_t code = 0; code < assignments; ++code) {
            SubsetMask m(n), nset(n);
            std::size_t rest = code;
            for (PointId x = 0; x < n; ++x) {
                if (rest % 3 == 1) m.add(x);
                else if (rest % 3 == 2) nset.add(x);
                rest /= 3;
            }
            SeparatingSet h = separate(space, m, nset, kLabel);
            if (!m.is_subset_of(h.members)) fail.record("exhaustive: M not inside H");
            if (nset.intersects(h.members)) fail.record("exhaustive: N meets H");
            ++pairs;
        }
    }
    detail = "every step of " + std::to_string(2 * g_family.size()) + " runs, " +
             std::to_string(pairs) + " exhaustive (M,N) pairs";
    if (fail.failed) detail = fail.detail;
    return !fail.failed;
}

// ---------------------------------------------------------------------------
// criterion 5: positive-mode positivity, the affine identity, and the exact
// partial-sum identity
// ---------------------------------------------------------------------------
bool criterion_positive(std::string& detail) {
    g_positive_family = make_family(7070, 500, 0.0, 1.0);
    Failure fail;
    std::size_t identities = 0;

    for (std::size_t i = 0; i < g_positive_family.size(); ++i) {
        auto& inst = g_positive_family[i];
        SampledFunction<Rational> fq(inst.domain, inst.values_exact);
        SampledFunction<double> ff(inst.domain, inst.values_float);
        ExtensionOutcome<Rational> pos = extend_positive(inst.space, fq, Rational(1, 1000000), kLabel);
        ExtensionOutcome<double> posf = extend_positive(inst.space, ff, 1e-6, kLabel);

        for (const auto& v : pos.extended)
            if (v < 0) fail.record("negative exact output, instance " + std::to_string(i));
        for (double v : posf.extended)
            if (v < -1e-9) fail.record("negative float output, instance " + std::to_string(i));

        const Rational s = pos.scale;
        if (s == 0) continue;
        const int depth = pos.truncation_index;

        // affine identity against the signed run of g = 2 f/s - 1
        std::map<PointId, Rational> gq;
        for (const auto& [id, v] : inst.values_exact) gq.emplace(id, Rational(v / s * 2 - 1));
        ExtensionOutcome<Rational> sig = extend_at_depth(
            inst.space, SampledFunction<Rational>(inst.domain, gq), depth, Mode::Signed, kLabel);
        const Rational target = Rational(1) - pow23q(depth + 1);
        for (PointId x = 0; x < inst.space.size(); ++x) {
            if (Rational(2) * pos.extended[x] / s - sig.extended[x] != target)
                fail.record("exact affine identity, instance " + std::to_string(i));
            ++identities;
        }

        const double sf = posf.scale;
        std::map<PointId, double> gf;
        for (const auto& [id, v] : inst.values_float) gf.emplace(id, v / sf * 2 - 1);
        ExtensionOutcome<double> sigf =
            extend_at_depth(inst.space, SampledFunction<double>(inst.domain, gf),
                            posf.truncation_index, Mode::Signed, kLabel);
        const double targetf = 1.0 - std::pow(2.0 / 3.0, posf.truncation_index + 1);
        for (PointId x = 0; x < inst.space.size(); ++x)
            if (std::abs(2.0 * posf.extended[x] / sf - sigf.extended[x] - targetf) > 1e-9)
                fail.record("float affine identity, instance " + std::to_string(i));

        // partial-sum identity, exact: sum of (2/3)^(n+1) over the run
        Rational sum(0);
        for (const auto& t : pos.terms) sum += t.coefficient;
        if (sum != Rational(2) * s * (Rational(1) - pow23q(depth + 1)))
            fail.record("partial-sum identity, instance " + std::to_string(i));
    }
    detail = std::to_string(g_positive_family.size()) + " non-negative instances, " +
             std::to_string(identities) + " pointwise identities";
    if (fail.failed) detail = fail.detail;
    return !fail.failed;
}

// ---------------------------------------------------------------------------
// criterion 6: engine (rational) is identical to the straight-line oracle on
// the exhaustive small family
// ---------------------------------------------------------------------------
bool criterion_oracle(std::string& detail) {
    Failure fail;
    const std::vector<Rational> grid{Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2),
                                     Rational(1)};
    std::size_t instances = 0;

    for (std::size_t n = 1; n <= 8 && !fail.failed; ++n) {
        AmbientSpace space = testsupport::line_space(n);
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            if (__builtin_popcount(mask) > 4) continue;
            std::vector<PointId> domain_ids;
            for (PointId x = 0; x < n; ++x)
                if (mask & (1u << x)) domain_ids.push_back(x);
            SubsetMask domain = SubsetMask::from_ids(n, domain_ids);

            std::size_t combos = 1;
            for (std::size_t i = 0; i < domain_ids.size(); ++i) combos *= grid.size();
            for (std::size_t code = 0; code < combos; ++code) {
                std::map<PointId, Rational> values;
                std::size_t rest = code;
                for (PointId a : domain_ids) {
                    values.emplace(a, grid[rest % grid.size()]);
                    rest /= grid.size();
                }
                ++instances;

                const int depth = 12;
                ExtensionOutcome<Rational> eng = extend_at_depth(
                    space, SampledFunction<Rational>(domain, values), depth, Mode::Signed,
                    kLabel);
                OracleRun orc = oracle_extend(space, domain_ids, values, depth, Mode::Signed);

                if (eng.scale != orc.scale) fail.record("scale differs");
                if (orc.scale == 0) {
                    if (!eng.terms.empty()) fail.record("zero case has terms");
                } else if (eng.terms.size() != orc.coefficients.size()) {
                    fail.record("term count differs");
                } else {
                    for (std::size_t k = 0; k < eng.terms.size(); ++k) {
                        if (eng.terms[k].coefficient != orc.coefficients[k])
                            fail.record("coefficient differs");
                        if (eng.terms[k].set.members.ids() != orc.sets[k])
                            fail.record("separating set differs");
                    }
                }
                for (PointId x = 0; x < n; ++x)
                    if (eng.extended[x] != orc.extended[x]) fail.record("value differs");
                if (fail.failed) {
                    fail.detail += " (n=" + std::to_string(n) + ", code " +
                                   std::to_string(code) + ")";
                    break;
                }
            }
            if (fail.failed) break;
        }
    }

    // spot-check shallower depths on the smallest spaces
    for (std::size_t n = 1; n <= 3 && !fail.failed; ++n) {
        AmbientSpace space = testsupport::line_space(n);
        std::vector<PointId> domain_ids;
        for (PointId x = 0; x < n; ++x) domain_ids.push_back(x);
        SubsetMask domain = SubsetMask::from_ids(n, domain_ids);
        std::map<PointId, Rational> values;
        for (PointId a : domain_ids) values.emplace(a, grid[(a + 1) % grid.size()]);
        for (int depth : {0, 1, 5}) {
            ExtensionOutcome<Rational> eng = extend_at_depth(
                space, SampledFunction<Rational>(domain, values), depth, Mode::Signed, kLabel);
            OracleRun orc = oracle_extend(space, domain_ids, values, depth, Mode::Signed);
            for (PointId x = 0; x < n; ++x)
                if (eng.extended[x] != orc.extended[x]) fail.record("shallow depth differs");
        }
    }

    detail = std::to_string(instances) + " exhaustive instances at depth 12";
    if (fail.failed) detail = fail.detail;
    return !fail.failed;
}

// ---------------------------------------------------------------------------
// criterion 7: the three hand-derived golden instances, exact
// ---------------------------------------------------------------------------
bool criterion_golden(std::string& detail) {
    Failure fail;
    const std::string dir = BAIREX_INSTANCE_DIR;
    const Rational limit = Rational(1) - pow23q(6);  // 665/729

    {
        ProblemInstance inst = parse_instance(testsupport::slurp(dir + "/line5_step.json"));
        auto out = std::get<ExtensionOutcome<Rational>>(run_instance(inst));
        if (out.truncation_index != 5) fail.record("step: K != 5");
        if (out.error_bound != pow23q(6)) fail.record("step: bound != (2/3)^6");
        for (const auto& t : out.terms)
            if (t.set.members.ids() != std::vector<PointId>{0, 1})
                fail.record("step: H_n != {0,1}");
        std::vector<Rational> expect{-limit, -limit, limit, limit, limit};
        if (out.extended != expect) fail.record("step: values");
    }
    {
        ProblemInstance inst = parse_instance(testsupport::slurp(dir + "/line5_const.json"));
        auto out = std::get<ExtensionOutcome<Rational>>(run_instance(inst));
        if (out.truncation_index != 5) fail.record("const: K != 5");
        for (const auto& t : out.terms)
            if (!t.set.members.empty()) fail.record("const: H_n nonempty");
        for (const auto& v : out.extended)
            if (v != limit) fail.record("const: values");
    }
    {
        ProblemInstance inst = parse_instance(testsupport::slurp(dir + "/line5_positive.json"));
        auto out = std::get<ExtensionOutcome<Rational>>(run_instance(inst));
        if (out.truncation_index != 5) fail.record("positive: K != 5");
        for (const auto& t : out.terms)
            if (t.set.members.ids() != std::vector<PointId>{2, 3, 4})
                fail.record("positive: G_n != {2,3,4}");
        std::vector<Rational> expect{Rational(0), Rational(0), limit, limit, limit};
        if (out.extended != expect) fail.record("positive: values");
    }
    detail = "step, constant and positive instances reproduced exactly";
    if (fail.failed) detail = fail.detail;
    return !fail.failed;
}

// ---------------------------------------------------------------------------
// criterion 8: byte-identical reruns, and three injected mutations caught by
// the command-line verifier with exit 2
// ---------------------------------------------------------------------------
bool criterion_cli(std::string& detail) {
    Failure fail;
    const std::string cli = BAIREX_CLI_PATH;
    const std::string dir = BAIREX_INSTANCE_DIR;
    const std::string tmp = testsupport::make_temp_dir("acceptance");

    for (int i = 0; i < 3; ++i) {
        auto run = testsupport::run_command(
            cli + " extend " + dir + "/line5_step.json -o " + tmp + "/run" +
                std::to_string(i) + ".json",
            tmp);
        if (run.exit_code != 0) fail.record("extend exit " + std::to_string(run.exit_code));
    }
    const std::string first = testsupport::slurp(tmp + "/run0.json");
    if (first.empty()) fail.record("empty result file");
    if (first != testsupport::slurp(tmp + "/run1.json") ||
        first != testsupport::slurp(tmp + "/run2.json"))
        fail.record("result files differ between runs");

    auto posrun = testsupport::run_command(
        cli + " extend " + dir + "/line5_positive.json -o " + tmp + "/pos.json", tmp);
    if (posrun.exit_code != 0) fail.record("positive extend failed");
    const std::string positive = testsupport::slurp(tmp + "/pos.json");

    struct Mutation {
        const char* tag;
        const char* instance;
        std::function<void(json&)> apply;
    };
    const Mutation mutations[] = {
        {"coefficient perturbation", "line5_step.json",
         [](json& doc) { doc["terms"][1]["coefficient"] = "40001/90000"; }},
        {"membership flip", "line5_step.json",
         [](json& doc) { doc["terms"][2]["H"] = json::array({0, 1, 3}); }},
        {"wrong complement", "line5_positive.json",
         [](json& doc) { doc["terms"][0]["H"] = json::array({0, 1}); }},
    };
    for (const auto& m : mutations) {
        json doc = json::parse(std::string(m.instance) == "line5_step.json" ? first : positive);
        m.apply(doc);
        const std::string path = tmp + "/mutated.json";
        testsupport::spit(path, doc.dump(2) + "\n");
        auto verify = testsupport::run_command(
            cli + " verify " + path + " " + dir + "/" + m.instance + " -o " + tmp +
                "/report.json",
            tmp);
        if (verify.exit_code != 2)
            fail.record(std::string(m.tag) + " exited " + std::to_string(verify.exit_code));
        json rep = json::parse(testsupport::slurp(tmp + "/report.json"));
        if (rep["overall"] != false) fail.record(std::string(m.tag) + " not flagged");
    }

    detail = "3 byte-identical runs, 3 mutations caught with exit 2";
    if (fail.failed) detail = fail.detail;
    return !fail.failed;
}

struct Criterion {
    int number;
    const char* title;
    double budget_seconds;  // 0 = no stated budget
    std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "term magnitudes are exact", 10.0, criterion_term_magnitude},
        {2, "restriction prefix bounds hold", 0.0, criterion_prefix_bounds},
        {3, "sup-norm bounds and monotone approach", 0.0, criterion_sup_bounds},
        {4, "separation containments", 5.0, criterion_containment},
        {5, "positive extension and affine identity", 0.0, criterion_positive},
        {6, "engine matches the rational oracle", 60.0, criterion_oracle},
        {7, "golden instances reproduce exactly", 0.0, criterion_golden},
        {8, "determinism and fault sensitivity", 0.0, criterion_cli},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool pass = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && elapsed >= c.budget_seconds) {
            pass = false;
            detail += " [over the " + std::to_string(static_cast<int>(c.budget_seconds)) +
                      "s budget]";
        }
        if (!pass) ++failures;
        std::printf("criterion %d [%s] %s (%.2fs; %s)\n", c.number, pass ? "PASS" : "FAIL",
                    c.title, elapsed, detail.c_str());
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all criteria passed\n");
    return failures;
}
