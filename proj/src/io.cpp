#include "bairex/io.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace bairex {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct NumberReading {
    double value_float = 0.0;
    Rational value_exact;
};

NumberReading read_number(const json& node, const std::string& field) {
    NumberReading out;
    if (node.is_number()) {
        out.value_float = node.get<double>();
        if (!std::isfinite(out.value_float))
            throw ValidationError(field + " is not finite");
        out.value_exact = rational_from_double(out.value_float);
    } else if (node.is_string()) {
        out.value_exact = rational_from_text(node.get<std::string>());
        out.value_float = to_double(out.value_exact);
    } else {
        throw ValidationError(field + " must be a number or a numeric string");
    }
    return out;
}

PointId parse_id_key(const std::string& key, const std::string& field) {
    PointId id = 0;
    auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
    if (ec != std::errc{} || p != key.data() + key.size())
        throw ValidationError(field + " key '" + key + "' is not a point id");
    return id;
}

void reject_unknown_keys(const json& doc, const std::set<std::string>& known,
                         const std::string& what) {
    for (const auto& [key, value] : doc.items()) {
        if (!known.count(key))
            throw ValidationError(what + " has unknown field '" + key + "'");
        (void)value;
    }
}

std::vector<std::vector<double>> read_matrix(const json& node, const std::string& field) {
    if (!node.is_array())
        throw ValidationError(field + " must be an array of rows");
    std::vector<std::vector<double>> rows;
    rows.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        const json& row = node[i];
        if (!row.is_array())
            throw ValidationError(field + "[" + std::to_string(i) + "] must be an array");
        std::vector<double> values;
        values.reserve(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!row[j].is_number())
                throw ValidationError(field + "[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "] must be a number");
            values.push_back(row[j].get<double>());
        }
        rows.push_back(std::move(values));
    }
    return rows;
}

}  // namespace

Arithmetic arithmetic_from_name(std::string_view name) {
    if (name == "float") return Arithmetic::Float;
    if (name == "rational") return Arithmetic::Exact;
    throw ValidationError("unknown arithmetic '" + std::string(name) +
                          "' (expected float or rational)");
}

std::string_view arithmetic_name(Arithmetic a) {
    return a == Arithmetic::Float ? "float" : "rational";
}

ProblemInstance parse_instance(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("instance must be a JSON object");
    reject_unknown_keys(doc,
                        {"points", "metric", "distance_matrix", "domain_subset", "values",
                         "tolerance", "mode", "alpha", "arithmetic"},
                        "instance");

    ProblemInstance inst;

    const bool has_points = doc.contains("points");
    const bool has_matrix = doc.contains("distance_matrix");
    if (has_points == has_matrix)
        throw ValidationError("instance needs exactly one of 'points' or 'distance_matrix'");
    if (has_points) {
        Metric metric = Metric::Euclidean;
        if (doc.contains("metric")) {
            if (!doc["metric"].is_string())
                throw ValidationError("metric must be a string");
            metric = metric_from_name(doc["metric"].get<std::string>());
        }
        inst.space = AmbientSpace::from_coordinates(read_matrix(doc["points"], "points"), metric);
    } else {
        if (doc.contains("metric"))
            throw ValidationError("metric applies to 'points', not 'distance_matrix'");
        inst.space = AmbientSpace::from_matrix(read_matrix(doc["distance_matrix"],
                                                           "distance_matrix"));
    }

    if (!doc.contains("domain_subset") || !doc["domain_subset"].is_array())
        throw ValidationError("domain_subset must be an array of point ids");
    inst.domain = SubsetMask(inst.space.size());
    for (const json& idnode : doc["domain_subset"]) {
        if (!idnode.is_number_unsigned())
            throw ValidationError("domain_subset entries must be non-negative integers");
        inst.domain.add(idnode.get<PointId>());
    }
    if (inst.domain.empty()) throw ValidationError("domain_subset is empty");

    if (!doc.contains("values") || !doc["values"].is_object())
        throw ValidationError("values must be an object mapping point ids to numbers");
    for (const auto& [key, node] : doc["values"].items()) {
        PointId id = parse_id_key(key, "values");
        if (!inst.domain.contains(id))
            throw ValidationError("values key " + std::to_string(id) +
                                  " is not in domain_subset");
        NumberReading reading = read_number(node, "values[" + key + "]");
        inst.values_float[id] = reading.value_float;
        inst.values_exact[id] = reading.value_exact;
    }
    for (PointId id : inst.domain.ids())
        if (!inst.values_float.count(id))
            throw ValidationError("values[" + std::to_string(id) +
                                  "] missing for domain_subset id " + std::to_string(id));

    if (doc.contains("tolerance")) {
        NumberReading reading = read_number(doc["tolerance"], "tolerance");
        inst.tolerance_float = reading.value_float;
        inst.tolerance_exact = reading.value_exact;
    }
    if (!(inst.tolerance_exact > 0))
        throw ValidationError("tolerance must be positive");

    if (doc.contains("mode")) {
        if (!doc["mode"].is_string()) throw ValidationError("mode must be a string");
        inst.mode = mode_from_name(doc["mode"].get<std::string>());
    }
    if (doc.contains("alpha")) {
        if (!doc["alpha"].is_number_unsigned())
            throw ValidationError("alpha must be a non-negative integer");
        inst.alpha = doc["alpha"].get<unsigned>();
    }
    if (doc.contains("arithmetic")) {
        if (!doc["arithmetic"].is_string())
            throw ValidationError("arithmetic must be a string");
        inst.arithmetic = arithmetic_from_name(doc["arithmetic"].get<std::string>());
    }
    return inst;
}

Arithmetic outcome_arithmetic(const AnyOutcome& result) {
    return std::holds_alternative<ExtensionOutcome<double>>(result) ? Arithmetic::Float
                                                                    : Arithmetic::Exact;
}

AnyOutcome run_instance(const ProblemInstance& inst) {
    const ClassLabel label{inst.alpha, LabelKind::Ambiguous};
    if (inst.arithmetic == Arithmetic::Float) {
        SampledFunction<double> f(inst.domain, inst.values_float);
        return inst.mode == Mode::Signed
                   ? extend(inst.space, f, inst.tolerance_float, label)
                   : extend_positive(inst.space, f, inst.tolerance_float, label);
    }
    SampledFunction<Rational> f(inst.domain, inst.values_exact);
    return inst.mode == Mode::Signed
               ? AnyOutcome(extend(inst.space, f, inst.tolerance_exact, label))
               : AnyOutcome(extend_positive(inst.space, f, inst.tolerance_exact, label));
}

namespace {

ordered_json scalar_to_json(double v) { return v; }
ordered_json scalar_to_json(const Rational& v) { return to_text(v); }

template <class S>
ordered_json outcome_to_json(const ExtensionOutcome<S>& out, Arithmetic arithmetic) {
    ordered_json doc;
    doc["c"] = scalar_to_json(out.scale);
    doc["mode"] = std::string(mode_name(out.mode));
    doc["alpha"] = out.alpha.alpha;
    doc["arithmetic"] = std::string(arithmetic_name(arithmetic));
    doc["K"] = out.truncation_index;
    doc["error_bound"] = scalar_to_json(out.error_bound);
    ordered_json terms = ordered_json::array();
    for (const auto& t : out.terms) {
        ordered_json term;
        term["n"] = t.index;
        term["coefficient"] = scalar_to_json(t.coefficient);
        term["H"] = t.set.members.ids();
        terms.push_back(std::move(term));
    }
    doc["terms"] = std::move(terms);
    ordered_json extended = ordered_json::object();
    for (PointId x = 0; x < out.extended.size(); ++x)
        extended[std::to_string(x)] = scalar_to_json(out.extended[x]);
    doc["extended"] = std::move(extended);
    return doc;
}

double scalar_from_json_float(const json& node, const std::string& field) {
    if (!node.is_number())
        throw ValidationError(field + " must be a number in float mode");
    return node.get<double>();
}

Rational scalar_from_json_exact(const json& node, const std::string& field) {
    if (node.is_string()) return rational_from_text(node.get<std::string>());
    if (node.is_number_integer()) return Rational(node.get<long>());
    if (node.is_number()) return rational_from_double(node.get<double>());
    throw ValidationError(field + " must be a number or fraction string");
}

template <class S>
ExtensionOutcome<S> outcome_from_json(const json& doc, Mode mode, unsigned alpha,
                                      auto read_scalar) {
    ExtensionOutcome<S> out;
    out.mode = mode;
    out.alpha = ClassLabel{alpha, LabelKind::Ambiguous};
    out.scale = read_scalar(doc.at("c"), "c");
    if (!doc.at("K").is_number_integer())
        throw ValidationError("K must be an integer");
    out.truncation_index = doc.at("K").get<int>();
    if (out.truncation_index < 0) throw ValidationError("K must be non-negative");
    out.error_bound = read_scalar(doc.at("error_bound"), "error_bound");

    const json& extended = doc.at("extended");
    if (!extended.is_object())
        throw ValidationError("extended must be an object mapping point ids to values");
    const std::size_t size = extended.size();
    if (size == 0) throw ValidationError("extended is empty");
    out.extended.assign(size, S(0));
    std::vector<bool> seen(size, false);
    for (const auto& [key, node] : extended.items()) {
        PointId id = parse_id_key(key, "extended");
        if (id >= size)
            throw ValidationError("extended ids must be dense 0.." + std::to_string(size - 1) +
                                  ", got " + key);
        if (seen[id]) throw ValidationError("extended repeats id " + key);
        seen[id] = true;
        out.extended[id] = read_scalar(node, "extended[" + key + "]");
    }

    const json& terms = doc.at("terms");
    if (!terms.is_array()) throw ValidationError("terms must be an array");
    if (terms.empty() && out.truncation_index != 0)
        throw ValidationError("a result with no terms must have K = 0");
    if (terms.size() != static_cast<std::size_t>(out.truncation_index) + 1 && !terms.empty())
        throw ValidationError("terms length " + std::to_string(terms.size()) +
                              " does not match K = " + std::to_string(out.truncation_index));
    for (std::size_t n = 0; n < terms.size(); ++n) {
        const json& tnode = terms[n];
        reject_unknown_keys(tnode, {"n", "coefficient", "H"},
                            "terms[" + std::to_string(n) + "]");
        if (!tnode.contains("n") || !tnode["n"].is_number_integer() ||
            tnode["n"].get<long long>() != static_cast<long long>(n))
            throw ValidationError("terms must be indexed densely by n");
        ExtensionTerm<S> t;
        t.index = static_cast<int>(n);
        t.coefficient = read_scalar(tnode.at("coefficient"),
                                    "terms[" + std::to_string(n) + "].coefficient");
        t.set.label = ClassLabel{alpha, LabelKind::Ambiguous};
        t.set.members = SubsetMask(size);
        if (!tnode.contains("H") || !tnode["H"].is_array())
            throw ValidationError("terms[" + std::to_string(n) + "].H must be an id array");
        for (const json& idnode : tnode["H"]) {
            if (!idnode.is_number_unsigned())
                throw ValidationError("terms[" + std::to_string(n) +
                                      "].H entries must be non-negative integers");
            t.set.members.add(idnode.get<PointId>());
        }
        out.terms.push_back(std::move(t));
    }
    return out;
}

}  // namespace

std::string result_to_json(const AnyOutcome& result) {
    const Arithmetic arithmetic = outcome_arithmetic(result);
    ordered_json doc = std::visit(
        [&](const auto& out) { return outcome_to_json(out, arithmetic); }, result);
    return doc.dump(2) + "\n";
}

AnyOutcome parse_result(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("result is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("result must be a JSON object");
    reject_unknown_keys(doc, {"c", "mode", "alpha", "arithmetic", "K", "error_bound", "terms",
                              "extended"},
                        "result");
    for (const char* field : {"c", "mode", "alpha", "arithmetic", "K", "error_bound", "terms",
                              "extended"})
        if (!doc.contains(field))
            throw ValidationError(std::string("result is missing '") + field + "'");

    if (!doc["mode"].is_string()) throw ValidationError("mode must be a string");
    Mode mode = mode_from_name(doc["mode"].get<std::string>());
    if (!doc["alpha"].is_number_unsigned())
        throw ValidationError("alpha must be a non-negative integer");
    unsigned alpha = doc["alpha"].get<unsigned>();
    if (!doc["arithmetic"].is_string()) throw ValidationError("arithmetic must be a string");
    Arithmetic arithmetic = arithmetic_from_name(doc["arithmetic"].get<std::string>());

    if (arithmetic == Arithmetic::Float)
        return outcome_from_json<double>(doc, mode, alpha, scalar_from_json_float);
    return outcome_from_json<Rational>(doc, mode, alpha, scalar_from_json_exact);
}

VerificationReport verify_result(const ProblemInstance& inst, const AnyOutcome& result) {
    if (outcome_arithmetic(result) != inst.arithmetic)
        throw MismatchError("result arithmetic is " +
                            std::string(arithmetic_name(outcome_arithmetic(result))) +
                            ", instance requests " +
                            std::string(arithmetic_name(inst.arithmetic)));
    return std::visit(
        [&](const auto& out) {
            if (out.mode != inst.mode)
                throw MismatchError("result mode is " + std::string(mode_name(out.mode)) +
                                    ", instance requests " +
                                    std::string(mode_name(inst.mode)));
            if (out.alpha.alpha != inst.alpha)
                throw MismatchError("result alpha is " + std::to_string(out.alpha.alpha) +
                                    ", instance requests " + std::to_string(inst.alpha));
            using S = std::decay_t<decltype(out.scale)>;
            if constexpr (std::is_same_v<S, double>) {
                SampledFunction<double> f(inst.domain, inst.values_float);
                return check_equations(inst.space, f, out);
            } else {
                SampledFunction<Rational> f(inst.domain, inst.values_exact);
                return check_equations(inst.space, f, out);
            }
        },
        result);
}

std::string report_to_json(const VerificationReport& report) {
    ordered_json doc;
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json entry;
        entry["name"] = c.name;
        entry["pass"] = c.pass;
        entry["slack"] = c.slack;
        entry["witness"] = c.witness;
        checks.push_back(std::move(entry));
    }
    doc["checks"] = std::move(checks);
    doc["overall"] = report.overall;
    return doc.dump(2) + "\n";
}

std::string plot_table(const ProblemInstance& inst, const AnyOutcome& result) {
    if (!inst.space.has_coordinates())
        throw ValidationError(
            "plot requires point coordinates; the space was built from a distance matrix");
    const auto& coords = inst.space.coordinates();
    const std::size_t dim = coords.front().size();
    if (dim != 1 && dim != 2)
        throw ValidationError("plot requires 1-D or 2-D coordinates, space has " +
                              std::to_string(dim) + "-D");

    return std::visit(
        [&](const auto& out) {
            if (out.extended.size() != inst.space.size())
                throw MismatchError("result covers " + std::to_string(out.extended.size()) +
                                    " points, space has " + std::to_string(inst.space.size()));
            using S = std::decay_t<decltype(out.scale)>;
            const std::size_t nterms = out.terms.size();

            std::string table = dim == 1 ? "id,x,in_A,f,extended" : "id,x,y,in_A,f,extended";
            for (std::size_t m = 0; m < nterms; ++m) table += ",s" + std::to_string(m);
            table += "\n";

            for (PointId x = 0; x < inst.space.size(); ++x) {
                table += std::to_string(x);
                for (std::size_t d = 0; d < dim; ++d) table += "," + to_text(coords[x][d]);
                const bool in_domain = inst.domain.contains(x);
                table += in_domain ? ",1" : ",0";
                table += ",";
                if (in_domain) table += to_text(inst.values_float.at(x));
                table += ",";
                if constexpr (std::is_same_v<S, double>) table += to_text(out.extended[x]);
                else table += to_text(to_double(out.extended[x]));

                S partial(0);
                for (std::size_t m = 0; m < nterms; ++m) {
                    const auto& t = out.terms[m];
                    S half = t.coefficient / S(2);
                    if (out.mode == Mode::Signed) {
                        if (t.set.members.contains(x)) partial -= half;
                        else partial += half;
                    } else if (t.set.members.contains(x)) {
                        partial += half;
                    }
                    if constexpr (std::is_same_v<S, double>) table += "," + to_text(partial);
                    else table += "," + to_text(to_double(partial));
                }
                table += "\n";
            }
            return table;
        },
        result);
}

}  // namespace bairex
