#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "bairex/errors.hpp"

namespace bairex {

using PointId = std::uint32_t;

enum class Metric { Euclidean, Manhattan, Chebyshev };

Metric metric_from_name(std::string_view name);
std::string_view metric_name(Metric m);

// Subset of a finite point set, indexed by dense ids 0..space_size-1.
class SubsetMask {
public:
    SubsetMask() = default;
    explicit SubsetMask(std::size_t space_size) : bits_(space_size, false) {}
    static SubsetMask from_ids(std::size_t space_size, std::span<const PointId> ids);
    static SubsetMask full(std::size_t space_size);

    std::size_t space_size() const noexcept { return bits_.size(); }
    std::size_t count() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    bool contains(PointId id) const { return id < bits_.size() && bits_[id]; }

    void add(PointId id);
    void remove(PointId id);

    // Member ids in increasing order.
    std::vector<PointId> ids() const;
    SubsetMask complemented() const;
    bool intersects(const SubsetMask& other) const;
    bool is_subset_of(const SubsetMask& other) const;

    friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

private:
    std::vector<bool> bits_;
    std::size_t count_ = 0;
};

// Finite point set with a symmetric distance matrix, either given explicitly
// or derived from coordinate rows under a named metric. Stands in for the
// ambient space the extension maps into; every subset of a finite space is
// simultaneously open, closed, a countable-union-of-closed and a
// countable-intersection-of-open set, so no topology is tracked beyond the
// symbolic class labels.
class AmbientSpace {
public:
    // Unusable empty space; exists so instances can live in containers before
    // being built by one of the factories.
    AmbientSpace() = default;

    static AmbientSpace from_coordinates(std::vector<std::vector<double>> coords, Metric metric);
    static AmbientSpace from_matrix(const std::vector<std::vector<double>>& matrix);

    std::size_t size() const noexcept { return size_; }
    double distance(PointId x, PointId y) const;

    // Min distance from x to a member of s. Empty s yields +infinity, so
    // degenerate separation cases resolve by ordinary comparison.
    double distance_to_set(PointId x, const SubsetMask& s) const;

    bool has_coordinates() const noexcept { return coords_.has_value(); }
    const std::vector<std::vector<double>>& coordinates() const;
    std::optional<Metric> metric() const noexcept { return metric_; }

private:
    void validate_matrix() const;

    std::size_t size_ = 0;
    std::vector<double> dist_;  // row-major size_ x size_
    std::optional<std::vector<std::vector<double>>> coords_;
    std::optional<Metric> metric_;
};

enum class LabelKind { Ambiguous, Multiplicative, Additive };

std::string_view label_kind_name(LabelKind k);

// Symbolic Borel-class tag. In the finite model every subset belongs to every
// class, so the label records which class index a run was parameterized with.
struct ClassLabel {
    unsigned alpha = 1;
    LabelKind kind = LabelKind::Ambiguous;

    friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

// Bounded function sampled on a nonempty subset of the ambient space.
template <class S>
class SampledFunction {
public:
    SampledFunction(SubsetMask domain, std::map<PointId, S> values)
        : domain_(std::move(domain)), values_(std::move(values)) {
        if (domain_.empty())
            throw ValidationError("domain_subset is empty");
        if (values_.size() != domain_.count())
            throw ValidationError("values must contain exactly one entry per domain id");
        for (const auto& [id, v] : values_) {
            if (!domain_.contains(id))
                throw ValidationError("values key " + std::to_string(id) +
                                      " is not in domain_subset");
            if constexpr (std::is_floating_point_v<S>) {
                if (!std::isfinite(v))
                    throw ValidationError("values[" + std::to_string(id) + "] is not finite");
            }
        }
    }

    const SubsetMask& domain() const noexcept { return domain_; }
    const std::map<PointId, S>& values() const noexcept { return values_; }

    const S& at(PointId id) const {
        auto it = values_.find(id);
        if (it == values_.end())
            throw ValidationError("point " + std::to_string(id) + " is outside the domain");
        return it->second;
    }

private:
    SubsetMask domain_;
    std::map<PointId, S> values_;
};

// Max of |value| over the domain; zero for the identically-zero function.
template <class S>
S sup_norm(const SampledFunction<S>& f) {
    S best(0);
    for (const auto& [id, v] : f.values()) {
        S a = v < S(0) ? S(-v) : v;
        if (a > best) best = a;
    }
    return best;
}

}  // namespace bairex
