#include "bairex/space.hpp"

#include <cmath>
#include <limits>

namespace bairex {

Metric metric_from_name(std::string_view name) {
    if (name == "euclidean") return Metric::Euclidean;
    if (name == "manhattan") return Metric::Manhattan;
    if (name == "chebyshev") return Metric::Chebyshev;
    throw ValidationError("unknown metric '" + std::string(name) +
                          "' (expected euclidean, manhattan or chebyshev)");
}

std::string_view metric_name(Metric m) {
    switch (m) {
        case Metric::Euclidean: return "euclidean";
        case Metric::Manhattan: return "manhattan";
        case Metric::Chebyshev: return "chebyshev";
    }
    return "euclidean";
}

std::string_view label_kind_name(LabelKind k) {
    switch (k) {
        case LabelKind::Ambiguous: return "ambiguous";
        case LabelKind::Multiplicative: return "multiplicative";
        case LabelKind::Additive: return "additive";
    }
    return "ambiguous";
}

SubsetMask SubsetMask::from_ids(std::size_t space_size, std::span<const PointId> ids) {
    SubsetMask mask(space_size);
    for (PointId id : ids) mask.add(id);
    return mask;
}

SubsetMask SubsetMask::full(std::size_t space_size) {
    SubsetMask mask(space_size);
    for (PointId id = 0; id < space_size; ++id) mask.add(id);
    return mask;
}

void SubsetMask::add(PointId id) {
    if (id >= bits_.size())
        throw ValidationError("point id " + std::to_string(id) + " out of range for " +
                              std::to_string(bits_.size()) + " points");
    if (!bits_[id]) {
        bits_[id] = true;
        ++count_;
    }
}

void SubsetMask::remove(PointId id) {
    if (id >= bits_.size())
        throw ValidationError("point id " + std::to_string(id) + " out of range for " +
                              std::to_string(bits_.size()) + " points");
    if (bits_[id]) {
        bits_[id] = false;
        --count_;
    }
}

std::vector<PointId> SubsetMask::ids() const {
    std::vector<PointId> out;
    out.reserve(count_);
    for (PointId id = 0; id < bits_.size(); ++id)
        if (bits_[id]) out.push_back(id);
    return out;
}

SubsetMask SubsetMask::complemented() const {
    SubsetMask out(bits_.size());
    for (PointId id = 0; id < bits_.size(); ++id)
        if (!bits_[id]) out.add(id);
    return out;
}

bool SubsetMask::intersects(const SubsetMask& other) const {
    std::size_t n = std::min(bits_.size(), other.bits_.size());
    for (PointId id = 0; id < n; ++id)
        if (bits_[id] && other.bits_[id]) return true;
    return false;
}

bool SubsetMask::is_subset_of(const SubsetMask& other) const {
    for (PointId id = 0; id < bits_.size(); ++id)
        if (bits_[id] && !other.contains(id)) return false;
    return true;
}

namespace {

double point_distance(const std::vector<double>& a, const std::vector<double>& b, Metric m) {
    double acc = 0.0;
    switch (m) {
        case Metric::Euclidean:
            for (std::size_t i = 0; i < a.size(); ++i) {
                double d = a[i] - b[i];
                acc += d * d;
            }
            return std::sqrt(acc);
        case Metric::Manhattan:
            for (std::size_t i = 0; i < a.size(); ++i) acc += std::fabs(a[i] - b[i]);
            return acc;
        case Metric::Chebyshev:
            for (std::size_t i = 0; i < a.size(); ++i)
                acc = std::max(acc, std::fabs(a[i] - b[i]));
            return acc;
    }
    return acc;
}

}  // namespace

AmbientSpace AmbientSpace::from_coordinates(std::vector<std::vector<double>> coords,
                                            Metric metric) {
    if (coords.empty()) throw ValidationError("points is empty");
    const std::size_t dim = coords.front().size();
    if (dim == 0) throw ValidationError("points[0] has no coordinates");
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].size() != dim)
            throw ValidationError("points[" + std::to_string(i) + "] has " +
                                  std::to_string(coords[i].size()) + " coordinates, expected " +
                                  std::to_string(dim));
        for (double c : coords[i])
            if (!std::isfinite(c))
                throw ValidationError("points[" + std::to_string(i) +
                                      "] contains a non-finite coordinate");
    }
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = i + 1; j < coords.size(); ++j)
            if (coords[i] == coords[j])
                throw ValidationError("points[" + std::to_string(j) + "] duplicates points[" +
                                      std::to_string(i) + "]");

    AmbientSpace space;
    space.size_ = coords.size();
    space.dist_.assign(space.size_ * space.size_, 0.0);
    for (std::size_t i = 0; i < space.size_; ++i)
        for (std::size_t j = i + 1; j < space.size_; ++j) {
            double d = point_distance(coords[i], coords[j], metric);
            space.dist_[i * space.size_ + j] = d;
            space.dist_[j * space.size_ + i] = d;
        }
    space.coords_ = std::move(coords);
    space.metric_ = metric;
    space.validate_matrix();
    return space;
}

AmbientSpace AmbientSpace::from_matrix(const std::vector<std::vector<double>>& matrix) {
    if (matrix.empty()) throw ValidationError("distance_matrix is empty");
    const std::size_t n = matrix.size();
    AmbientSpace space;
    space.size_ = n;
    space.dist_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix[i].size() != n)
            throw ValidationError("distance_matrix row " + std::to_string(i) + " has " +
                                  std::to_string(matrix[i].size()) + " entries, expected " +
                                  std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(matrix[i][j]))
                throw ValidationError("distance_matrix[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "] is not finite");
            space.dist_[i * n + j] = matrix[i][j];
        }
    }
    space.validate_matrix();
    return space;
}

void AmbientSpace::validate_matrix() const {
    for (std::size_t i = 0; i < size_; ++i) {
        if (dist_[i * size_ + i] != 0.0)
            throw ValidationError("distance_matrix[" + std::to_string(i) + "][" +
                                  std::to_string(i) + "] = " +
                                  std::to_string(dist_[i * size_ + i]) +
                                  ": diagonal must be zero");
        for (std::size_t j = 0; j < size_; ++j) {
            double d = dist_[i * size_ + j];
            if (d < 0.0)
                throw ValidationError("distance_matrix[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "] = " + std::to_string(d) +
                                      ": distances must be non-negative");
            if (d != dist_[j * size_ + i])
                throw ValidationError("distance_matrix[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "] != distance_matrix[" +
                                      std::to_string(j) + "][" + std::to_string(i) +
                                      "]: matrix must be symmetric");
            if (i != j && d == 0.0)
                throw ValidationError("distance_matrix[" + std::to_string(i) + "][" +
                                      std::to_string(j) +
                                      "] = 0: distinct points must have positive distance");
        }
    }
}

double AmbientSpace::distance(PointId x, PointId y) const {
    if (x >= size_ || y >= size_)
        throw ValidationError("point id out of range for " + std::to_string(size_) + " points");
    return dist_[static_cast<std::size_t>(x) * size_ + y];
}

double AmbientSpace::distance_to_set(PointId x, const SubsetMask& s) const {
    if (x >= size_)
        throw ValidationError("point id " + std::to_string(x) + " out of range for " +
                              std::to_string(size_) + " points");
    if (s.space_size() != size_)
        throw ValidationError("subset indexes " + std::to_string(s.space_size()) +
                              " points, space has " + std::to_string(size_));
    double best = std::numeric_limits<double>::infinity();
    const std::size_t row = static_cast<std::size_t>(x) * size_;
    for (PointId id = 0; id < size_; ++id)
        if (s.contains(id) && dist_[row + id] < best) best = dist_[row + id];
    return best;
}

const std::vector<std::vector<double>>& AmbientSpace::coordinates() const {
    if (!coords_)
        throw ValidationError("space was built from a distance matrix and has no coordinates");
    return *coords_;
}

}  // namespace bairex
