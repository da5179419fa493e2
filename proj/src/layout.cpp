#include "demon/layout.hpp"

#include <algorithm>
#include <stdexcept>

#include "demon/tolerances.hpp"

namespace demon {

SubsystemLayout::SubsystemLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    total_ = 1;
    for (const auto& f : factors_) {
        if (f.name.empty()) throw std::invalid_argument("SubsystemLayout: empty factor name");
        if (f.dim == 0) throw std::invalid_argument("SubsystemLayout: factor '" + f.name + "' has dimension 0");
        if (total_ > tol::max_dimension / f.dim) {
            throw std::invalid_argument("SubsystemLayout: total dimension exceeds " +
                                        std::to_string(tol::max_dimension));
        }
        total_ *= f.dim;
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        for (std::size_t j = i + 1; j < factors_.size(); ++j) {
            if (factors_[i].name == factors_[j].name) {
                throw std::invalid_argument("SubsystemLayout: duplicate factor name '" +
                                            factors_[i].name + "'");
            }
        }
    }
}

SubsystemLayout SubsystemLayout::single(std::string name, std::size_t dim) {
    return SubsystemLayout({Factor{std::move(name), dim}});
}

bool SubsystemLayout::has(std::string_view name) const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [&](const Factor& f) { return f.name == name; });
}

std::size_t SubsystemLayout::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].name == name) return i;
    }
    throw std::invalid_argument("SubsystemLayout: unknown factor '" + std::string(name) + "'");
}

std::size_t SubsystemLayout::dim_of(std::string_view name) const {
    return factors_[index_of(name)].dim;
}

SubsystemLayout SubsystemLayout::keep(std::span<const std::string> names) const {
    for (const auto& n : names) index_of(n);
    std::vector<Factor> kept;
    for (const auto& f : factors_) {
        if (std::find(names.begin(), names.end(), f.name) != names.end()) kept.push_back(f);
    }
    return SubsystemLayout(std::move(kept));
}

SubsystemLayout SubsystemLayout::drop(std::span<const std::string> names) const {
    for (const auto& n : names) index_of(n);
    std::vector<Factor> kept;
    for (const auto& f : factors_) {
        if (std::find(names.begin(), names.end(), f.name) == names.end()) kept.push_back(f);
    }
    return SubsystemLayout(std::move(kept));
}

std::vector<std::size_t> SubsystemLayout::strides() const {
    std::vector<std::size_t> s(factors_.size(), 1);
    for (std::size_t i = factors_.size(); i-- > 1;) {
        s[i - 1] = s[i] * factors_[i].dim;
    }
    return s;
}

std::string SubsystemLayout::describe() const {
    std::string out;
    for (const auto& f : factors_) {
        if (!out.empty()) out += " x ";
        out += f.name + "(" + std::to_string(f.dim) + ")";
    }
    return out.empty() ? "scalar" : out;
}

bool SubsystemLayout::operator==(const SubsystemLayout& other) const {
    if (factors_.size() != other.factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].name != other.factors_[i].name) return false;
        if (factors_[i].dim != other.factors_[i].dim) return false;
    }
    return true;
}

} // namespace demon
