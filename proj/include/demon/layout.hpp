#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace demon {

// Ordered factorization of a register into named tensor factors. The order of
// the list is the storage order: the first factor owns the most significant
// index digit.
class SubsystemLayout {
public:
    struct Factor {
        std::string name;
        std::size_t dim;
    };

    SubsystemLayout() = default;
    explicit SubsystemLayout(std::vector<Factor> factors);

    static SubsystemLayout single(std::string name, std::size_t dim);

    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t factor_count() const { return factors_.size(); }
    std::size_t total_dim() const { return total_; }

    bool has(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;
    std::size_t dim_of(std::string_view name) const;

    // Sub-layout containing exactly the named factors, preserving this
    // layout's order; every name must exist.
    SubsystemLayout keep(std::span<const std::string> names) const;
    SubsystemLayout drop(std::span<const std::string> names) const;
    SubsystemLayout keep(std::initializer_list<std::string> names) const {
        return keep(std::span<const std::string>(names.begin(), names.size()));
    }
    SubsystemLayout drop(std::initializer_list<std::string> names) const {
        return drop(std::span<const std::string>(names.begin(), names.size()));
    }

    // Row stride of each factor's digit in the flattened index.
    std::vector<std::size_t> strides() const;

    std::string describe() const;

    bool operator==(const SubsystemLayout& other) const;

private:
    std::vector<Factor> factors_;
    std::size_t total_ = 1;
};

} // namespace demon
