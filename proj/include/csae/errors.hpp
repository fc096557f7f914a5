#pragma once

#include <stdexcept>
#include <string>

namespace csae {

/// Estimation failed at runtime (degenerate signal subspace, no admissible
/// angle candidate). Configuration and domain errors use the standard
/// std::invalid_argument / std::domain_error instead.
class EstimationError : public std::runtime_error {
public:
    explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace csae
