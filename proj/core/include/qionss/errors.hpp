#pragma once

#include <stdexcept>
#include <string>

namespace qionss {

// Raised when a physical or mathematical precondition is violated
// (non-positive circuit values, evaluation at a pole, singular dynamics).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace qionss
