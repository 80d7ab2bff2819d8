// include/lle/error.hpp
//
// Exception types shared by all modules.  Contract violations are caller
// errors (bad grid sizes, off-grid queries); numerical failures are reported
// through result structs where the caller is expected to react, and through
// NumericalFailure only where no sensible partial result exists.

#pragma once

#include <stdexcept>
#include <string>

namespace lle {

class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lle
