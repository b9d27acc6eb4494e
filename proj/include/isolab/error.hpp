#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace isolab {

/// Argument outside the declared domain, bad parameters, unknown ids,
/// violated preconditions.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Geometry input that fails validation. Carries one diagnostic line per
/// offending facet (or other element).
class ValidationError : public std::invalid_argument
{
  public:
    ValidationError(const std::string& what, std::vector<std::string> diagnostics = {})
        : std::invalid_argument(what), diagnostics_(std::move(diagnostics))
    {
    }

    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

  private:
    std::vector<std::string> diagnostics_;
};

/// A numerical procedure (quadrature, optimizer, root finder, corrector)
/// did not reach its target.
class ConvergenceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace isolab
