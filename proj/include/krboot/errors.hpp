#pragma once

#include <stdexcept>
#include <string>

namespace krboot {

// Malformed input: bad parameters, bad graph files, inconsistent layouts.
struct InputError : std::invalid_argument {
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation was refused because it would exceed a configured budget.
// Carries a human-readable cost estimate so the caller can decide what to do.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace krboot
