#pragma once

#include <stdexcept>
#include <string>

namespace grlie {

// Malformed input: bad parameters, unparsable expressions, non-prime moduli.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size limit (element cap, linear-algebra budget) was hit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checked mathematical statement failed on concrete data.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-width integer arithmetic would have overflowed.
class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace grlie
