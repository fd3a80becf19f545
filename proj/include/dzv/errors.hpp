#pragma once

#include <stdexcept>
#include <string>

namespace dzv {

// Raised when an identity that holds by theorem fails at runtime: a non-exact
// division in the H_n recurrence, a nonzero m_2-block in a Xi point, a solver
// certificate that does not annihilate its points. Always an upstream bug.
class MathError : public std::logic_error {
 public:
  explicit MathError(const std::string& what) : std::logic_error(what) {}
};

// A numeric certificate check found a definite mismatch.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dzv
