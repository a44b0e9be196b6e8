#pragma once

#include <stdexcept>
#include <string>

namespace cobforge {

/// Raised when an operation is called outside its mathematical domain
/// (range violations, failed hypotheses, malformed inputs).
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace cobforge
