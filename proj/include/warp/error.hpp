#pragma once

#include <stdexcept>
#include <string>

namespace warp {

enum class ErrorKind {
  empty_input,
  bad_token,
  label_not_twice,
  missing_kind,
  inconsistent_kind,
  index_out_of_range,
  too_many_crossings,
  bad_dimension,
  not_square,
  width_mismatch,
  row_missing,
  pairing_not_unique,
  pairing_incomplete,
  malformed_source,
  too_short,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace warp
