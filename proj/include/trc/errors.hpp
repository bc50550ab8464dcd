#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trc {

// Base for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A position does not address a node of the tree.
struct InvalidPosition : Error {
  using Error::Error;
};

// A 1-based list index is outside the addressed list.
struct IndexOutOfRange : Error {
  using Error::Error;
};

// A rule's side condition (label comparison, distinctness, shape) fails.
struct SideConditionViolated : Error {
  using Error::Error;
};

// Malformed textual input; offset is the byte position of the failure.
struct ParseError : Error {
  std::size_t offset;
  ParseError(const std::string& what, std::size_t off) : Error(what), offset(off) {}
};

// A transformed trace failed replay validation against its expected endpoint.
struct ReplayMismatch : Error {
  using Error::Error;
};

// swap_adjacent was asked to invert a pair that is not an inversion.
struct NotAnInversion : Error {
  using Error::Error;
};

}  // namespace trc
