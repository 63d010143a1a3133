#pragma once

#include <stdexcept>

namespace bilinv {

/// Index or label outside its admissible range.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// n does not divide 2r or k does not divide r: no invariant tensors exist.
class DivisibilityError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Axis profile does not have the layout an operation requires.
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Dimensions of a form, matrix or polynomial do not match.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Requested object would exceed a configured size limit.
class SizeError : public std::length_error {
public:
  using std::length_error::length_error;
};

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A relation built from its defining formula failed to expand to zero.
class ConstructionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Input document is not valid JSON or does not follow the expected schema.
class FormatError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace bilinv
