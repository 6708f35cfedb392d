#pragma once

#include <stdexcept>
#include <string>

namespace agv {

// Rows of different fields or lengths, odd symplectic ambient dimension, etc.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Integer parameter outside its admissible range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Real argument outside a function's domain (entropy, rates), or a zero error pattern.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An enumeration guard was exceeded.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Code search and enumeration only support prime fields GF(p), p <= 251.
class UnsupportedFieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed code file.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace agv
