#pragma once

#include <stdexcept>
#include <string>

namespace uac {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input bytes cannot be turned into a document tree.
class MalformedDocument : public Error {
 public:
  using Error::Error;
};

class EmptyDocument : public Error {
 public:
  using Error::Error;
};

// A sibling weight group is negative or does not sum to one.
class WeightValidation : public Error {
 public:
  using Error::Error;
};

class NoApplicableChildren : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class DegenerateRatings : public Error {
 public:
  using Error::Error;
};

// Bad user input: missing file, unreadable or invalid config.
class InputError : public Error {
 public:
  using Error::Error;
};

// Network failure while retrieving a target.
class FetchError : public Error {
 public:
  using Error::Error;
};

}  // namespace uac
