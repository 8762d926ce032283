#pragma once

#include <stdexcept>
#include <string>

namespace railmule {

// Base for every error the simulator raises. Callers at the CLI boundary
// catch this and turn it into a one-line diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MapFormatError : public Error {
 public:
  using Error::Error;
};

class NoPathError : public Error {
 public:
  using Error::Error;
};

class BadLinkError : public Error {
 public:
  using Error::Error;
};

class TooLargeError : public Error {
 public:
  using Error::Error;
};

class ConfigInvalidError : public Error {
 public:
  using Error::Error;
};

class NoMessagesError : public Error {
 public:
  using Error::Error;
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace railmule
