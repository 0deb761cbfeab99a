// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lastpass {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model, suite or command configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The conditioning event has no mass under the enumerated measure.
class ZeroProbabilityEvent : public Error {
 public:
  using Error::Error;
};

/// Enumeration would visit more paths than the configured cap.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

class InvalidSigma : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain where a quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a spectrally negative jump law.
class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class EmptySample : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lastpass
