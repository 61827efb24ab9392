#pragma once

#include <stdexcept>

namespace netbound {

class NetboundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotNormalized : public NetboundError {
 public:
  using NetboundError::NetboundError;
};

class PositivityViolation : public NetboundError {
 public:
  using NetboundError::NetboundError;
};

class UnknownVariable : public NetboundError {
 public:
  using NetboundError::NetboundError;
};

class NoValidRoot : public NetboundError {
 public:
  using NetboundError::NetboundError;
};

class ConfigError : public NetboundError {
 public:
  using NetboundError::NetboundError;
};

}  // namespace netbound
