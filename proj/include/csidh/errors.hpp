#pragma once

#include <stdexcept>
#include <string>

namespace csidh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParamsError : public Error {
 public:
  using Error::Error;
};

class ZeroInverse : public Error {
 public:
  ZeroInverse() : Error("inverse of zero") {}
};

class InfinityAffinize : public Error {
 public:
  InfinityAffinize() : Error("cannot affinize a projective value with zero denominator") {}
};

class RngFailure : public Error {
 public:
  using Error::Error;
};

class RngExhausted : public RngFailure {
 public:
  RngExhausted() : RngFailure("random source exhausted") {}
};

class InvalidPeerKey : public Error {
 public:
  InvalidPeerKey() : Error("peer public key failed validation") {}
};

class FaultDetected : public Error {
 public:
  FaultDetected() : Error("computational fault detected during group action") {}
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace csidh
