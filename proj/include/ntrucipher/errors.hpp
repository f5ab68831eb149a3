#ifndef NTRUCIPHER_ERRORS_HPP
#define NTRUCIPHER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ntrucipher {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands that do not live in the same ring (degree or modulus differ).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A parameter outside the domain an operation accepts.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input data (plaintext range, block list shape) rejected by an operation.
class InputError : public Error {
 public:
  using Error::Error;
};

// Decoded message failed its length or checksum verification.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Serialized artifact has a bad magic, version, or shape.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Serialized artifact parsed but its content violates an invariant.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

class KeyGenerationError : public Error {
 public:
  using Error::Error;
};

class LatticeError : public Error {
 public:
  using Error::Error;
};

}  // namespace ntrucipher

#endif  // NTRUCIPHER_ERRORS_HPP
