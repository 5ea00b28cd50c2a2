#pragma once

#include <stdexcept>
#include <string>

namespace wlstar {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by zero weight") {}
};

class UnknownSymbol : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class NotDeterministic : public Error {
public:
  using Error::Error;
};

// Raised when an oracle is built over a target that is not a WDFSA.
class NonDeterministicTarget : public NotDeterministic {
public:
  using NotDeterministic::NotDeterministic;
};

class NotTransitionRegular : public Error {
public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
public:
  AlphabetMismatch() : Error("automata are defined over different alphabets") {}
};

class SemifieldMismatch : public Error {
public:
  SemifieldMismatch() : Error("automata are weighted over different semifields") {}
};

class IncompleteRow : public Error {
public:
  using Error::Error;
};

class NotAnEmpiricalSystem : public Error {
public:
  using Error::Error;
};

class OracleInconsistent : public Error {
public:
  using Error::Error;
};

class IterationCapExceeded : public Error {
public:
  using Error::Error;
};

} // namespace wlstar
