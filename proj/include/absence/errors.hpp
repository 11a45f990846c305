#pragma once

#include <stdexcept>
#include <string>

namespace absence {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graphs, labelings, files or parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

// A bound was requested for an edgeless graph, where it says nothing.
class VacuousBound : public Error {
 public:
  using Error::Error;
};

// An exhaustive search hit its configured node or state budget.
class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A strategy was asked to move from a state it cannot win.
class LosingState : public Error {
 public:
  using Error::Error;
};

// A player was reported absent without any absences left.
class BudgetViolation : public Error {
 public:
  using Error::Error;
};

class SessionFinished : public Error {
 public:
  using Error::Error;
};

// An engine or constructor produced an invalid round; always a bug.
class InternalFault : public Error {
 public:
  using Error::Error;
};

}  // namespace absence
