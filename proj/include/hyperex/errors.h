#ifndef HYPEREX_ERRORS_H_
#define HYPEREX_ERRORS_H_

#include <stdexcept>

namespace hyperex {

// Bad or unreadable user input (missing files, malformed records, corrupt
// stats). The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed. The CLI maps this to exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hyperex

#endif  // HYPEREX_ERRORS_H_
