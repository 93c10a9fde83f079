#ifndef ESCHER_CHECK_H_
#define ESCHER_CHECK_H_

#include <sstream>
#include <stdexcept>
#include <string>

namespace escher {

// Raised when an operation is called on a state it is not valid for, e.g.
// querying returns of a non-terminal state.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when user-supplied configuration (game parameters, solver settings,
// experiment specs) is malformed or out of range.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an internal invariant is violated. Always a bug.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void FatalError(const std::string& message) {
  throw InternalError(message);
}

namespace internal {

template <typename A, typename B>
[[noreturn]] void CheckFail(const char* file, int line, const char* expr,
                            const A& lhs, const B& rhs) {
  std::ostringstream os;
  os << file << ":" << line << " check failed: " << expr << " (" << lhs
     << " vs " << rhs << ")";
  throw InternalError(os.str());
}

[[noreturn]] inline void CheckFail(const char* file, int line,
                                   const char* expr) {
  std::ostringstream os;
  os << file << ":" << line << " check failed: " << expr;
  throw InternalError(os.str());
}

}  // namespace internal

#define ESCHER_CHECK(cond)                                        \
  do {                                                            \
    if (!(cond)) ::escher::internal::CheckFail(__FILE__, __LINE__, #cond); \
  } while (false)

#define ESCHER_CHECK_OP(lhs, op, rhs)                                 \
  do {                                                                \
    auto&& escher_lhs = (lhs);                                        \
    auto&& escher_rhs = (rhs);                                        \
    if (!(escher_lhs op escher_rhs)) {                                \
      ::escher::internal::CheckFail(__FILE__, __LINE__,               \
                                    #lhs " " #op " " #rhs, escher_lhs, \
                                    escher_rhs);                      \
    }                                                                 \
  } while (false)

#define ESCHER_CHECK_EQ(lhs, rhs) ESCHER_CHECK_OP(lhs, ==, rhs)
#define ESCHER_CHECK_NE(lhs, rhs) ESCHER_CHECK_OP(lhs, !=, rhs)
#define ESCHER_CHECK_GE(lhs, rhs) ESCHER_CHECK_OP(lhs, >=, rhs)
#define ESCHER_CHECK_GT(lhs, rhs) ESCHER_CHECK_OP(lhs, >, rhs)
#define ESCHER_CHECK_LE(lhs, rhs) ESCHER_CHECK_OP(lhs, <=, rhs)
#define ESCHER_CHECK_LT(lhs, rhs) ESCHER_CHECK_OP(lhs, <, rhs)

}  // namespace escher

#endif  // ESCHER_CHECK_H_
