#pragma once

#include <stdexcept>
#include <string>

namespace rapcert {

// first violated axiom, in checking order: associativity, identity at 0,
// inverses, latin square
enum class group_defect { not_associative, no_identity, no_inverse, not_latin };

struct group_error : std::runtime_error {
  group_defect kind;
  int i = -1, j = -1, k = -1;

  group_error(group_defect kind_, const std::string &msg, int i_ = -1,
              int j_ = -1, int k_ = -1)
      : std::runtime_error(msg), kind(kind_), i(i_), j(j_), k(k_) {}
};

// configurable resource bound hit (table size, Aut search, H^1 enumeration)
struct bound_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed user input (CLI exit code 2)
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// precondition violation: caller broke an operation contract
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace rapcert
