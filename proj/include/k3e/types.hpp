#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3e {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;
using BigVec = std::vector<BigInt>;
using BigMat = std::vector<BigVec>;

// Input violates a documented precondition (CLI exit code 3).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed textual or JSON input (CLI exit code 2).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search budget ran out before the answer was decided.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Three-valued answer for searches that can hit a budget.
enum class Tri { no = 0, yes = 1, unknown = 2 };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    default: return "unknown";
  }
}

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace k3e
