#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace cavcal {

#ifdef CAVCAL_EXTENDED_PRECISION
using real = long double;
#else
using real = double;
#endif

inline constexpr real kInfiniteEnergy = std::numeric_limits<real>::infinity();

/// Which part of G enters the ratio m_l: |G| or the negative part G^-.
enum class Variant { abs, neg };

struct DegenerateArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonpositiveDeterminant : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotARotation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParamRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct OrderViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptyGrid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateGrid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NegativeWeight : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NoBracket : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cavcal
