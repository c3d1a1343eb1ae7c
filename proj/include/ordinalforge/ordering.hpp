#pragma once

namespace ordinalforge {

// Three-way comparison result shared by every order in the library.
enum class Ordering { Less = -1, Equal = 0, Greater = 1 };

inline Ordering flip(Ordering o) {
  return static_cast<Ordering>(-static_cast<int>(o));
}

inline const char* to_symbol(Ordering o) {
  switch (o) {
    case Ordering::Less: return "<";
    case Ordering::Equal: return "=";
    default: return ">";
  }
}

inline Ordering ordering_of_int(long long d) {
  return d < 0 ? Ordering::Less : d > 0 ? Ordering::Greater : Ordering::Equal;
}

}  // namespace ordinalforge
