#ifndef DRA_COMMON_HPP
#define DRA_COMMON_HPP

#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dra {

/// Bad input: shape errors, mismatched carriers, failed preconditions.
class InputError : public std::invalid_argument
{
public:
  explicit InputError(const std::string &what) : std::invalid_argument(what) {}
};

/// A configured size cap was exceeded.
class SizeCapError : public std::length_error
{
public:
  explicit SizeCapError(const std::string &what) : std::length_error(what) {}
};

/// A postcondition that should always hold failed. Seeing one of these means a bug.
class InternalError : public std::logic_error
{
public:
  explicit InternalError(const std::string &what) : std::logic_error(what) {}
};

/// Size caps for exhaustive searches.
struct Limits
{
  std::size_t max_carrier = 4;          // enumerate_all_pfs / closure_generate
  std::size_t max_filter_elements = 16; // maximal_filters
  std::size_t max_subset_scan = 20;     // raw subset-scan oracle for filters
  std::size_t max_iso_elements = 12;    // isomorphism_search
  std::size_t max_operator_elements = 10;
  std::size_t max_operator_arity = 3;
  std::size_t max_closure_elements = 4096;

  /// Raise every element cap to at least `cap`.
  Limits with_element_cap(std::size_t cap) const
  {
    Limits l = *this;
    auto raise = [cap](std::size_t &v) { v = v < cap ? cap : v; };
    raise(l.max_filter_elements);
    raise(l.max_iso_elements);
    raise(l.max_operator_elements);
    return l;
  }

  /// Defaults, overridden by the DRA_SIZE_CAP environment variable when set.
  static Limits from_environment()
  {
    Limits l;
    if (const char *v = std::getenv("DRA_SIZE_CAP")) {
      char *end = nullptr;
      unsigned long cap = std::strtoul(v, &end, 10);
      if (end != v && *end == '\0' && cap > 0)
        l = l.with_element_cap(static_cast<std::size_t>(cap));
    }
    return l;
  }
};

inline void require_cap(std::size_t value, std::size_t cap, const char *what)
{
  if (value > cap)
    throw SizeCapError(std::string(what) + ": size " + std::to_string(value) +
                       " exceeds cap " + std::to_string(cap));
}

} // namespace dra

#endif // DRA_COMMON_HPP
