#ifndef CSENSE_ERROR_HPP
#define CSENSE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace csense {

enum class ErrorKind {
  dimension,
  size,
  budget,
  range,
  domain,
  derivative_vanishes,
  iteration_limit,
  linear_solve,
  curvature,
  line_search,
  degenerate_column,
  format,
  truncation,
  unsupported,
  io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::size: return "size";
    case ErrorKind::budget: return "budget";
    case ErrorKind::range: return "range";
    case ErrorKind::domain: return "domain";
    case ErrorKind::derivative_vanishes: return "derivative_vanishes";
    case ErrorKind::iteration_limit: return "iteration_limit";
    case ErrorKind::linear_solve: return "linear_solve";
    case ErrorKind::curvature: return "curvature";
    case ErrorKind::line_search: return "line_search";
    case ErrorKind::degenerate_column: return "degenerate_column";
    case ErrorKind::format: return "format";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

}  // namespace detail
}  // namespace csense

#endif  // CSENSE_ERROR_HPP
