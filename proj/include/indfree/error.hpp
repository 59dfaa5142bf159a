#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace indfree {

enum class ErrorKind {
  DivisionByZero,
  IncompatibleOrder,
  NotMember,
  NotAFlat,
  ZeroDimensional,
  InvalidParameter,
  CatalogDataError,
  NoSuchType,
  AmbiguousType,
  RankLimit,
  ShapeError,
  FormatError,
  StaleCertificate,
  NonFreeInput,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// All library failures are reported through this exception; `kind()` is
/// stable and is what the CLI maps to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::IncompatibleOrder: return "IncompatibleOrder";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::NotAFlat: return "NotAFlat";
    case ErrorKind::ZeroDimensional: return "ZeroDimensional";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::CatalogDataError: return "CatalogDataError";
    case ErrorKind::NoSuchType: return "NoSuchType";
    case ErrorKind::AmbiguousType: return "AmbiguousType";
    case ErrorKind::RankLimit: return "RankLimit";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::StaleCertificate: return "StaleCertificate";
    case ErrorKind::NonFreeInput: return "NonFreeInput";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace indfree
