#pragma once

#include <stdexcept>
#include <string>

namespace heron {

enum class Errc {
  NotOdd,
  NotSquareFree,
  QNotPrime,
  InvalidArgument,
  OutsideSupport,
  MismatchedAmbient,
  NotOnCurve,
  InfiniteValuation,
  UndecidedVerdict,
  ClosureViolation,
  ImageOutsideSelmer,
  FixtureFormat,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::NotOdd: return "NotOdd";
    case Errc::NotSquareFree: return "NotSquareFree";
    case Errc::QNotPrime: return "QNotPrime";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::OutsideSupport: return "OutsideSupport";
    case Errc::MismatchedAmbient: return "MismatchedAmbient";
    case Errc::NotOnCurve: return "NotOnCurve";
    case Errc::InfiniteValuation: return "InfiniteValuation";
    case Errc::UndecidedVerdict: return "UndecidedVerdict";
    case Errc::ClosureViolation: return "ClosureViolation";
    case Errc::ImageOutsideSelmer: return "ImageOutsideSelmer";
    case Errc::FixtureFormat: return "FixtureFormat";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace heron
