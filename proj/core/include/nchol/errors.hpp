#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nchol {

enum class Errc {
  NonCommuting,
  NotCoprime,
  NotAnnihilating,
  NotUnipotent,
  InvalidMorphism,
  CompositionNonzero,
  InvalidModule,
  NotLocalized,
  NotSupported,
  InvalidSpec,
  NotQuasiUnipotent,
  RankUnsupported,
  OrderOverflow,
  InvalidArgument,
  ParseError,
};

constexpr std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::NonCommuting: return "NonCommuting";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NotAnnihilating: return "NotAnnihilating";
    case Errc::NotUnipotent: return "NotUnipotent";
    case Errc::InvalidMorphism: return "InvalidMorphism";
    case Errc::CompositionNonzero: return "CompositionNonzero";
    case Errc::InvalidModule: return "InvalidModule";
    case Errc::NotLocalized: return "NotLocalized";
    case Errc::NotSupported: return "NotSupported";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::NotQuasiUnipotent: return "NotQuasiUnipotent";
    case Errc::RankUnsupported: return "RankUnsupported";
    case Errc::OrderOverflow: return "OrderOverflow";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nchol
