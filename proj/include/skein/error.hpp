#pragma once

#include <stdexcept>
#include <string>

namespace skein {

enum class Err {
  SyntaxError,
  NonPlanar,
  BadValence,
  InconsistentOrientation,
  UnknownEdge,
  UnknownCrossing,
  MovePreconditionFailed,
  EmptySelection,
  EdgeNotOnOuterFace,
  Disconnected,
  NonUnitDivisor,
  UnboundVariable,
  ZeroSubstitutedForUnit,
  NonLaurentResult,
  UndefinedOperation,
  CircleUndefined,
  OutsideDomainB,
  NoSuchGenerator,
  GeometricInsufficiency,
  TooManyComponents,
  TreeTooLarge,
  NotUntangled,
  NoFGon,
  NoTriangle,
  UnknownFormat,
  Internal,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::SyntaxError: return "SyntaxError";
    case Err::NonPlanar: return "NonPlanar";
    case Err::BadValence: return "BadValence";
    case Err::InconsistentOrientation: return "InconsistentOrientation";
    case Err::UnknownEdge: return "UnknownEdge";
    case Err::UnknownCrossing: return "UnknownCrossing";
    case Err::MovePreconditionFailed: return "MovePreconditionFailed";
    case Err::EmptySelection: return "EmptySelection";
    case Err::EdgeNotOnOuterFace: return "EdgeNotOnOuterFace";
    case Err::Disconnected: return "Disconnected";
    case Err::NonUnitDivisor: return "NonUnitDivisor";
    case Err::UnboundVariable: return "UnboundVariable";
    case Err::ZeroSubstitutedForUnit: return "ZeroSubstitutedForUnit";
    case Err::NonLaurentResult: return "NonLaurentResult";
    case Err::UndefinedOperation: return "UndefinedOperation";
    case Err::CircleUndefined: return "CircleUndefined";
    case Err::OutsideDomainB: return "OutsideDomainB";
    case Err::NoSuchGenerator: return "NoSuchGenerator";
    case Err::GeometricInsufficiency: return "GeometricInsufficiency";
    case Err::TooManyComponents: return "TooManyComponents";
    case Err::TreeTooLarge: return "TreeTooLarge";
    case Err::NotUntangled: return "NotUntangled";
    case Err::NoFGon: return "NoFGon";
    case Err::NoTriangle: return "NoTriangle";
    case Err::UnknownFormat: return "UnknownFormat";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

struct Error : std::runtime_error {
  Err kind;
  Error(Err k, const std::string& msg)
      : std::runtime_error(std::string(err_name(k)) + ": " + msg), kind(k) {}
};

[[noreturn]] inline void fail(Err k, const std::string& msg) { throw Error(k, msg); }

inline void check(bool cond, Err k, const std::string& msg) {
  if (!cond) fail(k, msg);
}

}  // namespace skein
