#pragma once

#include <optional>
#include <string>
#include <utility>

namespace gorenlab {

enum class Outcome { Yes, No, Unknown };

// Why a No is a No.
enum class Obstruction {
  None,
  DimensionVector,
  HomDimension,
  IndecomposableMultiset,
  DimensionLattice,
  NoEmbedding,
  ExhaustiveSearch,
  ExtNonvanishing,
  NotEpi,
  RepeatingSyzygy,
  NotInClass,
};

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

inline const char* to_string(Obstruction o) {
  switch (o) {
    case Obstruction::None: return "none";
    case Obstruction::DimensionVector: return "dimension-vector";
    case Obstruction::HomDimension: return "hom-dimension";
    case Obstruction::IndecomposableMultiset: return "indecomposable-multiset";
    case Obstruction::DimensionLattice: return "dimension-lattice";
    case Obstruction::NoEmbedding: return "no-embedding";
    case Obstruction::ExhaustiveSearch: return "exhaustive-search";
    case Obstruction::ExtNonvanishing: return "ext-nonvanishing";
    case Obstruction::NotEpi: return "not-epi";
    case Obstruction::RepeatingSyzygy: return "repeating-syzygy";
    case Obstruction::NotInClass: return "not-in-class";
  }
  return "?";
}

// Three-valued answer.  Yes carries a certificate, No an obstruction,
// Unknown the bounds that ran out.
template <class Cert>
struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<Cert> certificate;
  Obstruction obstruction = Obstruction::None;
  std::string detail;

  static Verdict yes(Cert c, std::string detail = {}) {
    Verdict v;
    v.outcome = Outcome::Yes;
    v.certificate = std::move(c);
    v.detail = std::move(detail);
    return v;
  }
  static Verdict no(Obstruction why, std::string detail = {}) {
    Verdict v;
    v.outcome = Outcome::No;
    v.obstruction = why;
    v.detail = std::move(detail);
    return v;
  }
  static Verdict unknown(std::string bounds) {
    Verdict v;
    v.detail = std::move(bounds);
    return v;
  }

  bool is_yes() const { return outcome == Outcome::Yes; }
  bool is_no() const { return outcome == Outcome::No; }
  bool is_unknown() const { return outcome == Outcome::Unknown; }
};

struct Empty {};

}  // namespace gorenlab
