#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hhlab/families.hpp"
#include "hhlab/quad_algebra.hpp"
#include "hhlab/verdict.hpp"

namespace hhlab {

// For every trivial path e and arrow g: NF(e z - z e) and
// NF(g z - (-1)^|z| z g), in that order. All zero iff z is graded central.
std::vector<LinCombo> centrality_residual(const QuadAlgebra& e, const LinCombo& z);
bool is_graded_central(const QuadAlgebra& e, const LinCombo& z);

struct CenterPiece {
  std::size_t length = 0;
  std::vector<LinCombo> basis;
  std::vector<int> degrees;  // per basis element, when the algebra has weights
};

CenterPiece center_piece(const QuadAlgebra& e, std::size_t length);

// Number of model monomials of the given length.
std::size_t model_hilbert(const CenterModel& model, std::size_t length);

struct LengthRow {
  std::size_t length = 0;
  std::size_t computed = 0;
  std::size_t predicted = 0;
  std::size_t model_rank = 0;  // rank of the model monomials evaluated in the algebra
  bool model_central = true;   // those images lie in the computed piece
  bool ok() const { return computed == predicted && model_rank == predicted && model_central; }
};

struct MatchReport {
  FamilyParams params;
  CenterModel model;
  std::size_t max_length = 0;
  std::vector<LengthRow> rows;
  std::vector<Verdict> verdicts;
  bool consistent = false;
};

// Default truncation 2(|x| + |y|), or 12 when the model is ScalarsOnly.
std::size_t default_max_length(const CenterModel& model);

// The dual of the family's presentation read inside kQ, with its rewriting
// system; this is where the predicted generators live.
QuadraticPresentation center_algebra_presentation(const FamilyParams& fp);

MatchReport match_structure(const QuadAlgebra& e, const FamilyParams& fp, std::size_t max_length);
MatchReport match_structure(const FamilyParams& fp, std::optional<std::size_t> max_length = std::nullopt);

}  // namespace hhlab
