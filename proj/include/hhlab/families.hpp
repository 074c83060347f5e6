#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "hhlab/quad_algebra.hpp"

namespace hhlab {

enum class FamilyKind { LambdaQ, GammaQ, LambdaMN, GammaMN };

std::string to_string(FamilyKind k);
// "lambda_q", "gamma_q", "lambda_mn", "gamma_mn".
FamilyKind parse_family_kind(const std::string& name);

// Parameters of one algebra. For the one-index families q has m entries
// q_0..q_{m-1}; for the two-index families q is row-major n x m with entry
// q_{ij} at i * m + j. Subscripts wrap modulo m (and n).
struct FamilyParams {
  FamilyKind kind = FamilyKind::GammaQ;
  int m = 2;
  int n = 1;
  FieldSpec field;
  std::vector<Scalar> q;

  bool two_index() const { return kind == FamilyKind::LambdaMN || kind == FamilyKind::GammaMN; }
  bool has_sink() const { return kind == FamilyKind::GammaQ || kind == FamilyKind::GammaMN; }
  int rows() const { return two_index() ? n : 1; }
  int num_grid_vertices() const { return rows() * m; }

  const Scalar& q1(long i) const;
  const Scalar& q2(long i, long j) const;

  // Throws InvalidArgument on bad sizes, zero entries or mixed fields.
  void validate() const;

  // Entries given as scalar strings; a single entry is broadcast.
  static FamilyParams make(FamilyKind kind, int m, int n, FieldSpec field, const std::vector<std::string>& q);
  static FamilyParams make(FamilyKind kind, int m, int n, FieldSpec field, std::vector<Scalar> q);
  static FamilyParams make(FamilyKind kind, int m, int n, FieldSpec field, std::initializer_list<const char*> q);
};

// Vertex and arrow numbering of the quiver before build_presentation
// installs its order. Grid vertex (i, j) is i * m + j (i = 0 for the
// one-index families); the sink -1 is the last vertex. Arrows are all a's,
// then all b's, then all c's, each block ordered like the grid vertices.
// The Lambda presentations keep this numbering; the Gamma presentations
// order b < a < c, so look their arrows up with find_family_arrow.
ArrowId arrow_a(const FamilyParams& fp, long i, long j);
ArrowId arrow_b(const FamilyParams& fp, long i, long j);
ArrowId arrow_c(const FamilyParams& fp, long i, long j);
VertexId grid_vertex(const FamilyParams& fp, long i, long j);
VertexId sink_vertex(const FamilyParams& fp);

ArrowId find_family_arrow(const FamilyParams& fp, const Quiver& q, char kind, long i, long j);

QuadraticPresentation build_presentation(const FamilyParams& fp);

// zeta, xi or eta: the product of all q entries.
Scalar parameter_product(const FamilyParams& fp);

struct EpsilonValue {
  Scalar epsilon;
  int p;  // relation w^p = epsilon x y
};

// The constant of the relation w^p = epsilon x y for Gamma_q when zeta has
// order d.
EpsilonValue epsilon_d(const FamilyParams& fp, int d);

enum class CenterShape { ScalarsOnly, KPlusXYIdeal, KPlusXYIdealEven, TruncatedCone };
std::string to_string(CenterShape s);

struct CenterModel {
  CenterShape shape = CenterShape::ScalarsOnly;
  int d = 0;  // order of the parameter product, 0 when infinite
  int x_len = 0, y_len = 0, w_len = 0;
  int p = 0;  // TruncatedCone only
  std::optional<Scalar> epsilon;
  // Exponents turning the base loops into x and y (two-index families).
  int x_power = 1, y_power = 1;
};

CenterModel predicted_model(const FamilyParams& fp);

// Elements of the dual algebra read inside kQ (dual_in_path_algebra);
// w is zero for the two-index families. All in normal form.
struct PredictedGenerators {
  LinCombo x, y, w;
};

PredictedGenerators predicted_generators(const FamilyParams& fp, const QuadAlgebra& dual);

// Paths gamma_i^s = a_i ... a_{i+s-1} and delta_i^t = b_{i+t-1} ... b_i of
// the one-index families; the loops alpha_ij, beta_ij of the two-index ones.
Path gamma_path(const FamilyParams& fp, const Quiver& q, long i, int s);
Path delta_path(const FamilyParams& fp, const Quiver& q, long i, int t);
Path alpha_loop(const FamilyParams& fp, const Quiver& q, long i, long j);
Path beta_loop(const FamilyParams& fp, const Quiver& q, long i, long j);

// prod_{k=from}^{to} q_k with wrapped subscripts; empty products are 1.
Scalar q_run(const FamilyParams& fp, long from, long to);

}  // namespace hhlab
