#include "hhlab/families.hpp"

#include "hhlab/errors.hpp"

namespace hhlab {

namespace {

long wrap(long i, long m) { return ((i % m) + m) % m; }

Scalar sign(const FieldSpec& f, long e) { return Scalar::from_int(f, (e % 2 == 0) ? 1 : -1); }

// (q_k q_{k+1} ... q_{k+len-1})^{-1}
Scalar inv_block(const FamilyParams& fp, long k, long len) { return q_run(fp, k, k + len - 1).inverse(); }

// prod_{l=1}^{l_max} prod_{k=1}^{l * step} inv_block(k, len)
Scalar epsilon_product(const FamilyParams& fp, long l_max, long step, long len) {
  Scalar e = Scalar::one(fp.field);
  for (long l = 1; l <= l_max; ++l)
    for (long k = 1; k <= l * step; ++k) e *= inv_block(fp, k, len);
  return e;
}

std::string vertex_name(const FamilyParams& fp, long i, long j) {
  return fp.two_index() ? std::to_string(i) + "_" + std::to_string(j) : std::to_string(j);
}

std::string arrow_name(const FamilyParams& fp, char kind, long i, long j) {
  return std::string(1, kind) + vertex_name(fp, i, j);
}

int order_or_zero(const Scalar& s) {
  Order o = order_of(s);
  return o ? static_cast<int>(*o) : 0;
}

}  // namespace

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::LambdaQ: return "lambda_q";
    case FamilyKind::GammaQ: return "gamma_q";
    case FamilyKind::LambdaMN: return "lambda_mn";
    case FamilyKind::GammaMN: return "gamma_mn";
  }
  return "?";
}

FamilyKind parse_family_kind(const std::string& name) {
  for (FamilyKind k : {FamilyKind::LambdaQ, FamilyKind::GammaQ, FamilyKind::LambdaMN, FamilyKind::GammaMN})
    if (to_string(k) == name) return k;
  throw ParseError("unknown family '" + name + "' (expected lambda_q, gamma_q, lambda_mn or gamma_mn)");
}

const Scalar& FamilyParams::q1(long i) const { return q.at(static_cast<std::size_t>(wrap(i, m))); }

const Scalar& FamilyParams::q2(long i, long j) const {
  return q.at(static_cast<std::size_t>(wrap(i, n) * m + wrap(j, m)));
}

void FamilyParams::validate() const {
  if (m < 1 || n < 1) throw InvalidArgument("m and n must be at least 1");
  if (!two_index() && n != 1) throw InvalidArgument(to_string(kind) + " takes no n parameter");
  if (q.size() != static_cast<std::size_t>(rows() * m))
    throw InvalidArgument(to_string(kind) + " needs " + std::to_string(rows() * m) + " q entries, got " +
                          std::to_string(q.size()));
  for (const auto& x : q) {
    if (!(x.field() == field)) throw FieldMismatch("q entry " + x.to_string() + " is not in " + field.to_string());
    if (x.is_zero()) throw InvalidArgument("q entries must be nonzero");
  }
}

FamilyParams FamilyParams::make(FamilyKind kind, int m, int n, FieldSpec field, std::vector<Scalar> q) {
  FamilyParams fp;
  fp.kind = kind;
  fp.m = m;
  fp.n = fp.two_index() ? n : 1;
  fp.field = field;
  std::size_t want = static_cast<std::size_t>(fp.rows()) * static_cast<std::size_t>(std::max(m, 0));
  if (q.size() == 1 && want > 1) q.assign(want, q[0]);
  fp.q = std::move(q);
  fp.validate();
  return fp;
}

FamilyParams FamilyParams::make(FamilyKind kind, int m, int n, FieldSpec field, const std::vector<std::string>& q) {
  std::vector<Scalar> vals;
  for (const auto& s : q) vals.push_back(Scalar::parse(field, s));
  return make(kind, m, n, field, std::move(vals));
}

FamilyParams FamilyParams::make(FamilyKind kind, int m, int n, FieldSpec field, std::initializer_list<const char*> q) {
  return make(kind, m, n, std::move(field), std::vector<std::string>(q.begin(), q.end()));
}

VertexId grid_vertex(const FamilyParams& fp, long i, long j) {
  return static_cast<VertexId>(wrap(i, fp.rows()) * fp.m + wrap(j, fp.m));
}

VertexId sink_vertex(const FamilyParams& fp) {
  if (!fp.has_sink()) throw InvalidArgument(to_string(fp.kind) + " has no vertex -1");
  return static_cast<VertexId>(fp.num_grid_vertices());
}

ArrowId arrow_a(const FamilyParams& fp, long i, long j) { return grid_vertex(fp, i, j); }

ArrowId arrow_b(const FamilyParams& fp, long i, long j) { return fp.num_grid_vertices() + grid_vertex(fp, i, j); }

ArrowId arrow_c(const FamilyParams& fp, long i, long j) {
  if (!fp.has_sink()) throw InvalidArgument(to_string(fp.kind) + " has no c arrows");
  return 2 * fp.num_grid_vertices() + grid_vertex(fp, i, j);
}

QuadraticPresentation build_presentation(const FamilyParams& fp) {
  fp.validate();
  const FieldSpec& f = fp.field;
  Quiver q;
  const long rows = fp.rows(), m = fp.m;
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < m; ++j) q.add_vertex(vertex_name(fp, i, j));
  if (fp.has_sink()) q.add_vertex("-1");
  // One-index families: a_j : j -> j+1, b_j : j+1 -> j. Two-index:
  // a_ij : (i,j) -> (i,j+1), b_ij : (i,j) -> (i+1,j).
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < m; ++j) q.add_arrow(arrow_name(fp, 'a', i, j), grid_vertex(fp, i, j), grid_vertex(fp, i, j + 1));
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < m; ++j) {
      if (fp.two_index())
        q.add_arrow(arrow_name(fp, 'b', i, j), grid_vertex(fp, i, j), grid_vertex(fp, i + 1, j));
      else
        q.add_arrow(arrow_name(fp, 'b', i, j), grid_vertex(fp, i, j + 1), grid_vertex(fp, i, j));
    }
  if (fp.has_sink())
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < m; ++j) q.add_arrow(arrow_name(fp, 'c', i, j), grid_vertex(fp, i, j), sink_vertex(fp));

  const Scalar one = Scalar::one(f);
  auto word = [&](ArrowId x, ArrowId y) { return LinCombo(Path::of_arrows(q, {x, y}), one); };
  std::vector<LinCombo> rels;
  if (!fp.two_index()) {
    for (long k = 0; k < m; ++k) {
      rels.push_back(word(arrow_a(fp, 0, k), arrow_a(fp, 0, k + 1)));
      rels.push_back(word(arrow_b(fp, 0, k + 1), arrow_b(fp, 0, k)));
      rels.push_back(word(arrow_a(fp, 0, k), arrow_b(fp, 0, k)) * fp.q1(k) -
                     word(arrow_b(fp, 0, k - 1), arrow_a(fp, 0, k - 1)));
      if (fp.has_sink()) rels.push_back(word(arrow_a(fp, 0, k), arrow_c(fp, 0, k + 1)));
    }
  } else {
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < m; ++j) {
        rels.push_back(word(arrow_a(fp, i, j), arrow_a(fp, i, j + 1)));
        rels.push_back(word(arrow_b(fp, i, j), arrow_b(fp, i + 1, j)));
        rels.push_back(word(arrow_a(fp, i, j), arrow_b(fp, i, j + 1)) +
                       word(arrow_b(fp, i, j), arrow_a(fp, i + 1, j)) * fp.q2(i, j));
        if (fp.has_sink()) rels.push_back(word(arrow_a(fp, i, j), arrow_c(fp, i, j + 1)));
      }
  }
  // Gamma families put the b's first: with a < b the overlap b.a.c leaves
  // a.b.c irreducible although it lies in the ideal.
  std::vector<ArrowId> order;
  const ArrowId g = static_cast<ArrowId>(fp.num_grid_vertices());
  if (fp.has_sink()) {
    for (ArrowId k = g; k < 2 * g; ++k) order.push_back(k);
    for (ArrowId k = 0; k < g; ++k) order.push_back(k);
    for (ArrowId k = 2 * g; k < 3 * g; ++k) order.push_back(k);
  } else {
    for (ArrowId k = 0; k < 2 * g; ++k) order.push_back(k);
  }
  std::optional<std::vector<int>> weights;
  if (!fp.two_index()) {
    std::vector<int> w(q.num_arrows(), 1);
    for (long k = 0; k < m; ++k) w[arrow_b(fp, 0, k)] = -1;
    weights = std::move(w);
  }
  return QuadraticPresentation::make(f, q, std::move(rels), order, std::move(weights));
}

Scalar parameter_product(const FamilyParams& fp) {
  Scalar p = Scalar::one(fp.field);
  for (const auto& x : fp.q) p *= x;
  return p;
}

Scalar q_run(const FamilyParams& fp, long from, long to) {
  Scalar p = Scalar::one(fp.field);
  for (long k = from; k <= to; ++k) p *= fp.q1(k);
  return p;
}

EpsilonValue epsilon_d(const FamilyParams& fp, int d) {
  if (fp.two_index()) throw InvalidArgument("epsilon_d is defined for the one-index families");
  if (d < 1) throw InvalidArgument("epsilon_d needs a finite order d >= 1");
  const Scalar zeta = parameter_product(fp);
  if (order_of(zeta) != Order(static_cast<std::uint64_t>(d)))
    throw InvalidArgument("the parameter product " + zeta.to_string() + " does not have order " + std::to_string(d));
  const long m = fp.m;
  const bool char2 = fp.field.characteristic() == 2;
  if (m % 2 == 0 || char2) {
    Scalar e = epsilon_product(fp, m - 1, d, d);
    if (!char2) {
      if ((m * d) % 2 != 0) throw InvalidArgument("internal: md must be even here");
      e *= sign(fp.field, m * d / 2);
    }
    return {e, static_cast<int>(m)};
  }
  if (d % 2 == 1) return {epsilon_product(fp, m - 1, 2L * d, 2L * d), static_cast<int>(m)};
  if (d % 4 == 0) return {epsilon_product(fp, m - 1, d, d), static_cast<int>(m)};
  // Reordering (gamma delta)^{2m} into x y costs (-1)^{m(2m-1)(d/2)^2} = -1.
  return {-epsilon_product(fp, 2 * m - 1, d / 2, d / 2), static_cast<int>(2 * m)};
}

std::string to_string(CenterShape s) {
  switch (s) {
    case CenterShape::ScalarsOnly: return "ScalarsOnly";
    case CenterShape::KPlusXYIdeal: return "KPlusXYIdeal";
    case CenterShape::KPlusXYIdealEven: return "KPlusXYIdealEven";
    case CenterShape::TruncatedCone: return "TruncatedCone";
  }
  return "?";
}

CenterModel predicted_model(const FamilyParams& fp) {
  if (!fp.has_sink()) throw InvalidArgument("center models are given for gamma_q and gamma_mn");
  CenterModel model;
  model.d = order_or_zero(parameter_product(fp));
  if (model.d == 0) return model;
  const int d = model.d, m = fp.m, n = fp.n;
  const bool char2 = fp.field.characteristic() == 2;
  if (!fp.two_index()) {
    model.shape = CenterShape::TruncatedCone;
    EpsilonValue ev = epsilon_d(fp, d);
    model.epsilon = ev.epsilon;
    model.p = ev.p;
    if (m % 2 == 0 || char2) {
      model.w_len = 2 * d;
      model.x_len = model.y_len = m * d;
    } else if (d % 2 == 1) {
      model.w_len = 4 * d;
      model.x_len = model.y_len = 2 * m * d;
    } else if (d % 4 == 0) {
      model.w_len = 2 * d;
      model.x_len = model.y_len = m * d;
    } else {
      model.w_len = d;
      model.x_len = model.y_len = m * d;
    }
    return model;
  }
  model.shape = CenterShape::KPlusXYIdeal;
  model.x_power = model.y_power = d;
  if (!char2) {
    if (m % 2 == 1 && n % 2 == 1) {
      if (d % 2 == 1) model.shape = CenterShape::KPlusXYIdealEven;
    } else if (m % 2 != n % 2 && d % 2 == 1) {
      if (n % 2 == 0)
        model.x_power = 2 * d;
      else
        model.y_power = 2 * d;
    }
  }
  model.x_len = model.x_power * m;
  model.y_len = model.y_power * n;
  return model;
}

ArrowId find_family_arrow(const FamilyParams& fp, const Quiver& q, char kind, long i, long j) {
  auto a = q.find_arrow(arrow_name(fp, kind, wrap(i, fp.rows()), wrap(j, fp.m)));
  if (!a) throw InvalidArgument("quiver has no arrow " + arrow_name(fp, kind, wrap(i, fp.rows()), wrap(j, fp.m)));
  return *a;
}

Path gamma_path(const FamilyParams& fp, const Quiver& q, long i, int s) {
  if (s == 0) return Path::trivial(grid_vertex(fp, 0, i));
  std::vector<ArrowId> ids;
  for (long k = 0; k < s; ++k) ids.push_back(find_family_arrow(fp, q, 'a', 0, i + k));
  return Path::of_arrows(q, ids);
}

Path delta_path(const FamilyParams& fp, const Quiver& q, long i, int t) {
  if (t == 0) return Path::trivial(grid_vertex(fp, 0, i));
  std::vector<ArrowId> ids;
  for (long k = t - 1; k >= 0; --k) ids.push_back(find_family_arrow(fp, q, 'b', 0, i + k));
  return Path::of_arrows(q, ids);
}

Path alpha_loop(const FamilyParams& fp, const Quiver& q, long i, long j) {
  std::vector<ArrowId> ids;
  for (long k = 0; k < fp.m; ++k) ids.push_back(find_family_arrow(fp, q, 'a', i, j + k));
  return Path::of_arrows(q, ids);
}

Path beta_loop(const FamilyParams& fp, const Quiver& q, long i, long j) {
  std::vector<ArrowId> ids;
  for (long k = 0; k < fp.n; ++k) ids.push_back(find_family_arrow(fp, q, 'b', i + k, j));
  return Path::of_arrows(q, ids);
}

PredictedGenerators predicted_generators(const FamilyParams& fp, const QuadAlgebra& dual) {
  CenterModel model = predicted_model(fp);
  if (model.d == 0) throw InvalidArgument("the parameter product is not a root of unity");
  const Quiver& q = dual.quiver();
  const FieldSpec& f = fp.field;
  const Scalar one = Scalar::one(f);
  auto single = [&](const Path& p) { return LinCombo(p, one); };
  PredictedGenerators g;
  if (!fp.two_index()) {
    const long m = fp.m, d = model.d;
    const bool char2 = f.characteristic() == 2;
    // w = sum_i u_i gamma_i^s delta_i^s with u_0 = 1.
    long s = d;
    long block = d;
    bool alternate = false;  // factor (-1)^i
    bool power_sign = false;  // factor (-1)^{id}
    if (m % 2 == 0 || char2) {
      power_sign = true;
    } else if (d % 2 == 1) {
      s = block = 2 * d;
    } else if (d % 4 == 2) {
      s = block = d / 2;
      alternate = true;
    }
    Scalar u = one;
    for (long i = 0; i < m; ++i) {
      if (i > 0) u *= inv_block(fp, i, block);
      Scalar c = u;
      if (power_sign) c *= sign(f, i * d);
      if (alternate) c *= sign(f, i);
      g.w += single(compose(gamma_path(fp, q, i, static_cast<int>(s)), delta_path(fp, q, i, static_cast<int>(s))).value()) * c;
      g.x += single(gamma_path(fp, q, i, model.x_len));
      g.y += single(delta_path(fp, q, i, model.y_len));
    }
    g.w = dual.normal_form(g.w);
    g.x = dual.normal_form(g.x);
    g.y = dual.normal_form(g.y);
    return g;
  }
  LinCombo xb, yb;
  for (long i = 0; i < fp.n; ++i)
    for (long j = 0; j < fp.m; ++j) {
      Scalar cx = one, cy = one;
      for (long p = 0; p < i; ++p)
        for (long l = 0; l < fp.m; ++l) cx *= fp.q2(p, l);
      for (long l = 0; l < j; ++l)
        for (long p = 0; p < fp.n; ++p) cy *= fp.q2(p, l);
      xb += single(alpha_loop(fp, q, i, j)) * cx.inverse();
      yb += single(beta_loop(fp, q, i, j)) * cy;
    }
  g.x = dual.power(xb, static_cast<std::size_t>(model.x_power));
  g.y = dual.power(yb, static_cast<std::size_t>(model.y_power));
  return g;
}

}  // namespace hhlab
