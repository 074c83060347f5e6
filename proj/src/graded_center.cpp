#include "hhlab/graded_center.hpp"

#include <map>

#include "hhlab/errors.hpp"

namespace hhlab {

namespace {

LinCombo single(const Path& p, const FieldSpec& f) { return LinCombo(p, Scalar::one(f)); }

struct ModelMonomial {
  int a = 0, b = 0, c = 0;  // exponents of x, y, w
};

std::vector<ModelMonomial> model_monomials(const CenterModel& model, std::size_t length) {
  std::vector<ModelMonomial> out;
  const long len = static_cast<long>(length);
  if (len == 0) {
    out.push_back({});
    return out;
  }
  if (model.shape == CenterShape::ScalarsOnly) return out;
  const long xl = model.x_len, yl = model.y_len;
  if (model.shape == CenterShape::TruncatedCone) {
    const long wl = model.w_len;
    for (long c = 0; c < model.p && c * wl <= len; ++c)
      for (long b = 0; c * wl + b * yl <= len; ++b) {
        long rest = len - c * wl - b * yl;
        if (rest % xl != 0) continue;
        long a = rest / xl;
        if (a >= 1 && b == 0 && c == 0) continue;
        out.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)});
      }
    return out;
  }
  for (long t = 1; t * yl <= len; ++t) {
    long rest = len - t * yl;
    if (rest % xl != 0) continue;
    long s = rest / xl;
    if (model.shape == CenterShape::KPlusXYIdealEven && (s + t) % 2 != 0) continue;
    out.push_back({static_cast<int>(s), static_cast<int>(t), 0});
  }
  return out;
}

// Cached powers of one element.
class Powers {
 public:
  Powers(const QuadAlgebra& e, LinCombo base) : e_(e), base_(std::move(base)) { cache_.push_back(e.one()); }
  const LinCombo& operator[](std::size_t k) {
    while (cache_.size() <= k) cache_.push_back(e_.multiply(cache_.back(), base_));
    return cache_[k];
  }

 private:
  const QuadAlgebra& e_;
  LinCombo base_;
  std::vector<LinCombo> cache_;
};

std::string describe(const QuadAlgebra& e, const LinCombo& z) {
  std::string s = z.to_string(e.quiver());
  if (s.size() > 160) s = s.substr(0, 157) + "...";
  return s;
}

}  // namespace

std::vector<LinCombo> centrality_residual(const QuadAlgebra& e, const LinCombo& z) {
  if (z.is_zero()) return {};
  auto len = z.homogeneous_length();
  if (!len) throw InvalidArgument("centrality_residual needs a length-homogeneous element");
  const FieldSpec& f = e.field();
  const Quiver& q = e.quiver();
  const Scalar sgn = Scalar::from_int(f, *len % 2 == 0 ? 1 : -1);
  std::vector<LinCombo> out;
  for (VertexId v = 0; v < q.num_vertices(); ++v) {
    LinCombo ev = single(Path::trivial(v), f);
    out.push_back(e.normal_form(ev * z - z * ev));
  }
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    LinCombo g = single(Path::of_arrow(q, a), f);
    out.push_back(e.normal_form(g * z - (z * g) * sgn));
  }
  return out;
}

bool is_graded_central(const QuadAlgebra& e, const LinCombo& z) {
  for (const auto& r : centrality_residual(e, z))
    if (!r.is_zero()) return false;
  return true;
}

CenterPiece center_piece(const QuadAlgebra& e, std::size_t length) {
  const FieldSpec& f = e.field();
  const Quiver& q = e.quiver();
  const auto& basis = e.monomial_basis(length);
  const auto& next = e.monomial_basis(length + 1);
  const std::size_t next_dim = next.size();
  const Scalar sgn = Scalar::from_int(f, length % 2 == 0 ? 1 : -1);
  const auto& pres = e.presentation();

  // Commuting with every e_v confines z to loops; the arrow conditions
  // preserve the weight degree, so each degree is solved on its own.
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Path& p = basis[k];
    if (p.src != p.tgt) continue;
    groups[pres.degree(p).value_or(0)].push_back(k);
  }
  CenterPiece piece;
  piece.length = length;
  for (const auto& [deg, cols] : groups) {
    SparseMatrix m(f, q.num_arrows() * next_dim, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      LinCombo z = single(basis[cols[c]], f);
      for (ArrowId a = 0; a < q.num_arrows(); ++a) {
        LinCombo g = single(Path::of_arrow(q, a), f);
        LinCombo r = e.normal_form(g * z - (z * g) * sgn);
        for (const auto& [path, x] : r.terms()) m.add(a * next_dim + e.index_of(path), c, x);
      }
    }
    for (const auto& v : kernel_basis(m)) {
      LinCombo z;
      for (const auto& [c, x] : v) z.add(basis[cols[c]], x);
      piece.basis.push_back(std::move(z));
      if (pres.degree_weights) piece.degrees.push_back(deg);
    }
  }
  return piece;
}

std::size_t model_hilbert(const CenterModel& model, std::size_t length) {
  return model_monomials(model, length).size();
}

std::size_t default_max_length(const CenterModel& model) {
  if (model.shape == CenterShape::ScalarsOnly) return 12;
  return static_cast<std::size_t>(2 * (model.x_len + model.y_len));
}

QuadraticPresentation center_algebra_presentation(const FamilyParams& fp) {
  QuadraticPresentation d = dual_in_path_algebra(build_presentation(fp));
  // Here a < b < c is the order with a quadratic Groebner basis.
  std::vector<ArrowId> order;
  for (char kind : {'a', 'b', 'c'})
    for (ArrowId a = 0; a < d.quiver.num_arrows(); ++a)
      if (d.quiver.arrow(a).label[0] == kind) order.push_back(a);
  QuadraticPresentation out =
      QuadraticPresentation::make(d.field, d.quiver, d.relations, order, d.degree_weights);
  out.view = d.view;
  return out;
}

MatchReport match_structure(const QuadAlgebra& e, const FamilyParams& fp, std::size_t max_length) {
  MatchReport rep;
  rep.params = fp;
  rep.model = predicted_model(fp);
  rep.max_length = max_length;
  const CenterModel& model = rep.model;
  const FieldSpec& f = e.field();

  auto verdict = [&](std::string name, bool ok, std::string detail = {}) {
    rep.verdicts.push_back({std::move(name), ok, std::move(detail)});
  };
  verdict("koszul certificate of the dual", e.certificate().ok);
  if (!e.certificate().ok) {
    rep.consistent = false;
    return rep;
  }

  std::optional<PredictedGenerators> gens;
  std::optional<Powers> xp, yp, wp;
  if (model.shape != CenterShape::ScalarsOnly) {
    gens = predicted_generators(fp, e);
    xp.emplace(e, gens->x);
    yp.emplace(e, gens->y);
    if (model.shape == CenterShape::TruncatedCone) wp.emplace(e, gens->w);
  }

  for (std::size_t len = 0; len <= max_length; ++len) {
    LengthRow row;
    row.length = len;
    CenterPiece piece = center_piece(e, len);
    row.computed = piece.basis.size();
    row.predicted = model_hilbert(model, len);
    Echelon span(f, e.monomial_basis(len).size());
    for (const auto& z : piece.basis) span.insert(e.coordinates(z, len));
    Echelon images(f, e.monomial_basis(len).size());
    for (const auto& mono : model_monomials(model, len)) {
      LinCombo img;
      if (len == 0) {
        img = e.one();
      } else {
        img = e.multiply((*xp)[static_cast<std::size_t>(mono.a)], (*yp)[static_cast<std::size_t>(mono.b)]);
        if (mono.c > 0) img = e.multiply(img, (*wp)[static_cast<std::size_t>(mono.c)]);
      }
      SparseVec v = e.coordinates(img, len);
      images.insert(v);
      if (!span.contains(v)) row.model_central = false;
    }
    row.model_rank = images.rank();
    rep.rows.push_back(row);
  }

  if (gens) {
    const LinCombo& x = gens->x;
    const LinCombo& y = gens->y;
    LinCombo xy = e.multiply(x, y);
    std::vector<std::pair<std::string, LinCombo>> witnesses;
    if (model.shape == CenterShape::KPlusXYIdealEven)
      witnesses = {{"y^2", e.multiply(y, y)}, {"xy", xy}};
    else
      witnesses = {{"y", y}, {"xy", xy}};
    if (model.shape == CenterShape::TruncatedCone) witnesses.insert(witnesses.begin() + 1, {"w", gens->w});
    for (const auto& [name, z] : witnesses) {
      bool ok = !z.is_zero() && is_graded_central(e, z);
      verdict("generator " + name + " is central and nonzero", ok, describe(e, z));
    }
    if (model.shape == CenterShape::TruncatedCone) {
      LinCombo rel = (*wp)[static_cast<std::size_t>(model.p)] - xy * *model.epsilon;
      rel = e.normal_form(rel);
      verdict("relation w^" + std::to_string(model.p) + " = epsilon*x*y with epsilon = " + model.epsilon->to_string(),
              rel.is_zero(), rel.is_zero() ? std::string() : describe(e, rel));
    } else {
      LinCombo rel = e.normal_form(xy - e.multiply(y, x));
      verdict("relation x*y = y*x", rel.is_zero(), rel.is_zero() ? std::string() : describe(e, rel));
    }
    std::size_t top = std::max<std::size_t>(1, max_length / static_cast<std::size_t>(model.x_len));
    for (std::size_t i = 1; i <= top; ++i) {
      const LinCombo& xi = (*xp)[i];
      bool ok = !xi.is_zero() && !is_graded_central(e, xi);
      verdict("x^" + std::to_string(i) + " is nonzero and not central", ok);
    }
  }

  rep.consistent = true;
  for (const auto& r : rep.rows) rep.consistent = rep.consistent && r.ok();
  for (const auto& v : rep.verdicts) rep.consistent = rep.consistent && v.ok;
  return rep;
}

MatchReport match_structure(const FamilyParams& fp, std::optional<std::size_t> max_length) {
  QuadAlgebra e(center_algebra_presentation(fp));
  std::size_t lmax = max_length ? *max_length : default_max_length(predicted_model(fp));
  return match_structure(e, fp, lmax);
}

}  // namespace hhlab
