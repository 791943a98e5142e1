#include "algebroidkit/algebroid/presentation.hpp"

#include "algebroidkit/error.hpp"

namespace algebroidkit {

StructureFunctions::StructureFunctions(std::size_t rank, std::size_t nvars)
    : rank_(rank), nvars_(nvars), data_(rank * (rank > 0 ? rank - 1 : 0) / 2 * rank, Polynomial(nvars)) {}

std::size_t StructureFunctions::pair_index(std::size_t i, std::size_t j) const {
  // Pairs (i<j) in lexicographic order.
  return i * (2 * rank_ - i - 1) / 2 + (j - i - 1);
}

Polynomial StructureFunctions::operator()(std::size_t i, std::size_t j, std::size_t k) const {
  if (i >= rank_ || j >= rank_ || k >= rank_) throw DimensionError("structure function index out of range");
  if (i == j) return Polynomial(nvars_);
  if (i < j) return data_[pair_index(i, j) * rank_ + k];
  return -data_[pair_index(j, i) * rank_ + k];
}

void StructureFunctions::set(std::size_t i, std::size_t j, std::size_t k, Polynomial value) {
  if (i >= rank_ || j >= rank_ || k >= rank_) throw DimensionError("structure function index out of range");
  if (value.nvars() != nvars_) throw DimensionError("structure function lives on the wrong chart");
  if (i == j) {
    if (!value.is_zero()) {
      throw PreconditionError("antisymmetry violated: c[" + std::to_string(i) + "][" + std::to_string(i) + "][" +
                              std::to_string(k) + "] must vanish");
    }
    return;
  }
  if (i < j) {
    data_[pair_index(i, j) * rank_ + k] = std::move(value);
  } else {
    data_[pair_index(j, i) * rank_ + k] = -value;
  }
}

Section StructureFunctions::bracket_of_frames(std::size_t i, std::size_t j) const {
  Section s;
  s.reserve(rank_);
  for (std::size_t k = 0; k < rank_; ++k) s.push_back((*this)(i, j, k));
  return s;
}

LocalStructure::LocalStructure(std::size_t rank, std::size_t dim) : anchor(rank, dim, dim), bracket(rank, dim) {}

Polynomial LocalStructure::anchor_apply(std::size_t i, const Polynomial& f) const {
  Polynomial r(dim());
  for (std::size_t mu = 0; mu < dim(); ++mu) {
    const Polynomial& a = anchor.at(i, mu);
    if (!a.is_zero()) r += a * f.derive(mu);
  }
  return r;
}

Polynomial LocalStructure::anchor_apply(const Section& s, const Polynomial& f) const {
  Polynomial r(dim());
  for (std::size_t i = 0; i < rank(); ++i) {
    if (!s[i].is_zero()) r += s[i] * anchor_apply(i, f);
  }
  return r;
}

std::vector<Polynomial> LocalStructure::anchor_of(const Section& s) const {
  if (s.size() != rank()) throw DimensionError("section has wrong length");
  std::vector<Polynomial> v(dim(), Polynomial(dim()));
  for (std::size_t i = 0; i < rank(); ++i) {
    if (s[i].is_zero()) continue;
    for (std::size_t mu = 0; mu < dim(); ++mu) v[mu] += s[i] * anchor.at(i, mu);
  }
  return v;
}

Section LocalStructure::bracket_of(const Section& s, const Section& t) const {
  const std::size_t r = rank();
  if (s.size() != r || t.size() != r) throw DimensionError("section has wrong length");
  Section out(r, Polynomial(dim()));
  for (std::size_t i = 0; i < r; ++i) {
    if (s[i].is_zero()) continue;
    for (std::size_t j = 0; j < r; ++j) {
      if (t[j].is_zero() || i == j) continue;
      const Polynomial st = s[i] * t[j];
      for (std::size_t k = 0; k < r; ++k) {
        Polynomial c = bracket(i, j, k);
        if (!c.is_zero()) out[k] += st * c;
      }
    }
  }
  for (std::size_t k = 0; k < r; ++k) {
    out[k] += anchor_apply(s, t[k]);
    out[k] -= anchor_apply(t, s[k]);
  }
  return out;
}

Section LocalStructure::frame_section(std::size_t i) const {
  Section s(rank(), Polynomial(dim()));
  s.at(i) = Polynomial::constant(dim(), Rational(1));
  return s;
}

AlgebroidPresentation AlgebroidPresentation::zero(const ChartBase& base, std::size_t rank) {
  AlgebroidPresentation A;
  A.base = base;
  A.rank = rank;
  for (const auto& c : base.components()) A.pieces.emplace_back(rank, c.dim);
  return A;
}

AlgebroidPresentation AlgebroidPresentation::single(LocalStructure local) {
  AlgebroidPresentation A;
  A.base = local.dim() == 0 ? ChartBase::point() : ChartBase::affine(local.dim());
  A.rank = local.rank();
  A.pieces.push_back(std::move(local));
  return A;
}

void AlgebroidPresentation::check_shapes() const {
  if (pieces.size() != base.component_count()) {
    throw DimensionError("presentation has " + std::to_string(pieces.size()) + " local pieces for " +
                         std::to_string(base.component_count()) + " base components");
  }
  for (std::size_t c = 0; c < pieces.size(); ++c) {
    const auto& p = pieces[c];
    const std::size_t n = base.dim(c);
    if (p.anchor.rows() != rank || p.anchor.cols() != n || p.anchor.nvars() != n) {
      throw DimensionError("anchor of component " + std::to_string(c) + " must be " + std::to_string(rank) + "x" +
                           std::to_string(n));
    }
    if (p.bracket.rank() != rank || p.bracket.nvars() != n) {
      throw DimensionError("structure functions of component " + std::to_string(c) + " have the wrong shape");
    }
  }
}

std::string coordinate_name(std::size_t mu) { return "x" + std::to_string(mu); }
std::string frame_name(std::size_t i) { return "e" + std::to_string(i); }
std::string coframe_name(std::size_t i) { return "e^" + std::to_string(i); }

}  // namespace algebroidkit
