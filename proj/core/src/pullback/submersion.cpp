#include "algebroidkit/pullback/submersion.hpp"

#include <string>

#include "algebroidkit/error.hpp"

namespace algebroidkit {

namespace {

// m × id on Affine(m.source_dim + extra).
PolyMap times_identity(const PolyMap& m, std::size_t extra) {
  const std::size_t dim = m.source_dim + extra;
  PolyMap out{dim, {}};
  for (const auto& im : m.images) out.images.push_back(im.embed(dim, 0));
  for (std::size_t i = 0; i < extra; ++i) out.images.push_back(Polynomial::variable(dim, m.source_dim + i));
  return out;
}

}  // namespace

SplitSubmersion SplitSubmersion::make(std::size_t n, std::size_t k, PolyMap phi, PolyMap phi_inv) {
  const std::size_t N = n + k;
  if (phi.source_dim != N || phi.target_dim() != N || phi_inv.source_dim != N || phi_inv.target_dim() != N) {
    throw DimensionError("split submersion: Φ and Φ⁻¹ must be self-maps of Affine(" + std::to_string(N) + ")");
  }
  if (!phi.after(phi_inv).is_identity()) throw PreconditionError("split submersion: Φ∘Φ⁻¹ ≠ id");
  if (!phi_inv.after(phi).is_identity()) throw PreconditionError("split submersion: Φ⁻¹∘Φ ≠ id");
  return SplitSubmersion{n, k, std::move(phi), std::move(phi_inv)};
}

SplitSubmersion SplitSubmersion::projection(std::size_t n, std::size_t k) {
  return SplitSubmersion{n, k, PolyMap::identity(n + k), PolyMap::identity(n + k)};
}

PolyMap SplitSubmersion::map() const {
  PolyMap f{n + k, {}};
  for (std::size_t i = 0; i < n; ++i) f.images.push_back(phi.images[i]);
  return f;
}

SplitSubmersion compose(const SplitSubmersion& outer, const SplitSubmersion& inner) {
  if (outer.source_dim() != inner.n) {
    throw DimensionError("submersions are not composable: inner target has dimension " + std::to_string(inner.n) +
                         ", outer source has dimension " + std::to_string(outer.source_dim()));
  }
  SplitSubmersion r;
  r.n = outer.n;
  r.k = outer.k + inner.k;
  r.phi = times_identity(outer.phi, inner.k).after(inner.phi);
  r.phi_inv = inner.phi_inv.after(times_identity(outer.phi_inv, inner.k));
  return r;
}

void check_etale(const EtaleMap& e) {
  const std::size_t n = e.map.source_dim;
  if (e.map.target_dim() != n) throw DimensionError("étale map must be between charts of equal dimension");
  if (e.jacobian_inverse.rows() != n || e.jacobian_inverse.cols() != n || e.jacobian_inverse.nvars() != n) {
    throw DimensionError("étale map: inverse Jacobian has the wrong shape");
  }
  if (!(e.map.jacobian() * e.jacobian_inverse).is_identity()) {
    throw PreconditionError("étale map: supplied inverse Jacobian is stale (J·J⁻¹ ≠ id)");
  }
}

}  // namespace algebroidkit
