#include "document.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

#include "algebroidkit/algebroid/forms.hpp"

namespace algebroidkit::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- reading

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw LoadError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw LoadError(join(path, key), "missing field '" + key + "'");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) throw LoadError(path, "expected an array");
  return v;
}

std::size_t read_size(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw LoadError(path, "expected a non-negative integer");
  return v.get<std::size_t>();
}

int read_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw LoadError(path, "expected an integer");
  return v.get<int>();
}

std::string read_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw LoadError(path, "expected a string");
  return v.get<std::string>();
}

Rational read_rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (!v.is_string()) throw LoadError(path, "expected a rational \"p/q\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw LoadError(path, std::string("bad rational: ") + e.what());
  }
}

Polynomial read_poly(const json& v, std::size_t nvars, const std::string& path) {
  Polynomial p(nvars);
  const json& terms = array(v, path);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string tp = index(path, t);
    const Rational c = read_rational(field(terms[t], "coeff", tp), join(tp, "coeff"));
    const json& ex = array(field(terms[t], "exponents", tp), join(tp, "exponents"));
    if (ex.size() != nvars)
      throw LoadError(join(tp, "exponents"), "expected " + std::to_string(nvars) + " exponents, got " +
                                                 std::to_string(ex.size()));
    Exponent e(nvars);
    for (std::size_t i = 0; i < nvars; ++i) e[i] = static_cast<unsigned>(read_size(ex[i], index(join(tp, "exponents"), i)));
    p.add_term(e, c);
  }
  return p;
}

/// rows × cols matrix over Affine(nvars); a zero-row matrix is written [].
PolyMatrix read_matrix(const json& v, std::size_t rows, std::size_t cols, std::size_t nvars, const std::string& path) {
  const json& r = array(v, path);
  if (r.size() != rows)
    throw LoadError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(r.size()));
  PolyMatrix M(rows, cols, nvars);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = index(path, i);
    const json& row = array(r[i], rp);
    if (row.size() != cols)
      throw LoadError(rp, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    for (std::size_t j = 0; j < cols; ++j) M.at(i, j) = read_poly(row[j], nvars, index(rp, j));
  }
  return M;
}

/// Square matrix whose size is read from the document.
PolyMatrix read_square(const json& v, const std::string& path) {
  const std::size_t n = array(v, path).size();
  return read_matrix(v, n, n, n, path);
}

std::vector<std::vector<Rational>> read_rational_matrix(const json& v, std::size_t n, const std::string& path) {
  const json& r = array(v, path);
  if (r.size() != n) throw LoadError(path, "expected " + std::to_string(n) + " rows");
  std::vector<std::vector<Rational>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = array(r[i], index(path, i));
    if (row.size() != n) throw LoadError(index(path, i), "expected " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) out[i].push_back(read_rational(row[j], index(index(path, i), j)));
  }
  return out;
}

/// {"source_dim", "images"} or the affine form {"matrix", "offset"}.
PolyMap read_map(const json& v, std::optional<std::size_t> source_dim, std::optional<std::size_t> target_dim,
                 const std::string& path) {
  if (!v.is_object()) throw LoadError(path, "expected an object");
  PolyMap f;
  if (const json* m = optional_field(v, "matrix")) {
    const std::size_t n = array(*m, join(path, "matrix")).size();
    const auto L = read_rational_matrix(*m, n, join(path, "matrix"));
    std::vector<Rational> o(n);
    if (const json* off = optional_field(v, "offset")) {
      const json& a = array(*off, join(path, "offset"));
      if (a.size() != n) throw LoadError(join(path, "offset"), "expected " + std::to_string(n) + " entries");
      for (std::size_t i = 0; i < n; ++i) o[i] = read_rational(a[i], index(join(path, "offset"), i));
    }
    f = PolyMap::affine(L, o);
  } else {
    std::size_t n = 0;
    if (const json* s = optional_field(v, "source_dim")) {
      n = read_size(*s, join(path, "source_dim"));
    } else if (source_dim) {
      n = *source_dim;
    } else {
      throw LoadError(join(path, "source_dim"), "missing field 'source_dim'");
    }
    const json& im = array(field(v, "images", path), join(path, "images"));
    f.source_dim = n;
    for (std::size_t i = 0; i < im.size(); ++i) f.images.push_back(read_poly(im[i], n, index(join(path, "images"), i)));
  }
  if (source_dim && f.source_dim != *source_dim)
    throw LoadError(path, "map has source dimension " + std::to_string(f.source_dim) + ", expected " +
                              std::to_string(*source_dim));
  if (target_dim && f.target_dim() != *target_dim)
    throw LoadError(path, "map has target dimension " + std::to_string(f.target_dim()) + ", expected " +
                              std::to_string(*target_dim));
  return f;
}

ChartBase read_base(const json& v, const std::string& path) {
  const std::string kind = read_string(field(v, "kind", path), join(path, "kind"));
  if (kind == "point") return ChartBase::point();
  if (kind == "affine") return ChartBase::affine(read_size(field(v, "dim", path), join(path, "dim")));
  if (kind == "union") {
    const std::string cp = join(path, "components");
    const json& comps = array(field(v, "components", path), cp);
    std::vector<ChartComponent> out;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const std::string p = index(cp, c);
      out.push_back({read_string(field(comps[c], "label", p), join(p, "label")),
                     read_size(field(comps[c], "dim", p), join(p, "dim"))});
    }
    try {
      return ChartBase::disjoint_union(std::move(out));
    } catch (const Error& e) {
      throw LoadError(cp, e.what());
    }
  }
  throw LoadError(join(path, "kind"), "unknown base kind '" + kind + "' (expected point, affine or union)");
}

LocalStructure read_local(const json& v, std::size_t rank, std::size_t dim, const std::string& path) {
  LocalStructure L(rank, dim);
  L.anchor = read_matrix(field(v, "anchor", path), rank, dim, dim, join(path, "anchor"));
  const std::string bp = join(path, "brackets");
  const json* b = optional_field(v, "brackets");
  if (!b) return L;
  std::set<std::array<std::size_t, 3>> seen;
  for (std::size_t t = 0; t < array(*b, bp).size(); ++t) {
    const std::string tp = index(bp, t);
    const json& e = (*b)[t];
    const std::size_t i = read_size(field(e, "i", tp), join(tp, "i"));
    const std::size_t j = read_size(field(e, "j", tp), join(tp, "j"));
    const std::size_t k = read_size(field(e, "k", tp), join(tp, "k"));
    if (i >= rank || j >= rank || k >= rank) throw LoadError(tp, "frame index out of range for rank " + std::to_string(rank));
    const Polynomial value = read_poly(field(e, "value", tp), dim, join(tp, "value"));
    if (i == j) {
      if (!value.is_zero())
        throw LoadError(tp, "antisymmetry violated: c^" + std::to_string(k) + "_{" + std::to_string(i) + std::to_string(i) +
                                "} = " + value.str() + " must vanish");
      continue;
    }
    if (!seen.insert({std::min(i, j), std::max(i, j), k}).second)
      throw LoadError(tp, "structure function of (" + std::to_string(i) + "," + std::to_string(j) + ") -> " +
                              std::to_string(k) + " given twice");
    L.bracket.set(i, j, k, value);
  }
  return L;
}

AlgebroidPresentation read_algebroid(const json& v, const std::string& path) {
  AlgebroidPresentation A;
  A.base = read_base(field(v, "base", path), join(path, "base"));
  A.rank = read_size(field(v, "rank", path), join(path, "rank"));
  if (const json* pieces = optional_field(v, "pieces")) {
    const std::string pp = join(path, "pieces");
    if (array(*pieces, pp).size() != A.base.component_count())
      throw LoadError(pp, "expected one piece per base component (" + std::to_string(A.base.component_count()) + ")");
    for (std::size_t c = 0; c < pieces->size(); ++c)
      A.pieces.push_back(read_local((*pieces)[c], A.rank, A.base.dim(c), index(pp, c)));
  } else {
    if (!A.base.is_single_chart()) throw LoadError(join(path, "pieces"), "missing field 'pieces'");
    A.pieces.push_back(read_local(v, A.rank, A.base.dim(), path));
  }
  try {
    A.check_shapes();
  } catch (const Error& e) {
    throw LoadError(path, e.what());
  }
  return A;
}

AlgebroidMorphism read_morphism(const json& v, const std::string& path) {
  AlgebroidMorphism m;
  m.source = read_algebroid(field(v, "source", path), join(path, "source"));
  m.target = read_algebroid(field(v, "target", path), join(path, "target"));
  const std::string pp = join(path, "pieces");
  const json& pieces = array(field(v, "pieces", path), pp);
  if (pieces.size() != m.source.base.component_count())
    throw LoadError(pp, "expected one piece per source component (" + std::to_string(m.source.base.component_count()) + ")");
  for (std::size_t c = 0; c < pieces.size(); ++c) {
    const std::string p = index(pp, c);
    const json& e = pieces[c];
    MorphismPiece piece;
    piece.source_component = c;
    if (const json* s = optional_field(e, "source_component")) piece.source_component = read_size(*s, join(p, "source_component"));
    if (const json* t = optional_field(e, "target_component")) piece.target_component = read_size(*t, join(p, "target_component"));
    if (piece.source_component >= m.source.base.component_count() ||
        piece.target_component >= m.target.base.component_count())
      throw LoadError(p, "component index out of range");
    const std::size_t sd = m.source.base.dim(piece.source_component);
    const std::size_t td = m.target.base.dim(piece.target_component);
    piece.base_map = read_map(field(e, "base_map", p), sd, td, join(p, "base_map"));
    piece.matrix = read_matrix(field(e, "matrix", p), m.source.rank, m.target.rank, sd, join(p, "matrix"));
    m.pieces.push_back(std::move(piece));
  }
  return m;
}

SplitSubmersion read_submersion(const json& v, const std::string& path) {
  const std::size_t n = read_size(field(v, "n", path), join(path, "n"));
  const std::size_t k = read_size(field(v, "k", path), join(path, "k"));
  const json* phi = optional_field(v, "phi");
  const json* inv = optional_field(v, "phi_inv");
  if (!phi && !inv) return SplitSubmersion::projection(n, k);
  if (!phi) throw LoadError(join(path, "phi"), "missing field 'phi'");
  if (!inv) throw LoadError(join(path, "phi_inv"), "missing field 'phi_inv'");
  PolyMap f = read_map(*phi, n + k, n + k, join(path, "phi"));
  PolyMap g = read_map(*inv, n + k, n + k, join(path, "phi_inv"));
  try {
    return SplitSubmersion::make(n, k, std::move(f), std::move(g));
  } catch (const Error& e) {
    throw LoadError(join(path, "phi_inv"), e.what());
  }
}

AlgebroidPresentation read_single_chart(const json& v, const std::string& path) {
  AlgebroidPresentation A = read_algebroid(v, path);
  if (!A.base.is_single_chart()) throw LoadError(path, "a single-chart algebroid is required");
  return A;
}

SubmersionDatum read_descent(const json& v, const std::string& path) {
  SubmersionDatum D;
  D.phi = read_submersion(field(v, "submersion", path), join(path, "submersion"));
  D.algebroid = read_single_chart(field(v, "algebroid", path), join(path, "algebroid"));
  if (D.algebroid.base.dim() != D.phi.source_dim())
    throw LoadError(join(path, "algebroid"), "algebroid must live on the source chart Affine(" +
                                                 std::to_string(D.phi.source_dim()) + ")");
  const std::size_t pair_dim = D.phi.n + 2 * D.phi.k;
  const std::size_t r = D.phi.k + D.algebroid.rank;
  D.psi = read_matrix(field(v, "psi", path), r, r, pair_dim, join(path, "psi"));
  return D;
}

CoverDatum read_cover(const json& v, const std::string& path) {
  CoverDatum D;
  const std::string cp = join(path, "charts");
  const json& charts = array(field(v, "charts", path), cp);
  for (std::size_t c = 0; c < charts.size(); ++c) D.charts.push_back(read_single_chart(charts[c], index(cp, c)));
  auto chart = [&](const json& e, const char* key, const std::string& p) {
    const std::size_t i = read_size(field(e, key, p), join(p, key));
    if (i >= D.charts.size()) throw LoadError(join(p, key), "chart index out of range");
    return i;
  };
  const std::string op = join(path, "overlaps");
  const json& overlaps = array(field(v, "overlaps", path), op);
  for (std::size_t o = 0; o < overlaps.size(); ++o) {
    const std::string p = index(op, o);
    const json& e = overlaps[o];
    CoverOverlap ov;
    ov.i = chart(e, "i", p);
    ov.j = chart(e, "j", p);
    ov.dim = read_size(field(e, "dim", p), join(p, "dim"));
    ov.to_i = read_map(field(e, "to_i", p), ov.dim, D.charts[ov.i].base.dim(), join(p, "to_i"));
    ov.to_j = read_map(field(e, "to_j", p), ov.dim, D.charts[ov.j].base.dim(), join(p, "to_j"));
    ov.theta = read_matrix(field(e, "theta", p), D.charts[ov.j].rank, D.charts[ov.i].rank, ov.dim, join(p, "theta"));
    D.overlaps.push_back(std::move(ov));
  }
  if (const json* triples = optional_field(v, "triples")) {
    const std::string tp = join(path, "triples");
    for (std::size_t t = 0; t < array(*triples, tp).size(); ++t) {
      const std::string p = index(tp, t);
      const json& e = (*triples)[t];
      CoverTriple tr;
      tr.i = chart(e, "i", p);
      tr.j = chart(e, "j", p);
      tr.k = chart(e, "k", p);
      tr.dim = read_size(field(e, "dim", p), join(p, "dim"));
      tr.to_ij = read_map(field(e, "to_ij", p), tr.dim, std::nullopt, join(p, "to_ij"));
      tr.to_jk = read_map(field(e, "to_jk", p), tr.dim, std::nullopt, join(p, "to_jk"));
      tr.to_ik = read_map(field(e, "to_ik", p), tr.dim, std::nullopt, join(p, "to_ik"));
      D.triples.push_back(std::move(tr));
    }
  }
  return D;
}

DeskGroupoid read_groupoid(const json& v, const std::string& path) {
  DeskGroupoid G;
  G.dim = read_size(field(v, "dim", path), join(path, "dim"));
  const std::string tp = join(path, "table");
  const json& table = array(field(v, "table", path), tp);
  const std::size_t n = table.size();
  if (n == 0) throw LoadError(tp, "empty multiplication table");
  for (std::size_t g = 0; g < n; ++g) {
    const json& row = array(table[g], index(tp, g));
    if (row.size() != n) throw LoadError(index(tp, g), "expected " + std::to_string(n) + " entries");
    std::vector<std::size_t> r;
    for (std::size_t h = 0; h < n; ++h) {
      r.push_back(read_size(row[h], index(index(tp, g), h)));
      if (r.back() >= n) throw LoadError(index(index(tp, g), h), "element index out of range");
    }
    G.table.push_back(std::move(r));
  }
  const std::string ap = join(path, "actions");
  if (const json* actions = optional_field(v, "actions")) {
    if (array(*actions, ap).size() != n) throw LoadError(ap, "expected one action per group element");
    for (std::size_t g = 0; g < n; ++g) G.action.push_back(read_map((*actions)[g], G.dim, G.dim, index(ap, g)));
  } else if (G.dim == 0) {
    G.action.assign(n, PolyMap::identity(0));
  } else {
    throw LoadError(ap, "missing field 'actions'");
  }
  const std::string ip = join(path, "inverses");
  const json& inverses = array(field(v, "inverses", path), ip);
  if (inverses.size() != n) throw LoadError(ip, "expected one inverse per group element");
  for (std::size_t g = 0; g < n; ++g) {
    const std::size_t h = read_size(inverses[g], index(ip, g));
    if (h >= n || G.table[g][h] != 0 || G.table[h][g] != 0)
      throw LoadError(index(ip, g), "supplied inverse does not invert " + arrow_label(g) + " in the table");
  }
  const Verdict ok = verify_groupoid(G);
  if (!ok.valid) throw LoadError(path, "groupoid axioms fail at " + ok.witnesses.front().location + ": " + ok.witnesses.front().detail);
  return G;
}

GroupoidAlgebroid read_groupoid_algebroid(const json& v, const std::string& path) {
  GroupoidAlgebroid GA;
  GA.groupoid = read_groupoid(field(v, "groupoid", path), join(path, "groupoid"));
  GA.algebroid = read_single_chart(field(v, "algebroid", path), join(path, "algebroid"));
  if (GA.algebroid.base.dim() != GA.groupoid.dim)
    throw LoadError(join(path, "algebroid"), "algebroid and groupoid live on charts of different dimension");
  const std::string pp = join(path, "psi");
  const json& psi = array(field(v, "psi", path), pp);
  if (psi.size() != GA.groupoid.order()) throw LoadError(pp, "expected one matrix per group element");
  const std::size_t r = GA.algebroid.rank, d = GA.groupoid.dim;
  for (std::size_t g = 0; g < psi.size(); ++g) GA.psi.push_back(read_matrix(psi[g], r, r, d, index(pp, g)));
  return GA;
}

TaskOptions read_options(const json& v, const std::string& path) {
  TaskOptions o;
  if (!v.is_object()) throw LoadError(path, "expected an object");
  for (const auto& [key, value] : v.items()) {
    const std::string p = join(path, key);
    if (key == "max_degree") {
      o.max_degree = read_size(value, p);
    } else if (key == "grading") {
      o.grading = read_string(value, p);
    } else if (key == "cap") {
      o.cap = read_int(value, p);
      if (*o.cap < 0) throw LoadError(p, "cap must be non-negative");
    } else {
      throw LoadError(p, "unknown option");
    }
  }
  return o;
}

const std::vector<std::string>& required_fields(TaskKind kind) {
  static const std::map<TaskKind, std::vector<std::string>> req = {
      {TaskKind::VerifyAlgebroid, {"algebroid"}},
      {TaskKind::VerifyMorphism, {"morphism"}},
      {TaskKind::Pullback, {"submersion", "algebroid"}},
      {TaskKind::Descend, {"descent", "section"}},
      {TaskKind::VerifyDescent, {}},
      {TaskKind::BuildLaGroupoid, {"groupoid_algebroid"}},
      {TaskKind::RoundtripF1F2, {"groupoid_algebroid"}},
      {TaskKind::CechCohomology, {"groupoid_algebroid"}},
      {TaskKind::InvariantCohomology, {"groupoid_algebroid"}},
      {TaskKind::PoissonVerify, {"bivector"}},
      {TaskKind::Cotangent, {"bivector"}},
      {TaskKind::LinearPoisson, {"algebroid"}},
      {TaskKind::Symplectic, {"omega", "omega_inverse"}},
  };
  return req.at(kind);
}

// ---------------------------------------------------------------- writing

ordered_json local_to_json(const LocalStructure& L, ordered_json out) {
  out["anchor"] = to_json(L.anchor);
  ordered_json br = ordered_json::array();
  for (std::size_t i = 0; i < L.rank(); ++i)
    for (std::size_t j = i + 1; j < L.rank(); ++j)
      for (std::size_t k = 0; k < L.rank(); ++k) {
        const Polynomial c = L.bracket(i, j, k);
        if (!c.is_zero()) br.push_back({{"i", i}, {"j", j}, {"k", k}, {"value", to_json(c)}});
      }
  out["brackets"] = std::move(br);
  return out;
}

ordered_json submersion_to_json(const SplitSubmersion& f) {
  ordered_json out{{"n", f.n}, {"k", f.k}};
  if (!f.phi.is_identity() || !f.phi_inv.is_identity()) {
    out["phi"] = to_json(f.phi);
    out["phi_inv"] = to_json(f.phi_inv);
  }
  return out;
}

bool is_affine(const PolyMap& f) {
  if (f.target_dim() != f.source_dim) return false;
  for (const auto& p : f.images)
    if (p.total_degree() > 1) return false;
  return true;
}

ordered_json map_to_json_preferring_affine(const PolyMap& f) {
  if (!is_affine(f) || f.source_dim == 0) return to_json(f);
  const std::size_t n = f.source_dim;
  ordered_json m = ordered_json::array(), o = ordered_json::array();
  for (std::size_t i = 0; i < n; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < n; ++j) {
      Exponent e(n, 0);
      e[j] = 1;
      row.push_back(to_json(f.images[i].coefficient(e)));
    }
    m.push_back(std::move(row));
    o.push_back(to_json(f.images[i].constant_term()));
  }
  return {{"matrix", std::move(m)}, {"offset", std::move(o)}};
}

ordered_json groupoid_to_json(const DeskGroupoid& G) {
  ordered_json out{{"dim", G.dim}, {"table", G.table}};
  if (G.dim > 0) {
    ordered_json a = ordered_json::array();
    for (const auto& f : G.action) a.push_back(map_to_json_preferring_affine(f));
    out["actions"] = std::move(a);
  }
  std::vector<std::size_t> inv;
  for (std::size_t g = 0; g < G.order(); ++g) inv.push_back(G.inverse(g));
  out["inverses"] = inv;
  return out;
}

ordered_json morphism_to_json(const AlgebroidMorphism& m) {
  ordered_json pieces = ordered_json::array();
  for (const auto& p : m.pieces)
    pieces.push_back({{"source_component", p.source_component},
                      {"target_component", p.target_component},
                      {"base_map", to_json(p.base_map)},
                      {"matrix", to_json(p.matrix)}});
  return {{"source", to_json(m.source)}, {"target", to_json(m.target)}, {"pieces", std::move(pieces)}};
}

ordered_json cover_to_json(const CoverDatum& D) {
  ordered_json charts = ordered_json::array(), overlaps = ordered_json::array();
  for (const auto& A : D.charts) charts.push_back(to_json(A));
  for (const auto& o : D.overlaps)
    overlaps.push_back({{"i", o.i},
                        {"j", o.j},
                        {"dim", o.dim},
                        {"to_i", to_json(o.to_i)},
                        {"to_j", to_json(o.to_j)},
                        {"theta", to_json(o.theta)}});
  ordered_json out{{"charts", std::move(charts)}, {"overlaps", std::move(overlaps)}};
  if (!D.triples.empty()) {
    ordered_json triples = ordered_json::array();
    for (const auto& t : D.triples)
      triples.push_back({{"i", t.i},
                         {"j", t.j},
                         {"k", t.k},
                         {"dim", t.dim},
                         {"to_ij", to_json(t.to_ij)},
                         {"to_jk", to_json(t.to_jk)},
                         {"to_ik", to_json(t.to_ik)}});
    out["triples"] = std::move(triples);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {
      "verify-algebroid", "verify-morphism",      "pullback",       "descend",  "verify-descent",
      "build-la-groupoid", "roundtrip-f1f2",      "cech-cohomology", "invariant-cohomology",
      "poisson-verify",   "cotangent",            "linear-poisson", "symplectic"};
  return names;
}

std::optional<TaskKind> parse_task(std::string_view name) {
  const auto& names = task_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<TaskKind>(i);
  return std::nullopt;
}

std::string task_name(TaskKind kind) { return task_names().at(static_cast<std::size_t>(kind)); }

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw LoadError("", std::string("malformed JSON: ") + e.what());
  }
}

TaskInputs load_inputs(TaskKind kind, const json& doc) {
  if (!doc.is_object()) throw LoadError("", "document must be a JSON object");
  const std::string schema = read_string(field(doc, "schema", ""), "schema");
  if (schema != kSchema) throw LoadError("schema", "schema version '" + schema + "' is not " + std::string(kSchema));
  static const std::set<std::string> known = {"schema",  "task",      "description", "options",            "algebroid",
                                              "morphism", "submersion", "descent",     "section",            "cover",
                                              "groupoid_algebroid", "bivector", "omega", "omega_inverse"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) throw LoadError(key, "unknown field");
  if (const json* t = optional_field(doc, "task")) {
    const std::string name = read_string(*t, "task");
    if (name != task_name(kind)) throw LoadError("task", "document is for task '" + name + "', not '" + task_name(kind) + "'");
  }
  for (const auto& key : required_fields(kind)) field(doc, key, "");
  if (kind == TaskKind::VerifyDescent && !doc.contains("cover") && !doc.contains("descent"))
    throw LoadError("cover", "missing field 'cover' (or 'descent')");

  TaskInputs in;
  if (const json* v = optional_field(doc, "options")) in.options = read_options(*v, "options");
  if (const json* v = optional_field(doc, "algebroid")) in.algebroid = read_algebroid(*v, "algebroid");
  if (const json* v = optional_field(doc, "morphism")) in.morphism = read_morphism(*v, "morphism");
  if (const json* v = optional_field(doc, "submersion")) in.submersion = read_submersion(*v, "submersion");
  if (const json* v = optional_field(doc, "descent")) in.descent = read_descent(*v, "descent");
  if (const json* v = optional_field(doc, "section")) {
    std::optional<std::size_t> n, nk;
    if (in.descent) {
      n = in.descent->phi.n;
      nk = in.descent->phi.source_dim();
    }
    in.section = read_map(*v, n, nk, "section");
  }
  if (const json* v = optional_field(doc, "cover")) in.cover = read_cover(*v, "cover");
  if (const json* v = optional_field(doc, "groupoid_algebroid"))
    in.groupoid_algebroid = read_groupoid_algebroid(*v, "groupoid_algebroid");
  auto skew = [&](const char* key) -> std::optional<PolyMatrix> {
    const json* v = optional_field(doc, key);
    if (!v) return std::nullopt;
    return read_square(*v, key);
  };
  in.bivector = skew("bivector");
  in.omega = skew("omega");
  in.omega_inverse = skew("omega_inverse");
  return in;
}

ordered_json save_inputs(const TaskInputs& in) {
  ordered_json out{{"schema", kSchema}};
  ordered_json opt = ordered_json::object();
  if (in.options.max_degree) opt["max_degree"] = *in.options.max_degree;
  if (in.options.grading) opt["grading"] = *in.options.grading;
  if (in.options.cap) opt["cap"] = *in.options.cap;
  if (!opt.empty()) out["options"] = std::move(opt);
  if (in.algebroid) out["algebroid"] = to_json(*in.algebroid);
  if (in.morphism) out["morphism"] = morphism_to_json(*in.morphism);
  if (in.submersion) out["submersion"] = submersion_to_json(*in.submersion);
  if (in.descent)
    out["descent"] = {{"submersion", submersion_to_json(in.descent->phi)},
                      {"algebroid", to_json(in.descent->algebroid)},
                      {"psi", to_json(in.descent->psi)}};
  if (in.section) out["section"] = to_json(*in.section);
  if (in.cover) out["cover"] = cover_to_json(*in.cover);
  if (in.groupoid_algebroid) {
    ordered_json psi = ordered_json::array();
    for (const auto& m : in.groupoid_algebroid->psi) psi.push_back(to_json(m));
    out["groupoid_algebroid"] = {{"groupoid", groupoid_to_json(in.groupoid_algebroid->groupoid)},
                                 {"algebroid", to_json(in.groupoid_algebroid->algebroid)},
                                 {"psi", std::move(psi)}};
  }
  if (in.bivector) out["bivector"] = to_json(*in.bivector);
  if (in.omega) out["omega"] = to_json(*in.omega);
  if (in.omega_inverse) out["omega_inverse"] = to_json(*in.omega_inverse);
  return out;
}

ordered_json to_json(const Rational& q) { return q.str(); }

ordered_json to_json(const Polynomial& p) {
  ordered_json out = ordered_json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    out.push_back({{"coeff", it->second.str()}, {"exponents", it->first}});
  return out;
}

ordered_json to_json(const PolyMatrix& m) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

ordered_json to_json(const PolyMap& f) {
  ordered_json im = ordered_json::array();
  for (const auto& p : f.images) im.push_back(to_json(p));
  return {{"source_dim", f.source_dim}, {"images", std::move(im)}};
}

ordered_json to_json(const ChartBase& b) {
  switch (b.kind()) {
    case ChartBase::Kind::Point:
      return {{"kind", "point"}};
    case ChartBase::Kind::Affine:
      return {{"kind", "affine"}, {"dim", b.dim()}};
    case ChartBase::Kind::DisjointUnion: {
      ordered_json c = ordered_json::array();
      for (const auto& comp : b.components()) c.push_back({{"label", comp.label}, {"dim", comp.dim}});
      return {{"kind", "union"}, {"components", std::move(c)}};
    }
  }
  return {};
}

ordered_json to_json(const AlgebroidPresentation& A) {
  ordered_json out{{"base", to_json(A.base)}, {"rank", A.rank}};
  if (A.base.is_single_chart()) return local_to_json(A.local(), std::move(out));
  ordered_json pieces = ordered_json::array();
  for (const auto& L : A.pieces) pieces.push_back(local_to_json(L, ordered_json::object()));
  out["pieces"] = std::move(pieces);
  return out;
}

}  // namespace algebroidkit::io
