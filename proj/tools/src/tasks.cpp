#include "tasks.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "algebroidkit/algebroid/cohomology.hpp"
#include "algebroidkit/algebroid/morphism.hpp"
#include "algebroidkit/groupoid/la_groupoid.hpp"
#include "algebroidkit/poisson/poisson.hpp"
#include "algebroidkit/stackcoh/cech.hpp"

namespace algebroidkit::io {

namespace {

template <class T>
const T& need(const std::optional<T>& v, const char* name) {
  if (!v) throw LoadError(name, "missing field '" + std::string(name) + "'");
  return *v;
}

Grading grading_for(const TaskInputs& in, std::size_t dim, std::size_t rank) {
  return Grading::preset(in.options.grading.value_or("polynomial"), dim, rank);
}

int cap_of(const TaskInputs& in, int fallback) { return in.options.cap.value_or(fallback); }

std::vector<std::size_t> summed(const std::map<int, std::vector<std::size_t>>& table) {
  std::vector<std::size_t> out;
  for (const auto& [grade, b] : table) {
    if (out.size() < b.size()) out.resize(b.size(), 0);
    for (std::size_t d = 0; d < b.size(); ++d) out[d] += b[d];
  }
  return out;
}

/// Verifies the parent groupoid algebroid first; false when it fails.
bool groupoid_algebroid_ok(Report& r, const GroupoidAlgebroid& GA) {
  r.verdict.absorb(verify_groupoid_algebroid(GA), "groupoid algebroid");
  return r.verdict.valid;
}

void verify_algebroid_task(Report& r, const TaskInputs& in) {
  const AlgebroidPresentation& A = need(in.algebroid, "algebroid");
  r.verdict = verify_algebroid(A);
  r.result.scalar("base", A.base.describe());
  r.result.scalar("rank", A.rank);
  if (!r.verdict.valid || !A.base.is_single_chart()) return;
  if (A.base.kind() == ChartBase::Kind::Point || in.options.cap) {
    const Grading g = grading_for(in, A.base.dim(), A.rank);
    const auto table = algebroid_cohomology(A, g, cap_of(in, 0));
    r.result.scalar("grading", g.name);
    r.result.graded_betti("betti_by_grade", table);
    r.result.sizes("betti", summed(table));
  }
}

void verify_morphism_task(Report& r, const TaskInputs& in) {
  const AlgebroidMorphism& m = need(in.morphism, "morphism");
  r.verdict = check_morphism(m);
  r.result.scalar("source", "rank " + std::to_string(m.source.rank) + " over " + m.source.base.describe());
  r.result.scalar("target", "rank " + std::to_string(m.target.rank) + " over " + m.target.base.describe());
}

void pullback_task(Report& r, const TaskInputs& in) {
  const AlgebroidPresentation& A = need(in.algebroid, "algebroid");
  const SplitSubmersion& f = need(in.submersion, "submersion");
  r.verdict.absorb(verify_algebroid(A), "algebroid");
  if (!r.verdict.valid) return;
  const Pullback P = pullback_algebroid(f, A);
  r.verdict.absorb(verify_algebroid(P.algebroid), "pullback");
  r.verdict.absorb(check_morphism(pullback_projection(P)), "projection");
  const bool formula = P.algebroid.rank == A.rank + f.k;
  if (formula) {
    r.verdict.record("rank(f!A) = rank(A) + k");
  } else {
    r.verdict.fail("rank", "rank(f!A) differs from rank(A) + k",
                   Polynomial::constant(0, Rational(static_cast<long>(P.algebroid.rank)) -
                                               Rational(static_cast<long>(A.rank + f.k))));
  }
  r.result.scalar("relative_dimension", f.k);
  r.result.scalar("rank", P.algebroid.rank);
  r.result.algebroid("algebroid", P.algebroid);
}

void descend_task(Report& r, const TaskInputs& in) {
  const SubmersionDatum& D = need(in.descent, "descent");
  r.verdict.absorb(verify_descent(D), "descent datum");
  if (!r.verdict.valid) return;
  const DescentResult d = descend_along_section(D, need(in.section, "section"));
  r.verdict.absorb(d.verdict, "descent");
  r.verdict.absorb(verify_algebroid(d.descended.algebroid), "descended");
  r.result.scalar("rank", d.descended.algebroid.rank);
  r.result.algebroid("algebroid", d.descended.algebroid);
}

void verify_descent_task(Report& r, const TaskInputs& in) {
  if (in.cover) {
    r.verdict = verify_descent(*in.cover);
    r.result.scalar("form", "cover");
    r.result.scalar("charts", in.cover->charts.size());
    r.result.scalar("overlaps", in.cover->overlaps.size());
  } else {
    const SubmersionDatum& D = need(in.descent, "descent");
    r.verdict = verify_descent(D);
    r.result.scalar("form", "submersion");
    r.result.scalar("base_dimension", D.phi.n);
    r.result.scalar("relative_dimension", D.phi.k);
  }
}

void build_la_groupoid_task(Report& r, const TaskInputs& in) {
  const GroupoidAlgebroid& GA = need(in.groupoid_algebroid, "groupoid_algebroid");
  if (!groupoid_algebroid_ok(r, GA)) return;
  const LAGroupoid L = build_la_groupoid(GA);
  r.verdict.absorb(verify_la_groupoid(L), "LA-groupoid");
  const Verdict bang = check_bang_vacant(L), plain = check_vacant(L);
  r.verdict.absorb(bang, "!-vacancy");
  r.verdict.absorb(plain, "vacancy");
  r.result.scalar("group_order", GA.groupoid.order());
  r.result.scalar("omega", "rank " + std::to_string(L.omega.rank) + " over " + L.omega.base.describe());
  r.result.scalar("omega2", "rank " + std::to_string(L.omega2.rank) + " over " + L.omega2.base.describe());
  r.result.flag("bang_vacant", bang.valid);
  r.result.flag("vacant", plain.valid);
}

void roundtrip_task(Report& r, const TaskInputs& in) {
  const GroupoidAlgebroid& GA = need(in.groupoid_algebroid, "groupoid_algebroid");
  if (!groupoid_algebroid_ok(r, GA)) return;
  const LAGroupoid L = build_la_groupoid(GA);
  const GroupoidAlgebroid back = f2_recover(L);
  bool identity = back.groupoid == GA.groupoid && back.algebroid == GA.algebroid;
  for (std::size_t g = 0; identity && g < GA.psi.size(); ++g) {
    const PolyMatrix diff = back.psi[g] - GA.psi[g];
    for (std::size_t p = 0; p < diff.rows(); ++p)
      for (std::size_t q = 0; q < diff.cols(); ++q)
        if (identity && !diff.at(p, q).is_zero()) {
          r.verdict.fail("F2(F1(A)) at " + arrow_label(g) + " (" + std::to_string(p) + "," + std::to_string(q) + ")",
                         "recovered ψ differs from the input", diff.at(p, q));
          identity = false;
        }
  }
  if (identity) r.verdict.record("F2(F1(A, ψ)) = (A, ψ)");
  const Verdict unit = check_la_morphism(unit_iso(L));
  r.verdict.absorb(unit, "F1(F2(L)) ≅ L");
  r.result.flag("f2_f1_identity", identity);
  r.result.flag("f1_f2_isomorphic", unit.valid);
}

void cech_task(Report& r, const TaskInputs& in) {
  const GroupoidAlgebroid& GA = need(in.groupoid_algebroid, "groupoid_algebroid");
  if (!groupoid_algebroid_ok(r, GA)) return;
  const std::size_t top = in.options.max_degree.value_or(3);
  const std::size_t N = top + 1;
  const Grading g = grading_for(in, GA.groupoid.dim, GA.algebroid.rank);
  const int cap = cap_of(in, 0);
  const CechDoubleComplex C = build_cech_complex(GA, N, N, g, cap);
  r.verdict.absorb(verify_cech_complex(GA, C), "Čech complex");
  r.result.scalar("grading", g.name);
  r.result.scalar("cap", cap);
  r.result.scalar("nerve_levels", N);
  r.result.scalar("form_degrees", N);
  r.result.total_betti("betti", cech_cohomology(C, top));
}

void invariant_task(Report& r, const TaskInputs& in) {
  const GroupoidAlgebroid& GA = need(in.groupoid_algebroid, "groupoid_algebroid");
  if (!groupoid_algebroid_ok(r, GA)) return;
  const Grading g = grading_for(in, GA.groupoid.dim, GA.algebroid.rank);
  const int cap = cap_of(in, 0);
  const auto table = complex_cohomology(invariant_complex(GA, g, cap));
  std::vector<std::size_t> total = summed(table);
  if (in.options.max_degree) total.resize(*in.options.max_degree + 1, 0);
  r.verdict.record("invariant forms are closed under d");
  r.result.scalar("grading", g.name);
  r.result.scalar("cap", cap);
  r.result.graded_betti("betti_by_grade", table);
  r.result.sizes("betti", total);
}

void poisson_verify_task(Report& r, const TaskInputs& in) {
  const PoissonCheck c = verify_poisson(PolyVectorField::bivector(need(in.bivector, "bivector")));
  r.verdict = c.verdict;
  r.result.scalar("dim", c.schouten_square.nvars);
  std::vector<std::string> nonzero;
  const auto triples = increasing_tuples(c.schouten_square.nvars, 3);
  for (std::size_t t = 0; t < triples.size(); ++t)
    if (!c.schouten_square.components[t].is_zero())
      nonzero.push_back(coordinate_name(triples[t][0]) + "," + coordinate_name(triples[t][1]) + "," +
                        coordinate_name(triples[t][2]) + ": " + c.schouten_square.components[t].str());
  r.result.strings("schouten_square", nonzero);
}

void cotangent_task(Report& r, const TaskInputs& in) {
  const PoissonCheck c = verify_poisson(PolyVectorField::bivector(need(in.bivector, "bivector")));
  r.verdict.absorb(c.verdict, "Poisson");
  if (!c.structure) return;
  const AlgebroidPresentation T = cotangent_algebroid(*c.structure);
  r.verdict.absorb(verify_algebroid(T), "cotangent algebroid");
  r.result.scalar("frame", "dx0..dx" + std::to_string(T.rank - 1));
  r.result.algebroid("algebroid", T);
}

void linear_poisson_task(Report& r, const TaskInputs& in) {
  const AlgebroidPresentation& A = need(in.algebroid, "algebroid");
  r.verdict.absorb(verify_algebroid(A), "algebroid");
  if (!r.verdict.valid) return;
  const PoissonStructure P = linear_poisson_on_dual(A);
  r.verdict.absorb(verify_poisson(P.bivector()).verdict, "dual");
  const std::size_t n = A.base.dim();
  r.result.scalar("dim", P.dim());
  r.result.scalar("fibre_coordinates", coordinate_name(n) + ".." + coordinate_name(P.dim() - 1));
  r.result.matrix("bivector", P.bivector().matrix());
}

void symplectic_task(Report& r, const TaskInputs& in) {
  const int cap = cap_of(in, 2);
  const SymplecticResult s = symplectic_to_poisson(need(in.omega, "omega"), need(in.omega_inverse, "omega_inverse"), cap);
  r.verdict = s.certificate;
  r.result.scalar("cap", cap);
  r.result.matrix("bivector", s.poisson.bivector().matrix());
  r.result.graded_betti("cotangent_betti", s.cotangent_betti);
  r.result.graded_betti("tangent_betti", s.tangent_betti);
}

}  // namespace

Report run_task(TaskKind kind, const TaskInputs& in) {
  Report r;
  r.task = task_name(kind);
  switch (kind) {
    case TaskKind::VerifyAlgebroid: verify_algebroid_task(r, in); break;
    case TaskKind::VerifyMorphism: verify_morphism_task(r, in); break;
    case TaskKind::Pullback: pullback_task(r, in); break;
    case TaskKind::Descend: descend_task(r, in); break;
    case TaskKind::VerifyDescent: verify_descent_task(r, in); break;
    case TaskKind::BuildLaGroupoid: build_la_groupoid_task(r, in); break;
    case TaskKind::RoundtripF1F2: roundtrip_task(r, in); break;
    case TaskKind::CechCohomology: cech_task(r, in); break;
    case TaskKind::InvariantCohomology: invariant_task(r, in); break;
    case TaskKind::PoissonVerify: poisson_verify_task(r, in); break;
    case TaskKind::Cotangent: cotangent_task(r, in); break;
    case TaskKind::LinearPoisson: linear_poisson_task(r, in); break;
    case TaskKind::Symplectic: symplectic_task(r, in); break;
  }
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification and cohomology of finitely presented Lie algebroids", "algebroidkit"};
  std::string task, input, out_path, grading;
  std::size_t max_degree = 0;
  int cap = 0;
  bool as_json = false, timing = false;
  std::string kinds;
  for (const auto& n : task_names()) kinds += (kinds.empty() ? "" : ", ") + n;
  app.add_option("task", task, "One of: " + kinds)->required();
  app.add_option("input", input, "Input document (JSON, schema algebroidkit/1)")->required();
  auto* md = app.add_option("--max-degree", max_degree, "Highest cohomological degree reported");
  auto* gr = app.add_option("--grading", grading, "Grading preset: polynomial or total");
  auto* cp = app.add_option("--cap", cap, "Highest grade included")->check(CLI::NonNegativeNumber);
  app.add_flag("--json", as_json, "Emit the machine-readable JSON report");
  app.add_option("--out", out_path, "Write the report to a file instead of standard output");
  app.add_flag("--timing", timing, "Include wall-clock timing (makes reports non-reproducible)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const auto kind = parse_task(task);
  if (!kind) {
    err << "error: unknown task '" << task << "' (expected one of: " << kinds << ")\n";
    return 2;
  }
  try {
    std::ifstream f(input, std::ios::binary);
    if (!f) throw LoadError("", "cannot open input file '" + input + "'");
    const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    TaskInputs in = load_inputs(*kind, parse_document(text));
    if (*md) in.options.max_degree = max_degree;
    if (*gr) in.options.grading = grading;
    if (*cp) in.options.cap = cap;

    const auto start = std::chrono::steady_clock::now();
    Report report = run_task(*kind, in);
    report.input_sha256 = sha256_hex(text);
    if (timing)
      report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    const std::string rendered = as_json ? report.to_json().dump(2) + "\n" : report.to_text();
    if (out_path.empty()) {
      out << rendered;
    } else {
      std::ofstream o(out_path, std::ios::binary);
      if (!o) throw LoadError("", "cannot write report to '" + out_path + "'");
      o << rendered;
    }
    return report.exit_status();
  } catch (const LoadError& e) {
    err << "load error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace algebroidkit::io
