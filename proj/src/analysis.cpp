#include "fatflat/analysis.hpp"

#include <algorithm>
#include <string>

#include "fatflat/errors.hpp"

namespace fatflat {

const char* const kGenericityCaveat =
    "rank on a random instance over a prime field bounds the dimension for general position from above";

std::string to_string(Method m) {
  switch (m) {
    case Method::RankInstance:
      return "rank-instance";
    case Method::TransferredViaCorrespondence:
      return "transferred-via-correspondence";
    case Method::FormulaOnly:
      return "formula-only";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Unexpected:
      return "unexpected";
    case Verdict::Expected:
      return "expected";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::int64_t unexpectedness_value(std::int64_t adim, std::int64_t vdim) { return adim == 0 ? 0 : adim - vdim; }

DimensionReport DimensionReport::make(std::optional<std::int64_t> adim, std::int64_t vdim, Method method,
                                      Manifest manifest) {
  DimensionReport r;
  r.adim = adim;
  r.vdim = vdim;
  r.edim = std::max<std::int64_t>(0, vdim);
  if (adim) r.u = unexpectedness_value(*adim, vdim);
  r.method = method;
  r.manifest = std::move(manifest);
  return r;
}

// ---------------------------------------------------------------------------

Integer hilbert_value(const FatFlatScheme& x, int t, const PrimeField& field) {
  if (!x.curves.empty()) throw UnsupportedConfiguration("curves in X have no closed-form Hilbert polynomial here");
  FatFlatScheme flats_only;
  flats_only.ambient = x.ambient;
  flats_only.flats = x.flats;
  for (const auto& p : x.points) {
    if (p.host_line) {
      throw UnsupportedConfiguration("fat points on a common line in X have no closed-form Hilbert polynomial");
    }
    DenseMatrix pt(1, p.point.size(), p.point);
    flats_only.flats.push_back({Flat::from_points(pt, field), p.multiplicity});
  }
  if (flats_only.flats.empty()) return 0;
  for (const auto& f : flats_only.flats) {
    if (t < f.multiplicity) throw DomainError("H_X(t) is used only for t >= every multiplicity");
  }
  const auto components = flats_only.flat_components();
  return mayer_vietoris_polynomial(x.ambient, components, intersection_pattern(flats_only, field)).evaluate_integer(t);
}

std::int64_t virtual_dimension(const FatFlatScheme& x, int t, std::int64_t dim_iz_t, const PrimeField& field) {
  return dim_iz_t - to_int64(hilbert_value(x, t, field));
}

std::int64_t ideal_dimension(const FatFlatScheme& z, int t, const PrimeField& field, EliminationOptions options) {
  if (z.empty()) return to_int64(binomial(t + z.ambient, z.ambient));
  return adim(z, t, field, options).adim;
}

DimensionReport unexpectedness(const FatFlatScheme& x, const FatFlatScheme& z, int t, const PrimeField& field,
                               EliminationOptions options) {
  FatFlatScheme zz = z;
  if (zz.empty()) zz.ambient = x.ambient;
  if (!x.empty() && !z.empty() && x.ambient != z.ambient) throw DomainError("X and Z live in different spaces");
  const FatFlatScheme joint = x.merged_with(zz);
  const AdimResult a = adim(joint, t, field, options);
  const std::int64_t vdim = virtual_dimension(x, t, ideal_dimension(zz, t, field, options), field);
  Manifest m;
  m.primes = {field.prime()};
  m.components = a.components;
  return DimensionReport::make(a.adim, vdim, Method::RankInstance, std::move(m));
}

UnexpectednessCertificate certify(const Triple& triple, const RunConfig& config) {
  if (config.seeds.empty() || config.primes.empty()) throw DomainError("certify needs at least one seed and prime");
  SchemeRecipe x = triple.x, z = triple.z;
  x.ambient = z.ambient = triple.n;
  const std::vector<SchemeRecipe> recipes{x, z};
  std::vector<DimensionReport> instances;
  for (const std::uint32_t p : config.primes) {
    const PrimeField field(p);
    for (const std::uint64_t seed : config.seeds) {
      RandomSource rng(seed);
      const auto schemes = realize_jointly(recipes, field, rng);
      instances.push_back(unexpectedness(schemes[0], schemes[1], triple.t, field, config.elimination));
    }
  }
  return combine_instances(std::move(instances), config);
}

UnexpectednessCertificate combine_instances(std::vector<DimensionReport> instances, const RunConfig& config) {
  if (instances.empty()) throw DomainError("no instances to combine");
  std::optional<DimensionReport> best;
  bool disagree = false;
  for (DimensionReport& r : instances) {
    if (!best) {
      best = std::move(r);
      continue;
    }
    if (r.adim != best->adim || r.vdim != best->vdim) disagree = true;
    if (*r.adim < *best->adim || (*r.adim == *best->adim && r.vdim < best->vdim)) best = std::move(r);
  }
  UnexpectednessCertificate cert;
  cert.report = std::move(*best);
  cert.report.manifest.seeds = config.seeds;
  cert.report.manifest.primes = config.primes;
  cert.caveat = kGenericityCaveat;
  cert.instances_disagree = disagree;
  const bool strong = !disagree && config.seeds.size() >= 3 && config.primes.size() >= 2;
  if (disagree) {
    cert.verdict = Verdict::Inconclusive;
    cert.label = "inconclusive (instances disagree; smallest adim reported)";
  } else if (*cert.report.u > 0) {
    cert.verdict = Verdict::Unexpected;
    cert.label = strong ? "unexpected (generic, high confidence)" : "unexpected (instance)";
  } else {
    cert.verdict = Verdict::Expected;
    cert.label = strong ? "expected (generic, high confidence)" : "expected (instance)";
  }
  return cert;
}

// ---------------------------------------------------------------------------

ResidualCheck residual_unexpectedness_check(const FatFlatScheme& x, const FatFlatScheme& zprime, int t,
                                            const PrimeField& field, EliminationOptions options) {
  const int n = std::max(x.ambient, zprime.ambient);
  FatFlatScheme empty;
  empty.ambient = n;
  FatFlatScheme xx = x, zz = zprime;
  xx.ambient = zz.ambient = n;
  ResidualCheck out;
  const FatFlatScheme both = xx.merged_with(zz);
  out.union_report = unexpectedness(both, empty, t, field, options);
  out.residual_report = unexpectedness(zz, empty, t, field, options);
  out.triple_report = unexpectedness(xx, zz, t, field, options);
  out.inequality_holds = *out.union_report.u > *out.residual_report.u;
  out.verdict = out.inequality_holds ? Verdict::Unexpected : Verdict::Inconclusive;
  out.consistent = !out.inequality_holds || *out.triple_report.u > 0;
  return out;
}

FatFlatScheme replace_line_with_fat_points(const FatFlatScheme& z, std::size_t line_index,
                                           const std::vector<int>& multiplicities, int t, const PrimeField& field,
                                           RandomSource& rng) {
  if (line_index >= z.flats.size()) throw DomainError("no flat at index " + std::to_string(line_index));
  const FatFlat& target = z.flats[line_index];
  if (target.flat.dim() != 1) throw DomainError("only fat lines can be replaced by fat points");
  const int m = target.multiplicity;
  const auto exact = std::ranges::count(multiplicities, m);
  if (std::ranges::any_of(multiplicities, [&](int k) { return k < 1 || k > m; })) {
    throw PreconditionError("every replacing point needs multiplicity between 1 and " + std::to_string(m));
  }
  if (exact < t - m + 2) {
    throw PreconditionError("need at least " + std::to_string(t - m + 2) + " points of multiplicity " +
                            std::to_string(m) + ", got " + std::to_string(exact));
  }
  FatFlatScheme out = z;
  out.flats.erase(out.flats.begin() + static_cast<std::ptrdiff_t>(line_index));
  const std::size_t host = out.host_lines.size();
  out.host_lines.push_back(target.flat);
  const auto pts = sample_fat_points_on_line(target.flat, static_cast<int>(multiplicities.size()), 1, field, rng);
  for (std::size_t i = 0; i < pts.size(); ++i) out.points.push_back({pts[i].point, multiplicities[i], host});
  out.validate(field);
  return out;
}

// ---------------------------------------------------------------------------

ConeCertificate cone_verify(const RationalCurve& curve, const PrimeField& field, RandomSource& rng, int lines,
                            int points_per_line) {
  const int n = curve.ambient();
  const int d = curve.degree();
  if (n < 3) throw PreconditionError("the cone construction needs n >= 3");
  if (!curve.nondegenerate(field)) throw PreconditionError("the curve lies in a hyperplane");

  ConeCertificate cert;
  cert.n = n;
  cert.degree = d;
  cert.manifest.primes = {field.prime()};
  cert.manifest.seeds = {rng.seed()};

  RandomSource apex_rng = rng.derive(0);
  const Flat apex = random_flat(n, n - 3, field, apex_rng);
  FatFlatScheme scheme;
  scheme.ambient = n;
  scheme.flats.push_back({apex, d});
  scheme.curves.push_back(curve);

  const AdimResult a = adim(scheme, d, field);
  cert.adim = a.adim;
  cert.manifest.components = a.components;
  // dim [I_C]_d by rank, minus the conditions of multiplicity d along the apex.
  FatFlatScheme curve_only;
  curve_only.ambient = n;
  curve_only.curves.push_back(curve);
  const std::int64_t dim_ic = adim(curve_only, d, field).adim;
  cert.vdim = dim_ic - to_int64(conditions_count({n, n - 3, d, d}));
  cert.u = unexpectedness_value(cert.adim, cert.vdim);
  if (cert.adim != 1) {
    throw GenericityFailure("expected a unique cone of degree " + std::to_string(d) + ", found a system of dimension " +
                            std::to_string(cert.adim));
  }
  const auto forms = kernel_basis_system(scheme, d, field);
  const FormVector& form = forms.front();
  cert.order_along_apex = vanishing_order_along_flat(form, apex, field);
  cert.annihilated_by_apex_conditions = annihilates(condition_rows_fat_flat(apex, d, d, field).rows, form.coefficients, field);

  RandomSource line_rng = rng.derive(1);
  bool all_zero = true;
  for (int l = 0; l < lines; ++l) {
    const auto q = curve.point_at(line_rng.residue(field), 1, field);
    const auto coeffs = line_rng.vector(apex.basis().rows(), field);
    std::vector<Residue> a_pt(n + 1, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      for (int j = 0; j <= n; ++j) a_pt[j] = field.add(a_pt[j], field.mul(coeffs[i], apex.basis()(i, j)));
    }
    for (int k = 0; k < points_per_line; ++k) {
      const Residue tau = line_rng.residue(field);
      std::vector<Residue> pt(n + 1);
      for (int j = 0; j <= n; ++j) pt[j] = field.add(a_pt[j], field.mul(tau, q[j]));
      if (form.evaluate(pt, field) != 0) all_zero = false;
    }
  }
  cert.lines_checked = lines;
  cert.points_per_line = points_per_line;
  cert.vanishes_on_cone = all_zero;
  cert.form = form;
  const bool ok = cert.order_along_apex == d && cert.annihilated_by_apex_conditions && all_zero && cert.vdim <= 0;
  cert.verdict = ok ? Verdict::Unexpected : Verdict::Inconclusive;
  return cert;
}

}  // namespace fatflat
