#include "fatflat/geometry.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "fatflat/errors.hpp"

namespace fatflat {

RandomSource::RandomSource(std::uint64_t seed) : RandomSource(seed, 0) {}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream) : seed_(seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

RandomSource RandomSource::derive(std::uint64_t stream) const {
  // Stream 0 is the parent itself, so shift derived streams away from it.
  return RandomSource(seed_, stream + 1);
}

Residue RandomSource::residue(const PrimeField& field) {
  const std::uint64_t p = field.prime();
  const std::uint64_t limit = (~std::uint64_t{0} / p) * p;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<Residue>(x % p);
}

Residue RandomSource::nonzero_residue(const PrimeField& field) {
  Residue r;
  do {
    r = residue(field);
  } while (r == 0);
  return r;
}

std::vector<Residue> RandomSource::vector(std::size_t length, const PrimeField& field) {
  std::vector<Residue> v(length);
  for (auto& x : v) x = residue(field);
  return v;
}

// ---------------------------------------------------------------------------

Flat Flat::from_points(const DenseMatrix& points, const PrimeField& field) {
  if (points.rows() == 0 || points.cols() < 2) throw DomainError("a flat needs at least one point in P^n, n >= 1");
  if (points.rows() >= points.cols()) throw DomainError("a proper flat of P^n has at most n spanning points");
  if (!points.reduced_in(field)) throw DomainError("flat coordinates are not reduced modulo the prime");
  if (rank(points, field) != points.rows()) {
    throw GenericityFailure("spanning points of the flat are projectively dependent");
  }
  auto kernel = kernel_basis(points, field);
  return Flat(points, DenseMatrix::from_rows(kernel, points.cols()), field.prime());
}

Flat Flat::standard(int n, int dim, const PrimeField& field) {
  DenseMatrix pts(dim + 1, n + 1);
  for (int i = 0; i <= dim; ++i) pts(i, i) = 1;
  return from_points(pts, field);
}

bool Flat::contains(std::span<const Residue> point, const PrimeField& field) const {
  return std::ranges::all_of(multiply(equations_, point, field), [](Residue r) { return r == 0; });
}

Flat random_flat(int n, int dim, const PrimeField& field, RandomSource& rng) {
  if (dim < 0 || dim > n - 1) {
    throw DomainError("flat dimension " + std::to_string(dim) + " not in [0, " + std::to_string(n - 1) + "]");
  }
  for (int attempt = 0; attempt < kMaxSamplingAttempts; ++attempt) {
    DenseMatrix pts(dim + 1, n + 1, rng.vector(static_cast<std::size_t>((dim + 1) * (n + 1)), field));
    if (rank(pts, field) == static_cast<std::size_t>(dim + 1)) return Flat::from_points(pts, field);
  }
  throw GenericityFailure("could not sample independent points for a random flat");
}

int flat_meet_dim(const Flat& a, const Flat& b, const PrimeField& field) {
  if (a.ambient() != b.ambient()) throw DomainError("flats live in different projective spaces");
  EchelonBasis eqs(a.ambient() + 1, field);
  eqs.add_rows(a.equations());
  eqs.add_rows(b.equations());
  return a.ambient() - static_cast<int>(eqs.rank());
}

int flat_meet_dim(const Flat& a, const Flat& b, const Flat& c, const PrimeField& field) {
  if (a.ambient() != b.ambient() || a.ambient() != c.ambient()) {
    throw DomainError("flats live in different projective spaces");
  }
  EchelonBasis eqs(a.ambient() + 1, field);
  eqs.add_rows(a.equations());
  eqs.add_rows(b.equations());
  eqs.add_rows(c.equations());
  return a.ambient() - static_cast<int>(eqs.rank());
}

DenseMatrix standardizing_frame(const Flat& flat, const PrimeField& field) {
  const std::size_t size = flat.ambient() + 1;
  EchelonBasis span(size, field);
  std::vector<std::vector<Residue>> columns;
  for (std::size_t i = 0; i < flat.basis().rows(); ++i) {
    const auto p = flat.basis().row(i);
    span.add_row(p);
    columns.emplace_back(p.begin(), p.end());
  }
  for (std::size_t j = 0; j < size && columns.size() < size; ++j) {
    std::vector<Residue> e(size, 0);
    e[j] = 1;
    if (span.contains(e)) continue;
    span.add_row(e);
    columns.push_back(std::move(e));
  }
  DenseMatrix frame(size, size);
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t i = 0; i < size; ++i) frame(i, k) = columns[k][i];
  }
  return frame;
}

DenseMatrix coordinate_change_to_standard(const Flat& flat, const PrimeField& field) {
  return inverse(standardizing_frame(flat, field), field);
}

// ---------------------------------------------------------------------------

namespace {

using UPoly = std::vector<Residue>;  // ascending powers

void trim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly poly_mod(UPoly a, const UPoly& b, const PrimeField& field) {
  const Residue lead_inv = field.inv(b.back());
  while (a.size() >= b.size()) {
    const Residue q = field.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = field.sub(a[shift + i], field.mul(q, b[i]));
    trim(a);
  }
  return a;
}

// Degree of gcd of the given polynomials (-1 if all are zero).
int gcd_degree(const std::vector<UPoly>& polys, const PrimeField& field) {
  UPoly g;
  for (UPoly f : polys) {
    trim(f);
    while (!f.empty()) {
      UPoly r = g.empty() ? UPoly{} : poly_mod(g, f, field);
      g = std::move(f);
      f = std::move(r);
    }
  }
  return static_cast<int>(g.size()) - 1;
}

}  // namespace

RationalCurve RationalCurve::from_forms(DenseMatrix forms, const PrimeField& field) {
  if (forms.rows() < 3) throw DomainError("a rational curve needs an ambient space of dimension >= 2");
  if (forms.cols() < 2) throw DomainError("a rational curve needs degree >= 1");
  if (!forms.reduced_in(field)) throw DomainError("curve coefficients are not reduced modulo the prime");
  const std::size_t e = forms.cols() - 1;
  // u divides every form iff no form has an s^e term.
  bool u_divides_all = true;
  std::vector<UPoly> dehomogenized;
  for (std::size_t j = 0; j < forms.rows(); ++j) {
    if (forms(j, 0) != 0) u_divides_all = false;
    UPoly f(e + 1);
    for (std::size_t k = 0; k <= e; ++k) f[e - k] = forms(j, k);
    dehomogenized.push_back(std::move(f));
  }
  if (u_divides_all) throw DomainError("the parameterizing forms share the factor u");
  if (gcd_degree(dehomogenized, field) != 0) throw DomainError("the parameterizing forms share a common factor");
  return RationalCurve(std::move(forms));
}

std::vector<Residue> RationalCurve::point_at(Residue s, Residue u, const PrimeField& field) const {
  const std::size_t e = forms_.cols() - 1;
  std::vector<Residue> monomials(e + 1);
  for (std::size_t k = 0; k <= e; ++k) monomials[k] = field.mul(field.pow(s, e - k), field.pow(u, k));
  return multiply(forms_, monomials, field);
}

bool RationalCurve::nondegenerate(const PrimeField& field) const { return rank(forms_, field) == forms_.rows(); }

RationalCurve rational_normal_curve(int n, const PrimeField& field, RandomSource& rng) {
  if (n < 2) throw DomainError("rational normal curves need n >= 2");
  const std::size_t size = n + 1;
  for (int attempt = 0; attempt < kMaxSamplingAttempts; ++attempt) {
    // Coordinates G * (s^n, s^(n-1) u, ..., u^n): the forms matrix is G itself.
    DenseMatrix g(size, size, rng.vector(size * size, field));
    if (rank(g, field) == size) return RationalCurve::from_forms(std::move(g), field);
  }
  throw GenericityFailure("could not sample an invertible coordinate change");
}

RationalCurve line_as_curve(const Flat& line, const PrimeField& field) {
  if (line.dim() != 1) throw DomainError("line_as_curve expects a line");
  const std::size_t size = line.ambient() + 1;
  DenseMatrix forms(size, 2);
  for (std::size_t j = 0; j < size; ++j) {
    forms(j, 0) = line.basis()(0, j);
    forms(j, 1) = line.basis()(1, j);
  }
  return RationalCurve::from_forms(std::move(forms), field);
}

// ---------------------------------------------------------------------------

int FatFlatScheme::max_multiplicity() const {
  int m = 0;
  for (const auto& f : flats) m = std::max(m, f.multiplicity);
  for (const auto& p : points) m = std::max(m, p.multiplicity);
  if (!curves.empty()) m = std::max(m, 1);
  return m;
}

void FatFlatScheme::validate(const PrimeField& field) const {
  for (const auto& f : flats) {
    if (f.multiplicity < 1) throw DomainError("fat flat with multiplicity below 1");
    if (f.flat.ambient() != ambient) throw DomainError("fat flat in a different ambient space");
  }
  for (const auto& p : points) {
    if (p.multiplicity < 1) throw DomainError("fat point with multiplicity below 1");
    if (p.point.size() != static_cast<std::size_t>(ambient + 1)) throw DomainError("fat point of wrong length");
    if (p.host_line) {
      if (*p.host_line >= host_lines.size()) throw DomainError("fat point refers to a missing host line");
      if (!host_lines[*p.host_line].contains(p.point, field)) {
        throw DomainError("fat point does not lie on its host line");
      }
    }
  }
  for (const auto& c : curves) {
    if (c.ambient() != ambient) throw DomainError("curve in a different ambient space");
  }
}

FatFlatScheme FatFlatScheme::merged_with(const FatFlatScheme& other) const {
  if (!empty() && !other.empty() && ambient != other.ambient) {
    throw DomainError("cannot merge schemes of different ambient spaces");
  }
  FatFlatScheme out = *this;
  if (out.ambient == 0) out.ambient = other.ambient;
  const std::size_t offset = out.host_lines.size();
  out.flats.insert(out.flats.end(), other.flats.begin(), other.flats.end());
  out.host_lines.insert(out.host_lines.end(), other.host_lines.begin(), other.host_lines.end());
  for (auto p : other.points) {
    if (p.host_line) *p.host_line += offset;
    out.points.push_back(std::move(p));
  }
  out.curves.insert(out.curves.end(), other.curves.begin(), other.curves.end());
  return out;
}

std::vector<FlatComponent> FatFlatScheme::flat_components() const {
  std::vector<FlatComponent> out;
  for (const auto& f : flats) out.push_back({f.flat.dim(), f.multiplicity});
  return out;
}

std::vector<FatPoint> sample_fat_points_on_line(const Flat& line, int count, int m, const PrimeField& field,
                                                RandomSource& rng) {
  if (line.dim() != 1) throw DomainError("points must be sampled on a line");
  if (count < 1) throw DomainError("need at least one point");
  if (m < 1) throw DomainError("fat point multiplicity must be at least 1");
  if (static_cast<std::uint64_t>(count) > field.prime()) {
    throw DomainError("the field has too few elements for " + std::to_string(count) + " distinct points");
  }
  const auto p0 = line.basis().row(0);
  const auto p1 = line.basis().row(1);
  std::set<Residue> used;
  std::vector<FatPoint> out;
  while (static_cast<int>(out.size()) < count) {
    const Residue tau = rng.residue(field);
    if (!used.insert(tau).second) continue;
    std::vector<Residue> pt(p0.size());
    for (std::size_t i = 0; i < pt.size(); ++i) pt[i] = field.add(p0[i], field.mul(tau, p1[i]));
    out.push_back({std::move(pt), m, std::nullopt});
  }
  return out;
}

// ---------------------------------------------------------------------------

SchemeRecipe SchemeRecipe::flats(int n, int dim, std::span<const int> multiplicities) {
  SchemeRecipe r{n, {}};
  for (const int m : multiplicities) r.components.push_back(ComponentRequest::flats(dim, m));
  return r;
}

std::vector<FlatComponent> SchemeRecipe::flat_components() const {
  std::vector<FlatComponent> out;
  for (const auto& c : components) {
    if (c.kind != ComponentRequest::Kind::Flat) {
      throw UnsupportedConfiguration("only fat flats have a closed-form Hilbert polynomial here");
    }
    for (int i = 0; i < c.count; ++i) out.push_back({c.dim, c.multiplicity});
  }
  return out;
}

namespace {

// Samples a flat whose meets with all previously placed flats are generic.
Flat place_general_flat(int n, int dim, const std::vector<Flat>& placed, const PrimeField& field,
                        RandomSource& rng) {
  for (int attempt = 0; attempt < kMaxSamplingAttempts; ++attempt) {
    Flat candidate = random_flat(n, dim, field, rng);
    const bool general = std::ranges::all_of(placed, [&](const Flat& other) {
      return flat_meet_dim(candidate, other, field) == generic_meet_dim(n, dim, other.dim());
    });
    if (general) return candidate;
  }
  throw GenericityFailure("could not place a " + std::to_string(dim) + "-dimensional flat in general position");
}

}  // namespace

std::vector<FatFlatScheme> realize_jointly(std::span<const SchemeRecipe> recipes, const PrimeField& field,
                                           RandomSource& rng) {
  std::vector<FatFlatScheme> out;
  std::vector<Flat> placed;
  auto remember = [&](const Flat& f) { placed.push_back(f); };

  for (std::size_t r = 0; r < recipes.size(); ++r) {
    const SchemeRecipe& recipe = recipes[r];
    const int n = recipe.ambient;
    if (n < 1) throw DomainError("ambient dimension must be at least 1");
    FatFlatScheme scheme;
    scheme.ambient = n;
    for (std::size_t c = 0; c < recipe.components.size(); ++c) {
      const ComponentRequest& req = recipe.components[c];
      RandomSource stream = rng.derive((static_cast<std::uint64_t>(r) << 32) | c);
      switch (req.kind) {
        case ComponentRequest::Kind::Flat:
          if (req.multiplicity < 1) throw DomainError("flat multiplicity must be at least 1");
          if (req.count < 0) throw DomainError("negative component count");
          for (int i = 0; i < req.count; ++i) {
            Flat f = place_general_flat(n, req.dim, placed, field, stream);
            remember(f);
            scheme.flats.push_back({std::move(f), req.multiplicity});
          }
          break;
        case ComponentRequest::Kind::PointsOnLine: {
          if (req.point_multiplicities.empty()) throw DomainError("points-on-line request without points");
          Flat line = place_general_flat(n, 1, placed, field, stream);
          remember(line);
          const auto pts = sample_fat_points_on_line(line, static_cast<int>(req.point_multiplicities.size()), 1,
                                                     field, stream);
          const std::size_t host = scheme.host_lines.size();
          scheme.host_lines.push_back(std::move(line));
          for (std::size_t i = 0; i < pts.size(); ++i) {
            if (req.point_multiplicities[i] < 1) throw DomainError("fat point multiplicity must be at least 1");
            scheme.points.push_back({pts[i].point, req.point_multiplicities[i], host});
          }
          break;
        }
        case ComponentRequest::Kind::RationalNormalCurve:
          scheme.curves.push_back(rational_normal_curve(n, field, stream));
          break;
      }
    }
    scheme.validate(field);
    out.push_back(std::move(scheme));
  }
  return out;
}

FatFlatScheme realize(const SchemeRecipe& recipe, const PrimeField& field, RandomSource& rng) {
  return std::move(realize_jointly(std::span(&recipe, 1), field, rng).front());
}

IntersectionPattern intersection_pattern(const FatFlatScheme& scheme, const PrimeField& field) {
  const std::size_t k = scheme.flats.size();
  IntersectionPattern pattern;
  pattern.pair_meet.assign(k, std::vector<int>(k, -1));
  for (std::size_t i = 0; i < k; ++i) {
    pattern.pair_meet[i][i] = scheme.flats[i].flat.dim();
    for (std::size_t j = i + 1; j < k; ++j) {
      pattern.pair_meet[i][j] = pattern.pair_meet[j][i] =
          flat_meet_dim(scheme.flats[i].flat, scheme.flats[j].flat, field);
    }
  }
  for (std::size_t i = 0; i < k && pattern.triples_empty; ++i) {
    for (std::size_t j = i + 1; j < k && pattern.triples_empty; ++j) {
      if (pattern.pair_meet[i][j] < 0) continue;
      for (std::size_t l = j + 1; l < k; ++l) {
        if (flat_meet_dim(scheme.flats[i].flat, scheme.flats[j].flat, scheme.flats[l].flat, field) >= 0) {
          pattern.triples_empty = false;
          break;
        }
      }
    }
  }
  return pattern;
}

}  // namespace fatflat
