#include "fatflat/cremona.hpp"

#include <algorithm>
#include <numeric>

#include "fatflat/combinatorics.hpp"
#include "fatflat/errors.hpp"

namespace fatflat {

namespace {

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

}  // namespace

void VirtualSystem::validate() const {
  if (n < 2) throw DomainError("virtual systems need n >= 2");
  if (degree < 0) throw DomainError("negative degree");
  if (base_multiplicities.size() != static_cast<std::size_t>(n + 1)) {
    throw DomainError("expected " + std::to_string(n + 1) + " base multiplicities, got " +
                      std::to_string(base_multiplicities.size()));
  }
  for (const int m : base_multiplicities) {
    if (m < 0) throw DomainError("negative base multiplicity");
  }
  for (const auto& e : extra) {
    if (e.multiplicity < 0) throw DomainError("negative multiplicity on " + e.name);
  }
}

std::string VirtualSystem::to_string() const {
  std::string out = "(" + std::to_string(degree) + "; " + join(base_multiplicities);
  for (const auto& e : extra) out += "; " + e.name + "=" + std::to_string(e.multiplicity);
  return out + ")";
}

DivisorClass veneroni_pullback_class(const VirtualSystem& vs) {
  vs.validate();
  const std::size_t k = vs.base_multiplicities.size();
  DivisorClass out{0, std::vector<std::int64_t>(k, 0)};
  // d H'
  out.h += static_cast<std::int64_t>(vs.degree) * vs.n;
  for (auto& c : out.pi) c += vs.degree;
  // - m_j Pi'_j
  for (std::size_t j = 0; j < k; ++j) {
    const std::int64_t m = vs.base_multiplicities[j];
    out.h -= m * (vs.n - 1);
    for (std::size_t i = 0; i < k; ++i) {
      if (i != j) out.pi[i] -= m;
    }
  }
  return out;
}

VirtualSystem veneroni_transform(const VirtualSystem& vs) {
  vs.validate();
  if (!vs.extra.empty()) throw DomainError("the Veneroni transform is modeled for base flats only");
  const std::int64_t sum = std::accumulate(vs.base_multiplicities.begin(), vs.base_multiplicities.end(), std::int64_t{0});
  VirtualSystem out{vs.n, 0, std::vector<int>(vs.base_multiplicities.size()), {}};
  const std::int64_t degree = static_cast<std::int64_t>(vs.n) * vs.degree - static_cast<std::int64_t>(vs.n - 1) * sum;
  if (degree < 0) throw NotEffective("transformed degree " + std::to_string(degree) + " is negative");
  out.degree = static_cast<int>(degree);
  for (std::size_t i = 0; i < out.base_multiplicities.size(); ++i) {
    const std::int64_t m = vs.degree - (sum - vs.base_multiplicities[i]);
    if (m < 0) {
      throw NotEffective("transformed multiplicity " + std::to_string(m) + " on base flat " + std::to_string(i + 1) +
                         " is negative");
    }
    out.base_multiplicities[i] = static_cast<int>(m);
  }
  return out;
}

VeneroniBasis veneroni_map_basis(int n, std::vector<Flat> base, const PrimeField& field) {
  if (n < 3 || n > 5) throw DomainError("Veneroni map bases are computed for 3 <= n <= 5");
  if (base.size() != static_cast<std::size_t>(n + 1)) throw DomainError("expected n+1 base flats");
  FatFlatScheme scheme;
  scheme.ambient = n;
  for (const auto& f : base) {
    if (f.ambient() != n || f.dim() != n - 2) throw DomainError("base flats must have codimension 2 in P^n");
    scheme.flats.push_back({f, 1});
  }
  VeneroniBasis out{kernel_basis_system(scheme, n, field), std::move(base)};
  if (out.forms.size() != static_cast<std::size_t>(n + 1)) {
    throw GenericityFailure("degree-" + std::to_string(n) + " forms through the base flats span " +
                            std::to_string(out.forms.size()) + " dimensions, not " + std::to_string(n + 1));
  }
  return out;
}

VeneroniBasis veneroni_map_basis(int n, const PrimeField& field, RandomSource& rng) {
  if (n < 3 || n > 5) throw DomainError("Veneroni map bases are computed for 3 <= n <= 5");
  SchemeRecipe recipe{n, {ComponentRequest::flats(n - 2, 1, n + 1)}};
  FatFlatScheme scheme = realize(recipe, field, rng);
  std::vector<Flat> base;
  for (auto& f : scheme.flats) base.push_back(std::move(f.flat));
  return veneroni_map_basis(n, std::move(base), field);
}

// ---------------------------------------------------------------------------

Signature Signature::of(int degree, std::vector<int> multiplicities) {
  std::ranges::sort(multiplicities, std::greater<>());
  return {degree, std::move(multiplicities)};
}

std::string Signature::to_string() const { return "(" + std::to_string(degree) + "; " + join(multiplicities) + ")"; }

const std::vector<NamedCorrespondence>& named_correspondences() {
  static const std::vector<NamedCorrespondence> table{
      {"todd", 3, Signature::of(8, {1, 1, 1, 1, 1, 6}), Signature::of(20, {6, 6, 6, 6, 6, 1})},
      {"todd", 3, Signature::of(20, {6, 6, 6, 6, 6}), Signature::of(20, {4, 4, 4, 4, 4, 10})},
  };
  return table;
}

Signature apply_named_correspondence(const std::string& name, const Signature& input) {
  const Signature key = Signature::of(input.degree, input.multiplicities);
  if (name == "cubo-cubic") {
    std::vector<int> mults = key.multiplicities;
    if (mults.size() > 4) throw UnsupportedConfiguration("the cubo-cubic map has four base lines");
    mults.resize(4, 0);
    const VirtualSystem image = veneroni_transform({3, key.degree, mults, {}});
    std::vector<int> out;
    for (const int m : image.base_multiplicities) {
      if (m > 0) out.push_back(m);
    }
    return Signature::of(image.degree, std::move(out));
  }
  for (const auto& entry : named_correspondences()) {
    if (entry.name == name && entry.source == key) return entry.target;
  }
  throw UnsupportedConfiguration("no recorded " + name + " correspondence for " + key.to_string());
}

// ---------------------------------------------------------------------------

SchemeRecipe recipe_of(const VirtualSystem& vs) {
  vs.validate();
  if (!vs.extra.empty()) throw UnsupportedConfiguration("extra components have no placement rule");
  SchemeRecipe r{vs.n, {}};
  for (const int m : vs.base_multiplicities) {
    if (m > 0) r.components.push_back(ComponentRequest::flats(vs.n - 2, m));
  }
  return r;
}

InvarianceReport check_dimension_invariance(const VirtualSystem& vs, const PrimeField& field, RandomSource& rng,
                                            std::int64_t cap, EliminationOptions options) {
  InvarianceReport report{vs, veneroni_transform(vs), std::nullopt, std::nullopt, false, {}};
  for (const VirtualSystem* s : {&report.source, &report.target}) {
    const Integer columns = binomial(s->degree + s->n, s->n);
    if (columns > cap) {
      report.skipped = true;
      report.reason = "system " + s->to_string() + " has " + columns.str() + " monomials, above the cap of " +
                      std::to_string(cap);
      return report;
    }
  }
  RandomSource source_rng = rng.derive(1), target_rng = rng.derive(2);
  report.source_adim = adim(realize(recipe_of(report.source), field, source_rng), report.source.degree, field, options).adim;
  report.target_adim = adim(realize(recipe_of(report.target), field, target_rng), report.target.degree, field, options).adim;
  return report;
}

}  // namespace fatflat
