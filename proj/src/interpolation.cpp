#include "fatflat/interpolation.hpp"

#include <algorithm>
#include <string>

#include "fatflat/combinatorics.hpp"
#include "fatflat/errors.hpp"

namespace fatflat {

namespace {

std::size_t monomial_count(int n, int t) {
  return t < 0 ? 0 : static_cast<std::size_t>(to_int64(binomial(t + n, n)));
}

}  // namespace

MonomialIndex::MonomialIndex(int n, int t) : n_(n), t_(t) {
  if (n < 0 || t < 0) throw DomainError("monomial index needs n >= 0 and t >= 0");
  if (t > 255) throw DomainError("degree above 255 is not supported");
  size_ = monomial_count(n, t);
  exps_.reserve(size_ * (n + 1));
  std::vector<std::uint8_t> e(n + 1, 0);
  // Descending lex: fill x_0 as high as possible, then x_1, ...
  auto emit = [&](auto&& self, int var, int remaining) -> void {
    if (var == n) {
      e[var] = static_cast<std::uint8_t>(remaining);
      exps_.insert(exps_.end(), e.begin(), e.end());
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      e[var] = static_cast<std::uint8_t>(a);
      self(self, var + 1, remaining - a);
    }
  };
  emit(emit, 0, t);
}

std::size_t MonomialIndex::index(std::span<const std::uint8_t> exponents) const {
  if (exponents.size() != static_cast<std::size_t>(n_ + 1)) throw DomainError("exponent vector of wrong length");
  long remaining = t_;
  std::size_t rank = 0;
  for (int i = 0; i < n_; ++i) {
    const long a = exponents[i];
    if (a > remaining) throw DomainError("exponent vector exceeds the degree");
    // Monomials sharing the prefix but with a larger exponent at position i.
    rank += static_cast<std::size_t>(to_int64(binomial(remaining - a - 1 + n_ - i, n_ - i)));
    remaining -= a;
  }
  if (exponents[n_] != remaining) throw DomainError("exponent vector does not have the index degree");
  return rank;
}

std::size_t MonomialIndex::index(std::span<const int> exponents) const {
  std::vector<std::uint8_t> e;
  for (const int x : exponents) {
    if (x < 0 || x > 255) throw DomainError("exponent out of range");
    e.push_back(static_cast<std::uint8_t>(x));
  }
  return index(std::span<const std::uint8_t>(e));
}

// ---------------------------------------------------------------------------

namespace {

// Degree-d y-monomials whose transverse degree (exponents after position
// delta) stays below m, with a lookup from the full graded-lex index.
struct TruncatedLevel {
  MonomialIndex full;
  std::vector<std::size_t> members;  // full indices
  std::vector<std::int32_t> lookup;  // full index -> member position or -1

  TruncatedLevel(int n, int d, int delta, int m) : full(n, d), lookup(full.size(), -1) {
    for (std::size_t i = 0; i < full.size(); ++i) {
      const auto e = full.exponents(i);
      int transverse = 0;
      for (int k = delta + 1; k <= n; ++k) transverse += e[k];
      if (transverse < m) {
        lookup[i] = static_cast<std::int32_t>(members.size());
        members.push_back(i);
      }
    }
  }
};

// Rows of the substitution F(x) -> F(B y), truncated to y-monomials of
// transverse degree < m.
DenseMatrix truncated_substitution_rows(const DenseMatrix& frame, int delta, int m, int t, const PrimeField& field) {
  const int n = static_cast<int>(frame.rows()) - 1;
  const std::uint64_t lazy = field.lazy_modulus();

  // Nonzero entries of each row of the frame: x_j = sum_k frame(j,k) y_k.
  std::vector<std::vector<std::pair<int, Residue>>> linear(n + 1);
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) {
      if (frame(j, k) != 0) linear[j].emplace_back(k, frame(j, k));
    }
  }

  TruncatedLevel prev_level(n, 0, delta, m);
  std::vector<Residue> prev(prev_level.members.size(), 0);  // one polynomial per x-monomial
  if (!prev.empty()) prev[0] = 1;
  if (t == 0) return DenseMatrix(prev_level.members.size(), 1, prev);

  std::vector<std::uint8_t> scratch(n + 1);
  for (int d = 1; d <= t; ++d) {
    TruncatedLevel level(n, d, delta, m);
    const std::size_t width_prev = prev_level.members.size();
    const std::size_t width = level.members.size();

    // times[a * (n+1) + k]: position of (member a of prev) * y_k in this level.
    std::vector<std::int32_t> times(width_prev * (n + 1), -1);
    for (std::size_t a = 0; a < width_prev; ++a) {
      const auto e = prev_level.full.exponents(prev_level.members[a]);
      std::copy(e.begin(), e.end(), scratch.begin());
      for (int k = 0; k <= n; ++k) {
        ++scratch[k];
        times[a * (n + 1) + k] = level.lookup[level.full.index(std::span<const std::uint8_t>(scratch))];
        --scratch[k];
      }
    }

    const std::size_t count = level.full.size();
    const bool last = d == t;
    std::vector<Residue> next(last ? 0 : count * width);
    DenseMatrix out(last ? width : 0, last ? count : 0);
    std::vector<std::uint64_t> acc(width);

    for (std::size_t b = 0; b < count; ++b) {
      const auto beta = level.full.exponents(b);
      int j = n;
      while (beta[j] == 0) --j;
      std::copy(beta.begin(), beta.end(), scratch.begin());
      --scratch[j];
      const std::size_t parent = prev_level.full.index(std::span<const std::uint8_t>(scratch));
      const Residue* poly = prev.data() + parent * width_prev;

      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t a = 0; a < width_prev; ++a) {
        const Residue c = poly[a];
        if (c == 0) continue;
        const std::int32_t* row = times.data() + a * (n + 1);
        for (const auto& [k, coeff] : linear[j]) {
          const std::int32_t target = row[k];
          if (target >= 0) acc[target] = lazy_fma(acc[target], c, coeff, lazy);
        }
      }
      if (last) {
        for (std::size_t a = 0; a < width; ++a) out(a, b) = field.reduce(acc[a]);
      } else {
        Residue* dst = next.data() + b * width;
        for (std::size_t a = 0; a < width; ++a) dst[a] = field.reduce(acc[a]);
      }
    }
    if (last) return out;
    prev = std::move(next);
    prev_level = std::move(level);
  }
  return {};
}

}  // namespace

ConditionBlock condition_rows_fat_flat(const Flat& flat, int m, int t, const PrimeField& field) {
  if (m < 1 || t < 0) throw DomainError("fat flat conditions need m >= 1 and t >= 0");
  const DenseMatrix frame = standardizing_frame(flat, field);
  return {"flat dim=" + std::to_string(flat.dim()) + " m=" + std::to_string(m),
          truncated_substitution_rows(frame, flat.dim(), m, t, field)};
}

ConditionBlock condition_rows_fat_point(std::span<const Residue> point, int m, int t, const PrimeField& field) {
  DenseMatrix pts(1, point.size(), std::vector<Residue>(point.begin(), point.end()));
  const Flat p = Flat::from_points(pts, field);
  ConditionBlock block = condition_rows_fat_flat(p, m, t, field);
  block.label = "point m=" + std::to_string(m);
  return block;
}

ConditionBlock condition_rows_curve(const RationalCurve& curve, int t, const PrimeField& field) {
  if (t < 0) throw DomainError("negative degree");
  const int n = curve.ambient();
  const int e = curve.degree();
  const DenseMatrix& forms = curve.forms();
  const std::uint64_t lazy = field.lazy_modulus();

  MonomialIndex prev_index(n, 0);
  std::vector<Residue> prev{1};  // binary form of degree 0 per monomial
  for (int d = 1; d <= t; ++d) {
    MonomialIndex index(n, d);
    const std::size_t prev_width = static_cast<std::size_t>((d - 1) * e + 1);
    const std::size_t width = static_cast<std::size_t>(d * e + 1);
    std::vector<Residue> next(index.size() * width);
    std::vector<std::uint8_t> scratch(n + 1);
    std::vector<std::uint64_t> acc(width);
    for (std::size_t b = 0; b < index.size(); ++b) {
      const auto beta = index.exponents(b);
      int j = n;
      while (beta[j] == 0) --j;
      std::copy(beta.begin(), beta.end(), scratch.begin());
      --scratch[j];
      const Residue* poly = prev.data() + prev_index.index(std::span<const std::uint8_t>(scratch)) * prev_width;
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t a = 0; a < prev_width; ++a) {
        if (poly[a] == 0) continue;
        for (int k = 0; k <= e; ++k) acc[a + k] = lazy_fma(acc[a + k], poly[a], forms(j, k), lazy);
      }
      for (std::size_t a = 0; a < width; ++a) next[b * width + a] = field.reduce(acc[a]);
    }
    prev = std::move(next);
    prev_index = std::move(index);
  }
  const std::size_t width = static_cast<std::size_t>(t * e + 1);
  DenseMatrix rows(width, prev_index.size());
  for (std::size_t b = 0; b < prev_index.size(); ++b) {
    for (std::size_t a = 0; a < width; ++a) rows(a, b) = prev[b * width + a];
  }
  return {"curve degree=" + std::to_string(e), std::move(rows)};
}

namespace {

void check_field(const FatFlatScheme& scheme, int t, const PrimeField& field) {
  field.require_characteristic_above(static_cast<long>(scheme.max_multiplicity()) + t);
}

// Calls `sink` with each block, building them one at a time.
template <class Sink>
void for_each_block(const FatFlatScheme& scheme, int t, const PrimeField& field, Sink&& sink) {
  for (std::size_t i = 0; i < scheme.flats.size(); ++i) {
    ConditionBlock b = condition_rows_fat_flat(scheme.flats[i].flat, scheme.flats[i].multiplicity, t, field);
    b.label = "flat[" + std::to_string(i) + "] " + b.label;
    sink(std::move(b));
  }
  for (std::size_t i = 0; i < scheme.points.size(); ++i) {
    ConditionBlock b = condition_rows_fat_point(scheme.points[i].point, scheme.points[i].multiplicity, t, field);
    b.label = "point[" + std::to_string(i) + "] " + b.label;
    sink(std::move(b));
  }
  for (std::size_t i = 0; i < scheme.curves.size(); ++i) {
    ConditionBlock b = condition_rows_curve(scheme.curves[i], t, field);
    b.label = "curve[" + std::to_string(i) + "] " + b.label;
    sink(std::move(b));
  }
}

}  // namespace

std::vector<ConditionBlock> condition_blocks(const FatFlatScheme& scheme, int t, const PrimeField& field) {
  std::vector<ConditionBlock> blocks;
  for_each_block(scheme, t, field, [&](ConditionBlock b) { blocks.push_back(std::move(b)); });
  return blocks;
}

namespace {

// Flats whose equation spaces are independent can be made coordinate flats
// simultaneously: with x' = M x and M's leading rows the equations of those
// flats, each of their ideals is generated by monomials in its own block of
// variables, and their intersection in degree t is spanned by the monomials
// meeting every block bound. Only the remaining components then need rows.
struct CoordinateReduction {
  DenseMatrix change;                    // M
  std::vector<std::size_t> chosen;       // indices into scheme.flats
  std::vector<std::size_t> kept_columns;  // surviving x'-monomials
  std::vector<ComponentRank> chosen_ranks;
};

CoordinateReduction coordinate_reduction(const FatFlatScheme& scheme, int t, const PrimeField& field) {
  const int n = scheme.ambient;
  const std::size_t size = static_cast<std::size_t>(n + 1);
  CoordinateReduction red;

  // Greedy by size of the condition set, so the largest blocks are removed.
  std::vector<std::size_t> order(scheme.flats.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto weight = [&](std::size_t i) {
    const FatFlat& f = scheme.flats[i];
    return std::pair(-std::min(f.multiplicity, t + 1), f.flat.dim());
  };
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return weight(a) < weight(b); });

  EchelonBasis span(size, field);
  std::vector<std::vector<Residue>> rows;
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // variable range per chosen flat
  for (const std::size_t i : order) {
    const DenseMatrix& eqs = scheme.flats[i].flat.equations();
    if (rows.size() + eqs.rows() > size) continue;
    EchelonBasis trial = span;
    trial.add_rows(eqs);
    if (trial.rank() != rows.size() + eqs.rows()) continue;
    span = std::move(trial);
    groups.emplace_back(rows.size(), rows.size() + eqs.rows());
    for (std::size_t r = 0; r < eqs.rows(); ++r) rows.emplace_back(eqs.row(r).begin(), eqs.row(r).end());
    red.chosen.push_back(i);
  }
  for (std::size_t j = 0; j < size && rows.size() < size; ++j) {
    std::vector<Residue> e(size, 0);
    e[j] = 1;
    if (span.contains(e)) continue;
    span.add_row(e);
    rows.push_back(std::move(e));
  }
  red.change = DenseMatrix::from_rows(rows, size);

  const MonomialIndex index(n, t);
  std::vector<char> alive(index.size(), 1);
  for (std::size_t k = 0; k < red.chosen.size(); ++k) {
    const int m = scheme.flats[red.chosen[k]].multiplicity;
    std::size_t removed = 0, below = 0;
    for (std::size_t b = 0; b < index.size(); ++b) {
      const auto e = index.exponents(b);
      int deg = 0;
      for (std::size_t v = groups[k].first; v < groups[k].second; ++v) deg += e[v];
      if (deg >= m) continue;
      ++below;
      if (alive[b]) {
        alive[b] = 0;
        ++removed;
      }
    }
    red.chosen_ranks.push_back({"", below, removed});
  }
  for (std::size_t b = 0; b < index.size(); ++b) {
    if (alive[b]) red.kept_columns.push_back(b);
  }
  return red;
}

DenseMatrix transform_points(const DenseMatrix& change, const DenseMatrix& points, const PrimeField& field) {
  DenseMatrix out(points.rows(), points.cols());
  for (std::size_t i = 0; i < points.rows(); ++i) {
    const auto img = multiply(change, points.row(i), field);
    std::ranges::copy(img, out.row(i).begin());
  }
  return out;
}

DenseMatrix select_columns(const DenseMatrix& rows, std::span<const std::size_t> columns) {
  DenseMatrix out(rows.rows(), columns.size());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    const auto src = rows.row(i);
    auto dst = out.row(i);
    for (std::size_t j = 0; j < columns.size(); ++j) dst[j] = src[columns[j]];
  }
  return out;
}

}  // namespace

AdimResult adim(const FatFlatScheme& scheme, int t, const PrimeField& field, EliminationOptions options) {
  if (t < 0) throw DomainError("negative degree");
  scheme.validate(field);
  check_field(scheme, t, field);
  AdimResult result;
  result.columns = monomial_count(scheme.ambient, t);

  const CoordinateReduction red = coordinate_reduction(scheme, t, field);
  for (std::size_t k = 0; k < red.chosen.size(); ++k) {
    const std::size_t i = red.chosen[k];
    ComponentRank r = red.chosen_ranks[k];
    r.label = "flat[" + std::to_string(i) + "] flat dim=" + std::to_string(scheme.flats[i].flat.dim()) +
              " m=" + std::to_string(scheme.flats[i].multiplicity) + " (coordinate)";
    result.components.push_back(std::move(r));
  }

  // Everything else, moved into the new coordinates.
  FatFlatScheme rest;
  rest.ambient = scheme.ambient;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < scheme.flats.size(); ++i) {
    if (std::ranges::find(red.chosen, i) != red.chosen.end()) continue;
    const FatFlat& f = scheme.flats[i];
    rest.flats.push_back({Flat::from_points(transform_points(red.change, f.flat.basis(), field), field), f.multiplicity});
    labels.push_back("flat[" + std::to_string(i) + "] ");
  }
  for (std::size_t i = 0; i < scheme.points.size(); ++i) {
    rest.points.push_back({multiply(red.change, scheme.points[i].point, field), scheme.points[i].multiplicity, std::nullopt});
    labels.push_back("point[" + std::to_string(i) + "] ");
  }
  for (std::size_t i = 0; i < scheme.curves.size(); ++i) {
    rest.curves.push_back(RationalCurve::from_forms(multiply(red.change, scheme.curves[i].forms(), field), field));
    labels.push_back("curve[" + std::to_string(i) + "] ");
  }

  EchelonBasis basis(red.kept_columns.size(), field, options);
  std::size_t next_label = 0;
  for_each_block(rest, t, field, [&](ConditionBlock b) {
    const std::size_t before = basis.rank();
    basis.add_rows(select_columns(b.rows, red.kept_columns));
    const std::string label = labels[next_label++] + b.label.substr(b.label.find(']') + 2);
    result.components.push_back({label, b.rows.rows(), basis.rank() - before});
  });
  result.adim = static_cast<std::int64_t>(red.kept_columns.size()) - static_cast<std::int64_t>(basis.rank());
  return result;
}

std::vector<FormVector> kernel_basis_system(const FatFlatScheme& scheme, int t, const PrimeField& field,
                                            EliminationOptions options) {
  if (t < 0) throw DomainError("negative degree");
  scheme.validate(field);
  check_field(scheme, t, field);
  EchelonBasis basis(monomial_count(scheme.ambient, t), field, options);
  for_each_block(scheme, t, field, [&](ConditionBlock b) { basis.add_rows(b.rows); });
  std::vector<FormVector> forms;
  for (auto& v : basis.kernel()) forms.push_back({scheme.ambient, t, std::move(v)});
  return forms;
}

Residue FormVector::evaluate(std::span<const Residue> point, const PrimeField& field) const {
  if (point.size() != static_cast<std::size_t>(n + 1)) throw DimensionMismatch("point of wrong length");
  const MonomialIndex index(n, t);
  if (coefficients.size() != index.size()) throw DimensionMismatch("form vector of wrong length");
  std::vector<std::vector<Residue>> powers(n + 1, std::vector<Residue>(t + 1, 1));
  for (int j = 0; j <= n; ++j) {
    for (int e = 1; e <= t; ++e) powers[j][e] = field.mul(powers[j][e - 1], point[j]);
  }
  const std::uint64_t lazy = field.lazy_modulus();
  std::uint64_t acc = 0;
  for (std::size_t b = 0; b < index.size(); ++b) {
    if (coefficients[b] == 0) continue;
    const auto e = index.exponents(b);
    Residue mono = 1;
    for (int j = 0; j <= n; ++j) mono = field.mul(mono, powers[j][e[j]]);
    acc = lazy_fma(acc, coefficients[b], mono, lazy);
  }
  return field.reduce(acc);
}

bool annihilates(const DenseMatrix& rows, std::span<const Residue> v, const PrimeField& field) {
  const auto products = multiply(rows, v, field);
  return std::ranges::all_of(products, [](Residue r) { return r == 0; });
}

int vanishing_order_along_flat(const FormVector& form, const Flat& flat, const PrimeField& field) {
  if (std::ranges::all_of(form.coefficients, [](Residue c) { return c == 0; })) {
    throw DomainError("the zero form has no vanishing order");
  }
  if (flat.ambient() != form.n) throw DomainError("flat and form live in different spaces");
  for (int m = 1; m <= form.t; ++m) {
    if (!annihilates(condition_rows_fat_flat(flat, m, form.t, field).rows, form.coefficients, field)) return m - 1;
  }
  return form.t;
}

}  // namespace fatflat
