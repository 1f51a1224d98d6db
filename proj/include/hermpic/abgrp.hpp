#pragma once

// Finitely generated abelian groups with an involution, in invariant-factor
// normal form, and the homomorphism calculus built on Smith reduction.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hermpic/matrix.hpp"
#include "hermpic/normal_form.hpp"

namespace hermpic {

inline constexpr std::size_t kDefaultGroupCap = std::size_t{1} << 20;

/// A finitely generated abelian group Z/d1 + ... + Z/dk + Z^r with an
/// order-at-most-2 automorphism. Generators are ordered torsion first
/// (ascending d), then free. Elements are coordinate vectors; torsion
/// coordinates are kept reduced into [0, d).
class AbGroup {
 public:
  AbGroup() : action_(IntMatrix::identity(0)) {}

  AbGroup(Vec torsion, std::size_t rank, std::optional<IntMatrix> action = std::nullopt)
      : torsion_(std::move(torsion)), rank_(rank) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      if (torsion_[i] < 2) fail(Errc::invalid_input, "invariant factor " + std::to_string(torsion_[i]) + " < 2");
      if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
        fail(Errc::invalid_input, "invariant factors break the divisibility chain at " +
                                      std::to_string(torsion_[i - 1]) + " | " + std::to_string(torsion_[i]));
    }
    const std::size_t n = ngens();
    action_ = action ? std::move(*action) : IntMatrix::identity(n);
    if (action_.rows() != n || action_.cols() != n)
      fail(Errc::invalid_input, "action must be a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    action_ = reduce_rows(action_);
    validate_action();
  }

  static AbGroup trivial() { return AbGroup{}; }
  static AbGroup cyclic(Int n) { return n == 0 ? AbGroup({}, 1) : (n == 1 ? AbGroup{} : AbGroup({n}, 0)); }
  static AbGroup free(std::size_t r) { return AbGroup({}, r); }

  [[nodiscard]] const Vec& torsion() const noexcept { return torsion_; }
  [[nodiscard]] std::size_t rank() const noexcept { return rank_; }
  [[nodiscard]] std::size_t ngens() const noexcept { return torsion_.size() + rank_; }
  [[nodiscard]] const IntMatrix& action() const noexcept { return action_; }
  [[nodiscard]] bool is_finite() const noexcept { return rank_ == 0; }
  [[nodiscard]] bool is_trivial() const noexcept { return ngens() == 0; }
  [[nodiscard]] bool has_identity_action() const { return action_ == IntMatrix::identity(ngens()); }

  /// Modulus of coordinate i; 0 for free coordinates.
  [[nodiscard]] Int modulus(std::size_t i) const { return i < torsion_.size() ? torsion_[i] : 0; }

  [[nodiscard]] Int order() const {
    if (!is_finite()) fail(Errc::infinite_group, "order of a group with free rank " + std::to_string(rank_));
    Int n = 1;
    for (Int d : torsion_) n = checked_mul(n, d);
    return n;
  }

  [[nodiscard]] Vec reduce(Vec v) const {
    if (v.size() != ngens())
      fail(Errc::not_an_element, "element has " + std::to_string(v.size()) + " coordinates, group has " +
                                     std::to_string(ngens()) + " generators");
    for (std::size_t i = 0; i < torsion_.size(); ++i) v[i] = mod_floor(v[i], torsion_[i]);
    return v;
  }
  [[nodiscard]] IntMatrix reduce_rows(IntMatrix m) const {
    for (std::size_t i = 0; i < torsion_.size() && i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_floor(m(i, j), torsion_[i]);
    return m;
  }
  [[nodiscard]] bool is_zero(const Vec& v) const {
    Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](Int x) { return x == 0; });
  }
  [[nodiscard]] bool equal(const Vec& a, const Vec& b) const { return reduce(a) == reduce(b); }
  [[nodiscard]] Vec zero() const { return Vec(ngens(), 0); }
  [[nodiscard]] Vec generator(std::size_t i) const {
    Vec v = zero();
    v.at(i) = 1;
    return v;
  }
  [[nodiscard]] Vec add(const Vec& a, const Vec& b) const {
    Vec r(ngens());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_add(a.at(i), b.at(i));
    return reduce(std::move(r));
  }
  [[nodiscard]] Vec scale(Int k, const Vec& a) const {
    Vec r(ngens());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_mul(k, a.at(i));
    return reduce(std::move(r));
  }
  [[nodiscard]] Vec negate(const Vec& a) const { return scale(-1, a); }
  [[nodiscard]] Vec act(const Vec& a) const { return reduce(action_ * a); }

  /// Order of an element; 0 means infinite order.
  [[nodiscard]] Int element_order(const Vec& v) const {
    Vec r = reduce(v);
    Int ord = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] == 0) continue;
      if (i >= torsion_.size()) return 0;
      const Int d = torsion_[i] / std::gcd(torsion_[i], r[i]);
      ord = std::lcm(ord, d);
    }
    return ord;
  }

  /// Relation lattice as columns d_i e_i.
  [[nodiscard]] IntMatrix relations() const {
    IntMatrix r(ngens(), torsion_.size());
    for (std::size_t i = 0; i < torsion_.size(); ++i) r(i, i) = torsion_[i];
    return r;
  }

  /// All elements in lexicographic coordinate order.
  [[nodiscard]] std::vector<Vec> elements(std::size_t cap = kDefaultGroupCap) const {
    if (!is_finite()) fail(Errc::infinite_group, "cannot enumerate a group with free rank " + std::to_string(rank_));
    const Int n = order();
    if (static_cast<std::size_t>(n) > cap)
      fail(Errc::cap_exceeded, "group of order " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(n));
    Vec cur = zero();
    for (Int k = 0; k < n; ++k) {
      out.push_back(cur);
      for (std::size_t i = cur.size(); i-- > 0;) {
        if (++cur[i] < torsion_[i]) break;
        cur[i] = 0;
      }
    }
    return out;
  }

  /// Isomorphism type only; actions are ignored.
  [[nodiscard]] bool isomorphic(const AbGroup& o) const { return torsion_ == o.torsion_ && rank_ == o.rank_; }

  friend bool operator==(const AbGroup& a, const AbGroup& b) {
    return a.torsion_ == b.torsion_ && a.rank_ == b.rank_ && a.action_ == b.action_;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (Int d : torsion_) s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(d));
    for (std::size_t i = 0; i < rank_; ++i) s += (s.empty() ? "" : " + ") + std::string("Z");
    return s.empty() ? "0" : s;
  }

 private:
  void validate_action() const {
    const std::size_t n = ngens();
    // Relations must map into relations.
    for (std::size_t j = 0; j < torsion_.size(); ++j) {
      Vec img(n);
      for (std::size_t i = 0; i < n; ++i) img[i] = checked_mul(torsion_[j], action_(i, j));
      if (!is_zero(img))
        fail(Errc::invalid_input, "action does not respect the relation " + std::to_string(torsion_[j]) +
                                      "*g" + std::to_string(j) + " = 0");
    }
    IntMatrix sq = action_ * action_;
    for (std::size_t j = 0; j < n; ++j) {
      Vec col = sq.column(j);
      col[j] = checked_sub(col[j], 1);
      if (!is_zero(col)) fail(Errc::invalid_input, "action is not an involution on generator " + std::to_string(j));
    }
  }

  Vec torsion_;
  std::size_t rank_ = 0;
  IntMatrix action_;
};

/// A normalized group together with the coordinate change from the
/// presentation it was built from.
struct Normalized {
  AbGroup group;
  IntMatrix to_group;    // ngens(group) x n_presentation
  IntMatrix from_group;  // n_presentation x ngens(group)
};

/// Normal form of Z^n / span(relations); `action`, if given, is in
/// presentation coordinates and must preserve the relation lattice.
inline Normalized normalize_presentation(std::size_t n, const IntMatrix& relations,
                                         const std::optional<IntMatrix>& action = std::nullopt) {
  if (relations.rows() != n) fail(Errc::internal, "presentation relation rows != generator count");
  SmithForm s = smith_normal_form(relations);
  std::vector<std::size_t> keep;
  Vec torsion;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Int d = i < s.diagonal.size() ? s.diagonal[i] : 0;
    if (d == 1) continue;
    keep.push_back(i);
    if (d == 0)
      ++rank;
    else
      torsion.push_back(d);
  }
  IntMatrix to = s.left.select_rows(keep);
  IntMatrix from = s.left_inverse.select_cols(keep);
  for (std::size_t i = 0; i < torsion.size(); ++i)
    for (std::size_t j = 0; j < to.cols(); ++j) to(i, j) = mod_floor(to(i, j), torsion[i]);
  std::optional<IntMatrix> a;
  if (action) a = to * (*action) * from;
  return {AbGroup(std::move(torsion), rank, std::move(a)), std::move(to), std::move(from)};
}

/// Homomorphism between normalized groups; column j is the image of the
/// j-th source generator in target coordinates.
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(AbGroup source, AbGroup target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.ngens() || matrix_.cols() != source_.ngens())
      fail(Errc::ill_defined_hom, "matrix is " + std::to_string(matrix_.rows()) + "x" +
                                      std::to_string(matrix_.cols()) + ", expected " +
                                      std::to_string(target_.ngens()) + "x" + std::to_string(source_.ngens()));
    matrix_ = target_.reduce_rows(matrix_);
    for (std::size_t j = 0; j < source_.torsion().size(); ++j) {
      Vec img(target_.ngens());
      for (std::size_t i = 0; i < img.size(); ++i) img[i] = checked_mul(source_.torsion()[j], matrix_(i, j));
      if (!target_.is_zero(img))
        fail(Errc::ill_defined_hom, "relation " + std::to_string(source_.torsion()[j]) + "*g" + std::to_string(j) +
                                        " = 0 is not sent to 0");
    }
  }

  static GroupHom zero(const AbGroup& s, const AbGroup& t) { return {s, t, IntMatrix(t.ngens(), s.ngens())}; }
  static GroupHom identity(const AbGroup& g) { return {g, g, IntMatrix::identity(g.ngens())}; }
  /// Multiplication by k on g.
  static GroupHom multiply(const AbGroup& g, Int k) {
    IntMatrix m = IntMatrix::identity(g.ngens());
    for (std::size_t i = 0; i < g.ngens(); ++i) m(i, i) = k;
    return {g, g, std::move(m)};
  }

  [[nodiscard]] const AbGroup& source() const noexcept { return source_; }
  [[nodiscard]] const AbGroup& target() const noexcept { return target_; }
  [[nodiscard]] const IntMatrix& matrix() const noexcept { return matrix_; }

  [[nodiscard]] Vec apply(const Vec& x) const { return target_.reduce(matrix_ * source_.reduce(x)); }

  [[nodiscard]] bool is_zero() const {
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
      if (!target_.is_zero(matrix_.column(j))) return false;
    return true;
  }
  [[nodiscard]] bool is_equivariant() const {
    IntMatrix l = matrix_ * source_.action();
    IntMatrix r = target_.action() * matrix_;
    for (std::size_t j = 0; j < l.cols(); ++j) {
      Vec d(l.rows());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = checked_sub(l(i, j), r(i, j));
      if (!target_.is_zero(d)) return false;
    }
    return true;
  }
  friend bool operator==(const GroupHom& a, const GroupHom& b) = default;

 private:
  AbGroup source_;
  AbGroup target_;
  IntMatrix matrix_;
};

/// g after f.
inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!f.target().isomorphic(g.source()))
    fail(Errc::not_composable, "cannot compose: " + f.target().to_string() + " vs " + g.source().to_string());
  return {f.source(), g.target(), g.matrix() * f.matrix()};
}

/// Sum of two parallel homomorphisms.
inline GroupHom add(const GroupHom& f, const GroupHom& g) {
  if (!f.source().isomorphic(g.source()) || !f.target().isomorphic(g.target()))
    fail(Errc::not_composable, "cannot add homomorphisms with different source/target");
  return {f.source(), f.target(), f.matrix() + g.matrix()};
}

/// The action of g viewed as an endomorphism.
inline GroupHom action_hom(const AbGroup& g) { return {g, g, g.action()}; }

struct Quotient {
  AbGroup group;
  GroupHom projection;  // ambient -> group
};

struct Subgroup {
  AbGroup group;
  GroupHom inclusion;  // group -> ambient
};

namespace detail {

inline std::vector<Vec> relation_and_generator_columns(const AbGroup& g, const std::vector<Vec>& gens) {
  std::vector<Vec> cols = g.relations().columns();
  for (const Vec& v : gens) cols.push_back(g.reduce(v));
  return cols;
}

}  // namespace detail

/// Whether v lies in the subgroup generated by `gens`.
inline bool subgroup_contains(const AbGroup& g, const std::vector<Vec>& gens, const Vec& v) {
  auto cols = detail::relation_and_generator_columns(g, gens);
  HermiteForm h = hermite_normal_form(IntMatrix::from_columns(cols, g.ngens()));
  return in_lattice(h, g.reduce(v));
}

/// Whether the subgroup generated by `gens` is stable under the action.
inline bool subgroup_is_invariant(const AbGroup& g, const std::vector<Vec>& gens) {
  auto cols = detail::relation_and_generator_columns(g, gens);
  HermiteForm h = hermite_normal_form(IntMatrix::from_columns(cols, g.ngens()));
  return std::all_of(gens.begin(), gens.end(), [&](const Vec& v) { return in_lattice(h, g.act(v)); });
}

/// g / <gens>; the action descends whenever the subgroup is invariant,
/// otherwise the quotient carries the identity action.
inline Quotient quotient(const AbGroup& g, const std::vector<Vec>& gens) {
  auto cols = detail::relation_and_generator_columns(g, gens);
  const bool invariant = subgroup_is_invariant(g, gens);
  Normalized n = normalize_presentation(g.ngens(), IntMatrix::from_columns(cols, g.ngens()),
                                        invariant ? std::optional<IntMatrix>(g.action()) : std::nullopt);
  GroupHom proj(g, n.group, n.to_group);
  return {std::move(n.group), std::move(proj)};
}

/// Subgroup generated by `gens`, in normal form, with its inclusion. The
/// action restricts when the subgroup is invariant.
inline Subgroup subgroup(const AbGroup& g, const std::vector<Vec>& gens) {
  const std::size_t s = gens.size();
  if (s == 0) return {AbGroup{}, GroupHom::zero(AbGroup{}, g)};
  IntMatrix b = IntMatrix::from_columns(gens, g.ngens());
  b = g.reduce_rows(b);
  // Relations among the generators: c with b c in the relation lattice of g.
  IntMatrix sys = b.hconcat(g.relations());
  std::vector<Vec> rel;
  for (const Vec& k : kernel_basis(sys)) rel.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(s));
  IntMatrix relm = IntMatrix::from_columns(rel, s);
  std::optional<IntMatrix> act;
  if (subgroup_is_invariant(g, gens)) {
    // Express the image of each generator in terms of the generators.
    IntMatrix a(s, s);
    for (std::size_t j = 0; j < s; ++j) {
      auto y = solve_integer(sys, g.act(gens[j]));
      if (!y) fail(Errc::internal, "invariant subgroup failed to contain an image");
      for (std::size_t i = 0; i < s; ++i) a(i, j) = (*y)[i];
    }
    act = std::move(a);
  }
  Normalized n = normalize_presentation(s, relm, act);
  GroupHom incl(n.group, g, b * n.from_group);
  return {std::move(n.group), std::move(incl)};
}

inline Quotient cokernel(const GroupHom& h) { return quotient(h.target(), h.matrix().columns()); }

inline Subgroup image(const GroupHom& h) { return subgroup(h.target(), h.matrix().columns()); }

inline Subgroup kernel(const GroupHom& h) {
  const std::size_t n = h.source().ngens();
  IntMatrix sys = h.matrix().hconcat(h.target().relations());
  std::vector<Vec> gens;
  for (const Vec& k : kernel_basis(sys)) {
    Vec x(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(n));
    x = h.source().reduce(std::move(x));
    if (!h.source().is_zero(x)) gens.push_back(std::move(x));
  }
  return subgroup(h.source(), gens);
}

/// Coordinates in `sub` of an ambient element known to lie in it.
inline std::optional<Vec> lift_through(const GroupHom& inclusion, const Vec& v) {
  const AbGroup& amb = inclusion.target();
  IntMatrix sys = inclusion.matrix().hconcat(amb.relations());
  auto y = solve_integer(sys, amb.reduce(v));
  if (!y) return std::nullopt;
  Vec c(y->begin(), y->begin() + static_cast<std::ptrdiff_t>(inclusion.source().ngens()));
  return inclusion.source().reduce(std::move(c));
}

/// Factor f through an injective `inclusion` whose image contains im(f).
inline GroupHom factor_through(const GroupHom& f, const GroupHom& inclusion) {
  std::vector<Vec> cols;
  for (const Vec& c : f.matrix().columns()) {
    auto y = lift_through(inclusion, c);
    if (!y) fail(Errc::internal, "image does not factor through the given subgroup");
    cols.push_back(std::move(*y));
  }
  return {f.source(), inclusion.source(), IntMatrix::from_columns(cols, inclusion.source().ngens())};
}

struct FixedTwisted {
  Subgroup fixed;    // {m : lambda(m) = m}
  Subgroup twisted;  // {m : lambda(m) = -m}
};

inline FixedTwisted fixed_and_twisted(const AbGroup& m) {
  const IntMatrix id = IntMatrix::identity(m.ngens());
  return {kernel(GroupHom(m, m, m.action() - id)), kernel(GroupHom(m, m, m.action() + id))};
}

struct TateCohomology {
  AbGroup h0;  // fixed / norms
  AbGroup h1;  // norm kernel / (1 - lambda)
};

inline TateCohomology tate_cohomology(const AbGroup& m) {
  const IntMatrix id = IntMatrix::identity(m.ngens());
  const GroupHom norm(m, m, m.action() + id);
  const GroupHom coboundary(m, m, id - m.action());

  Subgroup fixed = fixed_and_twisted(m).fixed;
  GroupHom norm_into_fixed = factor_through(norm, fixed.inclusion);
  AbGroup h0 = quotient(fixed.group, norm_into_fixed.matrix().columns()).group;

  Subgroup nk = kernel(norm);
  GroupHom cob_into_kernel = factor_through(coboundary, nk.inclusion);
  AbGroup h1 = quotient(nk.group, cob_into_kernel.matrix().columns()).group;
  // C2 acts trivially on its Tate cohomology.
  return {AbGroup(h0.torsion(), h0.rank()), AbGroup(h1.torsion(), h1.rank())};
}

struct JunctionReport {
  std::size_t object_index = 0;  // index of the object in the chain's object list
  bool exact = false;
  std::optional<Vec> witness;    // element breaking image == kernel
  std::string detail;
};

struct ExactnessReport {
  std::vector<JunctionReport> junctions;
  [[nodiscard]] bool exact() const {
    return std::all_of(junctions.begin(), junctions.end(), [](const JunctionReport& j) { return j.exact; });
  }
};

/// Exactness at each interior object of h_0, h_1, ..., h_{n-1}. Objects are
/// numbered source(h_0) = 0, target(h_i) = i + 1; junction i + 1 compares
/// image(h_i) and kernel(h_{i+1}) by double inclusion.
inline ExactnessReport check_exact(const std::vector<GroupHom>& chain) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!chain[i].target().isomorphic(chain[i + 1].source()))
      fail(Errc::not_composable, "hom " + std::to_string(i) + " lands in " + chain[i].target().to_string() +
                                     " but hom " + std::to_string(i + 1) + " starts at " +
                                     chain[i + 1].source().to_string());
  ExactnessReport rep;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const AbGroup& g = chain[i].target();
    JunctionReport j;
    j.object_index = i + 1;
    std::vector<Vec> img = chain[i].matrix().columns();
    std::vector<Vec> ker = kernel(chain[i + 1]).inclusion.matrix().columns();
    j.exact = true;
    for (const Vec& v : img)
      if (!subgroup_contains(g, ker, v)) {
        j.exact = false;
        j.witness = g.reduce(v);
        j.detail = "image element not in kernel";
        break;
      }
    if (j.exact)
      for (const Vec& v : ker)
        if (!subgroup_contains(g, img, v)) {
          j.exact = false;
          j.witness = g.reduce(v);
          j.detail = "kernel element not in image";
          break;
        }
    rep.junctions.push_back(std::move(j));
  }
  return rep;
}

struct DirectSum {
  AbGroup group;
  GroupHom inj1, inj2, proj1, proj2;
};

inline DirectSum direct_sum(const AbGroup& a, const AbGroup& b) {
  const std::size_t na = a.ngens(), nb = b.ngens(), n = na + nb;
  IntMatrix rel(n, a.torsion().size() + b.torsion().size());
  for (std::size_t i = 0; i < a.torsion().size(); ++i) rel(i, i) = a.torsion()[i];
  for (std::size_t i = 0; i < b.torsion().size(); ++i) rel(na + i, a.torsion().size() + i) = b.torsion()[i];
  IntMatrix act(n, n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) act(i, j) = a.action()(i, j);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) act(na + i, na + j) = b.action()(i, j);
  Normalized s = normalize_presentation(n, rel, act);
  IntMatrix e1(n, na), e2(n, nb), p1(na, n), p2(nb, n);
  for (std::size_t i = 0; i < na; ++i) e1(i, i) = p1(i, i) = 1;
  for (std::size_t i = 0; i < nb; ++i) e2(na + i, i) = p2(i, na + i) = 1;
  GroupHom inj1(a, s.group, s.to_group * e1);
  GroupHom inj2(b, s.group, s.to_group * e2);
  GroupHom proj1(s.group, a, p1 * s.from_group);
  GroupHom proj2(s.group, b, p2 * s.from_group);
  return {s.group, std::move(inj1), std::move(inj2), std::move(proj1), std::move(proj2)};
}

/// Elementary divisors (prime powers, ascending) of the torsion part.
inline Vec primary_factors(const AbGroup& g) {
  Vec out;
  for (Int d : g.torsion()) {
    Int n = d;
    for (Int p = 2; p * p <= n; ++p) {
      if (n % p != 0) continue;
      Int q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      out.push_back(q);
    }
    if (n > 1) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Reconstructs a finite abelian group from the multiset of its element
/// orders: |G[p^j]| determines how many cyclic p-factors have exponent >= j.
inline AbGroup group_from_element_orders(const std::vector<Int>& orders) {
  const Int n = static_cast<Int>(orders.size());
  if (n == 0) fail(Errc::invalid_input, "empty order list");
  std::map<Int, std::vector<Int>> exps;  // prime -> exponents, descending
  Int rest = n;
  for (Int p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    Int prev_log = 0;
    for (Int pj = p, j = 1;; pj *= p, ++j) {
      Int count = 0;
      for (Int o : orders)
        if (pj % o == 0) ++count;
      Int lg = 0;
      for (Int c = count; c > 1; c /= p) ++lg;
      const Int factors_at_least_j = lg - prev_log;
      if (factors_at_least_j == 0) break;
      auto& e = exps[p];
      if (static_cast<Int>(e.size()) < factors_at_least_j) e.resize(static_cast<std::size_t>(factors_at_least_j), 0);
      for (Int k = 0; k < factors_at_least_j; ++k) e[static_cast<std::size_t>(k)] = j;
      prev_log = lg;
    }
  }
  std::size_t k = 0;
  for (auto& [p, e] : exps) k = std::max(k, e.size());
  Vec inv(k, 1);
  for (auto& [p, e] : exps)
    for (std::size_t i = 0; i < e.size(); ++i)
      for (Int t = 0; t < e[i]; ++t) inv[i] *= p;
  std::reverse(inv.begin(), inv.end());
  Vec torsion;
  for (Int d : inv)
    if (d > 1) torsion.push_back(d);
  return AbGroup(std::move(torsion), 0);
}

/// Whether every abelian extension of q by k splits, i.e. the sum over the
/// torsion factors n of q of k / n k vanishes.
inline bool extensions_split_automatically(const AbGroup& k, const AbGroup& q) {
  for (Int n : q.torsion())
    if (!quotient(k, GroupHom::multiply(k, n).matrix().columns()).group.is_trivial()) return false;
  return true;
}

struct Extension {
  AbGroup middle;
  GroupHom inclusion;   // k -> middle
  GroupHom projection;  // middle -> q
};

/// The extension 0 -> k -> E -> q -> 0 in which the chosen lift of the i-th
/// torsion generator of q, multiplied by its order n_i, equals classes[i] in k.
/// All-zero classes give the split extension.
inline Extension extension_from_classes(const AbGroup& k, const AbGroup& q, const std::vector<Vec>& classes) {
  const std::size_t tq = q.torsion().size();
  if (classes.size() != tq)
    fail(Errc::invalid_input, "extension needs one class per torsion generator of the quotient (" +
                                  std::to_string(tq) + "), got " + std::to_string(classes.size()));
  const std::size_t nk = k.ngens(), nq = q.ngens(), n = nk + nq;
  std::vector<Vec> rel;
  for (std::size_t i = 0; i < k.torsion().size(); ++i) {
    Vec c(n, 0);
    c[i] = k.torsion()[i];
    rel.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < tq; ++j) {
    Vec w = k.reduce(classes[j]);
    Vec c(n, 0);
    for (std::size_t i = 0; i < nk; ++i) c[i] = -w[i];
    c[nk + j] = q.torsion()[j];
    rel.push_back(std::move(c));
  }
  Normalized s = normalize_presentation(n, IntMatrix::from_columns(rel, n));
  IntMatrix e(n, nk), p(nq, n);
  for (std::size_t i = 0; i < nk; ++i) e(i, i) = 1;
  for (std::size_t i = 0; i < nq; ++i) p(i, nk + i) = 1;
  GroupHom inc(k, s.group, s.to_group * e);
  GroupHom proj(s.group, q, p * s.from_group);
  return {s.group, std::move(inc), std::move(proj)};
}

}  // namespace hermpic
