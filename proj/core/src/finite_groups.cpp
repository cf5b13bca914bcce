#include "fuchsian/finite_groups.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <numeric>

#include "fuchsian/errors.hpp"
#include "fuchsian/perm_group.hpp"

namespace fuchsian {

// ---- dihedral ----

DihedralGroup::DihedralGroup(i64 n) : n_(n) {
  if (n < 1) throw PreconditionError("dihedral group needs n >= 1");
}

static i64 mod_pos(i64 a, i64 n) { return ((a % n) + n) % n; }

DihedralElement DihedralGroup::r(i64 power) const { return {mod_pos(power, n_), false}; }

DihedralElement DihedralGroup::mul(const DihedralElement& a, const DihedralElement& b) const {
  i64 rot = a.reflected ? a.rotation - b.rotation : a.rotation + b.rotation;
  return {mod_pos(rot, n_), a.reflected != b.reflected};
}

DihedralElement DihedralGroup::inv(const DihedralElement& a) const {
  if (a.reflected) return a;
  return {mod_pos(-a.rotation, n_), false};
}

u64 DihedralGroup::element_order(const DihedralElement& a) const {
  if (a.reflected) return 2;
  return static_cast<u64>(n_ / std::gcd(a.rotation, n_));
}

std::vector<DihedralElement> DihedralGroup::elements() const {
  std::vector<DihedralElement> out;
  for (int refl = 0; refl < 2; ++refl)
    for (i64 i = 0; i < n_; ++i) out.push_back({i, refl == 1});
  return out;
}

// ---- PSL(2,q) ----

PSL2::PSL2(u64 q) : F_(q) {
  if (q % 2 == 0) throw PreconditionError("PSL(2,q) here needs q odd");
  primes_minus_ = prime_divisors((q - 1) / 2);
  primes_plus_ = prime_divisors((q + 1) / 2);
  primes_ell_ = {F_.characteristic()};
}

BigInt PSL2::order() const {
  BigInt q = static_cast<unsigned long>(F_.q());
  return q * (q * q - 1) / 2;
}

Mat2 PSL2::canonical(Mat2 m) const {
  Mat2 n{F_.neg(m.a), F_.neg(m.b), F_.neg(m.c), F_.neg(m.d)};
  return std::min(m, n);
}

Mat2 PSL2::make(i64 a, i64 b, i64 c, i64 d) const {
  Mat2 m{F_.from_int(a), F_.from_int(b), F_.from_int(c), F_.from_int(d)};
  if (F_.sub(F_.mul(m.a, m.d), F_.mul(m.b, m.c)) != 1) throw PreconditionError("matrix determinant is not 1");
  return canonical(m);
}

Mat2 PSL2::mul(const Mat2& x, const Mat2& y) const {
  const FiniteField& F = F_;
  Mat2 r{F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
         F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
  return canonical(r);
}

Mat2 PSL2::inv(const Mat2& x) const { return canonical({x.d, F_.neg(x.b), F_.neg(x.c), x.a}); }

Mat2 PSL2::pow(Mat2 x, u64 n) const {
  Mat2 r = identity();
  while (n) {
    if (n & 1) r = mul(r, x);
    x = mul(x, x);
    n >>= 1;
  }
  return r;
}

bool PSL2::is_identity(const Mat2& x) const {
  return x.b == 0 && x.c == 0 && x.a == x.d && (x.a == 1 || x.a == F_.neg(1));
}

u64 PSL2::trace(const Mat2& x) const { return F_.add(x.a, x.d); }

u64 PSL2::reduce_order(const Mat2& x, u64 n) const {
  if (!is_identity(pow(x, n))) throw InternalContradiction("element order does not divide the expected bound");
  for (u64 p : prime_divisors(n)) {
    while (n % p == 0 && is_identity(pow(x, n / p))) n /= p;
  }
  return n;
}

u64 PSL2::element_order(const Mat2& x) const {
  if (is_identity(x)) return 1;
  u64 t = trace(x);
  u64 two = F_.from_int(2);
  if (t == two || t == F_.neg(two)) return F_.characteristic();
  u64 disc = F_.sub(F_.mul(t, t), F_.from_int(4));
  u64 q = F_.q();
  return reduce_order(x, F_.is_square(disc) ? (q - 1) / 2 : (q + 1) / 2);
}

std::vector<u64> PSL2::element_orders() const {
  u64 q = F_.q();
  std::set<u64> s{1, F_.characteristic()};
  for (u64 d : divisors((q - 1) / 2)) s.insert(d);
  for (u64 d : divisors((q + 1) / 2)) s.insert(d);
  return {s.begin(), s.end()};
}

bool PSL2::has_element_of_order(u64 c) const {
  u64 q = F_.q();
  return c == 1 || c == F_.characteristic() || ((q - 1) / 2) % c == 0 || ((q + 1) / 2) % c == 0;
}

Mat2 PSL2::element_of_order(u64 c) const {
  u64 q = F_.q();
  if (c == 1) return identity();
  if (c == F_.characteristic()) return make(1, 1, 0, 1);
  if (((q - 1) / 2) % c == 0) {
    std::vector<u64> ps = prime_divisors(q - 1);
    for (u64 g = 2; g < q; ++g) {
      bool primitive = std::all_of(ps.begin(), ps.end(), [&](u64 p) { return F_.pow(g, (q - 1) / p) != 1; });
      if (!primitive) continue;
      u64 lam = F_.pow(g, (q - 1) / (2 * c));
      return canonical({lam, 0, 0, F_.inv(lam)});
    }
    throw InternalContradiction("no primitive element found");
  }
  if (((q + 1) / 2) % c == 0) {
    for (u64 t = 0; t < q; ++t) {
      Mat2 m = canonical({0, F_.neg(1), 1, t});
      if (element_order(m) == c) return m;
    }
    throw InternalContradiction("no element of the expected order found");
  }
  throw PreconditionError("PSL(2," + std::to_string(q) + ") has no element of order " + std::to_string(c));
}

Mat2 PSL2::random_element(std::mt19937_64& rng) const {
  u64 q = F_.q();
  std::uniform_int_distribution<u64> U(0, q - 1);
  u64 a, b;
  do {
    a = U(rng);
    b = U(rng);
  } while (a == 0 && b == 0);
  u64 c, d;
  if (a != 0) {
    c = 0;
    d = F_.inv(a);
  } else {
    d = 0;
    c = F_.neg(F_.inv(b));
  }
  u64 t = U(rng);
  c = F_.add(c, F_.mul(t, a));
  d = F_.add(d, F_.mul(t, b));
  return canonical({a, b, c, d});
}

Mat2 PSL2::random_conjugate(const Mat2& x, std::mt19937_64& rng) const {
  Mat2 g = random_element(rng);
  return mul(mul(g, x), inv(g));
}

std::uint32_t PSL2::act(const Mat2& x, std::uint32_t point) const {
  u64 q = F_.q();
  u64 num, den;
  if (point == q) {
    num = x.a;
    den = x.c;
  } else {
    num = F_.add(F_.mul(x.a, point), x.b);
    den = F_.add(F_.mul(x.c, point), x.d);
  }
  if (den == 0) return static_cast<std::uint32_t>(q);
  return static_cast<std::uint32_t>(F_.mul(num, F_.inv(den)));
}

std::vector<std::uint32_t> PSL2::as_permutation(const Mat2& x) const {
  std::vector<std::uint32_t> p(F_.q() + 1);
  for (std::uint32_t i = 0; i < p.size(); ++i) p[i] = act(x, i);
  return p;
}

BigInt PSL2::subgroup_order(const std::vector<Mat2>& gens) const {
  if (F_.q() > 20000) throw CapacityError("field too large for the permutation representation");
  std::vector<Perm> perms;
  for (const Mat2& g : gens) perms.push_back(as_permutation(g));
  return permutation_group_order(perms, F_.q() + 1, order());
}

std::vector<Mat2> PSL2::all_elements() const {
  u64 q = F_.q();
  if (q > 200) throw CapacityError("PSL(2,q) too large to list");
  std::set<Mat2> out;
  for (u64 a = 0; a < q; ++a)
    for (u64 b = 0; b < q; ++b) {
      if (a == 0 && b == 0) continue;
      u64 c0 = a != 0 ? 0 : F_.neg(F_.inv(b));
      u64 d0 = a != 0 ? F_.inv(a) : 0;
      for (u64 t = 0; t < q; ++t)
        out.insert(canonical({a, b, F_.add(c0, F_.mul(t, a)), F_.add(d0, F_.mul(t, b))}));
    }
  return {out.begin(), out.end()};
}

std::vector<Mat2> PSL2::generated_subgroup(const std::vector<Mat2>& gens, std::size_t cap) const {
  std::set<Mat2> seen{identity()};
  std::vector<Mat2> queue{identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Mat2& g : gens) {
      Mat2 y = mul(queue[head], g);
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw CapacityError("subgroup exceeds the materialization cap");
        queue.push_back(y);
      }
    }
  }
  if (BigInt(static_cast<unsigned long>(queue.size())) > order())
    throw InternalContradiction("subgroup larger than the ambient group");
  return queue;
}

// ---- descriptors ----

std::string kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::trivial: return "trivial";
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::dihedral: return "dihedral";
    case GroupKind::alternating: return "alternating";
    case GroupKind::psl2: return "psl2";
    case GroupKind::psl2_subgroup: return "psl2-subgroup";
    case GroupKind::abelian: return "abelian";
  }
  return "?";
}

GroupDescriptor GroupDescriptor::trivial() { return {}; }

GroupDescriptor GroupDescriptor::cyclic(u64 n) {
  if (n < 1) throw PreconditionError("cyclic group needs n >= 1");
  GroupDescriptor g;
  g.kind = GroupKind::cyclic;
  g.param = n;
  g.order = static_cast<unsigned long>(n);
  return g;
}

GroupDescriptor GroupDescriptor::dihedral(u64 two_n) {
  if (two_n < 2 || two_n % 2) throw PreconditionError("dihedral order must be even and positive");
  GroupDescriptor g;
  g.kind = GroupKind::dihedral;
  g.param = two_n;
  g.order = static_cast<unsigned long>(two_n);
  return g;
}

GroupDescriptor GroupDescriptor::alt4() {
  GroupDescriptor g;
  g.kind = GroupKind::alternating;
  g.param = 4;
  g.order = 12;
  return g;
}

GroupDescriptor GroupDescriptor::psl2(u64 q) {
  if (!is_odd_prime_power(q)) throw PreconditionError("psl2 needs an odd prime power, got " + std::to_string(q));
  GroupDescriptor g;
  g.kind = GroupKind::psl2;
  g.param = q;
  g.order = PSL2(q).order();
  return g;
}

GroupDescriptor GroupDescriptor::abelian(std::vector<i64> cyclic_factors) {
  GroupDescriptor g;
  g.kind = GroupKind::abelian;
  g.param = 0;
  g.order = 1;
  for (i64 f : cyclic_factors) {
    if (f < 1) throw PreconditionError("cyclic factor must be positive");
    if (f > 1) {
      g.invariants.push_back(f);
      g.order *= static_cast<unsigned long>(f);
    }
  }
  return g;
}

GroupDescriptor parse_group_descriptor(std::string_view text) {
  if (text == "trivial") return GroupDescriptor::trivial();
  if (text == "alt4") return GroupDescriptor::alt4();
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("unknown group descriptor", 0);
  std::string_view kind = text.substr(0, colon), arg = text.substr(colon + 1);
  u64 n = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
  if (ec != std::errc() || ptr != arg.data() + arg.size() || arg.empty())
    throw ParseError("expected a positive integer", colon + 1 + static_cast<std::size_t>(ptr - arg.data()));
  if (kind == "cyclic") return GroupDescriptor::cyclic(n);
  if (kind == "dihedral") return GroupDescriptor::dihedral(n);
  if (kind == "psl2") return GroupDescriptor::psl2(n);
  throw ParseError("unknown group kind", 0);
}

std::string to_string(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupKind::trivial: return "trivial";
    case GroupKind::cyclic: return "cyclic:" + std::to_string(g.param);
    case GroupKind::dihedral: return "dihedral:" + std::to_string(g.param);
    case GroupKind::alternating: return "alt4";
    case GroupKind::psl2: return "psl2:" + std::to_string(g.param);
    case GroupKind::psl2_subgroup:
      return "psl2-subgroup:" + std::to_string(g.param) + "[" + g.order.get_str() + "]";
    case GroupKind::abelian: return "abelian:" + (g.invariants.empty() ? std::string("1") : join_ints(g.invariants, "x"));
  }
  return "?";
}

// ---- tables ----

GroupTable::GroupTable(std::string name, std::vector<Elem> table, std::size_t n)
    : name_(std::move(name)), n_(n), table_(std::move(table)), inv_(n), order_(n) {
  for (Elem a = 0; a < n_; ++a) {
    for (Elem b = 0; b < n_; ++b)
      if (mul(a, b) == 0) {
        inv_[a] = b;
        break;
      }
    u64 k = 1;
    for (Elem x = a; x != 0; x = mul(x, a)) ++k;
    order_[a] = a == 0 ? 1 : k;
  }
}

std::set<u64> GroupTable::element_orders() const { return {order_.begin(), order_.end()}; }

const std::vector<std::vector<GroupTable::Elem>>& GroupTable::classes() const {
  std::call_once(cache_->classes_once, [&] {
    std::vector<char> done(n_, 0);
    for (Elem x = 0; x < n_; ++x) {
      if (done[x]) continue;
      std::set<Elem> cls;
      for (Elem g = 0; g < n_; ++g) cls.insert(mul(mul(g, x), inv(g)));
      for (Elem y : cls) done[y] = 1;
      cache_->classes.emplace_back(cls.begin(), cls.end());
    }
  });
  return cache_->classes;
}

std::vector<GroupTable::Elem> GroupTable::generated_subgroup(const std::vector<Elem>& gens) const {
  std::vector<char> seen(n_, 0);
  std::vector<Elem> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Elem g : gens) {
      Elem y = mul(queue[head], g);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  return queue;
}

bool GroupTable::generates(const std::vector<Elem>& gens) const { return generated_subgroup(gens).size() == n_; }

int GroupTable::PairTable::index_of(u64 order) const {
  auto it = std::lower_bound(orders.begin(), orders.end(), order);
  if (it == orders.end() || *it != order) return -1;
  return static_cast<int>(it - orders.begin());
}

const GroupTable::PairTable& GroupTable::pair_table() const {
  std::call_once(cache_->pairs_once, [&] {
    auto pt = std::make_unique<PairTable>();
    std::set<u64> os = element_orders();
    pt->orders.assign(os.begin(), os.end());
    std::size_t K = pt->orders.size();
    std::size_t words = (K * K + 63) / 64;
    std::vector<int> idx(n_);
    for (Elem a = 0; a < n_; ++a) idx[a] = pt->index_of(order_[a]);
    pt->masks.assign(n_, std::vector<std::uint64_t>(words, 0));
    for (Elem w = 0; w < n_; ++w)
      for (Elem z = 0; z < n_; ++z) {
        std::size_t bit = static_cast<std::size_t>(idx[z]) * K + static_cast<std::size_t>(idx[mul(w, z)]);
        pt->masks[w][bit / 64] |= std::uint64_t{1} << (bit % 64);
      }
    cache_->pairs = std::move(pt);
  });
  return *cache_->pairs;
}

namespace {

template <class E, class Mul>
GroupTable table_from(std::string name, std::vector<E> elems, const E& id, Mul mul) {
  auto it = std::find(elems.begin(), elems.end(), id);
  if (it == elems.end()) throw InternalContradiction("identity missing from element list");
  std::iter_swap(elems.begin(), it);
  std::map<E, std::uint32_t> index;
  for (std::uint32_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  std::size_t n = elems.size();
  std::vector<std::uint32_t> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto f = index.find(mul(elems[i], elems[j]));
      if (f == index.end()) throw InternalContradiction("element list not closed under multiplication");
      t[i * n + j] = f->second;
    }
  return GroupTable(std::move(name), std::move(t), n);
}

}  // namespace

GroupTable make_table(const GroupDescriptor& g) {
  if (g.order > static_cast<unsigned long>(kTableCap))
    throw CapacityError("group of order " + g.order.get_str() + " is too large for a Cayley table");
  std::string name = to_string(g);
  switch (g.kind) {
    case GroupKind::trivial:
      return GroupTable(name, {0}, 1);
    case GroupKind::cyclic: {
      std::size_t n = g.param;
      std::vector<std::uint32_t> t(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i * n + j] = static_cast<std::uint32_t>((i + j) % n);
      return GroupTable(name, std::move(t), n);
    }
    case GroupKind::abelian: {
      std::vector<i64> inv = g.invariants;
      std::size_t n = g.order.get_ui();
      auto digits = [&](std::size_t x) {
        std::vector<i64> d;
        for (i64 f : inv) {
          d.push_back(static_cast<i64>(x % static_cast<std::size_t>(f)));
          x /= static_cast<std::size_t>(f);
        }
        return d;
      };
      std::vector<std::uint32_t> t(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          auto a = digits(i), b = digits(j);
          std::size_t r = 0, scale = 1;
          for (std::size_t k = 0; k < inv.size(); ++k) {
            r += static_cast<std::size_t>((a[k] + b[k]) % inv[k]) * scale;
            scale *= static_cast<std::size_t>(inv[k]);
          }
          t[i * n + j] = static_cast<std::uint32_t>(r);
        }
      return GroupTable(name, std::move(t), n);
    }
    case GroupKind::dihedral: {
      DihedralGroup D(static_cast<i64>(g.param / 2));
      return table_from(name, D.elements(), D.identity(),
                        [&](const DihedralElement& a, const DihedralElement& b) { return D.mul(a, b); });
    }
    case GroupKind::alternating: {
      using P4 = std::array<int, 4>;
      std::vector<P4> even;
      P4 p{0, 1, 2, 3};
      do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
        if (inversions % 2 == 0) even.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      // Apply a, then b.
      auto mul = [](const P4& a, const P4& b) {
        P4 r{};
        for (int i = 0; i < 4; ++i) r[i] = b[a[i]];
        return r;
      };
      return table_from(name, even, P4{0, 1, 2, 3}, mul);
    }
    case GroupKind::psl2: {
      PSL2 G(g.param);
      return table_from(name, G.all_elements(), G.identity(), [&](const Mat2& a, const Mat2& b) { return G.mul(a, b); });
    }
    case GroupKind::psl2_subgroup: {
      PSL2 G(g.param);
      return table_from(name, G.generated_subgroup(g.generators, kTableCap), G.identity(),
                        [&](const Mat2& a, const Mat2& b) { return G.mul(a, b); });
    }
  }
  throw InternalContradiction("unhandled group kind");
}

// ---- homomorphism search ----

namespace {

using Elem = GroupTable::Elem;

Elem word_value(const Signature& s, const GroupTable& G, const std::vector<Elem>& im, std::size_t from,
                std::size_t to) {
  Elem acc = G.identity();
  std::size_t g2 = static_cast<std::size_t>(2 * s.genus);
  std::size_t i = from;
  while (i < to) {
    if (i < g2) {
      Elem a = im[i], b = im[i + 1];
      acc = G.mul(acc, G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))));
      i += 2;
    } else {
      acc = G.mul(acc, im[i]);
      ++i;
    }
  }
  return acc;
}

bool order_ok(u64 ord, i64 cone, const std::vector<i64>& profile, std::size_t i) {
  if (!profile.empty()) return ord == static_cast<u64>(profile[i]);
  return static_cast<u64>(cone) % ord == 0;
}

}  // namespace

bool satisfies_relation(const Signature& s, const GroupTable& G, const std::vector<Elem>& images) {
  std::size_t total = static_cast<std::size_t>(2 * s.genus + s.punctures) + s.k();
  if (images.size() != total) throw PreconditionError("wrong number of generator images");
  return word_value(s, G, images, 0, total) == G.identity();
}

EpiResult enumerate_epimorphisms(const Signature& s, const GroupTable& G, const EpiQuery& q) {
  const std::size_t g2 = static_cast<std::size_t>(2 * s.genus);
  const std::size_t p = static_cast<std::size_t>(s.punctures);
  const std::size_t k = s.k();
  const std::size_t total = g2 + p + k;
  if (!q.profile.empty()) {
    if (q.profile.size() != k) throw PreconditionError("profile length must match the number of cones");
    for (std::size_t i = 0; i < k; ++i)
      if (q.profile[i] < 1 || s.cones[i] % q.profile[i] != 0)
        throw PreconditionError("profile entries must divide the cone orders");
  }

  // Which slot the relation determines, if any.
  std::optional<std::size_t> det;
  if (p > 0) det = g2 + p - 1;
  else if (k > 0) det = total - 1;

  std::vector<std::vector<Elem>> cand(total);
  for (std::size_t slot = 0; slot < total; ++slot) {
    if (det && slot == *det) continue;
    for (Elem e = 0; e < G.size(); ++e) {
      if (slot >= g2 + p) {
        std::size_t i = slot - g2 - p;
        if (!order_ok(G.element_order(e), s.cones[i], q.profile, i)) continue;
      }
      cand[slot].push_back(e);
    }
  }
  std::vector<std::size_t> free_slots;
  for (std::size_t slot = 0; slot < total; ++slot)
    if (!det || slot != *det) free_slots.push_back(slot);

  // First free slot: one representative per conjugacy class, weighted by class size.
  std::vector<std::pair<Elem, u64>> first;
  if (!free_slots.empty()) {
    const auto& c0 = cand[free_slots[0]];
    if (q.collect) {
      for (Elem e : c0) first.push_back({e, 1});
    } else {
      std::vector<char> allowed(G.size(), 0);
      for (Elem e : c0) allowed[e] = 1;
      for (const auto& cls : G.classes())
        if (allowed[cls.front()]) first.push_back({cls.front(), cls.size()});
    }
  }

  long double leaves = free_slots.empty() ? 1.0L : static_cast<long double>(first.size());
  for (std::size_t i = 1; i < free_slots.size(); ++i) leaves *= static_cast<long double>(cand[free_slots[i]].size());
  if (leaves > static_cast<long double>(q.max_leaves))
    throw CapacityError("epimorphism search space too large (" + std::to_string(static_cast<double>(leaves)) + " leaves)");

  EpiResult res;
  std::vector<Elem> im(total, 0);
  bool stop = false;

  auto leaf = [&](u64 weight) {
    if (det) {
      Elem pre = word_value(s, G, im, 0, *det);
      Elem suf = word_value(s, G, im, *det + 1, total);
      Elem d = G.mul(G.inv(pre), G.inv(suf));
      if (*det >= g2 + p) {
        std::size_t i = *det - g2 - p;
        if (!order_ok(G.element_order(d), s.cones[i], q.profile, i)) return;
      }
      im[*det] = d;
    } else if (word_value(s, G, im, 0, total) != G.identity()) {
      return;
    }
    if (q.surjective && !G.generates(im)) return;
    if (res.count > UINT64_MAX - weight) throw CapacityError("epimorphism count overflow");
    res.count += weight;
    if (q.collect) res.homs.push_back(im);
    if (q.stop_at_first) stop = true;
  };

  auto rec = [&](auto&& self, std::size_t depth, u64 weight) -> void {
    if (stop) return;
    if (depth == free_slots.size()) {
      leaf(weight);
      return;
    }
    std::size_t slot = free_slots[depth];
    if (depth == 0) {
      for (auto [e, w] : first) {
        im[slot] = e;
        self(self, 1, w);
        if (stop) return;
      }
    } else {
      for (Elem e : cand[slot]) {
        im[slot] = e;
        self(self, depth + 1, weight);
        if (stop) return;
      }
    }
  };
  rec(rec, 0, 1);
  return res;
}

bool exists_epimorphism(const Signature& s, const GroupTable& G, const std::vector<i64>& profile) {
  EpiQuery q;
  q.profile = profile;
  q.stop_at_first = true;
  return enumerate_epimorphisms(s, G, q).count > 0;
}

bool exists_product_one_tuple(const GroupTable& G, const std::vector<i64>& orders) {
  std::vector<u64> c;
  for (i64 o : orders) {
    if (o < 1) throw PreconditionError("orders must be positive");
    if (o > 1) c.push_back(static_cast<u64>(o));
  }
  std::set<u64> present = G.element_orders();
  for (u64 o : c)
    if (!present.count(o)) return false;
  if (c.empty()) return true;
  if (c.size() == 1) return false;
  if (c.size() == 2) return c[0] == c[1];

  std::map<u64, std::vector<Elem>> by_order;
  for (Elem e = 0; e < G.size(); ++e) by_order[G.element_order(e)].push_back(e);
  const auto& pt = G.pair_table();
  std::size_t K = pt.orders.size();
  std::size_t kk = c.size();
  std::size_t bit = static_cast<std::size_t>(pt.index_of(c[kk - 1])) * K + static_cast<std::size_t>(pt.index_of(c[kk - 2]));

  auto rec = [&](auto&& self, std::size_t i, Elem u) -> bool {
    if (i == kk - 2) {
      Elem w = G.inv(u);
      return (pt.masks[w][bit / 64] >> (bit % 64)) & 1;
    }
    for (Elem x : by_order[c[i]])
      if (self(self, i + 1, G.mul(u, x))) return true;
    return false;
  };
  for (const auto& cls : G.classes()) {
    if (G.element_order(cls.front()) != c[0]) continue;
    if (rec(rec, 1, cls.front())) return true;
  }
  return false;
}

}  // namespace fuchsian
