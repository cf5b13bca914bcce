#include "fuchsian/smooth_reps.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "fuchsian/errors.hpp"

namespace fuchsian {

namespace {

// Relation and generator orders for images in a group with mul/inv/element_order.
template <class Group, class E>
bool check_images(const Group& G, const SmoothRep& rep, const std::vector<E>& im, std::string* why) {
  const Signature& s = rep.source;
  std::size_t g2 = static_cast<std::size_t>(2 * s.genus), p = static_cast<std::size_t>(s.punctures), k = s.k();
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (im.size() != g2 + p + k) return fail("wrong number of images");
  if (rep.elliptic_orders.size() != k || rep.parabolic_orders.size() != p) return fail("order lists have wrong length");
  E acc = G.identity();
  for (std::size_t i = 0; i < g2; i += 2) {
    const E& a = im[i];
    const E& b = im[i + 1];
    acc = G.mul(acc, G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))));
  }
  for (std::size_t i = g2; i < im.size(); ++i) acc = G.mul(acc, im[i]);
  if (!(acc == G.identity())) return fail("relation does not hold");
  for (std::size_t t = 0; t < p; ++t)
    if (G.element_order(im[g2 + t]) != static_cast<u64>(rep.parabolic_orders[t]))
      return fail("parabolic image " + std::to_string(t + 1) + " has the wrong order");
  for (std::size_t i = 0; i < k; ++i) {
    u64 o = G.element_order(im[g2 + p + i]);
    if (o != static_cast<u64>(rep.elliptic_orders[i]))
      return fail("elliptic image " + std::to_string(i + 1) + " has order " + std::to_string(o) + ", expected " +
                  std::to_string(rep.elliptic_orders[i]));
    if (s.cones[i] % static_cast<i64>(o) != 0) return fail("elliptic order does not divide its cone");
  }
  return true;
}

u64 dihedral_image_order(i64 n, const std::vector<DihedralElement>& im) {
  i64 g = n;
  bool refl = false;
  i64 first_refl = -1;
  for (const auto& e : im) {
    if (e.reflected) {
      // r^a s and r^b s generate r^(a-b).
      if (first_refl < 0) first_refl = e.rotation;
      else g = std::gcd(g, e.rotation - first_refl);
      refl = true;
    } else {
      g = std::gcd(g, e.rotation);
    }
  }
  g = std::abs(g);
  if (g == 0) g = n;
  u64 rot = static_cast<u64>(n / g);
  return refl ? 2 * rot : rot;
}

}  // namespace

bool check_witness(const SmoothRep& rep, std::string* why) {
  const Witness& w = rep.witness;
  switch (w.kind) {
    case Witness::Kind::none:
      if (why) *why = "no witness";
      return false;
    case Witness::Kind::dihedral: {
      DihedralGroup D(w.dihedral_n);
      if (!check_images(D, rep, w.dihedral, why)) return false;
      if (rep.target.order != static_cast<unsigned long>(dihedral_image_order(w.dihedral_n, w.dihedral))) {
        if (why) *why = "image order differs from the target";
        return false;
      }
      return true;
    }
    case Witness::Kind::psl2: {
      PSL2 G(w.q);
      if (!check_images(G, rep, w.psl, why)) return false;
      if (G.subgroup_order(w.psl) != rep.target.order) {
        if (why) *why = "image order differs from the target";
        return false;
      }
      return true;
    }
    case Witness::Kind::table: {
      GroupTable T = make_table(rep.target);
      struct View {
        const GroupTable& T;
        GroupTable::Elem identity() const { return T.identity(); }
        GroupTable::Elem mul(GroupTable::Elem a, GroupTable::Elem b) const { return T.mul(a, b); }
        GroupTable::Elem inv(GroupTable::Elem a) const { return T.inv(a); }
        u64 element_order(GroupTable::Elem a) const { return T.element_order(a); }
      } view{T};
      if (!check_images(view, rep, w.table, why)) return false;
      if (!T.generates(w.table)) {
        if (why) *why = "images do not generate the target";
        return false;
      }
      return true;
    }
  }
  return false;
}

// ---- Macbeath ----

bool macbeath_admits(const std::vector<i64>& m, u64 q) {
  if (m.size() < 3) throw PreconditionError("the criterion needs at least three cone orders");
  u64 ell = 0;
  if (!is_odd_prime_power(q, &ell)) throw PreconditionError(std::to_string(q) + " is not an odd prime power");
  for (i64 v : m) {
    if (v < 2) throw PreconditionError("cone orders must be finite and at least 2");
    u64 u = static_cast<u64>(v);
    if (u != ell && ((q - 1) / 2) % u != 0 && ((q + 1) / 2) % u != 0) return false;
  }
  return true;
}

bool macbeath_admits_refined(const std::vector<i64>& m, u64 q) {
  if (!macbeath_admits(m, q)) return false;
  u64 ell = 0;
  is_odd_prime_power(q, &ell);
  if (m.size() == 3 && q % 4 == 3) {
    std::vector<i64> s = m;
    std::sort(s.begin(), s.end());
    if (s[0] == 2 && s[1] == 2 && static_cast<u64>(s[2]) == ell) return false;
  }
  return true;
}

// ---- dihedral ----

SmoothRep smooth_dihedral(const std::vector<i64>& m, i64 genus, i64 punctures) {
  if (m.empty()) throw PreconditionError("smooth_dihedral needs at least one cone");
  if (genus < 1) throw PreconditionError("smooth_dihedral needs genus at least 1");
  if (punctures < 0) throw PreconditionError("negative puncture count");
  for (i64 v : m)
    if (v < 2) throw PreconditionError("cone orders must be finite and at least 2");
  i64 M = static_cast<i64>(lcm_of(m));
  i64 sum = 0;
  for (i64 v : m) sum += M / v;
  i64 n, rot_a, scale;
  if (M % 2 == 1) {
    n = M;
    scale = 1;
    rot_a = -((M + 1) / 2) * sum;
  } else {
    n = 2 * M;
    scale = 2;
    rot_a = -sum;
  }
  DihedralGroup D(n);
  SmoothRep rep;
  rep.source = Signature{genus, punctures, m};
  rep.elliptic_orders = m;
  rep.parabolic_orders.assign(static_cast<std::size_t>(punctures), 1);
  Witness& w = rep.witness;
  w.kind = Witness::Kind::dihedral;
  w.dihedral_n = n;
  w.dihedral.push_back(D.r(rot_a));
  w.dihedral.push_back(D.s());
  for (i64 i = 1; i < genus; ++i) {
    w.dihedral.push_back(D.identity());
    w.dihedral.push_back(D.identity());
  }
  for (i64 t = 0; t < punctures; ++t) w.dihedral.push_back(D.identity());
  for (i64 v : m) w.dihedral.push_back(D.r(scale * M / v));
  rep.target = GroupDescriptor::dihedral(dihedral_image_order(n, w.dihedral));
  return rep;
}

// ---- prime search ----

namespace {

int vp(u64 p, u64 n) {
  auto v = valuation(p, n);
  return v ? static_cast<int>(*v) : 0;
}

}  // namespace

PrimeSearchSpec prime_search_spec(const Factor& x) {
  PrimeSearchSpec sp;
  for (i64 v : x.parent)
    if (v < 1) throw PreconditionError("find_q needs finite cone orders");
  sp.X = lcm_of(x.values);
  sp.M = lcm_of(x.parent);
  if (sp.M % sp.X != 0) throw PreconditionError("x is not a factor of m");
  for (u64 p : prime_divisors(sp.M))
    if (vp(p, sp.X) < vp(p, sp.M)) sp.P.push_back(p);
  bool two = sp.X % 2 == 0, three = sp.X % 3 == 0;
  for (u64 p : sp.P) {
    if (!two && p == 2) continue;
    if (!three && p == 3) continue;
    sp.P1.push_back(p);
  }
  if (!two && sp.M % 2 == 0)
    for (u64 l : prime_divisors(sp.M))
      if ((sp.M / l) % 2 == 0) sp.P2.push_back(l);
  if (!three && sp.M % 3 == 0)
    for (u64 l : prime_divisors(sp.M))
      if ((sp.M / l) % 3 == 0) sp.P3.push_back(l);
  for (u64 p : sp.P1) sp.moduli.push_back(2 * ipow(p, static_cast<unsigned>(vp(p, sp.X) + 1)));
  for (u64 p : sp.P2) sp.moduli.push_back(4 * p);
  for (u64 p : sp.P3) sp.moduli.push_back(6 * p);
  sp.modulus_lcm = 2 * sp.X;
  for (u64 mu : sp.moduli) sp.modulus_lcm = checked_lcm(sp.modulus_lcm, mu);
  return sp;
}

bool satisfies_spec(const PrimeSearchSpec& sp, u64 q) {
  if (q % (2 * sp.X) != 1 % (2 * sp.X)) return false;
  for (u64 mu : sp.moduli) {
    u64 r = q % mu;
    if (r == 1 || r == mu - 1) return false;
  }
  return true;
}

bool is_small_prime_power(u64 q) {
  int e = 0;
  return is_odd_prime_power(q, nullptr, &e) && e <= 3;
}

namespace {

// k = r (mod n) merged into k = r0 (mod n0); false when inconsistent.
bool crt_merge(u64& r0, u64& n0, u64 r, u64 n) {
  BigInt a = static_cast<unsigned long>(r0), m = static_cast<unsigned long>(n0);
  BigInt b = static_cast<unsigned long>(r), nn = static_cast<unsigned long>(n);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), nn.get_mpz_t());
  BigInt diff = b - a;
  if (diff % g != 0) return false;
  BigInt m_g = m / g, n_g = nn / g, inv;
  if (n_g == 1) inv = 0;
  else mpz_invert(inv.get_mpz_t(), m_g.get_mpz_t(), n_g.get_mpz_t());
  BigInt t = (diff / g) * inv;
  t %= n_g;
  if (t < 0) t += n_g;
  BigInt l = m * n_g;
  BigInt res = (a + m * t) % l;
  if (!res.fits_ulong_p() || !l.fits_ulong_p()) throw CapacityError("CRT modulus overflow");
  r0 = res.get_ui();
  n0 = l.get_ui();
  return true;
}

void constructive_route(const Factor& x, FindQResult& out) {
  const PrimeSearchSpec& sp = out.spec;
  struct Item {
    u64 p, star, period;
  };
  std::vector<Item> items;
  std::size_t mi = 0;
  for (u64 p : sp.P1) items.push_back({p, sp.moduli[mi++], p});
  for (u64 p : sp.P2) items.push_back({p, sp.moduli[mi++], 2 * p});
  for (u64 p : sp.P3) items.push_back({p, sp.moduli[mi++], 3 * p});
  // Least k_p per prime across the families it belongs to.
  std::map<u64, std::pair<u64, u64>> choice;  // p -> (k_p, period)
  for (const Item& it : items) {
    std::optional<u64> kp;
    if (sp.X % it.p == 0) {
      kp = 1;
    } else {
      for (u64 k = 1; k < it.period && !kp; ++k) {
        u64 v = (1 + k * 2 * sp.X) % it.star;
        if (v != 1 && v != it.star - 1 && (1 + k * 2 * sp.X) % it.p != 0) kp = k;
      }
    }
    if (!kp) return;
    auto f = choice.find(it.p);
    if (f == choice.end() || *kp < f->second.first) choice[it.p] = {*kp, it.period};
  }
  u64 k = 0, n = 1;
  for (auto& [p, kp] : choice)
    if (!crt_merge(k, n, kp.first % kp.second, kp.second)) return;
  if (k == 0) k = n;
  out.constructive_k = k;
  (void)x;
  u64 L = sp.modulus_lcm;
  for (u64 q = 1 + 2 * k * sp.X; q <= out.ceiling; q += L) {
    if (is_prime(q) && satisfies_spec(sp, q)) {
      out.constructive_q = q;
      return;
    }
    if (q > UINT64_MAX - L) return;
  }
}

}  // namespace

FindQResult find_q(const Factor& x, u64 max_scan, bool diagnostics) {
  FindQResult out;
  out.spec = prime_search_spec(x);
  BigInt D = 2 * BigInt(static_cast<unsigned long>(out.spec.modulus_lcm));
  BigInt linnik;
  mpz_pow_ui(linnik.get_mpz_t(), D.get_mpz_t(), 5);
  out.ceiling = linnik < static_cast<unsigned long>(max_scan) ? linnik.get_ui() : max_scan;
  u64 step = 2 * out.spec.X;
  for (u64 q = 1 + step; q <= out.ceiling; q += step) {
    if (is_small_prime_power(q) && satisfies_spec(out.spec, q)) {
      out.q = q;
      break;
    }
  }
  if (diagnostics) constructive_route(x, out);
  if (out.q == 0) throw ScanCapError("no admissible prime power found", out.ceiling);
  return out;
}

// ---- PSL(2,q) tuples ----

namespace {

std::mt19937_64 seeded(u64 q, const std::vector<i64>& orders, u64 salt) {
  std::vector<std::uint32_t> seq{static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(q >> 32),
                                 static_cast<std::uint32_t>(salt)};
  for (i64 o : orders) seq.push_back(static_cast<std::uint32_t>(o));
  std::seed_seq ss(seq.begin(), seq.end());
  return std::mt19937_64(ss);
}

Mat2 random_of_order(const PSL2& G, const Mat2& rep, u64 c, std::mt19937_64& rng) {
  if (c == 1) return G.identity();
  std::uniform_int_distribution<u64> U(1, c - 1);
  u64 j;
  do j = U(rng);
  while (std::gcd(j, c) != 1);
  return G.random_conjugate(G.pow(rep, j), rng);
}

GroupDescriptor image_descriptor(const PSL2& G, const std::vector<Mat2>& images) {
  GroupDescriptor d;
  d.param = G.q();
  d.order = G.subgroup_order(images);
  if (d.order == G.order()) {
    d.kind = GroupKind::psl2;
  } else {
    d.kind = GroupKind::psl2_subgroup;
    for (const Mat2& m : images)
      if (!G.is_identity(m)) d.generators.push_back(m);
  }
  return d;
}

constexpr int kImageTries = 8;

}  // namespace

std::optional<std::vector<Mat2>> psl2_product_one_tuple(const PSL2& G, const std::vector<i64>& orders, u64 salt) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 1) throw PreconditionError("orders must be positive");
    if (orders[i] > 1) pos.push_back(i);
    if (!G.has_element_of_order(static_cast<u64>(orders[i]))) return std::nullopt;
  }
  std::vector<Mat2> out(orders.size(), G.identity());
  auto rng = seeded(G.q(), orders, salt);
  if (pos.empty()) return out;
  if (pos.size() == 1) return std::nullopt;
  std::vector<Mat2> reps;
  for (std::size_t i : pos) reps.push_back(G.element_of_order(static_cast<u64>(orders[i])));
  std::size_t kk = pos.size();
  auto ord = [&](std::size_t j) { return static_cast<u64>(orders[pos[j]]); };
  if (kk == 2) {
    if (ord(0) != ord(1)) return std::nullopt;
    Mat2 x = random_of_order(G, reps[0], ord(0), rng);
    out[pos[0]] = x;
    out[pos[1]] = G.inv(x);
    return out;
  }
  const u64 inner = std::max<u64>(4000, 60 * G.q());
  for (int outer = 0; outer < 48; ++outer) {
    std::vector<Mat2> xs(kk);
    Mat2 u = G.identity();
    for (std::size_t j = 0; j + 2 < kk; ++j) {
      xs[j] = j == 0 && outer == 0 ? reps[0] : random_of_order(G, reps[j], ord(j), rng);
      u = G.mul(u, xs[j]);
    }
    for (u64 t = 0; t < inner; ++t) {
      Mat2 y = random_of_order(G, reps[kk - 2], ord(kk - 2), rng);
      Mat2 uy = G.mul(u, y);
      if (G.element_order(uy) != ord(kk - 1)) continue;
      xs[kk - 2] = y;
      xs[kk - 1] = G.inv(uy);
      for (std::size_t j = 0; j < kk; ++j) out[pos[j]] = xs[j];
      return out;
    }
  }
  return std::nullopt;
}

SmoothRep psl2_rep(const Signature& s, u64 q, const std::vector<i64>& parabolic, const std::vector<i64>& elliptic) {
  if (parabolic.size() != static_cast<std::size_t>(s.punctures) || elliptic.size() != s.k())
    throw PreconditionError("order lists do not match the signature");
  for (std::size_t i = 0; i < s.k(); ++i)
    if (elliptic[i] < 1 || s.cones[i] % elliptic[i] != 0) throw PreconditionError("elliptic orders must divide the cones");
  PSL2 G(q);
  std::vector<i64> orders = parabolic;
  orders.insert(orders.end(), elliptic.begin(), elliptic.end());
  SmoothRep best;
  for (int attempt = 0; attempt < kImageTries; ++attempt) {
    auto tuple = psl2_product_one_tuple(G, orders, static_cast<u64>(attempt));
    if (!tuple) {
      if (attempt == 0) break;
      continue;
    }
    SmoothRep rep;
    rep.source = s;
    rep.parabolic_orders = parabolic;
    rep.elliptic_orders = elliptic;
    rep.witness.kind = Witness::Kind::psl2;
    rep.witness.q = q;
    rep.witness.psl.assign(static_cast<std::size_t>(2 * s.genus), G.identity());
    rep.witness.psl.insert(rep.witness.psl.end(), tuple->begin(), tuple->end());
    rep.target = image_descriptor(G, rep.witness.psl);
    bool full = rep.target.kind == GroupKind::psl2;
    if (best.witness.kind == Witness::Kind::none || rep.target.order > best.target.order) best = std::move(rep);
    if (full) break;
  }
  if (best.witness.kind == Witness::Kind::none)
    throw InternalContradiction("no product-one tuple of orders " + join_ints(orders) + " found in PSL(2," +
                                std::to_string(q) + ")");
  return best;
}

SmoothRep psl2_free_rep(const Signature& s, u64 q, const std::vector<i64>& elliptic, std::optional<u64> first_parabolic) {
  std::size_t p = static_cast<std::size_t>(s.punctures);
  if (p < 1 || (first_parabolic && p < 2)) throw PreconditionError("not enough punctures for the free construction");
  if (elliptic.size() != s.k()) throw PreconditionError("order list does not match the signature");
  PSL2 G(q);
  SmoothRep best;
  for (int attempt = 0; attempt < kImageTries; ++attempt) {
    std::vector<i64> key = elliptic;
    key.push_back(first_parabolic ? static_cast<i64>(*first_parabolic) : 0);
    auto rng = seeded(q, key, static_cast<u64>(attempt));
    std::size_t g2 = static_cast<std::size_t>(2 * s.genus);
    std::vector<Mat2> im(g2 + p + s.k(), G.identity());
    if (first_parabolic) im[g2] = random_of_order(G, G.element_of_order(*first_parabolic), *first_parabolic, rng);
    Mat2 prod = G.identity();
    for (std::size_t i = 0; i < s.k(); ++i) {
      u64 c = static_cast<u64>(elliptic[i]);
      if (c < 1 || s.cones[i] % elliptic[i] != 0) throw PreconditionError("elliptic orders must divide the cones");
      im[g2 + p + i] = random_of_order(G, G.element_of_order(c), c, rng);
      prod = G.mul(prod, im[g2 + p + i]);
    }
    Mat2 before = G.identity();
    for (std::size_t t = 0; t + 1 < p; ++t) before = G.mul(before, im[g2 + t]);
    im[g2 + p - 1] = G.mul(G.inv(before), G.inv(prod));
    SmoothRep rep;
    rep.source = s;
    rep.elliptic_orders = elliptic;
    for (std::size_t t = 0; t < p; ++t) rep.parabolic_orders.push_back(static_cast<i64>(G.element_order(im[g2 + t])));
    rep.witness.kind = Witness::Kind::psl2;
    rep.witness.q = q;
    rep.witness.psl = std::move(im);
    rep.target = image_descriptor(G, rep.witness.psl);
    bool full = rep.target.kind == GroupKind::psl2;
    if (best.witness.kind == Witness::Kind::none || rep.target.order > best.target.order) best = std::move(rep);
    if (full) break;
  }
  return best;
}

// ---- maximal smoothness ----

Smoothness maximal_smoothness(const GroupTable& G, const Signature& s) {
  std::set<u64> present = G.element_orders();
  std::vector<std::vector<i64>> options;
  for (i64 m : s.cones) {
    std::vector<i64> o;
    for (u64 d : divisors(static_cast<u64>(m)))
      if (present.count(d)) o.push_back(static_cast<i64>(d));
    options.push_back(std::move(o));
  }
  std::vector<std::pair<Rational, std::vector<i64>>> cands;
  std::set<std::vector<std::pair<i64, i64>>> seen;
  std::vector<i64> cur(s.k());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == s.k()) {
      std::vector<std::pair<i64, i64>> key;
      for (std::size_t j = 0; j < s.k(); ++j) key.push_back({s.cones[j], cur[j]});
      std::sort(key.begin(), key.end());
      if (seen.insert(key).second) cands.push_back({euler_char(s.genus, s.punctures, cur), cur});
      return;
    }
    for (i64 v : options[i]) {
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::sort(cands.begin(), cands.end());
  for (auto& [chi, c] : cands)
    if (exists_epimorphism(s, G, c)) return {c, chi};
  throw PreconditionError(G.name() + " is not a quotient of " + to_string(s));
}

// ---- kernels ----

Signature kernel_signature(const Signature& s, u64 n, const std::vector<i64>& parabolic_orders,
                           const std::vector<i64>& elliptic_orders) {
  if (n < 1) throw PreconditionError("group order must be positive");
  if (parabolic_orders.size() != static_cast<std::size_t>(s.punctures) || elliptic_orders.size() != s.k())
    throw PreconditionError("order lists do not match the signature");
  i64 N = static_cast<i64>(n);
  Signature k;
  for (i64 d : parabolic_orders) {
    if (d < 1 || N % d != 0) throw InconsistencyError("parabolic order " + std::to_string(d) + " does not divide |G|");
    k.punctures += N / d;
  }
  for (std::size_t i = 0; i < s.k(); ++i) {
    i64 c = elliptic_orders[i], m = s.cones[i];
    if (c < 1 || m % c != 0) throw PreconditionError("elliptic orders must divide the cones");
    if (N % c != 0) throw InconsistencyError("elliptic order " + std::to_string(c) + " does not divide |G|");
    if (m / c > 1) k.cones.insert(k.cones.end(), static_cast<std::size_t>(N / c), m / c);
  }
  Rational two_minus = Rational(2 - k.punctures) - Rational(N) * euler_char(s.genus, s.punctures, elliptic_orders);
  two_minus.canonicalize();
  if (two_minus.get_den() != 1 || two_minus.get_num() < 0 || two_minus.get_num() % 2 != 0)
    throw InconsistencyError("Riemann-Hurwitz gives a non-integral genus");
  k.genus = BigInt(two_minus.get_num() / 2).get_si();
  return normalize(k);
}

}  // namespace fuchsian
