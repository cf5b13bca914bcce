#include "fuchsian/distinguisher.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "fuchsian/errors.hpp"

namespace fuchsian {

std::string side_name(Side s) { return s == Side::left ? "left" : "right"; }

BigInt extension_rank(const Signature& winner, const BigInt& G_order, const std::vector<i64>& c) {
  if (c.size() != winner.k()) throw PreconditionError("smooth factor length differs from the cone count");
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] < 1 || winner.cones[i] % c[i] != 0) throw PreconditionError("smooth factor must divide the cones");
  Rational f = Rational(winner.punctured() ? 1 : 2) - Rational(G_order) * euler_char(winner.genus, winner.punctures, c);
  f.canonicalize();
  if (f.get_den() != 1 || f.get_num() <= 0)
    throw InconsistencyError("extension rank " + f.get_str() + " is not a positive integer");
  return f.get_num();
}

BigInt kernel_betti(const Signature& s, const BigInt& G_order, const std::vector<i64>& d) {
  Rational f = Rational(s.punctured() ? 1 : 2) - Rational(G_order) * euler_char(s.genus, s.punctures, d);
  f.canonicalize();
  if (f.get_den() != 1) throw InconsistencyError("non-integral Betti number");
  return f.get_num();
}

u64 select_extension_exponent(u64 M_left, u64 M_right) {
  u64 L = checked_lcm(M_left, M_right);
  for (u64 a = 2; a <= L + 1; ++a)
    if (std::gcd(a, L) == 1) return a;
  throw InternalContradiction("L+1 is always coprime to L");
}

FactoredInteger certificate_order(u64 a, const BigInt& f, const BigInt& G_order) {
  if (a < 2) throw PreconditionError("extension exponent must be at least 2");
  if (f < 0) throw PreconditionError("extension rank must be non-negative");
  if (G_order < 1 || !G_order.fits_ulong_p()) throw CapacityError("group order out of range");
  return FactoredInteger::power(a, f) * FactoredInteger(G_order.get_ui());
}

namespace {

std::string exponent_text(const BigInt& E, u64 L, i64 e2) {
  std::string s = E.get_str();
  if (s.size() <= 40) return s;
  return "15 + " + std::to_string(L) + "^" + std::to_string(e2);
}

}  // namespace

BoundReport check_bound(u64 L, i64 b, i64 k, u64 a, const BigInt& f, const BigInt& G_order) {
  BoundReport r;
  r.base = L + 1;
  i64 e2 = 15 * (b + k);
  BigInt Lz = static_cast<unsigned long>(L);
  mpz_pow_ui(r.exponent.get_mpz_t(), Lz.get_mpz_t(), static_cast<unsigned long>(e2));
  r.exponent += 15;
  std::string et = exponent_text(r.exponent, L, e2);
  std::string ft;
  FactoredInteger base_factors(r.base);
  for (auto& [p, e] : base_factors.exponents()) {
    if (!ft.empty()) ft += " * ";
    ft += std::to_string(p) + "^(" + (e == 1 ? et : e.get_str() + "*(" + et + ")") + ")";
  }
  r.exponent_factored = ft;
  if (a > r.base) return r;
  // a^f |G| <= (L+1)^(f + t) with (L+1)^t >= |G|.
  BigInt t = 0, pw = 1, base = static_cast<unsigned long>(r.base);
  while (pw < G_order) {
    pw *= base;
    t += 1;
  }
  if (f + t <= r.exponent) {
    r.satisfied = true;
    return r;
  }
  if (!r.exponent.fits_ulong_p() || r.exponent > 50'000'000 || !f.fits_ulong_p() || f > 50'000'000) return r;
  BigInt lhs, rhs, az = static_cast<unsigned long>(a);
  mpz_pow_ui(lhs.get_mpz_t(), az.get_mpz_t(), f.get_ui());
  lhs *= G_order;
  mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), r.exponent.get_ui());
  r.satisfied = lhs <= rhs;
  return r;
}

std::vector<u64> element_orders_of(const GroupDescriptor& g) {
  std::set<u64> s{1};
  switch (g.kind) {
    case GroupKind::trivial: break;
    case GroupKind::cyclic:
      for (u64 d : divisors(g.param)) s.insert(d);
      break;
    case GroupKind::dihedral:
      for (u64 d : divisors(g.param / 2)) s.insert(d);
      s.insert(2);
      break;
    case GroupKind::alternating: s = {1, 2, 3}; break;
    case GroupKind::psl2: {
      auto o = PSL2(g.param).element_orders();
      s.insert(o.begin(), o.end());
      break;
    }
    case GroupKind::psl2_subgroup: {
      PSL2 G(g.param);
      if (g.order <= 100000) {
        for (const Mat2& m : G.generated_subgroup(g.generators)) s.insert(G.element_order(m));
      } else {
        auto o = G.element_orders();
        s.insert(o.begin(), o.end());
      }
      break;
    }
    case GroupKind::abelian: {
      u64 e = lcm_of(g.invariants);
      for (u64 d : divisors(e)) s.insert(d);
      break;
    }
  }
  return {s.begin(), s.end()};
}

namespace {

bool is_nonabelian(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupKind::trivial:
    case GroupKind::cyclic:
    case GroupKind::abelian: return false;
    case GroupKind::dihedral: return g.param > 4;
    case GroupKind::alternating:
    case GroupKind::psl2: return true;
    case GroupKind::psl2_subgroup: {
      PSL2 G(g.param);
      for (const Mat2& x : g.generators)
        for (const Mat2& y : g.generators)
          if (G.mul(x, y) != G.mul(y, x)) return true;
      return false;
    }
  }
  return true;
}

std::vector<i64> best_factor(const std::vector<i64>& entries, const std::function<bool(u64)>& has) {
  std::vector<i64> out;
  for (i64 v : entries) {
    auto ds = divisors(static_cast<u64>(v));
    i64 best = 1;
    for (auto it = ds.rbegin(); it != ds.rend(); ++it)
      if (has(*it)) {
        best = static_cast<i64>(*it);
        break;
      }
    out.push_back(best);
  }
  return out;
}

std::vector<i64> strip_ones(const std::vector<i64>& c) {
  std::vector<i64> s;
  for (i64 v : c)
    if (v != 1) s.push_back(v);
  std::sort(s.begin(), s.end());
  return s;
}

template <class Pred>
u64 scan_prime_powers(u64 cap, Pred ok, const char* what) {
  for (u64 q = 3; q <= cap; q += 2)
    if (is_small_prime_power(q) && ok(q)) return q;
  throw ScanCapError(std::string("no prime power found for ") + what, cap);
}

bool divides_half(u64 d, u64 q) { return ((q - 1) / 2) % d == 0 || ((q + 1) / 2) % d == 0; }

std::function<bool(u64)> psl_orders(u64 q) {
  u64 ell = 0;
  is_odd_prime_power(q, &ell);
  return [q, ell](u64 d) { return d == 1 || d == ell || divides_half(d, q); };
}

void use_rep(QuotientCertificate& cert, SmoothRep rep) {
  cert.base_group = rep.target;
  cert.smooth_factor = rep.elliptic_orders;
  cert.rep = std::move(rep);
}

// Canonical side order so that swapping the inputs makes the same choices.
bool left_first(const Signature& l, const Signature& r) { return to_string(l) <= to_string(r); }

void branch_abelian_torsion(QuotientCertificate& cert, const Signature& l, const Signature& r,
                            const AbelianInvariants& Al, const AbelianInvariants& Ar) {
  cert.trace.push_back("B");
  auto attempt = [&](auto make_G) -> bool {
    std::vector<std::pair<std::pair<u64, int>, Side>> ok;
    for (Side s : {Side::left, Side::right}) {
      const AbelianInvariants& W = s == Side::left ? Al : Ar;
      const AbelianInvariants& O = s == Side::left ? Ar : Al;
      std::vector<i64> G = make_G(W);
      std::vector<i64> Q(static_cast<std::size_t>(cert.b), static_cast<i64>(cert.a));
      Q.insert(Q.end(), G.begin(), G.end());
      if (is_abelian_quotient(Q, W) && !is_abelian_quotient(Q, O)) {
        int rank = (s == Side::left) == left_first(l, r) ? 0 : 1;
        ok.push_back({{lcm_of(G) == 0 ? 0 : GroupDescriptor::abelian(G).order.get_ui(), rank}, s});
      }
    }
    if (ok.empty()) return false;
    std::sort(ok.begin(), ok.end());
    Side s = ok.front().second;
    cert.winner = s;
    cert.abelian_factors = make_G(s == Side::left ? Al : Ar);
    return true;
  };
  bool done = attempt([](const AbelianInvariants& W) { return W.stripped_torsion(); });
  if (!done) {
    u64 t = checked_lcm(Al.stripped_torsion().empty() ? 1 : static_cast<u64>(Al.stripped_torsion().back()),
                        Ar.stripped_torsion().empty() ? 1 : static_cast<u64>(Ar.stripped_torsion().back()));
    cert.notes.push_back("neither Z_a^b x Tor side separates; using Z_a^b x Z_" + std::to_string(t) + "^b x Tor");
    done = attempt([&](const AbelianInvariants& W) {
      std::vector<i64> G(static_cast<std::size_t>(cert.b), static_cast<i64>(t));
      auto T = W.stripped_torsion();
      G.insert(G.end(), T.begin(), T.end());
      return G;
    });
  }
  if (!done) throw InternalContradiction("no separating abelian quotient found");
  cert.base_group = GroupDescriptor::abelian(cert.abelian_factors);
  cert.f = cert.b;
}

void branch_mixed(QuotientCertificate& cert, const Signature& l, const Signature& r, const DistinguishOptions& opt) {
  Side cs = l.punctured() ? Side::right : Side::left;
  const Signature& C = cs == Side::left ? l : r;
  const Signature& P = cs == Side::left ? r : l;
  Rational chi_c = euler_char(C), chi_p = euler_char(P);
  if (chi_c <= chi_p) {
    cert.trace.push_back("C1");
    cert.winner = cs;
    if (C.cones.empty()) {
      cert.base_group = GroupDescriptor::trivial();
      cert.smooth_factor = {};
    } else if (C.genus >= 1) {
      use_rep(cert, smooth_dihedral(C.cones, C.genus, 0));
    } else {
      cert.q = scan_prime_powers(opt.max_scan, [&](u64 q) { return macbeath_admits_refined(C.cones, q); },
                                 "a smooth PSL(2,q) quotient");
      use_rep(cert, psl2_rep(C, cert.q, {}, C.cones));
    }
  } else {
    cert.trace.push_back("C2");
    cert.winner = cs == Side::left ? Side::right : Side::left;
    u64 N = lcm_of(P.cones), u = cert.L + 1;
    cert.q = scan_prime_powers(opt.max_scan, [&](u64 q) { return divides_half(N, q) && divides_half(u, q); },
                               "the parabolic construction");
    if (P.punctures >= 2) use_rep(cert, psl2_free_rep(P, cert.q, P.cones, u));
    else use_rep(cert, psl2_rep(P, cert.q, {static_cast<i64>(u)}, P.cones));
    if (cert.base_group.order <= static_cast<unsigned long>(cert.L))
      throw InternalContradiction("parabolic construction produced a group of order at most L");
  }
  const Signature& W = cert.winner == Side::left ? l : r;
  cert.f = extension_rank(W, cert.base_group.order, cert.smooth_factor);
}

void branch_small(QuotientCertificate& cert, const Signature& l, const Signature& r, const DistinguishOptions& opt) {
  cert.trace.push_back("D1");
  Rational cl = euler_char(l), cr = euler_char(r);
  if (cl == cr) throw InternalContradiction("equal Euler characteristics with at most two cones");
  cert.winner = cl < cr ? Side::left : Side::right;
  const Signature& W = cert.winner == Side::left ? l : r;
  if (W.punctured()) {
    cert.q = scan_prime_powers(
        opt.max_scan,
        [&](u64 q) {
          return std::all_of(W.cones.begin(), W.cones.end(), [&](i64 m) { return divides_half(static_cast<u64>(m), q); });
        },
        "the punctured small case");
    std::vector<i64> parabolic(static_cast<std::size_t>(W.punctures), 1);
    std::size_t twos = 3 - std::min<std::size_t>(3, W.k());
    for (std::size_t t = 0; t < twos && t < parabolic.size(); ++t) parabolic[t] = 2;
    use_rep(cert, psl2_rep(W, cert.q, parabolic, W.cones));
  } else {
    if (W.genus < 1) throw InternalContradiction("unpunctured group with at most two cones and genus 0");
    use_rep(cert, smooth_dihedral(W.cones, W.genus, 0));
  }
  cert.f = extension_rank(W, cert.base_group.order, cert.smooth_factor);
}

void branch_scrapes(QuotientCertificate& cert, const Signature& l, const Signature& r, const DistinguishOptions& opt) {
  cert.trace.push_back("D2");
  std::size_t k = static_cast<std::size_t>(cert.k);
  std::vector<i64> mp = pad_with_ones(l.cones, k), np = pad_with_ones(r.cones, k);
  if (is_good(mp) && is_good(np)) {
    try {
      GoodScrape gs = find_good_distinguishing_scrape(mp, np);
      cert.notes.push_back("good distinguishing scrape t=" + std::to_string(gs.t) + " clause " +
                           std::to_string(gs.clause) + " favours " + side_name(gs.winner));
      if (opt.lemma_diagnostics) {
        const std::vector<i64>& wm = gs.winner == Side::left ? mp : np;
        try {
          FindQResult fq = find_q(gcd_factor(wm, gs.t), 1'000'000);
          cert.notes.push_back("lemma prime power q=" + std::to_string(fq.q));
        } catch (const ScanCapError& e) {
          cert.notes.push_back(std::string("lemma prime power not found: ") + e.what());
        }
      }
    } catch (const Error& e) {
      cert.notes.push_back(std::string("scrape search skipped: ") + e.what());
    }
  } else {
    cert.notes.push_back("scrape search skipped: a padded cone list is bad");
  }

  const bool punctured = l.punctured();
  const i64 g = l.genus, p = l.punctures;
  auto realizable = [&](const std::vector<i64>& best, u64 q) {
    if (punctured) return true;
    auto s = strip_ones(best);
    return s.size() >= 3 && macbeath_admits_refined(s, q);
  };
  auto build = [&](Side w, const std::vector<i64>& best) {
    const Signature& W = w == Side::left ? l : r;
    std::vector<i64> c(best.end() - static_cast<std::ptrdiff_t>(W.k()), best.end());
    return punctured ? psl2_free_rep(W, cert.q, c) : psl2_rep(W, cert.q, {}, c);
  };

  for (u64 q = 3; q <= opt.max_scan; q += 2) {
    if (!is_small_prime_power(q)) continue;
    auto has = psl_orders(q);
    std::vector<i64> bl = best_factor(mp, has), br = best_factor(np, has);
    Rational xl = euler_char(g, p, bl), xr = euler_char(g, p, br);
    if (xl != xr) {
      Side w = xl < xr ? Side::left : Side::right;
      const auto& bw = w == Side::left ? bl : br;
      if (realizable(bw, q)) {
        cert.q = q;
        cert.winner = w;
        use_rep(cert, build(w, bw));
        cert.notes.push_back("q=" + std::to_string(q) + ": chi of best factors " + join_ints(bl) + " vs " + join_ints(br));
        break;
      }
    }
    if (!punctured && g == 0) {
      bool found = false;
      for (Side w : left_first(l, r) ? std::vector<Side>{Side::left, Side::right} : std::vector<Side>{Side::right, Side::left}) {
        const auto& bw = w == Side::left ? bl : br;
        const auto& bo = w == Side::left ? br : bl;
        if (strip_ones(bo).size() >= 3 || !realizable(bw, q)) continue;
        cert.q = q;
        SmoothRep rep = build(w, bw);
        if (!is_nonabelian(rep.target)) continue;
        cert.winner = w;
        use_rep(cert, std::move(rep));
        cert.notes.push_back("q=" + std::to_string(q) + ": loser has fewer than three nontrivial images, so only cyclic quotients");
        found = true;
        break;
      }
      if (found) break;
    }
  }
  if (!cert.rep) throw ScanCapError("no certifying prime power found", opt.max_scan);
  const Signature& W = cert.winner == Side::left ? l : r;
  cert.f = extension_rank(W, cert.base_group.order, cert.smooth_factor);
}

}  // namespace

QuotientCertificate distinguish(const Signature& left, const Signature& right, const DistinguishOptions& opt) {
  Signature l = normalize(left), r = normalize(right);
  if (!is_fuchsian(l)) throw NotFuchsianError("left signature " + to_string(l) + " is not Fuchsian");
  if (!is_fuchsian(r)) throw NotFuchsianError("right signature " + to_string(r) + " is not Fuchsian");
  if (l == r) throw IsomorphicInputsError("the signatures are isomorphic: " + to_string(l));

  QuotientCertificate cert;
  u64 M = lcm_of(l.cones), N = lcm_of(r.cones);
  cert.L = checked_lcm(M, N);
  cert.b = std::max(first_betti(l), first_betti(r));
  cert.k = static_cast<i64>(std::max(l.k(), r.k()));
  cert.a = select_extension_exponent(M, N);

  AbelianInvariants Al = abelianize(l), Ar = abelianize(r);
  if (Al.free_rank != Ar.free_rank) {
    cert.trace.push_back("A");
    cert.winner = Al.free_rank > Ar.free_rank ? Side::left : Side::right;
    const Signature& W = cert.winner == Side::left ? l : r;
    cert.base_group = GroupDescriptor::trivial();
    cert.smooth_factor.assign(W.k(), 1);
    cert.f = first_betti(W);
  } else if (!(Al == Ar)) {
    branch_abelian_torsion(cert, l, r, Al, Ar);
  } else if (l.punctured() != r.punctured()) {
    branch_mixed(cert, l, r, opt);
  } else if (cert.k <= 2) {
    branch_small(cert, l, r, opt);
  } else {
    branch_scrapes(cert, l, r, opt);
  }

  cert.winner_sig = cert.winner == Side::left ? l : r;
  cert.loser_sig = cert.winner == Side::left ? r : l;
  if (cert.trace.front() != "B") {
    auto orders = element_orders_of(cert.base_group);
    std::set<u64> os(orders.begin(), orders.end());
    cert.loser_max_factor = best_factor(cert.loser_sig.cones, [&](u64 d) { return os.count(d) > 0; });
  }
  cert.order = certificate_order(cert.a, cert.f, cert.base_group.order);
  cert.bound = check_bound(cert.L, cert.b, cert.k, cert.a, cert.f, cert.base_group.order);
  return cert;
}

// ---- verification ----

VerificationReport verify_certificate(const QuotientCertificate& cert, const Signature& left, const Signature& right) {
  VerificationReport rep;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
    if (!ok) rep.ok = false;
  };
  Signature l = normalize(left), r = normalize(right);
  const Signature& W = cert.winner == Side::left ? l : r;
  const Signature& O = cert.winner == Side::left ? r : l;
  add("winner signature", W == cert.winner_sig && O == cert.loser_sig);
  u64 M = lcm_of(l.cones), N = lcm_of(r.cones), L = checked_lcm(M, N);
  const BigInt& G = cert.base_group.order;
  bool abelian_branch = !cert.trace.empty() && (cert.trace.front() == "A" || cert.trace.front() == "B");

  // (i) the winner realizes the base group
  if (abelian_branch) {
    std::vector<i64> Q(cert.f.get_ui(), static_cast<i64>(cert.a));
    Q.insert(Q.end(), cert.abelian_factors.begin(), cert.abelian_factors.end());
    add("winner has the abelian quotient", is_abelian_quotient(Q, abelianize(W)));
    add("loser lacks the abelian quotient", !is_abelian_quotient(Q, abelianize(O)));
  } else {
    if (cert.rep) {
      std::string why;
      bool ok = check_witness(*cert.rep, &why) && cert.rep->source == W &&
                cert.rep->elliptic_orders == cert.smooth_factor && cert.rep->target.order == G;
      add("witness relations and orders", ok, why);
    } else {
      add("trivial base group", G == 1 && std::all_of(cert.smooth_factor.begin(), cert.smooth_factor.end(),
                                                      [](i64 c) { return c == 1; }));
    }
    if (G > 1 && G <= 2000) {
      try {
        GroupTable T = make_table(cert.base_group);
        add("brute-force epimorphism with the smooth factor", exists_epimorphism(W, T, cert.smooth_factor));
      } catch (const CapacityError& e) {
        add("brute-force epimorphism with the smooth factor", true, std::string("skipped: ") + e.what());
      }
    }

    // (ii) every loser map has a smaller kernel Betti number
    auto orders = element_orders_of(cert.base_group);
    std::set<u64> os(orders.begin(), orders.end());
    std::vector<i64> best = best_factor(O.cones, [&](u64 d) { return os.count(d) > 0; });
    BigInt top = kernel_betti(O, G, best);
    if (top < cert.f) {
      rep.loser_b1_max = top;
      add("loser kernels have smaller b1", true, "max " + top.get_str() + " < " + cert.f.get_str());
    } else {
      std::vector<std::vector<i64>> opts;
      for (i64 n : O.cones) {
        std::vector<i64> o;
        for (u64 d : divisors(static_cast<u64>(n)))
          if (os.count(d)) o.push_back(static_cast<i64>(d));
        opts.push_back(o);
      }
      std::optional<GroupTable> T;
      if (G <= 2000) T.emplace(make_table(cert.base_group));
      bool nonab = is_nonabelian(cert.base_group);
      bool ok = true;
      std::string detail;
      std::optional<BigInt> mx;
      std::vector<i64> d(O.k());
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (!ok) return;
        if (i == O.k()) {
          BigInt bnd = kernel_betti(O, G, d);
          if (bnd < cert.f) {
            if (!mx || bnd > *mx) mx = bnd;
            return;
          }
          if (!O.punctured() && O.genus == 0 && strip_ones(d).size() < 3 && nonab) return;
          if (T) {
            try {
              if (!exists_epimorphism(O, *T, d)) return;
            } catch (const CapacityError&) {
            }
          }
          ok = false;
          detail = "factor " + join_ints(d) + " gives b1 " + bnd.get_str() + " >= f";
          return;
        }
        for (i64 v : opts[i]) {
          d[i] = v;
          rec(i + 1);
        }
      };
      rec(0);
      rep.loser_b1_max = mx;
      add("loser kernels have smaller b1", ok, ok ? (mx ? "max " + mx->get_str() : "no surjection") : detail);
    }
  }

  // (iii) arithmetic
  bool a_ok = cert.a == select_extension_exponent(M, N) && std::gcd(cert.a, L) == 1 && cert.a > 1 && cert.a <= L + 1;
  add("extension exponent", a_ok, "a=" + std::to_string(cert.a));
  BigInt f_expected;
  try {
    if (abelian_branch) f_expected = cert.trace.front() == "A" ? BigInt(first_betti(W)) : BigInt(cert.b);
    else f_expected = extension_rank(W, G, cert.smooth_factor);
    add("extension rank", f_expected == cert.f, "expected " + f_expected.get_str() + ", got " + cert.f.get_str());
  } catch (const Error& e) {
    add("extension rank", false, e.what());
  }
  add("order", cert.order == certificate_order(cert.a, cert.f, G));
  if (abelian_branch)
    add("abelian base order", GroupDescriptor::abelian(cert.abelian_factors).order == G);
  BoundReport b = check_bound(L, std::max(first_betti(l), first_betti(r)), static_cast<i64>(std::max(l.k(), r.k())),
                              cert.a, cert.f, G);
  add("bound", b.satisfied && cert.bound.satisfied && b.exponent == cert.bound.exponent);
  return rep;
}

}  // namespace fuchsian
