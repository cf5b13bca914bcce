#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "fuchsian/abelianization.hpp"
#include "fuchsian/distinguisher.hpp"
#include "fuchsian/errors.hpp"
#include "fuchsian/finite_groups.hpp"
#include "fuchsian/scrape_matrices.hpp"
#include "fuchsian/scrapes.hpp"
#include "fuchsian/signatures.hpp"
#include "fuchsian/smooth_reps.hpp"

namespace fuchsian::cli {
namespace {

using Json = nlohmann::ordered_json;

// Exact integers that do not fit a JSON int64 are emitted as decimal strings.
Json big(const BigInt& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

std::string rational(const Rational& x) { return x.get_str(); }

Json factored_map(const FactoredInteger& n) {
  Json m = Json::object();
  for (const auto& [p, e] : n.exponents()) m[std::to_string(p)] = big(e);
  return m;
}

Json factor_json(const Factor& f) {
  return Json{{"parent", f.parent}, {"values", f.values}, {"good", is_good(f.values)}};
}

// Signatures and multisets are both accepted where a cone list is wanted.
std::vector<i64> parse_cones(const std::string& text) {
  if (!text.empty() && text.front() == '(') {
    Signature s = parse_signature(text);
    if (s.punctured()) throw PreconditionError("expected an unpunctured signature or a cone list");
    return s.cones;
  }
  return parse_int_list(text);
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

bool is_number_array(const Json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_number(); });
}

// Text mode prints the same document as --json, one field per line.
void render_text(const Json& doc, std::ostream& out, int indent = 0) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const Json& v = it.value();
    if (v.is_object()) {
      out << pad << it.key() << ":\n";
      render_text(v, out, indent + 2);
    } else if (is_number_array(v)) {
      std::string line;
      for (const auto& e : v) line += (line.empty() ? "" : ",") + scalar_text(e);
      out << pad << it.key() << ": " << (line.empty() ? "-" : line) << "\n";
    } else if (v.is_array()) {
      out << pad << it.key() << ":\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          out << pad << "  -\n";
          render_text(e, out, indent + 4);
        } else {
          out << pad << "  - " << scalar_text(e) << "\n";
        }
      }
    } else {
      out << pad << it.key() << ": " << scalar_text(v) << "\n";
    }
  }
}

Json abelianize_cmd(const std::string& sig) {
  Signature s = parse_signature(sig);
  auto ab = abelianize(s);
  Json doc;
  doc["signature"] = to_string(s);
  doc["free_rank"] = ab.free_rank;
  doc["torsion_chain"] = ab.torsion_chain;
  doc["group"] = to_string(ab);
  return doc;
}

Json scrape_cmd(const std::string& list, i64 s) {
  auto m = parse_cones(list);
  Factor f = scrape(m, s);
  Json doc;
  doc["multiset"] = m;
  doc["s"] = s;
  doc["scrape"] = factor_json(f);
  doc["closure"] = factor_json(closure(f));
  doc["chi_reciprocal_sum"] = rational(reciprocal_sum(closure(f).values));
  return doc;
}

Json closure_cmd(const std::string& factor, const std::string& parent) {
  Factor f = make_factor(parse_cones(parent), parse_cones(factor));
  Json doc;
  doc["factor"] = factor_json(f);
  doc["closure"] = factor_json(closure(f));
  return doc;
}

Json find_scrape_cmd(const std::string& a, const std::string& b) {
  auto m = parse_cones(a), n = parse_cones(b);
  std::size_t k = std::max(m.size(), n.size());
  m = pad_with_ones(m, k);
  n = pad_with_ones(n, k);
  Json doc;
  doc["m"] = m;
  doc["n"] = n;
  i64 s = find_distinguishing_scrape(m, n);
  doc["s"] = s;
  doc["m_closure"] = factor_json(closure(scrape(m, s)));
  doc["n_closure"] = factor_json(closure(scrape(n, s)));
  if (is_good(m) && is_good(n)) {
    auto g = find_good_distinguishing_scrape(m, n);
    doc["good"] = Json{{"t", g.t},
                       {"clause", g.clause},
                       {"winner", side_name(g.winner)},
                       {"m_bar", g.m_bar.values},
                       {"n_bar", g.n_bar.values}};
  }
  return doc;
}

Json matrix_check_cmd(u64 M) {
  if (M < 1) throw PreconditionError("M must be positive");
  Json doc;
  doc["M"] = M;
  doc["tau"] = divisors(M).size();
  doc["rank_E"] = rank(build_E(M));
  doc["rank_X"] = rank(build_X(M));
  doc["rank_F_patched"] = rank(append_patch_rows(build_F(M)));
  doc["pivotless_columns_Y"] = pivotless_columns(build_Y(M));
  bool agree = build_X(M).rows == build_X_moebius(M).rows && build_X(M).rows == build_X_recursive(M).rows;
  doc["x_routes_agree"] = agree;
  doc["y_routes_agree"] = build_Y(M).rows == build_Y_recursive(M).rows;
  return doc;
}

Json epis_cmd(const std::string& sig, const std::string& group, const std::string& profile, bool count_only) {
  Signature s = parse_signature(sig);
  GroupDescriptor d = parse_group_descriptor(group);
  GroupTable G = make_table(d);
  EpiQuery q;
  if (!profile.empty()) q.profile = parse_int_list(profile);
  q.collect = !count_only;
  auto r = enumerate_epimorphisms(s, G, q);
  Json doc;
  doc["signature"] = to_string(s);
  doc["group"] = to_string(d);
  doc["group_order"] = big(d.order);
  if (!q.profile.empty()) doc["profile"] = q.profile;
  doc["count"] = r.count;
  if (!count_only) {
    // Conjugacy pruning is off while collecting, so this lists every map.
    Json homs = Json::array();
    for (const auto& h : r.homs) homs.push_back(h);
    doc["images"] = homs;
  }
  return doc;
}

Json macbeath_cmd(const std::string& list, u64 q) {
  auto m = parse_cones(list);
  Json doc;
  doc["m"] = m;
  doc["q"] = q;
  doc["admits"] = macbeath_admits(m, q);
  doc["admits_refined"] = macbeath_admits_refined(m, q);
  return doc;
}

Json find_q_cmd(const std::string& list, std::optional<i64> s, u64 max_scan) {
  auto m = parse_cones(list);
  Factor x = s ? scrape(m, *s) : make_factor(m, m);
  auto r = find_q(x, max_scan, true);
  Json doc;
  doc["m"] = m;
  doc["x"] = x.values;
  doc["X"] = r.spec.X;
  doc["q"] = r.q;
  doc["scan_ceiling"] = r.ceiling;
  doc["moduli"] = r.spec.moduli;
  doc["constructive_k"] = r.constructive_k ? Json(*r.constructive_k) : Json();
  doc["constructive_q"] = r.constructive_q ? Json(*r.constructive_q) : Json();
  return doc;
}

Json kernel_cmd(const std::string& sig, u64 G_order, const std::string& orders, const std::string& parabolic) {
  Signature s = parse_signature(sig);
  auto c = parse_int_list(orders);
  std::vector<i64> d;
  if (!parabolic.empty()) d = parse_int_list(parabolic);
  if (d.empty()) d.assign(static_cast<std::size_t>(s.punctures), 1);
  Signature K = kernel_signature(s, G_order, d, c);
  Json doc;
  doc["signature"] = to_string(s);
  doc["group_order"] = G_order;
  doc["elliptic_orders"] = c;
  doc["parabolic_orders"] = d;
  doc["kernel"] = to_compact_string(K);
  doc["kernel_chi"] = rational(euler_char(K));
  doc["kernel_b1"] = first_betti(K);
  return doc;
}

Json verification_json(const VerificationReport& v) {
  Json doc;
  doc["ok"] = v.ok;
  Json checks = Json::array();
  for (const auto& c : v.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  doc["checks"] = checks;
  doc["loser_b1_max"] = v.loser_b1_max ? big(*v.loser_b1_max) : Json();
  return doc;
}

Json certificate_json(const QuotientCertificate& c) {
  Json doc;
  doc["winner"] = side_name(c.winner);
  doc["winner_signature"] = to_string(c.winner_sig);
  doc["loser_signature"] = to_string(c.loser_sig);
  doc["branch_trace"] = c.trace;
  doc["base_group"] = Json{{"kind", kind_name(c.base_group.kind)},
                           {"q_or_n", c.base_group.param},
                           {"order", big(c.base_group.order)},
                           {"name", to_string(c.base_group)}};
  doc["smooth_factor"] = c.smooth_factor;
  doc["loser_max_factor"] = c.loser_max_factor ? Json(*c.loser_max_factor) : Json();
  if (!c.abelian_factors.empty()) doc["abelian_factors"] = c.abelian_factors;
  doc["a"] = c.a;
  doc["f"] = big(c.f);
  doc["order"] = Json{{"factored", factored_map(c.order)},
                      {"text", c.order.to_string()},
                      {"decimal_approx", c.order.decimal_approx()}};
  doc["bound"] = Json{{"L", c.L},
                      {"b", c.b},
                      {"k", c.k},
                      {"base", c.bound.base},
                      {"exponent_factored", c.bound.exponent_factored},
                      {"satisfied", c.bound.satisfied}};
  doc["notes"] = c.notes;
  return doc;
}

struct Outcome {
  Json doc;
  int code = kOk;
};

Outcome distinguish_cmd(const std::string& l, const std::string& r, bool verify, u64 max_scan) {
  Signature left = parse_signature(l), right = parse_signature(r);
  DistinguishOptions opt;
  opt.max_scan = max_scan;
  auto cert = distinguish(left, right, opt);
  Outcome o{certificate_json(cert)};
  if (verify) {
    auto v = verify_certificate(cert, left, right);
    o.doc["verification"] = verification_json(v);
    if (!v.ok) o.code = kInternal;
  }
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuchsian signature distinguisher", "fuchsian"};
  app.require_subcommand(1);
  bool json = false;
  u64 max_scan = kDefaultMaxScan;
  app.add_flag("--json", json, "emit JSON");
  app.add_option("--max-prime-scan", max_scan, "hard cap on the prime power scan")->check(CLI::PositiveNumber);

  std::function<Outcome()> action;
  auto plain = [&](std::function<Json()> f) { return [f] { return Outcome{f()}; }; };

  std::string sig, sig2, list, list2, group, profile, parabolic;
  i64 s_value = 1;
  std::optional<i64> scrape_s;
  u64 number = 0, order = 0;
  bool count_only = false, verify = false;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", json, "emit JSON"); };
  auto add_scan = [&](CLI::App* sub) {
    sub->add_option("--max-prime-scan", max_scan, "hard cap on the prime power scan")->check(CLI::PositiveNumber);
  };

  auto* ab = app.add_subcommand("abelianize", "rank and torsion chain");
  ab->add_option("signature", sig)->required();
  add_json(ab);
  ab->callback([&] { action = plain([&] { return abelianize_cmd(sig); }); });

  auto* sc = app.add_subcommand("scrape", "scrape m_s and its closure");
  sc->add_option("multiset", list)->required();
  sc->add_option("--s", s_value, "divisor of lcm(m)")->required();
  add_json(sc);
  sc->callback([&] { action = plain([&] { return scrape_cmd(list, s_value); }); });

  auto* cl = app.add_subcommand("closure", "closure of a factor");
  cl->add_option("factor", list)->required();
  cl->add_option("--parent", list2, "parent multiset")->required();
  add_json(cl);
  cl->callback([&] { action = plain([&] { return closure_cmd(list, list2); }); });

  auto* fs = app.add_subcommand("find-scrape", "smallest distinguishing scrape");
  fs->add_option("m", list)->required();
  fs->add_option("n", list2)->required();
  add_json(fs);
  fs->callback([&] { action = plain([&] { return find_scrape_cmd(list, list2); }); });

  auto* mc = app.add_subcommand("matrix-check", "ranks and pivotless columns of the scrape matrices");
  mc->add_option("M", number)->required()->check(CLI::PositiveNumber);
  add_json(mc);
  mc->callback([&] { action = plain([&] { return matrix_check_cmd(number); }); });

  auto* ep = app.add_subcommand("epis", "enumerate epimorphisms onto a small group");
  ep->add_option("signature", sig)->required();
  ep->add_option("group", group, "trivial | alt4 | cyclic:n | dihedral:2n | psl2:q")->required();
  ep->add_option("--profile", profile, "exact elliptic image orders c1,..,ck");
  ep->add_flag("--count-only", count_only);
  add_json(ep);
  ep->callback([&] { action = plain([&] { return epis_cmd(sig, group, profile, count_only); }); });

  auto* mb = app.add_subcommand("macbeath", "Macbeath criterion for PSL(2,q)");
  mb->add_option("m", list)->required();
  mb->add_option("q", number)->required();
  add_json(mb);
  mb->callback([&] { action = plain([&] { return macbeath_cmd(list, number); }); });

  auto* fq = app.add_subcommand("find-q", "smallest admissible prime power");
  fq->add_option("m", list)->required();
  fq->add_option("--scrape", scrape_s, "use the scrape m_s");
  add_json(fq);
  add_scan(fq);
  fq->callback([&] { action = plain([&] { return find_q_cmd(list, scrape_s, max_scan); }); });

  auto* kn = app.add_subcommand("kernel", "kernel signature by Riemann-Hurwitz");
  kn->add_option("signature", sig)->required();
  kn->add_option("order", order, "|G|")->required()->check(CLI::PositiveNumber);
  kn->add_option("orders", list, "elliptic image orders")->required();
  kn->add_option("--parabolic", parabolic, "parabolic image orders");
  add_json(kn);
  kn->callback([&] { action = plain([&] { return kernel_cmd(sig, order, list, parabolic); }); });

  auto* di = app.add_subcommand("distinguish", "certificate separating two signatures");
  di->add_option("left", sig)->required();
  di->add_option("right", sig2)->required();
  di->add_flag("--verify", verify);
  add_json(di);
  add_scan(di);
  di->callback([&] { action = [&] { return distinguish_cmd(sig, sig2, verify, max_scan); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    Outcome o = action();
    if (json) {
      out << o.doc.dump(2) << "\n";
    } else {
      render_text(o.doc, out);
    }
    return o.code;
  } catch (const IsomorphicInputsError& e) {
    err << "isomorphic: " << e.what() << "\n";
    return kIsomorphic;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kUsage;
  } catch (const InconsistencyError& e) {
    err << "inconsistent input: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace fuchsian::cli
