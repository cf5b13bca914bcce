#include "fuchsian/perm_group.hpp"

#include "fuchsian/errors.hpp"

namespace fuchsian {

Perm perm_identity(std::size_t degree) {
  Perm p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

Perm perm_compose(const Perm& first, const Perm& then) {
  Perm r(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) r[i] = then[first[i]];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
  return r;
}

bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

namespace {

constexpr std::size_t kTransversalBudget = 60'000'000;

struct Level {
  std::uint32_t base;
  std::vector<Perm> gens;
  std::vector<std::uint32_t> orbit;
  std::vector<int> slot;  // point -> index into transversal, -1 if outside orbit
  std::vector<Perm> transversal;
  std::vector<Perm> transversal_inv;
};

class Chain {
 public:
  explicit Chain(std::size_t degree) : degree_(degree) {}

  void add_level(std::uint32_t base) {
    Level l;
    l.base = base;
    levels_.push_back(std::move(l));
  }

  void rebuild_orbit(std::size_t i) {
    Level& l = levels_[i];
    l.slot.assign(degree_, -1);
    l.orbit = {l.base};
    l.transversal = {perm_identity(degree_)};
    l.transversal_inv = {perm_identity(degree_)};
    l.slot[l.base] = 0;
    for (std::size_t head = 0; head < l.orbit.size(); ++head) {
      std::uint32_t x = l.orbit[head];
      for (const Perm& s : l.gens) {
        std::uint32_t y = s[x];
        if (l.slot[y] >= 0) continue;
        used_ += degree_;
        if (used_ > kTransversalBudget) throw CapacityError("permutation group too large for Schreier-Sims");
        l.slot[y] = static_cast<int>(l.orbit.size());
        l.orbit.push_back(y);
        Perm u = perm_compose(l.transversal[static_cast<std::size_t>(l.slot[x])], s);
        l.transversal_inv.push_back(perm_inverse(u));
        l.transversal.push_back(std::move(u));
      }
    }
  }

  // Returns the residue and the level where sifting stopped.
  std::pair<Perm, std::size_t> sift(Perm g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const Level& l = levels_[i];
      int k = l.slot[g[l.base]];
      if (k < 0) return {g, i};
      g = perm_compose(g, l.transversal_inv[static_cast<std::size_t>(k)]);
    }
    return {g, levels_.size()};
  }

  BigInt order() const {
    BigInt o = 1;
    for (const Level& l : levels_) o *= static_cast<unsigned long>(l.orbit.size());
    return o;
  }

  std::vector<Level>& levels() { return levels_; }

 private:
  std::size_t degree_;
  std::size_t used_ = 0;
  std::vector<Level> levels_;
};

std::uint32_t moved_point(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return static_cast<std::uint32_t>(i);
  throw InternalContradiction("identity has no moved point");
}

}  // namespace

BigInt permutation_group_order(const std::vector<Perm>& gens_in, std::size_t degree, const BigInt& ambient_order) {
  std::vector<Perm> gens;
  for (const Perm& g : gens_in) {
    if (g.size() != degree) throw PreconditionError("permutation degree mismatch");
    if (!perm_is_identity(g)) gens.push_back(g);
  }
  if (gens.empty()) return 1;
  Chain chain(degree);
  chain.add_level(moved_point(gens[0]));
  chain.levels()[0].gens = gens;
  chain.rebuild_orbit(0);

  auto reached_ambient = [&] { return ambient_order > 0 && chain.order() == ambient_order; };

  std::size_t i = chain.levels().size() - 1;
  while (true) {
    if (reached_ambient()) break;
    bool extended = false;
    Level& lv = chain.levels()[i];
    for (std::size_t b = 0; b < lv.orbit.size() && !extended; ++b) {
      for (std::size_t si = 0; si < lv.gens.size() && !extended; ++si) {
        Level& l = chain.levels()[i];
        const Perm& s = l.gens[si];
        std::uint32_t beta = l.orbit[b];
        Perm h = perm_compose(l.transversal[b], s);
        h = perm_compose(h, l.transversal_inv[static_cast<std::size_t>(l.slot[s[beta]])]);
        if (perm_is_identity(h)) continue;
        auto [r, j] = chain.sift(h, i + 1);
        if (perm_is_identity(r)) continue;
        if (j == chain.levels().size()) chain.add_level(moved_point(r));
        for (std::size_t t = i + 1; t <= j; ++t) {
          chain.levels()[t].gens.push_back(r);
          chain.rebuild_orbit(t);
        }
        i = j;
        extended = true;
      }
    }
    if (extended) continue;
    if (i == 0) break;
    --i;
  }
  return chain.order();
}

}  // namespace fuchsian
