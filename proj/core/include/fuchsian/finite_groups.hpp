#pragma once

#include <compare>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fuchsian/arith.hpp"
#include "fuchsian/finite_field.hpp"
#include "fuchsian/signatures.hpp"

namespace fuchsian {

// r^rotation s^reflected in D_{2n}.
struct DihedralElement {
  i64 rotation = 0;
  bool reflected = false;
  auto operator<=>(const DihedralElement&) const = default;
};

class DihedralGroup {
 public:
  explicit DihedralGroup(i64 n);
  i64 n() const { return n_; }
  u64 order() const { return static_cast<u64>(2 * n_); }

  DihedralElement identity() const { return {}; }
  DihedralElement r(i64 power = 1) const;
  DihedralElement s() const { return {0, true}; }
  DihedralElement mul(const DihedralElement& a, const DihedralElement& b) const;
  DihedralElement inv(const DihedralElement& a) const;
  u64 element_order(const DihedralElement& a) const;
  std::vector<DihedralElement> elements() const;

 private:
  i64 n_;
};

struct Mat2 {
  u64 a = 1, b = 0, c = 0, d = 1;
  auto operator<=>(const Mat2&) const = default;
};

// PSL(2,q), q odd. Elements are kept as the lexicographically smaller of A, -A.
class PSL2 {
 public:
  explicit PSL2(u64 q);

  const FiniteField& field() const { return F_; }
  u64 q() const { return F_.q(); }
  u64 characteristic() const { return F_.characteristic(); }
  BigInt order() const;

  Mat2 identity() const { return {}; }
  Mat2 canonical(Mat2 m) const;
  // Throws PreconditionError unless det = 1.
  Mat2 make(i64 a, i64 b, i64 c, i64 d) const;
  Mat2 mul(const Mat2& x, const Mat2& y) const;
  Mat2 inv(const Mat2& x) const;
  Mat2 pow(Mat2 x, u64 n) const;
  bool is_identity(const Mat2& x) const;
  u64 trace(const Mat2& x) const;

  u64 element_order(const Mat2& x) const;
  // All element orders: divisors of ell, (q-1)/2 and (q+1)/2.
  std::vector<u64> element_orders() const;
  bool has_element_of_order(u64 c) const;
  // Throws PreconditionError when no element has that order.
  Mat2 element_of_order(u64 c) const;
  Mat2 random_element(std::mt19937_64& rng) const;
  Mat2 random_conjugate(const Mat2& x, std::mt19937_64& rng) const;

  // Action on the q+1 points of the projective line; point q is infinity.
  std::uint32_t act(const Mat2& x, std::uint32_t point) const;
  std::vector<std::uint32_t> as_permutation(const Mat2& x) const;
  BigInt subgroup_order(const std::vector<Mat2>& gens) const;

  // Every element; only sensible for small q.
  std::vector<Mat2> all_elements() const;
  // Closure of gens; throws CapacityError beyond cap elements.
  std::vector<Mat2> generated_subgroup(const std::vector<Mat2>& gens, std::size_t cap = 100000) const;

 private:
  u64 reduce_order(const Mat2& x, u64 n) const;

  FiniteField F_;
  std::vector<u64> primes_minus_, primes_plus_, primes_ell_;
};

enum class GroupKind { trivial, cyclic, dihedral, alternating, psl2, psl2_subgroup, abelian };

std::string kind_name(GroupKind k);

struct GroupDescriptor {
  GroupKind kind = GroupKind::trivial;
  // cyclic: n; dihedral: 2n; alternating: 4; psl2 and psl2_subgroup: q; abelian: 0.
  u64 param = 1;
  BigInt order = 1;
  std::vector<Mat2> generators;  // psl2_subgroup only
  std::vector<i64> invariants;   // abelian only: cyclic factor orders

  static GroupDescriptor trivial();
  static GroupDescriptor cyclic(u64 n);
  static GroupDescriptor dihedral(u64 two_n);
  static GroupDescriptor alt4();
  static GroupDescriptor psl2(u64 q);
  static GroupDescriptor abelian(std::vector<i64> cyclic_factors);
};

// trivial | cyclic:<n> | dihedral:<2n> | psl2:<q> | alt4
GroupDescriptor parse_group_descriptor(std::string_view text);
std::string to_string(const GroupDescriptor& g);

// Cayley table of a small group. Element 0 is the identity.
class GroupTable {
 public:
  using Elem = std::uint32_t;

  GroupTable(std::string name, std::vector<Elem> table, std::size_t n);

  const std::string& name() const { return name_; }
  std::size_t size() const { return n_; }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  u64 element_order(Elem a) const { return order_[a]; }
  std::set<u64> element_orders() const;

  // Conjugacy classes, each sorted, ordered by smallest member.
  const std::vector<std::vector<Elem>>& classes() const;
  std::vector<Elem> generated_subgroup(const std::vector<Elem>& gens) const;
  bool generates(const std::vector<Elem>& gens) const;

  // Bitmask over (order index of z, order index of w*z) for each w.
  struct PairTable {
    std::vector<u64> orders;  // distinct element orders, ascending
    std::vector<std::vector<std::uint64_t>> masks;
    int index_of(u64 order) const;
  };
  const PairTable& pair_table() const;

 private:
  std::string name_;
  std::size_t n_;
  std::vector<Elem> table_, inv_;
  std::vector<u64> order_;
  struct Cache {
    std::once_flag classes_once, pairs_once;
    std::vector<std::vector<Elem>> classes;
    std::unique_ptr<PairTable> pairs;
  };
  std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

inline constexpr std::size_t kTableCap = 6000;

// Throws CapacityError above kTableCap elements.
GroupTable make_table(const GroupDescriptor& g);

struct EpiQuery {
  std::vector<i64> profile;  // exact elliptic image orders; empty means orders dividing m_i
  bool surjective = true;
  bool collect = false;      // keep the assignments (disables conjugacy pruning)
  bool stop_at_first = false;
  u64 max_leaves = 500'000'000;
};

struct EpiResult {
  u64 count = 0;
  // Images in the order a1,b1,...,ag,bg,y1..yp,x1..xk.
  std::vector<std::vector<GroupTable::Elem>> homs;
};

EpiResult enumerate_epimorphisms(const Signature& s, const GroupTable& G, const EpiQuery& q = {});
bool exists_epimorphism(const Signature& s, const GroupTable& G, const std::vector<i64>& profile = {});

// Elements of exactly the given orders with product 1 (not necessarily generating).
bool exists_product_one_tuple(const GroupTable& G, const std::vector<i64>& orders);

// Checks the surface-group relation for explicit images.
bool satisfies_relation(const Signature& s, const GroupTable& G, const std::vector<GroupTable::Elem>& images);

}  // namespace fuchsian
