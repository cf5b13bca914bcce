#include "fuchsian/signatures.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "fuchsian/errors.hpp"

namespace fuchsian {

Signature normalize(Signature raw) {
  if (raw.genus < 0 || raw.punctures < 0) throw PreconditionError("negative genus or puncture count");
  Signature s;
  s.genus = raw.genus;
  s.punctures = raw.punctures;
  for (i64 c : raw.cones) {
    if (c < 0) throw PreconditionError("negative cone order");
    if (c == kInfiniteCone) {
      ++s.punctures;
    } else if (c != 1) {
      s.cones.push_back(c);
    }
  }
  if (s.punctures > 0) {
    s.punctures += 2 * s.genus;
    s.genus = 0;
  }
  std::sort(s.cones.begin(), s.cones.end());
  return s;
}

Rational cone_defect(const std::vector<i64>& cones) {
  Rational sum = 0;
  for (i64 c : cones) {
    if (c < 0) throw PreconditionError("negative cone order");
    sum += c == kInfiniteCone ? Rational(1) : Rational(c - 1, c);
  }
  sum.canonicalize();
  return sum;
}

Rational euler_char(i64 genus, i64 punctures, const std::vector<i64>& cones) {
  Rational chi = 2 - 2 * genus - punctures;
  chi -= cone_defect(cones);
  return chi;
}

Rational euler_char(const Signature& s) { return euler_char(s.genus, s.punctures, s.cones); }

i64 first_betti(const Signature& s) {
  return s.punctures > 0 ? 2 * s.genus + s.punctures - 1 : 2 * s.genus;
}

bool is_fuchsian(const Signature& s) { return euler_char(s) < 0; }

bool isomorphic(const Signature& a, const Signature& b) { return normalize(a) == normalize(b); }

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view t) : t_(t) {}

  void expect(char c) {
    if (pos_ >= t_.size() || t_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool peek(char c) const { return pos_ < t_.size() && t_[pos_] == c; }
  bool peek_word(std::string_view w) const { return t_.substr(pos_, w.size()) == w; }
  void skip(std::size_t n) { pos_ += n; }

  i64 integer() {
    const char* begin = t_.data() + pos_;
    const char* end = t_.data() + t_.size();
    if (begin == end || *begin < '0' || *begin > '9') fail("expected a non-negative integer");
    i64 v = 0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec == std::errc::result_out_of_range) fail("integer out of range");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  bool done() const { return pos_ == t_.size(); }
  std::size_t pos() const { return pos_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

 private:
  std::string_view t_;
  std::size_t pos_ = 0;
};

}  // namespace

Signature parse_raw_signature(std::string_view text) {
  Cursor c(text);
  Signature s;
  c.expect('(');
  s.genus = c.integer();
  c.expect(';');
  s.punctures = c.integer();
  c.expect(';');
  if (c.peek('-')) {
    c.skip(1);
  } else {
    while (true) {
      if (c.peek_word("inf")) {
        c.skip(3);
        s.cones.push_back(kInfiniteCone);
      } else {
        std::size_t at = c.pos();
        i64 v = c.integer();
        if (v == 0) throw ParseError("cone order must be positive", at);
        s.cones.push_back(v);
      }
      if (!c.peek(',')) break;
      c.skip(1);
    }
  }
  c.expect(')');
  if (!c.done()) c.fail("trailing characters");
  return s;
}

Signature parse_signature(std::string_view text) { return normalize(parse_raw_signature(text)); }

std::string to_string(const Signature& s) {
  std::string out = "(" + std::to_string(s.genus) + ";" + std::to_string(s.punctures) + ";";
  if (s.cones.empty()) {
    out += "-";
  } else {
    for (std::size_t i = 0; i < s.cones.size(); ++i) {
      if (i) out += ",";
      out += s.cones[i] == kInfiniteCone ? "inf" : std::to_string(s.cones[i]);
    }
  }
  return out + ")";
}

std::string to_compact_string(const Signature& s) {
  std::string out = "(" + std::to_string(s.genus) + ";" + std::to_string(s.punctures) + ";";
  if (s.cones.empty()) return out + "-)";
  bool first = true;
  for (std::size_t i = 0; i < s.cones.size();) {
    std::size_t j = i;
    while (j < s.cones.size() && s.cones[j] == s.cones[i]) ++j;
    if (!first) out += ",";
    first = false;
    out += s.cones[i] == kInfiniteCone ? "inf" : std::to_string(s.cones[i]);
    if (j - i > 1) out += "^(" + std::to_string(j - i) + ")";
    i = j;
  }
  return out + ")";
}

std::vector<i64> parse_int_list(std::string_view text) {
  std::vector<i64> out;
  if (text == "-") return out;
  Cursor c(text);
  while (true) {
    out.push_back(c.integer());
    if (!c.peek(',')) break;
    c.skip(1);
  }
  if (!c.done()) c.fail("trailing characters");
  return out;
}

std::string join_ints(const std::vector<i64>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(xs[i]);
  }
  return s;
}

}  // namespace fuchsian
