#include "pnpair/expr_parser.hpp"

#include <cctype>
#include <string>

#include "pnpair/errors.hpp"

namespace pnpair {

namespace {

using F2Poly = std::vector<std::uint8_t>;

void trim(F2Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

F2Poly f2_add(F2Poly a, const F2Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] ^= b[i];
  trim(a);
  return a;
}

struct F2Ring {
  using Value = F2Poly;
  std::string_view var;

  Value constant(std::uint64_t v) const { return v & 1 ? Value{1} : Value{}; }
  bool is_var(std::string_view name) const { return name == var; }
  Value variable() const { return {0, 1}; }
  Value add(const Value& a, const Value& b) const { return f2_add(a, b); }
  Value mul(const Value& a, const Value& b) const { return f2_poly_mul(a, b); }
  Value pow(Value base, std::uint64_t e) const {
    if (e > 1u << 16) fail(Errc::InvalidArgument, "exponent too large in polynomial expression");
    Value r{1};
    while (e) {
      if (e & 1) r = mul(r, base);
      e >>= 1;
      if (e) base = mul(base, base);
    }
    return r;
  }
};

struct FieldRing {
  using Value = Elem;
  const Gf2Field* field;

  Value constant(std::uint64_t v) const { return v & 1; }
  bool is_var(std::string_view name) const {
    return name == "a" || name == "alpha" || name == "x" || name == "\xCE\xB1";
  }
  Value variable() const { return field->degree() == 1 ? field->reduce(2) : 2; }
  Value add(Value a, Value b) const { return a ^ b; }
  Value mul(Value a, Value b) const { return field->mul(a, b); }
  Value pow(Value base, std::uint64_t e) const { return field->pow(base, e); }
};

template <class Ring>
class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : s_(text), ring_(ring) {}

  typename Ring::Value parse() {
    auto v = expr();
    skip_ws();
    if (pos_ != s_.size()) error("unexpected character");
    return v;
  }

 private:
  using Value = typename Ring::Value;

  [[noreturn]] void error(const std::string& what) const {
    fail(Errc::InvalidArgument, what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_atom() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    const unsigned char c = static_cast<unsigned char>(s_[pos_]);
    return std::isalnum(c) || c == '(' || c >= 0x80;
  }

  Value expr() {
    Value acc = ring_.constant(0);
    bool first = true;
    for (;;) {
      if (peek('+') || peek('-')) {
        ++pos_;
      } else if (!first) {
        break;
      }
      acc = ring_.add(acc, term());
      first = false;
    }
    return acc;
  }

  Value term() {
    Value acc = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = ring_.mul(acc, power());
      } else if (starts_atom()) {
        acc = ring_.mul(acc, power());
      } else {
        return acc;
      }
    }
  }

  Value power() {
    Value base = atom();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      char close = 0;
      if (peek('{')) close = '}';
      if (peek('(')) close = ')';
      if (close) ++pos_;
      const std::uint64_t e = number();
      if (close) {
        if (!peek(close)) error("unbalanced exponent");
        ++pos_;
      }
      return ring_.pow(base, e);
    }
    return base;
  }

  std::uint64_t number() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (UINT64_MAX - 9) / 10) error("integer too large");
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) error("expected integer");
    return v;
  }

  Value atom() {
    skip_ws();
    if (pos_ >= s_.size()) error("unexpected end of expression");
    if (s_[pos_] == '(') {
      ++pos_;
      Value v = expr();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return v;
    }
    const unsigned char c = static_cast<unsigned char>(s_[pos_]);
    if (std::isdigit(c)) return ring_.constant(number());
    if (std::isalpha(c) || c >= 0x80) {
      const std::size_t start = pos_;
      while (pos_ < s_.size()) {
        const unsigned char d = static_cast<unsigned char>(s_[pos_]);
        if (!(std::isalpha(d) || d >= 0x80)) break;
        ++pos_;
      }
      const std::string_view name = s_.substr(start, pos_ - start);
      if (!ring_.is_var(name)) {
        pos_ = start;
        error("unknown name '" + std::string(name) + "'");
      }
      return ring_.variable();
    }
    error("unexpected character");
  }

  std::string_view s_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> f2_poly_mul(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint8_t> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= b[j];
  }
  trim(r);
  return r;
}

std::string f2_poly_to_string(const std::vector<std::uint8_t>& coeffs) {
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (!coeffs[i]) continue;
    if (!out.empty()) out += '+';
    if (i == 0)
      out += '1';
    else if (i == 1)
      out += 'x';
    else
      out += "x^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::vector<std::uint8_t> parse_f2_polynomial(std::string_view text, std::string_view var) {
  const F2Ring ring{var};
  return Parser<F2Ring>(text, ring).parse();
}

Elem parse_element(const Gf2Field& field, std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  if (t.starts_with("0x") || t.starts_with("0X")) {
    const Elem v = elem_from_hex(t);
    if (v & ~field.mask()) fail(Errc::InvalidArgument, "element " + std::string(t) + " exceeds field degree");
    return v;
  }
  const FieldRing ring{&field};
  return Parser<FieldRing>(t, ring).parse();
}

}  // namespace pnpair
