#include "ffec/notation.hpp"

#include <cctype>

#include "ffec/error.hpp"

namespace ffec {

std::string format_elem(const FqElem& a) {
  const auto c = a.coeffs();
  bool prime = true;
  for (std::size_t i = 1; i < c.size(); ++i) prime = prime && c[i] == 0;
  if (prime) return std::to_string(c.empty() ? 0u : c[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + "]";
}

std::string format_poly(const Poly& f, char var) {
  if (f.is_zero()) return "0";
  std::string s;
  for (std::size_t k = f.size(); k-- > 0;) {
    const FqElem c = f.coeff(k);
    if (c.is_zero()) continue;
    if (!s.empty()) s += '+';
    if (k == 0) {
      s += format_elem(c);
      continue;
    }
    if (!c.is_one()) s += format_elem(c) + "*";
    s += var;
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

std::string format_ratfunc(const RatFunc& r, char var) {
  if (r.is_polynomial()) return format_poly(r.num(), var);
  auto wrap = [var](const Poly& p) {
    std::string s = format_poly(p, var);
    return s.find('+') == std::string::npos && s.find('*') == std::string::npos ? s : "(" + s + ")";
  };
  return wrap(r.num()) + "/" + wrap(r.den());
}

namespace {

class Parser {
 public:
  Parser(Fq f, std::string_view s) : f_(f) {
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) src_ += c;
  }

  RatFunc parse_all() {
    if (src_.empty()) error("empty expression");
    RatFunc r = expr();
    if (pos_ != src_.size()) error(std::string("unexpected '") + src_[pos_] + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Parse, "column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  bool eat(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  long long integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) error("expected integer");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (src_[pos_++] - '0');
      if (v > (1ll << 40)) error("integer too large");
    }
    return v;
  }

  RatFunc expr() {
    bool neg = eat('-');
    RatFunc r = term();
    if (neg) r = -r;
    while (true) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }

  RatFunc term() {
    RatFunc r = power();
    while (true) {
      if (eat('*')) {
        r *= power();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        RatFunc d = power();
        if (d.is_zero()) {
          pos_ = at;
          error("division by zero");
        }
        r /= d;
      } else {
        return r;
      }
    }
  }

  RatFunc power() {
    RatFunc a = atom();
    if (!eat('^')) return a;
    const bool neg = eat('-');
    const long long k = integer();
    if (neg && a.is_zero()) error("negative power of zero");
    return a.pow(neg ? -k : k);
  }

  RatFunc atom() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return RatFunc::from_int(f_, integer());
    if (c == 't' || c == 'u') {
      if (var_ && var_ != c) error("mixed variable names");
      var_ = c;
      ++pos_;
      return RatFunc::variable(f_);
    }
    if (c == 'g') {
      ++pos_;
      if (f_.e() == 1) error("prime field has no generator symbol");
      return RatFunc::constant(f_.gen());
    }
    if (eat('[')) {
      std::vector<std::uint32_t> cs;
      do {
        const long long v = integer();
        if (v >= f_.p()) error("coefficient out of range");
        cs.push_back(static_cast<std::uint32_t>(v));
      } while (eat(','));
      if (!eat(']')) error("expected ']'");
      if (cs.size() > f_.e()) error("too many coefficients");
      return RatFunc::constant(f_.from_coeffs(cs));
    }
    if (eat('(')) {
      RatFunc r = expr();
      if (!eat(')')) error("expected ')'");
      return r;
    }
    if (c == '\0') error("unexpected end of input");
    error(std::string("unexpected '") + c + "'");
  }

  Fq f_;
  std::string src_;
  std::size_t pos_ = 0;
  char var_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(Fq f, std::string_view s) { return Parser(f, s).parse_all(); }

Poly parse_poly(Fq f, std::string_view s) {
  RatFunc r = parse_ratfunc(f, s);
  if (!r.is_polynomial()) fail(ErrorKind::Parse, "expected a polynomial: " + std::string(s));
  return r.num();
}

FqElem parse_elem(Fq f, std::string_view s) {
  RatFunc r = parse_ratfunc(f, s);
  if (!r.is_constant()) fail(ErrorKind::Parse, "expected a field element: " + std::string(s));
  return r.constant_value();
}

}  // namespace ffec
