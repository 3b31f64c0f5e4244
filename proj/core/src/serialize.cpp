#include "qkflag/serialize.hpp"

#include <cctype>
#include <sstream>

#include "qkflag/errors.hpp"

namespace qkflag {

json to_json(const LaurentPoly& p) {
  json out = json::array();
  if (p.is_zero()) return out;
  const auto& reg = p.registry();
  for (const auto& [e, c] : p.terms()) {
    json ex = json::object();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) ex[reg->var(i).name] = e[i];
    out.push_back(json{{"exponents", ex}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  }
  return out;
}

json to_json(const QLocalized& p) {
  json den = json::object();
  for (const auto& [j, m] : p.den()) den[p.registry()->var(j).name] = m;
  return json{{"numerator", to_json(p.num())}, {"denominator", den}};
}

LaurentPoly laurent_from_json(const RegistryPtr& reg, const json& j) {
  if (!j.is_array()) throw ParseError("polynomial must be a JSON array of terms");
  LaurentPoly p(reg);
  for (const auto& t : j) {
    Exponents e(reg->size(), 0);
    for (const auto& [name, v] : t.at("exponents").items()) e[reg->index(name)] = v.get<int>();
    mpq_class c(mpz_class(t.at("num").get<std::string>()), mpz_class(t.at("den").get<std::string>()));
    c.canonicalize();
    p.add_term(e, c);
  }
  return p;
}

QLocalized qlocalized_from_json(const RegistryPtr& reg, const json& j) {
  if (j.is_array()) return QLocalized(laurent_from_json(reg, j));
  QLocalized::Denominator d;
  if (j.contains("denominator"))
    for (const auto& [name, v] : j.at("denominator").items()) d[reg->index(name)] = v.get<int>();
  return QLocalized(laurent_from_json(reg, j.at("numerator")), d);
}

namespace {

std::string latex_rational(const mpq_class& a) {
  if (a.get_den() == 1) return a.get_num().get_str();
  return "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
}

}  // namespace

std::string to_latex(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  const auto& reg = p.registry();
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    mpq_class a = abs(c);
    bool unit = true;
    for (int x : e) unit = unit && x == 0;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (a != 1 || unit) os << latex_rational(a);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << reg->latex_name(i);
      if (e[i] != 1) os << "^{" << e[i] << "}";
    }
  }
  return os.str();
}

std::string to_latex(const QLocalized& p) {
  if (p.den().empty()) return to_latex(p.num());
  std::ostringstream den;
  for (const auto& [j, m] : p.den()) {
    den << "(1-" << p.registry()->latex_name(j) << ")";
    if (m != 1) den << "^{" << m << "}";
  }
  return "\\frac{" + to_latex(p.num()) + "}{" + den.str() + "}";
}

namespace {

class Parser {
 public:
  Parser(const RegistryPtr& reg, std::string_view s) : reg_(reg), s_(s) {}

  QLocalized parse() {
    auto v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  QLocalized expr() {
    QLocalized v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }
  QLocalized term() {
    QLocalized v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        QLocalized d = unary();
        v = v.exact_divide(d);
      } else {
        return v;
      }
    }
  }
  QLocalized unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  QLocalized power() {
    QLocalized base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    unsigned k = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
    if (neg) {
      auto inv = base.inverse();
      if (!inv) fail("negative power of a non-unit");
      return inv->pow(k);
    }
    return base.pow(k);
  }
  QLocalized atom() {
    skip();
    if (eat('(')) {
      auto v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return QLocalized(LaurentPoly::constant(reg_, mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start))))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      auto name = s_.substr(start, pos_ - start);
      auto idx = reg_->find(name);
      if (!idx) fail("unknown variable '" + std::string(name) + "'");
      return QLocalized(LaurentPoly::variable(reg_, *idx));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const RegistryPtr& reg_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

QLocalized parse_expression(const RegistryPtr& reg, std::string_view text) {
  return Parser(reg, text).parse();
}

}  // namespace qkflag
