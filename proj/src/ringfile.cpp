#include "kres/ringfile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace kres {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string squash(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

std::size_t parse_count(const std::string& v, const std::string& key, std::size_t line) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw RingFileError(key + " must be a non-negative integer", line);
  try {
    return std::stoul(v);
  } catch (const std::exception&) {
    throw RingFileError(key + " is out of range", line);
  }
}

// recursive descent over a squashed string
class ExprParser {
 public:
  ExprParser(const std::string& s, const std::vector<std::string>& vars, const PrimeField& F, const KoszulComplex* K,
             std::size_t degree)
      : s_(squash(s)), vars_(vars), F_(F), K_(K), degree_(degree) {}

  // polynomial in the variables, or Koszul element when K is set
  struct Value {
    Polynomial poly;
    std::map<Subset, Polynomial> koszul;  // basis element -> coefficient
    bool has_e = false;
  };

  Value parse() {
    if (s_.empty()) throw RingFileError("empty expression");
    Value v = sum();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw RingFileError(msg + " at position " + std::to_string(pos_ + 1) + " in '" + s_ + "'");
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value constant(Fp c) const {
    Value v;
    v.poly = Polynomial(vars_.size());
    if (c) v.poly.terms[Monomial::one(vars_.size())] = c;
    return v;
  }

  Value add_values(Value a, const Value& b, bool negate) const {
    Fp sg = negate ? F_.neg(1) : 1;
    if (a.has_e != b.has_e) fail_mixed();
    a.poly = add(a.poly, scale(b.poly, sg, F_), F_);
    for (const auto& [s, p] : b.koszul) {
      auto it = a.koszul.find(s);
      Polynomial cur = it == a.koszul.end() ? Polynomial(vars_.size()) : it->second;
      a.koszul[s] = add(cur, scale(p, sg, F_), F_);
    }
    return a;
  }

  [[noreturn]] void fail_mixed() const { throw RingFileError("mixes terms with and without a basis element e[...] in '" + s_ + "'"); }

  Value mul_values(const Value& a, const Value& b) const {
    if (a.has_e && b.has_e) throw RingFileError("product of two basis elements e[...] in '" + s_ + "'");
    const Value& scalar = a.has_e ? b : a;
    const Value& other = a.has_e ? a : b;
    Value out;
    out.has_e = other.has_e;
    out.poly = multiply(scalar.poly, other.poly, F_);
    for (const auto& [s, p] : other.koszul) out.koszul[s] = multiply(scalar.poly, p, F_);
    return out;
  }

  Value sum() {
    bool neg = eat('-');
    if (!neg) eat('+');
    Value v = product();
    if (neg) v = add_values(zero_like(v), v, true);
    while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      bool minus = s_[pos_++] == '-';
      Value t = product();
      v = add_values(std::move(v), t, minus);
    }
    return v;
  }

  Value zero_like(const Value& v) const {
    Value z = constant(0);
    z.has_e = v.has_e;
    return z;
  }

  Value product() {
    Value v = factor();
    while (eat('*')) v = mul_values(v, factor());
    return v;
  }

  Value factor() {
    if (pos_ >= s_.size()) fail("expression ends early");
    char c = s_[pos_];
    if (eat('(')) {
      Value v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits = s_.substr(start, pos_ - start);
      Fp val = 0;
      for (char d : digits) val = F_.add(F_.mul(val, 10 % F_.p()), static_cast<Fp>((d - '0') % F_.p()));
      return constant(val);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "e" && pos_ < s_.size() && s_[pos_] == '[') return basis_element();
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      std::uint32_t e = 1;
      if (eat('^')) {
        std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ds == pos_) fail("exponent expected");
        e = static_cast<std::uint32_t>(std::stoul(s_.substr(ds, pos_ - ds)));
      }
      Monomial m = Monomial::one(vars_.size());
      m.exps[static_cast<std::size_t>(it - vars_.begin())] = e;
      Value v;
      v.poly = Polynomial::term(m, 1);
      v.poly.nvars = vars_.size();
      return v;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Value basis_element() {
    if (!K_) fail("basis element e[...] not allowed here");
    eat('[');
    Subset S = 0;
    std::vector<std::size_t> idx;
    while (!eat(']')) {
      std::size_t ds = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (ds == pos_) fail("index expected in e[...]");
      std::size_t i = std::stoul(s_.substr(ds, pos_ - ds));
      if (i < 1 || i > vars_.size()) fail("index " + std::to_string(i) + " out of range in e[...]");
      if (!idx.empty() && i <= idx.back()) fail("indices in e[...] must increase");
      idx.push_back(i);
      S |= Subset(1) << (i - 1);
      if (!eat(',') && (pos_ >= s_.size() || s_[pos_] != ']')) fail("',' or ']' expected");
    }
    if (idx.size() != degree_)
      fail("e[...] has " + std::to_string(idx.size()) + " indices, expected " + std::to_string(degree_));
    Value v;
    v.has_e = true;
    v.poly = Polynomial(vars_.size());
    v.koszul[S] = Polynomial::term(Monomial::one(vars_.size()), 1);
    v.koszul[S].nvars = vars_.size();
    return v;
  }

  std::string s_;
  const std::vector<std::string>& vars_;
  const PrimeField& F_;
  const KoszulComplex* K_;
  std::size_t degree_;
  std::size_t pos_ = 0;
};

std::vector<std::uint32_t> monomial_exps(const std::string& s, const std::vector<std::string>& vars) {
  return parse_monomial(s, vars).exps;
}

}  // namespace

Monomial parse_monomial(const std::string& s, const std::vector<std::string>& vars) {
  std::string t = squash(s);
  if (t.empty()) throw RingFileError("empty monomial");
  Monomial m = Monomial::one(vars.size());
  std::stringstream ss(t);
  std::string tok;
  while (std::getline(ss, tok, '*')) {
    std::string name = tok;
    std::uint32_t e = 1;
    if (auto c = tok.find('^'); c != std::string::npos) {
      name = tok.substr(0, c);
      std::string ds = tok.substr(c + 1);
      if (ds.empty() || ds.size() > 6 || !std::all_of(ds.begin(), ds.end(), [](unsigned char ch) { return std::isdigit(ch); }))
        throw RingFileError("bad exponent in '" + s + "'");
      e = static_cast<std::uint32_t>(std::stoul(ds));
    }
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw RingFileError("'" + s + "' is not a monomial in the variables");
    m.exps[static_cast<std::size_t>(it - vars.begin())] += e;
  }
  if (t.back() == '*') throw RingFileError("'" + s + "' is not a monomial in the variables");
  return m;
}

Polynomial parse_polynomial(const std::string& s, const std::vector<std::string>& vars, const PrimeField& F) {
  return ExprParser(s, vars, F, nullptr, 0).parse().poly;
}

KoszulElement parse_koszul_element(const std::string& s, std::size_t degree, const KoszulComplex& K) {
  const QuotientRing& R = K.ring();
  auto v = ExprParser(s, R.variables(), R.field(), &K, degree).parse();
  if (!v.has_e) throw RingFileError("'" + s + "' has no basis element e[...]");
  KoszulElement out = K.zero(degree);
  for (const auto& [S, p] : v.koszul) out.coords[K.index(S)] = R.add(out.coords[K.index(S)], R.reduce(p));
  return out;
}

RingFile parse_ring_file(const std::string& text) {
  RingFile rf;
  std::set<std::string> seen;
  std::vector<std::pair<std::string, std::size_t>> ideal_text;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool in_cycles = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    auto colon = line.find(':');
    if (in_cycles && eq != std::string::npos && (colon == std::string::npos || eq < colon)) {
      CycleSpec c;
      c.name = trim(line.substr(0, eq));
      c.expr = squash(line.substr(eq + 1));
      std::size_t d = 0, u = 0;
      char tail = 0;
      if (std::sscanf(c.name.c_str(), "z%zu_%zu%c", &d, &u, &tail) != 2 || d < 1 || u < 1)
        throw RingFileError("cycle name '" + c.name + "' must look like zD_U", lineno);
      if (c.name != "z" + std::to_string(d) + "_" + std::to_string(u))
        throw RingFileError("cycle name '" + c.name + "' is not canonical", lineno);
      if (c.expr.empty()) throw RingFileError("cycle " + c.name + " has no expression", lineno);
      c.degree = d;
      c.index = u;
      for (const auto& o : rf.cycles)
        if (o.name == c.name) throw RingFileError("cycle " + c.name + " given twice", lineno);
      rf.cycles.push_back(std::move(c));
      continue;
    }
    if (colon == std::string::npos) throw RingFileError("expected 'key: value'", lineno);
    std::string key = trim(line.substr(0, colon)), value = trim(line.substr(colon + 1));
    if (!seen.insert(key).second) throw RingFileError("key '" + key + "' repeated", lineno);
    in_cycles = false;
    if (key == "characteristic") {
      std::size_t p = parse_count(value, key, lineno);
      if (p > 0x7fffffffu || !is_prime(p)) throw RingFileError("characteristic must be a prime below 2^31", lineno);
      rf.characteristic = static_cast<std::uint32_t>(p);
    } else if (key == "variables") {
      rf.variables = split_list(value);
      if (rf.variables.empty()) throw RingFileError("no variables", lineno);
      for (const auto& v : rf.variables)
        if (!std::isalpha(static_cast<unsigned char>(v[0])) || v == "e" ||
            !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; }))
          throw RingFileError("bad variable name '" + v + "'", lineno);
    } else if (key == "ideal") {
      for (auto& g : split_list(value)) ideal_text.emplace_back(g, lineno);
      if (ideal_text.empty()) throw RingFileError("empty ideal", lineno);
    } else if (key == "mode") {
      if (value != "T" && value != "CI" && value != "auto") throw RingFileError("mode must be T, CI or auto", lineno);
      rf.mode = value;
    } else if (key == "max_degree") {
      rf.max_degree = parse_count(value, key, lineno);
    } else if (key == "order") {
      rf.order = parse_count(value, key, lineno);
    } else if (key == "cycles") {
      if (!value.empty()) throw RingFileError("cycles are listed on the following lines", lineno);
      in_cycles = true;
    } else {
      throw RingFileError("unknown key '" + key + "'", lineno);
    }
  }
  if (rf.variables.empty()) throw RingFileError("missing 'variables'");
  if (ideal_text.empty()) throw RingFileError("missing 'ideal'");
  for (const auto& [g, ln] : ideal_text) {
    try {
      rf.ideal.push_back(monomial_exps(g, rf.variables));
    } catch (const RingFileError& e) {
      throw RingFileError(e.what(), ln);
    }
  }
  std::sort(rf.cycles.begin(), rf.cycles.end(),
            [](const CycleSpec& a, const CycleSpec& b) { return std::tie(a.degree, a.index) < std::tie(b.degree, b.index); });
  return rf;
}

RingFile load_ring_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw RingFileError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_ring_file(ss.str());
}

std::string serialize(const RingFile& rf) {
  std::ostringstream o;
  o << "characteristic: " << rf.characteristic << "\n";
  o << "variables: ";
  for (std::size_t i = 0; i < rf.variables.size(); ++i) o << (i ? ", " : "") << rf.variables[i];
  o << "\nideal: ";
  for (std::size_t i = 0; i < rf.ideal.size(); ++i) o << (i ? ", " : "") << format_monomial(Monomial(rf.ideal[i]), rf.variables);
  o << "\nmode: " << rf.mode << "\n";
  if (rf.max_degree) o << "max_degree: " << *rf.max_degree << "\n";
  if (rf.order) o << "order: " << *rf.order << "\n";
  if (!rf.cycles.empty()) {
    o << "cycles:\n";
    for (const auto& c : rf.cycles) o << "  " << c.name << " = " << c.expr << "\n";
  }
  return o.str();
}

std::shared_ptr<const QuotientRing> build_ring(const RingFile& rf) {
  std::vector<Monomial> gens;
  for (const auto& e : rf.ideal) gens.emplace_back(e);
  return std::make_shared<const QuotientRing>(PrimeField(rf.characteristic), rf.variables, gens);
}

namespace {

std::vector<std::vector<KoszulElement>> cycles_by_degree(const RingFile& rf, const KoszulComplex& K,
                                                         std::vector<std::vector<std::string>>& names) {
  std::vector<std::vector<KoszulElement>> out;
  for (const auto& c : rf.cycles) {
    if (c.degree > K.n()) throw RingFileError("cycle " + c.name + " has degree above the number of variables");
    if (out.size() <= c.degree) out.resize(c.degree + 1), names.resize(c.degree + 1);
    if (c.index != out[c.degree].size() + 1)
      throw RingFileError("cycles of degree " + std::to_string(c.degree) + " must be numbered 1, 2, ... without gaps");
    try {
      out[c.degree].push_back(parse_koszul_element(c.expr, c.degree, K));
    } catch (const RingFileError& e) {
      throw RingFileError("cycle " + c.name + ": " + e.what());
    }
    names[c.degree].push_back(c.name);
  }
  return out;
}

}  // namespace

std::optional<ClassTBasis> class_T_basis(const RingFile& rf, const KoszulComplex& K) {
  if (rf.cycles.empty()) return std::nullopt;
  std::vector<std::vector<std::string>> names;
  auto z = cycles_by_degree(rf, K, names);
  z.resize(4), names.resize(4);
  ClassTBasis b;
  b.z1 = z[1], b.z2 = z[2], b.z3 = z[3];
  b.names1 = names[1], b.names2 = names[2], b.names3 = names[3];
  return b;
}

std::optional<ClassCIBasis> class_CI_basis(const RingFile& rf, const KoszulComplex& K) {
  if (rf.cycles.empty()) return std::nullopt;
  std::vector<std::vector<std::string>> names;
  RingFile deg1 = rf;
  std::erase_if(deg1.cycles, [](const CycleSpec& c) { return c.degree != 1; });
  if (deg1.cycles.empty()) return std::nullopt;
  auto z = cycles_by_degree(deg1, K, names);
  z.resize(2), names.resize(2);
  ClassCIBasis b;
  b.z1 = z[1];
  b.names1 = names[1];
  return b;
}

RingFile example_T_ring(std::uint32_t p) {
  RingFile rf;
  rf.characteristic = p;
  rf.variables = {"x", "y", "z"};
  rf.ideal = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 1}};
  rf.mode = "T";
  rf.max_degree = 8;
  auto add = [&](std::size_t d, std::size_t u, std::string e) {
    rf.cycles.push_back({"z" + std::to_string(d) + "_" + std::to_string(u), d, u, std::move(e)});
  };
  add(1, 1, "x*e[1]");
  add(1, 2, "y*e[2]");
  add(1, 3, "z*e[3]");
  add(1, 4, "y*z*e[1]");
  add(2, 1, "y*z*e[1,2]");
  add(2, 2, "x*z*e[1,2]");
  add(2, 3, "y*z*e[1,3]");
  add(3, 1, "y*z*e[1,2,3]");
  add(3, 2, "x*z*e[1,2,3]");
  add(3, 3, "x*y*e[1,2,3]");
  return rf;
}

}  // namespace kres
