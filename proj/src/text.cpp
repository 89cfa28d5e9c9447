#include "dq/text.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace dq {

std::string to_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

namespace {

std::string mi_text(const MultiIndex& e) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ")";
  return os.str();
}

std::string monomial_text(const MultiIndex& e) {
  if (mi_total(e) == 0) return "1";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) os << " ";
    first = false;
    os << "x" << (i + 1);
    if (e[i] > 1) os << "^" << e[i];
  }
  return os.str();
}

template <class S, class Fmt>
std::string op_text(const PolyDiffOp<S>& op, Fmt fmt) {
  std::ostringstream os;
  for (const auto& [k, s] : op.terms()) {
    os << fmt(s) << " | " << monomial_text(k.coef);
    for (const auto& d : k.derivs) os << " | " << mi_text(d);
    os << "\n";
  }
  return os.str();
}

}  // namespace

std::string to_text(const OpQ& op) {
  return op_text(op, [](const Rat& r) { return to_string(r); });
}

std::string to_text(const OpM& op) {
  return op_text(op, [](const Meas& m) {
    std::ostringstream os;
    os.precision(12);
    os << m.v << "~" << m.sigma();
    return os.str();
  });
}

OpQ parse_op(const std::string& s, int dim, int arity) {
  OpQ op(dim, arity);
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
      size_t bar = line.find('|', pos);
      parts.push_back(line.substr(pos, bar == std::string::npos ? bar : bar - pos));
      if (bar == std::string::npos) break;
      pos = bar + 1;
    }
    if ((int)parts.size() != arity + 2)
      throw std::runtime_error("operator line needs coeff, monomial and one group per slot");
    auto trim = [](const std::string& t) {
      size_t a = t.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      size_t b = t.find_last_not_of(" \t");
      return t.substr(a, b - a + 1);
    };
    std::string cs = trim(parts[0]);
    std::string ms = trim(parts[1]);
    Polynomial c = parse_polynomial(ms.empty() || ms == "1" ? cs : cs + " " + ms, dim);
    OpKey key;
    key.derivs.reserve(arity);
    for (int j = 0; j < arity; ++j) {
      const std::string& grp = parts[2 + j];
      size_t a = grp.find('(');
      size_t b = grp.find(')');
      if (a == std::string::npos || b == std::string::npos || b < a)
        throw std::runtime_error("bad derivative group: " + grp);
      MultiIndex e;
      std::string body = grp.substr(a + 1, b - a - 1) + ",";
      std::string num;
      for (char ch : body) {
        if (ch == ',') {
          e.push_back(std::stoi(num));
          num.clear();
        } else if (!std::isspace((unsigned char)ch)) {
          num += ch;
        }
      }
      if ((int)e.size() != dim) throw std::runtime_error("derivative group must list d entries");
      key.derivs.push_back(std::move(e));
    }
    for (const auto& [e, q] : c.terms()) {
      key.coef = e;
      op.add_term(key, q);
    }
  }
  return op;
}

}  // namespace dq
