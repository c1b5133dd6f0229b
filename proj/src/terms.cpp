#include "monpres/terms.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace monpres {

Signature::Signature(std::vector<OpDecl> ops) : ops_(std::move(ops)) {
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].arity < 0) throw StructuralError("negative arity: " + ops_[i].name);
    for (std::size_t j = i + 1; j < ops_.size(); ++j)
      if (ops_[i].name == ops_[j].name)
        throw StructuralError("duplicate symbol in signature: " + ops_[i].name);
  }
}

int Signature::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return static_cast<int>(i);
  return -1;
}

Term var(std::string name) { return Term{std::move(name), -1, {}}; }

Term app(const Signature& sig, const std::string& symbol, std::vector<Term> args) {
  int idx = sig.index_of(symbol);
  if (idx < 0) throw StructuralError("unknown symbol: " + symbol);
  if (sig.at(idx).arity != static_cast<int>(args.size()))
    throw StructuralError("arity mismatch for " + symbol);
  return Term{symbol, idx, std::move(args)};
}

std::string pretty(const Term& t) {
  if (t.args.empty()) return t.head;
  std::string out = t.head + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += pretty(t.args[i]);
  }
  return out + ")";
}

int depth(const Term& t) {
  int d = 0;
  for (const Term& a : t.args) d = std::max(d, depth(a));
  return t.args.empty() ? 0 : d + 1;
}

namespace {

void collect_vars(const Term& t, std::vector<std::string>& order) {
  if (t.is_var()) {
    if (std::find(order.begin(), order.end(), t.head) == order.end()) order.push_back(t.head);
    return;
  }
  for (const Term& a : t.args) collect_vars(a, order);
}

void collect_word(const Term& t, std::vector<std::string>& word) {
  if (t.is_var()) {
    word.push_back(t.head);
    return;
  }
  for (const Term& a : t.args) collect_word(a, word);
}

}  // namespace

std::vector<std::string> term_vars(const Term& t) {
  std::vector<std::string> order;
  collect_vars(t, order);
  return order;
}

std::vector<std::string> arg_word(const Term& t) {
  std::vector<std::string> word;
  collect_word(t, word);
  return word;
}

std::map<std::string, int> var_counts(const Term& t) {
  std::map<std::string, int> counts;
  for (const std::string& v : arg_word(t)) ++counts[v];
  return counts;
}

Equation make_equation(Signature sig, Term lhs, Term rhs, std::string name) {
  Equation e{std::move(sig), std::move(lhs), std::move(rhs), {}, std::move(name)};
  collect_vars(e.lhs, e.vars);
  collect_vars(e.rhs, e.vars);
  return e;
}

std::string pretty(const Equation& e) { return pretty(e.lhs) + " = " + pretty(e.rhs); }

// ---------------------------------------------------------------------------
// Parsing.

namespace {

struct Cursor {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= src.size(); }
  char peek() const { return src[pos]; }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_space() {
    while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }

  [[noreturn]] void err(const std::string& msg) const { throw ParseError(msg, line, col); }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::string read_ident(Cursor& c) {
  c.skip_space();
  if (c.done() || !ident_start(c.peek())) c.err("expected an identifier");
  std::string out;
  while (!c.done() && ident_char(c.peek())) {
    out += c.peek();
    c.advance();
  }
  return out;
}

Term parse_term_at(Cursor& c, const Signature& sig) {
  std::string name = read_ident(c);
  c.skip_space();
  int idx = sig.index_of(name);
  if (!c.done() && c.peek() == '(') {
    if (idx < 0) c.err("unknown symbol applied to arguments: " + name);
    c.advance();
    std::vector<Term> args;
    c.skip_space();
    if (!c.done() && c.peek() == ')') {
      c.advance();
    } else {
      while (true) {
        args.push_back(parse_term_at(c, sig));
        c.skip_space();
        if (c.done()) c.err("unterminated argument list");
        if (c.peek() == ',') {
          c.advance();
          continue;
        }
        if (c.peek() == ')') {
          c.advance();
          break;
        }
        c.err("expected ',' or ')'");
      }
    }
    if (sig.at(idx).arity != static_cast<int>(args.size()))
      c.err("arity mismatch: " + name + " takes " + std::to_string(sig.at(idx).arity) +
            " arguments, got " + std::to_string(args.size()));
    return Term{name, idx, std::move(args)};
  }
  if (idx >= 0) {
    if (sig.at(idx).arity != 0)
      c.err("symbol " + name + " needs " + std::to_string(sig.at(idx).arity) + " arguments");
    return Term{name, idx, {}};
  }
  return var(name);
}

}  // namespace

Term parse_term(const std::string& text, const Signature& sig) {
  Cursor c{text};
  Term t = parse_term_at(c, sig);
  c.skip_space();
  if (!c.done()) c.err("trailing input after term");
  return t;
}

Equation parse_equation(const std::string& text, const Signature& sig, std::string name) {
  auto eq_pos = text.find('=');
  if (eq_pos == std::string::npos) throw ParseError("equation needs '='", 1, 1);
  Term lhs = parse_term(text.substr(0, eq_pos), sig);
  Term rhs = parse_term(text.substr(eq_pos + 1), sig);
  return make_equation(sig, std::move(lhs), std::move(rhs), std::move(name));
}

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Theory parse_theory(const std::string& text) {
  Theory th;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_name = false, have_ops = false;
  int eq_counter = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("theory", 0) == 0 && (line.size() == 6 || line[6] == ' ' || line[6] == '\t')) {
      if (have_name) throw ParseError("duplicate theory header", lineno, 1);
      th.name = strip(line.substr(6));
      if (th.name.empty()) throw ParseError("theory needs a name", lineno, 1);
      have_name = true;
      continue;
    }
    if (line.rfind("ops:", 0) == 0) {
      if (!have_name) throw ParseError("ops before theory header", lineno, 1);
      if (have_ops) throw ParseError("duplicate ops line", lineno, 1);
      std::vector<OpDecl> decls;
      std::istringstream ops(line.substr(4));
      std::string item;
      while (std::getline(ops, item, ',')) {
        item = strip(item);
        if (item.empty()) throw ParseError("empty operation entry", lineno, 1);
        auto slash = item.find('/');
        if (slash == std::string::npos)
          throw ParseError("operation entry needs name/arity: " + item, lineno, 1);
        std::string name = strip(item.substr(0, slash));
        std::string arity_text = strip(item.substr(slash + 1));
        if (name.empty() || !ident_start(name[0]))
          throw ParseError("bad operation name: " + item, lineno, 1);
        int arity = 0;
        try {
          std::size_t used = 0;
          arity = std::stoi(arity_text, &used);
          if (used != arity_text.size() || arity < 0) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw ParseError("bad arity for " + name + ": '" + arity_text + "'", lineno, 1);
        }
        decls.push_back({name, arity});
      }
      if (decls.empty()) throw ParseError("ops line declares nothing", lineno, 1);
      try {
        th.sig = Signature(std::move(decls));
      } catch (const StructuralError& e) {
        throw ParseError(e.what(), lineno, 1);
      }
      have_ops = true;
      continue;
    }
    if (line.rfind("eq:", 0) == 0) {
      if (!have_ops) throw ParseError("equation before ops line", lineno, 1);
      ++eq_counter;
      try {
        th.equations.push_back(
            parse_equation(line.substr(3), th.sig, th.name + "." + std::to_string(eq_counter)));
      } catch (const ParseError& e) {
        // Re-anchor at the file line; what() already carries the inner
        // position, so rebuild from the bare message. Column is relative
        // to the equation text after "eq:".
        std::string msg = e.what();
        std::string suffix =
            " at line " + std::to_string(e.line) + ", column " + std::to_string(e.col);
        if (msg.size() >= suffix.size() &&
            msg.compare(msg.size() - suffix.size(), suffix.size(), suffix) == 0)
          msg.erase(msg.size() - suffix.size());
        throw ParseError(msg, lineno, e.col);
      }
      continue;
    }
    throw ParseError("unrecognised line: " + line, lineno, 1);
  }
  if (!have_name) throw ParseError("missing theory header", lineno ? lineno : 1, 1);
  if (!have_ops) throw ParseError("missing ops line", lineno ? lineno : 1, 1);
  return th;
}

Theory load_theory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_theory(os.str());
}

// ---------------------------------------------------------------------------

EquationClass classify(const Equation& e) {
  if (e.vars.empty())
    throw StructuralError("classification needs at least one variable: " + pretty(e));
  auto lc = var_counts(e.lhs);
  auto rc = var_counts(e.rhs);
  auto count = [](const std::map<std::string, int>& m, const std::string& v) {
    auto it = m.find(v);
    return it == m.end() ? 0 : it->second;
  };

  EquationClass c;
  c.linear = true;
  int max_count = 0;
  bool all_at_most_once = true;
  bool every_var_on_both = true;
  for (const std::string& v : e.vars) {
    int l = count(lc, v), r = count(rc, v);
    if (l != 1 || r != 1) c.linear = false;
    if (l == 0 || r == 0) {
      c.drop = true;
      every_var_on_both = false;
    }
    if ((l == 1 && r == 0) || (l == 0 && r == 1)) c.one_drop = true;
    if (l > 1 || r > 1) {
      c.dup = true;
      all_at_most_once = false;
    }
    max_count = std::max(max_count, std::max(l, r));
  }
  c.strict_drop = !c.linear && all_at_most_once;
  c.two_dup = c.dup && max_count <= 2;
  c.strict_dup = !c.linear && every_var_on_both;
  return c;
}

std::vector<std::pair<std::string, bool>> class_flags(const EquationClass& c) {
  return {{"linear", c.linear},         {"drop", c.drop},   {"one-drop", c.one_drop},
          {"strict-drop", c.strict_drop}, {"dup", c.dup},   {"two-dup", c.two_dup},
          {"strict-dup", c.strict_dup}};
}

// ---------------------------------------------------------------------------

namespace {

// Replace the k-th occurrence (0-based, left to right) of variable v.
bool replace_occurrence(Term& t, const std::string& v, int& remaining,
                        const std::string& fresh) {
  if (t.is_var()) {
    if (t.head == v) {
      if (remaining == 0) {
        t.head = fresh;
        return true;
      }
      --remaining;
    }
    return false;
  }
  for (Term& a : t.args)
    if (replace_occurrence(a, v, remaining, fresh)) return true;
  return false;
}

void rename_var(Term& t, const std::string& from, const std::string& to) {
  if (t.is_var()) {
    if (t.head == from) t.head = to;
    return;
  }
  for (Term& a : t.args) rename_var(a, from, to);
}

}  // namespace

CompanionResult discerning_companion(const Equation& e) {
  EquationClass c = classify(e);
  if (!c.two_dup) return {std::nullopt, "equation is not two-dup"};
  if (c.drop) return {std::nullopt, "equation drops a variable"};

  auto lc = var_counts(e.lhs);
  auto rc = var_counts(e.rhs);
  std::vector<std::string> duplicated;
  for (const std::string& v : e.vars) {
    int l = lc.count(v) ? lc[v] : 0;
    int r = rc.count(v) ? rc[v] : 0;
    if (l > 1 || r > 1) duplicated.push_back(v);
  }
  if (duplicated.size() != 1) return {std::nullopt, "more than one duplicated variable"};
  const std::string& dv = duplicated.front();
  int l = lc[dv], r = rc.count(dv) ? rc[dv] : 0;
  if (l > 1 && r > 1) return {std::nullopt, "variable duplicated on both sides"};

  bool on_rhs = r > 1;
  const Term& carrier = on_rhs ? e.rhs : e.lhs;

  std::string fresh = dv + "'";
  auto used = [&](const std::string& name) {
    return std::find(e.vars.begin(), e.vars.end(), name) != e.vars.end();
  };
  while (used(fresh)) fresh += "'";

  Term s2 = carrier;
  int second = 1;
  replace_occurrence(s2, dv, second, fresh);
  Term s2p = s2;
  rename_var(s2p, dv, "\x01tmp");
  rename_var(s2p, fresh, dv);
  rename_var(s2p, "\x01tmp", fresh);

  DiscerningCompanion out{make_equation(e.sig, s2, std::move(s2p), e.name + ".companion"), dv,
                          fresh,
                          on_rhs ? DiscerningCompanion::Side::Rhs
                                 : DiscerningCompanion::Side::Lhs};
  return {std::move(out), ""};
}

// ---------------------------------------------------------------------------

std::optional<Subst> match(const Term& pattern, const Term& subject) {
  Subst s;
  bool ok = [&]() {
    auto go = [&](auto&& self, const Term& p, const Term& t) -> bool {
      if (p.is_var()) {
        auto it = s.find(p.head);
        if (it == s.end()) {
          s.emplace(p.head, t);
          return true;
        }
        return it->second == t;
      }
      if (t.is_var() || p.head != t.head || p.args.size() != t.args.size()) return false;
      for (std::size_t i = 0; i < p.args.size(); ++i)
        if (!self(self, p.args[i], t.args[i])) return false;
      return true;
    };
    return go(go, pattern, subject);
  }();
  if (!ok) return std::nullopt;
  return s;
}

Term substitute(const Term& t, const Subst& s) {
  if (t.is_var()) {
    auto it = s.find(t.head);
    return it == s.end() ? t : it->second;
  }
  Term out = t;
  for (Term& a : out.args) a = substitute(a, s);
  return out;
}

namespace {

void rewrites_at(const Term& subject, const Term& from, const Term& to,
                 const std::vector<Term>& candidates, const std::vector<std::string>& extra,
                 std::vector<Term>& out,
                 const std::function<Term(const Term&)>& rebuild) {
  if (auto s = match(from, subject)) {
    if (extra.empty()) {
      out.push_back(rebuild(substitute(to, *s)));
    } else {
      // Instantiate pattern variables that only occur on the replacement side.
      std::vector<std::size_t> idx(extra.size(), 0);
      while (true) {
        Subst full = *s;
        for (std::size_t i = 0; i < extra.size(); ++i) full[extra[i]] = candidates[idx[i]];
        out.push_back(rebuild(substitute(to, full)));
        std::size_t j = 0;
        for (; j < idx.size(); ++j) {
          if (++idx[j] < candidates.size()) break;
          idx[j] = 0;
        }
        if (j == idx.size()) break;
      }
    }
  }
  for (std::size_t i = 0; i < subject.args.size(); ++i) {
    auto rebuild_child = [&, i](const Term& replaced) {
      Term copy = subject;
      copy.args[i] = replaced;
      return rebuild(copy);
    };
    rewrites_at(subject.args[i], from, to, candidates, extra, out, rebuild_child);
  }
}

}  // namespace

std::vector<Term> rewrites(const Term& subject, const Term& from, const Term& to,
                           const std::vector<Term>& candidates) {
  std::vector<std::string> fresh;
  std::vector<std::string> from_vars = term_vars(from);
  for (const std::string& v : term_vars(to))
    if (std::find(from_vars.begin(), from_vars.end(), v) == from_vars.end()) fresh.push_back(v);
  if (!fresh.empty() && candidates.empty()) return {};
  std::vector<Term> out;
  rewrites_at(subject, from, to, candidates, fresh, out,
              [](const Term& t) { return t; });
  return out;
}

}  // namespace monpres
