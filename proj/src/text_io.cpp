#include "gpr/text_io.hpp"

#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gpr {

namespace {

enum class Tok : std::uint8_t {
  lparen, rparen, lbracket, rbracket, lbrace, rbrace,
  bar, comma, semi, colon, bang,
  eq, ne, lt, le, gt, ge,
  ident, integer, str, end,
};

struct Lexer {
  std::string_view s;
  std::size_t pos = 0;
  int line = 1, col = 1;
  std::uint64_t tokens = 0;

  Tok kind = Tok::end;
  std::string text;   // ident / string payload
  Integer ival = 0;   // integer payload
  int tline = 1, tcol = 1;

  explicit Lexer(std::string_view src) : s(src) { advance(); }

  [[noreturn]] void error(const std::string& msg) const { throw ParseError(tline, tcol, msg); }

  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
  char get() {
    char c = s[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  void advance() {
    // Skip whitespace and '#' line comments.
    while (pos < s.size()) {
      char c = peek();
      if (c == '#') {
        while (pos < s.size() && peek() != '\n') get();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else {
        break;
      }
    }
    tline = line;
    tcol = col;
    text.clear();
    if (pos >= s.size()) {
      kind = Tok::end;
      return;
    }
    ++tokens;
    char c = get();
    switch (c) {
      case '(': kind = Tok::lparen; return;
      case ')': kind = Tok::rparen; return;
      case '[': kind = Tok::lbracket; return;
      case ']': kind = Tok::rbracket; return;
      case '{': kind = Tok::lbrace; return;
      case '}': kind = Tok::rbrace; return;
      case '|': kind = Tok::bar; return;
      case ',': kind = Tok::comma; return;
      case ';': kind = Tok::semi; return;
      case ':': kind = Tok::colon; return;
      case '=': kind = Tok::eq; return;
      case '!':
        if (peek() == '=') {
          get();
          kind = Tok::ne;
        } else {
          kind = Tok::bang;
        }
        return;
      case '<':
        if (peek() == '=') {
          get();
          kind = Tok::le;
        } else {
          kind = Tok::lt;
        }
        return;
      case '>':
        if (peek() == '=') {
          get();
          kind = Tok::ge;
        } else {
          kind = Tok::gt;
        }
        return;
      case '"': {
        kind = Tok::str;
        while (true) {
          if (pos >= s.size()) error("unterminated string literal");
          char d = get();
          if (d == '"') return;
          if (d == '\\') {
            if (pos >= s.size()) error("unterminated escape");
            char e = get();
            if (e != '"' && e != '\\') error("unsupported escape sequence");
            text += e;
          } else {
            text += d;
          }
        }
      }
      default:
        break;
    }
    if (c == '-' || (c >= '0' && c <= '9')) {
      bool neg = c == '-';
      if (neg && !(peek() >= '0' && peek() <= '9')) error("expected digits after '-'");
      Integer v = neg ? 0 : c - '0';
      while (peek() >= '0' && peek() <= '9') v = v * 10 + (get() - '0');
      kind = Tok::integer;
      ival = neg ? -v : v;
      return;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      kind = Tok::ident;
      text += c;
      while (true) {
        char d = peek();
        if ((d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') ||
            d == '_') {
          text += get();
        } else {
          break;
        }
      }
      return;
    }
    error(std::string("unexpected character '") + c + "'");
  }
};

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> kw = {
      "if",  "then",  "else", "try",  "or",    "skip",   "fail", "break",
      "where", "lhs", "rhs",  "not",  "and",   "edge",   "indeg", "outdeg",
      "empty", "list", "any"};
  return kw;
}

struct Parser {
  Lexer lex;

  explicit Parser(std::string_view text) : lex(text) {}

  [[noreturn]] void error(const std::string& msg) { lex.error(msg); }

  bool at(Tok k) const { return lex.kind == k; }
  bool at_kw(const char* w) const { return lex.kind == Tok::ident && lex.text == w; }
  void next() { lex.advance(); }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  bool accept_kw(const char* w) {
    if (!at_kw(w)) return false;
    next();
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!at(k)) error(std::string("expected ") + what);
    next();
  }
  std::string expect_name(const char* what) {
    if (!at(Tok::ident)) error(std::string("expected ") + what);
    if (reserved_words().count(lex.text))
      error("'" + lex.text + "' is a reserved word");
    std::string n = lex.text;
    next();
    return n;
  }
  Integer expect_int(const char* what) {
    if (!at(Tok::integer)) error(std::string("expected ") + what);
    Integer v = lex.ival;
    next();
    return v;
  }

  // --- labels and marks ----------------------------------------------------------

  Label parse_constant_label_tail(Atom first) {
    Label l;
    l.push_back(std::move(first));
    while (accept(Tok::colon)) {
      if (at(Tok::integer)) {
        l.push_back(Atom(lex.ival));
        next();
      } else if (at(Tok::str)) {
        l.push_back(Atom(lex.text));
        next();
      } else {
        error("expected atom after ':'");
      }
    }
    return l;
  }

  // params == nullptr -> host mode (constants only).
  LabelExpr parse_label(const std::vector<std::string>* params) {
    if (at(Tok::integer)) {
      Integer v = lex.ival;
      next();
      return LabelExpr::constant_label(parse_constant_label_tail(Atom(v)));
    }
    if (at(Tok::str)) {
      std::string v = lex.text;
      next();
      return LabelExpr::constant_label(parse_constant_label_tail(Atom(std::move(v))));
    }
    if (at(Tok::ident)) {
      if (lex.text == "empty") {
        next();
        return LabelExpr::constant_label({});
      }
      if (params) {
        for (std::size_t i = 0; i < params->size(); ++i)
          if ((*params)[i] == lex.text) {
            next();
            return LabelExpr::variable(static_cast<int>(i));
          }
        error("undeclared variable '" + lex.text + "'");
      }
      error("variables are not allowed in host graphs ('" + lex.text + "')");
    }
    error("expected a label");
  }

  NodeMarkPat parse_node_mark(bool rule_mode) {
    if (!at(Tok::ident)) error("expected a node mark");
    std::string m = lex.text;
    next();
    if (m == "red") return NodeMarkPat::red;
    if (m == "green") return NodeMarkPat::green;
    if (m == "blue") return NodeMarkPat::blue;
    if (m == "grey") return NodeMarkPat::grey;
    if (m == "any" && rule_mode) return NodeMarkPat::any;
    error("unknown node mark '" + m + "'");
  }

  EdgeMarkPat parse_edge_mark(bool rule_mode) {
    if (!at(Tok::ident)) error("expected an edge mark");
    std::string m = lex.text;
    next();
    if (m == "red") return EdgeMarkPat::red;
    if (m == "green") return EdgeMarkPat::green;
    if (m == "blue") return EdgeMarkPat::blue;
    if (m == "dashed") return EdgeMarkPat::dashed;
    if (m == "any" && rule_mode) return EdgeMarkPat::any;
    error("unknown edge mark '" + m + "'");
  }

  // Optional "(R)" / "(B)" suffix directly after an item id.
  bool parse_flag(char flag) {
    if (!at(Tok::lparen)) return false;
    next();
    if (!at(Tok::ident) || lex.text.size() != 1 || lex.text[0] != flag)
      error(std::string("expected '") + flag + "' flag");
    next();
    expect(Tok::rparen, "')' after flag");
    return true;
  }

  // --- host graphs -----------------------------------------------------------------

  HostGraph parse_host_graph() {
    HostGraph g;
    // Hash maps, not trees: host files run to hundreds of thousands of ids and
    // the id lookups must stay O(1) for parsing to stay linear. Pre-size from
    // the text length (an item is at least ~12 bytes) to avoid rehash spikes.
    std::unordered_map<Integer, NodeId> ids;
    std::unordered_set<Integer> edge_ids;
    ids.reserve(lex.s.size() / 24);
    edge_ids.reserve(lex.s.size() / 24);
    expect(Tok::lbracket, "'['");
    while (!at(Tok::bar)) {
      expect(Tok::lparen, "'(' or '|'");
      Integer id = expect_int("node id");
      bool rooted = false;
      if (at(Tok::lparen)) rooted = parse_flag('R');
      if (ids.count(id)) error("duplicate node id " + std::to_string(id));
      expect(Tok::comma, "','");
      LabelExpr label = parse_label(nullptr);
      NodeMarkPat mark = NodeMarkPat::none;
      if (accept(Tok::comma)) mark = parse_node_mark(false);
      expect(Tok::rparen, "')'");
      ids[id] = g.add_node(std::move(label.constant), static_cast<NodeMark>(mark), rooted);
    }
    next();  // '|'
    while (!at(Tok::rbracket)) {
      expect(Tok::lparen, "'(' or ']'");
      Integer id = expect_int("edge id");
      if (at(Tok::lparen)) error("edge direction flag '(B)' is only allowed in rule graphs");
      if (!edge_ids.insert(id).second) error("duplicate edge id " + std::to_string(id));
      expect(Tok::comma, "','");
      Integer src = expect_int("source node id");
      expect(Tok::comma, "','");
      Integer tgt = expect_int("target node id");
      expect(Tok::comma, "','");
      LabelExpr label = parse_label(nullptr);
      EdgeMarkPat mark = EdgeMarkPat::none;
      if (accept(Tok::comma)) mark = parse_edge_mark(false);
      expect(Tok::rparen, "')'");
      auto si = ids.find(src), ti = ids.find(tgt);
      if (si == ids.end())
        error("edge " + std::to_string(id) + " references unknown node id " + std::to_string(src));
      if (ti == ids.end())
        error("edge " + std::to_string(id) + " references unknown node id " + std::to_string(tgt));
      g.add_edge(si->second, ti->second, std::move(label.constant), static_cast<EdgeMark>(mark));
    }
    next();  // ']'
    return g;
  }

  // --- rule graphs -------------------------------------------------------------------

  RuleGraph parse_rule_graph(const std::vector<std::string>& params) {
    RuleGraph g;
    std::set<int> node_tags;
    std::set<int> edge_ids;
    expect(Tok::lbracket, "'['");
    while (!at(Tok::bar)) {
      expect(Tok::lparen, "'(' or '|'");
      RuleNode n;
      Integer tag = expect_int("node id");
      n.tag = static_cast<int>(tag);
      if (at(Tok::lparen)) n.rooted = parse_flag('R');
      if (!node_tags.insert(n.tag).second)
        error("duplicate node id " + std::to_string(n.tag));
      expect(Tok::comma, "','");
      n.label = parse_label(&params);
      if (accept(Tok::comma)) n.mark = parse_node_mark(true);
      expect(Tok::rparen, "')'");
      g.nodes.push_back(std::move(n));
    }
    next();  // '|'
    while (!at(Tok::rbracket)) {
      expect(Tok::lparen, "'(' or ']'");
      RuleEdge e;
      e.id = static_cast<int>(expect_int("edge id"));
      if (at(Tok::lparen)) e.either = parse_flag('B');
      if (!edge_ids.insert(e.id).second)
        error("duplicate edge id " + std::to_string(e.id));
      expect(Tok::comma, "','");
      e.src_tag = static_cast<int>(expect_int("source node id"));
      expect(Tok::comma, "','");
      e.tgt_tag = static_cast<int>(expect_int("target node id"));
      expect(Tok::comma, "','");
      e.label = parse_label(&params);
      if (accept(Tok::comma)) e.mark = parse_edge_mark(true);
      expect(Tok::rparen, "')'");
      if (!node_tags.count(e.src_tag))
        error("edge " + std::to_string(e.id) + " references unknown node id " +
              std::to_string(e.src_tag));
      if (!node_tags.count(e.tgt_tag))
        error("edge " + std::to_string(e.id) + " references unknown node id " +
              std::to_string(e.tgt_tag));
      g.edges.push_back(std::move(e));
    }
    next();  // ']'
    return g;
  }

  // --- conditions ----------------------------------------------------------------------

  CmpOp parse_cmp() {
    switch (lex.kind) {
      case Tok::eq: next(); return CmpOp::eq;
      case Tok::ne: next(); return CmpOp::ne;
      case Tok::lt: next(); return CmpOp::lt;
      case Tok::le: next(); return CmpOp::le;
      case Tok::gt: next(); return CmpOp::gt;
      case Tok::ge: next(); return CmpOp::ge;
      default: error("expected a comparison operator");
    }
  }

  std::unique_ptr<Condition> parse_cond_prim() {
    if (accept_kw("not")) {
      auto c = std::make_unique<Condition>();
      c->kind = Condition::Kind::neg;
      c->a = parse_cond_prim();
      return c;
    }
    if (accept(Tok::lparen)) {
      auto c = parse_cond();
      expect(Tok::rparen, "')'");
      return c;
    }
    if (at_kw("indeg") || at_kw("outdeg")) {
      bool in = lex.text == "indeg";
      next();
      auto c = std::make_unique<Condition>();
      c->kind = in ? Condition::Kind::indeg : Condition::Kind::outdeg;
      expect(Tok::lparen, "'('");
      c->tag = static_cast<int>(expect_int("node id"));
      expect(Tok::rparen, "')'");
      c->op = parse_cmp();
      c->k = expect_int("integer");
      return c;
    }
    if (accept_kw("edge")) {
      auto c = std::make_unique<Condition>();
      c->kind = Condition::Kind::edge;
      expect(Tok::lparen, "'('");
      c->tag = static_cast<int>(expect_int("node id"));
      expect(Tok::comma, "','");
      c->tag2 = static_cast<int>(expect_int("node id"));
      expect(Tok::rparen, "')'");
      return c;
    }
    error("expected a condition");
  }

  std::unique_ptr<Condition> parse_cond() {
    auto a = parse_cond_prim();
    while (accept_kw("and")) {
      auto c = std::make_unique<Condition>();
      c->kind = Condition::Kind::conj;
      c->a = std::move(a);
      c->b = parse_cond_prim();
      a = std::move(c);
    }
    return a;
  }

  // --- commands ---------------------------------------------------------------------------

  using SC = ProgramSource::SourceCommand;
  using SCPtr = ProgramSource::SourceCommandPtr;

  SCPtr mk(Command::Kind k) {
    auto c = std::make_unique<SC>();
    c->kind = k;
    return c;
  }

  SCPtr parse_primary() {
    if (accept(Tok::lparen)) {
      auto c = parse_command();
      expect(Tok::rparen, "')'");
      return c;
    }
    if (accept_kw("if")) {
      auto c = mk(Command::Kind::if_);
      c->a = parse_arm();
      if (!accept_kw("then")) error("expected 'then'");
      c->b = parse_arm();
      c->c = accept_kw("else") ? parse_arm() : mk(Command::Kind::skip);
      return c;
    }
    if (accept_kw("try")) {
      auto c = mk(Command::Kind::try_);
      c->a = parse_arm();
      c->b = accept_kw("then") ? parse_arm() : mk(Command::Kind::skip);
      c->c = accept_kw("else") ? parse_arm() : mk(Command::Kind::skip);
      return c;
    }
    if (accept_kw("skip")) return mk(Command::Kind::skip);
    if (accept_kw("fail")) return mk(Command::Kind::fail);
    if (accept_kw("break")) return mk(Command::Kind::break_);
    if (accept(Tok::lbrace)) {
      auto c = mk(Command::Kind::rule_call);
      c->is_call = true;
      c->names.push_back(expect_name("rule name"));
      while (accept(Tok::comma)) c->names.push_back(expect_name("rule name"));
      expect(Tok::rbrace, "'}'");
      return c;
    }
    if (at(Tok::ident)) {
      auto c = mk(Command::Kind::rule_call);
      c->is_call = true;
      c->names.push_back(expect_name("rule or procedure name"));
      return c;
    }
    error("expected a command");
  }

  SCPtr parse_postfix() {
    auto c = parse_primary();
    while (accept(Tok::bang)) {
      auto l = mk(Command::Kind::loop);
      l->a = std::move(c);
      c = std::move(l);
    }
    return c;
  }

  // if/try condition and arms bind tighter than ';' — parenthesize longer arms.
  SCPtr parse_arm() { return parse_postfix(); }

  SCPtr parse_seq() {
    auto a = parse_postfix();
    while (accept(Tok::semi)) {
      auto s = mk(Command::Kind::seq);
      s->a = std::move(a);
      s->b = parse_postfix();
      a = std::move(s);
    }
    return a;
  }

  SCPtr parse_command() {
    auto a = parse_seq();
    while (accept_kw("or")) {
      auto o = mk(Command::Kind::or_);
      o->a = std::move(a);
      o->b = parse_seq();
      a = std::move(o);
    }
    return a;
  }

  // --- declarations --------------------------------------------------------------------------

  ProgramSource parse_program_decls() {
    ProgramSource out;
    std::set<std::string> names;
    while (!at(Tok::end)) {
      std::string name = expect_name("declaration name");
      if (!names.insert(name).second) error("duplicate declaration '" + name + "'");
      if (accept(Tok::eq)) {
        out.procedures.emplace_back(name, parse_command());
      } else if (accept(Tok::lparen)) {
        Rule r;
        r.name = name;
        if (!at(Tok::rparen)) {
          r.params.push_back(expect_name("variable name"));
          while (accept(Tok::comma)) r.params.push_back(expect_name("variable name"));
          expect(Tok::colon, "':'");
          if (!accept_kw("list")) error("expected 'list'");
        }
        expect(Tok::rparen, "')'");
        expect(Tok::lbrace, "'{'");
        if (!accept_kw("lhs")) error("expected 'lhs'");
        r.lhs = parse_rule_graph(r.params);
        if (!accept_kw("rhs")) error("expected 'rhs'");
        r.rhs = parse_rule_graph(r.params);
        if (accept_kw("where")) r.condition = parse_cond();
        expect(Tok::rbrace, "'}'");
        out.rule_index[r.name] = static_cast<int>(out.rules.size());
        out.rules.push_back(std::move(r));
      } else {
        error("expected '=' (procedure) or '(' (rule) after '" + name + "'");
      }
    }
    return out;
  }
};

}  // namespace

HostGraph parse_host(std::string_view text, std::uint64_t* tokens) {
  Parser p(text);
  HostGraph g = p.parse_host_graph();
  if (!p.at(Tok::end)) p.error("trailing input after graph");
  if (tokens) *tokens = p.lex.tokens;
  return g;
}

std::string print_host(const HostGraph& g) {
  std::ostringstream os;
  os << "[\n";
  for (auto v = g.first_host_node(); v; v = g.next_host_node(*v)) {
    os << "  (" << *v << (g.rooted(*v) ? "(R)" : "") << ", "
       << label_to_text(g.node_label(*v));
    if (g.node_mark(*v) != NodeMark::none) os << ", " << to_string(g.node_mark(*v));
    os << ")\n";
  }
  os << "  |\n";
  for (auto v = g.first_host_node(); v; v = g.next_host_node(*v)) {
    for (auto e = g.first_out_edge(*v); e; e = g.next_out_edge(*e)) {
      os << "  (" << *e << ", " << g.source(*e) << ", " << g.target(*e) << ", "
         << label_to_text(g.edge_label(*e));
      if (g.edge_mark(*e) != EdgeMark::none) os << ", " << to_string(g.edge_mark(*e));
      os << ")\n";
    }
  }
  os << "]\n";
  return std::move(os).str();
}

ProgramSource parse_program(std::string_view text) {
  Parser p(text);
  return p.parse_program_decls();
}

// ---- canonical printing ------------------------------------------------------------

namespace {

std::string label_expr_text(const LabelExpr& e, const std::vector<std::string>& params) {
  if (e.is_var()) return params[e.var];
  return label_to_text(e.constant);
}

const char* pat_name(NodeMarkPat m) {
  switch (m) {
    case NodeMarkPat::none: return "none";
    case NodeMarkPat::red: return "red";
    case NodeMarkPat::green: return "green";
    case NodeMarkPat::blue: return "blue";
    case NodeMarkPat::grey: return "grey";
    case NodeMarkPat::any: return "any";
  }
  return "?";
}

const char* pat_name(EdgeMarkPat m) {
  switch (m) {
    case EdgeMarkPat::none: return "none";
    case EdgeMarkPat::red: return "red";
    case EdgeMarkPat::green: return "green";
    case EdgeMarkPat::blue: return "blue";
    case EdgeMarkPat::dashed: return "dashed";
    case EdgeMarkPat::any: return "any";
  }
  return "?";
}

void print_rule_graph(std::ostringstream& os, const RuleGraph& g,
                      const std::vector<std::string>& params) {
  os << "[ ";
  for (const RuleNode& n : g.nodes) {
    os << "(" << n.tag << (n.rooted ? "(R)" : "") << ", " << label_expr_text(n.label, params);
    if (n.mark != NodeMarkPat::none) os << ", " << pat_name(n.mark);
    os << ") ";
  }
  os << "| ";
  for (const RuleEdge& e : g.edges) {
    os << "(" << e.id << (e.either ? "(B)" : "") << ", " << e.src_tag << ", " << e.tgt_tag
       << ", " << label_expr_text(e.label, params);
    if (e.mark != EdgeMarkPat::none) os << ", " << pat_name(e.mark);
    os << ") ";
  }
  os << "]";
}

void print_cond(std::ostringstream& os, const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::indeg:
    case Condition::Kind::outdeg: {
      os << (c.kind == Condition::Kind::indeg ? "indeg" : "outdeg") << "(" << c.tag << ") ";
      switch (c.op) {
        case CmpOp::eq: os << "="; break;
        case CmpOp::ne: os << "!="; break;
        case CmpOp::lt: os << "<"; break;
        case CmpOp::le: os << "<="; break;
        case CmpOp::gt: os << ">"; break;
        case CmpOp::ge: os << ">="; break;
      }
      os << " " << c.k;
      return;
    }
    case Condition::Kind::edge:
      os << "edge(" << c.tag << ", " << c.tag2 << ")";
      return;
    case Condition::Kind::neg:
      os << "not ";
      if (c.a->kind == Condition::Kind::conj) {
        os << "(";
        print_cond(os, *c.a);
        os << ")";
      } else {
        print_cond(os, *c.a);
      }
      return;
    case Condition::Kind::conj:
      print_cond(os, *c.a);
      os << " and ";
      print_cond(os, *c.b);
      return;
  }
}

using SC = ProgramSource::SourceCommand;

bool arm_needs_parens(const SC& c) {
  switch (c.kind) {
    case Command::Kind::seq:
    case Command::Kind::or_:
    case Command::Kind::if_:
    case Command::Kind::try_:
      return true;
    case Command::Kind::loop:
      return arm_needs_parens(*c.a);
    default:
      return false;
  }
}

void print_cmd(std::ostringstream& os, const SC& c);

void print_arm(std::ostringstream& os, const SC& c) {
  if (arm_needs_parens(c)) {
    os << "(";
    print_cmd(os, c);
    os << ")";
  } else {
    print_cmd(os, c);
  }
}

void print_cmd(std::ostringstream& os, const SC& c) {
  if (c.is_call) {
    if (c.names.size() == 1) {
      os << c.names[0];
    } else {
      os << "{";
      for (std::size_t i = 0; i < c.names.size(); ++i) os << (i ? ", " : "") << c.names[i];
      os << "}";
    }
    return;
  }
  switch (c.kind) {
    case Command::Kind::seq:
      print_cmd(os, *c.a);
      os << "; ";
      print_cmd(os, *c.b);
      return;
    case Command::Kind::or_:
      print_cmd(os, *c.a);
      os << " or ";
      print_cmd(os, *c.b);
      return;
    case Command::Kind::if_:
      os << "if ";
      print_arm(os, *c.a);
      os << " then ";
      print_arm(os, *c.b);
      os << " else ";
      print_arm(os, *c.c);
      return;
    case Command::Kind::try_:
      os << "try ";
      print_arm(os, *c.a);
      os << " then ";
      print_arm(os, *c.b);
      os << " else ";
      print_arm(os, *c.c);
      return;
    case Command::Kind::loop:
      print_arm(os, *c.a);
      os << "!";
      return;
    case Command::Kind::break_:
      os << "break";
      return;
    case Command::Kind::skip:
      os << "skip";
      return;
    case Command::Kind::fail:
      os << "fail";
      return;
    default:
      os << "skip";
      return;
  }
}

}  // namespace

std::string print_program(const ProgramSource& p) {
  std::ostringstream os;
  for (const auto& [name, body] : p.procedures) {
    os << name << " = ";
    print_cmd(os, *body);
    os << "\n";
  }
  for (const Rule& r : p.rules) {
    os << r.name << "(";
    for (std::size_t i = 0; i < r.params.size(); ++i) os << (i ? ", " : "") << r.params[i];
    if (!r.params.empty()) os << ": list";
    os << ") {\n  lhs ";
    print_rule_graph(os, r.lhs, r.params);
    os << "\n  rhs ";
    print_rule_graph(os, r.rhs, r.params);
    if (r.condition) {
      os << "\n  where ";
      print_cond(os, *r.condition);
    }
    os << "\n}\n";
  }
  return std::move(os).str();
}

}  // namespace gpr
