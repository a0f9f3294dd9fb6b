#include "starsel/predicate.hpp"

#include <cctype>
#include <utility>

namespace starsel {

bool PredicateNode::operator==(const PredicateNode& other) const {
  if (kind != other.kind || number != other.number || set != other.set ||
      name != other.name || children.size() != other.children.size())
    return false;
  for (std::size_t i = 0; i < children.size(); ++i)
    if (!(*children[i] == *other.children[i])) return false;
  return true;
}

namespace pred {

static PredPtr make(PredKind kind) {
  auto n = std::make_shared<PredicateNode>();
  n->kind = kind;
  return n;
}

PredPtr cover() { return make(PredKind::Cover); }
PredPtr true_() { return make(PredKind::True); }
PredPtr false_() { return make(PredKind::False); }
PredPtr nonempty_members() { return make(PredKind::NonEmptyMembers); }

static PredPtr numbered(PredKind kind, int k) {
  auto n = std::make_shared<PredicateNode>();
  n->kind = kind;
  n->number = k;
  return n;
}

PredPtr max_size(int k) { return numbered(PredKind::MaxSize, k); }
PredPtr min_size(int k) { return numbered(PredKind::MinSize, k); }
PredPtr card_le(int k) { return numbered(PredKind::CardLE, k); }

static PredPtr named(PredKind kind, std::string name) {
  auto n = std::make_shared<PredicateNode>();
  n->kind = kind;
  n->name = std::move(name);
  return n;
}

PredPtr subset_of(std::string name) { return named(PredKind::SubsetOf, std::move(name)); }
PredPtr refines(std::string name) { return named(PredKind::Refines, std::move(name)); }
PredPtr refined_by(std::string name) {
  return named(PredKind::RefinedBy, std::move(name));
}
PredPtr member_of(std::string name) { return named(PredKind::MemberOf, std::move(name)); }

PredPtr contains(Subset s) {
  auto n = std::make_shared<PredicateNode>();
  n->kind = PredKind::Contains;
  n->set = s;
  return n;
}

PredPtr not_(PredPtr p) {
  auto n = std::make_shared<PredicateNode>();
  n->kind = PredKind::Not;
  n->children = {std::move(p)};
  return n;
}

PredPtr and_(PredPtr a, PredPtr b) {
  auto n = std::make_shared<PredicateNode>();
  n->kind = PredKind::And;
  n->children = {std::move(a), std::move(b)};
  return n;
}

PredPtr or_(PredPtr a, PredPtr b) {
  auto n = std::make_shared<PredicateNode>();
  n->kind = PredKind::Or;
  n->children = {std::move(a), std::move(b)};
  return n;
}

PredPtr complement_view(PredPtr p) {
  auto n = std::make_shared<PredicateNode>();
  n->kind = PredKind::ComplementView;
  n->children = {std::move(p)};
  return n;
}

}  // namespace pred

void validate_arity(const PredicateNode& node) {
  std::size_t want = 0;
  switch (node.kind) {
    case PredKind::Not:
    case PredKind::ComplementView:
      want = 1;
      break;
    case PredKind::And:
    case PredKind::Or:
      want = 2;
      break;
    default:
      want = 0;
      break;
  }
  if (node.children.size() != want)
    throw ArityError("predicate node has " + std::to_string(node.children.size()) +
                     " children, expected " + std::to_string(want));
  for (const auto& c : node.children) validate_arity(*c);
}

// -- parser ----------------------------------------------------------------------

namespace {

constexpr int max_nesting_depth = 256;

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  const std::set<std::string>& declared;
  int depth = 0;

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth > max_nesting_depth)
        throw SyntaxError(p.pos, "expression nested less than " +
                                     std::to_string(max_nesting_depth) + " deep");
    }
    ~DepthGuard() { --p.depth; }
  };

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  [[noreturn]] void fail(std::size_t at, const std::string& expected) {
    throw SyntaxError(at, expected);
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  void expect_char(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(pos, std::string("'") + c + "'");
    ++pos;
  }

  bool peek_char(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  // Reads an identifier-shaped word without consuming it on mismatch.
  std::string peek_word() {
    skip_ws();
    std::size_t i = pos;
    if (i >= text.size()) return {};
    if (!std::isalpha(static_cast<unsigned char>(text[i])) && text[i] != '_') return {};
    std::size_t j = i;
    while (j < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
      ++j;
    return std::string(text.substr(i, j - i));
  }

  bool eat_word(const std::string& w) {
    if (peek_word() == w && !w.empty()) {
      skip_ws();
      pos += w.size();
      return true;
    }
    return false;
  }

  int parse_int() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail(pos, "integer");
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1'000'000) fail(pos, "integer in range");
      ++pos;
    }
    return static_cast<int>(v);
  }

  std::string parse_name() {
    std::string w = peek_word();
    if (w.empty()) fail(pos, "name");
    skip_ws();
    pos += w.size();
    if (!declared.contains(w)) throw UnknownReference(w);
    return w;
  }

  Subset parse_set_literal() {
    expect_char('{');
    Subset s;
    skip_ws();
    if (peek_char('}')) {
      ++pos;
      return s;
    }
    for (;;) {
      int e = parse_int();
      if (e >= 32) fail(pos, "element below 32");
      s = s.union_with(Subset::singleton(e));
      skip_ws();
      if (peek_char(',')) {
        ++pos;
        continue;
      }
      expect_char('}');
      return s;
    }
  }

  PredPtr parse_expr() {
    PredPtr lhs = parse_term();
    while (eat_word("or")) lhs = pred::or_(std::move(lhs), parse_term());
    return lhs;
  }

  PredPtr parse_term() {
    PredPtr lhs = parse_factor();
    while (eat_word("and")) lhs = pred::and_(std::move(lhs), parse_factor());
    return lhs;
  }

  PredPtr parse_factor() {
    DepthGuard guard(*this);
    if (eat_word("not")) return pred::not_(parse_factor());
    if (peek_char('(')) {
      ++pos;
      PredPtr inner = parse_expr();
      expect_char(')');
      return inner;
    }
    return parse_atom();
  }

  PredPtr parse_atom() {
    skip_ws();
    std::size_t at = pos;
    std::string w = peek_word();
    if (w.empty()) fail(at, "atom");
    skip_ws();
    pos += w.size();

    if (w == "cover") return pred::cover();
    if (w == "true") return pred::true_();
    if (w == "false") return pred::false_();
    if (w == "nonempty_members") return pred::nonempty_members();

    if (w == "maxsize" || w == "minsize" || w == "card_le") {
      expect_char('(');
      int k = parse_int();
      expect_char(')');
      if (w == "maxsize") return pred::max_size(k);
      if (w == "minsize") return pred::min_size(k);
      return pred::card_le(k);
    }
    if (w == "subset_of" || w == "refines" || w == "refined_by" ||
        w == "member_of") {
      expect_char('(');
      std::string name = parse_name();
      expect_char(')');
      if (w == "subset_of") return pred::subset_of(name);
      if (w == "refines") return pred::refines(name);
      if (w == "refined_by") return pred::refined_by(name);
      return pred::member_of(name);
    }
    if (w == "contains") {
      expect_char('(');
      Subset s = parse_set_literal();
      expect_char(')');
      return pred::contains(s);
    }
    if (w == "complement_view") {
      expect_char('(');
      PredPtr inner = parse_expr();
      expect_char(')');
      return pred::complement_view(std::move(inner));
    }
    fail(at, "atom");
  }
};

}  // namespace

PredPtr parse_predicate(std::string_view text,
                        const std::set<std::string>& declared_names) {
  Parser p{text, 0, declared_names};
  PredPtr root = p.parse_expr();
  if (!p.at_end()) p.fail(p.pos, "end of input");
  return root;
}

// -- printer ----------------------------------------------------------------------

namespace {

// Precedence: or < and < not/atom. Children print with parentheses whenever
// their level is looser than the context requires.
enum Level { kOr = 0, kAnd = 1, kUnary = 2 };

Level level_of(const PredicateNode& n) {
  switch (n.kind) {
    case PredKind::Or:
      return kOr;
    case PredKind::And:
      return kAnd;
    default:
      return kUnary;
  }
}

void print_node(const PredicateNode& n, Level context, std::string& out) {
  Level mine = level_of(n);
  bool parens = mine < context;
  if (parens) out += "(";
  switch (n.kind) {
    case PredKind::Or:
      print_node(*n.children[0], kOr, out);
      out += " or ";
      print_node(*n.children[1], kAnd, out);
      break;
    case PredKind::And:
      print_node(*n.children[0], kAnd, out);
      out += " and ";
      print_node(*n.children[1], kUnary, out);
      break;
    case PredKind::Not:
      out += "not ";
      print_node(*n.children[0], kUnary, out);
      break;
    case PredKind::Cover:
      out += "cover";
      break;
    case PredKind::True:
      out += "true";
      break;
    case PredKind::False:
      out += "false";
      break;
    case PredKind::NonEmptyMembers:
      out += "nonempty_members";
      break;
    case PredKind::MaxSize:
      out += "maxsize(" + std::to_string(n.number) + ")";
      break;
    case PredKind::MinSize:
      out += "minsize(" + std::to_string(n.number) + ")";
      break;
    case PredKind::CardLE:
      out += "card_le(" + std::to_string(n.number) + ")";
      break;
    case PredKind::SubsetOf:
      out += "subset_of(" + n.name + ")";
      break;
    case PredKind::Refines:
      out += "refines(" + n.name + ")";
      break;
    case PredKind::RefinedBy:
      out += "refined_by(" + n.name + ")";
      break;
    case PredKind::MemberOf:
      out += "member_of(" + n.name + ")";
      break;
    case PredKind::Contains: {
      out += "contains({";
      bool first = true;
      for (int e : n.set.elements()) {
        if (!first) out += ",";
        out += std::to_string(e);
        first = false;
      }
      out += "})";
      break;
    }
    case PredKind::ComplementView:
      out += "complement_view(";
      print_node(*n.children[0], kOr, out);
      out += ")";
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_predicate(const PredicateNode& node) {
  std::string out;
  print_node(node, kOr, out);
  return out;
}

}  // namespace starsel
