#include "lazylog/reader.hpp"

#include <cctype>
#include <optional>
#include <unordered_map>

#include "lazylog/printer.hpp"

namespace lazylog {

SyntaxError::SyntaxError(const std::string& message, int line, int column,
                         std::string found)
    : std::runtime_error("syntax error at line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ": " + message +
                         " (found " + (found.empty() ? "end of input" : "'" + found + "'") +
                         ")"),
      line_(line), column_(column), found_(std::move(found)) {}

namespace {

constexpr std::string_view kSymbolChars = "+-*/\\^<>=~:.?@#&$";

bool is_symbol_char(char c) {
  return kSymbolChars.find(c) != std::string_view::npos;
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

enum class Tok { Atom, Var, Int, Punct, End, Eof };

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  std::int64_t value = 0;
  int line = 0;
  int column = 0;
  bool layout_before = false;
  bool quoted = false;
  bool open_follows = false; ///< next character is '(' with no layout
};

struct Comment {
  std::string text;
  SourceLoc loc;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    bool layout = skip_layout();
    Token tok;
    tok.line = line_;
    tok.column = col_;
    tok.layout_before = layout;
    if (pos_ >= src_.size()) {
      tok.kind = Tok::Eof;
      return tok;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])) != 0)
        advance();
      tok.kind = Tok::Int;
      tok.text = std::string(src_.substr(start, pos_ - start));
      try {
        tok.value = std::stoll(tok.text);
      } catch (const std::out_of_range&) {
        throw SyntaxError("integer literal out of range", tok.line, tok.column, tok.text);
      }
    } else if (c == '_' || std::isupper(static_cast<unsigned char>(c)) != 0) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && is_ident_char(src_[pos_]))
        advance();
      tok.kind = Tok::Var;
      tok.text = std::string(src_.substr(start, pos_ - start));
    } else if (std::islower(static_cast<unsigned char>(c)) != 0) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && is_ident_char(src_[pos_]))
        advance();
      tok.kind = Tok::Atom;
      tok.text = std::string(src_.substr(start, pos_ - start));
    } else if (c == '\'') {
      tok.kind = Tok::Atom;
      tok.quoted = true;
      tok.text = read_quoted(tok);
    } else if (c == '.' && end_follows(pos_ + 1)) {
      advance();
      tok.kind = Tok::End;
      tok.text = ".";
    } else if (is_symbol_char(c)) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && is_symbol_char(src_[pos_]))
        advance();
      // `0->>-1`: a trailing minus glued to a digit is the literal's sign.
      if (pos_ - start > 1 && src_[pos_ - 1] == '-' && pos_ < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_])) != 0) {
        --pos_;
        --col_;
      }
      tok.kind = Tok::Atom;
      tok.text = std::string(src_.substr(start, pos_ - start));
    } else if (c == '!' || c == ';') {
      advance();
      tok.kind = Tok::Atom;
      tok.text = std::string(1, c);
    } else if (c == '(' || c == ')' || c == '[' || c == ']' || c == '|' || c == ',' ||
               c == '{' || c == '}') {
      advance();
      tok.kind = Tok::Punct;
      tok.text = std::string(1, c);
    } else {
      throw SyntaxError("unexpected character", line_, col_, std::string(1, c));
    }
    tok.open_follows = pos_ < src_.size() && src_[pos_] == '(';
    return tok;
  }

  std::vector<Comment> take_comments() { return std::exchange(comments_, {}); }

private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool end_follows(std::size_t p) const {
    return p >= src_.size() || std::isspace(static_cast<unsigned char>(src_[p])) != 0 ||
           src_[p] == '%';
  }

  bool skip_layout() {
    bool any = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
        any = true;
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          advance();
        any = true;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        SourceLoc loc{line_, col_};
        std::size_t start = pos_;
        advance();
        advance();
        while (pos_ < src_.size() && !(src_[pos_] == '*' && pos_ + 1 < src_.size() &&
                                       src_[pos_ + 1] == '/'))
          advance();
        if (pos_ >= src_.size())
          throw SyntaxError("unterminated block comment", loc.line, loc.column, "");
        advance();
        advance();
        comments_.push_back({std::string(src_.substr(start, pos_ - start)), loc});
        any = true;
      } else {
        break;
      }
    }
    return any;
  }

  std::string read_quoted(const Token& tok) {
    advance(); // opening quote
    std::string out;
    for (;;) {
      if (pos_ >= src_.size())
        throw SyntaxError("unterminated quoted atom", tok.line, tok.column, out);
      char c = src_[pos_];
      if (c == '\'') {
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '\'') {
          out += '\'';
          advance();
          advance();
          continue;
        }
        advance();
        return out;
      }
      if (c == '\\' && pos_ + 1 < src_.size()) {
        advance();
        char e = src_[pos_];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        advance();
        continue;
      }
      out += c;
      advance();
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<Comment> comments_;
};

/// Reads one term at a time from a token stream.
class Parser {
public:
  Parser(std::string_view text, Arena& arena, const OperatorTable& ops)
      : lexer_(text), arena_(arena), ops_(&ops) {
    tok_ = lexer_.next();
  }

  void set_ops(const OperatorTable& ops) { ops_ = &ops; }
  bool at_eof() const { return tok_.kind == Tok::Eof; }
  const Token& peek() const { return tok_; }
  std::vector<Comment> take_comments() { return lexer_.take_comments(); }

  /// Read `term .`; variables numbered from 0 for this term.
  Term* read_clause(VarTable& vars) {
    var_index_.clear();
    vars_ = &vars;
    Term* t = parse(1200);
    if (tok_.kind != Tok::End)
      fail(tok_.kind == Tok::Eof ? "missing '.' at end of clause"
                                 : "operator expected");
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, tok_.line, tok_.column,
                      tok_.kind == Tok::Eof ? "" : tok_.text);
  }

private:
  void advance() { tok_ = lexer_.next(); }

  bool is_punct(std::string_view p) const {
    return tok_.kind == Tok::Punct && tok_.text == p;
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p))
      fail("expected '" + std::string(p) + "'");
    advance();
  }

  Term* make_var_named(const std::string& name) {
    if (name != "_") {
      auto it = var_index_.find(name);
      if (it != var_index_.end())
        return it->second;
    }
    Symbol sym_name{name};
    Term* v = make_var(arena_, vars_->count++, sym_name);
    vars_->names.push_back(sym_name);
    if (name != "_")
      var_index_.emplace(name, v);
    return v;
  }

  bool token_starts_term() const {
    switch (tok_.kind) {
    case Tok::Int:
    case Tok::Var:
      return true;
    case Tok::Punct:
      return tok_.text == "(" || tok_.text == "[" || tok_.text == "{";
    case Tok::Atom: {
      if (tok_.quoted || tok_.open_follows)
        return true;
      Symbol s{tok_.text};
      // An infix-only operator after a prefix operator is an operand only
      // when nothing can follow it.
      return !(ops_->infix(s) && !ops_->prefix(s));
    }
    default:
      return false;
    }
  }

  std::vector<Term*> parse_arglist() {
    expect_punct("(");
    std::vector<Term*> args;
    for (;;) {
      args.push_back(parse(999));
      if (is_punct(",")) {
        advance();
        continue;
      }
      expect_punct(")");
      return args;
    }
  }

  /// Returns the term and its priority.
  std::pair<Term*, int> parse_primary(int max_priority) {
    Token tok = tok_;
    switch (tok.kind) {
    case Tok::Int:
      advance();
      return {make_int(arena_, tok.value), 0};
    case Tok::Var:
      advance();
      return {make_var_named(tok.text), 0};
    case Tok::Punct:
      if (tok.text == "(") {
        advance();
        Term* t = parse(1200);
        expect_punct(")");
        return {t, 0};
      }
      if (tok.text == "[") {
        advance();
        if (is_punct("]")) {
          advance();
          return {make_ctor(arena_, sym::nil()), 0};
        }
        std::vector<Term*> items{parse(999)};
        while (is_punct(",")) {
          advance();
          items.push_back(parse(999));
        }
        Term* tail = nullptr;
        if (is_punct("|")) {
          advance();
          tail = parse(999);
        }
        expect_punct("]");
        return {make_list(arena_, items, tail), 0};
      }
      fail("unexpected punctuation");
    case Tok::Atom:
      break;
    case Tok::End:
      fail("unexpected end of clause");
    case Tok::Eof:
      fail("unexpected end of input");
    }

    Symbol name{tok.text};
    advance();
    if (tok.open_follows)
      return {make_ctor(arena_, name, parse_arglist()), 0};
    if (tok.quoted)
      return {make_ctor(arena_, name), 0};
    if (!ops_->is_op(name) && is_punct("("))
      return {make_ctor(arena_, name, parse_arglist()), 0};
    if (tok.text == "-" && tok_.kind == Tok::Int && !tok_.layout_before) {
      Token num = tok_;
      advance();
      return {make_int(arena_, -num.value), 0};
    }
    if (auto op = ops_->prefix(name); op && token_starts_term()) {
      int priority = op->priority;
      int arg_max = op->right_max();
      if (priority > max_priority) {
        priority = 999;
        arg_max = std::min(arg_max, 999);
      }
      Term* arg = parse(arg_max);
      Term* args[] = {arg};
      return {make_ctor(arena_, name, args), priority};
    }
    return {make_ctor(arena_, name), 0};
  }

  Term* parse(int max_priority) {
    auto [left, left_priority] = parse_primary(max_priority);
    for (;;) {
      std::optional<Symbol> op_name;
      if (tok_.kind == Tok::Atom && !tok_.quoted)
        op_name = Symbol{tok_.text};
      else if (is_punct(","))
        op_name = sym::comma();
      else if (is_punct("|"))
        op_name = Symbol{";"};
      if (!op_name)
        break;
      if (auto op = ops_->infix(*op_name);
          op && op->priority <= max_priority && left_priority <= op->left_max()) {
        advance();
        Term* right = parse(op->right_max());
        Term* args[] = {left, right};
        left = make_ctor(arena_, *op_name, args);
        left_priority = op->priority;
        continue;
      }
      if (auto op = ops_->postfix(*op_name);
          op && op->priority <= max_priority && left_priority <= op->left_max()) {
        advance();
        Term* args[] = {left};
        left = make_ctor(arena_, *op_name, args);
        left_priority = op->priority;
        continue;
      }
      break;
    }
    return left;
  }

  Lexer lexer_;
  Arena& arena_;
  const OperatorTable* ops_;
  Token tok_;
  VarTable* vars_ = nullptr;
  std::unordered_map<std::string, Term*> var_index_;
};

bool is_functor(Term* t, std::string_view name, std::uint32_t arity) {
  return t->is_ctor() && t->arity == arity && t->name.str() == name;
}

std::vector<Term*> flatten_args_of(Term* t) {
  if (t->is_ctor())
    return {t->args, t->args + t->arity};
  return {};
}

} // namespace

std::vector<Term*> flatten_conjunction(Term* t) {
  std::vector<Term*> out;
  while (t->is_ctor() && t->arity == 2 && t->name == sym::comma()) {
    out.push_back(t->args[0]);
    t = t->args[1];
  }
  out.push_back(t);
  return out;
}

ParsedProgram parse_program(std::string_view text, OperatorTable ops) {
  ParsedProgram program;
  program.arena = std::make_shared<Arena>();
  program.ops = std::move(ops);
  Parser parser(text, *program.arena, program.ops);

  auto flush_comments = [&] {
    for (auto& c : parser.take_comments())
      program.items.emplace_back(CommentItem{std::move(c.text), c.loc});
  };

  while (!parser.at_eof()) {
    flush_comments();
    SourceLoc loc{parser.peek().line, parser.peek().column};
    VarTable vars;
    Term* t = parser.read_clause(vars);

    if (is_functor(t, ":-", 2)) {
      program.items.emplace_back(
          ClauseItem{t->args[0], flatten_conjunction(t->args[1]), vars, loc});
    } else if (is_functor(t, "->>", 2)) {
      program.items.emplace_back(RuleItem{t->args[0], t->args[1], vars, loc});
    } else if (is_functor(t, "pred", 1)) {
      Term* p = t->args[0];
      if (!p->is_ctor())
        throw SyntaxError("malformed pred declaration", loc.line, loc.column, "");
      program.items.emplace_back(PredDecl{p->name, flatten_args_of(p), vars, loc});
    } else if (is_functor(t, "function", 1)) {
      Term* body = t->args[0];
      bool alias = is_functor(body, "==>", 2);
      if (!alias && !is_functor(body, "=>>", 2))
        throw SyntaxError("function declaration needs '=>>'", loc.line, loc.column, "");
      if (alias)
        program.warnings.push_back("line " + std::to_string(loc.line) +
                                   ": '==>' accepted as '=>>'");
      Term* f = body->args[0];
      if (!f->is_ctor())
        throw SyntaxError("malformed function declaration", loc.line, loc.column, "");
      program.items.emplace_back(
          FunDecl{f->name, flatten_args_of(f), body->args[1], vars, loc});
    } else if (is_functor(t, "constructors", 1)) {
      Term* body = t->args[0];
      if (!is_functor(body, "=>", 2))
        throw SyntaxError("constructors declaration needs '=>'", loc.line, loc.column, "");
      program.items.emplace_back(
          CtorDecl{body->args[0], flatten_conjunction(body->args[1]), vars, loc});
    } else if (is_functor(t, "op", 3)) {
      Term* p = t->args[0];
      Term* f = t->args[1];
      Term* n = t->args[2];
      std::optional<Fixity> fixity;
      if (f->is_ctor() && f->arity == 0)
        fixity = parse_fixity(f->name.str());
      if (!p->is_int() || p->value < 0 || p->value > 1200 || !fixity)
        throw SyntaxError("malformed op declaration", loc.line, loc.column, "");
      std::vector<Symbol> names;
      if (n->is_ctor() && n->arity == 0 && n->name != sym::nil()) {
        names.push_back(n->name);
      } else {
        for (Term* cell = n; cell->is_ctor() && cell->name == sym::cons();
             cell = cell->args[1]) {
          if (!cell->args[0]->is_ctor() || cell->args[0]->arity != 0)
            throw SyntaxError("malformed op declaration", loc.line, loc.column, "");
          names.push_back(cell->args[0]->name);
        }
      }
      for (Symbol name : names) {
        program.ops.add(name, static_cast<int>(p->value), *fixity);
        program.items.emplace_back(OpDecl{static_cast<int>(p->value), *fixity, name, loc});
      }
    } else if (is_functor(t, "?-", 1)) {
      throw SyntaxError("queries are not allowed in program files", loc.line,
                        loc.column, "?-");
    } else {
      program.items.emplace_back(ClauseItem{t, {}, vars, loc});
    }
  }
  flush_comments();
  return program;
}

namespace {

ParsedQuery read_single(std::string_view text, const OperatorTable& ops,
                        bool unwrap_solve) {
  ParsedQuery query;
  query.arena = std::make_shared<Arena>(4096);
  Parser parser(text, *query.arena, ops);
  if (parser.at_eof())
    parser.fail("empty query");
  Term* t = parser.read_clause(query.vars);
  if (!parser.at_eof())
    parser.fail("text after end of query");
  if (unwrap_solve) {
    if (is_functor(t, "?-", 1))
      t = t->args[0];
    if (t->is_ctor() && t->arity == 1 && t->name == sym::solve())
      t = t->args[0];
  }
  query.goal = t;
  for (std::uint32_t i = 0; i < query.vars.count; ++i)
    if (query.vars.names[i].str() != "_")
      query.answer_vars.push_back(i);
  return query;
}

} // namespace

ParsedQuery parse_query(std::string_view text, const OperatorTable& ops) {
  return read_single(text, ops, true);
}

ParsedQuery parse_term(std::string_view text, const OperatorTable& ops) {
  return read_single(text, ops, false);
}

namespace {

std::string join_terms(const std::vector<Term*>& terms, const OperatorTable& ops,
                       std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i != 0)
      out += sep;
    out += format_term(terms[i], ops, source_var_name, 999);
  }
  return out;
}

} // namespace

std::string format_item(const ProgramItem& item, const OperatorTable& ops) {
  struct Visitor {
    const OperatorTable& ops;
    std::string operator()(const ClauseItem& c) const {
      std::string out = format_term(c.head, ops, source_var_name, 1199);
      if (!c.body.empty())
        out += " :- " + join_terms(c.body, ops, ", ");
      return out + ".\n";
    }
    std::string operator()(const RuleItem& r) const {
      return format_term(r.lhs, ops, source_var_name, 1199) + " ->> " +
             format_term(r.rhs, ops, source_var_name, 1199) + ".\n";
    }
    std::string operator()(const PredDecl& p) const {
      std::string out = "pred " + format_atom(p.name);
      if (!p.arg_types.empty())
        out += "(" + join_terms(p.arg_types, ops, ",") + ")";
      return out + ".\n";
    }
    std::string operator()(const FunDecl& f) const {
      std::string out = "function " + format_atom(f.name);
      if (!f.arg_types.empty())
        out += "(" + join_terms(f.arg_types, ops, ",") + ")";
      return out + " =>> " + format_term(f.result, ops, source_var_name, 899) + ".\n";
    }
    std::string operator()(const CtorDecl& c) const {
      return "constructors " + format_term(c.type_pattern, ops, source_var_name, 1099) +
             " => " + join_terms(c.ctors, ops, ", ") + ".\n";
    }
    std::string operator()(const OpDecl& o) const {
      return "op(" + std::to_string(o.priority) + "," +
             std::string(fixity_name(o.fixity)) + "," + format_atom(o.name) + ").\n";
    }
    std::string operator()(const CommentItem& c) const { return c.text + "\n"; }
  };
  return std::visit(Visitor{ops}, item);
}

} // namespace lazylog
