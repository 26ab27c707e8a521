#include "gg/expr.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <variant>

namespace gg {

namespace {

enum class TokKind {
  number,
  ident,
  plus,
  minus,
  star,
  caret,
  lbracket,
  rbracket,
  lparen,
  rparen,
  comma,
  end,
};

struct Token {
  TokKind kind;
  std::string text;
  SourcePos pos;
};

std::string describe(const Token& t) {
  if (t.kind == TokKind::end) return "end of input";
  return "token '" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourcePos pos = pos_;
      if (at_ >= src_.size()) {
        out.push_back({TokKind::end, "", pos});
        return out;
      }
      char c = src_[at_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back({TokKind::number, lex_number(), pos});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name;
        while (at_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[at_])) ||
                src_[at_] == '_')) {
          name.push_back(src_[at_]);
          advance();
        }
        out.push_back({TokKind::ident, std::move(name), pos});
        continue;
      }
      TokKind kind;
      switch (c) {
        case '+': kind = TokKind::plus; break;
        case '-': kind = TokKind::minus; break;
        case '*': kind = TokKind::star; break;
        case '^': kind = TokKind::caret; break;
        case '[': kind = TokKind::lbracket; break;
        case ']': kind = TokKind::rbracket; break;
        case '(': kind = TokKind::lparen; break;
        case ')': kind = TokKind::rparen; break;
        case ',': kind = TokKind::comma; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'",
                           pos);
      }
      out.push_back({kind, std::string(1, c), pos});
      advance();
    }
  }

 private:
  void advance() {
    if (src_[at_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++at_;
  }

  void skip_space() {
    while (at_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[at_]))) {
      advance();
    }
  }

  std::string lex_number() {
    std::string text;
    auto digits = [&] {
      while (at_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[at_]))) {
        text.push_back(src_[at_]);
        advance();
      }
    };
    digits();
    // A '/' continues the literal only when a denominator follows, so that
    // rationals like 3/2 lex as one token without stealing a slash that
    // the grammar would reject anyway.
    if (at_ + 1 < src_.size() && src_[at_] == '/' &&
        std::isdigit(static_cast<unsigned char>(src_[at_ + 1]))) {
      text.push_back('/');
      advance();
      digits();
    }
    return text;
  }

  const std::string& src_;
  std::size_t at_ = 0;
  SourcePos pos_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Ast run() {
    Ast ast;
    ast.root = expression();
    if (peek().kind != TokKind::end) {
      throw ParseError("unexpected " + describe(peek()), peek().pos);
    }
    return ast;
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  Token take() { return toks_[at_++]; }

  Token expect(TokKind kind, const char* what) {
    if (peek().kind != kind) {
      if (peek().kind == TokKind::end) {
        throw ParseError("unexpected end of input", peek().pos);
      }
      throw ParseError("expected " + std::string(what) + ", found " +
                           describe(peek()),
                       peek().pos);
    }
    return take();
  }

  static ExprPtr node(ExprNode::Kind kind, SourcePos pos) {
    auto n = std::make_unique<ExprNode>();
    n->kind = kind;
    n->pos = pos;
    return n;
  }

  ExprPtr expression() {
    ExprPtr lhs;
    if (peek().kind == TokKind::minus) {
      Token m = take();
      ExprPtr neg = node(ExprNode::Kind::negate, m.pos);
      neg->children.push_back(term());
      lhs = std::move(neg);
    } else {
      lhs = term();
    }
    while (peek().kind == TokKind::plus || peek().kind == TokKind::minus) {
      Token op = take();
      ExprPtr sum = node(op.kind == TokKind::plus ? ExprNode::Kind::add
                                                  : ExprNode::Kind::subtract,
                         op.pos);
      sum->children.push_back(std::move(lhs));
      sum->children.push_back(term());
      lhs = std::move(sum);
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (peek().kind == TokKind::star) {
      Token op = take();
      ExprPtr prod = node(ExprNode::Kind::multiply, op.pos);
      prod->children.push_back(std::move(lhs));
      prod->children.push_back(factor());
      lhs = std::move(prod);
    }
    return lhs;
  }

  ExprPtr factor() {
    ExprPtr base = primary();
    if (peek().kind != TokKind::caret) return base;
    Token caret = take();
    Token exp = expect(TokKind::number, "an exponent");
    if (exp.text.find('/') != std::string::npos || exp.text.size() > 6) {
      throw ParseError("exponent must be a small nonnegative integer",
                       exp.pos);
    }
    ExprPtr pow = node(ExprNode::Kind::power, caret.pos);
    pow->children.push_back(std::move(base));
    pow->exponent = static_cast<unsigned>(std::stoul(exp.text));
    return pow;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::number: {
        Token num = take();
        ExprPtr n = node(ExprNode::Kind::number, num.pos);
        n->value = Scalar::from_string(num.text);
        return n;
      }
      case TokKind::ident: {
        Token id = take();
        ExprPtr n = node(ExprNode::Kind::reference, id.pos);
        n->name = id.text;
        if (peek().kind == TokKind::lbracket) {
          take();
          for (;;) {
            n->args.push_back(argument());
            if (peek().kind == TokKind::comma) {
              take();
              continue;
            }
            expect(TokKind::rbracket, "']'");
            break;
          }
        }
        return n;
      }
      case TokKind::lparen: {
        take();
        ExprPtr inner = expression();
        expect(TokKind::rparen, "')'");
        return inner;
      }
      case TokKind::lbracket:
        return matrix();
      case TokKind::end:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected " + describe(t), t.pos);
    }
  }

  std::string argument() {
    switch (peek().kind) {
      case TokKind::number:
      case TokKind::plus:
      case TokKind::minus:
        return take().text;
      case TokKind::end:
        throw ParseError("unexpected end of input", peek().pos);
      default:
        throw ParseError("expected an index, found " + describe(peek()),
                         peek().pos);
    }
  }

  ExprPtr matrix() {
    Token open = expect(TokKind::lbracket, "'['");
    ExprPtr m = node(ExprNode::Kind::matrix, open.pos);
    for (;;) {
      expect(TokKind::lbracket, "a matrix row");
      std::vector<ExprPtr> row;
      for (;;) {
        row.push_back(expression());
        if (peek().kind == TokKind::comma) {
          take();
          continue;
        }
        expect(TokKind::rbracket, "']'");
        break;
      }
      m->rows.push_back(std::move(row));
      if (peek().kind == TokKind::comma) {
        take();
        continue;
      }
      expect(TokKind::rbracket, "']'");
      break;
    }
    return m;
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

// ---------------------------------------------------------------- elaborate

using Value = std::variant<Poly, PolyMatrix>;

class Elaborator {
 public:
  Elaborator(const VarTable& table) : table_(table) {
    if (table_.model == nullptr) {
      throw Error("elaboration requires a model");
    }
    ctx_ = table_.model->context();
  }

  PolyMatrix run(const Ast& ast) {
    if (!ast.root) throw Error("empty expression");
    Value v = eval(*ast.root);
    if (auto* m = std::get_if<PolyMatrix>(&v)) return std::move(*m);
    return std::get<Poly>(v) *
           PolyMatrix::identity(ctx_, table_.gauge_rank);
  }

 private:
  Value eval(const ExprNode& n) {
    switch (n.kind) {
      case ExprNode::Kind::number:
        return Poly::constant(ctx_, n.value);
      case ExprNode::Kind::reference:
        return reference(n);
      case ExprNode::Kind::negate:
        return std::visit([](auto&& v) -> Value { return -std::move(v); },
                          eval(*n.children[0]));
      case ExprNode::Kind::add:
      case ExprNode::Kind::subtract:
        return sum(n);
      case ExprNode::Kind::multiply:
        return product(n);
      case ExprNode::Kind::power:
        return power(n);
      case ExprNode::Kind::matrix:
        return matrix(n);
    }
    throw Error("corrupt expression tree");
  }

  Value sum(const ExprNode& n) {
    Value a = eval(*n.children[0]);
    Value b = eval(*n.children[1]);
    const bool sub = n.kind == ExprNode::Kind::subtract;
    if (std::holds_alternative<Poly>(a) && std::holds_alternative<Poly>(b)) {
      const Poly& x = std::get<Poly>(a);
      const Poly& y = std::get<Poly>(b);
      return sub ? x - y : x + y;
    }
    if (std::holds_alternative<PolyMatrix>(a) &&
        std::holds_alternative<PolyMatrix>(b)) {
      const PolyMatrix& x = std::get<PolyMatrix>(a);
      const PolyMatrix& y = std::get<PolyMatrix>(b);
      if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw ParseError("shape mismatch in sum", n.pos);
      }
      return sub ? x - y : x + y;
    }
    throw ParseError("cannot add a scalar and a matrix", n.pos);
  }

  Value product(const ExprNode& n) {
    Value a = eval(*n.children[0]);
    Value b = eval(*n.children[1]);
    if (auto* x = std::get_if<Poly>(&a)) {
      if (auto* y = std::get_if<Poly>(&b)) return *x * *y;
      return *x * std::get<PolyMatrix>(b);
    }
    const PolyMatrix& x = std::get<PolyMatrix>(a);
    if (auto* y = std::get_if<Poly>(&b)) return *y * x;
    const PolyMatrix& y = std::get<PolyMatrix>(b);
    if (x.cols() != y.rows()) {
      throw ParseError("shape mismatch in product", n.pos);
    }
    return x * y;
  }

  Value power(const ExprNode& n) {
    Value base = eval(*n.children[0]);
    if (auto* p = std::get_if<Poly>(&base)) {
      Poly acc = Poly::constant(ctx_, 1);
      for (unsigned k = 0; k < n.exponent; ++k) acc = acc * *p;
      return acc;
    }
    const PolyMatrix& m = std::get<PolyMatrix>(base);
    if (m.rows() != m.cols()) {
      throw ParseError("power of a non-square matrix", n.pos);
    }
    PolyMatrix acc = PolyMatrix::identity(ctx_, m.rows());
    for (unsigned k = 0; k < n.exponent; ++k) acc = acc * m;
    return acc;
  }

  Value matrix(const ExprNode& n) {
    const std::size_t cols = n.rows[0].size();
    PolyMatrix m(ctx_, n.rows.size(), cols);
    for (std::size_t r = 0; r < n.rows.size(); ++r) {
      if (n.rows[r].size() != cols) {
        throw ParseError("matrix rows of unequal length", n.pos);
      }
      for (std::size_t c = 0; c < cols; ++c) {
        Value v = eval(*n.rows[r][c]);
        if (!std::holds_alternative<Poly>(v)) {
          throw ParseError("matrix entries must be scalar",
                           n.rows[r][c]->pos);
        }
        m(r, c) = std::move(std::get<Poly>(v));
      }
    }
    return m;
  }

  Value reference(const ExprNode& n) {
    if (n.name == "i" && n.args.empty()) {
      return Poly::constant(ctx_, Scalar::i());
    }
    if (n.name == "x") return coordinate(n);
    if (n.name == "u") return harmonic(n);
    if (const auto k = analytic_kind(n.name)) return analytic(n, *k);
    if (n.args.empty()) {
      auto it = table_.named.find(n.name);
      if (it != table_.named.end()) return it->second;
    }
    throw ParseError("undeclared identifier '" + n.name + "'", n.pos);
  }

  std::size_t uint_arg(const ExprNode& n, std::size_t which) {
    const std::string& a = n.args[which];
    for (char c : a) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError("expected an integer index, found '" + a + "'",
                         n.pos);
      }
    }
    if (a.size() > 6) throw ParseError("index '" + a + "' too large", n.pos);
    return static_cast<std::size_t>(std::stoul(a));
  }

  void want_args(const ExprNode& n, std::size_t count) {
    if (n.args.size() != count) {
      throw ParseError("'" + n.name + "' takes " + std::to_string(count) +
                           (count == 1 ? " index" : " indices"),
                       n.pos);
    }
  }

  std::size_t block_arg(const ExprNode& n) {
    const std::size_t a = uint_arg(n, 0);
    if (a < 1 || a > ctx_->rank_e()) {
      throw ParseError("block index " + n.args[0] + " out of range 1.." +
                           std::to_string(ctx_->rank_e()),
                       n.pos);
    }
    return a - 1;
  }

  Value coordinate(const ExprNode& n) {
    want_args(n, 2);
    const std::size_t a = block_arg(n);
    const std::string& multi = n.args[1];
    if (multi.size() != ctx_->spin()) {
      throw ParseError("multi-index " + multi + " must have length " +
                           std::to_string(ctx_->spin()),
                       n.pos);
    }
    std::size_t twos = 0;
    for (std::size_t p = 0; p < multi.size(); ++p) {
      if (multi[p] == '2') {
        ++twos;
      } else if (multi[p] != '1' || twos > 0) {
        // labels other than 1 and 2, or a 1 after a 2 (not sorted)
        throw ParseError("multi-index " + multi +
                             " is not a sorted word over {1, 2}",
                         n.pos);
      }
    }
    return Poly::variable(ctx_, ctx_->x_index(a, twos));
  }

  Value harmonic(const ExprNode& n) {
    want_args(n, 2);
    const std::string& sign = n.args[0];
    if (sign != "+" && sign != "-") {
      throw ParseError("first index of 'u' must be + or -", n.pos);
    }
    const std::size_t alpha = uint_arg(n, 1);
    if (alpha < 1 || alpha > 2) {
      throw ParseError("harmonic index must be 1 or 2", n.pos);
    }
    return Poly::variable(ctx_, ctx_->u_index(sign == "+", alpha - 1));
  }

  std::optional<std::pair<std::size_t, std::size_t>> analytic_kind(
      const std::string& name) const {
    // name -> (required spin, number of minus contractions)
    if (name == "xplus") return {{1, 0}};
    if (name == "xminus") return {{1, 1}};
    if (name == "xppp") return {{3, 0}};
    if (name == "xppm") return {{3, 1}};
    if (name == "xpmm") return {{3, 2}};
    if (name == "xmmm") return {{3, 3}};
    return std::nullopt;
  }

  Value analytic(const ExprNode& n, std::pair<std::size_t, std::size_t> k) {
    if (ctx_->spin() != k.first) {
      throw ParseError("analytic coordinate '" + n.name +
                           "' is not valid for spin " +
                           std::to_string(ctx_->spin()),
                       n.pos);
    }
    want_args(n, 1);
    return table_.model->analytic_coord(block_arg(n), k.second);
  }

  const VarTable& table_;
  const PolyContext* ctx_ = nullptr;
};

}  // namespace

Ast parse(const std::string& source) {
  return Parser(Lexer(source).run()).run();
}

PolyMatrix elaborate(const Ast& ast, const VarTable& table) {
  return Elaborator(table).run(ast);
}

PolyMatrix elaborate(const Ast& ast, const HarmonicModel& model) {
  VarTable table;
  table.model = &model;
  return elaborate(ast, table);
}

}  // namespace gg
