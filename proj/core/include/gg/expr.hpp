#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gg/harmonic.hpp"
#include "gg/polymatrix.hpp"
#include "gg/scalar.hpp"

namespace gg {

/// A small expression language for matrix-valued inputs (prepotentials,
/// torsion tensors).  Grammar:
///
///   expression -> ['-'] term (('+' | '-') term)*
///   term       -> factor ('*' factor)*
///   factor     -> primary ('^' uint)?
///   primary    -> number | ident ('[' arg (',' arg)* ']')?
///               | '(' expression ')' | '[' row (',' row)* ']'
///   row        -> '[' expression (',' expression)* ']'
///   arg        -> uint | '+' | '-'
///   number     -> uint ('/' uint)?
///
/// The leading unary minus is an extension of the sum rule so that printed
/// scalars such as "-i" read back.  Numbers are nonnegative rationals;
/// negative values and the imaginary unit are spelled with '-' and 'i'.
/// The language is deterministic LL(1): a primary starting with '[' is a
/// matrix literal, an identifier followed by '[' is an indexed reference.

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Every diagnostic of the parser and the elaborator carries the position
/// of the offending token, rendered as "... at line:column".
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, SourcePos pos)
      : Error(msg + " at " + std::to_string(pos.line) + ":" +
              std::to_string(pos.column)),
        pos_(pos) {}

  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct ExprNode;
using ExprPtr = std::unique_ptr<ExprNode>;

struct ExprNode {
  enum class Kind {
    number,     // value
    reference,  // name, args (raw spellings: "1", "112", "+", "-")
    negate,     // children[0]
    add,        // children[0] + children[1]
    subtract,   // children[0] - children[1]
    multiply,   // children[0] * children[1]
    power,      // children[0] ^ exponent
    matrix,     // rows of scalar expressions
  };

  Kind kind;
  SourcePos pos;
  Scalar value;
  std::string name;
  std::vector<std::string> args;
  std::vector<ExprPtr> children;
  std::vector<std::vector<ExprPtr>> rows;
  unsigned exponent = 0;
};

/// Parse tree plus the source it came from (kept for diagnostics).
struct Ast {
  ExprPtr root;
};

/// Parses UTF-8 source into an Ast, or throws ParseError (lexical error,
/// unexpected token, unexpected end of input) with line:column.
Ast parse(const std::string& source);

/// Name resolution context for elaboration.  `model` supplies the variable
/// layout and the analytic coordinates; `named` holds constant matrices
/// declared by the surrounding configuration (nilpotent generators and the
/// like); `gauge_rank` is the shape scalars are promoted to when a whole
/// expression evaluates to a scalar.
///
/// Identifier table:
///   x[a, A]        coordinate; a is the 1-based block, A the sorted
///                  multi-index on {1,2} of length spin (e.g. x[1,2],
///                  x[2,112])
///   u[+,alpha], u[-,alpha]   harmonics, alpha in {1, 2}
///   xplus[a], xminus[a]      analytic coordinates, spin-1 models only
///   xppp[a], xppm[a], xpmm[a], xmmm[a]   analytic coordinates, spin 3
///   i              the imaginary unit
///   <name>         a matrix from `named`
struct VarTable {
  const HarmonicModel* model = nullptr;
  std::size_t gauge_rank = 1;
  std::map<std::string, PolyMatrix> named;
};

/// Evaluates the tree over the table.  Scalars combine with scalars,
/// matrices of equal shape add, scalar * matrix scales, matrix * matrix
/// requires matching inner shape, powers of matrices require square shape;
/// anything else throws ParseError at the node position, as do undeclared
/// identifiers, bad indices, and analytic coordinates of the wrong spin
/// mode.  A scalar result is returned as value * identity(gauge_rank).
///
/// The canonical text form of the result (PolyMatrix::str or Poly::str)
/// reparses and re-elaborates to the same value, which is the round-trip
/// property the reports rely on.
PolyMatrix elaborate(const Ast& ast, const VarTable& table);

/// Convenience overload: no named matrices, scalar promotion to rank 1.
PolyMatrix elaborate(const Ast& ast, const HarmonicModel& model);

}  // namespace gg
