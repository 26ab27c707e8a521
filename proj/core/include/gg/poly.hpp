#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gg/scalar.hpp"

namespace gg {

/// Variable layout for one model: coordinates x[a, A] with a < rank_e and A
/// running over the sorted degree-`spin` multi-indices on {1, 2} (so spin+1
/// values), plus the four harmonic variables u[+,1], u[+,2], u[-,1], u[-,2].
///
/// Polynomials over this layout are always kept in canonical form with
/// respect to the unit-determinant relation
///   u[+,1] u[-,2] - u[+,2] u[-,1] = 1
/// (no canonical monomial contains both u[+,1] and u[-,2]).
///
/// `max_degree` bounds the x-degree of any monomial ever formed; exceeding
/// it throws DegreeBoundError.  This is the guard that turns a
/// non-terminating formal iteration into a hard error instead of a hang.
/// The default is 16, overridable with the environment variable
/// GG_MAX_DEGREE or per context.
class PolyContext {
 public:
  PolyContext(std::size_t spin, std::size_t rank_e);
  PolyContext(std::size_t spin, std::size_t rank_e, std::size_t max_degree);

  std::size_t spin() const { return spin_; }
  std::size_t rank_e() const { return rank_e_; }
  std::size_t max_degree() const { return max_degree_; }

  /// Number of H-labels per coordinate block: spin + 1.
  std::size_t h_dim() const { return spin_ + 1; }
  std::size_t num_x() const { return rank_e_ * h_dim(); }
  std::size_t num_vars() const { return num_x() + 4; }

  /// x[a, A]: a in [0, rank_e), A in [0, spin] counting the 2s of the
  /// sorted multi-index.
  std::size_t x_index(std::size_t a, std::size_t big_a) const;
  /// u[+,alpha] / u[-,alpha], alpha in {0, 1}.
  std::size_t u_index(bool plus, std::size_t alpha) const;

  bool is_x(std::size_t v) const { return v < num_x(); }
  /// +1 for u[+,*], -1 for u[-,*], 0 for coordinates.
  int charge_of_var(std::size_t v) const;
  std::string var_name(std::size_t v) const;

 private:
  std::size_t spin_;
  std::size_t rank_e_;
  std::size_t max_degree_;
};

/// Dense exponent vector, one slot per context variable.
using Monomial = std::vector<std::uint16_t>;

/// Polynomial with exact coefficients over a PolyContext, stored on the
/// canonical monomial basis (see PolyContext).  All operations reduce their
/// result; zero coefficients are never stored.
class Poly {
 public:
  explicit Poly(const PolyContext* ctx);

  static Poly constant(const PolyContext* ctx, const Scalar& c);
  static Poly variable(const PolyContext* ctx, std::size_t v);

  const PolyContext* context() const { return ctx_; }

  /// Adds c * (monomial), rewriting into canonical form.
  void add_term(Monomial m, Scalar c);

  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of the constant monomial.
  Scalar constant_term() const;

  /// Common u-charge (#u+ minus #u-) of all monomials; nullopt when the
  /// polynomial is zero or mixes charges.
  std::optional<int> charge() const;

  /// Largest total degree in the coordinate variables.
  std::size_t x_degree() const;
  /// Sum of the monomials whose x-degree is exactly d.
  Poly homogeneous_x_part(std::size_t d) const;

  /// Formal partial derivative with respect to one variable.
  Poly partial(std::size_t v) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& c, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str() const;

 private:
  const PolyContext* ctx_;
  std::map<Monomial, Scalar> terms_;
};

}  // namespace gg
