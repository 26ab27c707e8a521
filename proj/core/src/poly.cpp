#include "gg/poly.hpp"

#include <cstdlib>
#include <sstream>
#include <utility>

namespace gg {

namespace {

std::size_t default_max_degree() {
  if (const char* env = std::getenv("GG_MAX_DEGREE")) {
    long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 16;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(what);
}

}  // namespace

PolyContext::PolyContext(std::size_t spin, std::size_t rank_e)
    : PolyContext(spin, rank_e, default_max_degree()) {}

PolyContext::PolyContext(std::size_t spin, std::size_t rank_e,
                         std::size_t max_degree)
    : spin_(spin), rank_e_(rank_e), max_degree_(max_degree) {
  require(rank_e > 0, "rank_e must be positive");
  require(max_degree > 0, "max_degree must be positive");
}

std::size_t PolyContext::x_index(std::size_t a, std::size_t big_a) const {
  require(a < rank_e_ && big_a <= spin_, "coordinate index out of range");
  return a * h_dim() + big_a;
}

std::size_t PolyContext::u_index(bool plus, std::size_t alpha) const {
  require(alpha < 2, "harmonic index out of range");
  return num_x() + (plus ? 0 : 2) + alpha;
}

int PolyContext::charge_of_var(std::size_t v) const {
  if (v < num_x()) return 0;
  return v < num_x() + 2 ? 1 : -1;
}

std::string PolyContext::var_name(std::size_t v) const {
  std::ostringstream os;
  if (v < num_x()) {
    std::size_t a = v / h_dim(), big_a = v % h_dim();
    os << "x[" << a + 1 << ",";
    for (std::size_t i = 0; i < spin_; ++i) os << (i < spin_ - big_a ? 1 : 2);
    os << "]";
  } else {
    std::size_t r = v - num_x();
    os << "u[" << (r < 2 ? "+" : "-") << "," << r % 2 + 1 << "]";
  }
  return os.str();
}

Poly::Poly(const PolyContext* ctx) : ctx_(ctx) {}

Poly Poly::constant(const PolyContext* ctx, const Scalar& c) {
  Poly p(ctx);
  p.add_term(Monomial(ctx->num_vars(), 0), c);
  return p;
}

Poly Poly::variable(const PolyContext* ctx, std::size_t v) {
  require(v < ctx->num_vars(), "variable index out of range");
  Poly p(ctx);
  Monomial m(ctx->num_vars(), 0);
  m[v] = 1;
  p.add_term(std::move(m), Scalar(1));
  return p;
}

void Poly::add_term(Monomial m, Scalar c) {
  const std::size_t up1 = ctx_->u_index(true, 0);
  const std::size_t up2 = ctx_->u_index(true, 1);
  const std::size_t um1 = ctx_->u_index(false, 0);
  const std::size_t um2 = ctx_->u_index(false, 1);

  std::vector<std::pair<Monomial, Scalar>> work;
  work.emplace_back(std::move(m), std::move(c));
  while (!work.empty()) {
    auto [mono, co] = std::move(work.back());
    work.pop_back();
    if (co.is_zero()) continue;
    if (mono[up1] > 0 && mono[um2] > 0) {
      // u[+,1] u[-,2]  ->  1 + u[+,2] u[-,1]
      Monomial rest = mono;
      --rest[up1];
      --rest[um2];
      Monomial swapped = rest;
      ++swapped[up2];
      ++swapped[um1];
      work.emplace_back(std::move(rest), co);
      work.emplace_back(std::move(swapped), std::move(co));
      continue;
    }
    std::size_t xdeg = 0;
    for (std::size_t v = 0; v < ctx_->num_x(); ++v) xdeg += mono[v];
    if (xdeg > ctx_->max_degree()) {
      std::ostringstream os;
      os << "coordinate degree " << xdeg << " exceeds the bound "
         << ctx_->max_degree() << " (set GG_MAX_DEGREE to raise it)";
      throw DegreeBoundError(os.str());
    }
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
      terms_.emplace(std::move(mono), std::move(co));
    } else {
      it->second += co;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
}

Scalar Poly::constant_term() const {
  auto it = terms_.find(Monomial(ctx_->num_vars(), 0));
  return it == terms_.end() ? Scalar(0) : it->second;
}

std::optional<int> Poly::charge() const {
  std::optional<int> q;
  for (const auto& [m, c] : terms_) {
    int mq = 0;
    for (std::size_t v = ctx_->num_x(); v < ctx_->num_vars(); ++v)
      mq += ctx_->charge_of_var(v) * int(m[v]);
    if (!q)
      q = mq;
    else if (*q != mq)
      return std::nullopt;
  }
  return q;
}

std::size_t Poly::x_degree() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) {
    std::size_t md = 0;
    for (std::size_t v = 0; v < ctx_->num_x(); ++v) md += m[v];
    if (md > d) d = md;
  }
  return d;
}

Poly Poly::homogeneous_x_part(std::size_t d) const {
  Poly out(ctx_);
  for (const auto& [m, c] : terms_) {
    std::size_t md = 0;
    for (std::size_t v = 0; v < ctx_->num_x(); ++v) md += m[v];
    if (md == d) out.terms_.emplace(m, c);
  }
  return out;
}

Poly Poly::partial(std::size_t v) const {
  require(v < ctx_->num_vars(), "variable index out of range");
  Poly out(ctx_);
  for (const auto& [m, c] : terms_) {
    if (m[v] == 0) continue;
    Monomial d = m;
    --d[v];
    out.add_term(std::move(d), Scalar(long(m[v])) * c);
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out(ctx_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  require(a.ctx_ == b.ctx_, "polynomials from different contexts");
  Poly out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

Poly operator-(const Poly& a, const Poly& b) {
  require(a.ctx_ == b.ctx_, "polynomials from different contexts");
  Poly out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  require(a.ctx_ == b.ctx_, "polynomials from different contexts");
  Poly out(a.ctx_);
  const std::size_t nv = a.ctx_->num_vars();
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m(nv);
      for (std::size_t v = 0; v < nv; ++v)
        m[v] = std::uint16_t(ma[v] + mb[v]);
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

Poly operator*(const Scalar& c, const Poly& a) {
  Poly out(a.ctx_);
  if (c.is_zero()) return out;
  for (const auto& [m, co] : a.terms_) out.terms_.emplace(m, c * co);
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (std::size_t v = 0; v < ctx_->num_vars(); ++v) {
      if (m[v] == 0) continue;
      os << "*" << ctx_->var_name(v);
      if (m[v] > 1) os << "^" << m[v];
    }
  }
  return os.str();
}

}  // namespace gg
