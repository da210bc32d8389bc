#include "nchol/weyl.hpp"

#include <numeric>
#include <sstream>

#include "nchol/errors.hpp"

namespace nchol {

namespace {

std::size_t order(const MultiIndex& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); }

std::string monomial_str(const MultiIndex& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    s += "∂" + std::to_string(i + 1);
    if (v[i] > 1) s += "^" + std::to_string(v[i]);
  }
  return s;
}

GridIndex side_index(const GridIndex& nu) {
  std::vector<Exponent> c;
  for (const auto& e : nu.coords()) c.emplace_back(Rational(-1) - e.value());
  return GridIndex(std::move(c));
}

}  // namespace

SymbolElement::SymbolElement(std::size_t n, std::size_t order_bound) : n_(n), bound_(order_bound) {}

SymbolElement SymbolElement::basis(std::size_t n, const std::string& label, const MultiIndex& right,
                                   std::size_t order_bound) {
  SymbolElement x(n, order_bound);
  x.add(label, MultiIndex(n, 0), right, Rational(1));
  return x;
}

void SymbolElement::add(const std::string& label, const MultiIndex& left, const MultiIndex& right, const Rational& c) {
  if (left.size() != n_ || right.size() != n_) throw Error(Errc::InvalidArgument, "multi-index has wrong length");
  if (order(left) + order(right) > bound_)
    throw Error(Errc::OrderOverflow, "term of order " + std::to_string(order(left) + order(right)) +
                                         " exceeds the bound " + std::to_string(bound_));
  if (c.is_zero()) return;
  SymbolKey key{label, left, right};
  auto [it, fresh] = terms_.emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::string SymbolElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    first = false;
    Rational a = c.abs();
    if (a != Rational(1)) os << a.pretty() << "*";
    std::string r = monomial_str(k.right);
    os << k.label << monomial_str(k.left) << "⊗" << (r.empty() ? "1" : r);
  }
  return os.str();
}

std::vector<MultiIndex> multi_indices(std::size_t n, std::size_t max_order) {
  std::vector<MultiIndex> out;
  for (std::size_t total = 0; total <= max_order; ++total) {
    // compositions of `total` into n parts, lexicographically descending in the first slot
    MultiIndex v(n, 0);
    auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
      if (n == 0) {
        if (left == 0) out.push_back(v);
        return;
      }
      if (i + 1 == n) {
        v[i] = static_cast<unsigned>(left);
        out.push_back(v);
        return;
      }
      for (std::size_t a = left + 1; a-- > 0;) {
        v[i] = static_cast<unsigned>(a);
        self(self, i + 1, left - a);
      }
    };
    rec(rec, 0, total);
  }
  return out;
}

SymbolElement involution_iota(const SymbolElement& x) {
  const std::size_t n = x.variables();
  SymbolElement out(n, x.order_bound());
  for (const auto& [key, c] : x.terms()) {
    const MultiIndex& nu = key.right;
    // enumerate k <= nu
    MultiIndex k(n, 0);
    for (;;) {
      Rational coeff = c;
      MultiIndex left(n);
      for (std::size_t i = 0; i < n; ++i) {
        coeff *= binomial(nu[i], k[i]);
        if (k[i] % 2) coeff = -coeff;
        left[i] = key.left[i] + nu[i] - k[i];
      }
      out.add(key.label, left, k, coeff);
      std::size_t i = 0;
      while (i < n && k[i] == nu[i]) k[i++] = 0;
      if (i == n) break;
      ++k[i];
    }
  }
  return out;
}

NCModule side_change(const NCModule& m) {
  require_valid(m, "side_change");
  NCModule out(m.axes());
  for (const auto& [nu, d] : m.slices()) out.set_slice(side_index(nu), d);
  for (const auto& [nu, d] : m.slices()) {
    GridIndex s = side_index(nu);
    for (std::size_t i = 0; i < m.axes(); ++i) {
      out.set_theta(i, s, Matrix::scalar(d, Rational(-1)) - m.theta(i, nu));
      if (!nu[i].is_minus_one() || !m.has_slice(nu.raised(i))) continue;
      GridIndex mu = side_index(nu.raised(i));
      out.set_var(i, mu, m.can(i, nu));
      out.set_can(i, mu, -m.var(i, nu));
    }
  }
  return out;
}

NCMorphism side_change_double_iso(const NCModule& m) {
  NCMorphism f(m, side_change(side_change(m)));
  for (const auto& [nu, d] : m.slices())
    f.set(nu, Matrix::scalar(d, Rational(nu.count_minus_one() % 2 ? -1 : 1)));
  return f;
}

NCModule transpose_module(const NCModule& m) {
  require_valid(m, "transpose_module");
  NCModule out(m.axes());
  for (const auto& [nu, d] : m.slices()) out.set_slice(nu, d);
  for (const auto& [nu, d] : m.slices())
    for (std::size_t i = 0; i < m.axes(); ++i) {
      out.set_theta(i, nu, m.theta(i, nu).transpose());
      if (!nu[i].is_minus_one() || !m.has_slice(nu.raised(i))) continue;
      out.set_var(i, nu, m.can(i, nu).transpose());
      out.set_can(i, nu, m.var(i, nu).transpose());
    }
  return out;
}

}  // namespace nchol
