#include "strelgen/autodiff.hpp"

#include <cmath>

namespace strelgen {

int Tape::push(double value,
               std::initializer_list<std::pair<int, double>> parents) {
  (void)value;
  Node n;
  n.offset = static_cast<uint32_t>(parent_index_.size());
  for (const auto& [idx, partial] : parents) {
    if (idx < 0) continue;
    parent_index_.push_back(idx);
    parent_partial_.push_back(partial);
    ++n.n_parents;
  }
  nodes_.push_back(n);
  return static_cast<int>(nodes_.size()) - 1;
}

DiffScalar Tape::var(double value) {
  return DiffScalar(this, push(value, {}), value);
}

DiffScalar Tape::unary(double value, const DiffScalar& a, double da) {
  if (a.is_const()) return DiffScalar(value);
  return DiffScalar(this, push(value, {{a.index(), da}}), value);
}

DiffScalar Tape::binary(double value, const DiffScalar& a, double da,
                        const DiffScalar& b, double db) {
  if (a.is_const() && b.is_const()) return DiffScalar(value);
  return DiffScalar(
      this,
      push(value, {{a.is_const() ? -1 : a.index(), da},
                   {b.is_const() ? -1 : b.index(), db}}),
      value);
}

DiffScalar Tape::nary(double value, const std::vector<DiffScalar>& xs,
                      const std::vector<double>& partials) {
  Node n;
  n.offset = static_cast<uint32_t>(parent_index_.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].is_const()) continue;
    parent_index_.push_back(xs[i].index());
    parent_partial_.push_back(partials[i]);
    ++n.n_parents;
  }
  if (n.n_parents == 0) return DiffScalar(value);
  nodes_.push_back(n);
  return DiffScalar(this, static_cast<int>(nodes_.size()) - 1, value);
}

std::vector<double> Tape::adjoints(const DiffScalar& output) const {
  std::vector<double> adj(nodes_.size(), 0.0);
  if (output.is_const() || output.tape() != this) return adj;
  adj[output.index()] = 1.0;
  for (int i = output.index(); i >= 0; --i) {
    const double a = adj[i];
    if (a == 0.0) continue;
    const Node& n = nodes_[i];
    for (uint32_t k = 0; k < n.n_parents; ++k)
      adj[parent_index_[n.offset + k]] += a * parent_partial_[n.offset + k];
  }
  return adj;
}

std::vector<double> Tape::gradient(const DiffScalar& output,
                                   const std::vector<DiffScalar>& inputs) const {
  std::vector<double> adj = adjoints(output);
  std::vector<double> g(inputs.size(), 0.0);
  for (size_t i = 0; i < inputs.size(); ++i)
    if (!inputs[i].is_const() && inputs[i].tape() == this)
      g[i] = adj[inputs[i].index()];
  return g;
}

static Tape* tape_of(const DiffScalar& a, const DiffScalar& b) {
  return a.is_const() ? b.tape() : a.tape();
}

DiffScalar operator+(const DiffScalar& a, const DiffScalar& b) {
  Tape* t = tape_of(a, b);
  if (!t) return DiffScalar(a.value() + b.value());
  return t->binary(a.value() + b.value(), a, 1.0, b, 1.0);
}

DiffScalar operator-(const DiffScalar& a, const DiffScalar& b) {
  Tape* t = tape_of(a, b);
  if (!t) return DiffScalar(a.value() - b.value());
  return t->binary(a.value() - b.value(), a, 1.0, b, -1.0);
}

DiffScalar operator*(const DiffScalar& a, const DiffScalar& b) {
  Tape* t = tape_of(a, b);
  if (!t) return DiffScalar(a.value() * b.value());
  return t->binary(a.value() * b.value(), a, b.value(), b, a.value());
}

DiffScalar operator/(const DiffScalar& a, const DiffScalar& b) {
  Tape* t = tape_of(a, b);
  if (!t) return DiffScalar(a.value() / b.value());
  const double inv = 1.0 / b.value();
  return t->binary(a.value() * inv, a, inv, b, -a.value() * inv * inv);
}

DiffScalar operator-(const DiffScalar& a) {
  if (a.is_const()) return DiffScalar(-a.value());
  return a.tape()->unary(-a.value(), a, -1.0);
}

DiffScalar operator+(const DiffScalar& a, double b) { return a + DiffScalar(b); }
DiffScalar operator+(double a, const DiffScalar& b) { return DiffScalar(a) + b; }
DiffScalar operator-(const DiffScalar& a, double b) { return a - DiffScalar(b); }
DiffScalar operator-(double a, const DiffScalar& b) { return DiffScalar(a) - b; }
DiffScalar operator*(const DiffScalar& a, double b) { return a * DiffScalar(b); }
DiffScalar operator*(double a, const DiffScalar& b) { return DiffScalar(a) * b; }
DiffScalar operator/(const DiffScalar& a, double b) { return a / DiffScalar(b); }
DiffScalar operator/(double a, const DiffScalar& b) { return DiffScalar(a) / b; }

DiffScalar sqrt(const DiffScalar& a) {
  const double v = std::sqrt(a.value());
  if (a.is_const()) return DiffScalar(v);
  const double da = v > 0 ? 0.5 / v : 0.0;  // subgradient 0 at the kink
  return a.tape()->unary(v, a, da);
}

DiffScalar exp(const DiffScalar& a) {
  const double v = std::exp(a.value());
  if (a.is_const()) return DiffScalar(v);
  return a.tape()->unary(v, a, v);
}

DiffScalar log(const DiffScalar& a) {
  const double v = std::log(a.value());
  if (a.is_const()) return DiffScalar(v);
  return a.tape()->unary(v, a, 1.0 / a.value());
}

DiffScalar abs(const DiffScalar& a) {
  const double v = std::abs(a.value());
  if (a.is_const()) return DiffScalar(v);
  const double s = a.value() > 0 ? 1.0 : (a.value() < 0 ? -1.0 : 0.0);
  return a.tape()->unary(v, a, s);
}

DiffScalar sin(const DiffScalar& a) {
  const double v = std::sin(a.value());
  if (a.is_const()) return DiffScalar(v);
  return a.tape()->unary(v, a, std::cos(a.value()));
}

DiffScalar cos(const DiffScalar& a) {
  const double v = std::cos(a.value());
  if (a.is_const()) return DiffScalar(v);
  return a.tape()->unary(v, a, -std::sin(a.value()));
}

DiffScalar atan2(const DiffScalar& y, const DiffScalar& x) {
  const double v = std::atan2(y.value(), x.value());
  Tape* t = tape_of(y, x);
  if (!t) return DiffScalar(v);
  const double d = y.value() * y.value() + x.value() * x.value();
  const double dy = d > 0 ? x.value() / d : 0.0;
  const double dx = d > 0 ? -y.value() / d : 0.0;
  return t->binary(v, y, dy, x, dx);
}

DiffScalar fmod(const DiffScalar& a, double m) {
  const double v = std::fmod(a.value(), m);
  if (a.is_const()) return DiffScalar(v);
  return a.tape()->unary(v, a, 1.0);
}

}  // namespace strelgen
