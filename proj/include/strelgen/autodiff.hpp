#pragma once

// Reverse-mode automatic differentiation on a scalar tape (Wengert list).
// Local partial derivatives are computed during the forward pass; a reverse
// sweep accumulates adjoints. Scalars not attached to a tape are constants.

#include <cstdint>
#include <vector>

#include "strelgen/scene.hpp"

namespace strelgen {

class Tape;

class DiffScalar {
 public:
  DiffScalar() = default;
  /*implicit*/ DiffScalar(double v) : value_(v) {}
  DiffScalar(Tape* tape, int index, double value)
      : tape_(tape), index_(index), value_(value) {}

  double value() const { return value_; }
  Tape* tape() const { return tape_; }
  int index() const { return index_; }
  bool is_const() const { return tape_ == nullptr; }

 private:
  Tape* tape_ = nullptr;
  int index_ = -1;
  double value_ = 0;
};

class Tape {
 public:
  DiffScalar var(double value);

  // Records one operation node. Constant parents contribute no edges.
  DiffScalar unary(double value, const DiffScalar& a, double da);
  DiffScalar binary(double value, const DiffScalar& a, double da,
                    const DiffScalar& b, double db);
  DiffScalar nary(double value, const std::vector<DiffScalar>& xs,
                  const std::vector<double>& partials);

  size_t size() const { return nodes_.size(); }

  // Adjoint of every tape node with respect to `output` (all zero when
  // `output` is a constant).
  std::vector<double> adjoints(const DiffScalar& output) const;
  // d(output)/d(input) for each input; constants give 0.
  std::vector<double> gradient(const DiffScalar& output,
                               const std::vector<DiffScalar>& inputs) const;

 private:
  struct Node {
    uint32_t n_parents = 0;
    uint32_t offset = 0;  // into parent arrays
  };
  int push(double value, std::initializer_list<std::pair<int, double>> parents);

  std::vector<Node> nodes_;
  std::vector<int> parent_index_;
  std::vector<double> parent_partial_;

  friend class DiffScalar;
};

// Arithmetic. Mixing scalars from two different tapes is undefined;
// constants mix with anything.
DiffScalar operator+(const DiffScalar& a, const DiffScalar& b);
DiffScalar operator-(const DiffScalar& a, const DiffScalar& b);
DiffScalar operator*(const DiffScalar& a, const DiffScalar& b);
DiffScalar operator/(const DiffScalar& a, const DiffScalar& b);
DiffScalar operator-(const DiffScalar& a);
DiffScalar operator+(const DiffScalar& a, double b);
DiffScalar operator+(double a, const DiffScalar& b);
DiffScalar operator-(const DiffScalar& a, double b);
DiffScalar operator-(double a, const DiffScalar& b);
DiffScalar operator*(const DiffScalar& a, double b);
DiffScalar operator*(double a, const DiffScalar& b);
DiffScalar operator/(const DiffScalar& a, double b);
DiffScalar operator/(double a, const DiffScalar& b);

inline bool operator<(const DiffScalar& a, const DiffScalar& b) {
  return a.value() < b.value();
}
inline bool operator<=(const DiffScalar& a, const DiffScalar& b) {
  return a.value() <= b.value();
}
inline bool operator>(const DiffScalar& a, const DiffScalar& b) {
  return a.value() > b.value();
}
inline bool operator>=(const DiffScalar& a, const DiffScalar& b) {
  return a.value() >= b.value();
}

DiffScalar sqrt(const DiffScalar& a);
DiffScalar exp(const DiffScalar& a);
DiffScalar log(const DiffScalar& a);
DiffScalar abs(const DiffScalar& a);
DiffScalar sin(const DiffScalar& a);
DiffScalar cos(const DiffScalar& a);
DiffScalar atan2(const DiffScalar& y, const DiffScalar& x);
// fmod against a constant modulus; derivative 1 almost everywhere.
DiffScalar fmod(const DiffScalar& a, double m);

}  // namespace strelgen
