#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace ulam {

class Group;

/// Value type for elements of the built-in metric groups. An element
/// remembers the group it belongs to; operations reject elements of a
/// different group at the interface boundary.
class Element {
 public:
  /// Carrier coordinate of the real-carried groups. For the additive reals
  /// this is the value itself; for the multiplicative positive reals it is
  /// the natural logarithm of the represented value.
  double real() const;

  /// Reduced word over {a, b, A, B} (uppercase meaning inverse letters).
  const std::string& word() const;

  /// Coordinates of the nilpotent R^3 instance.
  std::array<double, 3> coords() const;

  const Group& owner() const { return *owner_; }

 private:
  friend class Group;
  using Payload = std::variant<double, std::string, std::array<double, 3>>;
  Element(const Group* owner, Payload payload)
      : owner_(owner), payload_(std::move(payload)) {}

  const Group* owner_;
  Payload payload_;
};

/// A group carrying a metric invariant under left translation:
/// dist(op(x,y), op(x,z)) = dist(y,z). Instances are immutable singletons and
/// every operation is pure, so concurrent use needs no synchronization.
class Group {
 public:
  virtual ~Group() = default;

  virtual std::string_view name() const noexcept = 0;
  virtual Element identity() const = 0;
  virtual Element op(const Element& a, const Element& b) const = 0;
  virtual Element inv(const Element& a) const = 0;
  virtual double dist(const Element& a, const Element& b) const = 0;

  /// Element-equality tolerance: 0 for exact carriers, 1e-12 for floats.
  virtual double equality_tolerance() const noexcept = 0;

  bool approx_equal(const Element& a, const Element& b) const {
    return dist(a, b) <= equality_tolerance();
  }

  /// Product of the input sequence (a_p .. a_n) taken as a_n · a_{n-1} · ... · a_p:
  /// later entries multiply from the left. The empty product is the identity.
  Element ordered_product(std::span<const Element> factors) const;

  // Carrier constructors. A group supporting a different carrier kind throws
  // std::invalid_argument.
  virtual Element from_carrier(double carrier) const;
  virtual Element from_word(std::string_view word) const;
  virtual Element from_coords(double x, double y, double z) const;

 protected:
  Element make(Element::Payload payload) const {
    return Element(this, std::move(payload));
  }
  void require_owned(const Element& a) const;
};

// Built-in instances; each reference is a process-lifetime singleton.
const Group& additive_reals();       // (R, +) with d(a,b) = |a - b|
const Group& mult_positive_reals();  // (R_{>0}, ·) carried in log space
const Group& free_group_2();         // reduced words on two generators, word-length metric
const Group& heisenberg();           // R^3 with (x,y,z)·(x',y',z') = (x+x', y+y', z+z'+xy')

/// Multiplicative-group element representing the positive value v.
Element positive_value(double v);

}  // namespace ulam
