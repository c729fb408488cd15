#include "ulam/group.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ulam {

namespace {

[[noreturn]] void throw_carrier_mismatch(const Group& g, const char* wanted) {
  throw std::invalid_argument(std::string("group '") + std::string(g.name()) +
                              "' does not carry " + wanted + " elements");
}

bool is_letter(char c) { return c == 'a' || c == 'b' || c == 'A' || c == 'B'; }

char invert_letter(char c) {
  return static_cast<char>(std::isupper(static_cast<unsigned char>(c))
                               ? std::tolower(static_cast<unsigned char>(c))
                               : std::toupper(static_cast<unsigned char>(c)));
}

// Appends one letter with cancellation against the current last letter.
void push_reduced(std::string& w, char c) {
  if (!w.empty() && w.back() == invert_letter(c)) {
    w.pop_back();
  } else {
    w.push_back(c);
  }
}

std::string reduce_word(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (!is_letter(c)) {
      throw std::invalid_argument(
          "words use the alphabet {a, b, A, B}; got unexpected character");
    }
    push_reduced(out, c);
  }
  return out;
}

}  // namespace

double Element::real() const {
  if (const double* v = std::get_if<double>(&payload_)) return *v;
  throw std::logic_error("element does not carry a real coordinate");
}

const std::string& Element::word() const {
  if (const std::string* w = std::get_if<std::string>(&payload_)) return *w;
  throw std::logic_error("element does not carry a word");
}

std::array<double, 3> Element::coords() const {
  if (const auto* t = std::get_if<std::array<double, 3>>(&payload_)) return *t;
  throw std::logic_error("element does not carry coordinates");
}

void Group::require_owned(const Element& a) const {
  if (&a.owner() != this) {
    throw std::invalid_argument(std::string("element of group '") +
                                std::string(a.owner().name()) +
                                "' used with group '" + std::string(name()) + "'");
  }
}

Element Group::ordered_product(std::span<const Element> factors) const {
  if (factors.empty()) return identity();
  Element acc = factors.front();
  require_owned(acc);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    acc = op(factors[i], acc);
  }
  return acc;
}

Element Group::from_carrier(double) const { throw_carrier_mismatch(*this, "real"); }
Element Group::from_word(std::string_view) const { throw_carrier_mismatch(*this, "word"); }
Element Group::from_coords(double, double, double) const {
  throw_carrier_mismatch(*this, "coordinate");
}

namespace {

// (R, +) with the Euclidean metric. Complete: isometric to the real line.
class AdditiveReals final : public Group {
 public:
  std::string_view name() const noexcept override { return "additive-reals"; }
  Element identity() const override { return make(0.0); }
  Element op(const Element& a, const Element& b) const override {
    require_owned(a);
    require_owned(b);
    return make(a.real() + b.real());
  }
  Element inv(const Element& a) const override {
    require_owned(a);
    return make(-a.real());
  }
  double dist(const Element& a, const Element& b) const override {
    require_owned(a);
    require_owned(b);
    return std::abs(a.real() - b.real());
  }
  double equality_tolerance() const noexcept override { return 1e-12; }
  Element from_carrier(double carrier) const override {
    if (!std::isfinite(carrier)) throw std::invalid_argument("carrier must be finite");
    return make(carrier);
  }
};

// (R_{>0}, ·) stored as logarithms, so d(x,y) = |ln x - ln y| is exact carrier
// arithmetic and long coefficient products never overflow. Complete: the log
// carrier is an isometry onto the real line.
class MultPositiveReals final : public Group {
 public:
  std::string_view name() const noexcept override { return "mult-positive-reals"; }
  Element identity() const override { return make(0.0); }
  Element op(const Element& a, const Element& b) const override {
    require_owned(a);
    require_owned(b);
    return make(a.real() + b.real());
  }
  Element inv(const Element& a) const override {
    require_owned(a);
    return make(-a.real());
  }
  double dist(const Element& a, const Element& b) const override {
    require_owned(a);
    require_owned(b);
    return std::abs(a.real() - b.real());
  }
  double equality_tolerance() const noexcept override { return 1e-12; }
  Element from_carrier(double carrier) const override {
    if (!std::isfinite(carrier)) throw std::invalid_argument("carrier must be finite");
    return make(carrier);
  }
};

// Free group on {a, b} with reduced words and the word-length metric
// d(x, y) = |x^{-1} y|. Integer-valued, so every equality here is exact.
// Complete: the word metric is discrete (distinct words are at distance >= 1),
// hence every Cauchy sequence is eventually constant.
class FreeGroupTwo final : public Group {
 public:
  std::string_view name() const noexcept override { return "free-group-2"; }
  Element identity() const override { return make(std::string()); }
  Element op(const Element& a, const Element& b) const override {
    require_owned(a);
    require_owned(b);
    std::string out = a.word();
    out.reserve(out.size() + b.word().size());
    for (char c : b.word()) push_reduced(out, c);
    return make(std::move(out));
  }
  Element inv(const Element& a) const override {
    require_owned(a);
    const std::string& w = a.word();
    std::string out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(invert_letter(*it));
    return make(std::move(out));
  }
  double dist(const Element& a, const Element& b) const override {
    return static_cast<double>(op(inv(a), b).word().size());
  }
  double equality_tolerance() const noexcept override { return 0.0; }
  Element from_word(std::string_view word) const override {
    return make(reduce_word(word));
  }
};

// Nilpotent group on R^3 with the polarized product
// (x,y,z)·(x',y',z') = (x+x', y+y', z+z'+xy') and the left-invariant gauge
// metric d(p,q) = N(p^{-1}·q), N(x,y,z) = ((x^2+y^2)^2 + 16(z - xy/2)^2)^{1/4}.
// z - xy/2 is the symmetric coordinate of the point, making N conjugation of
// the Cygan gauge; symmetry and the triangle inequality are covered by the
// randomized metric-axiom tests. Complete: N is continuous, vanishes only at
// the identity, and closed gauge balls are compact subsets of R^3.
class HeisenbergGroup final : public Group {
 public:
  std::string_view name() const noexcept override { return "heisenberg"; }
  Element identity() const override { return make(std::array<double, 3>{0.0, 0.0, 0.0}); }
  Element op(const Element& a, const Element& b) const override {
    require_owned(a);
    require_owned(b);
    const auto p = a.coords();
    const auto q = b.coords();
    return make(std::array<double, 3>{p[0] + q[0], p[1] + q[1], p[2] + q[2] + p[0] * q[1]});
  }
  Element inv(const Element& a) const override {
    require_owned(a);
    const auto p = a.coords();
    return make(std::array<double, 3>{-p[0], -p[1], p[0] * p[1] - p[2]});
  }
  double dist(const Element& a, const Element& b) const override {
    const auto d = op(inv(a), b).coords();
    const double plane = d[0] * d[0] + d[1] * d[1];
    const double vertical = d[2] - 0.5 * d[0] * d[1];
    return std::pow(plane * plane + 16.0 * vertical * vertical, 0.25);
  }
  double equality_tolerance() const noexcept override { return 1e-12; }
  Element from_coords(double x, double y, double z) const override {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
      throw std::invalid_argument("coordinates must be finite");
    }
    return make(std::array<double, 3>{x, y, z});
  }
};

}  // namespace

const Group& additive_reals() {
  static const AdditiveReals g;
  return g;
}

const Group& mult_positive_reals() {
  static const MultPositiveReals g;
  return g;
}

const Group& free_group_2() {
  static const FreeGroupTwo g;
  return g;
}

const Group& heisenberg() {
  static const HeisenbergGroup g;
  return g;
}

Element positive_value(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument("multiplicative elements represent strictly positive values");
  }
  return mult_positive_reals().from_carrier(std::log(v));
}

}  // namespace ulam
