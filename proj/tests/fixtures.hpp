#pragma once

// Randomized problem fixtures shared by the property tests and the acceptance
// suite. Every fixture is built from a known exact solution F: the coefficient
// map is defined as g(x) = F(phi(x)) · F(x)^{-1}, so F solves the equation by
// construction, and the candidate is f = F · q with a decaying right factor q.
// Left-invariance makes the defect equal d(q(phi(x)), q(x)) independently of F
// and g, which doubles as the exact admissible budget.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <string>

#include "ulam/equation.hpp"

namespace fixtures {

struct Fixture {
  ulam::EquationInstance instance;
  ulam::ApproximateSolution approx;
  ulam::PerturbationBudget budget;
  ulam::ApproximateSolution exact;
  double sample_point = 1.0;
  std::string label;
};

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline ulam::Element sample_element(const ulam::Group& group, Rng& rng) {
  using ulam::additive_reals;
  using ulam::free_group_2;
  using ulam::heisenberg;
  using ulam::mult_positive_reals;
  if (&group == &additive_reals() || &group == &mult_positive_reals()) {
    return group.from_carrier(uniform(rng, -10.0, 10.0));
  }
  if (&group == &free_group_2()) {
    static const char kLetters[] = {'a', 'b', 'A', 'B'};
    std::string word;
    const int len = uniform_int(rng, 0, 8);
    for (int i = 0; i < len; ++i) word.push_back(kLetters[uniform_int(rng, 0, 3)]);
    return group.from_word(word);
  }
  return group.from_coords(uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0),
                           uniform(rng, -9.0, 9.0));
}

inline std::string random_reduced_word(Rng& rng, int min_len, int max_len) {
  static const char kLetters[] = {'a', 'b', 'A', 'B'};
  auto inverse_of = [](char c) {
    return std::isupper(static_cast<unsigned char>(c))
               ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
               : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  };
  // rejection-sample until cyclically reduced, so powers never telescope
  while (true) {
    const int len = uniform_int(rng, min_len, max_len);
    std::string word;
    while (static_cast<int>(word.size()) < len) {
      const char c = kLetters[uniform_int(rng, 0, 3)];
      if (!word.empty() && word.back() == inverse_of(c)) continue;
      word.push_back(c);
    }
    if (word.size() < 2 || word.front() != inverse_of(word.back())) return word;
  }
}

// Real-carried fixture over the given group (additive or multiplicative).
inline Fixture make_real_fixture(const ulam::Group& group, Rng& rng,
                                 const std::string& label) {
  Fixture fx;
  const double shift = uniform(rng, 0.5, 2.0);
  const double alpha = uniform(rng, -2.0, 2.0);
  const double beta = uniform(rng, 0.3, 2.0);
  const double gamma = uniform(rng, -1.0, 1.0);
  const double delta = uniform(rng, -2.0, 2.0);
  const double amp = uniform(rng, 0.1, 2.0) * (uniform_int(rng, 0, 1) ? 1.0 : -1.0);
  const double rate = uniform(rng, 1.3, 3.0);

  auto exact_carrier = [alpha, beta, gamma, delta](double x) {
    return alpha * std::sin(beta * x) + gamma * x + delta;
  };
  auto tail_carrier = [amp, rate](double x) { return amp * std::pow(rate, -x); };

  const ulam::Group* g = &group;
  fx.instance.group = g;
  fx.instance.phi = [shift](double x) { return x + shift; };
  fx.instance.g = [g, exact_carrier, shift](double x) {
    return g->from_carrier(exact_carrier(x + shift) - exact_carrier(x));
  };
  fx.instance.name = label;
  fx.exact = [g, exact_carrier](double x) { return g->from_carrier(exact_carrier(x)); };
  fx.approx = [g, exact_carrier, tail_carrier](double x) {
    return g->from_carrier(exact_carrier(x) + tail_carrier(x));
  };
  fx.budget.eps = [tail_carrier, shift](double x) {
    return std::abs(tail_carrier(x + shift) - tail_carrier(x));
  };
  fx.sample_point = uniform(rng, 0.0, 2.0);
  fx.label = label;
  return fx;
}

inline Fixture make_additive_fixture(Rng& rng) {
  return make_real_fixture(ulam::additive_reals(), rng, "additive fixture");
}

inline Fixture make_mult_fixture(Rng& rng) {
  return make_real_fixture(ulam::mult_positive_reals(), rng, "multiplicative fixture");
}

inline Fixture make_heisenberg_fixture(Rng& rng) {
  Fixture fx;
  const ulam::Group* g = &ulam::heisenberg();
  const double shift = uniform(rng, 0.5, 2.0);
  const double a1 = uniform(rng, -1.5, 1.5), b1 = uniform(rng, 0.3, 2.0);
  const double a2 = uniform(rng, -1.5, 1.5), b2 = uniform(rng, 0.3, 2.0);
  const double slope = uniform(rng, -0.3, 0.3);
  const double qa = uniform(rng, -1.0, 1.0), qb = uniform(rng, -1.0, 1.0);
  const double qc = uniform(rng, -1.0, 1.0);
  const double rate = uniform(rng, 1.3, 3.0);

  auto exact_at = [g, a1, b1, a2, b2, slope](double x) {
    return g->from_coords(a1 * std::sin(b1 * x), a2 * std::cos(b2 * x), slope * x);
  };
  auto tail_at = [g, qa, qb, qc, rate](double x) {
    const double decay = std::pow(rate, -x);
    return g->from_coords(qa * decay, qb * decay, qc * decay * decay);
  };

  fx.instance.group = g;
  fx.instance.phi = [shift](double x) { return x + shift; };
  fx.instance.g = [g, exact_at, shift](double x) {
    return g->op(exact_at(x + shift), g->inv(exact_at(x)));
  };
  fx.instance.name = "heisenberg fixture";
  fx.exact = exact_at;
  fx.approx = [g, exact_at, tail_at](double x) { return g->op(exact_at(x), tail_at(x)); };
  fx.budget.eps = [g, tail_at, shift](double x) {
    return g->dist(tail_at(x + shift), tail_at(x));
  };
  fx.sample_point = uniform(rng, 0.0, 2.0);
  fx.label = "heisenberg fixture";
  return fx;
}

// Finite-support word fixture: the tail factor vanishes once the orbit passes
// the support depth, so budgets are integers with an exactly zero tail.
inline Fixture make_free_fixture(Rng& rng, int* support_out = nullptr) {
  Fixture fx;
  const ulam::Group* g = &ulam::free_group_2();
  const std::string base = random_reduced_word(rng, 1, 3);
  const std::string tail = random_reduced_word(rng, 1, 3);
  const int support = uniform_int(rng, 2, 5);
  if (support_out != nullptr) *support_out = support;

  const ulam::Element u = g->from_word(base);
  const ulam::Element w = g->from_word(tail);

  auto power = [g](const ulam::Element& e, long long m) {
    ulam::Element b = m >= 0 ? e : g->inv(e);
    long long count = m >= 0 ? m : -m;
    ulam::Element acc = g->identity();
    for (long long i = 0; i < count; ++i) acc = g->op(b, acc);
    return acc;
  };

  auto exact_at = [g, u, power](double x) {
    return power(u, static_cast<long long>(std::floor(x)));
  };
  auto tail_at = [g, w, power, support](double x) {
    const long long m =
        std::max<long long>(0, support - static_cast<long long>(std::floor(x)));
    return power(w, m);
  };

  fx.instance.group = g;
  fx.instance.phi = [](double x) { return x + 1.0; };
  fx.instance.g = [u](double) { return u; };
  fx.instance.name = "free-group fixture";
  fx.exact = exact_at;
  fx.approx = [g, exact_at, tail_at](double x) { return g->op(exact_at(x), tail_at(x)); };
  fx.budget.eps = [g, tail_at](double x) { return g->dist(tail_at(x + 1.0), tail_at(x)); };
  fx.sample_point = uniform(rng, 0.0, 1.0);
  fx.label = "free-group fixture";
  return fx;
}

// One fixture per group, cycling by index.
inline Fixture make_fixture(int which, Rng& rng) {
  switch (which % 4) {
    case 0: return make_additive_fixture(rng);
    case 1: return make_mult_fixture(rng);
    case 2: return make_heisenberg_fixture(rng);
    default: return make_free_fixture(rng);
  }
}

}  // namespace fixtures
