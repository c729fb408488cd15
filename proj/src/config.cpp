#include "ulam/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

namespace ulam {

std::string_view to_string(RunMode m) noexcept {
  switch (m) {
    case RunMode::stabilize: return "stabilize";
    case RunMode::verify: return "verify";
    case RunMode::demo: return "demo";
  }
  return "stabilize";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ' || ch == '\t' || ch == ',') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double parse_double(const std::string& token, const std::string& key, int line) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || std::isnan(v)) {
    throw ConfigError("key '" + key + "': expected a number, got '" + token + "'", line);
  }
  return v;
}

long long parse_integer(const std::string& token, const std::string& key, int line) {
  char* end = nullptr;
  const long long v = std::strtoll(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0') {
    throw ConfigError("key '" + key + "': expected an integer, got '" + token + "'", line);
  }
  return v;
}

struct KeyValue {
  std::string value;
  int line = 0;
};

// Raw document shape: section -> key -> value, strict about duplicates.
using Document = std::map<std::string, std::map<std::string, KeyValue>>;

Document parse_lines(std::string_view text) {
  static const std::map<std::string, std::vector<std::string>> kKnown = {
      {"equation", {"name", "group", "c", "phi", "g"}},
      {"perturbation", {"form", "budget"}},
      {"run", {"points", "tol", "max_iterations", "mode", "threads"}},
  };
  Document doc;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!kKnown.count(section)) {
        throw ConfigError("unknown section '" + section + "'", line_no);
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value'", line_no);
    }
    if (section.empty()) {
      throw ConfigError("key outside of any section", line_no);
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    const auto& allowed = kKnown.at(section);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in section [" + section + "]", line_no);
    }
    if (value.empty()) throw ConfigError("key '" + key + "' has an empty value", line_no);
    auto [it, inserted] = doc[section].emplace(key, KeyValue{value, line_no});
    if (!inserted) {
      throw ConfigError("duplicate key '" + key + "' in section [" + section + "]", line_no);
    }
  }
  return doc;
}

const KeyValue* find(const Document& doc, const std::string& section, const std::string& key) {
  const auto sit = doc.find(section);
  if (sit == doc.end()) return nullptr;
  const auto kit = sit->second.find(key);
  return kit == sit->second.end() ? nullptr : &kit->second;
}

PhiSpec parse_phi(const KeyValue& kv) {
  const auto tokens = split_tokens(kv.value);
  if (tokens.size() != 2 || (tokens[0] != "shift" && tokens[0] != "scale")) {
    throw ConfigError("key 'phi': expected 'shift <h>' or 'scale <a>'", kv.line, true);
  }
  PhiSpec phi;
  phi.kind = tokens[0] == "shift" ? PhiSpec::Kind::shift : PhiSpec::Kind::scale;
  phi.amount = parse_double(tokens[1], "phi", kv.line);
  return phi;
}

GForm parse_g(const KeyValue& kv) {
  const auto tokens = split_tokens(kv.value);
  GForm g;
  if (tokens.size() == 1 && tokens[0] == "one-over-x") {
    g.kind = GForm::Kind::reciprocal;
  } else if (tokens.size() == 1 && tokens[0] == "linear-x") {
    g.kind = GForm::Kind::coordinate;
  } else if (tokens.size() == 2 && tokens[0] == "const") {
    g.kind = GForm::Kind::constant;
    g.value = parse_double(tokens[1], "g", kv.line);
  } else if (tokens.size() == 2 && tokens[0] == "word") {
    g.kind = GForm::Kind::word;
    g.word = tokens[1];
  } else {
    throw ConfigError(
        "key 'g': expected 'const <v>', 'one-over-x', 'linear-x', or 'word <w>'", kv.line,
        true);
  }
  return g;
}

PerturbationForm parse_perturbation(const KeyValue& kv) {
  const auto tokens = split_tokens(kv.value);
  PerturbationForm p;
  const std::string& head = tokens.empty() ? kv.value : tokens[0];
  auto expect = [&](std::size_t n) {
    if (tokens.size() != n) {
      throw ConfigError("key 'form': wrong number of parameters for '" + head + "'", kv.line,
                        true);
    }
  };
  if (head == "none") {
    expect(1);
    p.kind = PerturbationForm::Kind::none;
  } else if (head == "exp-decay") {
    expect(3);
    p.kind = PerturbationForm::Kind::exp_decay;
    p.amplitude = parse_double(tokens[1], "form", kv.line);
    p.rate = parse_double(tokens[2], "form", kv.line);
  } else if (head == "poly-exp") {
    expect(3);
    p.kind = PerturbationForm::Kind::poly_exp;
    p.amplitude = parse_double(tokens[1], "form", kv.line);
    p.rate = parse_double(tokens[2], "form", kv.line);
  } else if (head == "linear") {
    expect(2);
    p.kind = PerturbationForm::Kind::linear;
    p.amplitude = parse_double(tokens[1], "form", kv.line);
  } else if (head == "constant") {
    expect(2);
    p.kind = PerturbationForm::Kind::constant;
    p.amplitude = parse_double(tokens[1], "form", kv.line);
  } else if (head == "ladder") {
    expect(3);
    p.kind = PerturbationForm::Kind::ladder;
    p.word = tokens[1];
    p.depth = parse_integer(tokens[2], "form", kv.line);
    if (p.depth < 0) throw ConfigError("key 'form': ladder depth must be nonnegative", kv.line, true);
  } else {
    throw ConfigError("key 'form': unknown perturbation '" + head + "'", kv.line, true);
  }
  if ((p.kind == PerturbationForm::Kind::exp_decay ||
       p.kind == PerturbationForm::Kind::poly_exp) &&
      !(p.rate > 0.0)) {
    throw ConfigError("key 'form': decay rate must be positive", kv.line, true);
  }
  return p;
}

BudgetForm parse_budget(const KeyValue& kv) {
  const auto tokens = split_tokens(kv.value);
  BudgetForm b;
  const std::string& head = tokens.empty() ? kv.value : tokens[0];
  auto expect = [&](std::size_t n) {
    if (tokens.size() != n) {
      throw ConfigError("key 'budget': wrong number of parameters for '" + head + "'",
                        kv.line, true);
    }
  };
  if (head == "auto") {
    expect(1);
    b.kind = BudgetForm::Kind::auto_defect;
  } else if (head == "zero") {
    expect(1);
    b.kind = BudgetForm::Kind::zero;
  } else if (head == "constant") {
    expect(2);
    b.kind = BudgetForm::Kind::constant;
    b.amplitude = parse_double(tokens[1], "budget", kv.line);
  } else if (head == "exp-decay") {
    expect(3);
    b.kind = BudgetForm::Kind::exp_decay;
    b.amplitude = parse_double(tokens[1], "budget", kv.line);
    b.rate = parse_double(tokens[2], "budget", kv.line);
  } else if (head == "poly-exp") {
    expect(3);
    b.kind = BudgetForm::Kind::poly_exp;
    b.amplitude = parse_double(tokens[1], "budget", kv.line);
    b.rate = parse_double(tokens[2], "budget", kv.line);
  } else {
    throw ConfigError("key 'budget': unknown budget '" + head + "'", kv.line, true);
  }
  if (b.amplitude < 0.0) {
    throw ConfigError("key 'budget': amplitude must be nonnegative", kv.line, true);
  }
  if ((b.kind == BudgetForm::Kind::exp_decay || b.kind == BudgetForm::Kind::poly_exp) &&
      !(b.rate > 0.0)) {
    throw ConfigError("key 'budget': decay rate must be positive", kv.line, true);
  }
  return b;
}

const std::string& fixed_group_for(const std::string& equation) {
  static const std::map<std::string, std::string> kGroups = {
      {"digamma", "additive-reals"},
      {"gamma", "mult-positive-reals"},
      {"abel", "additive-reals"},
      {"schroeder", "mult-positive-reals"},
  };
  return kGroups.at(equation);
}

bool known_group(const std::string& name) {
  return name == "additive-reals" || name == "mult-positive-reals" ||
         name == "free-group-2" || name == "heisenberg";
}

void forbid(const Document& doc, const std::string& section, const std::string& key,
            const std::string& why) {
  if (const KeyValue* kv = find(doc, section, key)) {
    throw ConfigError("key '" + key + "' is not valid " + why, kv->line, true);
  }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  const Document doc = parse_lines(text);
  RunConfig cfg;

  const KeyValue* name = find(doc, "equation", "name");
  if (!name) throw ConfigError("missing key 'name' in section [equation]", 0, true);
  cfg.equation = name->value;
  const bool named = cfg.equation == "digamma" || cfg.equation == "gamma" ||
                     cfg.equation == "abel" || cfg.equation == "schroeder";
  if (!named && cfg.equation != "custom") {
    throw ConfigError("key 'name': unknown equation '" + cfg.equation + "'", name->line, true);
  }

  if (const KeyValue* kv = find(doc, "equation", "group")) {
    if (!known_group(kv->value)) {
      throw ConfigError("key 'group': unknown group '" + kv->value + "'", kv->line, true);
    }
    cfg.group = kv->value;
  }

  if (named) {
    const std::string& fixed = fixed_group_for(cfg.equation);
    if (cfg.group.empty()) {
      cfg.group = fixed;
    } else if (cfg.group != fixed) {
      throw ConfigError("key 'group': equation '" + cfg.equation + "' lives in group '" +
                            fixed + "', not '" + cfg.group + "'",
                        find(doc, "equation", "group")->line, true);
    }
    forbid(doc, "equation", "g", "for equation '" + cfg.equation + "'");
  } else {
    if (cfg.group.empty()) {
      throw ConfigError("equation 'custom' requires key 'group'", 0, true);
    }
    if (cfg.group == "heisenberg") {
      throw ConfigError(
          "key 'group': 'heisenberg' has no scalar certificate serialization and is "
          "exercised through the library API, not batch runs",
          find(doc, "equation", "group")->line, true);
    }
  }

  if (cfg.equation == "digamma" || cfg.equation == "gamma") {
    forbid(doc, "equation", "c", "for equation '" + cfg.equation + "'");
    forbid(doc, "equation", "phi", "for equation '" + cfg.equation + "' (the map is fixed)");
  } else if (named) {  // abel | schroeder
    const KeyValue* c = find(doc, "equation", "c");
    if (!c) throw ConfigError("equation '" + cfg.equation + "' requires key 'c'", 0, true);
    cfg.c = parse_double(c->value, "c", c->line);
    cfg.c_set = true;
    const KeyValue* phi = find(doc, "equation", "phi");
    if (!phi) throw ConfigError("equation '" + cfg.equation + "' requires key 'phi'", 0, true);
    cfg.phi = parse_phi(*phi);
    cfg.phi_set = true;
    if (cfg.equation == "schroeder" && !(cfg.c > 0.0)) {
      throw ConfigError("key 'c': schroeder constant must be positive", c->line, true);
    }
  } else {  // custom
    forbid(doc, "equation", "c", "for equation 'custom'");
    const KeyValue* phi = find(doc, "equation", "phi");
    if (!phi) throw ConfigError("equation 'custom' requires key 'phi'", 0, true);
    cfg.phi = parse_phi(*phi);
    cfg.phi_set = true;
    const KeyValue* g = find(doc, "equation", "g");
    if (!g) throw ConfigError("equation 'custom' requires key 'g'", 0, true);
    cfg.g = parse_g(*g);
    const bool word_group = cfg.group == "free-group-2";
    if (word_group != (cfg.g.kind == GForm::Kind::word)) {
      throw ConfigError(word_group ? "key 'g': group 'free-group-2' needs 'g = word <w>'"
                                   : "key 'g': 'word' coefficients need group 'free-group-2'",
                        g->line, true);
    }
    if (word_group &&
        !(cfg.phi.kind == PhiSpec::Kind::shift && cfg.phi.amount == 1.0)) {
      throw ConfigError("key 'phi': free-group-2 runs require 'phi = shift 1'",
                        phi->line, true);
    }
  }

  if (const KeyValue* kv = find(doc, "perturbation", "form")) {
    cfg.perturbation = parse_perturbation(*kv);
    const bool ladder = cfg.perturbation.kind == PerturbationForm::Kind::ladder;
    if (ladder != (cfg.group == "free-group-2") && ladder) {
      throw ConfigError("key 'form': 'ladder' needs group 'free-group-2'", kv->line, true);
    }
    if (cfg.group == "free-group-2" && !ladder &&
        cfg.perturbation.kind != PerturbationForm::Kind::none) {
      throw ConfigError("key 'form': group 'free-group-2' supports 'none' or 'ladder <w> <K>'",
                        kv->line, true);
    }
  }
  if (const KeyValue* kv = find(doc, "perturbation", "budget")) {
    cfg.budget = parse_budget(*kv);
    if (cfg.group == "free-group-2" && cfg.budget.kind != BudgetForm::Kind::auto_defect &&
        cfg.budget.kind != BudgetForm::Kind::zero) {
      throw ConfigError("key 'budget': group 'free-group-2' supports 'auto' or 'zero'",
                        kv->line, true);
    }
  }

  const KeyValue* points = find(doc, "run", "points");
  if (!points) throw ConfigError("missing key 'points' in section [run]", 0, true);
  for (const std::string& tok : split_tokens(points->value)) {
    const double v = parse_double(tok, "points", points->line);
    if (!std::isfinite(v)) {
      throw ConfigError("key 'points': points must be finite", points->line, true);
    }
    cfg.points.push_back(v);
  }
  if (cfg.points.empty()) {
    throw ConfigError("key 'points': at least one point is required", points->line, true);
  }

  const KeyValue* tol = find(doc, "run", "tol");
  if (!tol) throw ConfigError("missing key 'tol' in section [run]", 0, true);
  cfg.tol = parse_double(tol->value, "tol", tol->line);
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) {
    throw ConfigError("key 'tol': tol must be positive", tol->line, true);
  }

  if (const KeyValue* kv = find(doc, "run", "max_iterations")) {
    cfg.max_iterations = parse_integer(kv->value, "max_iterations", kv->line);
    if (cfg.max_iterations < 1) {
      throw ConfigError("key 'max_iterations': must be at least 1", kv->line, true);
    }
  }
  if (const KeyValue* kv = find(doc, "run", "mode")) {
    if (kv->value == "stabilize") cfg.mode = RunMode::stabilize;
    else if (kv->value == "verify") cfg.mode = RunMode::verify;
    else if (kv->value == "demo") cfg.mode = RunMode::demo;
    else throw ConfigError("key 'mode': expected stabilize, verify, or demo", kv->line, true);
    cfg.mode_set = true;
  }
  if (const KeyValue* kv = find(doc, "run", "threads")) {
    const long long t = parse_integer(kv->value, "threads", kv->line);
    if (t < 1 || t > 64) {
      throw ConfigError("key 'threads': expected a value in [1, 64]", kv->line, true);
    }
    cfg.threads = static_cast<int>(t);
  }
  return cfg;
}

RunConfig demo_config(std::string_view equation_name) {
  if (equation_name != "digamma") {
    throw ConfigError("no bundled demo named '" + std::string(equation_name) +
                          "'; available: digamma",
                      0, true);
  }
  RunConfig cfg;
  cfg.equation = "digamma";
  cfg.group = "additive-reals";
  cfg.perturbation.kind = PerturbationForm::Kind::exp_decay;
  cfg.perturbation.amplitude = 1.0;
  cfg.perturbation.rate = 2.0;
  cfg.budget.kind = BudgetForm::Kind::exp_decay;
  cfg.budget.amplitude = 1.0;
  cfg.budget.rate = 2.0;
  cfg.points = {0.5, 1.0, 3.7};
  cfg.tol = 1e-9;
  cfg.mode = RunMode::demo;
  cfg.mode_set = true;
  return cfg;
}

}  // namespace ulam
