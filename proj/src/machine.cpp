#include "counterlab/machine.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace counterlab {

using nlohmann::json;

namespace {

[[noreturn]] void semantic(const std::string& msg) {
  throw MachineError(MachineError::Kind::semantic, msg);
}

// Splits a UTF-8 string into code points (each returned as its byte string).
std::vector<std::string> split_code_points(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if (c >= 0xF0) len = 4;
    else if (c >= 0xE0) len = 3;
    else if (c >= 0xC0) len = 2;
    if (i + len > s.size()) semantic("malformed UTF-8 in stack string");
    out.emplace_back(s.substr(i, len));
    i += len;
  }
  return out;
}

std::string describe(const MachineSpec& m, std::size_t idx) {
  const auto& r = m.transitions[idx];
  std::ostringstream os;
  os << "rule #" << idx << " (from '"
     << (r.from >= 0 && r.from < static_cast<int>(m.states.size()) ? m.states[r.from] : "?")
     << "' on '" << r.read << "')";
  return os.str();
}

const char* guard_name(Guard g) {
  switch (g) {
    case Guard::zero: return "zero";
    case Guard::nonzero: return "nonzero";
    default: return "any";
  }
}

const char* op_name(CounterOp o) {
  switch (o) {
    case CounterOp::inc: return "inc";
    case CounterOp::dec: return "dec";
    default: return "noop";
  }
}

Mode parse_mode(const std::string& s) {
  if (s == "deterministic") return Mode::deterministic;
  if (s == "nondeterministic") return Mode::nondeterministic;
  if (s == "unambiguous-claimed") return Mode::unambiguous_claimed;
  semantic("unknown mode '" + s + "'");
}

bool guards_overlap(Guard a, Guard b) {
  return a == Guard::any || b == Guard::any || a == b;
}

void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

bool MachineSpec::is_accepting(int q) const {
  return std::find(accepting.begin(), accepting.end(), q) != accepting.end();
}

bool MachineSpec::is_rejecting(int q) const {
  return std::find(rejecting.begin(), rejecting.end(), q) != rejecting.end();
}

int MachineSpec::state_index(std::string_view n) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == n) return static_cast<int>(i);
  return -1;
}

int MachineSpec::stack_index(std::string_view symbol) const {
  if (!stack) return -1;
  for (std::size_t i = 0; i < stack->alphabet.size(); ++i)
    if (stack->alphabet[i] == symbol) return static_cast<int>(i);
  return -1;
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const noexcept {
  std::size_t h = static_cast<std::size_t>(c.state) * 1315423911u;
  hash_mix(h, static_cast<std::size_t>(c.head));
  for (auto v : c.counters) hash_mix(h, v);
  hash_mix(h, c.stack.size());
  for (auto v : c.stack) hash_mix(h, v);
  return h;
}

SurfaceView surface_of(const Configuration& c) {
  SurfaceView s;
  s.state = c.state;
  s.head = c.head;
  s.counter_nonzero.reserve(c.counters.size());
  for (auto v : c.counters) s.counter_nonzero.push_back(v != 0);
  if (!c.stack.empty()) s.stack_top = c.stack.back();
  return s;
}

// ---- parsing ------------------------------------------------------------------

MachineSpec parse_machine(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw MachineError(MachineError::Kind::syntax,
                       "syntax error at byte " + std::to_string(e.byte) + ": " + e.what(), e.byte);
  }
  return machine_from_json(doc);
}

MachineSpec load_machine(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open machine file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str());
}

MachineSpec machine_from_json(const json& doc) {
  static const std::set<std::string> kKeys = {
      "name",    "mode",      "states",    "alphabet",    "counters",         "stack",
      "initial", "accepting", "rejecting", "transitions", "allow_stationary", "provenance"};
  if (!doc.is_object()) semantic("machine document must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!kKeys.count(it.key())) semantic("unknown key '" + it.key() + "'");

  auto need = [&](const char* key) -> const json& {
    if (!doc.contains(key)) semantic(std::string("missing key '") + key + "'");
    return doc.at(key);
  };

  MachineSpec m;
  try {
    m.name = need("name").get<std::string>();
    m.mode = parse_mode(need("mode").get<std::string>());

    std::map<std::string, int> state_ix;
    for (const auto& s : need("states")) {
      auto name = s.get<std::string>();
      if (state_ix.count(name)) semantic("duplicate state '" + name + "'");
      state_ix[name] = static_cast<int>(m.states.size());
      m.states.push_back(name);
    }
    auto state_ref = [&](const json& v, const std::string& where) {
      auto name = v.get<std::string>();
      auto it = state_ix.find(name);
      if (it == state_ix.end()) semantic(where + " references undeclared state '" + name + "'");
      return it->second;
    };

    for (const auto& a : need("alphabet")) {
      auto s = a.get<std::string>();
      if (s.size() != 1) semantic("alphabet symbol '" + s + "' is not a single character");
      if (s[0] == kLeftEnd || s[0] == kRightEnd) semantic("endmarker '" + s + "' cannot be in the alphabet");
      if (std::find(m.alphabet.begin(), m.alphabet.end(), s[0]) != m.alphabet.end())
        semantic("duplicate alphabet symbol '" + s + "'");
      m.alphabet.push_back(s[0]);
    }

    m.counters = need("counters").get<int>();
    if (m.counters < 0) semantic("counter count must be non-negative");

    const auto& st = need("stack");
    if (!st.is_null()) {
      StackSpec spec;
      spec.push_size = st.at("push_size").get<int>();
      if (spec.push_size < 1) semantic("push_size must be positive");
      std::vector<std::string> syms;
      bool has_bottom = false;
      for (const auto& g : st.at("alphabet")) {
        auto s = g.get<std::string>();
        if (split_code_points(s).size() != 1) semantic("stack symbol '" + s + "' is not a single character");
        if (std::find(syms.begin(), syms.end(), s) != syms.end()) semantic("duplicate stack symbol '" + s + "'");
        if (s == kBottom) has_bottom = true;
        else syms.push_back(s);
      }
      if (!has_bottom) semantic("stack alphabet must contain the bottom marker");
      spec.alphabet.emplace_back(kBottom);
      spec.alphabet.insert(spec.alphabet.end(), syms.begin(), syms.end());
      m.stack = std::move(spec);
    }

    m.initial = state_ref(need("initial"), "initial");
    for (const auto& q : need("accepting")) m.accepting.push_back(state_ref(q, "accepting set"));
    for (const auto& q : need("rejecting")) m.rejecting.push_back(state_ref(q, "rejecting set"));

    if (doc.contains("allow_stationary")) m.allow_stationary = doc.at("allow_stationary").get<bool>();
    if (doc.contains("provenance") && !doc.at("provenance").is_null()) {
      const auto& p = doc.at("provenance");
      Provenance prov;
      prov.derived_from = p.value("derived_from", "");
      prov.transform = p.value("transform", "");
      prov.parameters = p.value("parameters", json::object());
      m.provenance = std::move(prov);
    }

    std::size_t idx = 0;
    for (const auto& t : need("transitions")) {
      const std::string where = "rule #" + std::to_string(idx);
      TransitionRule r;
      r.from = state_ref(t.at("from"), where);
      r.to = state_ref(t.at("to"), where);
      auto read = t.at("read").get<std::string>();
      if (read.size() != 1) semantic(where + " reads '" + read + "', not a single symbol");
      r.read = read[0];
      if (r.read != kLeftEnd && r.read != kRightEnd &&
          std::find(m.alphabet.begin(), m.alphabet.end(), r.read) == m.alphabet.end())
        semantic(where + " reads undeclared symbol '" + read + "'");
      for (const auto& g : t.at("guards")) {
        auto s = g.get<std::string>();
        if (s == "zero") r.guards.push_back(Guard::zero);
        else if (s == "nonzero") r.guards.push_back(Guard::nonzero);
        else if (s == "any") r.guards.push_back(Guard::any);
        else semantic(where + " has unknown guard '" + s + "'");
      }
      for (const auto& o : t.at("counter_ops")) {
        auto s = o.get<std::string>();
        if (s == "inc") r.ops.push_back(CounterOp::inc);
        else if (s == "dec") r.ops.push_back(CounterOp::dec);
        else if (s == "noop") r.ops.push_back(CounterOp::noop);
        else semantic(where + " has unknown counter op '" + s + "'");
      }
      r.move = t.at("move").get<int>();
      const auto& top = t.contains("stack_top") ? t.at("stack_top") : json();
      if (!top.is_null()) {
        auto s = top.get<std::string>();
        int si = m.stack_index(s);
        if (si < 0) semantic(where + " guards on undeclared stack symbol '" + s + "'");
        r.stack_top = si;
      }
      const auto& op = t.contains("stack_op") ? t.at("stack_op") : json("none");
      if (op.is_string()) {
        auto s = op.get<std::string>();
        if (s == "pop") r.stack_op = StackOp::pop();
        else if (s == "none") r.stack_op = StackOp::none();
        else semantic(where + " has unknown stack op '" + s + "'");
      } else if (op.is_object() && op.contains("push")) {
        std::vector<int> w;
        for (const auto& cp : split_code_points(op.at("push").get<std::string>())) {
          int si = m.stack_index(cp);
          if (si < 0) semantic(where + " pushes undeclared stack symbol '" + cp + "'");
          w.push_back(si);
        }
        r.stack_op = StackOp::push(std::move(w));
      } else {
        semantic(where + " has a malformed stack_op");
      }
      m.transitions.push_back(std::move(r));
      ++idx;
    }
  } catch (const json::exception& e) {
    semantic(std::string("malformed machine document: ") + e.what());
  }
  validate(m);
  return m;
}

void validate(const MachineSpec& m) {
  const int nq = static_cast<int>(m.states.size());
  if (nq == 0) semantic("machine declares no states");
  {
    std::set<std::string> seen;
    for (const auto& s : m.states)
      if (!seen.insert(s).second) semantic("duplicate state '" + s + "'");
  }
  auto in_range = [&](int q) { return q >= 0 && q < nq; };
  if (!in_range(m.initial)) semantic("initial state out of range");
  for (int q : m.accepting) {
    if (!in_range(q)) semantic("accepting state out of range");
    if (m.is_rejecting(q)) semantic("state '" + m.states[q] + "' is both accepting and rejecting");
  }
  for (int q : m.rejecting)
    if (!in_range(q)) semantic("rejecting state out of range");
  if (m.counters < 0) semantic("counter count must be non-negative");
  if (m.stack) {
    if (m.stack->alphabet.empty() || m.stack->alphabet[0] != kBottom)
      semantic("stack alphabet must start with the bottom marker");
    if (m.stack->push_size < 1) semantic("push_size must be positive");
  }
  const bool plain_fa = m.counters == 0 && !m.stack && !m.allow_stationary;
  const int nstack = m.stack ? static_cast<int>(m.stack->alphabet.size()) : 0;

  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& r = m.transitions[i];
    const std::string who = in_range(r.from) ? describe(m, i) : "rule #" + std::to_string(i);
    if (!in_range(r.from) || !in_range(r.to)) semantic(who + " references an undeclared state");
    if (m.is_halting(r.from)) semantic(who + " leaves halting state '" + m.states[r.from] + "'");
    if (r.read != kLeftEnd && r.read != kRightEnd &&
        std::find(m.alphabet.begin(), m.alphabet.end(), r.read) == m.alphabet.end())
      semantic(who + " reads undeclared symbol '" + std::string(1, r.read) + "'");
    if (static_cast<int>(r.guards.size()) != m.counters || static_cast<int>(r.ops.size()) != m.counters)
      semantic(who + " must list exactly " + std::to_string(m.counters) + " guards and counter ops");
    for (int j = 0; j < m.counters; ++j)
      if (r.ops[j] == CounterOp::dec && r.guards[j] != Guard::nonzero)
        semantic(who + " decrements counter " + std::to_string(j + 1) + " without a nonzero guard");
    if (r.move < -1 || r.move > 1) semantic(who + " has head move outside {-1,0,1}");
    if (r.read == kLeftEnd && r.move == -1) semantic(who + " moves left off the left endmarker");
    if (r.read == kRightEnd && r.move == 1) semantic(who + " moves right off the right endmarker");
    if (plain_fa && r.move == 0) semantic(who + " makes a stationary move in a finite automaton");
    if (!m.stack) {
      if (r.stack_top || r.stack_op.kind != StackOp::Kind::none)
        semantic(who + " uses a stack the machine does not have");
      continue;
    }
    if (r.stack_top && (*r.stack_top < 0 || *r.stack_top >= nstack))
      semantic(who + " guards on an undeclared stack symbol");
    if (r.stack_op.kind == StackOp::Kind::pop) {
      if (!r.stack_top) semantic(who + " pops without a stack-top guard");
      if (*r.stack_top == 0) semantic(who + " pops the bottom marker");
    }
    if (r.stack_op.kind == StackOp::Kind::push) {
      const auto& w = r.stack_op.symbols;
      if (w.empty()) semantic(who + " pushes the empty string");
      if (static_cast<int>(w.size()) > m.stack->push_size)
        semantic(who + " pushes more than push_size symbols");
      for (int s : w) {
        if (s < 0 || s >= nstack) semantic(who + " pushes an undeclared stack symbol");
        if (s == 0) semantic(who + " pushes the bottom marker");
      }
    }
  }

  if (m.mode == Mode::deterministic) {
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
      for (std::size_t j = i + 1; j < m.transitions.size(); ++j) {
        const auto& a = m.transitions[i];
        const auto& b = m.transitions[j];
        if (a.from != b.from || a.read != b.read) continue;
        bool overlap = true;
        for (int c = 0; c < m.counters && overlap; ++c) overlap = guards_overlap(a.guards[c], b.guards[c]);
        if (overlap && a.stack_top && b.stack_top && *a.stack_top != *b.stack_top) overlap = false;
        if (overlap)
          semantic("deterministic conflict between " + describe(m, i) + " and " + describe(m, j));
      }
    }
  }
}

// ---- serialization -------------------------------------------------------------

json machine_to_json(const MachineSpec& m) {
  json doc = json::object();
  doc["name"] = m.name;
  doc["mode"] = to_string(m.mode);
  doc["states"] = m.states;
  json alpha = json::array();
  for (char c : m.alphabet) alpha.push_back(std::string(1, c));
  doc["alphabet"] = alpha;
  doc["counters"] = m.counters;
  if (m.stack) doc["stack"] = {{"alphabet", m.stack->alphabet}, {"push_size", m.stack->push_size}};
  else doc["stack"] = nullptr;
  doc["initial"] = m.states[m.initial];
  json acc = json::array(), rej = json::array();
  for (int q : m.accepting) acc.push_back(m.states[q]);
  for (int q : m.rejecting) rej.push_back(m.states[q]);
  doc["accepting"] = acc;
  doc["rejecting"] = rej;
  if (m.allow_stationary) doc["allow_stationary"] = true;
  if (m.provenance) {
    doc["provenance"] = {{"derived_from", m.provenance->derived_from},
                         {"transform", m.provenance->transform},
                         {"parameters", m.provenance->parameters}};
  }
  json rules = json::array();
  for (const auto& r : m.transitions) {
    json t;
    t["from"] = m.states[r.from];
    t["read"] = std::string(1, r.read);
    json g = json::array(), o = json::array();
    for (auto x : r.guards) g.push_back(guard_name(x));
    for (auto x : r.ops) o.push_back(op_name(x));
    t["guards"] = g;
    t["stack_top"] = r.stack_top ? json(m.stack->alphabet[*r.stack_top]) : json(nullptr);
    t["to"] = m.states[r.to];
    t["move"] = r.move;
    t["counter_ops"] = o;
    switch (r.stack_op.kind) {
      case StackOp::Kind::none: t["stack_op"] = "none"; break;
      case StackOp::Kind::pop: t["stack_op"] = "pop"; break;
      case StackOp::Kind::push: {
        std::string w;
        for (int s : r.stack_op.symbols) w += m.stack->alphabet[s];
        t["stack_op"] = {{"push", w}};
        break;
      }
    }
    rules.push_back(std::move(t));
  }
  doc["transitions"] = std::move(rules);
  return doc;
}

std::string serialize_machine(const MachineSpec& m) { return machine_to_json(m).dump(2) + "\n"; }

// ---- semantics ---------------------------------------------------------------------

std::string make_tape(const MachineSpec& m, std::string_view x) {
  std::string tape;
  tape.reserve(x.size() + 2);
  tape.push_back(kLeftEnd);
  for (char c : x) {
    if (std::find(m.alphabet.begin(), m.alphabet.end(), c) == m.alphabet.end())
      throw std::invalid_argument("input symbol '" + std::string(1, c) + "' is not in the alphabet");
    tape.push_back(c);
  }
  tape.push_back(kRightEnd);
  return tape;
}

Configuration initial_configuration(const MachineSpec& m) {
  Configuration c;
  c.state = m.initial;
  c.head = 0;
  c.counters.assign(static_cast<std::size_t>(m.counters), 0);
  if (m.stack) c.stack.push_back(0);
  return c;
}

bool is_valid_configuration(const MachineSpec& m, std::string_view x, const Configuration& c) {
  if (c.state < 0 || c.state >= static_cast<int>(m.states.size())) return false;
  if (c.head < 0 || c.head > static_cast<int>(x.size()) + 1) return false;
  if (static_cast<int>(c.counters.size()) != m.counters) return false;
  if (!m.stack) return c.stack.empty();
  if (c.stack.empty() || c.stack[0] != 0) return false;
  for (std::size_t i = 1; i < c.stack.size(); ++i)
    if (c.stack[i] == 0 || c.stack[i] >= m.stack->alphabet.size()) return false;
  return true;
}

Stepper::Stepper(const MachineSpec& m, std::string_view x) : m_(&m), tape_(make_tape(m, x)) {
  by_state_.resize(m.states.size());
  for (std::size_t i = 0; i < m.transitions.size(); ++i)
    by_state_[m.transitions[i].from].push_back(static_cast<int>(i));
}

bool Stepper::applicable(const TransitionRule& r, const Configuration& c) const {
  if (r.from != c.state || tape_[c.head] != r.read) return false;
  for (std::size_t j = 0; j < r.guards.size(); ++j) {
    if (r.guards[j] == Guard::zero && c.counters[j] != 0) return false;
    if (r.guards[j] == Guard::nonzero && c.counters[j] == 0) return false;
  }
  if (r.stack_top && (c.stack.empty() || c.stack.back() != *r.stack_top)) return false;
  return true;
}

Configuration Stepper::apply(const TransitionRule& r, const Configuration& c) const {
  Configuration n = c;
  n.state = r.to;
  n.head += r.move;
  for (std::size_t j = 0; j < r.ops.size(); ++j) {
    if (r.ops[j] == CounterOp::inc) ++n.counters[j];
    else if (r.ops[j] == CounterOp::dec) --n.counters[j];
  }
  switch (r.stack_op.kind) {
    case StackOp::Kind::pop: n.stack.pop_back(); break;
    case StackOp::Kind::push:
      for (int s : r.stack_op.symbols) n.stack.push_back(static_cast<std::uint16_t>(s));
      break;
    case StackOp::Kind::none: break;
  }
  return n;
}

void Stepper::successors(const Configuration& c, std::vector<Configuration>& out) const {
  out.clear();
  if (m_->is_halting(c.state)) return;
  for (int ri : by_state_[c.state]) {
    const auto& r = m_->transitions[ri];
    if (applicable(r, c)) out.push_back(apply(r, c));
  }
}

std::vector<Configuration> Stepper::successors(const Configuration& c) const {
  std::vector<Configuration> out;
  successors(c, out);
  return out;
}

bool Stepper::stuck(const Configuration& c) const {
  if (m_->is_halting(c.state)) return false;
  for (int ri : by_state_[c.state])
    if (applicable(m_->transitions[ri], c)) return false;
  return true;
}

std::vector<Configuration> step_relation(const MachineSpec& m, std::string_view x, const Configuration& c) {
  Stepper s(m, x);
  auto out = s.successors(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t state_complexity(const MachineSpec& m) { return m.states.size(); }

std::uint64_t stack_state_complexity(const MachineSpec& m) {
  if (!m.stack) throw std::invalid_argument("stack-state complexity needs a pushdown machine");
  const std::uint64_t g = m.stack->alphabet.size();
  std::uint64_t strings = 0, power = 1;
  for (int len = 0; len <= m.stack->push_size; ++len) {
    strings += power;
    power *= g;
  }
  return static_cast<std::uint64_t>(m.states.size()) * strings;
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::deterministic: return "deterministic";
    case Mode::nondeterministic: return "nondeterministic";
    case Mode::unambiguous_claimed: return "unambiguous-claimed";
  }
  return "?";
}

std::string to_string(const Configuration& c) {
  std::ostringstream os;
  os << "(q" << c.state << ", " << c.head << ", [";
  for (std::size_t i = 0; i < c.counters.size(); ++i) os << (i ? "," : "") << c.counters[i];
  os << "]";
  if (!c.stack.empty()) {
    os << ", <";
    for (std::size_t i = 0; i < c.stack.size(); ++i) os << (i ? " " : "") << c.stack[i];
    os << ">";
  }
  os << ")";
  return os.str();
}

}  // namespace counterlab
