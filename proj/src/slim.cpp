#include <set>
#include <stdexcept>

#include "counterlab/builder.hpp"
#include "counterlab/machine.hpp"

namespace counterlab {

namespace {

std::string fresh_symbol(const StackSpec& st, std::initializer_list<const char*> candidates) {
  for (const char* c : candidates) {
    bool used = false;
    for (const auto& s : st.alphabet) used = used || s == c;
    if (!used) return c;
  }
  throw std::logic_error("no fresh stack symbol available");
}

std::string fresh_state(const MachineSpec& m, std::string base) {
  while (m.state_index(base) >= 0) base += "'";
  return base;
}

}  // namespace

bool is_slim(const MachineSpec& m) {
  return m.stack && m.provenance && m.provenance->transform == "slim";
}

MachineSpec normalize_slim(const MachineSpec& n) {
  if (!n.stack) throw std::invalid_argument("normalize_slim needs a pushdown machine");
  if (is_slim(n)) return n;

  MachineSpec shape = n;
  shape.stack->push_size = 1;
  const std::string dummy_sym = fresh_symbol(*shape.stack, {"$", "\xE2\x96\xBD", "%"});
  shape.stack->alphabet.push_back(dummy_sym);
  const std::string filler_sym = fresh_symbol(*shape.stack, {"~", "\xE2\x97\xA6", "&"});
  shape.stack->alphabet.push_back(filler_sym);
  const int dummy = static_cast<int>(shape.stack->alphabet.size()) - 2;
  const int filler = dummy + 1;
  const int k = n.counters;

  MachineBuilder b(shape);
  for (const auto& s : n.states) b.state(s);
  const int final_acc = b.state(fresh_state(n, "slim~acc"));
  const int final_rej = b.state(fresh_state(n, "slim~rej"));
  const int init = b.state(fresh_state(n, "slim~init"));

  std::set<int> filler_mids;
  // Replaces a stack-neutral move by "push filler" followed by "pop filler".
  auto via_filler = [&](TransitionRule r, int target) {
    const int mid = b.state(fresh_state(n, b.spec().states[target] + "~pf"));
    r.to = mid;
    r.stack_op = StackOp::push({filler});
    b.add(std::move(r));
    if (filler_mids.insert(mid).second) {
      for (char t : b.tape_symbols()) {
        auto p = b.rule(mid, t, target, 0);
        p.stack_top = filler;
        p.stack_op = StackOp::pop();
        b.add(std::move(p));
      }
    }
  };

  {
    auto r = b.rule(init, kLeftEnd, n.initial, 0);
    r.stack_top = 0;
    r.stack_op = StackOp::push({dummy});
    b.add(std::move(r));
  }

  for (std::size_t i = 0; i < n.transitions.size(); ++i) {
    TransitionRule x = n.transitions[i];
    if (x.stack_top && *x.stack_top == 0) x.stack_top = dummy;
    switch (x.stack_op.kind) {
      case StackOp::Kind::pop:
        b.add(std::move(x));
        break;
      case StackOp::Kind::none:
        via_filler(std::move(x), n.transitions[i].to);
        break;
      case StackOp::Kind::push: {
        const auto w = x.stack_op.symbols;
        const int target = x.to;
        if (w.size() == 1) {
          b.add(std::move(x));
          break;
        }
        auto mid_name = [&](std::size_t j) {
          return fresh_state(n, "rule" + std::to_string(i) + "~push" + std::to_string(j));
        };
        x.stack_op = StackOp::push({w[0]});
        x.to = b.state(mid_name(1));
        b.add(std::move(x));
        for (std::size_t j = 1; j < w.size(); ++j) {
          const int from = b.state(mid_name(j));
          const int next = j + 1 == w.size() ? target : b.state(mid_name(j + 1));
          for (char t : b.tape_symbols()) {
            auto r = b.rule(from, t, next, 0);
            r.stack_op = StackOp::push({w[j]});
            b.add(std::move(r));
          }
        }
        break;
      }
    }
  }

  // Wind-down: each original halting state empties its counters, parks the
  // head on cell 0, pops down to the dummy guard and finally pops the guard.
  for (int tag = 0; tag < 2; ++tag) {
    const auto& halting = tag == 0 ? n.accepting : n.rejecting;
    if (halting.empty()) continue;
    const std::string suffix = tag == 0 ? "acc" : "rej";
    const int park = b.state(fresh_state(n, "slim~park~" + suffix));
    const int drain = b.state(fresh_state(n, "slim~drain~" + suffix));
    const int final_state = tag == 0 ? final_acc : final_rej;

    for (int h : halting) {
      for (char t : b.tape_symbols()) {
        for (int j = 0; j < k; ++j) {
          auto r = b.rule(h, t, h, 0);
          for (int c = 0; c < j; ++c) r.guards[c] = Guard::zero;
          r.guards[j] = Guard::nonzero;
          r.ops[j] = CounterOp::dec;
          via_filler(std::move(r), h);
        }
        auto r = b.rule(h, t, park, 0);
        for (int c = 0; c < k; ++c) r.guards[c] = Guard::zero;
        via_filler(std::move(r), park);
      }
    }
    for (char t : b.tape_symbols()) {
      if (t == kLeftEnd) via_filler(b.rule(park, t, drain, 0), drain);
      else via_filler(b.rule(park, t, park, -1), park);
    }
    for (int s = 1; s < static_cast<int>(b.spec().stack->alphabet.size()); ++s) {
      auto r = b.rule(drain, kLeftEnd, s == dummy ? final_state : drain, 0);
      r.stack_top = s;
      r.stack_op = StackOp::pop();
      b.add(std::move(r));
    }
  }

  b.spec().provenance = Provenance{n.name, "slim", nlohmann::json::object()};
  return b.finish(init, {final_acc}, {final_rej});
}

}  // namespace counterlab
