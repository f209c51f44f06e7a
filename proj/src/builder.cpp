#include "counterlab/builder.hpp"

namespace counterlab {

MachineBuilder::MachineBuilder(const MachineSpec& shape) {
  spec_.name = shape.name;
  spec_.mode = shape.mode;
  spec_.alphabet = shape.alphabet;
  spec_.counters = shape.counters;
  spec_.stack = shape.stack;
  spec_.allow_stationary = shape.allow_stationary;
  tape_symbols_.push_back(kLeftEnd);
  tape_symbols_.insert(tape_symbols_.end(), shape.alphabet.begin(), shape.alphabet.end());
  tape_symbols_.push_back(kRightEnd);
}

int MachineBuilder::state(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(spec_.states.size());
  spec_.states.push_back(name);
  index_.emplace(name, id);
  return id;
}

TransitionRule MachineBuilder::rule(int from, char read, int to, int move) const {
  TransitionRule r;
  r.from = from;
  r.read = read;
  r.to = to;
  r.move = move;
  r.guards.assign(static_cast<std::size_t>(spec_.counters), Guard::any);
  r.ops.assign(static_cast<std::size_t>(spec_.counters), CounterOp::noop);
  return r;
}

MachineSpec MachineBuilder::finish(int initial, std::vector<int> accepting, std::vector<int> rejecting) {
  spec_.initial = initial;
  spec_.accepting = std::move(accepting);
  spec_.rejecting = std::move(rejecting);
  validate(spec_);
  return spec_;
}

}  // namespace counterlab
