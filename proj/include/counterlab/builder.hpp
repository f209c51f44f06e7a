// Incremental construction of machine specs, shared by the transformations.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "counterlab/machine.hpp"

namespace counterlab {

class MachineBuilder {
 public:
  /// Copies name, mode, alphabet, counter count and stack shape of `shape`;
  /// states and rules start empty.
  explicit MachineBuilder(const MachineSpec& shape);

  /// Get-or-create a state by name.
  int state(const std::string& name);
  bool has_state(const std::string& name) const { return index_.count(name) != 0; }

  /// Tape symbols in canonical order: '>', the alphabet, '<'.
  const std::vector<char>& tape_symbols() const { return tape_symbols_; }

  /// Rule skeleton with "any" guards and no-op counters and stack.
  TransitionRule rule(int from, char read, int to, int move) const;

  void add(TransitionRule r) { spec_.transitions.push_back(std::move(r)); }

  MachineSpec& spec() { return spec_; }
  int counters() const { return spec_.counters; }

  /// Sets the halting sets and the initial state, validates and returns.
  MachineSpec finish(int initial, std::vector<int> accepting, std::vector<int> rejecting);

 private:
  MachineSpec spec_;
  std::map<std::string, int> index_;
  std::vector<char> tape_symbols_;
};

}  // namespace counterlab
