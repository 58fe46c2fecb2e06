#pragma once

#include <string>
#include <vector>

#include "viewcheck/system.hpp"

namespace viewcheck {

/// Brute-force FIFO check of the abstract queue. Each layout spreads K
/// enqueues of 1..K and K dequeues over threads; every reachable state of
/// the weak-memory queue is checked against a sequential FIFO, and the
/// terminal dequeue results are compared with those of every interleaving
/// of the same threads on a sequential queue.
struct FifoLayout {
  std::string name;
  std::vector<std::vector<int>> threads;  // per thread: value > 0 enqueues it, 0 dequeues
};

std::vector<FifoLayout> fifo_layouts(int enqs);

struct FifoReport {
  std::string layout;
  std::size_t states = 0;
  std::size_t order_violations = 0;   // matched not order-preserving
  std::size_t replay_violations = 0;  // timestamp order is not a FIFO history
  std::size_t model_outcomes = 0;
  std::size_t oracle_outcomes = 0;
  std::size_t unexplained = 0;        // model outcomes no sequential run produces
  std::size_t missing = 0;            // sequential outcomes the model never reaches
  bool truncated = false;

  bool ok() const { return order_violations == 0 && replay_violations == 0 && unexplained == 0 && !truncated; }
};

/// Text of a litmus file for the layout (all dequeue results observed).
std::string fifo_litmus(const FifoLayout& layout);

/// True iff matched pairs are order-preserving: (a,b), (c,d) with a < c
/// exactly when b < d.
bool matched_order_preserving(const ComponentState& lib);

/// Replays the queue ops of `lib` in timestamp order on a sequential queue.
bool replays_as_fifo(const ComponentState& lib, VarId q);

FifoReport check_fifo(const FifoLayout& layout, int max_steps = 64);

}  // namespace viewcheck
