// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RELAYSEC_BUFFERS_HPP_
#define RELAYSEC_BUFFERS_HPP_

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "relaysec/numerics.hpp"

namespace relaysec {

/// A decoded signal block waiting at a relay.
struct StoredBlock {
  CMatrix signal;             // N_i x 1 (1 x 1 in single-antenna mode)
  CMatrix quality;            // SINR matrix the relay decoded it at (xi)
  double secrecy = 0.0;       // hop-1 secrecy at reception (single mode)
  std::int64_t origin_slot = 0;
};

enum class Role { kReceive, kTransmit };

/// Finite FIFO queue of capacity L at one relay.
class RelayBuffer {
 public:
  explicit RelayBuffer(int capacity);

  int capacity() const { return capacity_; }
  int occupancy() const { return static_cast<int>(queue_.size()); }
  bool empty() const { return queue_.empty(); }
  bool full() const { return occupancy() == capacity_; }

  // Receive needs occupancy != L, transmit needs occupancy != 0.
  bool eligible(Role role) const;

  // Throws BufferError on a full buffer.
  void enqueue(StoredBlock block);
  // Oldest block. Throws BufferError on an empty buffer.
  StoredBlock dequeue();
  const StoredBlock& front() const;

 private:
  int capacity_;
  std::deque<StoredBlock> queue_;
};

/// Relays eligible for each role given the current buffer state.
struct CandidateSet {
  std::vector<int> receive;   // occupancy < L
  std::vector<int> transmit;  // occupancy > 0
};

CandidateSet build_candidates(std::span<const RelayBuffer> buffers);

}  // namespace relaysec

#endif  // RELAYSEC_BUFFERS_HPP_
