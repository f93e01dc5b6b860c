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

#include "relaysec/buffers.hpp"

#include <string>
#include <utility>

#include "relaysec/error.hpp"

namespace relaysec {

RelayBuffer::RelayBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) {
    throw BufferError("buffer capacity must be >= 1, got " +
                      std::to_string(capacity));
  }
}

bool RelayBuffer::eligible(Role role) const {
  return role == Role::kReceive ? occupancy() < capacity_ : occupancy() > 0;
}

void RelayBuffer::enqueue(StoredBlock block) {
  if (full()) {
    throw BufferError("enqueue on full buffer (capacity " +
                      std::to_string(capacity_) + ")");
  }
  queue_.push_back(std::move(block));
}

StoredBlock RelayBuffer::dequeue() {
  if (queue_.empty()) throw BufferError("dequeue on empty buffer");
  StoredBlock out = std::move(queue_.front());
  queue_.pop_front();
  return out;
}

const StoredBlock& RelayBuffer::front() const {
  if (queue_.empty()) throw BufferError("front of empty buffer");
  return queue_.front();
}

CandidateSet build_candidates(std::span<const RelayBuffer> buffers) {
  CandidateSet c;
  for (std::size_t i = 0; i < buffers.size(); ++i) {
    if (buffers[i].eligible(Role::kReceive)) c.receive.push_back(static_cast<int>(i));
    if (buffers[i].eligible(Role::kTransmit)) c.transmit.push_back(static_cast<int>(i));
  }
  return c;
}

}  // namespace relaysec
