// Copyright 2026 The mcqt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCQT_PARTY_H
#define MCQT_PARTY_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mcqt {

inline constexpr std::size_t kMaxSenders = 4;

/// Four senders, their four receivers (sender i -> receiver i) and the
/// controller.
enum class Party : std::uint8_t { Alice, Bob, Charlie, David, Fancy1, Fancy2, Fancy3, Fancy4, Elle };

inline constexpr std::array<Party, kMaxSenders> kSenders = {Party::Alice, Party::Bob, Party::Charlie, Party::David};
inline constexpr std::array<Party, kMaxSenders> kReceivers = {Party::Fancy1, Party::Fancy2, Party::Fancy3,
                                                              Party::Fancy4};

constexpr bool is_sender(Party p) {
    return p <= Party::David;
}
constexpr bool is_receiver(Party p) {
    return p >= Party::Fancy1 && p <= Party::Fancy4;
}

/// 0..3 for a sender or receiver.
inline std::size_t party_slot(Party p) {
    if (is_sender(p)) {
        return static_cast<std::size_t>(p);
    }
    if (is_receiver(p)) {
        return static_cast<std::size_t>(p) - static_cast<std::size_t>(Party::Fancy1);
    }
    throw std::invalid_argument("the controller has no sender/receiver slot");
}

inline std::string_view party_name(Party p) {
    constexpr std::array<std::string_view, 9> names = {"Alice",  "Bob",    "Charlie", "David", "Fancy1",
                                                       "Fancy2", "Fancy3", "Fancy4",  "Elle"};
    return names[static_cast<std::size_t>(p)];
}

} // namespace mcqt

#endif // MCQT_PARTY_H
