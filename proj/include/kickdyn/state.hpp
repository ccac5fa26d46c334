// Copyright 2026 The kickdyn Authors
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

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "kickdyn/qmat.hpp"

namespace kickdyn {

/// Pure two-qubit state: amplitudes a1..a4 over (|11>, |10>, |01>, |00>).
using StateVector = Vector<4>;

inline double norm(const StateVector& s) { return std::sqrt(norm_squared(s)); }

/// Named initial states.
enum class NamedState { ket11, ket10, ket01, ket00, phi_plus, phi_minus, psi_plus, psi_minus };

inline StateVector make_state(NamedState s) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (s) {
    case NamedState::ket11: return StateVector{{1.0, 0.0, 0.0, 0.0}};
    case NamedState::ket10: return StateVector{{0.0, 1.0, 0.0, 0.0}};
    case NamedState::ket01: return StateVector{{0.0, 0.0, 1.0, 0.0}};
    case NamedState::ket00: return StateVector{{0.0, 0.0, 0.0, 1.0}};
    case NamedState::phi_plus: return StateVector{{r, 0.0, 0.0, r}};
    case NamedState::phi_minus: return StateVector{{r, 0.0, 0.0, -r}};
    case NamedState::psi_plus: return StateVector{{0.0, r, r, 0.0}};
    case NamedState::psi_minus: return StateVector{{0.0, r, -r, 0.0}};
  }
  return {};
}

inline constexpr std::array<NamedState, 8> kAllNamedStates{
    NamedState::ket11,    NamedState::ket10,     NamedState::ket01,    NamedState::ket00,
    NamedState::phi_plus, NamedState::phi_minus, NamedState::psi_plus, NamedState::psi_minus};

// phi = (|11> +- |00>)/sqrt2, psi = (|10> +- |01>)/sqrt2
inline std::string_view to_string(NamedState s) {
  switch (s) {
    case NamedState::ket11: return "11";
    case NamedState::ket10: return "10";
    case NamedState::ket01: return "01";
    case NamedState::ket00: return "00";
    case NamedState::phi_plus: return "phi+";
    case NamedState::phi_minus: return "phi-";
    case NamedState::psi_plus: return "psi+";
    case NamedState::psi_minus: return "psi-";
  }
  return "?";
}

inline std::optional<NamedState> parse_named_state(std::string_view name) {
  for (auto s : kAllNamedStates)
    if (to_string(s) == name) return s;
  if (name == "bell") return NamedState::psi_plus;
  return std::nullopt;
}

/// True when the state lies in span{|10>, |01>} exactly.
inline bool in_exchange_sector(const StateVector& s) { return s[0] == 0.0 && s[3] == 0.0; }

}  // namespace kickdyn
