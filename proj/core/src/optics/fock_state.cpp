// Copyright 2026 The qtele Authors
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

#include "qtele/optics/fock_state.hpp"

#include <algorithm>
#include <cmath>

#include "qtele/errors.hpp"

namespace qtele::optics {

std::string to_string(Arm arm) {
  switch (arm) {
    case Arm::a: return "a";
    case Arm::b: return "b";
    case Arm::c: return "c";
    case Arm::d: return "d";
    case Arm::photon3: return "photon3";
    case Arm::trigger: return "trigger";
  }
  return "?";
}

std::string OpticalMode::str() const {
  std::string s = to_string(pol) + std::to_string(rail) + "_" + to_string(arm);
  if (tag != 0) s += "#" + std::to_string(tag);
  return s;
}

OpticalMode encode_level(Arm arm, int level, int tag) {
  switch (level) {
    case 0: return {arm, 0, Pol::H, tag};
    case 1: return {arm, 1, Pol::V, tag};
    case 2: return {arm, 2, Pol::H, tag};
    default: throw DimensionError("encode_level: level must be 0, 1 or 2");
  }
}

int decode_level(const OpticalMode& m) {
  if (m.rail == 0 && m.pol == Pol::H) return 0;
  if (m.rail == 1 && m.pol == Pol::V) return 1;
  if (m.rail == 2 && m.pol == Pol::H) return 2;
  return -1;
}

int occupation(const Pattern& p, const OpticalMode& m) {
  const auto [lo, hi] = std::equal_range(p.begin(), p.end(), m);
  return static_cast<int>(hi - lo);
}

FockState FockState::vacuum(std::set<Arm> universe) {
  FockState s;
  s.universe_ = std::move(universe);
  s.terms_.emplace(Pattern{}, Complex{1.0, 0.0});
  return s;
}

FockState FockState::create(const std::vector<CreationTerm>& poly) const {
  if (poly.empty()) throw InvariantError("FockState::create: empty polynomial");
  const std::size_t k = poly.front().modes.size();
  for (const auto& t : poly) {
    if (t.modes.size() != k) {
      throw InvariantError("FockState::create: monomials create different photon numbers");
    }
    for (const auto& m : t.modes) {
      if (!universe_.contains(m.arm)) {
        throw ModeResolutionError("FockState::create: arm " + to_string(m.arm) +
                                  " is not in the mode universe");
      }
    }
  }
  FockState out;
  out.universe_ = universe_;
  out.photons_ = photons_ + static_cast<int>(k);
  for (const auto& [pattern, amp] : terms_) {
    for (const auto& t : poly) {
      Pattern p = pattern;
      Complex a = amp * t.amplitude;
      for (const auto& m : t.modes) {
        a *= std::sqrt(static_cast<double>(occupation(p, m) + 1));
        p.insert(std::upper_bound(p.begin(), p.end(), m), m);
      }
      out.add(std::move(p), a);
    }
  }
  out.prune();
  if (out.distinct_modes() > kMaxModes) {
    throw InvariantError("FockState: more than 64 distinct modes");
  }
  return out;
}

double FockState::norm2() const {
  double s = 0.0;
  for (const auto& [p, a] : terms_) s += std::norm(a);
  return s;
}

std::size_t FockState::distinct_modes() const {
  std::set<OpticalMode> modes;
  for (const auto& [p, a] : terms_) modes.insert(p.begin(), p.end());
  return modes.size();
}

Complex FockState::amplitude(Pattern p) const {
  std::sort(p.begin(), p.end());
  const auto it = terms_.find(p);
  return it == terms_.end() ? Complex{} : it->second;
}

FockState FockState::filtered(const std::function<bool(const Pattern&)>& keep) const {
  FockState out;
  out.universe_ = universe_;
  out.photons_ = photons_;
  for (const auto& [p, a] : terms_) {
    if (keep(p)) out.terms_.emplace(p, a);
  }
  return out;
}

FockState FockState::scaled(Complex factor) const {
  FockState out = *this;
  for (auto& [p, a] : out.terms_) a *= factor;
  out.prune();
  return out;
}

FockState FockState::from_terms(std::set<Arm> universe, int photons,
                                const std::vector<std::pair<Pattern, Complex>>& terms) {
  FockState out;
  out.universe_ = std::move(universe);
  out.photons_ = photons;
  for (auto [p, a] : terms) {
    if (static_cast<int>(p.size()) != photons) {
      throw InvariantError("FockState::from_terms: pattern photon number mismatch");
    }
    std::sort(p.begin(), p.end());
    out.add(std::move(p), a);
  }
  out.prune();
  return out;
}

void FockState::add(Pattern p, Complex amp) { terms_[std::move(p)] += amp; }

void FockState::prune(double eps) {
  std::erase_if(terms_, [eps](const auto& kv) { return std::abs(kv.second) <= eps; });
}

}  // namespace qtele::optics
