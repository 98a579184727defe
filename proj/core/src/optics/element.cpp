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

#include "qtele/optics/element.hpp"

#include <algorithm>
#include <cmath>

#include "qtele/errors.hpp"

namespace qtele::optics {
namespace {

bool contains(const std::vector<Arm>& arms, Arm a) {
  return std::find(arms.begin(), arms.end(), a) != arms.end();
}

double factorial_product(const Pattern& sorted) {
  double f = 1.0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
      f *= static_cast<double>(run);
    } else {
      run = 1;
    }
  }
  return f;
}

void expand(const std::vector<std::vector<std::pair<OpticalMode, Complex>>>& images,
            std::size_t idx, Pattern& current, Complex amp, FockState& out) {
  if (idx == images.size()) {
    Pattern p = current;
    std::sort(p.begin(), p.end());
    const double f = factorial_product(p);
    out.add(std::move(p), amp * std::sqrt(f));
    return;
  }
  for (const auto& [mode, c] : images[idx]) {
    current.push_back(mode);
    expand(images, idx + 1, current, amp * c, out);
    current.pop_back();
  }
}

}  // namespace

OpticalElement OpticalElement::pbs(Arm first, Arm second) {
  OpticalElement e;
  e.kind = ElementKind::PBS;
  e.arms = {first, second};
  e.label = "PBS(" + to_string(first) + "," + to_string(second) + ")";
  return e;
}

OpticalElement OpticalElement::beam_displacer(std::vector<Arm> arms) {
  OpticalElement e;
  e.kind = ElementKind::BD;
  e.arms = std::move(arms);
  e.label = "BD";
  return e;
}

OpticalElement OpticalElement::hwp(double degrees, std::vector<Arm> arms, std::optional<int> rail) {
  OpticalElement e;
  e.kind = ElementKind::HWP;
  e.arms = std::move(arms);
  e.rail = rail;
  e.parameter = degrees * kPi / 180.0;
  e.label = "HWP(" + std::to_string(degrees) + ")";
  return e;
}

OpticalElement OpticalElement::phase_shift(double phase, Arm arm, std::optional<int> rail,
                                           std::optional<Pol> pol) {
  OpticalElement e;
  e.kind = ElementKind::PhaseShift;
  e.arms = {arm};
  e.rail = rail;
  e.pol = pol;
  e.parameter = phase;
  e.label = "Phase";
  return e;
}

OpticalElement OpticalElement::route(std::vector<Arm> arms, std::map<int, int> rail_map) {
  std::vector<int> targets;
  for (const auto& [from, to] : rail_map) targets.push_back(to);
  std::sort(targets.begin(), targets.end());
  std::vector<int> sources;
  for (const auto& [from, to] : rail_map) sources.push_back(from);
  if (targets != sources) throw InvariantError("Route: rail map must be a permutation");
  OpticalElement e;
  e.kind = ElementKind::Route;
  e.arms = std::move(arms);
  e.rail_map = std::move(rail_map);
  e.label = "Route";
  return e;
}

bool OpticalElement::acts_on(const OpticalMode& m) const {
  if (!contains(arms, m.arm)) return false;
  if (rail && *rail != m.rail) return false;
  if (pol && *pol != m.pol) return false;
  return true;
}

std::vector<std::pair<OpticalMode, Complex>> OpticalElement::transfer(const OpticalMode& m) const {
  if (!acts_on(m)) return {{m, 1.0}};
  OpticalMode out = m;
  switch (kind) {
    case ElementKind::PBS:
      if (m.pol == Pol::V) out.arm = (m.arm == arms[0]) ? arms[1] : arms[0];
      return {{out, 1.0}};
    case ElementKind::BD:
      if (m.pol == Pol::V) out.rail = m.rail - 1;
      return {{out, 1.0}};
    case ElementKind::HWP: {
      const double c = std::cos(2.0 * parameter);
      const double s = std::sin(2.0 * parameter);
      OpticalMode h = m;
      h.pol = Pol::H;
      OpticalMode v = m;
      v.pol = Pol::V;
      if (m.pol == Pol::H) return {{h, c}, {v, s}};
      return {{h, s}, {v, -c}};
    }
    case ElementKind::PhaseShift:
      return {{out, std::polar(1.0, parameter)}};
    case ElementKind::Route: {
      const auto it = rail_map.find(m.rail);
      if (it != rail_map.end()) out.rail = it->second;
      return {{out, 1.0}};
    }
  }
  return {{m, 1.0}};
}

CMatrix OpticalElement::transfer_matrix(const std::vector<OpticalMode>& modes) const {
  const auto n = static_cast<Eigen::Index>(modes.size());
  CMatrix u = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (const auto& [m, c] : transfer(modes[static_cast<std::size_t>(j)])) {
      const auto it = std::find(modes.begin(), modes.end(), m);
      if (it == modes.end()) {
        throw ModeResolutionError("transfer_matrix: mode list not closed under " + label);
      }
      u(it - modes.begin(), j) += c;
    }
  }
  return u;
}

FockState apply_element(const FockState& state, const OpticalElement& element) {
  for (Arm a : element.arms) {
    if (!state.universe().contains(a)) {
      throw ModeResolutionError(element.label + " references arm " + to_string(a) +
                                " outside the mode universe");
    }
  }
  FockState out = FockState::from_terms(state.universe(), state.total_photons(), {});
  std::vector<std::vector<std::pair<OpticalMode, Complex>>> images;
  Pattern current;
  for (const auto& [pattern, amp] : state.terms()) {
    images.clear();
    for (const auto& m : pattern) images.push_back(element.transfer(m));
    current.clear();
    expand(images, 0, current, amp / std::sqrt(factorial_product(pattern)), out);
  }
  out.prune();
  return out;
}

PostSelectionPattern::PostSelectionPattern(std::vector<PhotonRequirement> required)
    : required_(std::move(required)) {
  for (std::size_t i = 0; i < required_.size(); ++i) {
    if (required_[i].count < 0) throw InvariantError("PostSelectionPattern: negative count");
    for (std::size_t j = i + 1; j < required_.size(); ++j) {
      const auto& x = required_[i];
      const auto& y = required_[j];
      const bool rail_overlap = !x.rail || !y.rail || *x.rail == *y.rail;
      const bool pol_overlap = !x.pol || !y.pol || *x.pol == *y.pol;
      if (x.arm == y.arm && rail_overlap && pol_overlap) {
        throw InvariantError("PostSelectionPattern: overlapping requirements on arm " +
                             to_string(x.arm));
      }
    }
  }
}

int PostSelectionPattern::total_required() const {
  int n = 0;
  for (const auto& r : required_) n += r.count;
  return n;
}

bool PostSelectionPattern::matches(const Pattern& p) const {
  for (const auto& r : required_) {
    int n = 0;
    for (const auto& m : p) {
      if (m.arm == r.arm && (!r.rail || *r.rail == m.rail) && (!r.pol || *r.pol == m.pol)) ++n;
    }
    if (n != r.count) return false;
  }
  return true;
}

FockState project(const FockState& state, const PostSelectionPattern& pattern) {
  return state.filtered([&](const Pattern& p) { return pattern.matches(p); });
}

PostSelection post_select(const FockState& state, const PostSelectionPattern& pattern) {
  PostSelection r;
  FockState kept = project(state, pattern);
  r.probability = kept.norm2();
  if (r.probability > 0.0) {
    r.state = kept.scaled(1.0 / std::sqrt(r.probability));
  } else {
    r.state = FockState::from_terms(state.universe(), state.total_photons(), {});
  }
  return r;
}

}  // namespace qtele::optics
