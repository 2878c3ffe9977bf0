// Copyright 2026 The ufsim Authors
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

#include <cstdint>
#include <utility>
#include <vector>

namespace ufsim {

/// Disjoint sets whose representative is always the minimum element, with
/// per-root defect parity and boundary flag. Path compression only; the
/// min-element rule replaces union-by-rank so roots coincide with cluster ids.
class ClusterSet {
   public:
    using Element = std::uint32_t;

    explicit ClusterSet(std::size_t n) : parent_(n), parity_(n, 0), boundary_(n, 0), members_(n) {
        for (std::size_t i = 0; i < n; ++i) {
            parent_[i] = static_cast<Element>(i);
            members_[i].push_back(static_cast<Element>(i));
        }
    }

    std::size_t size() const { return parent_.size(); }

    Element find(Element x) {
        Element root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            Element next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    /// Merges the sets of a and b. Returns the surviving root.
    Element unite(Element a, Element b) {
        Element ra = find(a);
        Element rb = find(b);
        if (ra == rb) return ra;
        if (rb < ra) std::swap(ra, rb);
        parent_[rb] = ra;
        parity_[ra] ^= parity_[rb];
        boundary_[ra] |= boundary_[rb];
        auto& big = members_[ra].size() >= members_[rb].size() ? members_[ra] : members_[rb];
        auto& small = &big == &members_[ra] ? members_[rb] : members_[ra];
        big.insert(big.end(), small.begin(), small.end());
        if (&big != &members_[ra]) members_[ra].swap(members_[rb]);
        members_[rb].clear();
        members_[rb].shrink_to_fit();
        return ra;
    }

    void set_parity(Element x, bool odd) { parity_[find(x)] = odd ? 1 : 0; }
    void toggle_parity(Element x) { parity_[find(x)] ^= 1; }
    void mark_boundary(Element x) { boundary_[find(x)] = 1; }

    bool parity(Element x) { return parity_[find(x)] != 0; }
    bool touches_boundary(Element x) { return boundary_[find(x)] != 0; }
    bool is_odd(Element x) {
        Element r = find(x);
        return parity_[r] && !boundary_[r];
    }

    /// Members of the set rooted at `root` (valid only for current roots).
    const std::vector<Element>& members(Element root) const { return members_[root]; }

   private:
    std::vector<Element> parent_;
    std::vector<std::uint8_t> parity_;
    std::vector<std::uint8_t> boundary_;
    std::vector<std::vector<Element>> members_;
};

}  // namespace ufsim
