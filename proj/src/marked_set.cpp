#include "grover/marked_set.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "grover/state.hpp"

namespace grover {

MarkedSet::MarkedSet(int n, std::vector<BasisIndex> members) : n_(n), members_(std::move(members)) {
    if (n < 1 || n > kMaxStateQubits) {
        throw std::invalid_argument("marked set: qubit count " + std::to_string(n) + " out of range");
    }
    const BasisIndex dim = BasisIndex{1} << n;
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
        throw std::invalid_argument("marked set: duplicate basis index");
    }
    if (!members_.empty() && members_.back() >= dim) {
        throw std::invalid_argument("marked set: basis index " + std::to_string(members_.back()) +
                                    " is not below 2^" + std::to_string(n));
    }
    table_.assign(dim, 0);
    for (auto x : members_) table_[x] = 1;
}

MarkedSet MarkedSet::from_mask(int n, std::uint64_t mask) {
    if (n < 1 || n > 6) throw std::invalid_argument("marked set: mask form needs 1 <= n <= 6");
    std::vector<BasisIndex> members;
    members.reserve(static_cast<std::size_t>(std::popcount(mask)));
    for (BasisIndex x = 0; mask != 0; ++x, mask >>= 1) {
        if (mask & 1U) members.push_back(x);
    }
    return MarkedSet(n, std::move(members));
}

int MarkedSet::q() const {
    if (members_.empty()) throw std::domain_error("marked set: q undefined for M = 0");
    return std::countr_zero(static_cast<std::uint64_t>(members_.size()));
}

std::uint64_t MarkedSet::p() const {
    const auto odd = static_cast<std::uint64_t>(members_.size()) >> q();
    return (odd - 1) / 2;
}

MarkedSet MarkedSet::complement() const {
    std::vector<BasisIndex> rest;
    rest.reserve(table_.size() - members_.size());
    for (BasisIndex x = 0; x < table_.size(); ++x) {
        if (!table_[x]) rest.push_back(x);
    }
    return MarkedSet(n_, std::move(rest));
}

}  // namespace grover
