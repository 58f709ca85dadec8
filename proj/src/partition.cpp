#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "qsep/qlinalg.hpp"

namespace qsep {

namespace {

std::vector<int> parse_index_list(std::string_view side) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < side.size()) {
        std::size_t end = side.find(',', pos);
        if (end == std::string_view::npos) end = side.size();
        const std::string_view tok = side.substr(pos, end - pos);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw std::invalid_argument("partition: bad qubit index '" + std::string(tok) + "'");
        out.push_back(value);
        pos = end + 1;
    }
    return out;
}

std::vector<int> parse_letters(std::string_view side) {
    std::vector<int> out;
    for (char ch : side) {
        const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (up < 'A' || up > 'Z')
            throw std::invalid_argument(std::string("partition: bad qubit letter '") + ch + "'");
        out.push_back(up - 'A');
    }
    return out;
}

}  // namespace

Partition::Partition(int n_qubits, std::vector<int> conditioning_set) : n_qubits_(n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("partition needs at least 2 qubits");
    std::sort(conditioning_set.begin(), conditioning_set.end());
    if (conditioning_set.empty() || static_cast<int>(conditioning_set.size()) >= n_qubits)
        throw std::invalid_argument("partition: conditioning set must be a nonempty proper subset");
    if (conditioning_set.front() < 0 || conditioning_set.back() >= n_qubits)
        throw std::invalid_argument("partition: qubit index out of range");
    if (std::adjacent_find(conditioning_set.begin(), conditioning_set.end()) != conditioning_set.end())
        throw std::invalid_argument("partition: duplicate qubit index");
    conditioning_ = std::move(conditioning_set);
    std::size_t j = 0;
    for (int q = 0; q < n_qubits; ++q) {
        if (j < conditioning_.size() && conditioning_[j] == q)
            ++j;
        else
            remainder_.push_back(q);
    }
}

Partition Partition::parse(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size())
        throw std::invalid_argument("partition must look like 'A:BC' or '0:1,2'");
    const std::string_view left = text.substr(0, colon);
    const std::string_view right = text.substr(colon + 1);

    const bool numeric = left.find_first_of("0123456789") != std::string_view::npos;
    std::vector<int> lhs = numeric ? parse_index_list(left) : parse_letters(left);
    std::vector<int> rhs = numeric ? parse_index_list(right) : parse_letters(right);

    std::vector<int> all = lhs;
    all.insert(all.end(), rhs.begin(), rhs.end());
    std::sort(all.begin(), all.end());
    const int n = static_cast<int>(all.size());
    for (int q = 0; q < n; ++q)
        if (all[q] != q)
            throw std::invalid_argument("partition '" + std::string(text) +
                                        "' must mention each qubit 0.." + std::to_string(n - 1) +
                                        " exactly once");
    return Partition(n, std::move(rhs));
}

std::string Partition::to_string() const {
    std::string out;
    for (int q : remainder_) out += static_cast<char>('A' + q);
    out += ':';
    for (int q : conditioning_) out += static_cast<char>('A' + q);
    return out;
}

}  // namespace qsep
