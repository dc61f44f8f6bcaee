#include "bdnsat/oracle.hpp"

#include "bdnsat/error.hpp"
#include "parallel.hpp"

#include <cstdint>

namespace bdn {
namespace {

AtomSet subset_from_mask(const std::vector<AtomId>& ids, std::uint64_t mask, std::size_t universe) {
    AtomSet s(universe);
    for (std::size_t j = 0; j < ids.size(); ++j)
        if ((mask >> j) & 1u) s.insert(ids[j]);
    return s;
}

// M must already be a model of `reduct`.
bool no_smaller_model(const Program& reduct, const AtomSet& m) {
    const auto members = m.ids();
    const std::uint64_t full = (std::uint64_t{1} << members.size()) - 1;
    for (std::uint64_t mask = 0; mask < full; ++mask)
        if (is_model(subset_from_mask(members, mask, m.universe()), reduct)) return false;
    return true;
}

} // namespace

bool naive_is_answer_set(const Program& p, const AtomSet& m) {
    if (m.size() >= 63) throw GuardError("naive_is_answer_set: candidate too large");
    const Program reduct = gl_reduct(p, m);
    return is_model(m, reduct) && no_smaller_model(reduct, m);
}

std::vector<AtomSet> enumerate_answer_sets(const Program& p, bool force) {
    const auto ids = p.atoms().ids();
    if (!force && ids.size() > kOracleAtomLimit)
        throw GuardError("enumerate_answer_sets: " + std::to_string(ids.size()) + " atoms exceed the limit of " +
                         std::to_string(kOracleAtomLimit));
    if (ids.size() >= 63) throw GuardError("enumerate_answer_sets: too many atoms");

    const std::int64_t count = std::int64_t{1} << ids.size();
    std::vector<char> hit(static_cast<std::size_t>(count), 0);
    detail::parallel_for(count, [&](std::int64_t mask) {
        const AtomSet m = subset_from_mask(ids, static_cast<std::uint64_t>(mask), p.universe());
        const Program reduct = gl_reduct(p, m);
        if (is_model(m, reduct) && no_smaller_model(reduct, m)) hit[static_cast<std::size_t>(mask)] = 1;
    });

    std::vector<AtomSet> out;
    for (std::int64_t mask = 0; mask < count; ++mask)
        if (hit[static_cast<std::size_t>(mask)]) out.push_back(subset_from_mask(ids, static_cast<std::uint64_t>(mask), p.universe()));
    return out;
}

} // namespace bdn
