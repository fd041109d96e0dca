#include "ustatlab/oscillate.hpp"

#include "ustatlab/dyadic.hpp"
#include "ustatlab/errors.hpp"
#include "ustatlab/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace ustatlab::oscillate {

std::vector<std::string> IndexLadder::violations() const {
    std::vector<std::string> out;
    const std::size_t levels = big_n.size();
    if (levels == 0) {
        out.push_back("ladder is empty");
        return out;
    }
    if (n_prime.size() != levels + 1) {
        out.push_back("need exactly one more N' entry than N entries (N'_0..N'_L)");
        return out;
    }
    if (n_prime[0] != 1) {
        out.push_back("N'_0 must equal 1, got " + n_prime[0].str());
    }
    for (std::size_t l = 1; l <= levels; ++l) {
        if (!(big_n[l - 1] < n_prime[l])) {
            std::ostringstream os;
            os << "N_l < N'_l fails at l=" << l << " (" << big_n[l - 1].str()
               << " !< " << n_prime[l].str() << ")";
            out.push_back(os.str());
        }
        if (l < levels && !(n_prime[l] < big_n[l])) {
            std::ostringstream os;
            os << "N'_l < N_{l+1} fails at l=" << l << " (" << n_prime[l].str()
               << " !< " << big_n[l].str() << ")";
            out.push_back(os.str());
        }
        if (n_prime[l] < BigInt(l) * big_n[l - 1]) {
            std::ostringstream os;
            os << "N'_l >= l*N_l fails at l=" << l << " (" << n_prime[l].str() << " < " << l
               << "*" << big_n[l - 1].str() << ")";
            out.push_back(os.str());
        }
    }
    // N_{l+1}/N'_l strictly increasing: cross-multiplied comparison.
    for (std::size_t l = 1; l + 1 < levels; ++l) {
        // ratio at l uses N_{l+1}/N'_l with 1-based levels
        const BigInt lhs = big_n[l] * n_prime[l + 1];     // N_{l+1} * N'_{l+1}
        const BigInt rhs = big_n[l + 1] * n_prime[l];     // N_{l+2} * N'_l
        if (!(lhs < rhs)) {
            std::ostringstream os;
            os << "N_{l+1}/N'_l must increase strictly; fails between l=" << l << " and l="
               << l + 1;
            out.push_back(os.str());
        }
    }
    return out;
}

void IndexLadder::validate() const {
    const auto probs = violations();
    if (probs.empty()) return;
    std::string msg = "invalid index ladder:";
    for (const auto& p : probs) msg += "\n  - " + p;
    throw ConfigError(msg);
}

nlohmann::json IndexLadder::to_json() const {
    nlohmann::json j;
    auto& n = j["N"] = nlohmann::json::array();
    for (const auto& v : big_n) n.push_back(v.str());
    auto& np = j["Nprime"] = nlohmann::json::array();
    for (const auto& v : n_prime) np.push_back(v.str());
    return j;
}

IndexLadder IndexLadder::from_json(const nlohmann::json& j) {
    IndexLadder ladder;
    try {
        for (const auto& v : j.at("N")) ladder.big_n.emplace_back(v.get<std::string>());
        for (const auto& v : j.at("Nprime")) ladder.n_prime.emplace_back(v.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("ladder JSON: ") + e.what());
    } catch (const std::runtime_error& e) {
        throw ConfigError(std::string("ladder JSON: bad integer: ") + e.what());
    }
    return ladder;
}

IndexLadder default_ladder(std::size_t levels) {
    if (levels == 0) throw ConfigError("default_ladder: need at least one level");
    IndexLadder ladder;
    ladder.n_prime.push_back(1);
    ladder.big_n.push_back(2);
    for (std::size_t l = 1; l <= levels; ++l) {
        const BigInt np = BigInt(std::max<std::size_t>(l, 2)) * ladder.big_n[l - 1];
        ladder.n_prime.push_back(np);
        if (l < levels) {
            ladder.big_n.push_back((BigInt(1) << static_cast<unsigned>(l)) * np);
        }
    }
    return ladder;
}

LagSet::LagSet(IndexLadder ladder) : ladder_(std::move(ladder)) {
    ladder_.validate();
}

bool LagSet::contains(const BigInt& k) const {
    if (k < 1 || k > max_lag()) {
        throw RangeError("lag " + k.str() + " outside the decidable range [1, " +
                         max_lag().str() + "]");
    }
    // Largest l with N'_l < k; k is in I iff k <= N_{l+1}. lower_bound finds
    // the first N'_l >= k, so everything before it is strictly below k.
    auto it = std::lower_bound(ladder_.n_prime.begin(), ladder_.n_prime.end(), k,
                               [](const BigInt& a, const BigInt& b) { return a < b; });
    if (it == ladder_.n_prime.begin()) return false; // k <= N'_0 = 1
    const std::size_t l = static_cast<std::size_t>(it - ladder_.n_prime.begin()) - 1;
    if (l >= ladder_.big_n.size()) return false; // k in (N_L, N'_L]
    return k <= ladder_.big_n[l];
}

ExactSum exact_sum(const BigInt& n, const LagSet& lags) {
    if (n < 2 || n > lags.max_lag()) {
        throw RangeError("exact_sum: n = " + n.str() + " outside [2, " + lags.max_lag().str() +
                         "]");
    }
    const auto& ladder = lags.ladder();
    BigInt s = 0;
    // S(n) = sum over intervals I_l = (N'_l, N_{l+1}] of sum_{k=lo..hi} (n-k),
    // an arithmetic series per interval.
    for (std::size_t l = 0; l < ladder.big_n.size(); ++l) {
        const BigInt lo = ladder.n_prime[l] + 1;
        const BigInt hi = ladder.big_n[l] < n - 1 ? ladder.big_n[l] : BigInt(n - 1);
        if (lo > hi) {
            if (ladder.n_prime[l] >= n) break;
            continue;
        }
        const BigInt count = hi - lo + 1;
        s += ((n - lo) + (n - hi)) * count / 2;
    }
    ExactSum out;
    out.s = s;
    out.u_norm = BigRational(s, binom2(n));
    out.paper_norm = BigRational(s, n * (n - 1));
    return out;
}

AbDecomposition ab_decomposition(std::size_t level, const LagSet& lags) {
    const auto& ladder = lags.ladder();
    if (level < 3 || level > ladder.depth()) {
        throw RangeError("ab_decomposition: level must be in [3, depth]");
    }
    const BigInt& nl = ladder.big_n[level - 1];
    const BigInt denom = nl * (nl - 1);

    // A: intervals I_0..I_{level-2}; every k there is < N_{level}.
    BigInt a_sum = 0;
    for (std::size_t u = 0; u + 2 <= level; ++u) {
        const BigInt lo = ladder.n_prime[u] + 1;
        const BigInt hi = ladder.big_n[u];
        const BigInt count = hi - lo + 1;
        a_sum += ((nl - lo) + (nl - hi)) * count / 2;
    }
    // B: interval I_{level-1} = (N'_{level-1}, N_level]; top term contributes 0.
    const BigInt lo = ladder.n_prime[level - 1] + 1;
    const BigInt count = nl - lo + 1;
    BigInt b_sum = ((nl - lo) + 0) * count / 2;

    AbDecomposition out;
    out.a = BigRational(a_sum, denom);
    out.b = BigRational(b_sum, denom);
    return out;
}

std::vector<OscillationRow> oscillation_report(const LagSet& lags) {
    const auto& ladder = lags.ladder();
    std::vector<OscillationRow> rows;
    rows.reserve(2 * ladder.depth());
    for (std::size_t l = 1; l <= ladder.depth(); ++l) {
        for (int which = 0; which < 2; ++which) {
            OscillationRow row;
            row.level = l;
            row.which = which == 0 ? "N" : "N'";
            row.n = which == 0 ? ladder.big_n[l - 1] : ladder.n_prime[l];
            const ExactSum es = exact_sum(row.n, lags);
            row.s = es.s;
            row.u_norm = es.u_norm;
            row.paper_norm = es.paper_norm;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

BigRational SimulateCheckResult::u_value() const {
    const BigInt n_big(static_cast<std::uint64_t>(n));
    return BigRational(pair_sum, binom2(n_big));
}

SimulateCheckResult simulate_check(std::size_t n, std::uint64_t seed, const LagSet& lags,
                                   std::uint64_t guard_digits) {
    if (n < 2) throw RangeError("simulate_check: need n >= 2");
    if (BigInt(static_cast<std::uint64_t>(n)) > lags.max_lag()) {
        throw RangeError("simulate_check: n beyond the ladder's decidable range");
    }
    if (guard_digits == 0) throw ConfigError("simulate_check: need guard_digits >= 1");

    SimulateCheckResult res;
    res.n = n;
    res.seed = seed;
    res.guard_digits = guard_digits;
    res.expected_sum = exact_sum(BigInt(static_cast<std::uint64_t>(n)), lags).s;

    // Candidate lags I cap [1, n], as one flat list.
    std::vector<std::uint64_t> candidates;
    std::vector<char> lag_in_i(n + 1, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        if (lags.contains(BigInt(static_cast<std::uint64_t>(k)))) {
            candidates.push_back(k);
            lag_in_i[k] = 1;
        }
    }

    const auto x = dyadic::make_point(seed);
    std::uint64_t pair_sum = 0;
    for (std::size_t j = 2; j <= n; ++j) {
        for (std::size_t i = 1; i < j; ++i) {
            // (X_i, X_j) in G iff T^{i+k} x == T^j x for some k in I.
            int h = 0;
            std::uint64_t matched = 0;
            for (std::uint64_t k : candidates) {
                if (dyadic::window_equal(dyadic::shift(x, i + k), dyadic::shift(x, j),
                                         guard_digits)) {
                    h += 1;
                    matched = k;
                    break;
                }
            }
            // (X_j, X_i) in G iff T^{j+k} x == T^i x for some k in I;
            // impossible for i < j except as a window collision.
            for (std::uint64_t k : candidates) {
                if (dyadic::window_equal(dyadic::shift(x, j + k), dyadic::shift(x, i),
                                         guard_digits)) {
                    h += 1;
                    matched = k;
                    break;
                }
            }
            const int expected = lag_in_i[j - i] ? 1 : 0;
            if (h != expected) {
                Mismatch m;
                m.i = i;
                m.j = j;
                m.lag = matched;
                std::ostringstream os;
                os << "pair (" << i << "," << j << "): direct h = " << h << ", expected "
                   << expected << " (gap " << j - i << (lag_in_i[j - i] ? " in I" : " not in I")
                   << ", window " << guard_digits << " digits";
                if (matched != 0) os << ", fired at k = " << matched;
                os << ")";
                m.note = os.str();
                res.mismatches.push_back(std::move(m));
            }
            pair_sum += static_cast<std::uint64_t>(h);
        }
    }
    res.pair_sum = pair_sum;
    res.ok = res.mismatches.empty() && res.pair_sum == res.expected_sum;
    return res;
}

} // namespace ustatlab::oscillate
