#include "zlrr/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "zlrr/error.hpp"
#include "zlrr/parallel.hpp"

namespace zlrr {

unsigned ForbiddenPattern::window_value() const {
    unsigned v = 0;
    for (std::size_t j = 1; j < bits.size(); ++j)
        v |= static_cast<unsigned>(bits[j]) << (j - 1);
    return v;
}

ForbiddenPattern parse_pattern(const std::string& digits) {
    if (digits.empty()) fail(ErrorCode::WrongSpecShape, "pattern must not be empty");
    ForbiddenPattern p;
    p.bits.clear();
    for (char c : digits) {
        if (c != '0' && c != '1')
            fail(ErrorCode::WrongSpecShape, "pattern digits must be 0 or 1, got '" +
                                                std::string(1, c) + "'");
        p.bits.push_back(c - '0');
    }
    return p;
}

bool is_legal(const CoefficientString& s, const ForbiddenPattern& p) {
    const std::size_t len = p.length();
    if (s.bits.size() < len) return true;
    for (std::size_t i = 0; i + len <= s.bits.size(); ++i) {
        bool match = true;
        for (std::size_t j = 0; j < len; ++j)
            if (s.bits[i + j] != p.bits[j]) {
                match = false;
                break;
            }
        if (match) return false;
    }
    return true;
}

namespace {

/// Pattern head p_0..p_{len-2} packed oldest bit most significant, i.e. the
/// state a left-to-right scan is in just before the pattern could complete.
unsigned pattern_state(const ForbiddenPattern& p) {
    unsigned s = 0;
    for (std::size_t j = 0; j + 1 < p.length(); ++j)
        s = (s << 1) | static_cast<unsigned>(p.bits[j]);
    return s;
}

}  // namespace

Int count_legal_strings(std::size_t L, const ForbiddenPattern& p) {
    const std::size_t len = p.length();
    if (L + 1 <= len) return Int(1) << L;
    const std::size_t state_bits = len - 1;
    const unsigned n_states = 1u << state_bits;
    const unsigned mask = n_states - 1;
    const unsigned p_state = pattern_state(p);
    const unsigned p_last = static_cast<unsigned>(p.bits.back());

    std::vector<Int> ways(n_states, Int(1));
    for (std::size_t step = state_bits; step < L; ++step) {
        std::vector<Int> next(n_states, Int(0));
        for (unsigned u = 0; u < n_states; ++u) {
            if (ways[u] == 0) continue;
            for (unsigned b = 0; b <= 1; ++b) {
                if (u == p_state && b == p_last) continue;
                next[((u << 1) | b) & mask] += ways[u];
            }
        }
        ways.swap(next);
    }
    Int total = 0;
    for (const Int& w : ways) total += w;
    return total;
}

std::vector<Int> TransferMatrix::row_sums() const {
    std::vector<Int> sums(n, Int(0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) sums[r] += entries[r][c];
    return sums;
}

bool TransferMatrix::operator==(const TransferMatrix& other) const {
    return n == other.n && entries == other.entries;
}

TransferMatrix build_transfer_matrix(const ForbiddenPattern& p) {
    if (p.length() < 2)
        fail(ErrorCode::WrongSpecShape, "transfer matrix needs a pattern of length >= 2");
    const unsigned n = 1u << (p.length() - 1);
    const unsigned mask = n - 1;
    const unsigned p_state = pattern_state(p);
    const unsigned p_last = static_cast<unsigned>(p.bits.back());
    TransferMatrix T;
    T.n = n;
    T.entries.assign(n, std::vector<Int>(n, Int(0)));
    for (unsigned u = 0; u < n; ++u)
        for (unsigned b = 0; b <= 1; ++b) {
            if (u == p_state && b == p_last) continue;
            T.entries[u][((u << 1) | b) & mask] = 1;
        }
    return T;
}

TransferMatrix paper_matrix() {
    const int rows[8][8] = {
        {1, 1, 0, 0, 0, 0, 0, 0},
        {0, 0, 1, 1, 0, 0, 0, 0},
        {0, 0, 0, 0, 1, 1, 0, 0},
        {0, 0, 0, 0, 0, 0, 1, 1},
        {1, 1, 0, 0, 0, 0, 0, 0},
        {0, 0, 1, 1, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 1, 0, 1},
        {0, 0, 0, 0, 0, 0, 1, 1},
    };
    TransferMatrix T;
    T.n = 8;
    T.entries.assign(8, std::vector<Int>(8, Int(0)));
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) T.entries[r][c] = rows[r][c];
    return T;
}

IntPolynomial char_poly_exact(const TransferMatrix& T) {
    const std::size_t n = T.n;
    const auto& A = T.entries;
    // Samuelson-Berkowitz: grow one principal minor at a time, multiplying the
    // coefficient vector by a lower-triangular Toeplitz matrix built from
    // A[i][i] and the moments R A_sub^k S of the new row and column.
    std::vector<Int> coeff{Int(1)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> v(i + 2, Int(0));
        v[0] = 1;
        v[1] = -A[i][i];
        if (i > 0) {
            std::vector<Int> w(i);
            for (std::size_t r = 0; r < i; ++r) w[r] = A[r][i];
            for (std::size_t k = 2; k <= i + 1; ++k) {
                Int q = 0;
                for (std::size_t r = 0; r < i; ++r) q += A[i][r] * w[r];
                v[k] = -q;
                if (k == i + 1) break;
                std::vector<Int> nw(i, Int(0));
                for (std::size_t r = 0; r < i; ++r)
                    for (std::size_t t = 0; t < i; ++t) nw[r] += A[r][t] * w[t];
                w.swap(nw);
            }
        }
        std::vector<Int> next(i + 2, Int(0));
        for (std::size_t r = 0; r < i + 2; ++r)
            for (std::size_t j = 0; j <= r && j < coeff.size(); ++j) next[r] += v[r - j] * coeff[j];
        coeff.swap(next);
    }
    IntPolynomial p;
    p.coefficients.assign(coeff.rbegin(), coeff.rend());
    return p;
}

namespace {

Int det_masked(const std::vector<std::vector<Int>>& M, std::size_t row, unsigned col_mask) {
    if (col_mask == 0) return 1;
    Int acc = 0;
    int pos = 0;
    for (std::size_t col = 0; col < M.size(); ++col) {
        if (!(col_mask & (1u << col))) continue;
        if (M[row][col] != 0) {
            Int sub = det_masked(M, row + 1, col_mask & ~(1u << col));
            if (pos % 2)
                acc -= M[row][col] * sub;
            else
                acc += M[row][col] * sub;
        }
        ++pos;
    }
    return acc;
}

}  // namespace

Int char_poly_at(const TransferMatrix& T, const Int& x) {
    std::vector<std::vector<Int>> M(T.n, std::vector<Int>(T.n));
    for (std::size_t r = 0; r < T.n; ++r)
        for (std::size_t c = 0; c < T.n; ++c) M[r][c] = (r == c ? x : Int(0)) - T.entries[r][c];
    return det_masked(M, 0, (1u << T.n) - 1);
}

double perron_eigenvalue(const TransferMatrix& T, double tol) {
    const std::size_t n = T.n;
    std::vector<std::vector<double>> A(n, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            if (T.entries[r][c] < 0)
                fail(ErrorCode::WrongSpecShape, "power iteration needs a non-negative matrix");
            A[r][c] = T.entries[r][c].get_d();
        }
    // Iterate on T + I so periodic transition structures still converge; the
    // shift moves every eigenvalue by exactly 1 and keeps the dominant one
    // dominant for non-negative T.
    std::vector<double> v(n, 1.0 / static_cast<double>(n)), w(n);
    double prev = 0.0;
    int stable = 0;
    for (int iter = 0; iter < 200000; ++iter) {
        double vv = 0.0, vw = 0.0, norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            double acc = v[r];
            for (std::size_t c = 0; c < n; ++c) acc += A[r][c] * v[c];
            w[r] = acc;
            vv += v[r] * v[r];
            vw += v[r] * acc;
            norm += acc * acc;
        }
        double rq = vw / vv;
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < n; ++r) v[r] = w[r] / norm;
        if (std::fabs(rq - prev) <= tol * std::max(1.0, std::fabs(rq))) {
            if (++stable >= 3) return rq - 1.0;
        } else {
            stable = 0;
        }
        prev = rq;
    }
    fail(ErrorCode::NoConvergence, "Rayleigh quotient did not settle");
}

namespace {

template <class V>
struct SubsetCounter {
    const std::vector<V>& terms;
    const std::vector<V>& suffix;
    long real_check_from = 0;
    unsigned p_first = 0, pval = 0, mask = 0;

    std::uint64_t count(long i, V rem, unsigned w) const {
        while (true) {
            if (rem == 0) return tail_legal(i, w) ? 1 : 0;
            if (i < 0) return 0;
            std::size_t ui = static_cast<std::size_t>(i);
            if (suffix[ui] < rem) return 0;
            bool check = i <= real_check_from;
            bool can_take = terms[ui] <= rem && !(check && p_first == 1 && w == pval);
            bool can_skip = !(check && p_first == 0 && w == pval);
            unsigned w1 = ((w << 1) | 1u) & mask;
            unsigned w0 = (w << 1) & mask;
            if (can_take && can_skip) {
                std::uint64_t taken = count(i - 1, rem - terms[ui], w1);
                return taken + count(i - 1, rem, w0);
            }
            if (can_take) {
                rem -= terms[ui];
                w = w1;
                --i;
                continue;
            }
            if (can_skip) {
                w = w0;
                --i;
                continue;
            }
            return 0;
        }
    }

    /// Whether filling indices i..0 with zeros keeps the string legal.
    bool tail_legal(long i, unsigned w) const {
        if (p_first == 1) return true;
        for (long t = i; t >= 0; --t) {
            if (t <= real_check_from && w == pval) return false;
            w = (w << 1) & mask;
        }
        return true;
    }
};

template <class V>
Int run_subset_count(const std::vector<V>& terms, const V& target, const ForbiddenPattern& p,
                     std::size_t index_cap) {
    std::vector<V> suffix(index_cap + 1);
    V acc{};
    for (std::size_t i = 0; i <= index_cap; ++i) {
        acc += terms[i];
        suffix[i] = acc;
    }
    SubsetCounter<V> counter{terms, suffix};
    counter.real_check_from = static_cast<long>(index_cap) - static_cast<long>(p.length()) + 1;
    counter.p_first = p.first_bit();
    counter.pval = p.window_value();
    counter.mask = p.length() >= 2 ? (1u << (p.length() - 1)) - 1 : 0u;

    long top = static_cast<long>(index_cap);
    if (target == 0) return counter.tail_legal(top, 0) ? 1 : 0;

    bool top_checked = top <= counter.real_check_from;
    if (!top_checked && worker_count() >= 2 && !in_sharded_region() && index_cap >= 30 &&
        terms[index_cap] <= target) {
        std::uint64_t taken = 0;
        unsigned w1 = 1u & counter.mask;
        std::thread t([&] { taken = counter.count(top - 1, target - terms[index_cap], w1); });
        std::uint64_t skipped = counter.count(top - 1, target, 0u);
        t.join();
        return Int(static_cast<unsigned long>(taken)) + static_cast<unsigned long>(skipped);
    }
    return static_cast<unsigned long>(counter.count(top, target, 0u));
}

}  // namespace

Int count_decompositions(const SequenceTable& table, const Int& N, const ForbiddenPattern& p,
                         std::size_t index_cap) {
    if (index_cap > kIndexCapLimit)
        fail(ErrorCode::BudgetExceeded, "index cap " + std::to_string(index_cap) +
                                            " exceeds the search budget " +
                                            std::to_string(kIndexCapLimit));
    if (index_cap > table.max_index())
        fail(ErrorCode::TableTooSmall, "need terms through the index cap");
    if (N < 0) return 0;

    bool fits = fits_u64(N);
    Int total = 0;
    for (std::size_t i = 0; i <= index_cap && fits; ++i) {
        total += table.terms[i];
        if (!fits_u64(total)) fits = false;
    }
    if (fits) {
        std::vector<std::uint64_t> terms(index_cap + 1);
        for (std::size_t i = 0; i <= index_cap; ++i) terms[i] = to_u64(table.terms[i]);
        return run_subset_count<std::uint64_t>(terms, to_u64(N), p, index_cap);
    }
    std::vector<Int> terms(table.terms.begin(), table.terms.begin() + index_cap + 1);
    return run_subset_count<Int>(terms, N, p, index_cap);
}

DecompositionCountReport total_decompositions(const SequenceTable& table, std::size_t L,
                                              const ForbiddenPattern& p) {
    if (L < 1) fail(ErrorCode::WrongSpecShape, "string length must be at least 1");
    if (L > table.max_index()) fail(ErrorCode::TableTooSmall, "need terms through Z_L");

    DecompositionCountReport report;
    report.L = L;
    report.D_strings = count_legal_strings(L, p);
    constexpr std::uint64_t kStringBudget = 100'000'000;
    if (report.D_strings > kStringBudget)
        fail(ErrorCode::BudgetExceeded, "too many legal strings to enumerate");

    const unsigned plen = static_cast<unsigned>(p.length());
    const unsigned mask = plen >= 2 ? (1u << (plen - 1)) - 1 : 0u;
    const unsigned p_state = pattern_state(p);
    const unsigned p_last = static_cast<unsigned>(p.bits.back());

    Int total = 0;
    for (std::size_t i = 0; i < L; ++i) total += table.terms[i];
    const std::uint64_t kDenseLimit = 10'000'000;

    if (fits_u64(total) && to_u64(total) < kDenseLimit) {
        std::vector<std::uint64_t> tvals(L);
        for (std::size_t i = 0; i < L; ++i) tvals[i] = to_u64(table.terms[i]);
        std::vector<std::uint64_t> hist(to_u64(total) + 1, 0);
        std::function<void(std::size_t, unsigned, std::uint64_t)> walk =
            [&](std::size_t t, unsigned state, std::uint64_t val) {
                if (t == L) {
                    ++hist[val];
                    return;
                }
                for (unsigned b = 0; b <= 1; ++b) {
                    if (t + 1 >= plen && state == p_state && b == p_last) continue;
                    unsigned ns = plen >= 2 ? ((state << 1) | b) & mask : 0u;
                    walk(t + 1, ns, b ? val + tvals[t] : val);
                }
            };
        walk(0, 0, 0);
        for (std::uint64_t val = 0; val < hist.size(); ++val)
            if (hist[val])
                report.value_histogram[Int(static_cast<unsigned long>(val))] =
                    Int(static_cast<unsigned long>(hist[val]));
    } else {
        std::function<void(std::size_t, unsigned, Int)> walk = [&](std::size_t t, unsigned state,
                                                                   Int val) {
            if (t == L) {
                ++report.value_histogram[val];
                return;
            }
            for (unsigned b = 0; b <= 1; ++b) {
                if (t + 1 >= plen && state == p_state && b == p_last) continue;
                unsigned ns = plen >= 2 ? ((state << 1) | b) & mask : 0u;
                walk(t + 1, ns, b ? val + table.terms[t] : val);
            }
        };
        walk(0, 0, Int(0));
    }

    const Int& zl = table.terms[L];
    for (const auto& [val, c] : report.value_histogram) {
        if (val >= zl) continue;
        report.D_sum_d += c;
        report.second_moment += c * c;
    }
    report.average_d = Rat(report.D_sum_d, zl);
    report.average_d.canonicalize();

    Int prev = count_legal_strings(1, p);
    for (std::size_t l = 2; l <= L; ++l) {
        Int cur = count_legal_strings(l, p);
        report.growth_ratio_series.push_back(cur.get_d() / prev.get_d());
        prev = cur;
    }
    return report;
}

}  // namespace zlrr
