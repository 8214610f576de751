#include "smoothprog/smooth_table.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/primes.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <thread>

namespace smoothprog {

namespace {

const char kMagic[5] = {'S', 'M', 'T', 'B', '1'};

uint64_t isqrt_u64(uint64_t n)
{
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

SmoothTable SmoothTable::build(uint64_t x_max, unsigned threads, uint64_t segment_len)
{
    if (x_max == 0) throw ConfigError("SmoothTable: x_max must be positive");
    if (x_max >= (uint64_t(1) << 32))
        throw CapacityError("SmoothTable: x_max must be below 2^32 (32-bit entries)");
    if (segment_len < 1024) segment_len = 1024;

    SmoothTable t;
    t.x_max_ = x_max;
    t.lpf_.assign(x_max + 1, 0);
    t.lpf_[0] = 0;
    t.lpf_[1] = 1;

    const std::vector<uint32_t> base = primes_up_to(isqrt_u64(x_max));

    const uint64_t first = 2;
    const uint64_t n_segments = x_max < first ? 0 : (x_max - first) / segment_len + 1;

    auto sieve_segment = [&](uint64_t seg) {
        const uint64_t lo = first + seg * segment_len;
        const uint64_t hi = std::min(lo + segment_len, x_max + 1);
        const uint64_t len = hi - lo;
        std::vector<uint32_t> rem(len);
        for (uint64_t i = 0; i < len; ++i) rem[i] = static_cast<uint32_t>(lo + i);
        for (uint32_t p : base) {
            uint64_t m = (lo + p - 1) / p * p;
            if (m < uint64_t(p) * 2) m = uint64_t(p) * 2;
            for (; m < hi; m += p) {
                const uint64_t i = m - lo;
                t.lpf_[m] = p;                     // ascending p: last write wins
                while (rem[i] % p == 0) rem[i] /= p;
            }
        }
        // leftover residual > 1 is a prime above sqrt(x_max), hence the lpf
        for (uint64_t i = 0; i < len; ++i)
            if (rem[i] > 1) t.lpf_[lo + i] = rem[i];
    };

    unsigned nthreads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = static_cast<unsigned>(std::min<uint64_t>(nthreads, std::max<uint64_t>(n_segments, 1)));
    if (nthreads <= 1 || n_segments <= 1) {
        for (uint64_t s = 0; s < n_segments; ++s) sieve_segment(s);
    } else {
        std::atomic<uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned k = 0; k < nthreads; ++k)
            pool.emplace_back([&] {
                for (uint64_t s; (s = next.fetch_add(1)) < n_segments;)
                    sieve_segment(s);
            });
        for (auto& th : pool) th.join();
    }
    return t;
}

uint32_t SmoothTable::lpf(uint64_t n) const
{
    if (n == 0 || n > x_max_)
        throw ConfigError("SmoothTable::lpf: n outside [1, x_max]");
    return lpf_[n];
}

uint64_t SmoothTable::count_limit(double x, double y) const
{
    if (!(x >= 0) || std::isnan(y))
        throw ConfigError("SmoothTable: x, y must be numbers with x >= 0");
    if (x > static_cast<double>(x_max_))
        throw ConfigError("SmoothTable: x exceeds table range");
    (void)y;
    return static_cast<uint64_t>(std::floor(x));
}

namespace {
// y-threshold as an integer cap so the inner loop compares uint32s
uint64_t y_cap(double y)
{
    if (y < 1) return 0;                           // nothing has P(n) < 1
    if (y >= 4294967296.0) return uint64_t(1) << 32;
    return static_cast<uint64_t>(std::floor(y));
}
} // namespace

int64_t SmoothTable::psi(double x, double y) const
{
    const uint64_t nmax = count_limit(x, y);
    const uint64_t cap = y_cap(y);
    int64_t c = 0;
    for (uint64_t n = 1; n <= nmax; ++n)
        if (lpf_[n] <= cap) ++c;
    return c;
}

int64_t SmoothTable::psi_coprime(double x, double y, uint64_t q) const
{
    if (q == 0) throw ConfigError("psi_coprime: q must be positive");
    const uint64_t nmax = count_limit(x, y);
    const uint64_t cap = y_cap(y);
    std::vector<char> ok(q);
    for (uint64_t r = 0; r < q; ++r) ok[r] = std::gcd(r, q) == 1;
    int64_t c = 0;
    for (uint64_t n = 1; n <= nmax; ++n)
        if (lpf_[n] <= cap && ok[n % q]) ++c;
    return c;
}

int64_t SmoothTable::psi_progression(double x, double y, uint64_t q, uint64_t a) const
{
    if (q == 0) throw ConfigError("psi_progression: q must be positive");
    const uint64_t nmax = count_limit(x, y);
    const uint64_t cap = y_cap(y);
    const uint64_t r0 = a % q;
    int64_t c = 0;
    for (uint64_t n = 1; n <= nmax; ++n)
        if (lpf_[n] <= cap && n % q == r0) ++c;
    return c;
}

std::vector<int64_t> SmoothTable::class_counts(double x, double y, uint64_t q) const
{
    if (q == 0) throw ConfigError("class_counts: q must be positive");
    const uint64_t nmax = count_limit(x, y);
    const uint64_t cap = y_cap(y);
    std::vector<int64_t> counts(q, 0);
    for (uint64_t n = 1; n <= nmax; ++n)
        if (lpf_[n] <= cap) ++counts[n % q];
    return counts;
}

void SmoothTable::dump(const std::string& path) const
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("SmoothTable::dump: cannot open " + path);
    f.write(kMagic, 5);
    unsigned char hdr[8];
    for (int i = 0; i < 8; ++i) hdr[i] = static_cast<unsigned char>(x_max_ >> (8 * i));
    f.write(reinterpret_cast<const char*>(hdr), 8);
    if constexpr (std::endian::native == std::endian::little) {
        f.write(reinterpret_cast<const char*>(lpf_.data() + 1),
                static_cast<std::streamsize>(4 * x_max_));
    } else {
        std::vector<unsigned char> buf(4 * 4096);
        uint64_t n = 1;
        while (n <= x_max_) {
            size_t k = 0;
            for (; k < 4096 && n <= x_max_; ++k, ++n) {
                const uint32_t v = lpf_[n];
                buf[4 * k] = static_cast<unsigned char>(v);
                buf[4 * k + 1] = static_cast<unsigned char>(v >> 8);
                buf[4 * k + 2] = static_cast<unsigned char>(v >> 16);
                buf[4 * k + 3] = static_cast<unsigned char>(v >> 24);
            }
            f.write(reinterpret_cast<const char*>(buf.data()),
                    static_cast<std::streamsize>(4 * k));
        }
    }
    if (!f) throw ConfigError("SmoothTable::dump: write failed for " + path);
}

SmoothTable SmoothTable::load(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("SmoothTable::load: cannot open " + path);
    char magic[5];
    f.read(magic, 5);
    if (!f || std::memcmp(magic, kMagic, 5) != 0)
        throw ConfigError("SmoothTable::load: bad magic, not a table file");
    unsigned char hdr[8];
    f.read(reinterpret_cast<char*>(hdr), 8);
    if (!f) throw ConfigError("SmoothTable::load: truncated header");
    uint64_t x_max = 0;
    for (int i = 0; i < 8; ++i) x_max |= uint64_t(hdr[i]) << (8 * i);
    if (x_max == 0 || x_max >= (uint64_t(1) << 32))
        throw ConfigError("SmoothTable::load: header x_max out of range");

    SmoothTable t;
    t.x_max_ = x_max;
    t.lpf_.assign(x_max + 1, 0);
    if constexpr (std::endian::native == std::endian::little) {
        f.read(reinterpret_cast<char*>(t.lpf_.data() + 1),
               static_cast<std::streamsize>(4 * x_max));
        if (f.gcount() != static_cast<std::streamsize>(4 * x_max))
            throw ConfigError("SmoothTable::load: truncated payload");
    } else {
        std::vector<unsigned char> buf(4 * 4096);
        uint64_t n = 1;
        while (n <= x_max) {
            const uint64_t want = std::min<uint64_t>(4096, x_max - n + 1);
            f.read(reinterpret_cast<char*>(buf.data()),
                   static_cast<std::streamsize>(4 * want));
            if (f.gcount() != static_cast<std::streamsize>(4 * want))
                throw ConfigError("SmoothTable::load: truncated payload");
            for (uint64_t k = 0; k < want; ++k, ++n)
                t.lpf_[n] = uint32_t(buf[4 * k]) | uint32_t(buf[4 * k + 1]) << 8 |
                            uint32_t(buf[4 * k + 2]) << 16 | uint32_t(buf[4 * k + 3]) << 24;
        }
    }
    return t;
}

} // namespace smoothprog
