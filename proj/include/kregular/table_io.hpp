#ifndef KREGULAR_TABLE_IO_HPP
#define KREGULAR_TABLE_IO_HPP

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kregular/series.hpp"

namespace kregular {
namespace table_io {

inline constexpr std::uint32_t kFormatVersion = 1;
inline constexpr char kMagic[4] = {'K', 'R', 'T', 'B'};

// Raised on header/content mismatch; message carries a header dump.
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename T>
void put(std::ostream& os, T v) {
    // little-endian on every supported target
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw IntegrityError("table cache: truncated read");
    return v;
}

inline void put_mpz(std::ostream& os, const series::BigInt& v) {
    int sgn = mpz_sgn(v.get_mpz_t());
    std::size_t count = 0;
    std::vector<std::uint8_t> bytes;
    if (sgn != 0) {
        bytes.resize((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
        mpz_export(bytes.data(), &count, -1 /* LSB first */, 1, 0, 0, v.get_mpz_t());
    }
    put<std::int8_t>(os, static_cast<std::int8_t>(sgn));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(count));
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(count));
}

inline series::BigInt get_mpz(std::istream& is) {
    auto sgn = get<std::int8_t>(is);
    auto count = get<std::uint32_t>(is);
    series::BigInt v = 0;
    if (count > 0) {
        std::vector<std::uint8_t> bytes(count);
        is.read(reinterpret_cast<char*>(bytes.data()), count);
        if (!is) throw IntegrityError("table cache: truncated magnitude");
        mpz_import(v.get_mpz_t(), count, -1, 1, 0, 0, bytes.data());
    }
    if (sgn < 0) v = -v;
    return v;
}

}  // namespace detail

inline void save_part_count_table(const series::PartCountTable& tab, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    os.write(kMagic, 4);
    detail::put<std::uint32_t>(os, kFormatVersion);
    detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(series::SeriesLabel::D));
    detail::put<std::int32_t>(os, tab.k);
    detail::put<std::int32_t>(os, tab.t);
    detail::put<std::int64_t>(os, tab.N);
    for (const auto& row : tab.counts)
        for (const auto& v : row) detail::put_mpz(os, v);
    for (const auto& v : tab.totals) detail::put_mpz(os, v);
    if (!os) throw std::runtime_error("write failed: " + path);
}

inline series::PartCountTable load_part_count_table(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for read: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw IntegrityError("table cache: bad magic in " + path);
    auto version = detail::get<std::uint32_t>(is);
    auto label = detail::get<std::uint32_t>(is);
    auto k = detail::get<std::int32_t>(is);
    auto t = detail::get<std::int32_t>(is);
    auto N = detail::get<std::int64_t>(is);
    if (version != kFormatVersion || label != static_cast<std::uint32_t>(series::SeriesLabel::D) ||
        k < 2 || t < 2 || N < 0) {
        std::ostringstream dump;
        dump << "table cache: bad header in " << path << " (version=" << version
             << " label=" << label << " k=" << k << " t=" << t << " N=" << N << ")";
        throw IntegrityError(dump.str());
    }
    series::PartCountTable tab;
    tab.k = k;
    tab.t = t;
    tab.N = N;
    tab.counts.assign(t, std::vector<series::BigInt>(N + 1));
    tab.totals.assign(N + 1, series::BigInt(0));
    for (auto& row : tab.counts)
        for (auto& v : row) v = detail::get_mpz(is);
    for (auto& v : tab.totals) v = detail::get_mpz(is);
    return tab;
}

// CSV rows (n, r, D) followed by (n, P_k); integers in full decimal.
inline void write_part_count_csv(const series::PartCountTable& tab, std::ostream& os) {
    os << "# kregular table csv v" << kFormatVersion << " k=" << tab.k << " t=" << tab.t
       << " N=" << tab.N << "\n";
    os << "n,r,D\n";
    for (long n = 0; n <= tab.N; ++n)
        for (int r = 1; r <= tab.t; ++r)
            os << n << ',' << r << ',' << tab.counts[r - 1][n].get_str() << "\n";
    os << "n,P_k\n";
    for (long n = 0; n <= tab.N; ++n) os << n << ',' << tab.totals[n].get_str() << "\n";
}

}  // namespace table_io
}  // namespace kregular

#endif
