#include "hwzak/io.hpp"

#include "hwzak/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hwzak {
namespace {

using nlohmann::json;

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out)
{
    std::ofstream out(path, mode);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path)
{
    out.flush();
    if (!out) throw IoError("write to " + path + " failed");
}

// Data rows of a CSV with the given header, each split into doubles.
std::vector<std::vector<double>> read_csv(const std::string& path, const std::string& header, std::size_t cols)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw IoError(path + ": expected header '" + header + "', got '" + line + "'");
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw IoError(path + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
            }
        }
        if (row.size() != cols)
            throw IoError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(cols) + " columns");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError(path + ": no data rows");
    return rows;
}

template <class T>
T get_field(const json& j, const char* key, const char* where)
{
    if (!j.is_object() || !j.contains(key)) throw IoError(std::string(where) + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw IoError(std::string(where) + ": field '" + key + "': " + e.what());
    }
}

void write_doubles_le(std::ofstream& out, const std::vector<double>& v)
{
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    } else {
        for (double d : v) {
            char b[sizeof(double)];
            std::memcpy(b, &d, sizeof d);
            std::reverse(b, b + sizeof d);
            out.write(b, sizeof b);
        }
    }
}

} // namespace

json complex_to_json(const CVec& v)
{
    json arr = json::array();
    for (const auto& c : v) arr.push_back({c.real(), c.imag()});
    return arr;
}

CVec complex_from_json(const json& j)
{
    if (!j.is_array()) throw IoError("complex array: expected a list of [re, im] pairs");
    CVec out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw IoError("complex array: every entry must be [re, im]");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

json signal_to_json(const Signal& s)
{
    return {{"grid", {{"N", s.grid.N()}, {"L", s.grid.L()}, {"dq", s.grid.dq()}}},
            {"values", complex_to_json(s.wavefunction())}};
}

Signal signal_from_json(const json& j)
{
    const json grid = get_field<json>(j, "grid", "signal");
    const auto N = get_field<std::size_t>(grid, "N", "signal.grid");
    const auto L = get_field<std::size_t>(grid, "L", "signal.grid");
    const auto dq = get_field<double>(grid, "dq", "signal.grid");
    const GridSpec g = GridSpec::from_spacing(N, L, dq);
    const CVec psi = complex_from_json(get_field<json>(j, "values", "signal"));
    if (psi.size() != N) throw IoError("signal: expected " + std::to_string(N) + " values, got " + std::to_string(psi.size()));
    return Signal::from_wavefunction(g, psi);
}

void write_json(const std::string& path, const json& j)
{
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_signal_json(const std::string& path, const Signal& s) { write_json(path, signal_to_json(s)); }
Signal read_signal_json(const std::string& path) { return signal_from_json(read_json(path)); }

void write_signal_csv(const std::string& path, const Signal& s)
{
    auto out = open_out(path);
    out << "index,q,re,im\n";
    for (std::size_t j = 0; j < s.grid.N(); ++j) {
        const cplx v = s.wavefunction(j);
        out << j << ',' << fmt(s.grid.q(j)) << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
    }
    finish(out, path);
}

Signal read_signal_csv(const std::string& path, std::size_t L)
{
    const auto rows = read_csv(path, "index,q,re,im", 4);
    const std::size_t N = rows.size();
    if (N < 2) throw IoError(path + ": need at least two samples");
    const double dq = rows[1][1] - rows[0][1];
    const GridSpec g = GridSpec::from_spacing(N, L, dq);
    CVec psi(N);
    for (std::size_t j = 0; j < N; ++j) {
        if (rows[j][0] != static_cast<double>(j)) throw IoError(path + ": indices must run 0..N-1 in order");
        if (std::abs(rows[j][1] - g.q(j)) > 1e-9 * g.Q())
            throw IoError(path + ": q column is not the centred grid (j - N/2) dq at row " + std::to_string(j));
        psi[j] = {rows[j][2], rows[j][3]};
    }
    return Signal::from_wavefunction(g, psi);
}

json zak_to_json(const ZakArray& z)
{
    return {{"convention", to_string(z.convention())},
            {"L", z.L()},
            {"M", z.M()},
            {"q0", z.grid().q0()},
            {"values", complex_to_json(z.values())}};
}

ZakArray zak_from_json(const json& j)
{
    const auto conv = get_field<std::string>(j, "convention", "zak");
    ZakConvention c;
    if (conv == "angular") c = ZakConvention::Angular;
    else if (conv == "round") c = ZakConvention::Round;
    else throw IoError("zak: convention must be 'angular' or 'round', got '" + conv + "'");
    const GridSpec g = GridSpec::from_cells(get_field<std::size_t>(j, "L", "zak"), get_field<std::size_t>(j, "M", "zak"),
                                            get_field<double>(j, "q0", "zak"));
    CVec v = complex_from_json(get_field<json>(j, "values", "zak"));
    if (v.size() != g.L() * g.M()) throw IoError("zak: expected L*M values");
    return ZakArray(g, c, std::move(v));
}

void write_zak_json(const std::string& path, const ZakArray& z) { write_json(path, zak_to_json(z)); }
ZakArray read_zak_json(const std::string& path) { return zak_from_json(read_json(path)); }

void write_samples_csv(const std::string& path, const SampleSet& s)
{
    auto out = open_out(path);
    out << "n,q,re,im\n";
    for (std::size_t i = 0; i < s.values.size(); ++i)
        out << s.n(i) << ',' << fmt(s.q(i)) << ',' << fmt(s.values[i].real()) << ',' << fmt(s.values[i].imag()) << '\n';
    finish(out, path);
}

SampleSet read_samples_csv(const std::string& path, const GridSpec& g)
{
    const auto rows = read_csv(path, "n,q,re,im", 4);
    if (rows.size() != g.M())
        throw IoError(path + ": expected " + std::to_string(g.M()) + " samples (one per cell), got " + std::to_string(rows.size()));
    const double offset = rows[0][1] - rows[0][0] * g.q0();
    const double steps = offset / g.dq();
    if (std::abs(steps - std::round(steps)) > 1e-9)
        throw NonCommensurateOffset(path + ": sample offset " + std::to_string(offset) + " is not on the grid");
    SampleSet s{g, std::round(steps) * g.dq(), static_cast<long long>(std::round(steps)), CVec(g.M())};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][0] != static_cast<double>(s.n(i))) throw IoError(path + ": n must run from -M/2 to M/2-1 in order");
        if (std::abs(rows[i][1] - s.q(i)) > 1e-9 * g.Q()) throw IoError(path + ": q column inconsistent with n q0 + offset");
        s.values[i] = {rows[i][2], rows[i][3]};
    }
    return s;
}

json gram_to_json(const GramReport& r, bool include_gram)
{
    json sv = json::array();
    for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) sv.push_back(r.singular_values(i));
    json out = {{"numerical_rank", r.numerical_rank},
                {"frame_bounds", {{"A", r.frame_lower}, {"B", r.frame_upper}}},
                {"condition", std::isfinite(r.condition) ? json(r.condition) : json("inf")},
                {"exploratory", r.exploratory},
                {"singular_values", sv}};
    if (include_gram) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < r.gram.rows(); ++i) {
            CVec row(static_cast<std::size_t>(r.gram.cols()));
            for (Eigen::Index k = 0; k < r.gram.cols(); ++k) row[static_cast<std::size_t>(k)] = r.gram(i, k);
            rows.push_back(complex_to_json(row));
        }
        out["gram"] = rows;
    }
    return out;
}

void write_singular_values_csv(const std::string& path, const GramReport& r)
{
    auto out = open_out(path);
    out << "index,sigma\n";
    for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) out << i << ',' << fmt(r.singular_values(i)) << '\n';
    finish(out, path);
}

void write_wigner_csv(const std::string& path, const WignerArray& w)
{
    auto out = open_out(path);
    for (std::size_t a = 0; a < w.size(); ++a) {
        for (std::size_t b = 0; b < w.size(); ++b) {
            if (b) out << ',';
            out << fmt(w.at(a, b));
        }
        out << '\n';
    }
    finish(out, path);
}

void write_wigner_binary(const std::string& stem, const WignerArray& w)
{
    const std::string bin = stem + ".bin";
    auto out = open_out(bin, std::ios::out | std::ios::binary);
    write_doubles_le(out, w.values);
    finish(out, bin);
    write_json(stem + ".json", {{"N", w.grid.N()},
                                {"L", w.grid.L()},
                                {"dq", w.grid.dq()},
                                {"dp", w.grid.dp()},
                                {"shape", {w.size(), w.size()}},
                                {"dtype", "float64-le"},
                                {"axes", "row a: q = (a - N) dq / 2; column b: p = (b - N) dp / 2"}});
}

WignerArray read_wigner_binary(const std::string& stem)
{
    const json meta = read_json(stem + ".json");
    const GridSpec g = GridSpec::from_spacing(get_field<std::size_t>(meta, "N", "wigner"),
                                              get_field<std::size_t>(meta, "L", "wigner"),
                                              get_field<double>(meta, "dq", "wigner"));
    WignerArray w{g, std::vector<double>(4 * g.N() * g.N()), 0.0};
    std::ifstream in(stem + ".bin", std::ios::binary);
    if (!in) throw IoError("cannot open " + stem + ".bin");
    in.read(reinterpret_cast<char*>(w.values.data()), static_cast<std::streamsize>(w.values.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(w.values.size() * sizeof(double)))
        throw IoError(stem + ".bin: truncated");
    if constexpr (std::endian::native != std::endian::little) {
        for (double& d : w.values) {
            char b[sizeof(double)];
            std::memcpy(b, &d, sizeof d);
            std::reverse(b, b + sizeof d);
            std::memcpy(&d, b, sizeof d);
        }
    }
    return w;
}

} // namespace hwzak
