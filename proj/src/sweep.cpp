#include "ffmoments/sweep.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ffmoments/parallel.hpp"

namespace ffm {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument("cache: bad integer '" + s + "'");
    return v;
}

template <class T, class Fmt>
void put_list(std::ostream& os, const std::vector<T>& v, Fmt fmt) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ';';
        os << fmt(v[i]);
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, p);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument("cache: bad float '" + s + "'");
    return v;
}

LPolynomial SweepRecord::lpoly(const FieldCtx& field) const {
    return LPolynomial(Discriminant::trusted(PolyFq(field, d)), a);
}

void SweepCache::validate() const {
    if (header.version != kCacheVersion) throw std::invalid_argument("cache: unsupported version");
    if (records.size() != header.count)
        throw std::invalid_argument("cache: header count " + std::to_string(header.count) +
                                    " but " + std::to_string(records.size()) + " rows");
    const std::size_t deg = 2 * static_cast<std::size_t>(header.g) + 1;
    const FieldCtx F(header.q);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.d.size() != deg + 1 || r.d.back() != 1 || r.a.size() != deg || r.angles.size() != deg - 1)
            throw std::invalid_argument("cache: row " + std::to_string(i) + " does not match q, g");
        for (Residue c : r.d)
            if (c >= header.q) throw std::invalid_argument("cache: coefficient out of range");
        if (header.mode == SampleMode::Exhaustive && i > 0 &&
            !(PolyFq(F, records[i - 1].d) < PolyFq(F, r.d)))
            throw std::invalid_argument("cache: exhaustive rows out of canonical order");
    }
}

SweepRecord sweep_record(const Discriminant& D, std::uint64_t index, const PointCounter& pc) {
    SweepRecord r;
    r.index = index;
    const auto c = D.poly().coeffs();
    r.d.assign(c.begin(), c.end());
    const LPolynomial L = lpoly_pointcount(D, pc);
    r.a = L.coeffs();
    r.central = central_value(L).value();
    r.angles = zeros(L).angles;
    return r;
}

SweepCache run_sweep(const SweepConfig& cfg) {
    const FieldCtx F(cfg.q);
    const EnsembleParams p(F, cfg.g);
    Sample s;
    if (cfg.sample.mode == SampleMode::Exhaustive) {
        s.items = enumerate(p, cfg.budget);
        if (cfg.sample.count != 0 && cfg.sample.count != s.items.size())
            throw std::invalid_argument("sweep: exhaustive count mismatch");
    } else {
        s = sample(p, cfg.sample);
    }
    const PointCounter pc(F, cfg.g);

    SweepCache out;
    out.header = SweepHeader{kCacheVersion, cfg.q, cfg.g, cfg.sample.mode, cfg.sample.seed, s.items.size()};
    out.records.resize(s.items.size());
    parallel_for(s.items.size(), cfg.threads, [&](std::size_t i) {
        out.records[i] = sweep_record(s.items[i], i, pc);
        if (cfg.cross_check && lpoly_charsum(s.items[i], cfg.budget).coeffs() != out.records[i].a)
            throw CrossCheckFailure("cross-check: character-sum and point-count L-polynomials differ for D = " +
                                    s.items[i].poly().to_string());
    });
    return out;
}

void write_cache(const SweepCache& c, std::ostream& os) {
    const auto& h = c.header;
    os << "# ffmoments-cache v" << h.version << "; q=" << h.q << "; g=" << h.g
       << "; mode=" << to_string(h.mode) << "; seed=" << h.seed << "; count=" << h.count << '\n';
    os << "index,D,A,central,angles\n";
    for (const auto& r : c.records) {
        os << r.index << ',';
        put_list(os, r.d, [](Residue v) { return std::to_string(v); });
        os << ',';
        put_list(os, r.a, [](const BigInt& v) { return v.str(); });
        os << ',' << format_double(r.central) << ',';
        put_list(os, r.angles, format_double);
        os << '\n';
    }
    if (!os) throw std::runtime_error("cache: write failed");
}

SweepCache read_cache(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ffmoments-cache v", 0) != 0)
        throw std::invalid_argument("cache: missing header line");
    SweepCache c;
    auto fields = split(line.substr(2), ';');
    if (fields.size() != 6) throw std::invalid_argument("cache: malformed header");
    c.header.version = static_cast<int>(parse_u64(fields[0].substr(std::string("ffmoments-cache v").size())));
    auto value = [&](std::size_t i, const char* key) {
        std::string f = fields[i];
        if (!f.empty() && f[0] == ' ') f.erase(0, 1);
        const std::string k = std::string(key) + "=";
        if (f.rfind(k, 0) != 0) throw std::invalid_argument(std::string("cache: expected ") + key);
        return f.substr(k.size());
    };
    c.header.q = static_cast<std::uint32_t>(parse_u64(value(1, "q")));
    c.header.g = static_cast<int>(parse_u64(value(2, "g")));
    c.header.mode = parse_sample_mode(value(3, "mode"));
    c.header.seed = parse_u64(value(4, "seed"));
    c.header.count = parse_u64(value(5, "count"));
    if (!std::getline(is, line) || line != "index,D,A,central,angles")
        throw std::invalid_argument("cache: missing column line");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto cols = split(line, ',');
        if (cols.size() != 5) throw std::invalid_argument("cache: row has " + std::to_string(cols.size()) + " columns");
        SweepRecord r;
        r.index = parse_u64(cols[0]);
        for (const auto& s : split(cols[1], ';')) r.d.push_back(static_cast<Residue>(parse_u64(s)));
        for (const auto& s : split(cols[2], ';')) r.a.emplace_back(s);
        r.central = parse_double(cols[3]);
        for (const auto& s : split(cols[4], ';')) r.angles.push_back(parse_double(s));
        c.records.push_back(std::move(r));
    }
    c.validate();
    return c;
}

void write_cache_file(const SweepCache& c, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cache: cannot open '" + path + "' for writing");
    write_cache(c, os);
}

SweepCache read_cache_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cache: cannot open '" + path + "'");
    return read_cache(is);
}

}  // namespace ffm
