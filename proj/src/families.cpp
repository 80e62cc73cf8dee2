#include "coverbound/families.hpp"

#include <algorithm>
#include <fstream>

#include "coverbound/classic.hpp"

namespace coverbound {

bool FieldTable::is_prime(long q) {
    if (q < 2) return false;
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

FieldTable FieldTable::prime_field(long q) {
    FieldTable f;
    f.q = q;
    f.mul.assign(static_cast<std::size_t>(q), std::vector<long>(static_cast<std::size_t>(q)));
    f.add = f.mul;
    for (long a = 0; a < q; ++a)
        for (long b = 0; b < q; ++b) {
            f.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = a * b % q;
            f.add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % q;
        }
    return f;
}

FieldTable FieldTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    FieldTable f;
    if (!(in >> f.q) || f.q < 2) throw std::runtime_error("bad field table header");
    auto read_grid = [&](std::vector<std::vector<long>>& grid) {
        grid.assign(static_cast<std::size_t>(f.q), std::vector<long>(static_cast<std::size_t>(f.q)));
        for (auto& row : grid)
            for (auto& x : row) {
                if (!(in >> x) || x < 0 || x >= f.q) throw std::runtime_error("bad field table entry");
            }
    };
    read_grid(f.mul);
    read_grid(f.add);
    for (long x = 0; x < f.q; ++x) {
        if (f.times(0, x) != 0 || f.times(1, x) != x || f.plus(0, x) != x)
            throw std::runtime_error("field table fails identity axioms");
    }
    return f;
}

namespace {

FieldTable resolve_field(long q, const FieldTable* field) {
    if (field) {
        if (field->q != q) throw std::runtime_error("field table is for a different q");
        return *field;
    }
    if (!FieldTable::is_prime(q)) throw std::runtime_error("field unavailable");
    return FieldTable::prime_field(q);
}

long ipow(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

Covering affine_flats(long q, long t, const FieldTable* field) {
    if (q < 2 || t < 1) throw std::invalid_argument("affine_flats: bad parameters");
    FieldTable f = resolve_field(q, field);
    const long n = ipow(q, t);

    // Point index -> coordinate vector, digit 0 least significant.
    auto coord = [&](long idx, long j) { return idx / ipow(q, j) % q; };

    Covering c;
    c.v = n;
    // One normal vector per scalar class: first nonzero coordinate equals 1.
    std::vector<long> a(static_cast<std::size_t>(t), 0);
    for (long code = 1; code < n; ++code) {
        for (long j = 0; j < t; ++j) a[static_cast<std::size_t>(j)] = code / ipow(q, j) % q;
        long lead = -1;
        for (long j = 0; j < t; ++j)
            if (a[static_cast<std::size_t>(j)] != 0) {
                lead = j;
                break;
            }
        if (a[static_cast<std::size_t>(lead)] != 1) continue;
        for (long cval = 0; cval < q; ++cval) {
            std::vector<int> block;
            block.reserve(static_cast<std::size_t>(n / q));
            for (long p = 0; p < n; ++p) {
                long dot = 0;
                for (long j = 0; j < t; ++j)
                    dot = f.plus(dot, f.times(a[static_cast<std::size_t>(j)], coord(p, j)));
                if (dot == cval) block.push_back(static_cast<int>(p));
            }
            c.blocks.push_back(std::move(block));
        }
    }
    return c;
}

Covering blowup(long q, long t, long m, long v, const FieldTable* field) {
    const long n = ipow(q, t);
    if (v > m * n || v < 1) throw std::invalid_argument("out of range");
    Covering base = affine_flats(q, t, field);
    Covering c;
    c.v = v;
    for (const auto& block : base.blocks) {
        std::vector<int> big;
        big.reserve(block.size() * static_cast<std::size_t>(m));
        for (int u : block)
            for (long j = 0; j < m; ++j) {
                long id = static_cast<long>(u) * m + j;
                if (id < v) big.push_back(static_cast<int>(id));
            }
        std::sort(big.begin(), big.end());
        c.blocks.push_back(std::move(big));
    }
    return c;
}

InfFamReport inffam_check(long m) {
    if (m < 6) throw std::invalid_argument("out of family range");
    InfFamReport rep;
    rep.m = m;
    rep.params = {m * m * (m - 2) + 4, m * (m - 1) + 2, 5, 1};

    BoundProvider provider = [](const Params& p) { return schonheim(p); };
    SpectralContext ctx = build_context(rep.params, 2, provider);
    rep.l2 = ctx.b_at(2);
    rep.l3 = ctx.b_at(3);
    rep.l4 = ctx.b_at(4);
    rep.a0 = ctx.a[0];
    rep.a1 = ctx.a[1];
    rep.a2 = ctx.a[2];
    rep.d = ctx.d;
    rep.schonheim_value = schonheim(rep.params);
    auto bound = theorem_main(ctx);
    if (!bound) throw std::logic_error("basic theorem inapplicable inside its family");
    rep.theorem_bound = *bound;
    rep.promised = rep.schonheim_value + m * (m - 4) - 10;
    rep.ok = rep.theorem_bound >= rep.promised;
    return rep;
}

Int exactlem2_ell(long v, long m, long q, long t, long i) {
    const long n = ipow(q, t);
    const bool hyp = q >= 2 && m >= 2 * q + 2 && t >= 2 && t < m * ipow(q, t - 1) &&
                     m * n - 2 * q + 3 <= v && v <= m * n && 0 <= i && i <= t - 1;
    if (!hyp) throw std::invalid_argument("closed form out of range");
    auto geom = [&](long e) {  // (q^e - 1)/(q - 1)
        return Int((Int(ipow(q, e)) - 1) / (q - 1));
    };
    if (i >= 2) return geom(t - i + 1);
    const bool upper_window = v >= m * n - q + 2;  // v in [mq^t - q + 2, mq^t]
    if (i == 1) return upper_window ? geom(t) : Int(q * geom(t - 1));
    return upper_window ? Int(q * geom(t)) : Int(q * q * geom(t - 1));
}

ExactTh2Report exactth2(long m, long q, long t, const FieldTable* field, bool check_witness) {
    if (!(q >= 2 && m >= 2 * q + 2 && t >= 2 && t < m * ipow(q, t - 1)))
        throw std::invalid_argument("family inapplicable");
    ExactTh2Report rep;
    const long k = m * ipow(q, t - 1);
    const long n = ipow(q, t);

    long z2 = m * (q - 1) * ipow(q, t - 1) / (n - 1) - 2 * q + 1;
    rep.z = std::min(q - 2, z2);
    rep.v_min = m * n - q + 1 - rep.z;
    rep.exact_value = Int(q) * (Int(n) - 1) / (q - 1);

    BoundProvider provider = [](const Params& p) { return schonheim(p); };
    SpectralContext ctx = build_context({rep.v_min, k, t, 1}, 1, provider);
    auto lower = theorem_main(ctx);
    if (!lower) throw std::logic_error("basic theorem inapplicable inside its family");
    rep.lower_bound = *lower;
    rep.lower_ok = rep.lower_bound >= rep.exact_value;

    if (check_witness) {
        Covering full = blowup(q, t, m, m * n, field);
        Covering trimmed = blowup(q, t, m, rep.v_min, field);
        rep.witness_blocks = full.blocks.size();
        rep.witness_ok = Int(full.blocks.size()) == rep.exact_value &&
                         Int(trimmed.blocks.size()) == rep.exact_value &&
                         is_covering(full, t, 1) && is_covering(trimmed, t, 1);
    }
    return rep;
}

}  // namespace coverbound
