#include "picardkit/cocycle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace picardkit {

namespace {

std::size_t pow_size(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && out > (std::size_t(1) << 62) / base)
            return std::size_t(-1);  // saturate
        out *= base;
    }
    return out;
}

// Index arithmetic shared by the exhaustive checks.
struct Ctx {
    GroupTables gt, mt;
    std::size_t n;

    Ctx(const FgAbGroup& g, const FgAbGroup& m) : gt(g), mt(m), n(gt.size()) {}

    std::size_t i2(std::size_t x, std::size_t y) const { return x * n + y; }
    std::size_t i3(std::size_t x, std::size_t y, std::size_t z) const {
        return (x * n + y) * n + z;
    }
};

std::string pack_values(const std::vector<int>& v) {
    std::string s(v.size(), '\0');
    for (std::size_t i = 0; i < v.size(); ++i) s[i] = static_cast<char>(v[i]);
    return s;
}

}  // namespace

Table Table::zeros(FgAbGroup g, FgAbGroup m, int arity) {
    Table t;
    t.arity = arity;
    std::size_t n = g.order_index();
    t.values.assign(pow_size(n, arity), 0);
    t.g = std::move(g);
    t.m = std::move(m);
    return t;
}

Table Table::make(FgAbGroup g, FgAbGroup m, int arity, std::vector<int> values) {
    Table t = zeros(g, m, arity);
    if (values.size() != t.values.size())
        fail(ErrorCode::LengthMismatch, "table has " + std::to_string(values.size()) +
                                            " values, expected " + std::to_string(t.values.size()));
    std::size_t mm = m.order_index();
    for (int v : values)
        if (v < 0 || static_cast<std::size_t>(v) >= mm)
            fail(ErrorCode::Mismatch, "table value index out of range");
    t.values = std::move(values);
    return t;
}

std::size_t Table::side() const { return g.order_index(); }

GroupElement Table::at(const std::vector<GroupElement>& key) const {
    if (key.size() != static_cast<std::size_t>(arity))
        fail(ErrorCode::LengthMismatch, "table key arity mismatch");
    std::size_t idx = 0, n = side();
    for (const auto& k : key) idx = idx * n + g.index_of(k);
    return m.element_at(values[idx]);
}

bool Table::is_zero() const {
    for (int v : values)
        if (v != 0) return false;
    return true;
}

Table table_sub(const Table& a, const Table& b) {
    if (a.g != b.g || a.m != b.m || a.arity != b.arity || a.values.size() != b.values.size())
        fail(ErrorCode::Mismatch, "table shapes differ");
    GroupTables mt(a.m);
    Table out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = mt.sub(a.values[i], b.values[i]);
    return out;
}

Cochain2 Cochain2::make(Table table) {
    if (table.arity != 2) fail(ErrorCode::Mismatch, "2-cochain needs an arity-2 table");
    std::size_t n = table.side();
    for (std::size_t x = 0; x < n; ++x)
        if (table.values[x * n] != 0 || table.values[x] != 0)
            fail(ErrorCode::NotNormalized, "2-cochain must vanish when either argument is 0");
    Cochain2 k;
    k.table_ = std::move(table);
    return k;
}

SymCocycle3 SymCocycle3::dense(Table h, Table c) {
    if (h.arity != 3 || c.arity != 2) fail(ErrorCode::Mismatch, "cocycle tables need arity 3 and 2");
    if (h.g != c.g || h.m != c.m) fail(ErrorCode::Mismatch, "cocycle tables over different groups");
    SymCocycle3 s;
    s.g_ = h.g;
    s.m_ = h.m;
    s.closed_ = false;
    s.h_ = std::move(h);
    s.c_ = std::move(c);
    return s;
}

SymCocycle3 SymCocycle3::zero(const FgAbGroup& g, const FgAbGroup& m) {
    return dense(Table::zeros(g, m, 3), Table::zeros(g, m, 2));
}

SymCocycle3 SymCocycle3::rho_closed(FgAbGroup g, FgAbGroup m, std::vector<GroupElement> diag) {
    if (diag.size() != g.rank())
        fail(ErrorCode::LengthMismatch, "one diagonal value per group factor required");
    for (const auto& a : diag)
        if (a.group() != m) fail(ErrorCode::Mismatch, "diagonal value not in the coefficient group");
    SymCocycle3 s;
    s.g_ = std::move(g);
    s.m_ = std::move(m);
    s.closed_ = true;
    s.diag_ = std::move(diag);
    return s;
}

GroupElement SymCocycle3::h(const GroupElement& x, const GroupElement& y,
                            const GroupElement& z) const {
    if (closed_) return m_.zero();
    return h_.at({x, y, z});
}

GroupElement SymCocycle3::c(const GroupElement& x, const GroupElement& y) const {
    if (!closed_) return c_.at({x, y});
    GroupElement out = m_.zero();
    for (std::size_t i = 0; i < g_.rank(); ++i)
        out = out + diag_[i].times(x.coords()[i] * y.coords()[i]);
    return out;
}

GroupElement SymCocycle3::q(const GroupElement& x) const { return c(x, x); }

const Table& SymCocycle3::h_table() const {
    if (closed_) fail(ErrorCode::Internal, "closed-form cocycle has no dense h table");
    return h_;
}

const Table& SymCocycle3::c_table() const {
    if (closed_) fail(ErrorCode::Internal, "closed-form cocycle has no dense c table");
    return c_;
}

const std::vector<GroupElement>& SymCocycle3::rho_diagonal() const {
    if (!closed_) fail(ErrorCode::Internal, "dense cocycle has no closed-form diagonal");
    return diag_;
}

bool SymCocycle3::is_permutative() const { return closed_ ? true : h_.is_zero(); }

SymCocycle3 SymCocycle3::densified() const {
    if (!closed_) return *this;
    Table h = Table::zeros(g_, m_, 3);
    Table c = Table::zeros(g_, m_, 2);
    auto elems = g_.elements();
    std::size_t n = elems.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            c.values[x * n + y] = static_cast<int>(m_.index_of(this->c(elems[x], elems[y])));
    return dense(std::move(h), std::move(c));
}

bool SymCocycle3::operator==(const SymCocycle3& other) const {
    if (g_ != other.g_ || m_ != other.m_ || closed_ != other.closed_) return false;
    if (closed_) return diag_ == other.diag_;
    return h_ == other.h_ && c_ == other.c_;
}

namespace {

void check_axioms(const std::vector<int>& h, const std::vector<int>& c, const Ctx& ctx,
                  ValidationReport* report, bool* valid) {
    const std::size_t n = ctx.n;
    auto note = [&](const std::string& axiom, std::vector<GroupElement> at, int lhs, int rhs) {
        *valid = false;
        if (!report) return;
        std::ostringstream os;
        os << "lhs " << ctx.mt.elem(lhs).describe() << " != rhs " << ctx.mt.elem(rhs).describe();
        report->violations.push_back({axiom, std::move(at), os.str()});
    };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            int v = h[ctx.i3(x, 0, z)];
            if (v != 0) {
                note("normalization", {ctx.gt.elem(x), ctx.gt.elem(0), ctx.gt.elem(z)}, v, 0);
                if (!report) return;
            }
        }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                const int xy = ctx.gt.add(x, y);
                const int ux = ctx.gt.add(u, x);
                for (std::size_t z = 0; z < n; ++z) {
                    int lhs = ctx.mt.add(h[ctx.i3(x, y, z)],
                                         ctx.mt.add(h[ctx.i3(u, xy, z)], h[ctx.i3(u, x, y)]));
                    int rhs = ctx.mt.add(h[ctx.i3(u, x, ctx.gt.add(y, z))], h[ctx.i3(ux, y, z)]);
                    if (lhs != rhs) {
                        note("cocycle",
                             {ctx.gt.elem(u), ctx.gt.elem(x), ctx.gt.elem(y), ctx.gt.elem(z)}, lhs,
                             rhs);
                        if (!report) return;
                    }
                }
            }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                int lhs = ctx.mt.add(h[ctx.i3(y, z, x)],
                                     ctx.mt.add(c[ctx.i2(x, ctx.gt.add(y, z))], h[ctx.i3(x, y, z)]));
                int rhs = ctx.mt.add(c[ctx.i2(x, z)],
                                     ctx.mt.add(h[ctx.i3(y, x, z)], c[ctx.i2(x, y)]));
                if (lhs != rhs) {
                    note("symmetry-compatibility", {ctx.gt.elem(x), ctx.gt.elem(y), ctx.gt.elem(z)},
                         lhs, rhs);
                    if (!report) return;
                }
            }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            int lhs = c[ctx.i2(x, y)];
            int rhs = ctx.mt.neg(c[ctx.i2(y, x)]);
            if (lhs != rhs) {
                note("antisymmetry", {ctx.gt.elem(x), ctx.gt.elem(y)}, lhs, rhs);
                if (!report) return;
            }
        }
}

}  // namespace

ValidationReport validate_symmetric_cocycle(const SymCocycle3& s) {
    ValidationReport report;
    if (s.closed_form()) {
        // Bilinearity gives the cocycle and compatibility axioms; what remains
        // is 2 a_i = 0 and annihilation by the factor orders.
        const auto& diag = s.rho_diagonal();
        for (std::size_t i = 0; i < diag.size(); ++i) {
            IntVec gen(s.g().rank());
            gen[i] = 1;
            GroupElement gi = s.g().reduce(gen);
            if (!(diag[i] + diag[i]).is_zero())
                report.violations.push_back(
                    {"antisymmetry", {gi}, "2 * " + diag[i].describe() + " != 0"});
            const Int& d = s.g().factors()[i];
            if (d != 0 && !diag[i].times(d).is_zero())
                report.violations.push_back({"well-definedness",
                                             {gi},
                                             d.get_str() + " * " + diag[i].describe() + " != 0"});
        }
        return report;
    }
    if (!s.g().is_finite())
        fail(ErrorCode::InfiniteGroup, "exhaustive validation needs a finite group");
    Ctx ctx(s.g(), s.m());
    bool valid = true;
    check_axioms(s.h_table().values, s.c_table().values, ctx, &report, &valid);
    return report;
}

CoboundaryTables coboundary_of(const Cochain2& kk) {
    const Table& k = kk.table();
    Ctx ctx(k.g, k.m);
    const std::size_t n = ctx.n;
    CoboundaryTables out{Table::zeros(k.g, k.m, 3), Table::zeros(k.g, k.m, 2)};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const int xy = ctx.gt.add(x, y);
            for (std::size_t z = 0; z < n; ++z) {
                int v = ctx.mt.sub(k.values[ctx.i2(y, z)], k.values[ctx.i2(xy, z)]);
                v = ctx.mt.add(v, k.values[ctx.i2(x, ctx.gt.add(y, z))]);
                v = ctx.mt.sub(v, k.values[ctx.i2(x, y)]);
                out.dh.values[ctx.i3(x, y, z)] = v;
            }
            // The sign pairing with dh matters: this orientation is the one
            // under which subtracting a coboundary preserves the hexagon
            // axiom (both agree for 2-torsion coefficients).
            out.dc.values[ctx.i2(x, y)] =
                ctx.mt.sub(k.values[ctx.i2(y, x)], k.values[ctx.i2(x, y)]);
        }
    return out;
}

std::optional<Cochain2> are_cohomologous(const SymCocycle3& a, const SymCocycle3& b,
                                         std::uint64_t budget) {
    if (a.g() != b.g() || a.m() != b.m())
        fail(ErrorCode::Mismatch, "cocycles over different groups");
    if (!a.g().is_finite()) fail(ErrorCode::InfiniteGroup, "cohomology search needs a finite group");
    SymCocycle3 ad = a.densified(), bd = b.densified();
    if (!validate_symmetric_cocycle(ad).ok() || !validate_symmetric_cocycle(bd).ok())
        fail(ErrorCode::InvalidCocycle, "cohomology search needs valid cocycles");

    Ctx ctx(a.g(), a.m());
    const std::size_t n = ctx.n, mo = ctx.mt.size();
    Table dh = table_sub(ad.h_table(), bd.h_table());
    Table dc = table_sub(ad.c_table(), bd.c_table());

    std::vector<std::size_t> free_slots;
    for (std::size_t x = 1; x < n; ++x)
        for (std::size_t y = 1; y < n; ++y) free_slots.push_back(ctx.i2(x, y));

    if (pow_size(mo, free_slots.size()) > budget)
        fail(ErrorCode::SearchTooLarge, "normalized 2-cochain space exceeds the budget");

    std::vector<int> assign(free_slots.size(), 0);
    std::vector<int> k(n * n, 0);

    auto matches = [&]() {
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (ctx.mt.sub(k[ctx.i2(y, x)], k[ctx.i2(x, y)]) != dc.values[ctx.i2(x, y)])
                    return false;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                const int xy = ctx.gt.add(x, y);
                for (std::size_t z = 0; z < n; ++z) {
                    int v = ctx.mt.sub(k[ctx.i2(y, z)], k[ctx.i2(xy, z)]);
                    v = ctx.mt.add(v, k[ctx.i2(x, ctx.gt.add(y, z))]);
                    v = ctx.mt.sub(v, k[ctx.i2(x, y)]);
                    if (v != dh.values[ctx.i3(x, y, z)]) return false;
                }
            }
        return true;
    };

    for (;;) {
        if (matches())
            return Cochain2::make(Table::make(a.g(), a.m(), 2, k));
        // next assignment in lexicographic order (last slot fastest)
        std::size_t pos = assign.size();
        for (;;) {
            if (pos == 0) return std::nullopt;
            --pos;
            assign[pos] = (assign[pos] + 1) % static_cast<int>(mo);
            k[free_slots[pos]] = assign[pos];
            if (assign[pos] != 0) break;
        }
        if (assign.empty()) return std::nullopt;
    }
}

Table standard_h_mu(const Int& n, const GroupElement& mu) {
    if (n < 1) fail(ErrorCode::Mismatch, "modulus must be positive");
    if (!mu.times(n).is_zero())
        fail(ErrorCode::TorsionViolation, n.get_str() + " * mu != 0 in the coefficient group");
    FgAbGroup g = (n == 1) ? FgAbGroup::trivial() : FgAbGroup::make(IntVec{n});
    const FgAbGroup& m = mu.group();
    Table t = Table::zeros(g, m, 3);
    std::size_t nn = g.order_index();
    for (std::size_t x = 0; x < nn; ++x)
        for (std::size_t y = 0; y < nn; ++y)
            for (std::size_t z = 0; z < nn; ++z) {
                if (Int(static_cast<unsigned long>(y + z)) < n) continue;
                t.values[(x * nn + y) * nn + z] =
                    static_cast<int>(m.index_of(mu.times(static_cast<unsigned long>(x))));
            }
    return t;
}

Table bilinear_symmetry_rho(const Int& n, const GroupElement& a) {
    if (n < 1) fail(ErrorCode::Mismatch, "modulus must be positive");
    FgAbGroup g = (n == 1) ? FgAbGroup::trivial() : FgAbGroup::make(IntVec{n});
    std::vector<GroupElement> diag;
    if (!g.is_trivial()) diag.push_back(a);
    return bilinear_symmetry_rho(g, a.group(), diag);
}

Table bilinear_symmetry_rho(const FgAbGroup& g, const FgAbGroup& m,
                            const std::vector<GroupElement>& diag) {
    if (diag.size() != g.rank())
        fail(ErrorCode::LengthMismatch, "one generator value per group factor required");
    for (const auto& a : diag) {
        if (a.group() != m) fail(ErrorCode::Mismatch, "generator values in different groups");
        if (!(a + a).is_zero())
            fail(ErrorCode::TorsionViolation, "generator value " + a.describe() + " has order > 2");
    }
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const Int& d = g.factors()[i];
        if (d != 0 && !diag[i].times(d).is_zero())
            fail(ErrorCode::TorsionViolation,
                 "generator value " + diag[i].describe() + " is not annihilated by " + d.get_str());
    }
    SymCocycle3 closed = SymCocycle3::rho_closed(g, m, diag);
    return closed.densified().c_table();
}

QuadraticMap quadratic_of(const SymCocycle3& s) {
    if (!s.g().is_finite())
        fail(ErrorCode::InfiniteGroup, "quadratic table needs a finite group; use q(x) directly");
    Table t = Table::zeros(s.g(), s.m(), 1);
    auto elems = s.g().elements();
    for (std::size_t i = 0; i < elems.size(); ++i)
        t.values[i] = static_cast<int>(s.m().index_of(s.q(elems[i])));
    return QuadraticMap{std::move(t)};
}

ValidationReport validate_quadratic(const QuadraticMap& qm) {
    const Table& q = qm.table;
    if (q.arity != 1) fail(ErrorCode::Mismatch, "quadratic map needs an arity-1 table");
    if (!q.g.is_finite()) fail(ErrorCode::InfiniteGroup, "quadratic validation needs a finite group");
    ValidationReport report;
    Ctx ctx(q.g, q.m);
    const std::size_t n = ctx.n;
    for (std::size_t x = 0; x < n; ++x) {
        int lhs = q.values[x], rhs = q.values[ctx.gt.neg(x)];
        if (lhs != rhs) {
            std::ostringstream os;
            os << "q" << ctx.gt.elem(x).describe() << " != q(-" << ctx.gt.elem(x).describe() << ")";
            report.violations.push_back({"evenness", {ctx.gt.elem(x)}, os.str()});
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const int xy = ctx.gt.add(x, y);
            for (std::size_t z = 0; z < n; ++z) {
                int lhs = ctx.mt.add(q.values[ctx.gt.add(xy, z)],
                                     ctx.mt.add(q.values[x], ctx.mt.add(q.values[y], q.values[z])));
                int rhs = ctx.mt.add(q.values[ctx.gt.add(y, z)],
                                     ctx.mt.add(q.values[ctx.gt.add(z, x)], q.values[xy]));
                if (lhs != rhs)
                    report.violations.push_back(
                        {"six-term", {ctx.gt.elem(x), ctx.gt.elem(y), ctx.gt.elem(z)}, ""});
            }
        }
    return report;
}

bool all_two_torsion(const QuadraticMap& qm) {
    GroupTables mt(qm.table.m);
    for (int v : qm.table.values)
        if (mt.add(v, v) != 0) return false;
    return true;
}

SymCocycle3 reduce_cyclic(const SymCocycle3& s) {
    if (s.g().rank() > 1) fail(ErrorCode::Mismatch, "reduction needs a cyclic group");
    if (!s.g().is_finite()) fail(ErrorCode::InfiniteGroup, "reduction needs a finite cyclic group");
    SymCocycle3 d = s.densified();
    if (!validate_symmetric_cocycle(d).ok())
        fail(ErrorCode::InvalidCocycle, "reduction needs a valid cocycle");
    if (s.g().is_trivial()) return SymCocycle3::zero(s.g(), s.m());
    Int n = s.g().factors()[0];
    GroupElement one = s.g().reduce(IntVec{1});
    GroupElement a = d.c(one, one);
    GroupElement mu = a.times(n);  // zero for every valid symmetric cocycle
    return SymCocycle3::dense(standard_h_mu(n, mu), bilinear_symmetry_rho(n, a));
}

namespace {

// Integer coefficient rows of the four axiom families over the table slots
// (h slots first, then c slots).
IntMatrix axiom_matrix(const Ctx& ctx) {
    const std::size_t n = ctx.n;
    const std::size_t nh = n * n * n, nc = n * n;
    std::vector<IntVec> rows;
    auto h_slot = [&](std::size_t x, std::size_t y, std::size_t z) { return ctx.i3(x, y, z); };
    auto c_slot = [&](std::size_t x, std::size_t y) { return nh + ctx.i2(x, y); };

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            IntVec row(nh + nc);
            row[h_slot(x, 0, z)] += 1;
            rows.push_back(std::move(row));
        }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z) {
                    IntVec row(nh + nc);
                    row[h_slot(x, y, z)] += 1;
                    row[h_slot(u, ctx.gt.add(x, y), z)] += 1;
                    row[h_slot(u, x, y)] += 1;
                    row[h_slot(u, x, ctx.gt.add(y, z))] -= 1;
                    row[h_slot(ctx.gt.add(u, x), y, z)] -= 1;
                    rows.push_back(std::move(row));
                }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                IntVec row(nh + nc);
                row[h_slot(y, z, x)] += 1;
                row[c_slot(x, ctx.gt.add(y, z))] += 1;
                row[h_slot(x, y, z)] += 1;
                row[c_slot(x, z)] -= 1;
                row[h_slot(y, x, z)] -= 1;
                row[c_slot(x, y)] -= 1;
                rows.push_back(std::move(row));
            }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            IntVec row(nh + nc);
            row[c_slot(x, y)] += 1;
            row[c_slot(y, x)] += 1;
            rows.push_back(std::move(row));
        }

    // drop zero rows and exact duplicates
    std::set<IntVec> seen;
    std::vector<IntVec> kept;
    IntVec zero_row(nh + nc);
    for (auto& r : rows) {
        if (r == zero_row) continue;
        if (seen.insert(r).second) kept.push_back(std::move(r));
    }
    IntMatrix c(kept.size(), nh + nc);
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = 0; j < nh + nc; ++j) c.at(i, j) = kept[i][j];
    return c;
}

}  // namespace

H3SymResult enumerate_h3_sym(const FgAbGroup& g, const FgAbGroup& m, std::uint64_t budget) {
    if (!g.is_finite() || !m.is_finite())
        fail(ErrorCode::InfiniteGroup, "cohomology enumeration needs finite groups");
    Ctx ctx(g, m);
    const std::size_t n = ctx.n, mo = ctx.mt.size();
    const std::size_t nh = n * n * n, nc = n * n;
    if (mo > 256) fail(ErrorCode::SearchTooLarge, "coefficient group too large to enumerate");

    // All valid symmetric cocycles, as concatenated (h, c) value vectors.
    std::vector<std::vector<int>> valid;
    if (pow_size(mo, nh + nc) <= budget) {
        // Full table space fits the budget: literal filter.
        std::vector<int> assign(nh + nc, 0);
        bool ok;
        for (;;) {
            ok = true;
            std::vector<int> h(assign.begin(), assign.begin() + static_cast<long>(nh));
            std::vector<int> c(assign.begin() + static_cast<long>(nh), assign.end());
            check_axioms(h, c, ctx, nullptr, &ok);
            if (ok) valid.push_back(assign);
            std::size_t pos = assign.size();
            for (;;) {
                if (pos == 0) goto literal_done;
                --pos;
                assign[pos] = (assign[pos] + 1) % static_cast<int>(mo);
                if (assign[pos] != 0) break;
            }
            if (assign.empty()) break;
        }
    literal_done:;
    } else {
        // Enumerate the solution subgroup of the linear axiom system, one
        // kernel per distinct coefficient-factor modulus.
        IntMatrix cmat = axiom_matrix(ctx);
        std::map<Int, LatticeSubquotient> by_modulus;
        for (const Int& mf : m.factors())
            if (!by_modulus.count(mf)) by_modulus.emplace(mf, kernel_mod(cmat, mf));

        struct FactorKernel {
            const LatticeSubquotient* sub;
            Int modulus;
            std::vector<std::vector<int>> columns;  // per kernel coordinate, reduced mod modulus
            std::vector<unsigned long> orders;      // kernel factor orders
        };
        std::vector<FactorKernel> fks;
        std::uint64_t total = 1;
        for (const Int& mf : m.factors()) {
            FactorKernel fk;
            fk.sub = &by_modulus.at(mf);
            fk.modulus = mf;
            const FgAbGroup& kg = fk.sub->group;
            for (std::size_t j = 0; j < kg.rank(); ++j) {
                fk.orders.push_back(kg.factors()[j].get_ui());
                std::vector<int> col(nh + nc);
                for (std::size_t i = 0; i < nh + nc; ++i) {
                    Int r;
                    mpz_fdiv_r(r.get_mpz_t(), fk.sub->inclusion.at(i, j).get_mpz_t(),
                               mf.get_mpz_t());
                    col[i] = static_cast<int>(r.get_ui());
                }
                fk.columns.push_back(std::move(col));
            }
            Int ko = kg.order();
            if (!ko.fits_ulong_p() || total > budget / std::max<unsigned long>(ko.get_ui(), 1))
                fail(ErrorCode::SearchTooLarge, "valid cocycle space exceeds the budget");
            total *= ko.get_ui();
            fks.push_back(std::move(fk));
        }

        // Odometer over all kernel coordinates; slot values per factor are
        // maintained incrementally (each coordinate bump adds one column).
        struct Coord {
            std::size_t fk, j;
            unsigned long order, value = 0;
        };
        std::vector<Coord> coords;
        for (std::size_t f = 0; f < fks.size(); ++f)
            for (std::size_t j = 0; j < fks[f].orders.size(); ++j)
                coords.push_back({f, j, fks[f].orders[j], 0});
        std::vector<std::vector<int>> w(fks.size(), std::vector<int>(nh + nc, 0));
        std::vector<int> mods(fks.size());
        std::vector<unsigned long> strides(fks.size());
        for (std::size_t f = 0; f < fks.size(); ++f) mods[f] = static_cast<int>(fks[f].modulus.get_ui());
        // mixed-radix strides for combining per-factor digits into an m index
        {
            unsigned long s = 1;
            for (std::size_t f = fks.size(); f > 0; --f) {
                strides[f - 1] = s;
                s *= static_cast<unsigned long>(mods[f - 1]);
            }
        }
        auto emit = [&]() {
            std::vector<int> vals(nh + nc, 0);
            for (std::size_t i = 0; i < nh + nc; ++i) {
                unsigned long idx = 0;
                for (std::size_t f = 0; f < fks.size(); ++f)
                    idx += static_cast<unsigned long>(w[f][i]) * strides[f];
                vals[i] = static_cast<int>(idx);
            }
            valid.push_back(std::move(vals));
        };
        emit();
        if (!coords.empty()) {
            for (;;) {
                std::size_t pos = coords.size();
                bool done = false;
                for (;;) {
                    if (pos == 0) {
                        done = true;
                        break;
                    }
                    --pos;
                    Coord& cd = coords[pos];
                    const auto& col = fks[cd.fk].columns[cd.j];
                    auto& wv = w[cd.fk];
                    const int md = mods[cd.fk];
                    for (std::size_t i = 0; i < nh + nc; ++i) {
                        wv[i] += col[i];
                        if (wv[i] >= md) wv[i] -= md;
                    }
                    cd.value = (cd.value + 1) % cd.order;
                    if (cd.value != 0) break;
                }
                if (done) break;
                emit();
            }
        }
    }

    // Coboundary set over all normalized 2-cochains.
    if (pow_size(mo, (n - 1) * (n - 1)) > budget)
        fail(ErrorCode::SearchTooLarge, "normalized 2-cochain space exceeds the budget");
    std::set<std::string> coboundaries;
    {
        std::vector<std::size_t> free_slots;
        for (std::size_t x = 1; x < n; ++x)
            for (std::size_t y = 1; y < n; ++y) free_slots.push_back(ctx.i2(x, y));
        std::vector<int> assign(free_slots.size(), 0);
        std::vector<int> k(nc, 0);
        for (;;) {
            std::vector<int> delta(nh + nc, 0);
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) {
                    const int xy = ctx.gt.add(x, y);
                    for (std::size_t z = 0; z < n; ++z) {
                        int v = ctx.mt.sub(k[ctx.i2(y, z)], k[ctx.i2(xy, z)]);
                        v = ctx.mt.add(v, k[ctx.i2(x, ctx.gt.add(y, z))]);
                        v = ctx.mt.sub(v, k[ctx.i2(x, y)]);
                        delta[ctx.i3(x, y, z)] = v;
                    }
                    delta[nh + ctx.i2(x, y)] = ctx.mt.sub(k[ctx.i2(y, x)], k[ctx.i2(x, y)]);
                }
            coboundaries.insert(pack_values(delta));
            std::size_t pos = assign.size();
            bool done = false;
            for (;;) {
                if (pos == 0) {
                    done = true;
                    break;
                }
                --pos;
                assign[pos] = (assign[pos] + 1) % static_cast<int>(mo);
                k[free_slots[pos]] = assign[pos];
                if (assign[pos] != 0) break;
            }
            if (done || assign.empty()) break;
        }
    }

    // Partition by "difference is a coboundary".
    H3SymResult out;
    out.cocycle_count = valid.size();
    std::vector<std::vector<int>> reps;
    for (const auto& v : valid) {
        bool placed = false;
        for (const auto& r : reps) {
            std::vector<int> diff(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) diff[i] = ctx.mt.sub(v[i], r[i]);
            if (coboundaries.count(pack_values(diff))) {
                placed = true;
                break;
            }
        }
        if (!placed) reps.push_back(v);
    }
    out.class_count = reps.size();
    for (const auto& r : reps) {
        std::vector<int> h(r.begin(), r.begin() + static_cast<long>(nh));
        std::vector<int> c(r.begin() + static_cast<long>(nh), r.end());
        out.representatives.push_back(
            SymCocycle3::dense(Table::make(g, m, 3, h), Table::make(g, m, 2, c)));
    }
    return out;
}

}  // namespace picardkit
