#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picardkit/abelian.hpp"

namespace picardkit {

// Dense table over a finite group g with values in m, stored as m-element
// indices in lexicographic key order (last key coordinate fastest).
struct Table {
    FgAbGroup g, m;
    int arity = 0;
    std::vector<int> values;

    static Table zeros(FgAbGroup g, FgAbGroup m, int arity);
    static Table make(FgAbGroup g, FgAbGroup m, int arity, std::vector<int> values);

    std::size_t side() const;
    GroupElement at(const std::vector<GroupElement>& key) const;
    bool is_zero() const;

    bool operator==(const Table& other) const {
        return g == other.g && m == other.m && arity == other.arity && values == other.values;
    }
};

Table table_sub(const Table& a, const Table& b);

struct Violation {
    std::string axiom;
    std::vector<GroupElement> at;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Normalized 2-cochain: k(x,0) = k(0,y) = 0.
class Cochain2 {
public:
    static Cochain2 make(Table table);
    const Table& table() const { return table_; }

private:
    Table table_;
};

struct QuadraticMap {
    Table table;  // arity 1
};

// The classifying pair (h, c) of a skeletal Picard groupoid.  Either dense
// tables over a finite group, or the closed bilinear form with h == 0 and
// c(x, y) = sum_i x_i y_i a_i, which also covers infinite groups.
class SymCocycle3 {
public:
    static SymCocycle3 dense(Table h, Table c);
    static SymCocycle3 zero(const FgAbGroup& g, const FgAbGroup& m);
    static SymCocycle3 rho_closed(FgAbGroup g, FgAbGroup m, std::vector<GroupElement> diag);

    const FgAbGroup& g() const { return g_; }
    const FgAbGroup& m() const { return m_; }
    bool closed_form() const { return closed_; }

    GroupElement h(const GroupElement& x, const GroupElement& y, const GroupElement& z) const;
    GroupElement c(const GroupElement& x, const GroupElement& y) const;
    GroupElement q(const GroupElement& x) const;  // c(x, x)

    const Table& h_table() const;
    const Table& c_table() const;
    const std::vector<GroupElement>& rho_diagonal() const;

    bool is_permutative() const;  // h identically zero
    SymCocycle3 densified() const;  // materialize a closed form (finite g only)

    bool operator==(const SymCocycle3& other) const;

private:
    FgAbGroup g_, m_;
    bool closed_ = false;
    Table h_, c_;                      // dense form
    std::vector<GroupElement> diag_;   // closed form
};

ValidationReport validate_symmetric_cocycle(const SymCocycle3& s);

struct CoboundaryTables {
    Table dh;  // arity 3
    Table dc;  // arity 2
};

CoboundaryTables coboundary_of(const Cochain2& k);

std::optional<Cochain2> are_cohomologous(const SymCocycle3& a, const SymCocycle3& b,
                                         std::uint64_t budget = default_budget());

// h_mu(x, y, z) = x mu when y + z >= n (integer representatives in [0, n)),
// 0 otherwise; a normalized 3-cocycle on Z/n whenever n mu = 0.
Table standard_h_mu(const Int& n, const GroupElement& mu);

// Cyclic closed form (x, y) -> x y a on Z/n; needs 2a = 0 and n a = 0.
Table bilinear_symmetry_rho(const Int& n, const GroupElement& a);
// Generalized biadditive mode from per-generator diagonal values of order <= 2.
Table bilinear_symmetry_rho(const FgAbGroup& g, const FgAbGroup& m,
                            const std::vector<GroupElement>& diag);

QuadraticMap quadratic_of(const SymCocycle3& s);
ValidationReport validate_quadratic(const QuadraticMap& q);
bool all_two_torsion(const QuadraticMap& q);  // 2 q(x) = 0 for all x

// (h, c) on Z/n  ~  (h_{n c(1,1)}, rho_{c(1,1)}); the first component
// vanishes, so the result is permutative.
SymCocycle3 reduce_cyclic(const SymCocycle3& s);

struct H3SymResult {
    std::vector<SymCocycle3> representatives;
    std::size_t class_count = 0;
    std::size_t cocycle_count = 0;  // number of valid symmetric cocycles
};

H3SymResult enumerate_h3_sym(const FgAbGroup& g, const FgAbGroup& m,
                             std::uint64_t budget = default_budget());

}  // namespace picardkit
