#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picardkit/int_matrix.hpp"

namespace picardkit {

class GroupElement;

// Finitely generated abelian group in invariant-factor form.  A factor of 0
// is an infinite cyclic summand, a factor d >= 2 a cyclic summand of order d;
// factor 1 is forbidden.  Construction normalizes any 0/>=2 factor sequence
// to a divisibility chain (torsion ascending, then zeros) via SNF.
class FgAbGroup {
public:
    FgAbGroup() = default;  // trivial group

    static FgAbGroup make(const IntVec& factors);
    static FgAbGroup trivial() { return FgAbGroup(); }

    const IntVec& factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    bool is_finite() const;
    bool is_trivial() const { return factors_.empty(); }
    Int order() const;  // InfiniteGroup if any factor is 0
    std::size_t order_index() const;  // order as size_t, SearchTooLarge if huge

    GroupElement zero() const;
    GroupElement reduce(IntVec coords) const;  // elem_reduce

    // All elements in lexicographic coordinate order (first coordinate most
    // significant).  InfiniteGroup if not finite.
    std::vector<GroupElement> elements() const;
    std::size_t index_of(const GroupElement& e) const;
    GroupElement element_at(std::size_t index) const;

    bool operator==(const FgAbGroup& other) const { return factors_ == other.factors_; }
    bool operator!=(const FgAbGroup& other) const { return !(*this == other); }

    std::string describe() const;

private:
    explicit FgAbGroup(IntVec factors) : factors_(std::move(factors)) {}
    IntVec factors_;
};

class GroupElement {
public:
    GroupElement() = default;
    GroupElement(FgAbGroup group, IntVec coords)
        : group_(std::move(group)), coords_(std::move(coords)) {}

    const FgAbGroup& group() const { return group_; }
    const IntVec& coords() const { return coords_; }
    bool is_zero() const;

    GroupElement operator+(const GroupElement& other) const;
    GroupElement operator-(const GroupElement& other) const;
    GroupElement operator-() const;
    GroupElement times(const Int& k) const;

    bool operator==(const GroupElement& other) const {
        return group_ == other.group_ && coords_ == other.coords_;
    }
    bool operator!=(const GroupElement& other) const { return !(*this == other); }
    bool operator<(const GroupElement& other) const { return coords_ < other.coords_; }

    std::string describe() const;

private:
    FgAbGroup group_;
    IntVec coords_;
};

// Homomorphism given by an integer matrix (target rank x source rank) acting
// on coordinate columns.  Construction checks well-definedness: d_i * column_i
// must vanish in the target for every finite source factor d_i.
class GroupHom {
public:
    GroupHom() = default;

    static GroupHom make(FgAbGroup source, FgAbGroup target, IntMatrix matrix);
    static GroupHom identity(const FgAbGroup& g);
    static GroupHom zero(const FgAbGroup& source, const FgAbGroup& target);
    static GroupHom scalar(const FgAbGroup& g, const Int& k);  // multiplication by k

    const FgAbGroup& source() const { return source_; }
    const FgAbGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    GroupElement apply(const GroupElement& e) const;
    GroupHom compose_after(const GroupHom& first) const;  // this(first(x))

    // Some x with apply(x) == e, if e is in the image.
    std::optional<GroupElement> preimage(const GroupElement& e) const;
    bool is_zero_map() const;

private:
    FgAbGroup source_, target_;
    IntMatrix matrix_;
};

// Presentation of Z^n / lattice(relations) in invariant-factor form with
// exact coordinate transformations both ways.
struct QuotientPresentation {
    FgAbGroup group;
    IntMatrix to_coords;  // Z^n -> group coordinates (reduce afterwards)
    IntMatrix lift;       // group coordinates -> representative in Z^n

    GroupElement project(const IntVec& v) const { return group.reduce(to_coords.apply(v)); }
    IntVec lift_of(const GroupElement& e) const { return lift.apply(e.coords()); }
};

QuotientPresentation present_quotient(std::size_t n, const IntMatrix& relations);

// Presentation of lattice(k_gens)/lattice(relations) inside Z^n.  The
// relation lattice must be contained in the generated one.  inclusion maps
// group coordinates to a representative in Z^n.
struct LatticeSubquotient {
    FgAbGroup group;
    IntMatrix inclusion;
};

LatticeSubquotient lattice_subquotient(std::size_t n, const IntMatrix& k_gens,
                                       const IntMatrix& relations);

// The solution group { w in (Z/modulus)^cols : c w == 0 mod modulus }, with
// inclusion yielding integer representatives of solutions.
LatticeSubquotient kernel_mod(const IntMatrix& c, const Int& modulus);

// Kernel, image and cokernel of a homomorphism, with witnessing maps.
struct SubquotientData {
    FgAbGroup kernel;
    GroupHom kernel_inclusion;  // kernel -> source
    FgAbGroup image;
    GroupHom image_inclusion;  // image -> target
    FgAbGroup cokernel;
    GroupHom cokernel_projection;  // target -> cokernel
};

SubquotientData hom_subquotients(const GroupHom& h);

// True iff image(f) = kernel(g) as subgroups of f.target == g.source.
// Decided exactly via SNF membership tests; works for infinite groups too.
bool is_exact_at(const GroupHom& f, const GroupHom& g);

// Membership of e in the subgroup of e.group() generated by the columns of
// gens (coordinates of generators).
bool in_subgroup(const GroupElement& e, const IntMatrix& gens);

// Cached index arithmetic for a finite group: element indices follow the
// lexicographic enumeration order.
class GroupTables {
public:
    explicit GroupTables(const FgAbGroup& g);

    const FgAbGroup& group() const { return g_; }
    std::size_t size() const { return n_; }
    int add(int i, int j) const { return add_[static_cast<std::size_t>(i) * n_ + j]; }
    int neg(int i) const { return neg_[i]; }
    int sub(int i, int j) const { return add(i, neg(j)); }
    const GroupElement& elem(int i) const { return elems_[i]; }
    int index(const GroupElement& e) const;

private:
    FgAbGroup g_;
    std::size_t n_ = 0;
    std::vector<GroupElement> elems_;
    std::vector<int> add_, neg_;
};

std::uint64_t default_budget();  // 2^24, the default search bound

}  // namespace picardkit
