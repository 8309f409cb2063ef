#include "picardkit/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace picardkit {

namespace {

bool is_divisibility_chain(const IntVec& factors) {
    // Nonzero prefix with d_i | d_{i+1}, then zeros.
    bool seen_zero = false;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] == 0) {
            seen_zero = true;
            continue;
        }
        if (seen_zero) return false;
        if (i + 1 < factors.size() && factors[i + 1] != 0 && factors[i + 1] % factors[i] != 0)
            return false;
    }
    return true;
}

}  // namespace

FgAbGroup FgAbGroup::make(const IntVec& factors) {
    for (const Int& d : factors) {
        if (d == 1) fail(ErrorCode::FactorOne, "cyclic factor 1 is forbidden");
        if (d < 0) fail(ErrorCode::FactorOne, "factors must be 0 or >= 2, got " + d.get_str());
    }
    if (is_divisibility_chain(factors)) return FgAbGroup(factors);
    // Normalize an arbitrary 0/>=2 sequence to invariant-factor form.
    QuotientPresentation q = present_quotient(factors.size(), IntMatrix::diagonal(factors));
    return q.group;
}

bool FgAbGroup::is_finite() const {
    for (const Int& d : factors_)
        if (d == 0) return false;
    return true;
}

Int FgAbGroup::order() const {
    if (!is_finite()) fail(ErrorCode::InfiniteGroup, "order of an infinite group");
    Int n = 1;
    for (const Int& d : factors_) n *= d;
    return n;
}

std::size_t FgAbGroup::order_index() const {
    Int n = order();
    if (!n.fits_ulong_p() || n.get_ui() > (1ull << 40))
        fail(ErrorCode::SearchTooLarge, "group order too large to enumerate");
    return static_cast<std::size_t>(n.get_ui());
}

GroupElement FgAbGroup::zero() const { return GroupElement(*this, IntVec(rank())); }

GroupElement FgAbGroup::reduce(IntVec coords) const {
    if (coords.size() != rank())
        fail(ErrorCode::LengthMismatch,
             "coordinate tuple of length " + std::to_string(coords.size()) + " for rank " +
                 std::to_string(rank()) + " group");
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (factors_[i] == 0) continue;
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), coords[i].get_mpz_t(), factors_[i].get_mpz_t());
        coords[i] = r;
    }
    return GroupElement(*this, std::move(coords));
}

std::vector<GroupElement> FgAbGroup::elements() const {
    std::size_t n = order_index();
    std::vector<GroupElement> out;
    out.reserve(n);
    IntVec coords(rank());
    for (;;) {
        out.push_back(GroupElement(*this, coords));
        std::size_t i = rank();
        while (i > 0) {
            --i;
            coords[i] += 1;
            if (coords[i] < factors_[i]) break;
            coords[i] = 0;
            if (i == 0) return out;
        }
        if (rank() == 0) return out;
    }
}

std::size_t FgAbGroup::index_of(const GroupElement& e) const {
    if (e.group() != *this) fail(ErrorCode::Mismatch, "element of a different group");
    if (!is_finite()) fail(ErrorCode::InfiniteGroup, "indexing needs a finite group");
    Int idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
        idx *= factors_[i];
        idx += e.coords()[i];
    }
    if (!idx.fits_ulong_p()) fail(ErrorCode::SearchTooLarge, "element index overflow");
    return static_cast<std::size_t>(idx.get_ui());
}

GroupElement FgAbGroup::element_at(std::size_t index) const {
    if (!is_finite()) fail(ErrorCode::InfiniteGroup, "indexing needs a finite group");
    IntVec coords(rank());
    Int rest = static_cast<unsigned long>(index);
    for (std::size_t i = rank(); i > 0; --i) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), rest.get_mpz_t(), factors_[i - 1].get_mpz_t());
        coords[i - 1] = r;
        rest /= factors_[i - 1];
    }
    return GroupElement(*this, std::move(coords));
}

std::string FgAbGroup::describe() const {
    if (factors_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << " + ";
        if (factors_[i] == 0)
            os << "Z";
        else
            os << "Z/" << factors_[i].get_str();
    }
    return os.str();
}

bool GroupElement::is_zero() const {
    for (const Int& c : coords_)
        if (c != 0) return false;
    return true;
}

GroupElement GroupElement::operator+(const GroupElement& other) const {
    if (group_ != other.group_) fail(ErrorCode::Mismatch, "sum of elements of different groups");
    IntVec c(coords_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coords_[i];
    return group_.reduce(std::move(c));
}

GroupElement GroupElement::operator-(const GroupElement& other) const {
    return *this + (-other);
}

GroupElement GroupElement::operator-() const {
    IntVec c(coords_);
    for (Int& x : c) x = -x;
    return group_.reduce(std::move(c));
}

GroupElement GroupElement::times(const Int& k) const {
    IntVec c(coords_);
    for (Int& x : c) x *= k;
    return group_.reduce(std::move(c));
}

std::string GroupElement::describe() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ",";
        os << coords_[i].get_str();
    }
    os << ")";
    return os.str();
}

GroupHom GroupHom::make(FgAbGroup source, FgAbGroup target, IntMatrix matrix) {
    if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
        fail(ErrorCode::Mismatch, "hom matrix must be target rank x source rank");
    // d_i * column_i must reduce to zero in the target.
    for (std::size_t i = 0; i < source.rank(); ++i) {
        const Int& d = source.factors()[i];
        if (d == 0) continue;
        for (std::size_t j = 0; j < target.rank(); ++j) {
            const Int& e = target.factors()[j];
            Int v = d * matrix.at(j, i);
            bool ok = (e == 0) ? (v == 0) : (v % e == 0);
            if (!ok)
                fail(ErrorCode::IllDefinedHom,
                     "column " + std::to_string(i) + " is not annihilated by factor " +
                         d.get_str());
        }
    }
    GroupHom h;
    h.source_ = std::move(source);
    h.target_ = std::move(target);
    h.matrix_ = std::move(matrix);
    return h;
}

GroupHom GroupHom::identity(const FgAbGroup& g) {
    return make(g, g, IntMatrix::identity(g.rank()));
}

GroupHom GroupHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
    return make(source, target, IntMatrix::zero(target.rank(), source.rank()));
}

GroupHom GroupHom::scalar(const FgAbGroup& g, const Int& k) {
    IntMatrix m = IntMatrix::identity(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) m.at(i, i) = k;
    return make(g, g, std::move(m));
}

GroupElement GroupHom::apply(const GroupElement& e) const {
    if (e.group() != source_) fail(ErrorCode::Mismatch, "element not in the hom source");
    return target_.reduce(matrix_.apply(e.coords()));
}

GroupHom GroupHom::compose_after(const GroupHom& first) const {
    if (first.target_ != source_)
        fail(ErrorCode::CompositionMismatch, "hom composition shape mismatch");
    return make(first.source_, target_, matrix_.mul(first.matrix_));
}

namespace {

// Generators of the relation lattice of a group inside Z^rank.
IntMatrix relation_lattice(const FgAbGroup& g) {
    std::vector<IntVec> cols;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (g.factors()[i] == 0) continue;
        IntVec c(g.rank());
        c[i] = g.factors()[i];
        cols.push_back(c);
    }
    return IntMatrix::from_columns(g.rank(), cols);
}

}  // namespace

std::optional<GroupElement> GroupHom::preimage(const GroupElement& e) const {
    if (e.group() != target_) fail(ErrorCode::Mismatch, "element not in the hom target");
    IntMatrix sys = matrix_.hstack(relation_lattice(target_));
    std::optional<IntVec> sol = solve_linear(sys, e.coords());
    if (!sol) return std::nullopt;
    IntVec x(sol->begin(), sol->begin() + static_cast<long>(source_.rank()));
    return source_.reduce(std::move(x));
}

bool GroupHom::is_zero_map() const {
    for (std::size_t i = 0; i < source_.rank(); ++i) {
        IntVec col = matrix_.column(i);
        if (!target_.reduce(std::move(col)).is_zero()) return false;
    }
    return true;
}

QuotientPresentation present_quotient(std::size_t n, const IntMatrix& relations) {
    if (relations.rows() != n) fail(ErrorCode::Internal, "relations must have n rows");
    SnfResult snf = smith_normal_form(relations);
    std::vector<std::size_t> kept;
    IntVec factors;
    for (std::size_t i = 0; i < snf.rank; ++i) {
        if (snf.d.at(i, i) == 1) continue;
        kept.push_back(i);
        factors.push_back(snf.d.at(i, i));
    }
    for (std::size_t i = snf.rank; i < n; ++i) {
        kept.push_back(i);
        factors.push_back(0);
    }
    QuotientPresentation out;
    out.group = FgAbGroup::make(factors);
    out.to_coords = snf.u.select_rows(kept);
    out.lift = snf.uinv.select_cols(kept);
    return out;
}

LatticeSubquotient lattice_subquotient(std::size_t n, const IntMatrix& k_gens,
                                       const IntMatrix& relations) {
    SnfResult ksnf = smith_normal_form(k_gens);
    const std::size_t m = ksnf.rank;
    IntMatrix basis(n, m);  // columns form a basis of lattice(k_gens)
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i)
            basis.at(i, j) = ksnf.uinv.at(i, j) * ksnf.d.at(j, j);

    IntMatrix rel_in_basis(m, relations.cols());
    for (std::size_t c = 0; c < relations.cols(); ++c) {
        IntVec y = ksnf.u.apply(relations.column(c));
        for (std::size_t i = 0; i < n; ++i) {
            if (i < m) {
                if (y[i] % ksnf.d.at(i, i) != 0)
                    fail(ErrorCode::Internal, "relations do not lie in the generated lattice");
                rel_in_basis.at(i, c) = y[i] / ksnf.d.at(i, i);
            } else if (y[i] != 0) {
                fail(ErrorCode::Internal, "relations do not lie in the generated lattice");
            }
        }
    }
    QuotientPresentation pres = present_quotient(m, rel_in_basis);
    LatticeSubquotient out;
    out.group = pres.group;
    out.inclusion = basis.mul(pres.lift);
    return out;
}

LatticeSubquotient kernel_mod(const IntMatrix& c, const Int& modulus) {
    const std::size_t n = c.cols();
    IntMatrix mod_cols(c.rows(), c.rows());
    for (std::size_t i = 0; i < c.rows(); ++i) mod_cols.at(i, i) = modulus;
    IntMatrix ker_full = kernel_lattice(c.hstack(mod_cols));
    std::vector<std::size_t> top(n);
    for (std::size_t i = 0; i < n; ++i) top[i] = i;
    IntMatrix k_gens = ker_full.select_rows(top).hstack(
        IntMatrix::diagonal(IntVec(n, modulus)));
    return lattice_subquotient(n, k_gens, IntMatrix::diagonal(IntVec(n, modulus)));
}

SubquotientData hom_subquotients(const GroupHom& h) {
    const FgAbGroup& src = h.source();
    const FgAbGroup& tgt = h.target();
    const std::size_t r = src.rank();

    IntMatrix lt = relation_lattice(tgt);
    IntMatrix stacked = h.matrix().hstack(lt);

    // Preimage lattice K = { x in Z^r : F x in lattice(target relations) }.
    IntMatrix ker_full = kernel_lattice(stacked);
    std::vector<std::size_t> top(r);
    for (std::size_t i = 0; i < r; ++i) top[i] = i;
    IntMatrix k_gens = ker_full.select_rows(top);

    SubquotientData out;

    // Image = Z^r / K, included in the target via F on lifted representatives.
    QuotientPresentation img = present_quotient(r, k_gens);
    out.image = img.group;
    out.image_inclusion = GroupHom::make(img.group, tgt, h.matrix().mul(img.lift));

    // Cokernel = Z^s / (F Z^r + target relations).
    QuotientPresentation cok = present_quotient(tgt.rank(), stacked);
    out.cokernel = cok.group;
    out.cokernel_projection = GroupHom::make(tgt, cok.group, cok.to_coords);

    // Kernel = K / (source relations).
    LatticeSubquotient ker = lattice_subquotient(r, k_gens, relation_lattice(src));
    out.kernel = ker.group;
    out.kernel_inclusion = GroupHom::make(ker.group, src, ker.inclusion);
    return out;
}

bool in_subgroup(const GroupElement& e, const IntMatrix& gens) {
    const FgAbGroup& g = e.group();
    if (gens.rows() != g.rank()) fail(ErrorCode::Mismatch, "generator coordinates shape mismatch");
    IntMatrix sys = gens.hstack(relation_lattice(g));
    return solve_linear(sys, e.coords()).has_value();
}

bool is_exact_at(const GroupHom& f, const GroupHom& g) {
    if (f.target() != g.source())
        fail(ErrorCode::CompositionMismatch, "exactness needs f.target == g.source");
    SubquotientData gsub = hom_subquotients(g);

    // image(f) <= kernel(g): generators of the image must be killed... they
    // must lie in the kernel subgroup; and conversely.
    IntMatrix ker_gens = gsub.kernel_inclusion.matrix();
    for (std::size_t i = 0; i < f.source().rank(); ++i) {
        GroupElement img = f.target().reduce(f.matrix().column(i));
        if (!in_subgroup(img, ker_gens)) return false;
    }
    for (std::size_t i = 0; i < gsub.kernel.rank(); ++i) {
        GroupElement ker_el = f.target().reduce(ker_gens.column(i));
        if (!in_subgroup(ker_el, f.matrix())) return false;
    }
    return true;
}

GroupTables::GroupTables(const FgAbGroup& g) : g_(g) {
    n_ = g.order_index();
    if (n_ > (1u << 13))
        fail(ErrorCode::SearchTooLarge, "group too large for cached index tables");
    elems_ = g.elements();
    add_.resize(n_ * n_);
    neg_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        neg_[i] = static_cast<int>(g.index_of(-elems_[i]));
        for (std::size_t j = 0; j <= i; ++j) {
            int s = static_cast<int>(g.index_of(elems_[i] + elems_[j]));
            add_[i * n_ + j] = s;
            add_[j * n_ + i] = s;
        }
    }
}

int GroupTables::index(const GroupElement& e) const {
    return static_cast<int>(g_.index_of(e));
}

std::uint64_t default_budget() { return 1ull << 24; }

}  // namespace picardkit
