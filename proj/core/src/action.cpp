#include "modsep/action.hpp"

#include <algorithm>
#include <stdexcept>

namespace modsep {

GroupAction::GroupAction(const FiniteField& field, uint32_t dim, std::vector<GroupElement> elements,
                         std::vector<std::vector<size_t>> table, std::vector<size_t> generators)
    : field_(&field),
      dim_(dim),
      elements_(std::move(elements)),
      table_(std::move(table)),
      generators_(std::move(generators)) {
    const size_t n = elements_.size();
    if (n == 0) throw std::invalid_argument("GroupAction: empty element list");
    if (table_.size() != n) throw std::invalid_argument("GroupAction: table size mismatch");

    for (const auto& e : elements_) {
        if (&e.dual.field() != field_) throw std::invalid_argument("GroupAction: matrix over wrong field");
        if (e.dual.rows() != dim_ || e.dual.cols() != dim_)
            throw std::invalid_argument("GroupAction: matrix shape mismatch");
        if (!e.dual.is_invertible())
            throw std::invalid_argument("GroupAction: dual matrix of '" + e.label + "' is singular");
    }

    // Identity: unique row/column fixing everything.
    identity_ = n;
    for (size_t g = 0; g < n; ++g) {
        bool id = true;
        for (size_t h = 0; h < n; ++h)
            if (table_[g][h] != h || table_[h][g] != h) id = false;
        if (id) {
            identity_ = g;
            break;
        }
    }
    if (identity_ == n) throw std::invalid_argument("GroupAction: table has no identity");
    if (elements_[identity_].dual != Matrix::identity(*field_, dim_))
        throw std::invalid_argument("GroupAction: identity element has non-identity matrix");

    inverse_.assign(n, n);
    for (size_t g = 0; g < n; ++g) {
        for (size_t h = 0; h < n; ++h) {
            if (table_[g][h] >= n) throw std::invalid_argument("GroupAction: table entry out of range");
            if (table_[g][h] == identity_) inverse_[g] = h;
        }
        if (inverse_[g] == n) throw std::invalid_argument("GroupAction: element without inverse");
    }

    // Table consistent with the matrices, both orientations (abelian).
    for (size_t g = 0; g < n; ++g)
        for (size_t h = 0; h < n; ++h) {
            if (table_[g][h] != table_[h][g]) throw std::invalid_argument("GroupAction: table is not abelian");
            if (elements_[g].dual * elements_[h].dual != elements_[table_[g][h]].dual)
                throw std::invalid_argument("GroupAction: matrices inconsistent with the table");
        }

    // Generators generate.
    std::vector<bool> reached(n, false);
    reached[identity_] = true;
    std::vector<size_t> frontier{identity_};
    while (!frontier.empty()) {
        size_t g = frontier.back();
        frontier.pop_back();
        for (size_t s : generators_) {
            if (s >= n) throw std::invalid_argument("GroupAction: generator index out of range");
            size_t gh = table_[g][s];
            if (!reached[gh]) {
                reached[gh] = true;
                frontier.push_back(gh);
            }
        }
    }
    if (std::find(reached.begin(), reached.end(), false) != reached.end())
        throw std::invalid_argument("GroupAction: generators do not generate the group");
}

Subgroup GroupAction::subgroup(std::vector<size_t> indices) const {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    for (size_t g : indices)
        if (g >= order()) throw std::invalid_argument("subgroup: element index out of range");
    if (!std::binary_search(indices.begin(), indices.end(), identity_))
        throw std::invalid_argument("subgroup: missing identity");
    for (size_t g : indices)
        for (size_t h : indices)
            if (!std::binary_search(indices.begin(), indices.end(), table_[g][h]))
                throw std::invalid_argument("subgroup: not closed under multiplication");
    return Subgroup{std::move(indices)};
}

Subgroup GroupAction::generated_subgroup(size_t g) const {
    if (g >= order()) throw std::invalid_argument("generated_subgroup: index out of range");
    std::vector<size_t> idx{identity_};
    size_t cur = g;
    while (cur != identity_) {
        idx.push_back(cur);
        cur = table_[cur][g];
    }
    return subgroup(std::move(idx));
}

Subgroup GroupAction::full_subgroup() const {
    std::vector<size_t> idx(order());
    for (size_t i = 0; i < order(); ++i) idx[i] = i;
    return Subgroup{std::move(idx)};
}

void GroupAction::check_poly(const Polynomial& f) const {
    if (&f.field() != field_ || f.nvars() != dim_)
        throw std::invalid_argument("polynomial does not live in this action's ring");
}

Polynomial GroupAction::act_poly(size_t g, const Polynomial& f) const {
    check_poly(f);
    if (g >= order()) throw std::invalid_argument("act_poly: element index out of range");
    return f.substitute_linear(elements_[g].dual);
}

Point GroupAction::act_point(size_t g, const Point& v) const {
    if (v.size() != dim_) throw std::invalid_argument("act_point: wrong dimension");
    std::vector<uint32_t> in(dim_), out(dim_);
    for (uint32_t i = 0; i < dim_; ++i) {
        if (&v[i].field() != field_) throw std::invalid_argument("act_point: mismatched fields");
        in[i] = v[i].code();
    }
    act_point_codes(g, in.data(), out.data());
    Point w;
    w.reserve(dim_);
    for (uint32_t i = 0; i < dim_; ++i) w.push_back(FieldElement(*field_, out[i]));
    return w;
}

void GroupAction::act_point_codes(size_t g, const uint32_t* in, uint32_t* out) const {
    if (g >= order()) throw std::invalid_argument("act_point: element index out of range");
    elements_[inverse_[g]].dual.apply_codes(in, out);
}

std::vector<Point> GroupAction::orbit(const Point& v) const {
    std::vector<Point> images;
    for (size_t g = 0; g < order(); ++g) images.push_back(act_point(g, v));
    auto less = [](const Point& a, const Point& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i].code() != b[i].code()) return a[i].code() < b[i].code();
        return false;
    };
    auto eq = [](const Point& a, const Point& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i].code() != b[i].code()) return false;
        return true;
    };
    std::sort(images.begin(), images.end(), less);
    images.erase(std::unique(images.begin(), images.end(), eq), images.end());
    return images;
}

Polynomial GroupAction::transfer_full(const Polynomial& f) const {
    check_poly(f);
    Polynomial acc(*field_, dim_);
    for (size_t g = 0; g < order(); ++g) acc = acc + act_poly(g, f);
    return acc;
}

Polynomial GroupAction::transfer_relative(const Subgroup& M, const Polynomial& f) const {
    check_poly(f);
    if (!is_invariant_under(M, f))
        throw std::invalid_argument("transfer_relative: polynomial is not invariant under the subgroup");
    std::vector<bool> covered(order(), false);
    Polynomial acc(*field_, dim_);
    for (size_t g = 0; g < order(); ++g) {
        if (covered[g]) continue;
        for (size_t m : M.indices) covered[table_[g][m]] = true;
        acc = acc + act_poly(g, f);
    }
    return acc;
}

Polynomial GroupAction::norm(const Subgroup& H, const Polynomial& f) const {
    check_poly(f);
    Polynomial acc = Polynomial::constant(*field_, dim_, field_->one());
    for (size_t g : H.indices) acc = acc * act_poly(g, f);
    return acc;
}

Polynomial GroupAction::orbit_sum(const Monomial& m) const {
    Polynomial mono = Polynomial::term(*field_, dim_, m, field_->one());
    std::vector<Polynomial> images;
    for (size_t g = 0; g < order(); ++g) {
        Polynomial img = act_poly(g, mono);
        if (std::find(images.begin(), images.end(), img) == images.end()) images.push_back(img);
    }
    Polynomial acc(*field_, dim_);
    for (const auto& img : images) acc = acc + img;
    return acc;
}

bool GroupAction::is_invariant(const Polynomial& f) const {
    check_poly(f);
    for (size_t g : generators_)
        if (act_poly(g, f) != f) return false;
    return true;
}

bool GroupAction::is_invariant_under(const Subgroup& H, const Polynomial& f) const {
    check_poly(f);
    for (size_t g : H.indices)
        if (act_poly(g, f) != f) return false;
    return true;
}

}  // namespace modsep
