#include "modsep/reps.hpp"

#include <numeric>
#include <stdexcept>

namespace modsep {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

uint32_t parse_uint(std::string_view s, const std::string& what) {
    if (s.empty()) bad(what + ": empty number");
    uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') bad(what + ": expected a number, got '" + std::string(s) + "'");
        v = v * 10 + uint64_t(c - '0');
        if (v > 0xffffffffULL) bad(what + ": number out of range");
    }
    return uint32_t(v);
}

// The Klein four table over element order [1, s1, s2, s3]: every non-identity
// element is an involution and the product of two distinct ones is the third.
std::vector<std::vector<size_t>> klein_table() {
    std::vector<std::vector<size_t>> t(4, std::vector<size_t>(4));
    for (size_t i = 0; i < 4; ++i) {
        t[0][i] = t[i][0] = i;
        t[i][i] = 0;
    }
    t[1][2] = t[2][1] = 3;
    t[1][3] = t[3][1] = 2;
    t[2][3] = t[3][2] = 1;
    return t;
}

void require_involutions(const Matrix& a, const Matrix& b, const Matrix& c) {
    const Matrix id = Matrix::identity(a.field(), a.rows());
    if (a * a != id || b * b != id || c * c != id)
        throw std::logic_error("Klein builder: generator is not an involution");
    if (a == id || b == id || c == id || a == b || a == c || b == c)
        throw std::logic_error("Klein builder: matrices do not give a faithful action");
}

GroupAction make_klein(const FiniteField& field, uint32_t dim, Matrix s1, Matrix s2, Matrix s3,
                       std::vector<size_t> generators) {
    require_involutions(s1, s2, s3);
    std::vector<GroupElement> els;
    els.push_back({"1", Matrix::identity(field, dim)});
    els.push_back({"s1", std::move(s1)});
    els.push_back({"s2", std::move(s2)});
    els.push_back({"s3", std::move(s3)});
    return GroupAction(field, dim, std::move(els), klein_table(), std::move(generators));
}

// Dual matrices of klein-ii: s1.x_i = x_i + x_{n+i} for i <= n, s3.x_i =
// x_i + lambda x_{n+i} + x_{n+i+1} for i <= n-1, s3.x_n = x_n + lambda x_{2n},
// and s2 = s1 s3 (all indices 1-based).
std::pair<Matrix, Matrix> klein_ii_generators(const FiniteField& field, uint32_t n, uint32_t lam) {
    const uint32_t one = field.one().code();
    Matrix s1 = Matrix::identity(field, 2 * n);
    for (uint32_t i = 0; i < n; ++i) s1.at(i, n + i) = one;
    Matrix s3 = Matrix::identity(field, 2 * n);
    for (uint32_t i = 0; i + 1 < n; ++i) {
        s3.at(i, n + i) = lam;
        s3.at(i, n + i + 1) = one;
    }
    s3.at(n - 1, 2 * n - 1) = lam;
    return {std::move(s1), std::move(s3)};
}

Matrix delete_coordinate(const Matrix& a, uint32_t drop) {
    const uint32_t d = a.rows() - 1;
    Matrix b(a.field(), d, d);
    for (uint32_t r = 0, br = 0; r < a.rows(); ++r) {
        if (r == drop) continue;
        for (uint32_t c = 0, bc = 0; c < a.cols(); ++c) {
            if (c == drop) continue;
            b.at(br, bc) = a.at(r, c);
            ++bc;
        }
        ++br;
    }
    return b;
}

GroupAction build_cyclic(const ModuleSpec& spec, const FiniteField& field) {
    const uint32_t n = spec.n, p = spec.p, m = spec.m;
    const uint32_t one = field.one().code();
    const FieldElement lam = field.primitive_root_of_unity(m);
    const uint32_t lam_inv = field.inv_code(lam.code());

    Matrix s = Matrix::identity(field, n);
    for (uint32_t i = 1; i < n; ++i) s.at(i, i - 1) = one;
    Matrix r(field, n, n);
    for (uint32_t i = 0; i < n; ++i) r.at(i, i) = lam_inv;

    const Matrix id = Matrix::identity(field, n);
    std::vector<Matrix> s_pow{id}, r_pow{id};
    for (uint32_t a = 1; a < p; ++a) s_pow.push_back(s_pow.back() * s);
    for (uint32_t b = 1; b < m; ++b) r_pow.push_back(r_pow.back() * r);
    if (s_pow.back() * s != id || r_pow.back() * r != id)
        throw std::logic_error("cyclic builder: generator order mismatch");
    if (s * r != r * s) throw std::logic_error("cyclic builder: generators do not commute");

    std::vector<GroupElement> els;
    els.reserve(size_t(p) * m);
    for (uint32_t a = 0; a < p; ++a)
        for (uint32_t b = 0; b < m; ++b) {
            std::string label;
            if (a > 0) label = a == 1 ? "s" : "s^" + std::to_string(a);
            if (b > 0) {
                if (!label.empty()) label += "*";
                label += b == 1 ? "r" : "r^" + std::to_string(b);
            }
            if (label.empty()) label = "1";
            els.push_back({std::move(label), s_pow[a] * r_pow[b]});
        }

    if (n >= 2) {
        for (size_t i = 1; i < els.size(); ++i)
            if (els[i].dual == id) throw std::logic_error("cyclic builder: action is not faithful");
    }

    const size_t order = size_t(p) * m;
    std::vector<std::vector<size_t>> table(order, std::vector<size_t>(order));
    for (uint32_t a1 = 0; a1 < p; ++a1)
        for (uint32_t b1 = 0; b1 < m; ++b1)
            for (uint32_t a2 = 0; a2 < p; ++a2)
                for (uint32_t b2 = 0; b2 < m; ++b2)
                    table[a1 * m + b1][a2 * m + b2] = ((a1 + a2) % p) * size_t(m) + (b1 + b2) % m;

    return GroupAction(field, n, std::move(els), std::move(table), {m, 1});
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::klein_ii: return "klein-ii";
        case Family::klein_iii: return "klein-iii";
        case Family::klein_iv: return "klein-iv";
        case Family::klein_v: return "klein-v";
        case Family::klein_regular: return "klein-regular";
        case Family::cyclic: return "cyclic";
    }
    throw std::logic_error("unknown family");
}

ModuleSpec ModuleSpec::parse(std::string_view text) {
    const size_t colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    ModuleSpec spec;
    if (head == "klein-ii") spec.family = Family::klein_ii;
    else if (head == "klein-iii") spec.family = Family::klein_iii;
    else if (head == "klein-iv") spec.family = Family::klein_iv;
    else if (head == "klein-v") spec.family = Family::klein_v;
    else if (head == "klein-regular") spec.family = Family::klein_regular;
    else if (head == "cyclic") spec.family = Family::cyclic;
    else bad("unknown module family '" + std::string(head) + "'");

    bool saw_n = false, saw_p = false, saw_m = false, saw_lambda = false;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (!rest.empty()) {
            const size_t comma = rest.find(',');
            std::string_view item = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            const size_t eq = item.find('=');
            if (eq == std::string_view::npos) bad("spec item '" + std::string(item) + "' is not key=value");
            const std::string_view key = item.substr(0, eq);
            const std::string_view value = item.substr(eq + 1);
            if (key == "n") {
                spec.n = parse_uint(value, "n");
                saw_n = true;
            } else if (key == "lambda" && spec.family == Family::klein_ii) {
                spec.lambda = std::string(value);
                saw_lambda = true;
            } else if (key == "p" && spec.family == Family::cyclic) {
                spec.p = parse_uint(value, "p");
                saw_p = true;
            } else if (key == "m" && spec.family == Family::cyclic) {
                spec.m = parse_uint(value, "m");
                saw_m = true;
            } else {
                bad("spec key '" + std::string(key) + "' is not valid for " + std::string(head));
            }
        }
    }

    switch (spec.family) {
        case Family::klein_ii:
            if (!saw_n || !saw_lambda) bad("klein-ii needs n=... and lambda=...");
            break;
        case Family::klein_iii:
        case Family::klein_iv:
        case Family::klein_v:
            if (!saw_n) bad(std::string(head) + " needs n=...");
            break;
        case Family::klein_regular:
            if (saw_n) bad("klein-regular takes no parameters");
            break;
        case Family::cyclic:
            if (!saw_p || !saw_m || !saw_n) bad("cyclic needs p=..., m=..., n=...");
            break;
    }
    return spec;
}

std::string ModuleSpec::to_string() const {
    std::string s(family_name(family));
    switch (family) {
        case Family::klein_ii:
            s += ":n=" + std::to_string(n) + ",lambda=" + lambda;
            break;
        case Family::klein_iii:
        case Family::klein_iv:
        case Family::klein_v:
            s += ":n=" + std::to_string(n);
            break;
        case Family::klein_regular:
            break;
        case Family::cyclic:
            s += ":p=" + std::to_string(p) + ",m=" + std::to_string(m) + ",n=" + std::to_string(n);
            break;
    }
    return s;
}

uint32_t ModuleSpec::dimension() const {
    switch (family) {
        case Family::klein_ii:
        case Family::klein_iii: return 2 * n;
        case Family::klein_iv:
        case Family::klein_v: return 2 * n - 1;
        case Family::klein_regular: return 4;
        case Family::cyclic: return n;
    }
    throw std::logic_error("unknown family");
}

void ModuleSpec::validate(const FiniteField& field) const {
    switch (family) {
        case Family::klein_ii:
        case Family::klein_iii:
        case Family::klein_iv:
        case Family::klein_v:
            if (field.characteristic() != 2) bad("Klein modules need characteristic 2, not " + field.name());
            if (n < 2) bad(std::string(family_name(family)) + " needs n >= 2");
            if (family == Family::klein_ii) {
                try {
                    (void)field.parse(lambda);
                } catch (const std::exception& e) {
                    bad("lambda '" + lambda + "' is not an element of the field " + field.name() +
                        " (" + e.what() + ")");
                }
            }
            break;
        case Family::klein_regular:
            if (field.characteristic() != 2) bad("klein-regular needs characteristic 2, not " + field.name());
            break;
        case Family::cyclic: {
            if (field.characteristic() != p) bad("cyclic:p=" + std::to_string(p) + " needs a field of characteristic p");
            if (m < 2) bad("cyclic needs m >= 2");
            if (std::gcd(p, m) != 1) bad("cyclic needs gcd(p, m) = 1");
            if (n < 1 || n > p) bad("cyclic needs 1 <= n <= p");
            if ((field.size() - 1) % m != 0) bad("F_" + field.name() + " has no primitive " + std::to_string(m) + "-th root of unity (m must divide q - 1)");
            break;
        }
    }
}

uint32_t cyclic_field_degree(uint32_t p, uint32_t m) {
    if (m < 2) bad("cyclic needs m >= 2");
    if (std::gcd(p, m) != 1) bad("cyclic needs gcd(p, m) = 1");
    uint64_t q = 1;
    for (uint32_t k = 1;; ++k) {
        q *= p;
        if (q > FiniteField::max_size)
            bad("no field of characteristic " + std::to_string(p) + " within the size cap has " +
                std::to_string(m) + "-th roots of unity");
        if ((q - 1) % m == 0) return k;
    }
}

const FiniteField& default_field(const ModuleSpec& spec) {
    if (spec.family == Family::cyclic) return make_field(spec.p, cyclic_field_degree(spec.p, spec.m));
    if (spec.family == Family::klein_ii && spec.lambda.find('t') != std::string::npos)
        return make_field(2, 2);
    return make_field(2, 1);
}

GroupAction build_action(const ModuleSpec& spec, const FiniteField& field) {
    spec.validate(field);
    const uint32_t n = spec.n;
    switch (spec.family) {
        case Family::klein_ii: {
            const uint32_t lam = field.parse(spec.lambda).code();
            auto [s1, s3] = klein_ii_generators(field, n, lam);
            Matrix s2 = s1 * s3;
            return make_klein(field, 2 * n, std::move(s1), std::move(s2), std::move(s3), {1, 3});
        }
        case Family::klein_iii: {
            // lambda = 0 with the two displayed generators interchanged.
            auto [a, b] = klein_ii_generators(field, n, 0);
            Matrix s1 = std::move(b), s3 = std::move(a);
            Matrix s2 = s1 * s3;
            return make_klein(field, 2 * n, std::move(s1), std::move(s2), std::move(s3), {1, 3});
        }
        case Family::klein_iv: {
            // Submodule of klein-ii(lambda = 1) spanned by all basis vectors
            // except e_{n+1}; the deleted-coordinate matrices must coincide
            // with the direct block forms of s1 and s2.
            const uint32_t one = field.one().code();
            auto [big1, big3] = klein_ii_generators(field, n, one);
            Matrix big2 = big1 * big3;
            Matrix s1 = delete_coordinate(big1, n);
            Matrix s2 = delete_coordinate(big2, n);
            Matrix s3 = delete_coordinate(big3, n);
            const uint32_t d = 2 * n - 1;
            Matrix e1 = Matrix::identity(field, d);
            for (uint32_t i = 1; i < n; ++i) e1.at(i, n + i - 1) = one;
            Matrix e2 = Matrix::identity(field, d);
            for (uint32_t i = 0; i + 1 < n; ++i) e2.at(i, n + i) = one;
            if (s1 != e1 || s2 != e2)
                throw std::logic_error("klein-iv builder: deleted-coordinate matrices disagree with the block forms");
            return make_klein(field, d, std::move(s1), std::move(s2), std::move(s3), {1, 2});
        }
        case Family::klein_v: {
            // s1.x_i = x_i + x_{n-1+i} and s2.x_i = x_i + x_{n+i} for
            // 1 <= i <= n-1 in the module's own numbering x_1..x_{2n-1}.
            const uint32_t one = field.one().code();
            const uint32_t d = 2 * n - 1;
            Matrix s1 = Matrix::identity(field, d);
            Matrix s2 = Matrix::identity(field, d);
            for (uint32_t i = 0; i + 1 < n; ++i) {
                s1.at(i, n - 1 + i) = one;
                s2.at(i, n + i) = one;
            }
            Matrix s3 = s1 * s2;
            return make_klein(field, d, std::move(s1), std::move(s2), std::move(s3), {1, 2});
        }
        case Family::klein_regular: {
            const uint32_t one = field.one().code();
            auto table = klein_table();
            std::vector<GroupElement> els;
            const char* labels[4] = {"1", "s1", "s2", "s3"};
            for (size_t g = 0; g < 4; ++g) {
                Matrix d(field, 4, 4);
                for (uint32_t i = 0; i < 4; ++i) d.at(i, uint32_t(table[g][i])) = one;
                els.push_back({labels[g], std::move(d)});
            }
            return GroupAction(field, 4, std::move(els), std::move(table), {1, 2});
        }
        case Family::cyclic:
            return build_cyclic(spec, field);
    }
    throw std::logic_error("unknown family");
}

Polynomial Surjection::pullback(const Polynomial& f) const {
    if (f.nvars() != target.dimension())
        throw std::invalid_argument("pullback: polynomial does not live on the target module");
    Polynomial g(f.field(), source.dimension());
    for (const auto& [mono, coeff] : f.terms()) {
        Monomial lifted(source.dimension(), 0);
        for (size_t j = 0; j < mono.size(); ++j) lifted[kept[j]] = mono[j];
        g.add_term(lifted, coeff);
    }
    return g;
}

void Surjection::apply_codes(const uint32_t* in, uint32_t* out) const {
    for (size_t j = 0; j < kept.size(); ++j) out[j] = in[kept[j]];
}

Surjection surjection(const ModuleSpec& spec) {
    Surjection phi;
    phi.source = spec;
    phi.target = spec;
    switch (spec.family) {
        case Family::klein_ii:
        case Family::klein_iii: {
            if (spec.n < 3) bad("surjection: " + spec.to_string() + " is a base case");
            phi.target.n = spec.n - 1;
            for (uint32_t c = 1; c < spec.n; ++c) phi.kept.push_back(c);
            for (uint32_t c = spec.n + 1; c < 2 * spec.n; ++c) phi.kept.push_back(c);
            return phi;
        }
        case Family::klein_v: {
            if (spec.n < 3) bad("surjection: " + spec.to_string() + " is a base case");
            phi.target.n = spec.n - 1;
            for (uint32_t c = 1; c + 1 < spec.n; ++c) phi.kept.push_back(c);
            for (uint32_t c = spec.n; c < 2 * spec.n - 1; ++c) phi.kept.push_back(c);
            return phi;
        }
        case Family::cyclic: {
            if (spec.n < 2) bad("surjection: " + spec.to_string() + " is a base case");
            phi.target.n = spec.n - 1;
            for (uint32_t c = 0; c + 1 < spec.n; ++c) phi.kept.push_back(c);
            return phi;
        }
        case Family::klein_iv:
        case Family::klein_regular:
            bad("surjection: " + spec.to_string() + " has no recursive sibling");
    }
    throw std::logic_error("unknown family");
}

Polynomial restrict_to_submodule(const Polynomial& f, const ModuleSpec& spec) {
    if (spec.family != Family::klein_ii)
        throw std::invalid_argument("restrict_to_submodule: spec must be klein-ii");
    const FiniteField& field = f.field();
    if (field.parse(spec.lambda) != field.one())
        throw std::invalid_argument("restrict_to_submodule: lambda must be 1");
    const uint32_t n = spec.n;
    if (f.nvars() != 2 * n)
        throw std::invalid_argument("restrict_to_submodule: polynomial does not live on the klein-ii module");
    Polynomial g(field, 2 * n - 1);
    for (const auto& [mono, coeff] : f.terms()) {
        if (mono[n] > 0) continue;  // x_{n+1} -> 0
        Monomial reduced(2 * n - 1, 0);
        for (uint32_t i = 0; i < 2 * n; ++i) {
            if (i == n) continue;
            reduced[i < n ? i : i - 1] = mono[i];
        }
        g.add_term(reduced, coeff);
    }
    return g;
}

}  // namespace modsep
