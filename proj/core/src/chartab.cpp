#include "b32/chartab.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "b32/util.hpp"

namespace b32 {

namespace {

using i64 = std::int64_t;
using u128 = unsigned __int128;

struct Fp {
    i64 p;
    i64 mul(i64 a, i64 b) const { return (i64)((u128)a * b % p); }
    i64 add(i64 a, i64 b) const { i64 r = a + b; return r >= p ? r - p : r; }
    i64 sub(i64 a, i64 b) const { i64 r = a - b; return r < 0 ? r + p : r; }
    i64 pow(i64 b, i64 e) const {
        i64 r = 1;
        b %= p;
        if (b < 0) b += p;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    i64 inv(i64 a) const { return pow(a, p - 2); }
    i64 sqrt(i64 a) const {
        a %= p;
        if (a < 0) a += p;
        if (a == 0) return 0;
        if (p % 4 == 3) return pow(a, (p + 1) / 4);
        i64 q = p - 1;
        int s = 0;
        while (q % 2 == 0) { q /= 2; ++s; }
        i64 z = 2;
        while (pow(z, (p - 1) / 2) == 1) ++z;
        i64 m = s, c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
        while (t != 1) {
            i64 t2 = t;
            int i = 0;
            while (t2 != 1) { t2 = mul(t2, t2); ++i; }
            i64 b = c;
            for (int j = 0; j < m - i - 1; ++j) b = mul(b, b);
            m = i;
            c = mul(b, b);
            t = mul(t, c);
            r = mul(r, b);
        }
        check(mul(r, r) == a, "sqrt mod p failed (nonresidue)");
        return r;
    }
};

using Poly = std::vector<i64>;  // coefficients, low degree first

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul_plain(const Fp& F, const Poly& x, const Poly& y) {
    if (x.empty() || y.empty()) return {};
    Poly r(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i]) continue;
        for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(x[i], y[j]));
    }
    return r;
}

// a mod b in place (b nonzero)
void poly_rem(const Fp& F, Poly& a, const Poly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        i64 c = F.mul(a.back(), F.inv(b.back()));
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = F.sub(a[off + i], F.mul(c, b[i]));
        poly_trim(a);
    }
}

Poly poly_quo(const Fp& F, Poly a, const Poly& b) {
    Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size() && !a.empty()) {
        i64 c = F.mul(a.back(), F.inv(b.back()));
        std::size_t off = a.size() - b.size();
        q[off] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = F.sub(a[off + i], F.mul(c, b[i]));
        poly_trim(a);
    }
    check(a.empty(), "poly_quo: division not exact");
    poly_trim(q);
    return q;
}

Poly poly_mulmod(const Fp& F, const Poly& a, const Poly& b, const Poly& mod) {
    Poly r = poly_mul_plain(F, a, b);
    poly_rem(F, r, mod);
    return r;
}

Poly poly_gcd(const Fp& F, Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        poly_rem(F, a, b);
        std::swap(a, b);
    }
    if (!a.empty()) {
        i64 inv = F.inv(a.back());
        for (auto& c : a) c = F.mul(c, inv);
    }
    return a;
}

// all roots of a squarefree product of linear factors
void poly_roots(const Fp& F, Poly f, Rng& rng, std::vector<i64>& out) {
    poly_trim(f);
    if (f.size() <= 1) return;
    if (f.size() == 2) {
        out.push_back(F.mul(F.sub(0, f[0]), F.inv(f[1])));
        return;
    }
    {
        i64 inv = F.inv(f.back());
        for (auto& c : f) c = F.mul(c, inv);
    }
    while (true) {
        i64 shift = (i64)(rng.next() % (std::uint64_t)F.p);
        Poly acc{1};
        Poly b{shift, 1};
        i64 e = (F.p - 1) / 2;
        while (e) {
            if (e & 1) acc = poly_mulmod(F, acc, b, f);
            b = poly_mulmod(F, b, b, f);
            e >>= 1;
        }
        if (acc.empty()) continue;
        acc[0] = F.sub(acc[0], 1);
        poly_trim(acc);
        if (acc.empty()) continue;
        Poly g = poly_gcd(F, f, acc);
        if (g.size() <= 1 || g.size() == f.size()) continue;
        Poly q = poly_quo(F, f, g);
        poly_roots(F, g, rng, out);
        poly_roots(F, q, rng, out);
        return;
    }
}

struct FpMat {
    int n = 0;
    std::vector<i64> a;
    FpMat() = default;
    explicit FpMat(int n_) : n(n_), a((std::size_t)n_ * n_, 0) {}
    i64& at(int i, int j) { return a[(std::size_t)i * n + j]; }
    i64 at(int i, int j) const { return a[(std::size_t)i * n + j]; }
};

// reduced row echelon over F_p; drops zero rows, returns pivot columns
std::vector<int> rref(const Fp& F, std::vector<std::vector<i64>>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        i64 inv = F.inv(m[row][col]);
        for (std::size_t j = col; j < cols; ++j) m[row][j] = F.mul(m[row][j], inv);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            i64 c = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(c, m[row][j]));
        }
        pivots.push_back((int)col);
        ++row;
    }
    m.resize(row);
    return pivots;
}

// minimal polynomial of a diagonalizable matrix via Krylov subspaces
Poly min_poly(const Fp& F, const FpMat& B, Rng& rng) {
    int n = B.n;
    Poly m{1};
    for (int attempt = 0; attempt < 8 && (int)m.size() <= n; ++attempt) {
        std::vector<i64> v(n);
        for (auto& x : v) x = (i64)(rng.next() % (std::uint64_t)F.p);
        std::vector<std::vector<i64>> rows;
        std::vector<int> pivcol;
        std::vector<Poly> poly_of;
        std::vector<i64> cur = v;
        Poly curp{1};
        while (true) {
            std::vector<i64> red = cur;
            Poly redp = curp;
            for (std::size_t r0 = 0; r0 < rows.size(); ++r0) {
                i64 c = red[pivcol[r0]];
                if (!c) continue;
                for (int j = 0; j < n; ++j) red[j] = F.sub(red[j], F.mul(c, rows[r0][j]));
                if (redp.size() < poly_of[r0].size()) redp.resize(poly_of[r0].size(), 0);
                for (std::size_t j = 0; j < poly_of[r0].size(); ++j)
                    redp[j] = F.sub(redp[j], F.mul(c, poly_of[r0][j]));
            }
            int pc = -1;
            for (int j = 0; j < n; ++j)
                if (red[j]) { pc = j; break; }
            if (pc < 0) {
                poly_trim(redp);
                if (!redp.empty()) {
                    Poly g = poly_gcd(F, m, redp);
                    m = poly_mul_plain(F, m, poly_quo(F, redp, g));
                }
                break;
            }
            i64 inv = F.inv(red[pc]);
            for (int j = 0; j < n; ++j) red[j] = F.mul(red[j], inv);
            for (auto& c : redp) c = F.mul(c, inv);
            rows.push_back(red);
            pivcol.push_back(pc);
            poly_of.push_back(redp);
            std::vector<i64> nxt(n, 0);
            for (int i = 0; i < n; ++i) {
                i64 acc = 0;
                for (int j = 0; j < n; ++j) acc = F.add(acc, F.mul(B.at(i, j), cur[j]));
                nxt[i] = acc;
            }
            cur = std::move(nxt);
            curp.insert(curp.begin(), 0);
        }
    }
    i64 inv = F.inv(m.back());
    for (auto& c : m) c = F.mul(c, inv);
    return m;
}

}  // namespace

int CharacterTable::power_map(int c, std::int64_t t) const {
    const auto& cl = classes[c];
    std::int64_t m = t % cl.order;
    if (m < 0) m += cl.order;
    return cl.power_class[(std::size_t)m];
}

std::vector<int> CharacterTable::regular_classes_2() const {
    std::vector<int> out;
    for (int c = 0; c < num_classes(); ++c)
        if (classes[c].order % 2 == 1) out.push_back(c);
    return out;
}

std::vector<int> CharacterTable::singular_classes_2() const {
    std::vector<int> out;
    for (int c = 0; c < num_classes(); ++c)
        if (classes[c].order % 2 == 0) out.push_back(c);
    return out;
}

long CharacterTable::exponent() const {
    long e = 1;
    for (auto& c : classes) e = lcm64(e, c.order);
    return e;
}

Cyclo CharacterTable::inner(int chi, int psi) const {
    Cyclo s;
    for (int c = 0; c < num_classes(); ++c)
        s += (irr[chi][c] * irr[psi][c].conj()).scaled(classes[c].size);
    Cyclo out;
    check(s.divide_exact(group_order, out), "inner product not integral (corrupt table)");
    return out;
}

void CharacterTable::validate() const {
    int k = num_chars(), r = num_classes();
    check(k == r, "character count != class count");
    mpz_class sz = 0;
    for (auto& c : classes) sz += c.size;
    check(sz == group_order, "class sizes do not sum to |G|");
    mpz_class degsum = 0;
    for (int i = 0; i < k; ++i) degsum += degree(i) * degree(i);
    check(degsum == group_order, "sum of squared degrees != |G|");
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            Cyclo ip = inner(i, j);
            if (i == j)
                check(ip == Cyclo(1), "row orthogonality fails at character " + std::to_string(i));
            else if (!ip.is_zero())
                throw computation_error("row orthogonality fails at pair (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
        }
    for (int c = 0; c < r; ++c)
        for (int d = c; d < r; ++d) {
            Cyclo s;
            for (int i = 0; i < k; ++i) s += irr[i][c] * irr[i][d].conj();
            if (c == d) {
                check(s == Cyclo(mpz_class(group_order / classes[c].size)),
                      "column orthogonality fails at class " + std::to_string(c));
            } else if (!s.is_zero()) {
                throw computation_error("column orthogonality fails at class pair (" + std::to_string(c) +
                                        "," + std::to_string(d) + ")");
            }
        }
    for (long t = 0; t < classes[identity_class].order; ++t)
        check(power_map(identity_class, t) == identity_class, "identity power map broken");
}

CharacterTable character_table(const GroupPtr& g, const std::string& id) {
    auto cd = conjugacy_data(*g);
    return character_table(*g, cd, id.empty() ? g->id() : id);
}

CharacterTable character_table(const FiniteGroup& g, const ConjugacyData& cd, const std::string& id,
                               int max_classes) {
    int r = cd.num_classes();
    check(r <= max_classes,
          "class count " + std::to_string(r) + " exceeds cap " + std::to_string(max_classes));

    CharacterTable t;
    t.group_id = id;
    t.group_order = (long)g.order();
    t.provenance = Provenance::Computed;

    std::vector<int> ord(r);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        if (cd.order[a] != cd.order[b]) return cd.order[a] < cd.order[b];
        if (cd.size[a] != cd.size[b]) return cd.size[a] < cd.size[b];
        return cd.rep[a] < cd.rep[b];
    });
    std::vector<int> pos(r);
    for (int i = 0; i < r; ++i) pos[ord[i]] = i;
    t.classes.resize(r);
    for (int i = 0; i < r; ++i) {
        int c = ord[i];
        TableClass tc;
        tc.size = cd.size[c];
        tc.order = cd.order[c];
        tc.inverse_class = pos[cd.inverse_class[c]];
        tc.power_class.resize(cd.order[c]);
        for (long tt = 0; tt < cd.order[c]; ++tt) tc.power_class[tt] = pos[cd.power_class[c][tt]];
        tc.group_class = c;
        t.classes[i] = std::move(tc);
    }
    t.identity_class = 0;
    check(t.classes[0].order == 1, "identity class ordering broken");

    ClassMult cm = class_mult_from_group(g, cd, t);

    long expn = t.exponent();
    i64 p = 0;
    {
        i64 lo = 1;
        while ((u128)lo * lo <= (u128)4 * g.order()) ++lo;
        for (i64 c = 1;; ++c) {
            i64 cand = (i64)expn * c + 1;
            if (cand < lo) continue;
            if (!is_prime64(cand)) continue;
            if (cand <= (i64)g.order() && (i64)g.order() % cand == 0) continue;
            p = cand;
            break;
        }
    }
    Fp F{p};
    Rng rng(0xb32c0deULL ^ (std::uint64_t)g.order());

    std::vector<std::vector<std::vector<i64>>> spaces;
    {
        std::vector<std::vector<i64>> full;
        for (int i = 0; i < r; ++i) {
            std::vector<i64> e(r, 0);
            e[i] = 1;
            full.push_back(std::move(e));
        }
        spaces.push_back(std::move(full));
    }
    for (int mi = 0; mi < r; ++mi) {
        bool done = true;
        for (auto& s : spaces)
            if (s.size() > 1) { done = false; break; }
        if (done) break;
        if (mi == t.identity_class) continue;
        FpMat M(r);
        for (int kk = 0; kk < r; ++kk)
            for (int j = 0; j < r; ++j) M.at(kk, j) = cm.at(mi, kk, j) % p;
        std::vector<std::vector<std::vector<i64>>> next;
        for (auto& s : spaces) {
            if (s.size() == 1) {
                next.push_back(s);
                continue;
            }
            int dim = (int)s.size();
            std::vector<std::vector<i64>> ech = s;
            std::vector<int> piv = rref(F, ech);
            check((int)ech.size() == dim, "subspace basis degenerate (bug)");
            FpMat B(dim);
            for (int j = 0; j < dim; ++j) {
                std::vector<i64> w(r, 0);
                for (int row = 0; row < r; ++row) {
                    i64 acc = 0;
                    for (int col = 0; col < r; ++col) {
                        i64 sv = s[j][col];
                        if (sv) acc = F.add(acc, F.mul(M.at(row, col), sv));
                    }
                    w[row] = acc;
                }
                for (int i = 0; i < dim; ++i) {
                    i64 c = w[piv[i]];
                    B.at(i, j) = c;
                    if (c)
                        for (int col = 0; col < r; ++col) w[col] = F.sub(w[col], F.mul(c, ech[i][col]));
                }
                for (int col = 0; col < r; ++col) check(w[col] == 0, "subspace not invariant (bug)");
            }
            Poly mp = min_poly(F, B, rng);
            std::vector<i64> roots;
            poly_roots(F, mp, rng, roots);
            std::sort(roots.begin(), roots.end());
            if (roots.size() <= 1) {
                next.push_back(s);
                continue;
            }
            for (i64 lam : roots) {
                std::vector<std::vector<i64>> mm(dim, std::vector<i64>(dim));
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) mm[i][j] = i == j ? F.sub(B.at(i, j), lam) : B.at(i, j);
                std::vector<int> pv = rref(F, mm);
                std::vector<bool> is_piv(dim, false);
                for (int c : pv) is_piv[c] = true;
                std::vector<std::vector<i64>> sub;
                for (int freecol = 0; freecol < dim; ++freecol) {
                    if (is_piv[freecol]) continue;
                    std::vector<i64> x(dim, 0);
                    x[freecol] = 1;
                    for (std::size_t rr = 0; rr < mm.size(); ++rr)
                        x[pv[rr]] = F.sub(0, mm[rr][freecol]);
                    std::vector<i64> v(r, 0);
                    for (int j = 0; j < dim; ++j) {
                        if (!x[j]) continue;
                        for (int col = 0; col < r; ++col)
                            v[col] = F.add(v[col], F.mul(x[j], ech[j][col]));
                    }
                    sub.push_back(std::move(v));
                }
                check(!sub.empty(), "empty eigenspace (bug)");
                next.push_back(std::move(sub));
            }
        }
        spaces = std::move(next);
    }
    for (auto& s : spaces) check(s.size() == 1, "class algebra not fully split (bug)");
    check((int)spaces.size() == r, "wrong number of eigenvectors (bug)");

    std::vector<std::vector<i64>> omega(r, std::vector<i64>(r));
    for (int s = 0; s < r; ++s) {
        const auto& v = spaces[s][0];
        i64 vid = (v[t.identity_class] % p + p) % p;
        check(vid != 0, "eigenvector vanishes at identity (bug)");
        i64 inv = F.inv(vid);
        for (int c = 0; c < r; ++c) omega[s][c] = F.mul((v[c] % p + p) % p, inv);
    }

    std::vector<i64> deg(r);
    for (int s = 0; s < r; ++s) {
        i64 acc = 0;
        for (int c = 0; c < r; ++c) {
            i64 term = F.mul(omega[s][c], omega[s][t.classes[c].inverse_class]);
            acc = F.add(acc, F.mul(term, F.inv(t.classes[c].size % p)));
        }
        i64 d2 = F.mul((i64)(g.order() % (std::size_t)p), F.inv(acc));
        i64 d = F.sqrt(d2);
        if (d > p / 2) d = p - d;
        check(d >= 1 && (u128)d * d <= (u128)g.order(), "degree recovery out of range");
        deg[s] = d;
    }
    {
        mpz_class total = 0;
        for (int s = 0; s < r; ++s) total += mpz_class((long)deg[s]) * (long)deg[s];
        check(total == t.group_order, "degree squares do not sum to |G| (bug)");
    }

    std::vector<std::vector<i64>> valmod(r, std::vector<i64>(r));
    for (int s = 0; s < r; ++s)
        for (int c = 0; c < r; ++c)
            valmod[s][c] = F.mul(omega[s][c], F.mul(deg[s], F.inv(t.classes[c].size % p)));

    i64 theta = 0;
    {
        auto fac = factorize(p - 1);
        for (i64 gcand = 2;; ++gcand) {
            bool ok = true;
            for (auto [q, e] : fac) {
                (void)e;
                if (F.pow(gcand, (p - 1) / q) == 1) { ok = false; break; }
            }
            if (ok) {
                theta = F.pow(gcand, (p - 1) / expn);
                break;
            }
        }
    }

    t.irr.assign(r, std::vector<Cyclo>(r));
    for (int s = 0; s < r; ++s) {
        for (int c = 0; c < r; ++c) {
            long n = t.classes[c].order;
            if (n == 1) {
                t.irr[s][c] = Cyclo(mpz_class((long)deg[s]));
                continue;
            }
            i64 thn = F.pow(theta, expn / n);
            i64 thn_inv = F.inv(thn);
            i64 ninv = F.inv(n % p);
            Cyclo val;
            for (long j = 0; j < n; ++j) {
                i64 mu = 0;
                for (long tt = 0; tt < n; ++tt) {
                    int pc = t.power_map(c, tt);
                    mu = F.add(mu, F.mul(valmod[s][pc], F.pow(thn_inv, (i64)(j * tt % n))));
                }
                mu = F.mul(mu, ninv);
                check(mu <= deg[s], "root multiplicity exceeds degree (bug)");
                if (mu) val += Cyclo::root(n, j).scaled(mpz_class((long)mu));
            }
            t.irr[s][c] = val;
        }
    }

    std::vector<int> corder(r);
    std::iota(corder.begin(), corder.end(), 0);
    std::sort(corder.begin(), corder.end(), [&](int a, int b) {
        if (deg[a] != deg[b]) return deg[a] < deg[b];
        for (int c = 0; c < r; ++c) {
            int s = t.irr[a][c].cmp(t.irr[b][c]);
            if (s != 0) return s < 0;
        }
        return false;
    });
    std::vector<std::vector<Cyclo>> sorted;
    sorted.reserve(r);
    for (int i : corder) sorted.push_back(std::move(t.irr[i]));
    t.irr = std::move(sorted);

    t.validate();
    return t;
}

ClassMult class_mult_from_group(const FiniteGroup& g, const ConjugacyData& cd,
                                const CharacterTable& t) {
    int r = t.num_classes();
    ClassMult cm;
    cm.r = r;
    cm.a.assign((std::size_t)r * r * r, 0);
    std::vector<int> tbl_of_cd(r);
    for (int i = 0; i < r; ++i) {
        check(t.classes[i].group_class >= 0, "table lost its group link");
        tbl_of_cd[t.classes[i].group_class] = i;
    }
    std::vector<int> tblclass_of_elt(g.order());
    for (std::size_t u = 0; u < g.order(); ++u) tblclass_of_elt[u] = tbl_of_cd[cd.class_of[u]];
    for (int k = 0; k < r; ++k) {
        std::size_t z0 = cd.rep[t.classes[k].group_class];
        for (std::size_t u = 0; u < g.order(); ++u) {
            int i = tblclass_of_elt[u];
            std::size_t v = g.mul(g.inv(u), z0);
            ++cm.at(i, tblclass_of_elt[v], k);
        }
    }
    return cm;
}

ClassMult class_mult_kronecker(const ClassMult& a, const ClassMult& b, const CharacterTable& t) {
    int r = t.num_classes();
    check((int)t.class_pair.size() == r, "not a composed table");
    ClassMult cm;
    cm.r = r;
    cm.a.assign((std::size_t)r * r * r, 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                auto [i1, i2] = t.class_pair[i];
                auto [j1, j2] = t.class_pair[j];
                auto [k1, k2] = t.class_pair[k];
                cm.at(i, j, k) = a.at(i1, j1, k1) * b.at(i2, j2, k2);
            }
    return cm;
}

ClassMult class_mult_from_table(const CharacterTable& t) {
    int r = t.num_classes();
    ClassMult cm;
    cm.r = r;
    cm.a.assign((std::size_t)r * r * r, 0);
    mpz_class deglcm = 1;
    for (int s = 0; s < r; ++s) deglcm = lcm(deglcm, t.degree(s));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                Cyclo acc;
                for (int s = 0; s < r; ++s) {
                    Cyclo term = t.irr[s][i] * t.irr[s][j] * t.irr[s][t.classes[k].inverse_class];
                    acc += term.scaled(deglcm / t.degree(s));
                }
                Cyclo scl = acc.scaled(mpz_class(t.classes[i].size) * t.classes[j].size);
                Cyclo out;
                check(scl.divide_exact(t.group_order * deglcm, out),
                      "class multiplication coefficient not integral (corrupt table)");
                check(out.is_rational(), "class multiplication coefficient not rational");
                cm.at(i, j, k) = out.rational().get_si();
            }
    return cm;
}

CharacterTable table_product(const std::shared_ptr<const CharacterTable>& a,
                             const std::shared_ptr<const CharacterTable>& b) {
    CharacterTable t;
    t.group_id = a->group_id + "x" + b->group_id;
    t.group_order = a->group_order * b->group_order;
    t.provenance = Provenance::Composed;
    t.factor1 = a;
    t.factor2 = b;
    int r1 = a->num_classes(), r2 = b->num_classes();
    std::vector<std::pair<int, int>> cp;
    for (int i = 0; i < r1; ++i)
        for (int j = 0; j < r2; ++j) cp.push_back({i, j});
    std::sort(cp.begin(), cp.end(), [&](auto x, auto y) {
        long ox = lcm64(a->classes[x.first].order, b->classes[x.second].order);
        long oy = lcm64(a->classes[y.first].order, b->classes[y.second].order);
        if (ox != oy) return ox < oy;
        std::int64_t sx = a->classes[x.first].size * b->classes[x.second].size;
        std::int64_t sy = a->classes[y.first].size * b->classes[y.second].size;
        if (sx != sy) return sx < sy;
        return x < y;
    });
    std::map<std::pair<int, int>, int> cidx;
    for (int i = 0; i < (int)cp.size(); ++i) cidx[cp[i]] = i;
    t.class_pair = cp;
    t.classes.resize(cp.size());
    for (int i = 0; i < (int)cp.size(); ++i) {
        auto [c1, c2] = cp[i];
        TableClass tc;
        tc.order = lcm64(a->classes[c1].order, b->classes[c2].order);
        tc.size = a->classes[c1].size * b->classes[c2].size;
        tc.inverse_class = cidx[{a->classes[c1].inverse_class, b->classes[c2].inverse_class}];
        tc.power_class.resize(tc.order);
        for (long tt = 0; tt < tc.order; ++tt)
            tc.power_class[tt] = cidx[{a->power_map(c1, tt), b->power_map(c2, tt)}];
        t.classes[i] = std::move(tc);
    }
    t.identity_class = cidx[{a->identity_class, b->identity_class}];

    std::vector<std::pair<int, int>> hp;
    for (int i = 0; i < a->num_chars(); ++i)
        for (int j = 0; j < b->num_chars(); ++j) hp.push_back({i, j});
    std::sort(hp.begin(), hp.end(), [&](auto x, auto y) {
        mpz_class dx = a->degree(x.first) * b->degree(x.second);
        mpz_class dy = a->degree(y.first) * b->degree(y.second);
        if (dx != dy) return dx < dy;
        return x < y;
    });
    t.char_pair = hp;
    t.irr.assign(hp.size(), std::vector<Cyclo>(cp.size()));
    for (int s = 0; s < (int)hp.size(); ++s)
        for (int c = 0; c < (int)cp.size(); ++c)
            t.irr[s][c] = a->irr[hp[s].first][cp[c].first] * b->irr[hp[s].second][cp[c].second];
    return t;
}

bool BlockData::has_char(int chi) const {
    return std::binary_search(chars.begin(), chars.end(), chi);
}

BlockPartition blocks_2(const CharacterTable& t) {
    int k = t.num_chars(), r = t.num_classes();
    std::int64_t odd = t.exponent();
    while (odd % 2 == 0) odd /= 2;
    Mod2Reducer red(odd);
    std::vector<std::vector<Gf2Field::El>> sig(k);
    for (int s = 0; s < k; ++s) {
        sig[s].resize(r);
        for (int c = 0; c < r; ++c) {
            Cyclo num = t.irr[s][c].scaled(mpz_class(t.classes[c].size));
            Cyclo omega;
            check(num.divide_exact(t.degree(s), omega),
                  "central character not integral at chi=" + std::to_string(s) +
                      " class=" + std::to_string(c));
            sig[s][c] = red.reduce(omega);
        }
    }
    std::map<std::vector<Gf2Field::El>, std::vector<int>> parts;
    for (int s = 0; s < k; ++s) parts[sig[s]].push_back(s);
    BlockPartition bp;
    bp.block_of_char.assign(k, -1);
    std::vector<std::vector<int>> groups;
    for (auto& [key, v] : parts) groups.push_back(v);
    std::sort(groups.begin(), groups.end(), [](auto& x, auto& y) { return x[0] < y[0]; });
    long v2g = 0;
    {
        mpz_class g = t.group_order;
        while (g % 2 == 0) {
            g /= 2;
            ++v2g;
        }
    }
    for (int b = 0; b < (int)groups.size(); ++b) {
        BlockData bd;
        bd.id = b;
        bd.chars = groups[b];
        bd.k = (int)bd.chars.size();
        long mind = LONG_MAX;
        for (int s : bd.chars) {
            mpz_class d = t.degree(s);
            long v = 0;
            while (d % 2 == 0) {
                d /= 2;
                ++v;
            }
            mind = std::min(mind, v);
        }
        bd.defect = (int)(v2g - mind);
        for (int s : bd.chars) bp.block_of_char[s] = b;
        for (int s : bd.chars) {
            bool triv = true;
            for (int c = 0; c < r; ++c)
                if (!(t.irr[s][c] == Cyclo(1))) { triv = false; break; }
            if (triv) {
                bd.principal = true;
                bp.principal_block = b;
            }
        }
        bp.blocks.push_back(std::move(bd));
    }
    return bp;
}

IntMat flatten_rows(const CharacterTable& t, const std::vector<std::vector<Cyclo>>& rows,
                    const std::vector<int>& cls) {
    std::vector<std::size_t> offs;
    std::size_t width = 0;
    for (int c : cls) {
        offs.push_back(width);
        width += Cyclo::basis_exponents(t.classes[c].order).size();
    }
    IntMat m(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t ci = 0; ci < cls.size(); ++ci) {
            auto coords = rows[i][ci].coordinates(t.classes[cls[ci]].order);
            for (std::size_t j = 0; j < coords.size(); ++j) m.at(i, offs[ci] + j) = coords[j];
        }
    return m;
}

IntMat flatten_values(const CharacterTable& t, const std::vector<int>& chars,
                      const std::vector<int>& cls) {
    std::vector<std::vector<Cyclo>> rows;
    rows.reserve(chars.size());
    for (int s : chars) {
        std::vector<Cyclo> row;
        for (int c : cls) row.push_back(t.irr[s][c]);
        rows.push_back(std::move(row));
    }
    return flatten_rows(t, rows, cls);
}

IntMat cartan_from_decomposition(const IntMat& dmat) { return dmat.transpose().mul(dmat); }

void decomposition_from_brauer(const CharacterTable& t, const std::vector<std::vector<Cyclo>>& brauer,
                               BlockPartition& bp, const std::string& provenance) {
    std::vector<int> reg = t.regular_classes_2();
    check(!brauer.empty(), "no Brauer characters supplied");
    check(brauer.size() == reg.size(),
          "Brauer character count must equal the number of 2-regular classes");
    int l = (int)brauer.size();
    IntMat phi = flatten_rows(t, brauer, reg);
    check(rank(phi) == (std::size_t)l, "Brauer characters are linearly dependent");
    std::vector<int> all(t.num_chars());
    std::iota(all.begin(), all.end(), 0);
    IntMat x = flatten_values(t, all, reg);
    IntMat d(t.num_chars(), l);
    IntMat phit = phi.transpose();
    for (int s = 0; s < t.num_chars(); ++s) {
        std::vector<mpz_class> rhs(x.cols());
        for (std::size_t j = 0; j < x.cols(); ++j) rhs[j] = x.at(s, j);
        std::vector<mpz_class> sol;
        mpz_class den;
        bool ok = solve_right_rational(phit, rhs, sol, den);
        check(ok, "character is not a combination of Brauer characters (chi=" + std::to_string(s) + ")");
        check(den == 1, "decomposition numbers not integral (chi=" + std::to_string(s) + ")");
        for (int j = 0; j < l; ++j) {
            check(sol[j] >= 0, "negative decomposition number (chi=" + std::to_string(s) + ")");
            d.at(s, j) = sol[j];
        }
    }
    check(d.mul(phi) == x, "decomposition solve verification failed");

    // identity position among regular classes, for simple-module degrees
    int idpos = -1;
    for (std::size_t i = 0; i < reg.size(); ++i)
        if (reg[i] == t.identity_class) idpos = (int)i;
    check(idpos >= 0, "identity class is not 2-regular (bug)");

    std::vector<int> col_block(l, -1);
    for (int j = 0; j < l; ++j) {
        for (int s = 0; s < t.num_chars(); ++s) {
            if (d.at(s, j) == 0) continue;
            int b = bp.block_of_char[s];
            check(col_block[j] == -1 || col_block[j] == b, "simple module spans two blocks (corrupt data)");
            col_block[j] = b;
        }
        check(col_block[j] >= 0, "zero column in decomposition matrix");
    }
    for (auto& blk : bp.blocks) {
        std::vector<int> cols;
        for (int j = 0; j < l; ++j)
            if (col_block[j] == blk.id) cols.push_back(j);
        blk.l = (int)cols.size();
        blk.dmat = IntMat(blk.chars.size(), cols.size());
        blk.ibr_degrees.clear();
        for (std::size_t j = 0; j < cols.size(); ++j)
            blk.ibr_degrees.push_back(brauer[cols[j]][idpos].rational());
        for (std::size_t i = 0; i < blk.chars.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) blk.dmat.at(i, j) = d.at(blk.chars[i], cols[j]);
        for (std::size_t i = 0; i < blk.chars.size(); ++i) {
            bool nz = false;
            mpz_class degsum = 0;
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if (blk.dmat.at(i, j) != 0) nz = true;
                degsum += blk.dmat.at(i, j) * blk.ibr_degrees[j];
            }
            check(nz, "zero row in block decomposition matrix");
            check(degsum == t.degree(blk.chars[i]), "degree consistency fails in block " +
                                                        std::to_string(blk.id));
        }
        blk.has_dmat = true;
        blk.dmat_provenance = provenance;
        blk.cartan = cartan_from_decomposition(blk.dmat);
    }
}

void decomposition_normal_sylow(const GroupPtr& gp, const ConjugacyData& cd, const CharacterTable& t,
                                BlockPartition& bp) {
    const FiniteGroup& g = *gp;
    std::vector<std::size_t> seeds;
    for (int c = 0; c < cd.num_classes(); ++c) {
        long o = cd.order[c];
        if (o > 1 && (o & (o - 1)) == 0) seeds.push_back(cd.rep[c]);
    }
    std::size_t two_part = 1;
    {
        std::size_t n = g.order();
        while (n % 2 == 0) {
            two_part *= 2;
            n /= 2;
        }
    }
    std::vector<std::size_t> o2 = seeds.empty() ? std::vector<std::size_t>{g.identity_index()}
                                                : g.subgroup_closure(seeds);
    for (auto x : o2) {
        long o = g.element_order(x);
        check((o & (o - 1)) == 0,
              "2-elements do not generate a 2-group; O_2(G) is not a Sylow 2-subgroup");
    }
    check(o2.size() == two_part, "O_2(G) is not a Sylow 2-subgroup");

    auto q = quotient_group(gp, o2, t.group_id + "/O2");
    auto qcd = conjugacy_data(*q.group);
    CharacterTable qt = character_table(*q.group, qcd, t.group_id + "/O2");

    int r = t.num_classes();
    std::vector<int> qclass(r);
    {
        std::vector<int> tbl_of_cd(qt.num_classes());
        for (int i = 0; i < qt.num_classes(); ++i) tbl_of_cd[qt.classes[i].group_class] = i;
        std::vector<std::size_t> coset_rep(q.group->degree(), SIZE_MAX);
        for (std::size_t e = 0; e < g.order(); ++e)
            if (coset_rep[q.projection[e]] == SIZE_MAX) coset_rep[q.projection[e]] = e;
        for (int c = 0; c < r; ++c) {
            std::size_t rep = cd.rep[t.classes[c].group_class];
            std::vector<std::uint16_t> img(q.group->degree());
            for (int pt = 0; pt < q.group->degree(); ++pt)
                img[pt] = (std::uint16_t)q.projection[g.mul(coset_rep[pt], rep)];
            std::size_t qi = q.group->index_of(img.data());
            qclass[c] = tbl_of_cd[qcd.class_of[qi]];
        }
    }

    std::vector<int> reg = t.regular_classes_2();
    std::vector<std::vector<Cyclo>> brauer;
    for (int s = 0; s < qt.num_chars(); ++s) {
        std::vector<Cyclo> row;
        for (int c : reg) row.push_back(qt.irr[s][qclass[c]]);
        brauer.push_back(std::move(row));
    }
    decomposition_from_brauer(t, brauer, bp, "computed");
}

void compose_block_dmat(const CharacterTable& prod, const BlockData& b1, const BlockData& b2,
                        BlockPartition& bp) {
    check(prod.provenance == Provenance::Composed, "compose_block_dmat needs a composed table");
    check(b1.has_dmat && b2.has_dmat, "factor blocks lack decomposition matrices");
    std::map<std::pair<int, int>, int> pair_to_char;
    for (int s = 0; s < prod.num_chars(); ++s) pair_to_char[prod.char_pair[s]] = s;
    std::vector<int> chars;
    for (int i : b1.chars)
        for (int j : b2.chars) chars.push_back(pair_to_char.at({i, j}));
    std::sort(chars.begin(), chars.end());
    int target = -1;
    for (auto& blk : bp.blocks)
        if (blk.chars == chars) target = blk.id;
    check(target >= 0, "no product block matches the factor block pair");
    BlockData& blk = bp.blocks[target];
    IntMat kron = b1.dmat.kronecker(b2.dmat);
    std::vector<int> rowpos;
    for (std::size_t i = 0; i < b1.chars.size(); ++i)
        for (std::size_t j = 0; j < b2.chars.size(); ++j) {
            int schar = pair_to_char.at({b1.chars[i], b2.chars[j]});
            rowpos.push_back(
                (int)(std::lower_bound(blk.chars.begin(), blk.chars.end(), schar) - blk.chars.begin()));
        }
    blk.dmat = IntMat(blk.chars.size(), kron.cols());
    for (std::size_t i = 0; i < rowpos.size(); ++i)
        for (std::size_t j = 0; j < kron.cols(); ++j) blk.dmat.at(rowpos[i], j) = kron.at(i, j);
    blk.l = (int)kron.cols();
    blk.has_dmat = true;
    blk.dmat_provenance = "composed(" + b1.dmat_provenance + "," + b2.dmat_provenance + ")";
    blk.cartan = cartan_from_decomposition(blk.dmat);
    blk.ibr_degrees.clear();
    for (auto& d1 : b1.ibr_degrees)
        for (auto& d2 : b2.ibr_degrees) blk.ibr_degrees.push_back(d1 * d2);
    for (std::size_t i = 0; i < blk.chars.size(); ++i) {
        mpz_class degsum = 0;
        for (std::size_t j = 0; j < blk.dmat.cols(); ++j)
            degsum += blk.dmat.at(i, j) * blk.ibr_degrees[j];
        check(degsum == prod.degree(blk.chars[i]), "degree consistency fails in composed block");
    }
}

// --- serialisation -------------------------------------------------------

namespace {
using json = nlohmann::ordered_json;

json cyclo_to_json(const Cyclo& v) {
    json coeffs = json::array();
    for (auto& [e, c] : v.coeffs()) coeffs.push_back(json::array({e, c.get_str()}));
    return json{{"n", v.conductor()}, {"coeffs", coeffs}};
}

Cyclo cyclo_from_json(const json& j) {
    Cyclo v;
    std::int64_t n = j.at("n").get<std::int64_t>();
    for (auto& pair : j.at("coeffs")) {
        std::int64_t e = pair.at(0).get<std::int64_t>();
        mpz_class c(pair.at(1).get<std::string>());
        v += Cyclo::root(n, e).scaled(c);
    }
    return v;
}

}  // namespace

std::string table_to_json(const CharacterTable& t, const BlockPartition* bp) {
    json j;
    j["group_id"] = t.group_id;
    j["group_order"] = t.group_order.get_str();
    j["provenance"] = t.provenance == Provenance::Computed
                          ? "computed"
                          : (t.provenance == Provenance::Composed ? "composed" : "ingested");
    json cls = json::array();
    for (auto& c : t.classes) {
        json pm = json::array();
        for (int x : c.power_class) pm.push_back(x);
        cls.push_back(json{{"size", c.size}, {"element_order", c.order}, {"powermaps", pm}});
    }
    j["classes"] = cls;
    json ir = json::array();
    for (auto& row : t.irr) {
        json r = json::array();
        for (auto& v : row) r.push_back(cyclo_to_json(v));
        ir.push_back(r);
    }
    j["irreducibles"] = ir;
    if (bp) {
        json blocks = json::array();
        for (auto& b : bp->blocks) {
            json bb;
            bb["id"] = b.id;
            bb["chars"] = b.chars;
            bb["defect"] = b.defect;
            bb["k"] = b.k;
            if (b.has_dmat) bb["l"] = b.l;
            bb["principal"] = b.principal;
            blocks.push_back(bb);
        }
        j["blocks"] = blocks;
    }
    return j.dump(1);
}

CharacterTable table_from_json(const std::string& text) {
    json j = json::parse(text);
    CharacterTable t;
    t.group_id = j.at("group_id").get<std::string>();
    t.group_order = mpz_class(j.at("group_order").get<std::string>());
    t.provenance = Provenance::Ingested;
    for (auto& c : j.at("classes")) {
        TableClass tc;
        tc.size = c.at("size").get<std::int64_t>();
        tc.order = c.at("element_order").get<long>();
        for (auto& x : c.at("powermaps")) tc.power_class.push_back(x.get<int>());
        check((long)tc.power_class.size() == tc.order, "powermap length != element order");
        t.classes.push_back(std::move(tc));
    }
    int r = (int)t.classes.size();
    for (int c = 0; c < r; ++c) {
        t.classes[c].inverse_class = t.power_map(c, -1);
        if (t.classes[c].order == 1) t.identity_class = c;
    }
    for (auto& row : j.at("irreducibles")) {
        std::vector<Cyclo> vr;
        for (auto& v : row) vr.push_back(cyclo_from_json(v));
        check((int)vr.size() == r, "irreducible row length mismatch");
        t.irr.push_back(std::move(vr));
    }
    return t;
}

std::string dec_to_json(const DecData& d) {
    json j;
    j["group_id"] = d.group_id;
    j["block_id"] = d.block_id;
    j["char_indices"] = d.char_indices;
    j["ibr_degrees"] = d.ibr_degrees;
    json rows = json::array();
    for (std::size_t i = 0; i < d.d_matrix.rows(); ++i) {
        json row = json::array();
        for (std::size_t jj = 0; jj < d.d_matrix.cols(); ++jj)
            row.push_back((long)d.d_matrix.at(i, jj).get_si());
        rows.push_back(row);
    }
    j["d_matrix"] = rows;
    j["provenance"] = d.provenance_note;
    return j.dump(1);
}

DecData dec_from_json(const std::string& text) {
    json j = json::parse(text);
    DecData d;
    d.group_id = j.at("group_id").get<std::string>();
    d.block_id = j.at("block_id").get<std::string>();
    d.char_indices = j.at("char_indices").get<std::vector<int>>();
    d.ibr_degrees = j.at("ibr_degrees").get<std::vector<long>>();
    auto rows = j.at("d_matrix");
    std::size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
    d.d_matrix = IntMat(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t jj = 0; jj < nc; ++jj) d.d_matrix.at(i, jj) = rows[i][jj].get<long>();
    if (j.contains("provenance")) d.provenance_note = j["provenance"].get<std::string>();
    return d;
}

}  // namespace b32
