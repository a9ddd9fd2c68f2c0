#include "b32/group.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "b32/util.hpp"

namespace b32 {

namespace {

std::uint64_t hash_bytes(const std::uint16_t* p, std::size_t n) {
    // FNV-1a over the uint16 stream
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

// growable open-addressing map from element bytes (stored in an arena) to
// element index
struct EltHash {
    explicit EltHash(std::size_t esize) : esize_(esize) { rehash(1 << 12); }

    void rehash(std::size_t cap) {
        slots_.assign(cap, 0);
        mask_ = cap - 1;
        for (std::uint32_t i = 0; i < count_; ++i) place(i);
    }

    void place(std::uint32_t idx) {
        std::uint64_t h = hash_bytes(arena_->data() + (std::size_t)idx * esize_, esize_);
        std::size_t s = h & mask_;
        while (slots_[s]) s = (s + 1) & mask_;
        slots_[s] = idx + 1;
    }

    // returns index, inserting from buf if absent
    std::uint32_t find_or_insert(const std::uint16_t* buf, bool* inserted) {
        std::uint64_t h = hash_bytes(buf, esize_);
        std::size_t s = h & mask_;
        while (slots_[s]) {
            std::uint32_t idx = slots_[s] - 1;
            if (std::memcmp(arena_->data() + (std::size_t)idx * esize_, buf, esize_ * 2) == 0) {
                if (inserted) *inserted = false;
                return idx;
            }
            s = (s + 1) & mask_;
        }
        std::uint32_t idx = count_++;
        arena_->insert(arena_->end(), buf, buf + esize_);
        slots_[s] = idx + 1;
        if (inserted) *inserted = true;
        if (count_ * 10 > slots_.size() * 6) rehash(slots_.size() * 2);
        return idx;
    }

    std::vector<std::uint16_t>* arena_ = nullptr;
    std::size_t esize_, mask_ = 0;
    std::uint32_t count_ = 0;
    std::vector<std::uint32_t> slots_;
};

}  // namespace

class GroupBuilder {
public:
    static GroupPtr build(Rep rep, int degree, const std::vector<std::vector<std::uint16_t>>& gens,
                          std::size_t cap, const std::string& id) {
        auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
        g->rep_ = rep;
        g->degree_ = degree;
        g->id_ = id;
        g->esize_ = rep == Rep::Perm ? (std::size_t)degree : (std::size_t)degree;
        check(degree > 0 && degree <= 8192, "group degree out of range");
        if (rep == Rep::Gf2Matrix) check(degree <= 16, "matrix dimension > 16 unsupported");
        for (auto& gen : gens)
            if (gen.size() != g->esize_) throw config_error("generator size mismatch");
        if (rep == Rep::Perm) {
            for (auto& gen : gens) {
                std::vector<bool> seen(degree, false);
                for (auto v : gen) {
                    if (v >= degree || seen[v]) throw config_error("generator is not a permutation");
                    seen[v] = true;
                }
            }
        } else {
            for (auto& gen : gens) {
                Gf2Mat m = to_mat(*g, gen.data());
                Gf2Mat mi;
                if (!m.invert(mi)) throw config_error("singular matrix generator");
            }
        }

        std::vector<std::uint16_t> arena;
        EltHash hash(g->esize_);
        hash.arena_ = &arena;

        std::vector<std::uint16_t> idbuf(g->esize_);
        if (rep == Rep::Perm) {
            for (int i = 0; i < degree; ++i) idbuf[i] = (std::uint16_t)i;
        } else {
            Gf2Mat idm = Gf2Mat::identity(degree);
            for (int i = 0; i < degree; ++i) idbuf[i] = idm.row[i];
        }
        hash.find_or_insert(idbuf.data(), nullptr);

        for (auto& gen : gens) hash.find_or_insert(gen.data(), nullptr);

        std::vector<std::uint16_t> buf(g->esize_);
        for (std::uint32_t head = 0; head < hash.count_; ++head) {
            for (auto& gen : gens) {
                const std::uint16_t* a = arena.data() + (std::size_t)head * g->esize_;
                g->mul_raw(a, gen.data(), buf.data());
                hash.find_or_insert(buf.data(), nullptr);
                if (hash.count_ > cap)
                    throw budget_error("group closure exceeded cap of " + std::to_string(cap));
            }
        }

        // canonical order: sort element blocks lexicographically
        std::size_t n = hash.count_;
        std::vector<std::uint32_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::size_t es = g->esize_;
        std::sort(perm.begin(), perm.end(), [&](std::uint32_t x, std::uint32_t y) {
            return std::memcmp(arena.data() + (std::size_t)x * es, arena.data() + (std::size_t)y * es,
                               es * 2) < 0;
        });
        g->data_.resize(arena.size());
        for (std::size_t i = 0; i < n; ++i)
            std::memcpy(g->data_.data() + i * es, arena.data() + (std::size_t)perm[i] * es, es * 2);
        g->count_ = n;

        // final hash over sorted data
        std::size_t slots = 1;
        while (slots < n * 2) slots <<= 1;
        g->hash_slots_.assign(slots, 0);
        for (std::uint32_t i = 0; i < n; ++i) {
            std::uint64_t h = hash_bytes(g->elt(i), es);
            std::size_t s = h & (slots - 1);
            while (g->hash_slots_[s]) s = (s + 1) & (slots - 1);
            g->hash_slots_[s] = i + 1;
        }

        g->id_index_ = g->index_of(idbuf.data());
        for (auto& gen : gens) g->gen_idx_.push_back(g->index_of(gen.data()));

        g->inv_idx_.resize(n);
        std::vector<std::uint16_t> ib(es);
        for (std::size_t i = 0; i < n; ++i) {
            g->inv_raw(g->elt(i), ib.data());
            g->inv_idx_[i] = g->index_of(ib.data());
        }
        return g;
    }

    static Gf2Mat to_mat(const FiniteGroup& g, const std::uint16_t* e) {
        Gf2Mat m;
        m.d = g.degree();
        for (int i = 0; i < m.d; ++i) m.row[i] = e[i];
        return m;
    }
};

GroupPtr FiniteGroup::closure(Rep rep, int degree, const std::vector<std::vector<std::uint16_t>>& gens,
                              std::size_t cap, const std::string& id) {
    return GroupBuilder::build(rep, degree, gens, cap, id);
}

GroupPtr FiniteGroup::from_perms(const std::vector<std::vector<std::uint16_t>>& gens, std::size_t cap,
                                 const std::string& id) {
    check(!gens.empty(), "from_perms: need at least one generator");
    return closure(Rep::Perm, (int)gens[0].size(), gens, cap, id);
}

GroupPtr FiniteGroup::from_gf2(const std::vector<Gf2Mat>& gens, std::size_t cap, const std::string& id) {
    check(!gens.empty(), "from_gf2: need at least one generator");
    int d = gens[0].d;
    std::vector<std::vector<std::uint16_t>> raw;
    for (auto& m : gens) {
        check(m.d == d, "from_gf2: inconsistent dimensions");
        raw.emplace_back(m.row, m.row + d);
    }
    return closure(Rep::Gf2Matrix, d, raw, cap, id);
}

void FiniteGroup::mul_raw(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out) const {
    if (rep_ == Rep::Perm) {
        for (int p = 0; p < degree_; ++p) out[p] = b[a[p]];
    } else {
        for (int i = 0; i < degree_; ++i) {
            std::uint16_t bits = a[i], acc = 0;
            while (bits) {
                int j = __builtin_ctz(bits);
                bits &= bits - 1;
                acc ^= b[j];
            }
            out[i] = acc;
        }
    }
}

void FiniteGroup::inv_raw(const std::uint16_t* a, std::uint16_t* out) const {
    if (rep_ == Rep::Perm) {
        for (int p = 0; p < degree_; ++p) out[a[p]] = (std::uint16_t)p;
    } else {
        Gf2Mat m = GroupBuilder::to_mat(*this, a), mi;
        check(m.invert(mi), "inv_raw: singular");
        for (int i = 0; i < degree_; ++i) out[i] = mi.row[i];
    }
}

std::size_t FiniteGroup::index_of(const std::uint16_t* e) const {
    auto r = find(e);
    check(r.has_value(), "element not in group");
    return *r;
}

std::optional<std::size_t> FiniteGroup::find(const std::uint16_t* e) const {
    std::uint64_t h = hash_bytes(e, esize_);
    std::size_t mask = hash_slots_.size() - 1;
    std::size_t s = h & mask;
    while (hash_slots_[s]) {
        std::uint32_t idx = hash_slots_[s] - 1;
        if (std::memcmp(elt(idx), e, esize_ * 2) == 0) return idx;
        s = (s + 1) & mask;
    }
    return std::nullopt;
}

std::size_t FiniteGroup::mul(std::size_t i, std::size_t j) const {
    thread_local std::vector<std::uint16_t> buf;
    buf.resize(esize_);
    mul_raw(elt(i), elt(j), buf.data());
    return index_of(buf.data());
}

std::size_t FiniteGroup::inv(std::size_t i) const { return inv_idx_[i]; }

std::size_t FiniteGroup::pow(std::size_t i, long e) const {
    std::size_t r = id_index_;
    std::size_t b = i;
    if (e < 0) {
        b = inv(i);
        e = -e;
    }
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

long FiniteGroup::element_order(std::size_t i) const {
    long n = 1;
    std::size_t x = i;
    while (x != id_index_) {
        x = mul(x, i);
        ++n;
        check((std::size_t)n <= count_, "element_order overflow (bug)");
    }
    return n;
}

std::size_t FiniteGroup::conj(std::size_t g, std::size_t x) const { return mul(mul(g, x), inv(g)); }

bool FiniteGroup::is_abelian() const {
    for (auto a : gen_idx_)
        for (auto b : gen_idx_)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

long FiniteGroup::exponent() const {
    long e = 1;
    for (std::size_t i = 0; i < count_; ++i) e = lcm64(e, element_order(i));
    return e;
}

std::vector<std::size_t> FiniteGroup::center() const {
    std::vector<std::size_t> z;
    for (std::size_t i = 0; i < count_; ++i) {
        bool c = true;
        for (auto g : gen_idx_)
            if (mul(i, g) != mul(g, i)) { c = false; break; }
        if (c) z.push_back(i);
    }
    return z;
}

std::vector<std::size_t> FiniteGroup::subgroup_closure(std::vector<std::size_t> seed) const {
    std::unordered_set<std::size_t> in;
    std::deque<std::size_t> q;
    in.insert(id_index_);
    q.push_back(id_index_);
    for (auto s : seed)
        if (in.insert(s).second) q.push_back(s);
    while (!q.empty()) {
        std::size_t x = q.front();
        q.pop_front();
        for (auto s : seed) {
            std::size_t y = mul(x, s);
            if (in.insert(y).second) q.push_back(y);
        }
    }
    std::vector<std::size_t> out(in.begin(), in.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool FiniteGroup::is_normal(const std::vector<std::size_t>& sorted_subgroup) const {
    for (auto g : gen_idx_)
        for (auto x : sorted_subgroup) {
            std::size_t y = conj(g, x);
            if (!std::binary_search(sorted_subgroup.begin(), sorted_subgroup.end(), y)) return false;
        }
    return true;
}

std::vector<std::size_t> FiniteGroup::derived_subgroup() const {
    std::vector<std::size_t> seed;
    for (auto a : gen_idx_)
        for (auto b : gen_idx_) {
            // [a,b] = a^-1 b^-1 a b
            std::size_t c = mul(mul(mul(inv(a), inv(b)), a), b);
            if (c != id_index_) seed.push_back(c);
        }
    while (true) {
        std::vector<std::size_t> sub = subgroup_closure(seed);
        bool stable = true;
        for (auto g : gen_idx_) {
            for (auto x : sub) {
                std::size_t y = conj(g, x);
                if (!std::binary_search(sub.begin(), sub.end(), y)) {
                    seed.push_back(y);
                    stable = false;
                }
            }
            if (!stable) break;
        }
        if (stable) return sub;
    }
}

GroupPtr FiniteGroup::as_permutation(const std::string& id) const {
    if (rep_ == Rep::Perm) {
        std::vector<std::vector<std::uint16_t>> gens;
        for (auto g : gen_idx_) gens.push_back(element_vec(g));
        return from_perms(gens, count_, id.empty() ? id_ : id);
    }
    int pts = (1 << degree_) - 1;
    std::vector<std::vector<std::uint16_t>> gens;
    for (auto gi : gen_idx_) {
        Gf2Mat m = GroupBuilder::to_mat(*this, elt(gi));
        std::vector<std::uint16_t> p(pts);
        for (int v = 1; v <= pts; ++v) p[v - 1] = (std::uint16_t)(m.apply((std::uint16_t)v) - 1);
        gens.push_back(std::move(p));
    }
    return from_perms(gens, count_, id.empty() ? id_ : id);
}

std::vector<std::uint16_t> FiniteGroup::element_vec(std::size_t i) const {
    return std::vector<std::uint16_t>(elt(i), elt(i) + esize_);
}

int ConjugacyData::identity_class() const {
    for (int c = 0; c < num_classes(); ++c)
        if (order[c] == 1) return c;
    throw computation_error("no identity class");
}

int ConjugacyData::power_map(int c, std::int64_t t) const {
    std::int64_t m = t % order[c];
    if (m < 0) m += order[c];
    return power_class[c][(std::size_t)m];
}

ConjugacyData conjugacy_data(const FiniteGroup& g) {
    ConjugacyData cd;
    std::size_t n = g.order();
    cd.class_of.assign(n, -1);
    std::vector<std::size_t> gens(g.generator_indices());
    for (std::size_t i = 0; i < n; ++i) {
        if (cd.class_of[i] >= 0) continue;
        int c = (int)cd.rep.size();
        cd.rep.push_back(i);
        cd.class_of[i] = c;
        std::int64_t sz = 0;
        std::deque<std::size_t> q{i};
        ++sz;
        while (!q.empty()) {
            std::size_t x = q.front();
            q.pop_front();
            for (auto gg : gens) {
                std::size_t y = g.conj(gg, x);
                if (cd.class_of[y] < 0) {
                    cd.class_of[y] = c;
                    ++sz;
                    q.push_back(y);
                }
            }
        }
        cd.size.push_back(sz);
        cd.order.push_back(g.element_order(i));
    }
    int k = cd.num_classes();
    cd.inverse_class.resize(k);
    cd.power_class.resize(k);
    cd.centralizer_order.resize(k);
    for (int c = 0; c < k; ++c) {
        cd.inverse_class[c] = cd.class_of[g.inv(cd.rep[c])];
        cd.centralizer_order[c] = (std::int64_t)g.order() / cd.size[c];
        cd.power_class[c].resize(cd.order[c]);
        std::size_t x = g.identity_index();
        for (long t = 0; t < cd.order[c]; ++t) {
            cd.power_class[c][t] = cd.class_of[x];
            x = g.mul(x, cd.rep[c]);
        }
    }
    // sanity: sizes sum to |G|
    std::int64_t tot = 0;
    for (auto s : cd.size) tot += s;
    check(tot == (std::int64_t)g.order(), "conjugacy classes do not partition the group");
    return cd;
}

// --- composition --------------------------------------------------------

namespace {

std::vector<std::vector<std::uint16_t>> perm_gens_of(const GroupPtr& g) {
    GroupPtr p = g->rep() == Rep::Perm ? g : g->as_permutation();
    std::vector<std::vector<std::uint16_t>> gens;
    for (auto gi : p->generator_indices()) gens.push_back(p->element_vec(gi));
    if (gens.empty()) gens.push_back(p->element_vec(p->identity_index()));
    return gens;
}

int perm_degree_of(const GroupPtr& g) {
    return g->rep() == Rep::Perm ? g->degree() : (1 << g->degree()) - 1;
}

std::vector<std::uint16_t> shift_perm(const std::vector<std::uint16_t>& p, int offset, int total) {
    std::vector<std::uint16_t> out(total);
    for (int i = 0; i < total; ++i) out[i] = (std::uint16_t)i;
    for (std::size_t i = 0; i < p.size(); ++i) out[offset + i] = (std::uint16_t)(p[i] + offset);
    return out;
}

}  // namespace

GroupPtr compose_direct(const GroupPtr& a, const GroupPtr& b, const std::string& id) {
    auto ga = perm_gens_of(a), gb = perm_gens_of(b);
    int da = perm_degree_of(a), db = perm_degree_of(b);
    std::vector<std::vector<std::uint16_t>> gens;
    for (auto& p : ga) gens.push_back(shift_perm(p, 0, da + db));
    for (auto& p : gb) gens.push_back(shift_perm(p, da, da + db));
    auto g = FiniteGroup::from_perms(gens, a->order() * b->order() + 1, id);
    check(g->order() == a->order() * b->order(), "direct product order mismatch (bug)");
    return g;
}

GroupPtr compose_semidirect(const GroupPtr& n, const GroupPtr& h,
                            const std::vector<std::vector<std::uint16_t>>& action,
                            const std::string& id) {
    check(n->rep() == Rep::Perm, "semidirect: N must be a permutation group");
    auto hg = perm_gens_of(h);
    check(action.size() == hg.size(), "semidirect: one action permutation per H generator");
    int dn = n->degree(), dh = perm_degree_of(h);
    // each action permutation must normalize N
    for (auto& act : action) {
        check((int)act.size() == dn, "semidirect: action degree mismatch");
        std::vector<std::uint16_t> ai(dn), buf(dn), buf2(dn);
        for (int i = 0; i < dn; ++i) ai[act[i]] = (std::uint16_t)i;
        for (auto gi : n->generator_indices()) {
            const std::uint16_t* x = n->elt(gi);
            // a^-1 then x then a, as permutation composition
            for (int p = 0; p < dn; ++p) buf[p] = x[ai[p]];
            for (int p = 0; p < dn; ++p) buf2[p] = act[buf[p]];
            if (!n->find(buf2.data()).has_value())
                throw config_error("semidirect: action does not normalize N");
        }
    }
    std::vector<std::vector<std::uint16_t>> gens;
    for (auto gi : n->generator_indices())
        gens.push_back(shift_perm(n->element_vec(gi), 0, dn + dh));
    for (std::size_t i = 0; i < hg.size(); ++i) {
        std::vector<std::uint16_t> comb(dn + dh);
        for (int p = 0; p < dn; ++p) comb[p] = action[i][p];
        for (int p = 0; p < dh; ++p) comb[dn + p] = (std::uint16_t)(hg[i][p] + dn);
        gens.push_back(std::move(comb));
    }
    auto g = FiniteGroup::from_perms(gens, n->order() * h->order() + 1, id);
    if (g->order() != n->order() * h->order())
        throw config_error("semidirect: action is not a homomorphism (order " +
                           std::to_string(g->order()) + " != " + std::to_string(n->order() * h->order()) +
                           ")");
    return g;
}

GroupPtr compose_central(const GroupPtr& a, const GroupPtr& b,
                         const std::vector<std::pair<std::size_t, std::size_t>>& ident,
                         const std::string& id) {
    check(a->rep() == Rep::Perm && b->rep() == Rep::Perm,
          "central product: factors must be permutation groups (indices refer to them)");
    GroupPtr prod = compose_direct(a, b, id + ".direct");
    GroupPtr pa = a;
    GroupPtr pb = b;
    int da = pa->degree();
    std::vector<std::size_t> ngens;
    for (auto [ia, ib] : ident) {
        std::vector<std::uint16_t> comb(da + pb->degree());
        auto ea = pa->element_vec(ia);
        auto eb = pb->element_vec(pb->inv(ib));
        for (int p = 0; p < da; ++p) comb[p] = ea[p];
        for (int p = 0; p < pb->degree(); ++p) comb[da + p] = (std::uint16_t)(eb[p] + da);
        std::size_t idx = prod->index_of(comb.data());
        // centrality check
        for (auto g : prod->generator_indices())
            if (prod->mul(idx, g) != prod->mul(g, idx))
                throw config_error("central product: identified subgroup is not central");
        ngens.push_back(idx);
    }
    return quotient_group(prod, ngens, id).group;
}

QuotientResult quotient_group(const GroupPtr& gp, const std::vector<std::size_t>& n_gens,
                              const std::string& id) {
    const FiniteGroup& g = *gp;
    std::vector<std::size_t> nsub = g.subgroup_closure(n_gens);
    if (!g.is_normal(nsub)) throw config_error("quotient: subgroup is not normal");
    check(g.order() % nsub.size() == 0, "quotient: N size does not divide |G| (bug)");
    std::size_t ncosets = g.order() / nsub.size();
    std::vector<std::uint32_t> coset(g.order(), UINT32_MAX);
    std::vector<std::size_t> coset_rep;
    for (std::size_t i = 0; i < g.order(); ++i) {
        if (coset[i] != UINT32_MAX) continue;
        std::uint32_t c = (std::uint32_t)coset_rep.size();
        coset_rep.push_back(i);
        for (auto nx : nsub) coset[g.mul(nx, i)] = c;
    }
    check(coset_rep.size() == ncosets, "quotient: coset count mismatch");
    std::vector<std::vector<std::uint16_t>> gens;
    for (auto gi : g.generator_indices()) {
        std::vector<std::uint16_t> p(ncosets);
        for (std::size_t c = 0; c < ncosets; ++c) p[c] = (std::uint16_t)coset[g.mul(coset_rep[c], gi)];
        gens.push_back(std::move(p));
    }
    if (gens.empty()) gens.push_back(std::vector<std::uint16_t>(ncosets, 0));
    QuotientResult qr;
    qr.group = FiniteGroup::from_perms(gens, ncosets + 1, id);
    check(qr.group->order() == ncosets, "quotient: image order mismatch (bug)");
    qr.projection = std::move(coset);
    return qr;
}

GroupPtr affine_group(const std::vector<Gf2Mat>& e_gens, int d, const std::string& id) {
    check(d >= 1 && d <= 15, "affine_group: dimension out of range");
    int pts = 1 << d;
    std::vector<std::vector<std::uint16_t>> gens;
    for (int i = 0; i < d; ++i) {
        std::vector<std::uint16_t> t(pts);
        for (int v = 0; v < pts; ++v) t[v] = (std::uint16_t)(v ^ (1 << i));
        gens.push_back(std::move(t));
    }
    for (auto& m : e_gens) {
        check(m.d == d, "affine_group: matrix dimension mismatch");
        std::vector<std::uint16_t> p(pts);
        for (int v = 0; v < pts; ++v) p[v] = m.apply((std::uint16_t)v);
        gens.push_back(std::move(p));
    }
    return FiniteGroup::from_perms(gens, FiniteGroup::kDefaultCap, id);
}

// --- isomorphism ---------------------------------------------------------

IsoFingerprint iso_fingerprint(const FiniteGroup& g) {
    IsoFingerprint f;
    f.order = g.order();
    f.abelian = g.is_abelian();
    std::map<long, std::int64_t> census;
    long expn = 1;
    for (std::size_t i = 0; i < g.order(); ++i) {
        long o = g.element_order(i);
        ++census[o];
        expn = lcm64(expn, o);
    }
    f.exponent = expn;
    f.order_census.assign(census.begin(), census.end());
    f.center_order = g.center().size();
    // derived series orders down to stability
    std::vector<std::size_t> cur = g.derived_subgroup();
    f.derived_series.push_back(g.order());
    while (true) {
        f.derived_series.push_back(cur.size());
        if (cur.size() == 1 || f.derived_series.size() > 10) break;
        std::size_t prev = cur.size();
        // derived subgroup of the subgroup: commutators of all pairs
        check(cur.size() <= 5000, "iso_fingerprint: derived series on too large a group");
        std::vector<std::size_t> seed;
        for (auto a : cur)
            for (auto b : cur) {
                std::size_t c = g.mul(g.mul(g.mul(g.inv(a), g.inv(b)), a), b);
                if (c != g.identity_index()) seed.push_back(c);
            }
        std::sort(seed.begin(), seed.end());
        seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
        cur = g.subgroup_closure(seed);
        if (cur.size() == prev) break;
    }
    return f;
}

std::string IsoFingerprint::str() const {
    std::ostringstream os;
    os << "order=" << order << " abelian=" << (abelian ? 1 : 0) << " exp=" << exponent << " census=[";
    for (auto& [o, c] : order_census) os << o << ":" << c << " ";
    os << "] derived=[";
    for (auto d : derived_series) os << d << " ";
    os << "] z=" << center_order;
    return os.str();
}

namespace {

// incremental generator-image extension; gens/images index into g/h
bool extend_iso(const FiniteGroup& g, const FiniteGroup& h, std::vector<std::size_t>& gens,
                std::vector<std::size_t>& images, std::size_t pos,
                const std::vector<std::vector<std::size_t>>& candidates) {
    if (pos == gens.size()) return true;
    for (std::size_t cand : candidates[pos]) {
        images[pos] = cand;
        // check the partial map <g_0..g_pos> -> <img_0..img_pos> is an
        // isomorphism by parallel closure
        std::vector<std::size_t> sub{g.identity_index()};
        std::vector<std::size_t> img{h.identity_index()};
        std::unordered_set<std::size_t> seen_g{g.identity_index()};
        std::unordered_set<std::size_t> seen_h{h.identity_index()};
        std::vector<std::size_t> mapof(g.order(), SIZE_MAX);
        mapof[g.identity_index()] = h.identity_index();
        bool ok = true;
        for (std::size_t head = 0; head < sub.size() && ok; ++head) {
            for (std::size_t k = 0; k <= pos && ok; ++k) {
                std::size_t x = g.mul(sub[head], gens[k]);
                std::size_t y = h.mul(img[head], images[k]);
                if (mapof[x] == SIZE_MAX) {
                    if (!seen_h.insert(y).second) { ok = false; break; }
                    mapof[x] = y;
                    seen_g.insert(x);
                    sub.push_back(x);
                    img.push_back(y);
                } else if (mapof[x] != y) {
                    ok = false;
                }
            }
        }
        if (ok && extend_iso(g, h, gens, images, pos + 1, candidates)) return true;
    }
    return false;
}

}  // namespace

bool iso_test_small(const FiniteGroup& g, const FiniteGroup& h, std::size_t cap) {
    if (g.order() != h.order()) return false;
    check(g.order() <= cap, "iso_test_small: order beyond cap");
    if (!(iso_fingerprint(g) == iso_fingerprint(h))) return false;
    // pick a small generating sequence for g
    std::vector<std::size_t> gens;
    std::vector<std::size_t> cur{g.identity_index()};
    std::vector<long> gen_orders;
    while (cur.size() < g.order()) {
        std::size_t pick = SIZE_MAX;
        long best = -1;
        for (std::size_t i = 0; i < g.order(); ++i) {
            if (std::binary_search(cur.begin(), cur.end(), i)) continue;
            long o = g.element_order(i);
            if (o > best) {
                best = o;
                pick = i;
            }
        }
        gens.push_back(pick);
        gen_orders.push_back(best);
        auto seed = gens;
        cur = g.subgroup_closure(seed);
    }
    if (gens.empty()) return h.order() == 1;
    std::vector<std::vector<std::size_t>> candidates(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
        for (std::size_t j = 0; j < h.order(); ++j)
            if (h.element_order(j) == gen_orders[k]) candidates[k].push_back(j);
        if (candidates[k].empty()) return false;
    }
    std::vector<std::size_t> images(gens.size());
    return extend_iso(g, h, gens, images, 0, candidates);
}

}  // namespace b32
