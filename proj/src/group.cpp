#include "pdpair/group.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <set>

#include "pdpair/snf.hpp"

namespace pdpair {

Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& l : out) l.exponent = -l.exponent;
    return out;
}

Word free_reduce(const Word& w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().generator == l.generator && out.back().exponent == -l.exponent) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t i = 0, j = r.size();
    while (j - i >= 2 && r[i].generator == r[j - 1].generator && r[i].exponent == -r[j - 1].exponent) {
        ++i;
        --j;
    }
    return Word(r.begin() + static_cast<long>(i), r.begin() + static_cast<long>(j));
}

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return free_reduce(w);
}

std::string GroupPresentation::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t x) {
        for (int k = 0; k < 8; ++k) {
            h ^= (x >> (8 * k)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(generator_count);
    for (const auto& r : relators) {
        mix(r.size());
        for (const auto& l : r) mix(2 * static_cast<std::uint64_t>(l.generator) + (l.exponent < 0 ? 1 : 0));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

GroupPresentation presentation(const SimplicialComplex& c, std::optional<Vertex> basepoint, bool simplify) {
    auto verts = c.vertices();
    if (verts.empty()) throw std::invalid_argument("presentation: empty complex");
    Vertex base = basepoint.value_or(verts.front());
    if (!c.contains({base})) throw std::invalid_argument("presentation: basepoint not in complex");

    const auto& edges = c.simplices(1);
    std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(c.vertex_count());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e][0]].emplace_back(edges[e][1], e);
        adj[edges[e][1]].emplace_back(edges[e][0], e);
    }
    std::vector<char> seen(c.vertex_count(), 0), tree(edges.size(), 0);
    std::deque<Vertex> queue{base};
    seen[base] = 1;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (auto [w, e] : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                tree[e] = 1;
                queue.push_back(w);
            }
        }
    }
    for (auto v : verts) {
        if (!seen[v]) throw std::invalid_argument("presentation: complex is disconnected");
    }

    GroupPresentation p;
    p.basepoint = base;
    p.edge_words.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!tree[e]) p.edge_words[e] = {Letter{static_cast<std::uint32_t>(p.generator_count++), 1}};
    }
    for (std::size_t t = 0; t < c.count(2); ++t) {
        // [a,b,c]: ab . bc . (ac)^-1; faces are bc (k=0), ac (k=1), ab (k=2)
        const auto& ab = p.edge_words[c.face_index(2, t, 2)];
        const auto& bc = p.edge_words[c.face_index(2, t, 0)];
        const auto& ac = p.edge_words[c.face_index(2, t, 1)];
        Word r = cyclic_reduce(concat(concat(ab, bc), inverse(ac)));
        if (!r.empty()) p.relators.push_back(std::move(r));
    }
    return simplify ? simplify_presentation(std::move(p)) : p;
}

namespace {

std::vector<int> encode(const Word& w) {
    std::vector<int> v;
    for (const auto& l : w) v.push_back(2 * static_cast<int>(l.generator) + (l.exponent < 0 ? 1 : 0));
    return v;
}

// Smallest rotation of the word or of its inverse.
std::vector<int> cyclic_key(const Word& w) {
    std::vector<int> best;
    for (const auto& x : {w, inverse(w)}) {
        auto e = encode(x);
        for (std::size_t k = 0; k < e.size(); ++k) {
            std::vector<int> rot(e.begin() + static_cast<long>(k), e.end());
            rot.insert(rot.end(), e.begin(), e.begin() + static_cast<long>(k));
            if (best.empty() || rot < best) best = std::move(rot);
        }
    }
    return best;
}

Word substitute(const Word& w, std::uint32_t g, const Word& replacement) {
    Word out;
    Word inv = inverse(replacement);
    for (const auto& l : w) {
        if (l.generator == g) {
            const Word& r = l.exponent > 0 ? replacement : inv;
            out.insert(out.end(), r.begin(), r.end());
        } else {
            out.push_back(l);
        }
    }
    return free_reduce(out);
}

void tidy(GroupPresentation& p) {
    std::set<std::vector<int>> seen;
    std::vector<Word> kept;
    for (auto& r : p.relators) {
        Word c = cyclic_reduce(r);
        if (c.empty()) continue;
        if (seen.insert(cyclic_key(c)).second) kept.push_back(std::move(c));
    }
    p.relators = std::move(kept);
}

std::size_t total_length(const GroupPresentation& p) {
    std::size_t n = 0;
    for (const auto& r : p.relators) n += r.size();
    return n;
}

}  // namespace

GroupPresentation simplify_presentation(GroupPresentation p) {
    tidy(p);
    const std::size_t budget = std::max<std::size_t>(2 * total_length(p), 64);
    while (true) {
        std::vector<std::size_t> occurrences(p.generator_count, 0);
        for (const auto& r : p.relators) {
            for (const auto& l : r) ++occurrences[l.generator];
        }
        struct Candidate {
            long cost;
            std::size_t length, relator;
            std::uint32_t generator;
        };
        std::optional<Candidate> best;
        for (std::size_t i = 0; i < p.relators.size(); ++i) {
            const auto& r = p.relators[i];
            std::map<std::uint32_t, int> count;
            for (const auto& l : r) ++count[l.generator];
            for (auto [g, n] : count) {
                if (n != 1) continue;
                long others = static_cast<long>(occurrences[g]) - 1;
                Candidate c{(static_cast<long>(r.size()) - 2) * others, r.size(), i, g};
                if (!best || std::tie(c.cost, c.length, c.relator, c.generator) <
                                 std::tie(best->cost, best->length, best->relator, best->generator)) {
                    best = c;
                }
            }
        }
        if (!best) break;
        if (best->cost > 0 && total_length(p) - best->length + best->cost > budget) break;

        const Word r = p.relators[best->relator];
        const std::uint32_t g = best->generator;
        std::size_t pos = 0;
        while (r[pos].generator != g) ++pos;
        Word u(r.begin(), r.begin() + static_cast<long>(pos));
        Word v(r.begin() + static_cast<long>(pos) + 1, r.end());
        Word replacement = r[pos].exponent > 0 ? concat(inverse(u), inverse(v)) : concat(v, u);

        p.relators.erase(p.relators.begin() + static_cast<long>(best->relator));
        for (auto& w : p.relators) w = substitute(w, g, replacement);
        for (auto& w : p.edge_words) w = substitute(w, g, replacement);
        auto renumber = [g](Word& w) {
            for (auto& l : w) {
                if (l.generator > g) --l.generator;
            }
        };
        for (auto& w : p.relators) renumber(w);
        for (auto& w : p.edge_words) renumber(w);
        --p.generator_count;
        tidy(p);
    }
    return p;
}

HomologyGroup abelianization(const GroupPresentation& p) {
    std::vector<MatrixEntry> e;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        for (const auto& l : p.relators[i]) e.push_back({i, l.generator, BigInt(l.exponent)});
    }
    auto m = SparseIntMatrix::from_triplets(p.relators.size(), p.generator_count, std::move(e));
    auto f = invariant_factors(m);
    HomologyGroup h;
    h.free_rank = p.generator_count - f.size();
    for (const auto& d : f) {
        if (d != 1) h.torsion.push_back(d);
    }
    return h;
}

std::uint32_t CosetTable::act(std::uint32_t c, const Letter& l) const {
    if (l.exponent > 0) return action[l.generator][c];
    const auto& a = action[l.generator];
    // inverse permutation lookup
    for (std::uint32_t x = 0; x < degree; ++x) {
        if (a[x] == c) return x;
    }
    throw std::logic_error("coset table: not a permutation");
}

std::uint32_t CosetTable::act(std::uint32_t c, const Word& w) const {
    for (const auto& l : w) c = act(c, l);
    return c;
}

std::optional<std::string> table_defect(const GroupPresentation& p, const CosetTable& t) {
    if (t.action.size() != p.generator_count) return "generator count mismatch";
    for (const auto& a : t.action) {
        if (a.size() != t.degree) return "action has wrong length";
        std::vector<char> hit(t.degree, 0);
        for (auto x : a) {
            if (x >= t.degree || hit[x]) return "generator does not act as a permutation";
            hit[x] = 1;
        }
    }
    for (const auto& r : p.relators) {
        for (std::uint32_t c = 0; c < t.degree; ++c) {
            if (t.act(c, r) != c) return "relator acts nontrivially";
        }
    }
    std::vector<char> seen(t.degree, 0);
    std::vector<std::uint32_t> stack;
    if (t.degree > 0) {
        seen[0] = 1;
        stack.push_back(0);
    }
    while (!stack.empty()) {
        auto c = stack.back();
        stack.pop_back();
        for (const auto& a : t.action) {
            for (auto d : {a[c]}) {
                if (!seen[d]) {
                    seen[d] = 1;
                    stack.push_back(d);
                }
            }
        }
        for (const auto& a : t.action) {
            for (std::uint32_t x = 0; x < t.degree; ++x) {
                if (a[x] == c && !seen[x]) {
                    seen[x] = 1;
                    stack.push_back(x);
                }
            }
        }
    }
    for (auto s : seen) {
        if (!s) return "action is not transitive";
    }
    return std::nullopt;
}

namespace {

class Enumerator {
public:
    Enumerator(std::size_t generators, std::size_t max_cosets)
        : cols_(2 * generators), max_(max_cosets) {
        new_coset();
    }

    static int column(const Letter& l) { return 2 * static_cast<int>(l.generator) + (l.exponent < 0 ? 1 : 0); }

    std::int32_t& at(std::int32_t c, int x) { return table_[static_cast<std::size_t>(c) * cols_ + x]; }
    bool live(std::int32_t c) const { return parent_[c] == c; }
    std::size_t defined() const { return parent_.size(); }

    std::int32_t new_coset() {
        if (parent_.size() >= max_) throw CosetLimitExceeded(max_);
        auto k = static_cast<std::int32_t>(parent_.size());
        parent_.push_back(k);
        table_.resize(table_.size() + cols_, -1);
        return k;
    }

    void define(std::int32_t c, int x) {
        auto k = new_coset();
        at(c, x) = k;
        at(k, x ^ 1) = c;
    }

    std::int32_t rep(std::int32_t c) {
        std::int32_t r = c;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[c] != r) {
            auto n = parent_[c];
            parent_[c] = r;
            c = n;
        }
        return r;
    }

    void merge(std::int32_t k, std::int32_t l, std::vector<std::int32_t>& queue) {
        k = rep(k);
        l = rep(l);
        if (k == l) return;
        if (k > l) std::swap(k, l);
        parent_[l] = k;
        queue.push_back(l);
    }

    void coincidence(std::int32_t a, std::int32_t b) {
        std::vector<std::int32_t> queue;
        merge(a, b, queue);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            auto e = queue[i];
            for (int x = 0; x < static_cast<int>(cols_); ++x) {
                auto f = at(e, x);
                if (f < 0) continue;
                at(f, x ^ 1) = -1;
                auto e1 = rep(e), f1 = rep(f);
                if (at(e1, x) >= 0) {
                    merge(f1, at(e1, x), queue);
                } else if (at(f1, x ^ 1) >= 0) {
                    merge(e1, at(f1, x ^ 1), queue);
                } else {
                    at(e1, x) = f1;
                    at(f1, x ^ 1) = e1;
                }
            }
        }
    }

    void scan_and_fill(std::int32_t c, const std::vector<int>& w) {
        if (w.empty()) return;
        std::int32_t f = c, b = c;
        long i = 0, j = static_cast<long>(w.size()) - 1;
        while (true) {
            while (i <= j && at(f, w[i]) >= 0) f = at(f, w[i++]);
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && at(b, w[j] ^ 1) >= 0) b = at(b, w[j--] ^ 1);
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                at(f, w[i]) = b;
                at(b, w[i] ^ 1) = f;
                return;
            }
            define(f, w[i]);
        }
    }

    std::size_t cols_;
    std::size_t max_;
    std::vector<std::int32_t> table_;
    std::vector<std::int32_t> parent_;
};

}  // namespace

CosetTable todd_coxeter(const GroupPresentation& p, const std::vector<Word>& subgroup, std::size_t max_cosets) {
    std::vector<std::vector<int>> rels, subs;
    for (const auto& r : p.relators) rels.push_back(encode(r));
    for (const auto& w : subgroup) subs.push_back(encode(free_reduce(w)));
    Enumerator en(p.generator_count, max_cosets);
    for (const auto& w : subs) en.scan_and_fill(0, w);
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(en.defined()); ++c) {
        for (const auto& r : rels) {
            if (!en.live(c)) break;
            en.scan_and_fill(c, r);
        }
        if (!en.live(c)) continue;
        for (int x = 0; x < static_cast<int>(en.cols_); ++x) {
            if (!en.live(c)) break;
            if (en.at(c, x) < 0) en.define(c, x);
        }
    }
    std::vector<std::int32_t> index(en.defined(), -1);
    std::uint32_t d = 0;
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(en.defined()); ++c) {
        if (en.live(c)) index[c] = static_cast<std::int32_t>(d++);
    }
    CosetTable t;
    t.degree = d;
    t.action.assign(p.generator_count, std::vector<std::uint32_t>(d));
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(en.defined()); ++c) {
        if (!en.live(c)) continue;
        for (std::uint32_t g = 0; g < p.generator_count; ++g) {
            t.action[g][index[c]] = static_cast<std::uint32_t>(index[en.rep(en.at(c, 2 * g))]);
        }
    }
    if (auto why = table_defect(p, t)) throw std::logic_error("todd_coxeter: " + *why);
    return t;
}

namespace {

struct PartialTable {
    std::size_t cols = 0;
    std::size_t n = 1;
    std::vector<std::int32_t> cell;  // max_index * cols

    std::int32_t& at(std::size_t c, int x) { return cell[c * cols + x]; }
    std::int32_t at(std::size_t c, int x) const { return cell[c * cols + x]; }
};

// Processes forced deductions from every relator at every coset. Returns
// false on contradiction.
bool propagate(PartialTable& t, const std::vector<std::vector<int>>& rels) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t c = 0; c < t.n; ++c) {
            for (const auto& w : rels) {
                std::int32_t f = static_cast<std::int32_t>(c);
                std::size_t i = 0;
                while (i < w.size() && t.at(f, w[i]) >= 0) f = t.at(f, w[i++]);
                if (i == w.size()) {
                    if (f != static_cast<std::int32_t>(c)) return false;
                    continue;
                }
                std::int32_t b = static_cast<std::int32_t>(c);
                std::size_t j = w.size();
                while (j > i && t.at(b, w[j - 1] ^ 1) >= 0) b = t.at(b, w[--j] ^ 1);
                if (j == i) {
                    if (f != b) return false;
                } else if (j == i + 1) {
                    if (t.at(b, w[i] ^ 1) >= 0) return false;
                    t.at(f, w[i]) = b;
                    t.at(b, w[i] ^ 1) = f;
                    changed = true;
                }
            }
        }
    }
    return true;
}

// Relabels the table by breadth-first order from `start`; the result is a
// canonical representative of the conjugacy class when minimized over starts.
std::vector<std::int32_t> relabeled(const PartialTable& t, std::size_t start) {
    std::vector<std::int32_t> order{static_cast<std::int32_t>(start)};
    std::vector<std::int32_t> label(t.n, -1);
    label[start] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (int x = 0; x < static_cast<int>(t.cols); ++x) {
            auto d = t.at(order[k], x);
            if (label[d] < 0) {
                label[d] = static_cast<std::int32_t>(order.size());
                order.push_back(d);
            }
        }
    }
    std::vector<std::int32_t> out;
    for (auto c : order) {
        for (int x = 0; x < static_cast<int>(t.cols); ++x) out.push_back(label[t.at(c, x)]);
    }
    return out;
}

}  // namespace

std::vector<CosetTable> low_index_subgroups(const GroupPresentation& p, std::size_t max_index, std::size_t max_results) {
    std::vector<CosetTable> found;
    if (p.generator_count == 0 || max_index < 2) return found;
    std::vector<std::vector<int>> rels;
    for (const auto& r : p.relators) rels.push_back(encode(r));
    std::set<std::vector<std::int32_t>> classes;
    const std::size_t cols = 2 * p.generator_count;
    std::size_t nodes = 0;
    const std::size_t node_limit = 2000000;

    auto record = [&](const PartialTable& t) {
        if (t.n < 2) return;
        std::vector<std::int32_t> best;
        for (std::size_t s = 0; s < t.n; ++s) {
            auto r = relabeled(t, s);
            if (best.empty() || r < best) best = std::move(r);
        }
        if (!classes.insert(best).second) return;
        CosetTable ct;
        ct.degree = t.n;
        ct.action.assign(p.generator_count, std::vector<std::uint32_t>(t.n));
        for (std::size_t c = 0; c < t.n; ++c) {
            for (std::uint32_t g = 0; g < p.generator_count; ++g) {
                ct.action[g][c] = static_cast<std::uint32_t>(t.at(c, 2 * static_cast<int>(g)));
            }
        }
        found.push_back(std::move(ct));
    };

    auto search = [&](auto&& self, PartialTable t) -> void {
        if (found.size() >= max_results || ++nodes > node_limit) return;
        std::size_t c = 0;
        int x = -1;
        for (; c < t.n && x < 0; ++c) {
            for (int y = 0; y < static_cast<int>(cols); ++y) {
                if (t.at(c, y) < 0) {
                    x = y;
                    break;
                }
            }
            if (x >= 0) break;
        }
        if (x < 0) {
            record(t);
            return;
        }
        for (std::size_t d = 0; d <= t.n && d < max_index; ++d) {
            PartialTable u = t;
            if (d == t.n) {
                u.n = t.n + 1;
            } else if (u.at(d, x ^ 1) >= 0) {
                continue;
            }
            u.at(c, x) = static_cast<std::int32_t>(d);
            u.at(d, x ^ 1) = static_cast<std::int32_t>(c);
            if (propagate(u, rels)) self(self, std::move(u));
        }
    };

    PartialTable start;
    start.cols = cols;
    start.cell.assign(max_index * cols, -1);
    if (propagate(start, rels)) search(search, std::move(start));
    std::stable_sort(found.begin(), found.end(),
                     [](const CosetTable& a, const CosetTable& b) { return a.degree < b.degree; });
    for (const auto& t : found) {
        if (auto why = table_defect(p, t)) throw std::logic_error("low_index_subgroups: " + *why);
    }
    return found;
}

}  // namespace pdpair
