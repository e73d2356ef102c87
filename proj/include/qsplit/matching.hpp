// Copyright 2026 qsplit Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSPLIT_MATCHING_HPP
#define QSPLIT_MATCHING_HPP

#include <optional>

#include "qsplit/graph.hpp"

namespace qsplit {

struct MatchEdge {
    int i = -1;
    int j = -1;
    double weight = 0;
};

/// Exact maximum weight matching on a general graph, Galil's O(V^3) blossom
/// scheme. When max_cardinality is set, the result is a maximum cardinality
/// matching of maximum weight. Returns mate[v] (vertex id or -1).
///
/// The primal-dual structure follows the well known reference implementation
/// by van Rantwijk; duals are doubles with an epsilon on tightness tests.
class MaxWeightMatching {
   public:
    MaxWeightMatching(int num_vertices, const std::vector<MatchEdge>& edge_list, bool max_cardinality)
        : n_(num_vertices), edges_(edge_list), maxcard_(max_cardinality) {
        m_ = int(edges_.size());
        double maxw = 0;
        for (const auto& e : edges_) {
            if (e.i < 0 || e.j < 0 || e.i >= n_ || e.j >= n_ || e.i == e.j)
                throw std::invalid_argument("matching: bad edge");
            maxw = std::max(maxw, e.weight);
        }
        eps_ = 1e-10 * std::max(1.0, maxw);

        endpoint_.resize(size_t(2 * m_));
        for (int p = 0; p < 2 * m_; p++)
            endpoint_[size_t(p)] = (p % 2 == 0) ? edges_[size_t(p / 2)].i : edges_[size_t(p / 2)].j;
        neighbend_.assign(size_t(n_), {});
        for (int k = 0; k < m_; k++) {
            neighbend_[size_t(edges_[size_t(k)].i)].push_back(2 * k + 1);
            neighbend_[size_t(edges_[size_t(k)].j)].push_back(2 * k);
        }
        mate_.assign(size_t(n_), -1);
        label_.assign(size_t(2 * n_), 0);
        labelend_.assign(size_t(2 * n_), -1);
        inblossom_.resize(size_t(n_));
        for (int v = 0; v < n_; v++)
            inblossom_[size_t(v)] = v;
        blossomparent_.assign(size_t(2 * n_), -1);
        blossomchilds_.assign(size_t(2 * n_), {});
        blossombase_.resize(size_t(2 * n_));
        for (int v = 0; v < n_; v++)
            blossombase_[size_t(v)] = v;
        for (int b = n_; b < 2 * n_; b++)
            blossombase_[size_t(b)] = -1;
        blossomendps_.assign(size_t(2 * n_), {});
        bestedge_.assign(size_t(2 * n_), -1);
        blossombestedges_.assign(size_t(2 * n_), std::nullopt);
        for (int b = 2 * n_ - 1; b >= n_; b--)
            unusedblossoms_.push_back(b);
        dualvar_.assign(size_t(2 * n_), 0);
        for (int v = 0; v < n_; v++)
            dualvar_[size_t(v)] = maxw;
        allowedge_.assign(size_t(m_), 0);
    }

    std::vector<int> solve() {
        if (n_ == 0)
            return {};
        for (int stage = 0; stage < n_; stage++) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = n_; b < 2 * n_; b++)
                blossombestedges_[size_t(b)].reset();
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();

            for (int v = 0; v < n_; v++)
                if (mate_[size_t(v)] == -1 && label_[size_t(inblossom_[size_t(v)])] == 0)
                    assign_label(v, 1, -1);

            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    assert(label_[size_t(inblossom_[size_t(v)])] == 1);
                    for (int p : neighbend_[size_t(v)]) {
                        int k = p / 2;
                        int w = endpoint_[size_t(p)];
                        if (inblossom_[size_t(v)] == inblossom_[size_t(w)])
                            continue;
                        double kslack = 0;
                        if (!allowedge_[size_t(k)]) {
                            kslack = slack(k);
                            if (kslack <= eps_)
                                allowedge_[size_t(k)] = 1;
                        }
                        if (allowedge_[size_t(k)]) {
                            int bw = inblossom_[size_t(w)];
                            if (label_[size_t(bw)] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[size_t(bw)] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[size_t(w)] == 0) {
                                assert(label_[size_t(bw)] == 2);
                                label_[size_t(w)] = 2;
                                labelend_[size_t(w)] = p ^ 1;
                            }
                        } else if (label_[size_t(inblossom_[size_t(w)])] == 1) {
                            int b = inblossom_[size_t(v)];
                            if (bestedge_[size_t(b)] == -1 || kslack < slack(bestedge_[size_t(b)]))
                                bestedge_[size_t(b)] = k;
                        } else if (label_[size_t(w)] == 0) {
                            if (bestedge_[size_t(w)] == -1 || kslack < slack(bestedge_[size_t(w)]))
                                bestedge_[size_t(w)] = k;
                        }
                    }
                }
                if (augmented)
                    break;

                int deltatype = -1;
                double delta = 0;
                int deltaedge = -1, deltablossom = -1;
                if (!maxcard_) {
                    deltatype = 1;
                    double mind = kInf;
                    for (int v = 0; v < n_; v++)
                        mind = std::min(mind, dualvar_[size_t(v)]);
                    delta = std::max(0.0, mind);
                }
                for (int v = 0; v < n_; v++) {
                    if (label_[size_t(inblossom_[size_t(v)])] == 0 && bestedge_[size_t(v)] != -1) {
                        double d = slack(bestedge_[size_t(v)]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[size_t(v)];
                        }
                    }
                }
                for (int b = 0; b < 2 * n_; b++) {
                    if (blossomparent_[size_t(b)] == -1 && label_[size_t(b)] == 1 && bestedge_[size_t(b)] != -1) {
                        double d = slack(bestedge_[size_t(b)]) / 2;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[size_t(b)];
                        }
                    }
                }
                for (int b = n_; b < 2 * n_; b++) {
                    if (blossombase_[size_t(b)] >= 0 && blossomparent_[size_t(b)] == -1 &&
                        label_[size_t(b)] == 2 && (deltatype == -1 || dualvar_[size_t(b)] < delta)) {
                        delta = dualvar_[size_t(b)];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if (deltatype == -1) {
                    assert(maxcard_);
                    deltatype = 1;
                    double mind = kInf;
                    for (int v = 0; v < n_; v++)
                        mind = std::min(mind, dualvar_[size_t(v)]);
                    delta = std::max(0.0, mind);
                }

                for (int v = 0; v < n_; v++) {
                    int l = label_[size_t(inblossom_[size_t(v)])];
                    if (l == 1)
                        dualvar_[size_t(v)] -= delta;
                    else if (l == 2)
                        dualvar_[size_t(v)] += delta;
                }
                for (int b = n_; b < 2 * n_; b++) {
                    if (blossombase_[size_t(b)] >= 0 && blossomparent_[size_t(b)] == -1) {
                        if (label_[size_t(b)] == 1)
                            dualvar_[size_t(b)] += delta;
                        else if (label_[size_t(b)] == 2)
                            dualvar_[size_t(b)] -= delta;
                    }
                }

                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[size_t(deltaedge)] = 1;
                    int i = edges_[size_t(deltaedge)].i;
                    int j = edges_[size_t(deltaedge)].j;
                    if (label_[size_t(inblossom_[size_t(i)])] == 0)
                        std::swap(i, j);
                    assert(label_[size_t(inblossom_[size_t(i)])] == 1);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[size_t(deltaedge)] = 1;
                    int i = edges_[size_t(deltaedge)].i;
                    assert(label_[size_t(inblossom_[size_t(i)])] == 1);
                    queue_.push_back(i);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented)
                break;
            for (int b = n_; b < 2 * n_; b++) {
                if (blossomparent_[size_t(b)] == -1 && blossombase_[size_t(b)] >= 0 &&
                    label_[size_t(b)] == 1 && dualvar_[size_t(b)] <= eps_)
                    expand_blossom(b, true);
            }
        }

        std::vector<int> result(size_t(n_), -1);
        for (int v = 0; v < n_; v++)
            if (mate_[size_t(v)] >= 0)
                result[size_t(v)] = endpoint_[size_t(mate_[size_t(v)])];
        for (int v = 0; v < n_; v++)
            assert(result[size_t(v)] == -1 || result[size_t(result[size_t(v)])] == v);
        return result;
    }

    /// Complementary slackness checks, used by the test suite.
    bool duals_feasible() const {
        double off = 0;
        if (maxcard_) {
            double mind = kInf;
            for (int v = 0; v < n_; v++)
                mind = std::min(mind, dualvar_[size_t(v)]);
            off = std::max(0.0, -mind);
        }
        for (int v = 0; v < n_; v++)
            if (dualvar_[size_t(v)] + off < -eps_)
                return false;
        for (int k = 0; k < m_; k++) {
            double s = slack(k);
            std::vector<int> bi{edges_[size_t(k)].i}, bj{edges_[size_t(k)].j};
            while (blossomparent_[size_t(bi.back())] != -1)
                bi.push_back(blossomparent_[size_t(bi.back())]);
            while (blossomparent_[size_t(bj.back())] != -1)
                bj.push_back(blossomparent_[size_t(bj.back())]);
            std::reverse(bi.begin(), bi.end());
            std::reverse(bj.begin(), bj.end());
            for (size_t q = 0; q < std::min(bi.size(), bj.size()); q++) {
                if (bi[q] != bj[q])
                    break;
                s += 2 * dualvar_[size_t(bi[q])];
            }
            if (s < -1e3 * eps_)
                return false;
            int mi = mate_[size_t(edges_[size_t(k)].i)];
            int mj = mate_[size_t(edges_[size_t(k)].j)];
            if ((mi >= 0 && mi / 2 == k) || (mj >= 0 && mj / 2 == k)) {
                if (std::abs(s) > 1e3 * eps_)
                    return false;
            }
        }
        return true;
    }

   private:
    double slack(int k) const {
        const auto& e = edges_[size_t(k)];
        return dualvar_[size_t(e.i)] + dualvar_[size_t(e.j)] - 2 * e.weight;
    }

    template <typename Fn>
    void for_leaves(int b, Fn&& fn) const {
        if (b < n_) {
            fn(b);
            return;
        }
        for (int t : blossomchilds_[size_t(b)])
            for_leaves(t, fn);
    }

    static int cyc(const std::vector<int>& v, long j) {
        long n = long(v.size());
        return v[size_t(((j % n) + n) % n)];
    }

    void assign_label(int w, int t, int p) {
        int b = inblossom_[size_t(w)];
        assert(label_[size_t(w)] == 0 && label_[size_t(b)] == 0);
        label_[size_t(w)] = label_[size_t(b)] = t;
        labelend_[size_t(w)] = labelend_[size_t(b)] = p;
        bestedge_[size_t(w)] = bestedge_[size_t(b)] = -1;
        if (t == 1) {
            for_leaves(b, [&](int leaf) { queue_.push_back(leaf); });
        } else if (t == 2) {
            int base = blossombase_[size_t(b)];
            assert(mate_[size_t(base)] >= 0);
            assign_label(endpoint_[size_t(mate_[size_t(base)])], 1, mate_[size_t(base)] ^ 1);
        }
    }

    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[size_t(v)];
            if (label_[size_t(b)] & 4) {
                base = blossombase_[size_t(b)];
                break;
            }
            assert(label_[size_t(b)] == 1);
            path.push_back(b);
            label_[size_t(b)] = 5;
            assert(labelend_[size_t(b)] == mate_[size_t(blossombase_[size_t(b)])]);
            if (labelend_[size_t(b)] == -1) {
                v = -1;
            } else {
                v = endpoint_[size_t(labelend_[size_t(b)])];
                b = inblossom_[size_t(v)];
                assert(label_[size_t(b)] == 2);
                assert(labelend_[size_t(b)] >= 0);
                v = endpoint_[size_t(labelend_[size_t(b)])];
            }
            if (w != -1)
                std::swap(v, w);
        }
        for (int b : path)
            label_[size_t(b)] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = edges_[size_t(k)].i;
        int w = edges_[size_t(k)].j;
        int bb = inblossom_[size_t(base)];
        int bv = inblossom_[size_t(v)];
        int bw = inblossom_[size_t(w)];
        int b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[size_t(b)] = base;
        blossomparent_[size_t(b)] = -1;
        blossomparent_[size_t(bb)] = b;
        std::vector<int> path, endps;
        while (bv != bb) {
            blossomparent_[size_t(bv)] = b;
            path.push_back(bv);
            endps.push_back(labelend_[size_t(bv)]);
            assert(labelend_[size_t(bv)] >= 0);
            v = endpoint_[size_t(labelend_[size_t(bv)])];
            bv = inblossom_[size_t(v)];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[size_t(bw)] = b;
            path.push_back(bw);
            endps.push_back(labelend_[size_t(bw)] ^ 1);
            assert(labelend_[size_t(bw)] >= 0);
            w = endpoint_[size_t(labelend_[size_t(bw)])];
            bw = inblossom_[size_t(w)];
        }
        assert(label_[size_t(bb)] == 1);
        blossomchilds_[size_t(b)] = path;
        blossomendps_[size_t(b)] = endps;
        label_[size_t(b)] = 1;
        labelend_[size_t(b)] = labelend_[size_t(bb)];
        dualvar_[size_t(b)] = 0;
        for_leaves(b, [&](int leaf) {
            if (label_[size_t(inblossom_[size_t(leaf)])] == 2)
                queue_.push_back(leaf);
            inblossom_[size_t(leaf)] = b;
        });

        std::vector<int> bestedgeto(size_t(2 * n_), -1);
        for (int child : path) {
            std::vector<std::vector<int>> nblists;
            if (!blossombestedges_[size_t(child)].has_value()) {
                for_leaves(child, [&](int leaf) {
                    std::vector<int> lst;
                    lst.reserve(neighbend_[size_t(leaf)].size());
                    for (int p : neighbend_[size_t(leaf)])
                        lst.push_back(p / 2);
                    nblists.push_back(std::move(lst));
                });
            } else {
                nblists.push_back(*blossombestedges_[size_t(child)]);
            }
            for (const auto& lst : nblists) {
                for (int ek : lst) {
                    int i = edges_[size_t(ek)].i;
                    int j = edges_[size_t(ek)].j;
                    if (inblossom_[size_t(j)] == b)
                        std::swap(i, j);
                    int bj = inblossom_[size_t(j)];
                    if (bj != b && label_[size_t(bj)] == 1 &&
                        (bestedgeto[size_t(bj)] == -1 || slack(ek) < slack(bestedgeto[size_t(bj)])))
                        bestedgeto[size_t(bj)] = ek;
                }
            }
            blossombestedges_[size_t(child)].reset();
            bestedge_[size_t(child)] = -1;
        }
        std::vector<int> best;
        for (int ek : bestedgeto)
            if (ek != -1)
                best.push_back(ek);
        blossombestedges_[size_t(b)] = best;
        bestedge_[size_t(b)] = -1;
        for (int ek : best)
            if (bestedge_[size_t(b)] == -1 || slack(ek) < slack(bestedge_[size_t(b)]))
                bestedge_[size_t(b)] = ek;
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossomchilds_[size_t(b)]) {
            blossomparent_[size_t(s)] = -1;
            if (s < n_)
                inblossom_[size_t(s)] = s;
            else if (endstage && dualvar_[size_t(s)] <= eps_)
                expand_blossom(s, endstage);
            else
                for_leaves(s, [&](int leaf) { inblossom_[size_t(leaf)] = s; });
        }
        if (!endstage && label_[size_t(b)] == 2) {
            assert(labelend_[size_t(b)] >= 0);
            int entrychild = inblossom_[size_t(endpoint_[size_t(labelend_[size_t(b)] ^ 1)])];
            const auto& childs = blossomchilds_[size_t(b)];
            const auto& endps = blossomendps_[size_t(b)];
            long idx = long(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            long j = idx;
            long jstep;
            int endptrick;
            if (idx & 1) {
                j -= long(childs.size());
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[size_t(b)];
            while (j != 0) {
                label_[size_t(endpoint_[size_t(p ^ 1)])] = 0;
                label_[size_t(endpoint_[size_t(cyc(endps, j - endptrick) ^ endptrick ^ 1)])] = 0;
                assign_label(endpoint_[size_t(p ^ 1)], 2, p);
                allowedge_[size_t(cyc(endps, j - endptrick) / 2)] = 1;
                j += jstep;
                p = cyc(endps, j - endptrick) ^ endptrick;
                allowedge_[size_t(p / 2)] = 1;
                j += jstep;
            }
            int bv = cyc(childs, j);
            label_[size_t(endpoint_[size_t(p ^ 1)])] = 2;
            label_[size_t(bv)] = 2;
            labelend_[size_t(endpoint_[size_t(p ^ 1)])] = p;
            labelend_[size_t(bv)] = p;
            bestedge_[size_t(bv)] = -1;
            j += jstep;
            while (cyc(childs, j) != entrychild) {
                bv = cyc(childs, j);
                if (label_[size_t(bv)] == 1) {
                    j += jstep;
                    continue;
                }
                int labeled_leaf = -1;
                for_leaves(bv, [&](int leaf) {
                    if (labeled_leaf == -1 && label_[size_t(leaf)] != 0)
                        labeled_leaf = leaf;
                });
                if (labeled_leaf != -1) {
                    assert(label_[size_t(labeled_leaf)] == 2);
                    assert(inblossom_[size_t(labeled_leaf)] == bv);
                    label_[size_t(labeled_leaf)] = 0;
                    label_[size_t(endpoint_[size_t(mate_[size_t(blossombase_[size_t(bv)])])])] = 0;
                    assign_label(labeled_leaf, 2, labelend_[size_t(labeled_leaf)]);
                }
                j += jstep;
            }
        }
        label_[size_t(b)] = -1;
        labelend_[size_t(b)] = -1;
        blossomchilds_[size_t(b)].clear();
        blossomendps_[size_t(b)].clear();
        blossombase_[size_t(b)] = -1;
        blossombestedges_[size_t(b)].reset();
        bestedge_[size_t(b)] = -1;
        unusedblossoms_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[size_t(t)] != b)
            t = blossomparent_[size_t(t)];
        if (t >= n_)
            augment_blossom(t, v);
        auto& childs = blossomchilds_[size_t(b)];
        auto& endps = blossomendps_[size_t(b)];
        long i = long(std::find(childs.begin(), childs.end(), t) - childs.begin());
        long j = i;
        long jstep;
        int endptrick;
        if (i & 1) {
            j -= long(childs.size());
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = cyc(childs, j);
            int p = cyc(endps, j - endptrick) ^ endptrick;
            if (t >= n_)
                augment_blossom(t, endpoint_[size_t(p)]);
            j += jstep;
            t = cyc(childs, j);
            if (t >= n_)
                augment_blossom(t, endpoint_[size_t(p ^ 1)]);
            mate_[size_t(endpoint_[size_t(p)])] = p ^ 1;
            mate_[size_t(endpoint_[size_t(p ^ 1)])] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[size_t(b)] = blossombase_[size_t(childs[0])];
        assert(blossombase_[size_t(b)] == v);
    }

    void augment_matching(int k) {
        for (auto [s, p] : {std::pair<int, int>{edges_[size_t(k)].i, 2 * k + 1},
                            std::pair<int, int>{edges_[size_t(k)].j, 2 * k}}) {
            while (true) {
                int bs = inblossom_[size_t(s)];
                assert(label_[size_t(bs)] == 1);
                assert(labelend_[size_t(bs)] == mate_[size_t(blossombase_[size_t(bs)])]);
                if (bs >= n_)
                    augment_blossom(bs, s);
                mate_[size_t(s)] = p;
                if (labelend_[size_t(bs)] == -1)
                    break;
                int t = endpoint_[size_t(labelend_[size_t(bs)])];
                int bt = inblossom_[size_t(t)];
                assert(label_[size_t(bt)] == 2);
                assert(labelend_[size_t(bt)] >= 0);
                s = endpoint_[size_t(labelend_[size_t(bt)])];
                int j = endpoint_[size_t(labelend_[size_t(bt)] ^ 1)];
                assert(blossombase_[size_t(bt)] == t);
                if (bt >= n_)
                    augment_blossom(bt, j);
                mate_[size_t(j)] = labelend_[size_t(bt)];
                p = labelend_[size_t(bt)] ^ 1;
            }
        }
    }

    int n_ = 0;
    int m_ = 0;
    std::vector<MatchEdge> edges_;
    bool maxcard_ = false;
    double eps_ = 1e-10;

    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::optional<std::vector<int>>> blossombestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<double> dualvar_;
    std::vector<uint8_t> allowedge_;
    std::vector<int> queue_;
};

inline std::vector<int> max_weight_matching(int n, const std::vector<MatchEdge>& edges, bool max_cardinality) {
    MaxWeightMatching solver(n, edges, max_cardinality);
    return solver.solve();
}

// ---------------------------------------------------------------------------
// Matching instances used by the decoder.
// ---------------------------------------------------------------------------

enum class MatchingMode {
    minimize_perfect,      // minimum weight perfect matching (distances)
    maximize_nonperfect,   // maximum weight matching (modified weights η)
};

struct MatchingInstance {
    int n = 0;
    std::vector<MatchEdge> edges;
    MatchingMode mode = MatchingMode::minimize_perfect;
    std::vector<int> labels;  // original vertex ids (optional)

    void dump(std::ostream& out) const {
        out << "qsplit-matching 1\n";
        out << n << " " << edges.size() << " "
            << (mode == MatchingMode::minimize_perfect ? "min-perfect" : "max-nonperfect") << "\n";
        out.precision(17);
        for (const auto& e : edges)
            out << e.i << " " << e.j << " " << e.weight << "\n";
    }
};

struct MatchingResult {
    std::vector<std::pair<int, int>> pairs;  // matched index pairs, i < j
    std::vector<int> unmatched;
    double objective = 0;  // total weight of selected edges
};

inline MatchingResult exact_matching(const MatchingInstance& inst) {
    MatchingResult res;
    if (inst.n == 0)
        return res;
    if (inst.mode == MatchingMode::minimize_perfect && inst.n % 2 != 0)
        throw InfeasibleSyndromeError("perfect matching requested on an odd vertex count");

    std::vector<MatchEdge> edges = inst.edges;
    if (inst.mode == MatchingMode::minimize_perfect) {
        double maxw = 0;
        for (const auto& e : edges)
            maxw = std::max(maxw, e.weight);
        for (auto& e : edges)
            e.weight = maxw + 1.0 - e.weight;
    } else {
        // Non-positive modified weights can always be left unmatched.
        std::erase_if(edges, [](const MatchEdge& e) { return e.weight <= 0; });
    }

    std::vector<int> mate =
        max_weight_matching(inst.n, edges, inst.mode == MatchingMode::minimize_perfect);

    std::vector<double> value(size_t(inst.n), 0);
    std::vector<std::vector<double>> w;  // lookup original weights
    std::vector<std::vector<uint8_t>> present;
    w.assign(size_t(inst.n), std::vector<double>(size_t(inst.n), 0));
    present.assign(size_t(inst.n), std::vector<uint8_t>(size_t(inst.n), 0));
    for (const auto& e : inst.edges) {
        w[size_t(e.i)][size_t(e.j)] = w[size_t(e.j)][size_t(e.i)] = e.weight;
        present[size_t(e.i)][size_t(e.j)] = present[size_t(e.j)][size_t(e.i)] = 1;
    }
    for (int v = 0; v < inst.n; v++) {
        if (mate[size_t(v)] == -1) {
            if (inst.mode == MatchingMode::minimize_perfect)
                throw InfeasibleSyndromeError("no perfect matching exists");
            res.unmatched.push_back(v);
        } else if (mate[size_t(v)] > v) {
            int u = mate[size_t(v)];
            assert(present[size_t(v)][size_t(u)]);
            res.pairs.push_back({v, u});
            res.objective += w[size_t(v)][size_t(u)];
        }
    }
    return res;
}

}  // namespace qsplit

#endif
