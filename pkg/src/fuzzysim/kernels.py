"""Compiled cores of the refinement engines.

Each engine works on one or two "halves".  A half owns, per triple
(r, p, w):

  * a doubly linked list of witness successors of w in the W-side graph,
    sorted ascending by edge degree, holding exactly the vertices whose pair
    with p is still in Z or pending in the remove queue;
  * a vector of candidate predecessors of p in the P-side graph, sorted
    ascending by edge degree and consumed only from the tail.

List elements are addressed as ``p * |E_W| + edge_id``, so the element table
of the paper is the node storage itself.  A pointer value of -2 marks "not
in any list"; -1 terminates a list.  The ``flip`` flag selects how
(P-vertex, W-vertex) pairs map onto the shared left-right Z table: the plain
half uses (left, right), the dual half of the directed engine swaps.

Memory layout is chosen for locality, since the main loop is bound by
scattered reads:

  * ``tri``  int32[4 * triples]: head, tail, vector base, vector top per
    triple -- everything one refinement step needs from the triple sits on
    one cache line;
  * ``nd``   int32[2 * p_count * |E_W|]: prev/next pointers per list node;
  * ``rcpv`` int32[2 * slots]: degree/vertex per vector slot;
  * Z is kept twice, as ``z`` (left-major) and its transpose ``zt``; inside
    a triple the W-side vertex is fixed while candidates vary, so reading
    from the matrix whose rows are W-side vertices stays on one line.
    Every removal writes both copies.

The queue arrays q_a/q_b always store pairs in left-right orientation.  A
pair enters the queue at most once over a run, so nl*nr slots suffice.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def build_half(z, zt, flip, n_sym, np_, nw,
               p_prev_start, p_prev_v, p_prev_deg,
               w_next_start, w_next_v, w_next_eid,
               w_n_edges):
    """Construct the lists and vectors of one half from the current Z."""
    nd = np.full(2 * np_ * w_n_edges, -2, np.int32)
    n_triples = n_sym * np_ * nw
    tri = np.full(4 * n_triples, -1, np.int32)

    # row-local views: vec_mat rows are W-side vertices, list_mat rows P-side
    vec_mat = z if flip else zt
    list_mat = zt if flip else z

    idx = 0
    for r in range(n_sym):
        for p in range(np_):
            size = p_prev_start[r * np_ + p + 1] - p_prev_start[r * np_ + p]
            for w in range(nw):
                t = (r * np_ + p) * nw + w
                tri[4 * t + 2] = idx
                idx += size
    rcpv = np.empty(2 * idx, np.int32)

    nodes = 0
    slots = 0
    for r in range(n_sym):
        for p in range(np_):
            ps = p_prev_start[r * np_ + p]
            pe = p_prev_start[r * np_ + p + 1]
            for w in range(nw):
                t = (r * np_ + p) * nw + w
                base = tri[4 * t + 2]
                pos = base
                for k in range(ps, pe):
                    x = p_prev_v[k]
                    if vec_mat[w, x]:
                        rcpv[2 * pos] = p_prev_deg[k]
                        rcpv[2 * pos + 1] = x
                        pos += 1
                tri[4 * t + 3] = pos
                slots += pos - base

                ws = w_next_start[r * nw + w]
                we = w_next_start[r * nw + w + 1]
                last = -1
                for k in range(ws, we):
                    yp = w_next_v[k]
                    if list_mat[p, yp]:
                        node = p * w_n_edges + w_next_eid[k]
                        nd[2 * node] = last
                        nd[2 * node + 1] = -1
                        if last >= 0:
                            nd[2 * last + 1] = node
                        else:
                            tri[4 * t] = node
                        last = node
                        nodes += 1
                tri[4 * t + 1] = last

    return tri, nd, rcpv, nodes, slots


@njit(cache=True)
def _update_triple(t, w, z, zt, flip, tri, eid_deg_w, w_n_edges,
                   rcpv, q_a, q_b, q_tail):
    """Re-establish the vector bound of one triple; returns (q_tail, pops)."""
    lt = tri[4 * t + 1]
    if lt >= 0:
        d = eid_deg_w[lt % w_n_edges]
    else:
        d = 0
    base = tri[4 * t + 2]
    top = tri[4 * t + 3]
    pops = 0
    vec_mat = z if flip else zt
    while top > base and rcpv[2 * (top - 1)] > d:
        x = rcpv[2 * (top - 1) + 1]
        top -= 1
        pops += 1
        if vec_mat[w, x]:
            vec_mat[w, x] = 0
            if flip:
                zt[x, w] = 0
                q_a[q_tail] = w
                q_b[q_tail] = x
            else:
                z[x, w] = 0
                q_a[q_tail] = x
                q_b[q_tail] = w
            q_tail += 1
    tri[4 * t + 3] = top
    return q_tail, pops


@njit(cache=True)
def sweep_half(z, zt, flip, n_sym, np_, nw, tri, eid_deg_w, w_n_edges,
               rcpv, q_a, q_b, q_tail):
    """Initialization sweep: update every triple once, in (r, p, w) order."""
    pops = 0
    for t in range(n_sym * np_ * nw):
        w = t % nw
        q_tail, p = _update_triple(t, w, z, zt, flip, tri, eid_deg_w, w_n_edges,
                                   rcpv, q_a, q_b, q_tail)
        pops += p
    return q_tail, pops


@njit(cache=True)
def _unlink(node, t, nd, tri):
    nx = nd[2 * node + 1]
    assert nx != -2  # the extracted pair must still be represented in every list
    pv = nd[2 * node]
    if pv >= 0:
        nd[2 * pv + 1] = nx
    else:
        tri[4 * t] = nx
    if nx >= 0:
        nd[2 * nx] = pv
    else:
        tri[4 * t + 1] = pv
    nd[2 * node] = -2
    nd[2 * node + 1] = -2


@njit(cache=True)
def run_sim_loop(z, zt, n_sym, nl, nr,
                 prevp_start, prevp_v, prevp_eid, eid_deg_r, n_edges_r,
                 tri, nd, rcpv,
                 q_a, q_b, q_tail):
    """Drain the queue for the plain-simulation engine."""
    q_head = 0
    pops = 0
    dels = 0
    peak = q_tail
    while q_head < q_tail:
        if q_tail - q_head > peak:
            peak = q_tail - q_head
        y = q_a[q_head]
        yp = q_b[q_head]
        q_head += 1
        for r in range(n_sym):
            slot = r * nr + yp
            for k in range(prevp_start[slot], prevp_start[slot + 1]):
                xp = prevp_v[k]
                node = y * n_edges_r + prevp_eid[k]
                t = (r * nl + y) * nr + xp
                _unlink(node, t, nd, tri)
                dels += 1
                q_tail, p = _update_triple(t, xp, z, zt, False, tri, eid_deg_r, n_edges_r,
                                           rcpv, q_a, q_b, q_tail)
                pops += p
    return q_tail, pops, dels, peak


@njit(cache=True)
def run_dirsim_loop(z, zt, n_sym, nl, nr,
                    prevp_start, prevp_v, prevp_eid, eid_deg_r, n_edges_r,
                    p_tri, p_nd, p_rcpv,
                    prev_start, prev_v, prev_eid, eid_deg_l, n_edges_l,
                    d_tri, d_nd, d_rcpv,
                    q_a, q_b, q_tail):
    """Drain the queue for the directed engine: plain pass, then dual pass."""
    q_head = 0
    pops = 0
    dels = 0
    peak = q_tail
    while q_head < q_tail:
        if q_tail - q_head > peak:
            peak = q_tail - q_head
        y = q_a[q_head]
        yp = q_b[q_head]
        q_head += 1
        for r in range(n_sym):
            slot = r * nr + yp
            for k in range(prevp_start[slot], prevp_start[slot + 1]):
                xp = prevp_v[k]
                node = y * n_edges_r + prevp_eid[k]
                t = (r * nl + y) * nr + xp
                _unlink(node, t, p_nd, p_tri)
                dels += 1
                q_tail, p = _update_triple(t, xp, z, zt, False, p_tri, eid_deg_r, n_edges_r,
                                           p_rcpv, q_a, q_b, q_tail)
                pops += p
        for r in range(n_sym):
            slot = r * nl + y
            for k in range(prev_start[slot], prev_start[slot + 1]):
                x = prev_v[k]
                node = yp * n_edges_l + prev_eid[k]
                t = (r * nr + yp) * nl + x
                _unlink(node, t, d_nd, d_tri)
                dels += 1
                q_tail, p = _update_triple(t, x, z, zt, True, d_tri, eid_deg_l, n_edges_l,
                                           d_rcpv, q_a, q_b, q_tail)
                pops += p
    return q_tail, pops, dels, peak
