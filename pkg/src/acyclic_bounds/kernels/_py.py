"""Pure-Python kernels.

Reference implementations of every hot loop. The compiled module
``_ckernels`` mirrors these signatures and must agree with them to rounding.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator, Sequence

import numpy as np

IN = 1
OUT = 2

NONADJACENT = 0
ARC_U_TO_V = 1
TWO_CYCLE = 3

# index of a catalog entry to corrupt; only the verification harness sets this
_fault: int | None = None


@contextmanager
def injected_fault(index: int = 6) -> Iterator[None]:
    """Corrupt one single-arc catalog entry (self-test of the verification harness)."""
    global _fault
    previous, _fault = _fault, index
    try:
        yield
    finally:
        _fault = previous


def g(x: int, y: int, t: int) -> float:
    """P(all of X precede v and all of Y precede w), |X|=x, |Y|=y, |X & Y|=t."""
    return (1.0 / (x + 1) + 1.0 / (y + 1)) / (x + y - t + 2)


def catalog(
    du_out: int, du_in: int, du: int,
    dv_out: int, dv_in: int, dv: int,
    counts: Sequence[int],
    case: int,
) -> tuple[float, ...]:
    """The 15 inclusion-exclusion terms for a pair with ``case`` in {nonadjacent, u->v, 2-cycle}.

    ``counts`` is ordered (in_in, out_out, in_out, out_in, any_in, in_any,
    any_out, out_any, any_any). Output order: the four singletons
    (Eu-, Eu+, Ev-, Ev+), the pairs (Eu-Eu+, Ev-Ev+, Eu-Ev-, Eu-Ev+, Eu+Ev-,
    Eu+Ev+), the triples (Eu-Eu+Ev-, Eu-Eu+Ev+, Eu-Ev-Ev+, Eu+Ev-Ev+) and the
    quadruple.
    """
    n_ii, n_oo, n_io, n_oi, n_ai, n_ia, n_ao, n_oa, n_aa = counts
    single = (1.0 / (du_in + 1), 1.0 / (du_out + 1), 1.0 / (dv_in + 1), 1.0 / (dv_out + 1))
    selfs = (1.0 / (du + 1), 1.0 / (dv + 1))
    if case == NONADJACENT:
        rest = (
            g(du_in, dv_in, n_ii),
            g(du_in, dv_out, n_io),
            g(du_out, dv_in, n_oi),
            g(du_out, dv_out, n_oo),
            g(du, dv_in, n_ai),
            g(du, dv_out, n_ao),
            g(du_in, dv, n_ia),
            g(du_out, dv, n_oa),
            g(du, dv, n_aa),
        )
    elif case == ARC_U_TO_V:
        # the arc forces v last in the joint window for E_v^- terms and u last for E_u^+ terms
        in_in = 1.0 / ((du_in + dv_in - n_ii + 1) * (du_in + 1))
        if _fault == 6:
            in_in = g(du_in, dv_in, n_ii)
        rest = (
            in_in,
            g(du_in, dv_out, n_io),
            0.0,
            1.0 / ((du_out + dv_out - n_oo + 1) * (dv_out + 1)),
            0.0,
            1.0 / ((du + dv_out - n_ao + 1) * (dv_out + 1)),
            1.0 / ((du_in + dv - n_ia + 1) * (du_in + 1)),
            0.0,
            0.0,
        )
    elif case == TWO_CYCLE:
        rest = (0.0,) * 9
    else:
        raise ValueError(f"catalog case must be canonical (nonadjacent, u->v, 2-cycle), got {case}")
    return single + selfs + rest


def psi(terms: Sequence[float]) -> float:
    """P(u not in S or v not in S) by inclusion-exclusion over the 15 catalog terms."""
    s1 = terms[0] + terms[1] + terms[2] + terms[3]
    s2 = terms[4] + terms[5] + terms[6] + terms[7] + terms[8] + terms[9]
    s3 = terms[10] + terms[11] + terms[12] + terms[13]
    return s1 - s2 + s3 - terms[14]


def _pair_counts(fu: dict[int, int], fv: dict[int, int]) -> list[int]:
    c = [0] * 9
    for w, b in fv.items():
        a = fu.get(w, 0)
        if not a:
            continue
        c[8] += 1
        if b & IN:
            c[4] += 1
            if a & IN:
                c[0] += 1
            if a & OUT:
                c[3] += 1
        if b & OUT:
            c[6] += 1
            if a & IN:
                c[2] += 1
            if a & OUT:
                c[1] += 1
        if a & IN:
            c[5] += 1
        if a & OUT:
            c[7] += 1
    return c


def joint_in_s(D, u: int, v: int) -> float:
    """P(u in S and v in S), unclamped."""
    flags = D.nbr_flags
    fu, fv = flags[u], flags[v]
    su = (len(D.out_nbrs(u)), len(D.in_nbrs(u)), len(fu))
    sv = (len(D.out_nbrs(v)), len(D.in_nbrs(v)), len(fv))
    case = fu.get(v, 0)  # OUT: u->v, IN: v->u
    c = _pair_counts(fu, fv)
    if case == IN:
        su, sv = sv, su
        c = [c[0], c[1], c[3], c[2], c[5], c[4], c[7], c[6], c[8]]
        case = ARC_U_TO_V
    elif case == OUT:
        case = ARC_U_TO_V
    return 1.0 - psi(catalog(*su, *sv, c, case))


def covariance_sum(D, rho: Sequence[float]) -> float:
    """Sum of Cov(I_u, I_v) over unordered pairs u < v, lexicographic order."""
    total = 0.0
    n = D.n
    for u in range(n):
        pu = 1.0 - rho[u]
        for v in range(u + 1, n):
            total += joint_in_s(D, u, v) - pu * (1.0 - rho[v])
    return total


def dl_members(D, rank: Sequence[int]) -> list[int]:
    """Vertices with a higher-ranked in-neighbour and a higher-ranked out-neighbour."""
    members = []
    for u in range(D.n):
        r = rank[u]
        if any(rank[w] > r for w in D.in_nbrs(u)) and any(rank[w] > r for w in D.out_nbrs(u)):
            members.append(u)
    return members


def dl_sizes(D, ranks: np.ndarray) -> np.ndarray:
    """|S| for each row of a (trials, n) rank matrix."""
    ranks = np.asarray(ranks)
    out = np.empty(ranks.shape[0], dtype=np.int64)
    for i, row in enumerate(ranks.tolist()):
        out[i] = len(dl_members(D, row))
    return out


def max_acyclic_mask(k: int, in_masks: Sequence[int]) -> int:
    """Bitmask of a maximum acyclic subset of a k-vertex digraph.

    ``in_masks[v]`` has bit ``w`` set when ``w -> v``. A nonempty set is acyclic
    iff it has a source whose removal leaves an acyclic set, which gives a
    subset DP over all ``2^k`` masks. Ties go to the numerically smallest mask.
    """
    size = 1 << k
    acyclic = bytearray(size)
    acyclic[0] = 1
    best, best_pop = 0, 0
    for mask in range(1, size):
        rest = mask
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            if not in_masks[v] & mask:
                if acyclic[mask ^ low]:
                    acyclic[mask] = 1
                    pop = mask.bit_count()
                    if pop > best_pop:
                        best, best_pop = mask, pop
                break
            rest ^= low
    return best
