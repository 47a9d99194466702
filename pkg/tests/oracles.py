"""Independent brute-force oracles shared by several test modules."""

import itertools

from ambix.zmodlin import invariant_factors


def bar_complex_h2(G):
    """Torsion of H_2(G, Z) from the normalized integral bar complex.

    ``d[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]``; since ``C_2 / ker d_2`` is
    free, the torsion of ``ker d_2 / im d_3`` is the torsion of ``coker d_3``.
    """
    elems = sorted(G.elements())
    one = G.identity
    nonid = [x for x in elems if x != one]
    pos = {pair: i for i, pair in enumerate(itertools.product(nonid, repeat=2))}
    cols = []
    for g, h, k in itertools.product(nonid, repeat=3):
        col = [0] * len(pos)
        for sign, a, b in ((1, h, k), (-1, g * h, k), (1, g, h * k), (-1, g, h)):
            if a != one and b != one:
                col[pos[(a, b)]] += sign
        cols.append(col)
    M = [list(r) for r in zip(*cols)]
    return tuple(d for d in invariant_factors(M) if d > 1)
