"""Turn a deterministic envy-free protocol into a symmetric one.

Run the base protocol on every ordering of the players, then keep the
outcome with the fewest cuts, breaking ties by the partition word. Distinct
survivors differ only by a relabelling of the pieces, and envy-freeness of
the base forces every player to value all of them equally.
"""
from __future__ import annotations

from itertools import permutations
from typing import Callable, Sequence

from ..errors import CapabilityError
from ..orders import Partition, select_minimal
from ..valuation import Query, QueryLedger, Subcake, Valuation
from .baselines import cut_and_choose, selfridge_conway, whole_cake
from .common import Division, finish

EnvyFreeProtocol = Callable[[Sequence[Valuation]], Division]

BASES: dict[int, EnvyFreeProtocol] = {
    1: whole_cake,
    2: lambda vs: cut_and_choose(*vs),
    3: lambda vs: selfridge_conway(*vs),
}


def symmetric_envy_free(vs: Sequence[Valuation], f: EnvyFreeProtocol | None = None) -> Division:
    n = len(vs)
    if f is None:
        if n not in BASES:
            raise CapabilityError(
                f"no envy-free base shipped for {n} players; pass one explicitly (supported: 1-3)"
            )
        f = BASES[n]
    ledger = QueryLedger()
    runs: list[tuple[tuple[int, ...], Partition]] = []
    for sigma in permutations(range(n)):
        d = f([vs[s] for s in sigma])
        pieces: list[Subcake] = [Subcake()] * n
        for k, s in enumerate(sigma):
            pieces[s] = d.pieces[k]
        runs.append((sigma, Partition(tuple(pieces))))
        ledger.trace.extend(
            Query(q.kind, None if q.player is None else sigma[q.player], q.args, q.answer)
            for q in d.ledger.trace
        )
    survivors = select_minimal([p for _, p in runs])
    chosen = survivors[0]
    sigma = next(s for s, p in runs if p is chosen)
    out = dict(enumerate(chosen.pieces))
    div = finish("sym-envy-free", vs, Subcake.full(), out, ledger)
    div.chosen_order = sigma
    div.n_candidates = (len(runs), len(survivors))
    return div
