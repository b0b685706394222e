"""Compare the compiled and pure-Python allocation enumerators.

    python3 benchmarks/bench_enumeration.py [--repeat 5]

Each case is an acceptability matrix SymProp actually produces, plus dense
random ones. Both backends must return identical results before timings
are reported.
"""
import argparse
import random
import sys
import timeit

from symcut import _kernels
from symcut.allocation import AcceptabilityMatrix, build_acceptability, enumerate_maximal_allocations
from symcut.instances import all_lebesgue, concentrated_instance
from symcut.protocols.kuhn import sym_prop


def first_round_matrix(vs) -> AcceptabilityMatrix:
    r = sym_prop(vs, max_allocations=10**8).rounds[0]
    return build_acceptability(r.values, [sum(row) for row in r.values], len(r.players))


def cases():
    yield "uniform n=6 (720 allocations)", AcceptabilityMatrix.from_bools([[True] * 6] * 6)
    yield "uniform n=8 (40320 allocations)", AcceptabilityMatrix.from_bools([[True] * 8] * 8)
    yield "concentrated n=3 (7 players)", first_round_matrix(concentrated_instance(3))
    yield "concentrated n=4 (9 players)", first_round_matrix(concentrated_instance(4))
    rng = random.Random(0)
    for n in (8, 10):
        rows = [[rng.random() < 0.5 for _ in range(n)] for _ in range(n)]
        yield f"random 50% n={n}", AcceptabilityMatrix.from_bools(rows)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels._alloc_c is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
        return 1
    py, cy = _kernels._alloc_py.enumerate_allocations, _kernels._alloc_c.enumerate_allocations
    print(f"{'case':36} {'|S|':>7} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, m in cases():
        a = enumerate_maximal_allocations(m, max_allocations=10**8, backend=py)
        b = enumerate_maximal_allocations(m, max_allocations=10**8, backend=cy)
        assert [x.pairs for x in a] == [x.pairs for x in b], label
        cols = m.column_masks()
        t_py = min(timeit.repeat(lambda: py(cols, m.n_players, m.n_pieces, 10**8), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: cy(cols, m.n_players, m.n_pieces, 10**8), number=1, repeat=args.repeat))
        print(f"{label:36} {len(a):>7} {t_py * 1e3:>10.2f} {t_cy * 1e3:>10.2f} {t_py / t_cy:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
