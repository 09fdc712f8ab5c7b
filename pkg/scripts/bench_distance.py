"""Time exhaustive search against Brouwer-Zimmermann on random and constructed codes.

    python scripts/bench_distance.py --codes 50 --seed 1
"""

import argparse
import time

import numpy as np

from lrcmaps.analysis.code import measure
from lrcmaps.analysis.distance import brouwer_zimmermann, exhaustive_distance
from lrcmaps.curves import elliptic_blueprint, klein_blueprint, smallest_elliptic_l
from lrcmaps.field import GF
from lrcmaps.grid import GridSpec, grid_blueprint
from lrcmaps.rational_map import build_code
from lrcmaps.reproduce import table_2_shapes


def timed(fn, *args, **kw):
    t = time.perf_counter()
    res = fn(*args, **kw)
    return res, time.perf_counter() - t


def constructed():
    yield "klein l=12", build_code(klein_blueprint(12))
    yield "klein l=20", build_code(klein_blueprint(20))
    for k in (7, 10, 12):
        yield f"elliptic k={k}", build_code(elliptic_blueprint(4, smallest_elliptic_l(k), 13))
    name, ns, shape = table_2_shapes()[-2]
    yield f"table-2 {name}", build_code(grid_blueprint(GridSpec.affine_variety(7, ns), shape, 2))


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--codes", type=int, default=50, help="number of random codes")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--budget", type=int, default=10**8)
    args = p.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    t_ex = t_bz = 0.0
    for _ in range(args.codes):
        q = int(rng.choice([2, 3, 4, 5, 7, 8, 9]))
        k = int(rng.integers(2, int(np.log(1e5) / np.log(q)) + 1))
        code = measure(rng.integers(0, q, (k, k + int(rng.integers(2, 20)))), GF(q))
        a, ta = timed(exhaustive_distance, code)
        b, tb = timed(brouwer_zimmermann, code)
        assert a.value == b.value
        t_ex, t_bz = t_ex + ta, t_bz + tb
    print(f"{args.codes} random codes: exhaustive {t_ex:.2f}s, brouwer-zimmermann {t_bz:.2f}s")
    print(f"{'code':16s} {'n':>4s} {'k':>4s} {'d':>7s} {'work':>12s} {'seconds':>8s}")
    for name, code in constructed():
        res, t = timed(brouwer_zimmermann, code, args.budget)
        d = str(res.value) if res.exact else f"{res.lo}..{res.hi}"
        print(f"{name:16s} {code.n:4d} {code.k:4d} {d:>7s} {res.work:12d} {t:8.2f}")


if __name__ == "__main__":
    main()
